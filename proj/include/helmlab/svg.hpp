#pragma once

#include <string>
#include <vector>

namespace helmlab {

// Minimal self-contained SVG line plots; fixed float formatting keeps the
// output byte-reproducible.
struct SvgSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

std::string render_svg_plot(const std::string& title, const std::string& xlabel,
                            const std::string& ylabel,
                            const std::vector<SvgSeries>& series, bool logx,
                            bool logy);

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& xlabel, const std::string& ylabel,
                    const std::vector<SvgSeries>& series, bool logx, bool logy);

}  // namespace helmlab
