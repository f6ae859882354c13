#include "helmlab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace helmlab {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string fmt_tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                         "#ff7f0e", "#8c564b"};

}  // namespace

std::string render_svg_plot(const std::string& title, const std::string& xlabel,
                            const std::string& ylabel,
                            const std::vector<SvgSeries>& series, bool logx,
                            bool logy) {
  const double W = 640, H = 480, ml = 70, mr = 20, mt = 40, mb = 50;
  auto tx = [logx](double x) { return logx ? std::log10(x) : x; };
  auto ty = [logy](double y) { return logy ? std::log10(y) : y; };

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      if (logx && !(x > 0.0)) continue;
      if (logy && !(y > 0.0)) continue;
      xmin = std::min(xmin, tx(x));
      xmax = std::max(xmax, tx(x));
      ymin = std::min(ymin, ty(y));
      ymax = std::max(ymax, ty(y));
    }
  }
  if (!(xmin < xmax)) {
    xmin -= 0.5;
    xmax += 0.5;
  }
  if (!(ymin < ymax)) {
    ymin -= 0.5;
    ymax += 0.5;
  }
  auto px = [&](double x) { return ml + (tx(x) - xmin) / (xmax - xmin) * (W - ml - mr); };
  auto py = [&](double y) { return H - mb - (ty(y) - ymin) / (ymax - ymin) * (H - mt - mb); };

  std::string svg =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
      "viewBox=\"0 0 640 480\">\n"
      "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
  svg += "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" +
         title + "</text>\n";
  // Axes.
  svg += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(H - mb) + "\" x2=\"" + fmt(W - mr) +
         "\" y2=\"" + fmt(H - mb) + "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(mt) + "\" x2=\"" + fmt(ml) +
         "\" y2=\"" + fmt(H - mb) + "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double fx = xmin + (xmax - xmin) * t / 4.0;
    const double fy = ymin + (ymax - ymin) * t / 4.0;
    const double vx = logx ? std::pow(10.0, fx) : fx;
    const double vy = logy ? std::pow(10.0, fy) : fy;
    const double X = ml + (W - ml - mr) * t / 4.0;
    const double Y = H - mb - (H - mt - mb) * t / 4.0;
    svg += "<text x=\"" + fmt(X) + "\" y=\"" + fmt(H - mb + 18) +
           "\" text-anchor=\"middle\" font-size=\"11\">" + fmt_tick(vx) + "</text>\n";
    svg += "<text x=\"" + fmt(ml - 6) + "\" y=\"" + fmt(Y + 4) +
           "\" text-anchor=\"end\" font-size=\"11\">" + fmt_tick(vy) + "</text>\n";
  }
  svg += "<text x=\"" + fmt((ml + W - mr) / 2) + "\" y=\"" + fmt(H - 12) +
         "\" text-anchor=\"middle\" font-size=\"13\">" + xlabel + "</text>\n";
  svg += "<text x=\"18\" y=\"" + fmt((mt + H - mb) / 2) +
         "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 " +
         fmt((mt + H - mb) / 2) + ")\">" + ylabel + "</text>\n";

  int ci = 0;
  for (const auto& s : series) {
    std::string pts;
    for (const auto& [x, y] : s.points) {
      if (logx && !(x > 0.0)) continue;
      if (logy && !(y > 0.0)) continue;
      pts += fmt(px(x)) + "," + fmt(py(y)) + " ";
    }
    const char* color = kColors[ci % 6];
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
    svg += "<text x=\"" + fmt(W - mr - 6) + "\" y=\"" + fmt(mt + 16 + 16 * ci) +
           "\" text-anchor=\"end\" font-size=\"12\" fill=\"" + color + "\">" +
           s.label + "</text>\n";
    ++ci;
  }
  svg += "</svg>\n";
  return svg;
}

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& xlabel, const std::string& ylabel,
                    const std::vector<SvgSeries>& series, bool logx, bool logy) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << render_svg_plot(title, xlabel, ylabel, series, logx, logy);
}

}  // namespace helmlab
