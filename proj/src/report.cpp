#include "helmlab/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace helmlab {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string to_csv(const SweepResult& result) {
  std::string out = "family,d,L,n,lambda,eps,delta,metric,value,status\n";
  for (const SweepRow& r : result.rows) {
    out += r.family;
    out += ',' + std::to_string(r.d);
    out += ',' + format_double(r.L);
    out += ',' + std::to_string(r.n);
    out += ',' + format_double(r.lambda);
    out += ',' + format_double(r.eps);
    out += ',' + format_double(r.delta);
    out += ',' + r.metric;
    out += ',';
    if (r.status != "degenerate") out += format_double(r.value);
    out += ',' + r.status + '\n';
  }
  return out;
}

void write_csv(const std::string& path, const SweepResult& result) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << to_csv(result);
}

void append_norm_report(SweepResult& out, const Problem& p, double lambda,
                        double eps, const NormReport& report) {
  for (const auto& [name, value] : report.rows())
    out.add(p, lambda, eps, 0.0, name, value);
  for (const auto& [delta, value] : report.radiation)
    out.add(p, lambda, eps, delta, "radiation", value);
}

void append_identity_report(SweepResult& out, const Problem& p, double lambda,
                            double eps, const IdentityResidualReport& report) {
  for (const auto& t : report.terms)
    out.add(p, lambda, eps, 0.0, report.identity + "." + t.name, t.value);
  out.add(p, lambda, eps, 0.0, report.identity + ".residual", report.residual);
  out.add(p, lambda, eps, 0.0, report.identity + ".normalized", report.normalized());
}

}  // namespace helmlab
