#pragma once

#include <string>

#include "helmlab/lap.hpp"

namespace helmlab {

// Stable float formatting: 12 significant digits, no locale, so reruns are
// byte-identical.
std::string format_double(double v);

// CSV schema (documented in docs/formats.md):
// family,d,L,n,lambda,eps,delta,metric,value,status
// Degenerate ratios carry an empty value field and status "degenerate".
std::string to_csv(const SweepResult& result);
void write_csv(const std::string& path, const SweepResult& result);

void append_norm_report(SweepResult& out, const Problem& p, double lambda,
                        double eps, const NormReport& report);
void append_identity_report(SweepResult& out, const Problem& p, double lambda,
                            double eps, const IdentityResidualReport& report);

}  // namespace helmlab
