#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "helmlab/multipliers.hpp"
#include "helmlab/oracle.hpp"
#include "helmlab/solver.hpp"

namespace helmlab {

// Geometric schedule eps_k = eps0 * rho^k, k = 0..K.
struct EpsilonSchedule {
  double eps0 = 0.5;
  double rho = 0.5;
  int K = 10;

  double value(int k) const;
  std::vector<double> values() const;
};

// One experiment: grid + fields + right-hand side + closure.
struct Problem {
  std::string family;
  Grid grid;
  FieldSet fields;
  DyadicDecomposition dec;
  VecC f;
  AbsorbingLayerConfig layer;
};

Problem make_problem(std::string family, Grid grid, FieldSet fields, VecC f,
                     AbsorbingLayerConfig layer);

// Flat result rows keyed by the full run parameters; "degenerate" marks 0/0
// ratios so they never surface as NaN in the CSV.
struct SweepRow {
  std::string family;
  int d = 0;
  double L = 0.0;
  int n = 0;
  double lambda = 0.0;
  double eps = 0.0;
  double delta = 0.0;
  std::string metric;
  double value = 0.0;
  std::string status = "ok";
};

struct SweepResult {
  std::vector<SweepRow> rows;
  void add(const Problem& p, double lambda, double eps, double delta,
           const std::string& metric, double value, const std::string& status = "ok");
};

struct LapRunResult {
  bool converged = false;
  VecC u;                       // final iterate
  std::vector<double> eps_values;
  std::vector<double> cauchy;   // d_k between consecutive iterates
  NormReport report;            // of the final iterate
  SweepResult rows;
};

// Solves along the epsilon schedule and tracks the local H^1_A Cauchy
// differences over |x| <= probe_radius; declared converged once d_k < tol.
// Requires the absorbing layer so that eps -> 0 stays well posed.
LapRunResult limiting_absorption_run(const Problem& p, double lambda,
                                     const EpsilonSchedule& schedule,
                                     double probe_radius, double cauchy_tol,
                                     const SolverOptions& solver = {},
                                     const std::vector<double>& deltas = {});

struct SlopeFit {
  double slope = 0.0;
  bool degenerate = false;
  std::vector<std::pair<double, double>> points;  // (lambda, norm)
};

// Least-squares slope of log ||u||_{L^2_{-s}} against log lambda. eps is a
// relative damping: each solve runs at eps * lambda, so the dissipation does
// not distort the frequency scaling being measured.
SlopeFit lambda_sweep(const Problem& p, const std::vector<double>& lambdas,
                      double s, double eps, const SolverOptions& solver = {});

struct RatioStudy {
  SweepResult rows;
  // max and min of each ratio over the (lambda, eps) sweep, per delta for the
  // radiation ratio.
  double r1_max = 0.0, r1_min = 0.0;
  std::map<double, std::pair<double, double>> r2_minmax;
  bool degenerate = false;
};

// r1 = estimate_lhs / N_1(f)^2 and r2(delta) = radiation / int (1+|x|)^{1+delta}|f|^2
// over a (lambda, eps) sweep; the maxima are the empirical constants of the
// a-priori estimates.
RatioStudy estimate_ratio_study(const Problem& p,
                                const std::vector<double>& lambdas,
                                const std::vector<double>& eps_values,
                                const std::vector<double>& deltas,
                                const SolverOptions& solver = {});

struct EllipticCheck {
  double lhs = 0.0;     // int_{|x|<=R} |grad_A u|^2
  double u_term = 0.0;  // (1+lambda) int_{|x|<=R+1} |u|^2
  double f_term = 0.0;  // int_{|x|<=R+1} |f|^2
  double C = 0.0;       // smallest C with lhs <= C u_term + f_term
};

EllipticCheck elliptic_check(const VecC& u, const VecC& f, const FieldSet& fields,
                             double lambda, double R, const Grid& grid);

// Homogeneous solve with outgoing closure; reports |||u|||_1 of the result,
// which must vanish. Linear algebra cannot refute uniqueness, so a zero here
// is consistency, not proof.
double uniqueness_probe(const Problem& p, double lambda,
                        const SolverOptions& solver = {});

// Smallest lambda in the sweep for which the pv lower-bound combination is
// nonnegative; empirical stand-in for the non-explicit large-frequency
// threshold.
std::optional<double> find_positivity_threshold(
    const Problem& p, const std::vector<double>& lambdas, double eps,
    const RadialMultiplier& pv, const SolverOptions& solver = {});

}  // namespace helmlab
