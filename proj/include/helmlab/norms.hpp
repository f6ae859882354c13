#pragma once

#include <utility>
#include <vector>

#include "helmlab/operator.hpp"

namespace helmlab {

// Weighted norms over grid nodes. Volume integrals are plain cell sums h^d;
// the sup over radii R is realized on the dyadic set {2^j} plus the box
// half-width, which lower-bounds the continuum sup.

// sup_{dyadic R > R0} ( (1/R) int_{|x|<=R} |u|^2 )^{1/2}; R0 in {0, 1}.
double morrey_campanato(const VecC& u, const Grid& grid,
                        const DyadicDecomposition& dec, double R0 = 0.0);
double morrey_campanato(const VecD& u, const Grid& grid,
                        const DyadicDecomposition& dec, double R0 = 0.0);

// Dual sum over annuli: sum_{j>J} (2^{j+1} int_{C(j)} |f|^2)^{1/2} plus, for
// R0 = 1, the unit-ball term (R0 int_{|x|<=R0} |f|^2)^{1/2} with J = 0.
double dual_n(const VecC& f, const Grid& grid, const DyadicDecomposition& dec,
              double R0 = 0.0);
double dual_n(const VecD& f, const Grid& grid, const DyadicDecomposition& dec,
              double R0 = 0.0);

struct DualityCheck {
  double lhs = 0.0;  // int f g
  double rhs = 0.0;  // |||g||| N(f)
  bool pass = false;
};
DualityCheck duality_check(const VecD& f, const VecD& g, const Grid& grid,
                           const DyadicDecomposition& dec);

// ||(1+|x|)^s u||_{L^2}.
double weighted_l2(const VecC& u, const Grid& grid, double s);

// (1/R^2) int_{|x|=R} |u|^2 via the width-h shell.
double surface_mean_sq(const VecC& u, const SphereShell& shell);
// sup over dyadic shells with R > R_min (R < L so the shell fits the box).
double sup_surface_mean_sq(const VecC& u, const Grid& grid,
                           const DyadicDecomposition& dec, double R_min);

// int |grad_A^perp u|^2 / |x| from the node-averaged covariant gradient.
double tangential_weighted(const MatC& grad, const Grid& grid);
// int |u|^2 / |x|^3.
double cubic_weighted(const VecC& u, const Grid& grid);

// int_{|x|>=1} |grad_A u - i sqrt(lambda) (x/|x|) u|^2 (1+|x|)^{delta-1};
// delta must lie strictly inside (0, 2), both endpoints fail in the theory.
double radiation_functional(const VecC& u, const FieldSet& fields,
                            double lambda, double delta, const Grid& grid);

struct HardyCheck {
  double lhs = 0.0;  // int |u|^2/|x|^2
  double rhs = 0.0;  // 4/(d-2)^2 int |grad_A u|^2
  bool pass = false;
};
// Magnetic Hardy inequality with O(h) discretization slack; d >= 3 only.
HardyCheck hardy_check(const VecC& u, const FieldSet& fields, const Grid& grid);

struct DiamagneticCheck {
  double lhs = 0.0;  // int |grad |u||^2
  double rhs = 0.0;  // int |grad_A u|^2
  bool pass = false;
};
DiamagneticCheck diamagnetic_check(const VecC& u, const FieldSet& fields,
                                   const Grid& grid);

// Left side of the main a-priori estimate: lambda |||u|||_1^2 +
// |||grad_A u|||_1^2 + int |grad^perp|^2/|x| + sup_{R>1} (1/R^2) int_{|x|=R}
// |u|^2 + (d-3) int |u|^2/|x|^3.
double estimate_lhs_main(const VecC& u, const FieldSet& fields, double lambda,
                         const Grid& grid, const DyadicDecomposition& dec);

// Named diagnostics of one solution, ready for CSV rows.
struct NormReport {
  double mc = 0.0, mc_r1 = 0.0;
  double dual = 0.0, dual_r1 = 0.0;
  double grad_mc_r1 = 0.0;
  double tangential = 0.0;
  double cubic = 0.0;
  double sup_surface = 0.0;
  double estimate_lhs = 0.0;
  std::vector<std::pair<double, double>> radiation;  // (delta, value)

  std::vector<std::pair<std::string, double>> rows() const;
};

NormReport norm_report(const VecC& u, const FieldSet& fields, double lambda,
                       const Grid& grid, const DyadicDecomposition& dec,
                       const std::vector<double>& deltas = {});

}  // namespace helmlab
