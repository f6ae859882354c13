#pragma once

#include <functional>
#include <string>
#include <vector>

#include "helmlab/norms.hpp"

namespace helmlab {

using RadialFn = std::function<double(double)>;

// Radial multiplier pair (psi, phi) with every derived profile the integral
// identities need, both as callables (for edge midpoints and shells) and
// sampled at the grid nodes. Kinks carry explicit jump data: a jump in phi or
// in lap(psi) acts as a surface measure in the identities and is integrated
// over the matching sphere shell.
struct RadialMultiplier {
  std::string family;
  int d = 0;
  double R = 0.0, M = 0.0, delta = 0.0, r0 = 0.0;

  RadialFn psi_f, dpsi_f, d2psi_f, lap_psi_f, dlap_psi_f, phi_f, dphi_f;

  VecD psi, dpsi, d2psi, lap_psi, dlap_psi, phi, dphi;

  struct Surface {
    double R = 0.0;
    double phi_jump = 0.0;      // phi(R+) - phi(R-)
    double lap_psi_jump = 0.0;  // lap psi(R+) - lap psi(R-)
  };
  std::vector<Surface> surfaces;

  void sample(const Grid& grid);
};

// Piecewise-linear radial weight with a kink: psi' = r/(2R) + M inside R and
// M + 1/2 outside; phi = 1/(4R) inside, 0 outside. M defaults to 1/2 in d=3
// and 1 otherwise.
RadialMultiplier make_pv_multiplier(const Grid& grid, double R, double M = -1.0);
// Smooth radiation weight psi' = (1+r)^delta cut off below r0; phi profiles
// reuse psi' and psi''.
RadialMultiplier make_sommerfeld_multiplier(const Grid& grid, double delta,
                                            double r0);
// grad psi = (x/R) theta_R, phi = (1/2R) theta_R, vanishing below R/2;
// requires R > 2 r0.
RadialMultiplier make_uniqueness_multiplier(const Grid& grid, double R,
                                            double r0);
// psi = r^2/2 (Hessian = identity), phi = 1/(1+r); smooth probe pair used by
// refinement tests.
RadialMultiplier make_quadratic_multiplier(const Grid& grid);

// Constant phi == c (no psi part); the imaginary identity with phi == 1 is an
// exact discrete identity.
RadialMultiplier make_constant_phi(const Grid& grid, double c = 1.0);

RadialMultiplier build_multiplier(const std::string& family, const Grid& grid,
                                  double p1, double p2);

// Signed term breakdown of one integral identity; the terms sum to the
// residual exactly, so a sign error in any single term is localized by
// inspection of the report.
struct IdentityTerm {
  std::string name;
  double value = 0.0;
};

struct IdentityResidualReport {
  std::string identity;
  std::vector<IdentityTerm> terms;
  double residual = 0.0;  // signed sum of terms
  double scale = 0.0;     // max |term|
  double normalized() const { return scale > 0.0 ? std::abs(residual) / scale : 0.0; }
};

// Pairing the equation with phi u: phi lambda |u|^2 - phi |grad_A u|^2 +
// phi (V1+V2) |u|^2 - Re grad(phi).grad_A(u) conj(u) - Re phi f conj(u) = 0.
IdentityResidualReport identity_residual_symmetric(
    const VecC& u, const RadialMultiplier& m, const FieldSet& fields,
    double lambda, double eps, const VecC& f, const Grid& grid);

// Imaginary part: eps phi |u|^2 - Im grad(phi).grad_A(u) conj(u) -
// Im phi f conj(u) = 0; exact on the discrete level for phi == 1.
IdentityResidualReport identity_residual_imag(const VecC& u,
                                              const RadialMultiplier& m,
                                              const FieldSet& fields, double eps,
                                              const VecC& f, const Grid& grid);

// Morawetz pairing with grad(psi).grad_A(u) + (lap psi / 2) u: the Hessian
// contraction splits radially as psi'' |grad_A^r u|^2 + (psi'/r)
// |grad_A^perp u|^2; the magnetic term only sees the tangential component.
IdentityResidualReport identity_residual_morawetz(
    const VecC& u, const RadialMultiplier& m, const FieldSet& fields,
    double lambda, double eps, const VecC& f, const Grid& grid);

// Left side of the lower-bound combination behind the large-frequency
// estimate: the symmetric and Morawetz identities added with the pv pair,
// keeping every term that does not involve f or eps. Nonnegative once lambda
// is large enough.
double positivity_combination(const VecC& u, const RadialMultiplier& pv,
                              const FieldSet& fields, double lambda,
                              const Grid& grid);

}  // namespace helmlab
