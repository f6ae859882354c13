#pragma once

#include <limits>
#include <string>

#include "helmlab/grid.hpp"
#include "helmlab/types.hpp"

namespace helmlab {

// Magnetic vector potential. `A` is the base evaluator; an optional pure
// gauge part chi rides along separately so that link integrals of grad(chi)
// can be taken as exact endpoint differences (this is what makes the discrete
// gauge covariance exact rather than O(h^2)).
struct MagneticPotential {
  std::string family = "zero";
  VectorEval A;
  JacobianEval DA;     // analytic Jacobian dA_k/dx_j; empty -> finite differences
  ScalarEval chi;      // optional gauge part
  VectorEval grad_chi; // analytic gradient of chi, required when chi is set

  bool has_jacobian() const { return static_cast<bool>(DA); }
  bool has_gauge_part() const { return static_cast<bool>(chi); }

  // Full potential A + grad(chi) at a point.
  PointD total(const PointD& x) const;
};

struct ElectricPotential {
  std::string family_v1 = "zero";
  std::string family_v2 = "zero";
  ScalarEval V1, V2;
  ScalarEval dV1_dr;  // radial derivative of V1
};

// Constants of the admissibility conditions: potentials vanish or are
// controlled outside r0 with decay exponent mu and size c; the short-range
// part may be |x|^{alpha-2} singular at the origin; cstar bounds |B| near the
// origin for d > 3; c_div bounds |x|^2 |div A|.
struct AssumptionConstants {
  double r0 = 1.0;
  double mu = 0.5;
  double c = 1.0;
  double alpha = 0.5;
  double cstar = 1.0;
  double c_div = std::numeric_limits<double>::infinity();
};

// Antisymmetric field B = (DA) - (DA)^t stored as packed upper components
// B_{kj}, k < j, plus the tangential contraction Btau_j = sum_k (x_k/|x|) B_{kj}.
struct MagneticField {
  int d = 0;
  MatD B;      // N x d(d-1)/2, packed k<j in row-major pair order
  MatD Btau;   // N x d
  VecD Bnorm;  // sqrt(sum_{k<j} B_kj^2); equals |curl A| in d=3

  static int pack(int k, int j, int d);  // index of (k<j) pair
  double component(Index node, int k, int j) const;  // full antisymmetric B_kj
};

MagneticField compute_b(const MagneticPotential& A, const Grid& grid);

// Everything the discrete operator and the norms need, sampled once.
struct FieldSet {
  MagneticPotential A;
  ElectricPotential V;
  AssumptionConstants constants;

  MatD A_nodes;      // N x d, total potential including gauge part
  VecD V1_nodes, V2_nodes, dV1r_nodes;
  MatD link_phase;   // N x d, phase of the edge node -> node+e_a (0 if outside)
  MagneticField B;
  VecD divA_nodes;
};

FieldSet sample_fields(const Grid& grid, const MagneticPotential& A,
                       const ElectricPotential& V,
                       const AssumptionConstants& constants = {});

// Worst-case quotients of the admissibility conditions over the grid nodes.
struct AssumptionReport {
  double q_far = 0.0;      // sup_{|x|>=r0} |x|^{1+mu} (|V1|/|x| + (dV1/dr)_- + |Btau| + |V2|)
  double q_v2_near = 0.0;  // sup_{|x|<=r0} |x|^{2-alpha} |V2|
  double q_b_near = 0.0;   // sup_{|x|<=r0} |x|^2 |B| (d>3) or |x|^{2-alpha} |B| (d=3)
  double q_div_a = 0.0;    // sup |x|^2 |div A|
  double v1_near_max = 0.0;  // max |V1| on |x| <= r0, must vanish
  double c_extra = 0.0;    // empirical constant of the local |Au| bound on Gaussian probes

  bool far_ok = false, v2_near_ok = false, b_near_ok = false, div_ok = false,
       v1_zero_ok = false;

  bool pass() const {
    return far_ok && v2_near_ok && b_near_ok && div_ok && v1_zero_ok;
  }
  std::string failed_conditions() const;
};

AssumptionReport validate_assumptions(const FieldSet& fields, const Grid& grid);

// A' = A + grad(chi); V and B unchanged. chi accumulates into the gauge part.
MagneticPotential gauge_transform(const MagneticPotential& A, ScalarEval chi,
                                  VectorEval grad_chi);

// ---- Built-in families ------------------------------------------------

MagneticPotential make_zero_potential();
// A = a (-x2, x1, 0, ...): uniform field in the (x1,x2) plane, B_12 = -2a.
MagneticPotential make_constant_field(double a);
// A = grad(chi) with chi = a x1 x2; B = 0.
MagneticPotential make_pure_gauge(double a);
// A = a (-x2, x1, 0, ...)/|x|^2; |A| <= a/|x| and Btau decays like the
// admissible class requires.
MagneticPotential make_azimuthal_singular(double a);

ElectricPotential make_zero_electric();
// V1 = v (1+|x|)^{-mu} cut off smoothly to vanish for |x| <= r0.
ElectricPotential make_v1_long_range(double v, double mu, double r0);
// V2 = c (1+|x|)^{-1-mu}.
ElectricPotential make_v2_short_range(double c, double mu);
// V2 = c |x|^{alpha-2} for |x| <= r0, zero outside.
ElectricPotential make_v2_singular(double c, double alpha, double r0);

ElectricPotential combine_electric(const ElectricPotential& v1_part,
                                   const ElectricPotential& v2_part);

// C^3 transition: 0 for t <= lo, 1 for t >= hi. Derivatives up to third order.
double smoothstep(double t, double lo, double hi);
double smoothstep_d1(double t, double lo, double hi);
double smoothstep_d2(double t, double lo, double hi);
double smoothstep_d3(double t, double lo, double hi);

}  // namespace helmlab
