#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helmlab/fields.hpp"

using namespace helmlab;

namespace {

Grid small_grid() { return Grid(3, 4.0, 16, true); }

}  // namespace

TEST_CASE("zero potential gives zero field") {
  Grid g = small_grid();
  MagneticField B = compute_b(make_zero_potential(), g);
  CHECK(B.B.cwiseAbs().maxCoeff() == 0.0);
  CHECK(B.Btau.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("pure gauge potential has zero field on both paths") {
  Grid g = small_grid();
  MagneticPotential gauge = make_pure_gauge(1.0);
  MagneticField Ba = compute_b(gauge, g);
  CHECK(Ba.B.cwiseAbs().maxCoeff() == 0.0);

  // finite-difference path: drop the analytic Jacobian
  MagneticPotential fd = gauge;
  fd.DA = {};
  MagneticField Bfd = compute_b(fd, g);
  // chi = x0 x1 has a linear gradient, so even finite differences are exact
  CHECK(Bfd.B.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("constant field: hand-computed components") {
  Grid g = small_grid();
  MagneticField B = compute_b(make_constant_field(1.0), g);
  // B_12 = -2 everywhere (packed index of the (0,1) pair)
  const int p01 = MagneticField::pack(0, 1, 3);
  for (Index i = 0; i < g.size(); i += 101) {
    CHECK(B.B(i, p01) == doctest::Approx(-2.0));
    CHECK(B.component(i, 1, 0) == doctest::Approx(2.0));
  }
  // Btau at x = (1,0,0)-direction nodes: (x/|x|) . B rows = (0, -2, 0)
  // pick the node closest to (1,0,0)
  Index best = 0;
  double bestd = 1e9;
  for (Index i = 0; i < g.size(); ++i) {
    const PointD x = g.point(i);
    const double dd = (x - PointD(Eigen::Vector3d(1, 0, 0))).norm();
    if (dd < bestd) {
      bestd = dd;
      best = i;
    }
  }
  const PointD x = g.point(best);
  const double r = x.norm();
  // exact contraction at the actual node location: Btau_j = sum_k (x_k/r) B_kj
  CHECK(B.Btau(best, 0) == doctest::Approx((x[1] / r) * 2.0).epsilon(1e-12));
  CHECK(B.Btau(best, 1) == doctest::Approx(-(x[0] / r) * 2.0).epsilon(1e-12));
}

TEST_CASE("finite-difference field matches the analytic Jacobian") {
  auto worst_gap = [](int n) {
    Grid g(3, 4.0, n, true);
    MagneticPotential az = make_azimuthal_singular(0.5);
    MagneticField Ba = compute_b(az, g);
    MagneticPotential fd = az;
    fd.DA = {};
    MagneticField Bf = compute_b(fd, g);
    // interior nodes away from the singularity: central differences are O(h^2)
    double worst = 0.0;
    for (Index i = 0; i < g.size(); ++i) {
      if (g.radii()[i] < 1.5) continue;
      const PointD x = g.point(i);
      if (x.cwiseAbs().maxCoeff() > 3.0) continue;
      worst = std::max(worst, (Ba.B.row(i) - Bf.B.row(i)).norm());
    }
    return worst;
  };
  const double e32 = worst_gap(32);
  CHECK(e32 < 0.02);
  CHECK(worst_gap(16) / e32 > 2.0);  // converging under refinement
}

TEST_CASE("antisymmetry and tangentiality invariants") {
  Grid g = small_grid();
  MagneticField B = compute_b(make_constant_field(1.0), g);
  double worst_tan = 0.0, scale = 0.0;
  for (Index i = 0; i < g.size(); ++i) {
    const PointD x = g.point(i);
    // antisymmetry is structural: component(k,j) == -component(j,k)
    for (int k = 0; k < 3; ++k)
      for (int j = 0; j < 3; ++j)
        CHECK(B.component(i, k, j) == -B.component(i, j, k));
    double dot = 0.0;
    for (int a = 0; a < 3; ++a) dot += B.Btau(i, a) * x[a];
    worst_tan = std::max(worst_tan, std::abs(dot));
    scale = std::max(scale, B.Btau.row(i).norm() * x.norm());
  }
  CHECK(worst_tan <= 1e-10 * scale);
}

TEST_CASE("azimuthal family is non-trapping: Btau vanishes") {
  // curl of a(-y,x,0)/r^2 is radial, so the tangential contraction is zero.
  Grid g = small_grid();
  MagneticField B = compute_b(make_azimuthal_singular(1.0), g);
  CHECK(B.Btau.cwiseAbs().maxCoeff() < 1e-12 * B.Bnorm.maxCoeff());
  CHECK(B.Bnorm.maxCoeff() > 0.0);  // the field itself is not zero
}

TEST_CASE("gauge transform: chi = 0 identity and B preservation") {
  Grid g = small_grid();
  MagneticPotential base = make_constant_field(1.0);
  MagneticPotential shifted = gauge_transform(
      base, [](const PointD& x) { return x[0] * x[1]; },
      [](const PointD& x) {
        PointD v = PointD::Zero(x.size());
        v[0] = x[1];
        v[1] = x[0];
        return v;
      });
  MagneticField B0 = compute_b(base, g);
  MagneticField B1 = compute_b(shifted, g);
  CHECK((B0.B - B1.B).cwiseAbs().maxCoeff() == 0.0);  // analytic path: exact

  // chi = x0: A' = A + e_0, curl unchanged; total() reflects the shift
  MagneticPotential shift2 = gauge_transform(
      make_zero_potential(), [](const PointD& x) { return x[0]; },
      [](const PointD& x) {
        PointD v = PointD::Zero(x.size());
        v[0] = 1.0;
        return v;
      });
  const PointD probe = g.point(123);
  CHECK(shift2.total(probe)[0] == doctest::Approx(1.0));
  MagneticField B2 = compute_b(shift2, g);
  CHECK(B2.B.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("assumption validation: singular V2 exactly at threshold") {
  Grid g = small_grid();
  AssumptionConstants cst;
  cst.c = 1.0;
  cst.alpha = 0.5;
  cst.r0 = 1.0;
  FieldSet fs = sample_fields(g, make_zero_potential(),
                              combine_electric(make_zero_electric(),
                                               make_v2_singular(1.0, 0.5, 1.0)),
                              cst);
  AssumptionReport rep = validate_assumptions(fs, g);
  CHECK(rep.q_v2_near == doctest::Approx(1.0));
  CHECK(rep.v2_near_ok);
  CHECK(rep.pass());
}

TEST_CASE("assumption validation: long-range V1 passes with honest constant") {
  Grid g = small_grid();
  AssumptionConstants cst;
  cst.c = 2.0;
  cst.mu = 0.5;
  cst.r0 = 1.0;
  FieldSet fs = sample_fields(
      g, make_zero_potential(),
      combine_electric(make_v1_long_range(1.0, 0.5, 1.0), make_zero_electric()),
      cst);
  AssumptionReport rep = validate_assumptions(fs, g);
  CHECK(rep.q_far > 0.0);
  CHECK(rep.q_far < 2.0);
  CHECK(rep.v1_zero_ok);  // V1 vanishes inside r0 by construction
  CHECK(rep.pass());
}

TEST_CASE("assumption validation: constant field is trapping and fails") {
  AssumptionConstants cst;
  cst.c = 1.0;
  Grid g4(3, 4.0, 16, true);
  Grid g8(3, 8.0, 16, true);
  FieldSet f4 = sample_fields(g4, make_constant_field(1.0), make_zero_electric(), cst);
  FieldSet f8 = sample_fields(g8, make_constant_field(1.0), make_zero_electric(), cst);
  AssumptionReport r4 = validate_assumptions(f4, g4);
  AssumptionReport r8 = validate_assumptions(f8, g8);
  CHECK_FALSE(r4.far_ok);
  CHECK_FALSE(r8.pass());
  // |Btau| is constant in size, so the far quotient grows with the domain
  CHECK(r8.q_far > r4.q_far);
  CHECK(r8.failed_conditions().find("far-decay") != std::string::npos);
}

TEST_CASE("azimuthal family is admissible at laboratory scale") {
  Grid g = small_grid();
  AssumptionConstants cst;
  cst.c = 1.0;
  cst.alpha = 0.5;
  FieldSet fs = sample_fields(g, make_azimuthal_singular(0.1), make_zero_electric(), cst);
  AssumptionReport rep = validate_assumptions(fs, g);
  CHECK(rep.pass());
  CHECK(rep.q_div_a < 1e-8);  // divergence-free family
}

TEST_CASE("smoothstep transition and derivatives") {
  CHECK(smoothstep(0.5, 1.0, 2.0) == 0.0);
  CHECK(smoothstep(2.5, 1.0, 2.0) == 1.0);
  CHECK(smoothstep(1.5, 1.0, 2.0) == doctest::Approx(0.5));
  // derivative consistency by central differences
  const double t = 1.37, eps = 1e-5;
  const double fd1 = (smoothstep(t + eps, 1, 2) - smoothstep(t - eps, 1, 2)) / (2 * eps);
  CHECK(smoothstep_d1(t, 1, 2) == doctest::Approx(fd1).epsilon(1e-6));
  const double fd2 =
      (smoothstep_d1(t + eps, 1, 2) - smoothstep_d1(t - eps, 1, 2)) / (2 * eps);
  CHECK(smoothstep_d2(t, 1, 2) == doctest::Approx(fd2).epsilon(1e-6));
  const double fd3 =
      (smoothstep_d2(t + eps, 1, 2) - smoothstep_d2(t - eps, 1, 2)) / (2 * eps);
  CHECK(smoothstep_d3(t, 1, 2) == doctest::Approx(fd3).epsilon(1e-5));
}
