#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "helmlab/solver.hpp"

using namespace helmlab;

namespace {

VecC gaussian_rhs(const Grid& g, double width, double rcut) {
  VecC f = VecC::Zero(g.size());
  for (Index i = 0; i < g.size(); ++i) {
    const double r = g.radii()[i];
    if (r <= rcut) f[i] = std::exp(-r * r / (width * width));
  }
  return f;
}

}  // namespace

TEST_CASE("zero right-hand side returns zero in zero iterations") {
  Grid g(3, 4.0, 16, true);
  FieldSet fs = sample_fields(g, make_zero_potential(), make_zero_electric());
  DiscreteOperator op = assemble(g, fs, 1.0, 0.5);
  auto [u, stats] = solve(op, VecC(VecC::Zero(g.size())), 1e-8, 100);
  CHECK(u.norm() == 0.0);
  CHECK(stats.iterations == 0);
}

TEST_CASE("solve rejects bad inputs") {
  Grid g(3, 4.0, 8, true);
  FieldSet fs = sample_fields(g, make_zero_potential(), make_zero_electric());
  DiscreteOperator op = assemble(g, fs, 1.0, 0.5);
  VecC f = VecC::Ones(g.size());
  CHECK_THROWS_AS(solve(op, f, 0.5, 100), std::invalid_argument);  // tol too large
  CHECK_THROWS_AS(solve(op, VecC::Ones(4), 1e-8, 100), std::invalid_argument);
}

TEST_CASE("free solve converges immediately with the matching shift") {
  // With A = V = 0 and eps >= lambda/2 the preconditioner equals the operator.
  Grid g(3, 8.0, 32, true);
  FieldSet fs = sample_fields(g, make_zero_potential(), make_zero_electric());
  DiscreteOperator op = assemble(g, fs, 1.0, 0.5);
  VecC f = gaussian_rhs(g, 0.75, 1.5);
  auto [u, stats] = solve(op, f, 1e-10, 200);
  CHECK(stats.relative_residual <= 1e-10);
  CHECK(stats.iterations <= 3);
}

TEST_CASE("residual contract on a magnetic + singular potential problem") {
  Grid g(3, 4.0, 20, true);
  AssumptionConstants cst;
  FieldSet fs = sample_fields(g, make_azimuthal_singular(0.3),
                              combine_electric(make_v1_long_range(0.5, 0.5, 1.0),
                                               make_v2_singular(0.5, 0.5, 1.0)),
                              cst);
  DiscreteOperator op = assemble(g, fs, 4.0, 0.125);
  VecC f = gaussian_rhs(g, 0.6, 1.2);
  auto [u, stats] = solve(op, f, 1e-9, 500);
  CHECK(stats.relative_residual <= 1e-9);
  // recompute independently
  CHECK((op.apply(u) - f).norm() / f.norm() <= 1e-9);
}

TEST_CASE("gauge-shifted problem solves to the gauge-shifted solution") {
  Grid g(3, 4.0, 16, true);
  AssumptionConstants cst;
  MagneticPotential base = make_azimuthal_singular(0.4);
  auto chi = [](const PointD& x) { return 0.6 * x[0] * x[1]; };
  auto grad_chi = [](const PointD& x) {
    PointD v = PointD::Zero(x.size());
    v[0] = 0.6 * x[1];
    v[1] = 0.6 * x[0];
    return v;
  };
  FieldSet f0 = sample_fields(g, base, make_zero_electric(), cst);
  FieldSet f1 = sample_fields(g, gauge_transform(base, chi, grad_chi),
                              make_zero_electric(), cst);
  VecC f = gaussian_rhs(g, 0.8, 1.6);
  auto [u0, s0] = solve(assemble(g, f0, 1.0, 0.5), f, 1e-10, 400);
  // f -> e^{-i chi} f, u -> e^{-i chi} u
  VecC fshift(g.size());
  for (Index i = 0; i < g.size(); ++i)
    fshift[i] = std::polar(1.0, -chi(g.point(i))) * f[i];
  auto [u1, s1] = solve(assemble(g, f1, 1.0, 0.5), fshift, 1e-10, 400);
  double worst = 0.0;
  for (Index i = 0; i < g.size(); ++i)
    worst = std::max(worst,
                     std::abs(u1[i] - std::polar(1.0, -chi(g.point(i))) * u0[i]));
  CHECK(worst <= 1e-8 * u0.cwiseAbs().maxCoeff());
}

TEST_CASE("dissipation identity: eps ||u||^2 = Im<f,u> for Hermitian closure") {
  // Exact discrete identity; checked as the inequality form on random data.
  Grid g(3, 3.0, 12, true);
  AssumptionConstants cst;
  std::mt19937 rng(7);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 10; ++trial) {
    const double eps = std::pow(2.0, -(trial % 4 + 1));
    const double lambda = 1.0 + trial;
    FieldSet fs = sample_fields(
        g, trial % 2 ? make_azimuthal_singular(0.3) : make_zero_potential(),
        trial % 3 ? combine_electric(make_zero_electric(),
                                     make_v2_short_range(0.5, 0.5))
                  : make_zero_electric(),
        cst);
    DiscreteOperator op = assemble(g, fs, lambda, eps);
    VecC f(g.size());
    for (Index i = 0; i < g.size(); ++i) f[i] = Complex(nd(rng), nd(rng));
    auto [u, stats] = solve(op, f, 1e-10, 2000);
    const double vol = g.cell_volume();
    double lhs = eps * u.squaredNorm() * vol;
    double rhs = 0.0;
    for (Index i = 0; i < g.size(); ++i) rhs += std::abs(f[i]) * std::abs(u[i]);
    rhs *= vol;
    CHECK(lhs <= rhs * (1.0 + 1e-8));
  }
}

TEST_CASE("direct fallback kicks in for small stalled systems") {
  Grid g(3, 3.0, 10, true);
  FieldSet fs = sample_fields(g, make_zero_potential(), make_zero_electric());
  DiscreteOperator op = assemble(g, fs, 1.0, 0.25);
  VecC f = gaussian_rhs(g, 0.8, 1.6);
  SolverOptions opts;
  opts.tol = 1e-10;
  opts.max_iter = 1;  // starve the iteration
  opts.restart = 1;
  auto [u, stats] = solve(op, f, opts);
  CHECK(stats.method == "direct");
  CHECK(stats.relative_residual <= 1e-10);

  opts.allow_direct_fallback = false;
  CHECK_THROWS_AS(solve(op, f, opts), NonConvergence);
}

TEST_CASE("forced direct path matches the iterative path") {
  Grid g(3, 3.0, 10, true);
  AssumptionConstants cst;
  FieldSet fs = sample_fields(g, make_constant_field(0.3), make_zero_electric(), cst);
  DiscreteOperator op = assemble(g, fs, 2.0, 0.5);
  VecC f = gaussian_rhs(g, 0.8, 1.6);
  SolverOptions it, dir;
  it.tol = dir.tol = 1e-10;
  dir.force_direct = true;
  auto [ui, si] = solve(op, f, it);
  auto [ud, sd] = solve(op, f, dir);
  CHECK(sd.method == "direct");
  CHECK((ui - ud).norm() / ud.norm() < 1e-8);
}

TEST_CASE("deterministic reruns") {
  Grid g(3, 3.0, 12, true);
  AssumptionConstants cst;
  FieldSet fs = sample_fields(g, make_azimuthal_singular(0.2), make_zero_electric(), cst);
  DiscreteOperator op = assemble(g, fs, 1.0, 0.125);
  VecC f = gaussian_rhs(g, 0.7, 1.4);
  auto [u1, s1] = solve(op, f, 1e-9, 500);
  auto [u2, s2] = solve(op, f, 1e-9, 500);
  CHECK((u1 - u2).norm() == 0.0);
  CHECK(s1.iterations == s2.iterations);
}
