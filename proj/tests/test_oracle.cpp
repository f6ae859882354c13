#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helmlab/norms.hpp"
#include "helmlab/oracle.hpp"
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

TEST_CASE("oracle rejects unsupported inputs") {
  Grid g2(2, 4.0, 8, true);
  CHECK_THROWS_AS(free_resolvent_convolution(VecC::Zero(g2.size()), 1.0, 0.5, g2),
                  std::invalid_argument);
  Grid g(3, 4.0, 16, true);
  CHECK_THROWS_AS(free_resolvent_convolution(VecC::Zero(g.size()), 1.0, 0.0, g),
                  std::invalid_argument);
  CHECK_THROWS_AS(free_resolvent_convolution(VecC::Ones(g.size()), 1.0, 0.5, g),
                  std::invalid_argument);  // support too large
}

TEST_CASE("zero source gives zero solution") {
  Grid g(3, 4.0, 8, true);
  OracleSolution s = free_resolvent_convolution(VecC::Zero(g.size()), 1.0, 0.5, g);
  CHECK(s.u.norm() == 0.0);
  CHECK(s.k.imag() > 0.0);
  CHECK(s.k.real() > 0.0);
}

TEST_CASE("single-cell source reproduces the outgoing kernel") {
  Grid g(3, 8.0, 32, true);
  VecC f = VecC::Zero(g.size());
  // cell nearest the origin
  Index src = 0;
  for (Index i = 0; i < g.size(); ++i)
    if (g.radii()[i] < g.radii()[src]) src = i;
  f[src] = 1.0;
  OracleSolution s = free_resolvent_convolution(f, 1.0, 0.5, g);
  const PointD x0 = g.point(src);
  // compare against -e^{ik rho}/(4 pi rho) h^3 at |x - x0| = 2
  double worst = 0.0;
  int count = 0;
  for (Index i = 0; i < g.size(); ++i) {
    const double rho = (g.point(i) - x0).norm();
    if (std::abs(rho - 2.0) > 0.05) continue;
    const Complex expect = -std::exp(Complex(0, 1) * s.k * rho) /
                           (4.0 * kPi * rho) * g.cell_volume();
    worst = std::max(worst, std::abs(s.u[i] - expect) / std::abs(expect));
    ++count;
  }
  CHECK(count > 0);
  CHECK(worst < 0.02);
}

TEST_CASE("kernel decay rate along a ray matches Im k") {
  Grid g(3, 8.0, 32, true);
  VecC f = VecC::Zero(g.size());
  Index src = 0;
  for (Index i = 0; i < g.size(); ++i)
    if (g.radii()[i] < g.radii()[src]) src = i;
  f[src] = 1.0;
  OracleSolution s = free_resolvent_convolution(f, 1.0, 0.5, g);
  // sample log(|u| * rho) at radii 2 and 5 along the +x axis
  auto probe = [&](double R) {
    Index best = 0;
    double bd = 1e9;
    for (Index i = 0; i < g.size(); ++i) {
      const PointD x = g.point(i);
      const double dd = std::abs(x[0] - R) + std::abs(x[1]) + std::abs(x[2]);
      if (dd < bd) {
        bd = dd;
        best = i;
      }
    }
    const double rho = (g.point(best) - g.point(src)).norm();
    return std::make_pair(rho, std::log(std::abs(s.u[best]) * rho));
  };
  auto [r1, l1] = probe(2.0);
  auto [r2, l2] = probe(5.0);
  const double slope = (l2 - l1) / (r2 - r1);
  CHECK(slope == doctest::Approx(-s.k.imag()).epsilon(0.05));
}

TEST_CASE("discrete solve matches the oracle with second-order trend") {
  // Free-space problem with the outgoing closure; the gap is measured over
  // the physical region, outside the stretched layer where the discrete
  // equation is deliberately modified. A bare Dirichlet box leaves a
  // resolution-independent reflection error near 10%, which is why the layer
  // is part of the free-space setup.
  auto gap = [](int n) {
    Grid g(3, 8.0, n, true);
    FieldSet fs = sample_fields(g, make_zero_potential(), make_zero_electric());
    AbsorbingLayerConfig layer;
    layer.width = 0.25;
    layer.strength = 2.0;
    layer.ramp_order = 3;
    DiscreteOperator op = assemble(g, fs, 1.0, 0.5, layer);
    VecC f = gaussian_rhs(g, 0.75, 1.5);
    auto [u, stats] = solve(op, f, 1e-8, 400);
    OracleSolution oracle = free_resolvent_convolution(f, 1.0, 0.5, g);
    const double inner = (1.0 - layer.width) * g.half_width();
    double num = 0.0, den = 0.0;
    for (Index i = 0; i < g.size(); ++i) {
      if (g.point(i).cwiseAbs().maxCoeff() > inner) continue;
      num += std::norm(u[i] - oracle.u[i]);
      den += std::norm(oracle.u[i]);
    }
    return std::sqrt(num / den);
  };
  const double g32 = gap(32);
  const double g64 = gap(64);
  CHECK(g32 <= 0.05);
  CHECK(g64 <= 0.015);
  CHECK(g32 / g64 > 2.0);  // observed O(h^2) trend
}

TEST_CASE("substitution residual of the oracle shrinks under refinement") {
  // Apply the discrete Helmholtz operator to the oracle solution away from
  // the source; the defect is the discretization error of the stencil.
  auto defect = [](int n) {
    Grid g(3, 6.0, n, true);
    FieldSet fs = sample_fields(g, make_zero_potential(), make_zero_electric());
    DiscreteOperator op = assemble(g, fs, 1.0, 0.5);
    VecC f = gaussian_rhs(g, 0.6, 1.2);
    OracleSolution oracle = free_resolvent_convolution(f, 1.0, 0.5, g);
    const VecC resid = op.apply(oracle.u) - f;
    double worst = 0.0;
    for (Index i = 0; i < g.size(); ++i) {
      const PointD x = g.point(i);
      if (g.radii()[i] < 2.0 || x.cwiseAbs().maxCoeff() > 4.0) continue;
      worst = std::max(worst, std::abs(resid[i]));
    }
    return worst;
  };
  const double d16 = defect(16), d32 = defect(32);
  CHECK(d32 < d16);
}

TEST_CASE("radiation functional: outgoing oracle bounded, incoming grows") {
  // Evaluate on the oracle solution and on its conjugate at two box sizes.
  auto run = [](double L, int n) {
    Grid g(3, L, n, true);
    FieldSet fs = sample_fields(g, make_zero_potential(), make_zero_electric());
    VecC f = gaussian_rhs(g, 0.6, 1.2);
    OracleSolution oracle = free_resolvent_convolution(f, 1.0, 1e-3, g);
    const double out = radiation_functional(oracle.u, fs, 1.0, 1.0, g);
    const VecC conj_u = oracle.u.conjugate();
    const double in = radiation_functional(conj_u, fs, 1.0, 1.0, g);
    return std::make_pair(out, in);
  };
  auto [out8, in8] = run(8.0, 32);
  auto [out16, in16] = run(16.0, 64);
  // outgoing: stable in L; incoming: roughly proportional to L
  CHECK(out16 < 2.0 * out8);
  CHECK(in16 > 1.5 * in8);
  CHECK(in8 > 5.0 * out8);
}
