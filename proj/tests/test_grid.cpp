#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "helmlab/grid.hpp"

using namespace helmlab;

TEST_CASE("offset grid constructor arithmetic") {
  Grid g(3, 8.0, 32, true);
  CHECK(g.spacing() == doctest::Approx(0.5));
  CHECK(g.size() == 32768);
  CHECK(g.radii().minCoeff() >= 0.25);

  Grid g2(2, 4.0, 16, true);
  CHECK(g2.size() == 256);
  CHECK(g2.spacing() == doctest::Approx(0.5));
}

TEST_CASE("grid rejects bad parameters") {
  CHECK_THROWS_AS(Grid(3, 8.0, 3, true), std::invalid_argument);   // too small
  CHECK_THROWS_AS(Grid(3, 8.0, 9, true), std::invalid_argument);   // odd offset
  CHECK_THROWS_AS(Grid(1, 8.0, 8, true), std::invalid_argument);   // d too small
  CHECK_THROWS_AS(Grid(3, -1.0, 8, true), std::invalid_argument);  // bad L
}

TEST_CASE("node coordinates reproducible and decode/encode round-trip") {
  Grid g(3, 2.0, 8, true);
  int k[8];
  for (Index i = 0; i < g.size(); i += 37) {
    g.decode(i, k);
    CHECK(g.encode(k) == i);
  }
  // bit-exact reproducibility from parameters
  Grid g2(3, 2.0, 8, true);
  CHECK((g.radii() - g2.radii()).norm() == 0.0);
}

TEST_CASE("dyadic index rule") {
  CHECK(dyadic_index(0.75) == 0);  // annulus [1/2, 1]
  CHECK(dyadic_index(1.0) == 0);   // tie resolved to the smallest admissible j
  CHECK(dyadic_index(1.5) == 1);
  CHECK(dyadic_index(2.0) == 1);
  CHECK(dyadic_index(0.5) == -1);
  CHECK(dyadic_index(0.6) == 0);
}

TEST_CASE("dyadic decomposition covers all nodes exactly once") {
  Grid g(3, 8.0, 16, true);
  DyadicDecomposition dec = dyadic_decomposition(g);
  CHECK(dec.j_max == 3);  // 2^3 = L
  size_t total = 0;
  for (int j = dec.j_min; j <= dec.j_top; ++j) total += dec.annulus(j).size();
  CHECK(total == static_cast<size_t>(g.size()));
  // every assignment admissible
  for (Index i = 0; i < g.size(); ++i) {
    const int j = dec.annulus_of[i];
    const double r = g.radii()[i];
    CHECK(std::ldexp(1.0, j - 1) <= r + 1e-14);
    CHECK(r <= std::ldexp(1.0, j) + 1e-14);
  }
  // corners exceed the inscribed ball and land above j_max
  CHECK(dec.j_top > dec.j_max);
}

TEST_CASE("annulus cell counting identity") {
  // The union of annuli is the whole box, so the cell counts sum to (2L)^d.
  Grid g(2, 4.0, 16, true);
  DyadicDecomposition dec = dyadic_decomposition(g);
  double vol = 0.0;
  for (int j = dec.j_min; j <= dec.j_top; ++j)
    vol += dec.annulus(j).size() * g.cell_volume();
  CHECK(vol == doctest::Approx(std::pow(2.0 * g.half_width(), g.dim())));
}

TEST_CASE("sphere shell quadrature approximates the sphere area") {
  Grid g(3, 8.0, 64, true);  // h = 0.25
  SphereShell shell = sphere_shell(g, 2.0);
  const double area = shell.integrate([](Index) { return 1.0; });
  CHECK(area == doctest::Approx(4.0 * kPi * 4.0).epsilon(0.10));

  // zero integrand
  CHECK(shell.integrate([](Index) { return 0.0; }) == 0.0);

  CHECK_THROWS_AS(sphere_shell(g, 16.0), std::invalid_argument);
  CHECK_THROWS_AS(sphere_shell(g, 0.05), std::invalid_argument);
}

TEST_CASE("shell quadrature error shrinks under refinement") {
  auto rel_err = [](int n) {
    Grid g(3, 4.0, n, true);
    SphereShell s = sphere_shell(g, 2.0);
    const double area = s.integrate([](Index) { return 1.0; });
    return std::abs(area - 16.0 * kPi) / (16.0 * kPi);
  };
  // smooth integrand: error decreases from h to h/2
  CHECK(rel_err(64) < rel_err(32));
}

TEST_CASE("sup radii set contains the dyadic scales and the box half-width") {
  Grid g(3, 6.0, 16, true);
  DyadicDecomposition dec = dyadic_decomposition(g);
  const auto radii = dec.sup_radii(1.0);
  std::set<double> s(radii.begin(), radii.end());
  CHECK(s.count(2.0) == 1);
  CHECK(s.count(4.0) == 1);
  CHECK(s.count(6.0) == 1);  // L itself
  CHECK(s.count(1.0) == 0);  // strictly above R0
}
