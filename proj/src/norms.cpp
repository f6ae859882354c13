#include "helmlab/norms.hpp"

#include <cmath>
#include <stdexcept>

namespace helmlab {

namespace {

template <class Vec>
double mc_impl(const Vec& u, const Grid& grid, const DyadicDecomposition& dec,
               double R0) {
  const VecD& r = grid.radii();
  const double vol = grid.cell_volume();
  double sup = 0.0;
  for (double R : dec.sup_radii(R0)) {
    double s = 0.0;
    for (Index i = 0; i < grid.size(); ++i)
      if (r[i] <= R) s += std::norm(u[i]);
    sup = std::max(sup, s * vol / R);
  }
  return std::sqrt(sup);
}

template <class Vec>
double dual_impl(const Vec& f, const Grid& grid, const DyadicDecomposition& dec,
                 double R0) {
  const double vol = grid.cell_volume();
  double total = 0.0;
  if (R0 == 0.0) {
    for (int j = dec.j_min; j <= dec.j_top; ++j) {
      double s = 0.0;
      for (Index i : dec.annulus(j)) s += std::norm(f[i]);
      total += std::sqrt(std::ldexp(1.0, j + 1) * s * vol);
    }
  } else {
    // J = 0 for R0 = 1: annuli j >= 1 plus the unit-ball term.
    const VecD& r = grid.radii();
    for (int j = std::max(1, dec.j_min); j <= dec.j_top; ++j) {
      double s = 0.0;
      for (Index i : dec.annulus(j)) s += std::norm(f[i]);
      total += std::sqrt(std::ldexp(1.0, j + 1) * s * vol);
    }
    double ball = 0.0;
    for (Index i = 0; i < grid.size(); ++i)
      if (r[i] <= R0) ball += std::norm(f[i]);
    total += std::sqrt(R0 * ball * vol);
  }
  return total;
}

}  // namespace

double morrey_campanato(const VecC& u, const Grid& grid,
                        const DyadicDecomposition& dec, double R0) {
  return mc_impl(u, grid, dec, R0);
}
double morrey_campanato(const VecD& u, const Grid& grid,
                        const DyadicDecomposition& dec, double R0) {
  return mc_impl(u, grid, dec, R0);
}

double dual_n(const VecC& f, const Grid& grid, const DyadicDecomposition& dec,
              double R0) {
  return dual_impl(f, grid, dec, R0);
}
double dual_n(const VecD& f, const Grid& grid, const DyadicDecomposition& dec,
              double R0) {
  return dual_impl(f, grid, dec, R0);
}

DualityCheck duality_check(const VecD& f, const VecD& g, const Grid& grid,
                           const DyadicDecomposition& dec) {
  DualityCheck out;
  out.lhs = f.dot(g) * grid.cell_volume();
  out.rhs = morrey_campanato(g, grid, dec, 0.0) * dual_n(f, grid, dec, 0.0);
  out.pass = out.lhs <= out.rhs * (1.0 + 1e-8);
  return out;
}

double weighted_l2(const VecC& u, const Grid& grid, double s) {
  const VecD& r = grid.radii();
  double acc = 0.0;
  for (Index i = 0; i < grid.size(); ++i)
    acc += std::pow(1.0 + r[i], 2.0 * s) * std::norm(u[i]);
  return std::sqrt(acc * grid.cell_volume());
}

double surface_mean_sq(const VecC& u, const SphereShell& shell) {
  const double s = shell.integrate([&u](Index i) { return std::norm(u[i]); });
  return s / (shell.R * shell.R);
}

double sup_surface_mean_sq(const VecC& u, const Grid& grid,
                           const DyadicDecomposition& dec, double R_min) {
  double sup = 0.0;
  for (double R : dec.sup_radii(R_min)) {
    if (!(R > 0.5 * grid.spacing() && R < grid.half_width())) continue;
    sup = std::max(sup, surface_mean_sq(u, sphere_shell(grid, R)));
  }
  return sup;
}

double tangential_weighted(const MatC& grad, const Grid& grid) {
  const VecC gr = radial_component(grad, grid);
  const VecD t = tangential_sq(grad, gr);
  const VecD& r = grid.radii();
  double acc = 0.0;
  for (Index i = 0; i < grid.size(); ++i) acc += t[i] / r[i];
  return acc * grid.cell_volume();
}

double cubic_weighted(const VecC& u, const Grid& grid) {
  const VecD& r = grid.radii();
  double acc = 0.0;
  for (Index i = 0; i < grid.size(); ++i)
    acc += std::norm(u[i]) / (r[i] * r[i] * r[i]);
  return acc * grid.cell_volume();
}

double radiation_functional(const VecC& u, const FieldSet& fields,
                            double lambda, double delta, const Grid& grid) {
  if (!(delta > 0.0 && delta < 2.0))
    throw std::invalid_argument(
        "radiation_functional: delta must lie strictly in (0, 2)");
  const MatC g = covariant_gradient(u, fields, grid);
  const VecD& r = grid.radii();
  const double root = std::sqrt(lambda);
  const Complex iu(0.0, 1.0);
  double acc = 0.0;
  for (Index i = 0; i < grid.size(); ++i) {
    if (r[i] < 1.0) continue;
    const PointD x = grid.point(i);
    double term = 0.0;
    for (int a = 0; a < grid.dim(); ++a)
      term += std::norm(g(i, a) - iu * root * (x[a] / r[i]) * u[i]);
    acc += term * std::pow(1.0 + r[i], delta - 1.0);
  }
  return acc * grid.cell_volume();
}

HardyCheck hardy_check(const VecC& u, const FieldSet& fields, const Grid& grid) {
  if (grid.dim() < 3)
    throw std::invalid_argument("hardy_check: requires d >= 3");
  HardyCheck out;
  const VecD& r = grid.radii();
  double acc = 0.0;
  for (Index i = 0; i < grid.size(); ++i) acc += std::norm(u[i]) / (r[i] * r[i]);
  out.lhs = acc * grid.cell_volume();
  const double cd = 4.0 / ((grid.dim() - 2.0) * (grid.dim() - 2.0));
  out.rhs = cd * covariant_energy(u, fields, grid);
  out.pass = out.lhs <= out.rhs * (1.0 + 10.0 * grid.spacing());
  return out;
}

DiamagneticCheck diamagnetic_check(const VecC& u, const FieldSet& fields,
                                   const Grid& grid) {
  DiamagneticCheck out;
  out.lhs = modulus_gradient_energy(u, grid);
  out.rhs = covariant_energy(u, fields, grid);
  out.pass = out.lhs <= out.rhs * (1.0 + 10.0 * grid.spacing());
  return out;
}

double estimate_lhs_main(const VecC& u, const FieldSet& fields, double lambda,
                         const Grid& grid, const DyadicDecomposition& dec) {
  const MatC g = covariant_gradient(u, fields, grid);
  VecD gm(grid.size());
  for (Index i = 0; i < grid.size(); ++i) gm[i] = g.row(i).norm();
  const double mc1 = morrey_campanato(u, grid, dec, 1.0);
  const double gmc1 = morrey_campanato(gm, grid, dec, 1.0);
  double value = lambda * mc1 * mc1 + gmc1 * gmc1;
  value += tangential_weighted(g, grid);
  value += sup_surface_mean_sq(u, grid, dec, 1.0);
  if (grid.dim() != 3)
    value += (grid.dim() - 3.0) * cubic_weighted(u, grid);
  return value;
}

std::vector<std::pair<std::string, double>> NormReport::rows() const {
  // Radiation entries are keyed by delta and serialized separately.
  return {
      {"mc", mc},
      {"mc_r1", mc_r1},
      {"dual", dual},
      {"dual_r1", dual_r1},
      {"grad_mc_r1", grad_mc_r1},
      {"tangential", tangential},
      {"cubic", cubic},
      {"sup_surface", sup_surface},
      {"estimate_lhs", estimate_lhs},
  };
}

NormReport norm_report(const VecC& u, const FieldSet& fields, double lambda,
                       const Grid& grid, const DyadicDecomposition& dec,
                       const std::vector<double>& deltas) {
  NormReport rep;
  rep.mc = morrey_campanato(u, grid, dec, 0.0);
  rep.mc_r1 = morrey_campanato(u, grid, dec, 1.0);
  rep.dual = dual_n(u, grid, dec, 0.0);
  rep.dual_r1 = dual_n(u, grid, dec, 1.0);
  const MatC g = covariant_gradient(u, fields, grid);
  VecD gm(grid.size());
  for (Index i = 0; i < grid.size(); ++i) gm[i] = g.row(i).norm();
  rep.grad_mc_r1 = morrey_campanato(gm, grid, dec, 1.0);
  rep.tangential = tangential_weighted(g, grid);
  rep.cubic = cubic_weighted(u, grid);
  rep.sup_surface = sup_surface_mean_sq(u, grid, dec, 1.0);
  rep.estimate_lhs = estimate_lhs_main(u, fields, lambda, grid, dec);
  for (double delta : deltas)
    rep.radiation.emplace_back(delta,
                               radiation_functional(u, fields, lambda, delta, grid));
  return rep;
}

}  // namespace helmlab
