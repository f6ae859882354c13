#include "helmlab/multipliers.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include "helmlab/fields.hpp"

namespace helmlab {

namespace {

// Cumulative trapezoid table for psi = int_0^r psi'(s) ds; psi itself never
// enters the identities, so interpolation accuracy is not load bearing.
RadialFn cumulative(const RadialFn& g, double rmax, int steps = 8192) {
  auto table = std::make_shared<std::vector<double>>(steps + 1, 0.0);
  const double dr = rmax / steps;
  double acc = 0.0, prev = g(0.0);
  for (int i = 1; i <= steps; ++i) {
    const double cur = g(i * dr);
    acc += 0.5 * (prev + cur) * dr;
    (*table)[i] = acc;
    prev = cur;
  }
  return [table, dr, rmax](double r) {
    if (r <= 0.0) return 0.0;
    if (r >= rmax) return table->back();
    const double t = r / dr;
    const int i = static_cast<int>(t);
    const double w = t - i;
    return (*table)[i] * (1.0 - w) + (*table)[i + 1] * w;
  };
}

double grid_rmax(const Grid& grid) {
  return std::sqrt(static_cast<double>(grid.dim())) * grid.half_width() + 1.0;
}

}  // namespace

void RadialMultiplier::sample(const Grid& grid) {
  const VecD& r = grid.radii();
  const Index N = grid.size();
  auto fill = [&](VecD& v, const RadialFn& f) {
    v.resize(N);
    for (Index i = 0; i < N; ++i) v[i] = f ? f(r[i]) : 0.0;
  };
  fill(psi, psi_f);
  fill(dpsi, dpsi_f);
  fill(d2psi, d2psi_f);
  fill(lap_psi, lap_psi_f);
  fill(dlap_psi, dlap_psi_f);
  fill(phi, phi_f);
  fill(dphi, dphi_f);
}

RadialMultiplier make_pv_multiplier(const Grid& grid, double R, double M) {
  if (!(R > 0.0)) throw std::invalid_argument("pv multiplier: R must be positive");
  const int d = grid.dim();
  if (M <= 0.0) M = d == 3 ? 0.5 : 1.0;
  RadialMultiplier m;
  m.family = "pv";
  m.d = d;
  m.R = R;
  m.M = M;
  m.dpsi_f = [R, M](double r) { return r < R ? r / (2.0 * R) + M : M + 0.5; };
  m.d2psi_f = [R](double r) { return r < R ? 1.0 / (2.0 * R) : 0.0; };
  m.psi_f = [R, M](double r) {
    return r < R ? r * r / (4.0 * R) + M * r
                 : R / 4.0 + M * R + (M + 0.5) * (r - R);
  };
  auto dpsi = m.dpsi_f;
  auto d2psi = m.d2psi_f;
  m.lap_psi_f = [d, dpsi, d2psi](double r) {
    return d2psi(r) + (d - 1) * dpsi(r) / r;
  };
  m.dlap_psi_f = [d, R, M](double r) {
    return r < R ? -(d - 1) * M / (r * r) : -(d - 1) * (M + 0.5) / (r * r);
  };
  m.phi_f = [R](double r) { return r < R ? 1.0 / (4.0 * R) : 0.0; };
  m.dphi_f = [](double) { return 0.0; };
  m.surfaces.push_back({R, -1.0 / (4.0 * R), -1.0 / (2.0 * R)});
  m.sample(grid);
  return m;
}

RadialMultiplier make_sommerfeld_multiplier(const Grid& grid, double delta,
                                            double r0) {
  if (!(delta > 0.0 && delta < 2.0))
    throw std::invalid_argument(
        "sommerfeld multiplier: delta must lie strictly in (0, 2)");
  if (!(r0 > 0.0))
    throw std::invalid_argument("sommerfeld multiplier: r0 must be positive");
  const int d = grid.dim();
  RadialMultiplier m;
  m.family = "sommerfeld";
  m.d = d;
  m.delta = delta;
  m.r0 = r0;
  auto P = [delta](double r) { return std::pow(1.0 + r, delta); };
  auto P1 = [delta](double r) { return delta * std::pow(1.0 + r, delta - 1.0); };
  auto P2 = [delta](double r) {
    return delta * (delta - 1.0) * std::pow(1.0 + r, delta - 2.0);
  };
  auto th = [r0](double r) { return smoothstep(r / r0, 1.0, 2.0); };
  auto th1 = [r0](double r) { return smoothstep_d1(r / r0, 1.0, 2.0) / r0; };
  auto th2 = [r0](double r) { return smoothstep_d2(r / r0, 1.0, 2.0) / (r0 * r0); };
  m.dpsi_f = [P, th](double r) { return P(r) * th(r); };
  m.d2psi_f = [P, P1, th, th1](double r) { return P1(r) * th(r) + P(r) * th1(r); };
  auto d3psi = [P, P1, P2, th, th1, th2](double r) {
    return P2(r) * th(r) + 2.0 * P1(r) * th1(r) + P(r) * th2(r);
  };
  m.psi_f = cumulative(m.dpsi_f, grid_rmax(grid));
  auto dpsi = m.dpsi_f;
  auto d2psi = m.d2psi_f;
  m.lap_psi_f = [d, dpsi, d2psi](double r) {
    return d2psi(r) + (d - 1) * dpsi(r) / r;
  };
  m.dlap_psi_f = [d, dpsi, d2psi, d3psi](double r) {
    return d3psi(r) + (d - 1) * (d2psi(r) / r - dpsi(r) / (r * r));
  };
  // Companion weight: the second-derivative profile under the same cutoff.
  m.phi_f = [P1, th](double r) { return P1(r) * th(r); };
  m.dphi_f = [P1, P2, th, th1](double r) { return P2(r) * th(r) + P1(r) * th1(r); };
  m.sample(grid);
  return m;
}

RadialMultiplier make_uniqueness_multiplier(const Grid& grid, double R,
                                            double r0) {
  if (!(R > 2.0 * r0))
    throw std::invalid_argument("uniqueness multiplier: requires R > 2 r0");
  const int d = grid.dim();
  RadialMultiplier m;
  m.family = "uniqueness";
  m.d = d;
  m.R = R;
  m.r0 = r0;
  auto th = [R](double r) { return smoothstep(r / R, 0.5, 1.0); };
  auto th1 = [R](double r) { return smoothstep_d1(r / R, 0.5, 1.0) / R; };
  auto th2 = [R](double r) { return smoothstep_d2(r / R, 0.5, 1.0) / (R * R); };
  auto th3 = [R](double r) { return smoothstep_d3(r / R, 0.5, 1.0) / (R * R * R); };
  m.dpsi_f = [R, th](double r) { return (r / R) * th(r); };
  m.d2psi_f = [R, th, th1](double r) { return th(r) / R + (r / R) * th1(r); };
  auto d3psi = [R, th1, th2](double r) { return 2.0 * th1(r) / R + (r / R) * th2(r); };
  m.psi_f = cumulative(m.dpsi_f, grid_rmax(grid));
  auto dpsi = m.dpsi_f;
  auto d2psi = m.d2psi_f;
  m.lap_psi_f = [d, dpsi, d2psi](double r) {
    return d2psi(r) + (d - 1) * dpsi(r) / r;
  };
  m.dlap_psi_f = [d, dpsi, d2psi, d3psi](double r) {
    return d3psi(r) + (d - 1) * (d2psi(r) / r - dpsi(r) / (r * r));
  };
  m.phi_f = [R, th](double r) { return th(r) / (2.0 * R); };
  m.dphi_f = [R, th1](double r) { return th1(r) / (2.0 * R); };
  (void)th3;
  m.sample(grid);
  return m;
}

RadialMultiplier make_quadratic_multiplier(const Grid& grid) {
  const int d = grid.dim();
  RadialMultiplier m;
  m.family = "quadratic";
  m.d = d;
  m.psi_f = [](double r) { return 0.5 * r * r; };
  m.dpsi_f = [](double r) { return r; };
  m.d2psi_f = [](double) { return 1.0; };
  m.lap_psi_f = [d](double) { return static_cast<double>(d); };
  m.dlap_psi_f = [](double) { return 0.0; };
  m.phi_f = [](double r) { return 1.0 / (1.0 + r); };
  m.dphi_f = [](double r) { return -1.0 / ((1.0 + r) * (1.0 + r)); };
  m.sample(grid);
  return m;
}

RadialMultiplier make_constant_phi(const Grid& grid, double c) {
  RadialMultiplier m;
  m.family = "constant";
  m.d = grid.dim();
  m.phi_f = [c](double) { return c; };
  m.dphi_f = [](double) { return 0.0; };
  m.sample(grid);
  return m;
}

RadialMultiplier build_multiplier(const std::string& family, const Grid& grid,
                                  double p1, double p2) {
  if (family == "pv") return make_pv_multiplier(grid, p1, p2);
  if (family == "sommerfeld") return make_sommerfeld_multiplier(grid, p1, p2);
  if (family == "uniqueness") return make_uniqueness_multiplier(grid, p1, p2);
  throw std::invalid_argument("unknown multiplier family: " + family);
}

namespace {

struct CrossFields {
  VecC gr;        // radial covariant derivative
  VecD tang_sq;   // tangential magnitude^2
  MatC grad;
};

CrossFields cross_fields(const VecC& u, const FieldSet& fields, const Grid& grid) {
  CrossFields c;
  c.grad = covariant_gradient(u, fields, grid);
  c.gr = radial_component(c.grad, grid);
  c.tang_sq = tangential_sq(c.grad, c.gr);
  return c;
}

// Surface measures from jumps of phi or lap(psi): signed shell integrals of
// the paired cross term.
double jump_surface(const Grid& grid, const VecC& gr, const VecC& u, double R,
                    bool imaginary_part) {
  const SphereShell shell = sphere_shell(grid, R);
  return shell.integrate([&](Index i) {
    const Complex v = gr[i] * std::conj(u[i]);
    return imaginary_part ? v.imag() : v.real();
  });
}

void finish(IdentityResidualReport& rep) {
  rep.residual = 0.0;
  rep.scale = 0.0;
  for (const auto& t : rep.terms) {
    rep.residual += t.value;
    rep.scale = std::max(rep.scale, std::abs(t.value));
  }
}

}  // namespace

IdentityResidualReport identity_residual_symmetric(
    const VecC& u, const RadialMultiplier& m, const FieldSet& fields,
    double lambda, double eps, const VecC& f, const Grid& grid) {
  (void)eps;  // the symmetric pairing has no epsilon term
  const double vol = grid.cell_volume();
  const Index N = grid.size();
  const CrossFields c = cross_fields(u, fields, grid);

  IdentityResidualReport rep;
  rep.identity = "symmetric";
  double t_lambda = 0.0, t_pot = 0.0, t_cross = 0.0, t_rhs = 0.0;
  for (Index i = 0; i < N; ++i) {
    const double uu = std::norm(u[i]);
    t_lambda += m.phi[i] * uu;
    t_pot += m.phi[i] * (fields.V1_nodes[i] + fields.V2_nodes[i]) * uu;
    t_cross += m.dphi[i] * (c.gr[i] * std::conj(u[i])).real();
    t_rhs += m.phi[i] * (f[i] * std::conj(u[i])).real();
  }
  rep.terms.push_back({"lambda_mass", lambda * t_lambda * vol});
  rep.terms.push_back(
      {"grad_energy", -covariant_energy_weighted(u, fields, grid, m.phi_f)});
  rep.terms.push_back({"potential_mass", t_pot * vol});
  rep.terms.push_back({"phi_cross", -t_cross * vol});
  double surf = 0.0;
  for (const auto& s : m.surfaces)
    surf -= s.phi_jump * jump_surface(grid, c.gr, u, s.R, false);
  if (!m.surfaces.empty()) rep.terms.push_back({"phi_surface", surf});
  rep.terms.push_back({"rhs_mass", -t_rhs * vol});
  finish(rep);
  return rep;
}

IdentityResidualReport identity_residual_imag(const VecC& u,
                                              const RadialMultiplier& m,
                                              const FieldSet& fields, double eps,
                                              const VecC& f, const Grid& grid) {
  const double vol = grid.cell_volume();
  const Index N = grid.size();
  const CrossFields c = cross_fields(u, fields, grid);

  IdentityResidualReport rep;
  rep.identity = "imaginary";
  double t_eps = 0.0, t_cross = 0.0, t_rhs = 0.0;
  for (Index i = 0; i < N; ++i) {
    t_eps += m.phi[i] * std::norm(u[i]);
    t_cross += m.dphi[i] * (c.gr[i] * std::conj(u[i])).imag();
    t_rhs += m.phi[i] * (f[i] * std::conj(u[i])).imag();
  }
  rep.terms.push_back({"eps_mass", eps * t_eps * vol});
  rep.terms.push_back({"phi_cross", -t_cross * vol});
  double surf = 0.0;
  for (const auto& s : m.surfaces)
    surf -= s.phi_jump * jump_surface(grid, c.gr, u, s.R, true);
  if (!m.surfaces.empty()) rep.terms.push_back({"phi_surface", surf});
  rep.terms.push_back({"rhs_mass", -t_rhs * vol});
  finish(rep);
  return rep;
}

IdentityResidualReport identity_residual_morawetz(
    const VecC& u, const RadialMultiplier& m, const FieldSet& fields,
    double lambda, double eps, const VecC& f, const Grid& grid) {
  (void)lambda;  // lambda cancels against itself in this pairing
  const double vol = grid.cell_volume();
  const int d = grid.dim();
  const Index N = grid.size();
  const VecD& r = grid.radii();
  const CrossFields c = cross_fields(u, fields, grid);

  IdentityResidualReport rep;
  rep.identity = "morawetz";
  double t_hess = 0.0, t_lap = 0.0, t_eps = 0.0, t_mag = 0.0;
  double t_v2lap = 0.0, t_v2cross = 0.0, t_v1 = 0.0;
  double t_fgrad = 0.0, t_fmass = 0.0;
  for (Index i = 0; i < N; ++i) {
    const Complex cross = c.gr[i] * std::conj(u[i]);
    const double uu = std::norm(u[i]);
    t_hess += m.d2psi[i] * std::norm(c.gr[i]) + m.dpsi[i] / r[i] * c.tang_sq[i];
    t_lap += m.dlap_psi[i] * cross.real();
    t_eps += m.dpsi[i] * cross.imag();
    Complex bdot = 0.0;
    for (int a = 0; a < d; ++a) bdot += fields.B.Btau(i, a) * c.grad(i, a);
    t_mag += m.dpsi[i] * (bdot * std::conj(u[i])).imag();
    t_v2lap += m.lap_psi[i] * fields.V2_nodes[i] * uu;
    t_v2cross += fields.V2_nodes[i] * m.dpsi[i] * cross.real();
    t_v1 += m.dpsi[i] * fields.dV1r_nodes[i] * uu;
    t_fgrad += m.dpsi[i] * (f[i] * std::conj(c.gr[i])).real();
    t_fmass += m.lap_psi[i] * (f[i] * std::conj(u[i])).real();
  }
  rep.terms.push_back({"hessian", t_hess * vol});
  double lap_surf = 0.0;
  for (const auto& s : m.surfaces)
    lap_surf += 0.5 * s.lap_psi_jump * jump_surface(grid, c.gr, u, s.R, false);
  rep.terms.push_back({"lap_cross", 0.5 * t_lap * vol + lap_surf});
  rep.terms.push_back({"eps_term", -eps * t_eps * vol});
  rep.terms.push_back({"magnetic", -t_mag * vol});
  rep.terms.push_back({"v2_lap", -0.5 * t_v2lap * vol});
  rep.terms.push_back({"v2_cross", -t_v2cross * vol});
  rep.terms.push_back({"v1_radial", 0.5 * t_v1 * vol});
  rep.terms.push_back({"rhs_grad", t_fgrad * vol});
  rep.terms.push_back({"rhs_mass", 0.5 * t_fmass * vol});
  finish(rep);
  return rep;
}

double positivity_combination(const VecC& u, const RadialMultiplier& pv,
                              const FieldSet& fields, double lambda,
                              const Grid& grid) {
  const VecC f0 = VecC::Zero(grid.size());
  const auto sym = identity_residual_symmetric(u, pv, fields, lambda, 0.0, f0, grid);
  const auto mor = identity_residual_morawetz(u, pv, fields, lambda, 0.0, f0, grid);
  return sym.residual + mor.residual;
}

}  // namespace helmlab
