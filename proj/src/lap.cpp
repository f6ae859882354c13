#include "helmlab/lap.hpp"

#include <cmath>
#include <stdexcept>

namespace helmlab {

double EpsilonSchedule::value(int k) const { return eps0 * std::pow(rho, k); }

std::vector<double> EpsilonSchedule::values() const {
  if (!(eps0 > 0.0) || !(rho > 0.0 && rho < 1.0) || K < 0)
    throw std::invalid_argument("epsilon schedule: need eps0 > 0, rho in (0,1)");
  std::vector<double> v(K + 1);
  for (int k = 0; k <= K; ++k) v[k] = value(k);
  return v;
}

Problem make_problem(std::string family, Grid grid, FieldSet fields, VecC f,
                     AbsorbingLayerConfig layer) {
  Problem p{std::move(family), std::move(grid), std::move(fields),
            DyadicDecomposition{}, std::move(f), layer};
  p.dec = dyadic_decomposition(p.grid);
  return p;
}

void SweepResult::add(const Problem& p, double lambda, double eps, double delta,
                      const std::string& metric, double value,
                      const std::string& status) {
  rows.push_back({p.family, p.grid.dim(), p.grid.half_width(), p.grid.per_axis(),
                  lambda, eps, delta, metric, value, status});
}

namespace {

// Local H^1_A distance over |x| <= rho: (int lambda |w|^2 + |grad_A w|^2)^{1/2}.
double local_h1a(const VecC& w, const Problem& p, double lambda, double rho) {
  const VecD& r = p.grid.radii();
  const MatC g = covariant_gradient(w, p.fields, p.grid);
  double acc = 0.0;
  for (Index i = 0; i < p.grid.size(); ++i) {
    if (r[i] > rho) continue;
    acc += lambda * std::norm(w[i]) + g.row(i).squaredNorm();
  }
  return std::sqrt(acc * p.grid.cell_volume());
}

}  // namespace

LapRunResult limiting_absorption_run(const Problem& p, double lambda,
                                     const EpsilonSchedule& schedule,
                                     double probe_radius, double cauchy_tol,
                                     const SolverOptions& solver,
                                     const std::vector<double>& deltas) {
  if (!p.layer.enabled())
    throw std::invalid_argument(
        "limiting_absorption_run: absorbing layer required for the eps -> 0 limit");
  LapRunResult out;
  const std::vector<double> eps = schedule.values();
  VecC prev;
  for (size_t k = 0; k < eps.size(); ++k) {
    const DiscreteOperator op = assemble(p.grid, p.fields, lambda, eps[k], p.layer);
    auto [u, stats] = solve(op, p.f, solver);
    out.eps_values.push_back(eps[k]);
    out.rows.add(p, lambda, eps[k], 0.0, "solve_residual", stats.relative_residual);
    if (k > 0) {
      const VecC diff = prev - u;
      const double dk = local_h1a(diff, p, lambda, probe_radius);
      out.cauchy.push_back(dk);
      out.rows.add(p, lambda, eps[k], 0.0, "cauchy_diff", dk);
      if (dk < cauchy_tol) {
        out.converged = true;
        out.u = std::move(u);
        break;
      }
    }
    prev = std::move(u);
    if (k + 1 == eps.size()) out.u = prev;
  }
  if (p.f.norm() == 0.0) out.converged = true;  // all iterates identically zero
  out.report = norm_report(out.u, p.fields, lambda, p.grid, p.dec, deltas);
  for (double delta : deltas) {
    const double rad = radiation_functional(out.u, p.fields, lambda, delta, p.grid);
    out.rows.add(p, lambda, out.eps_values.back(), delta, "radiation", rad);
  }
  out.rows.add(p, lambda, out.eps_values.back(), 0.0, "mc_r1", out.report.mc_r1);
  return out;
}

SlopeFit lambda_sweep(const Problem& p, const std::vector<double>& lambdas,
                      double s, double eps, const SolverOptions& solver) {
  if (!(s > 1.0)) throw std::invalid_argument("lambda_sweep: weight s must exceed 1");
  SlopeFit fit;
  for (double lambda : lambdas) {
    const DiscreteOperator op = assemble(p.grid, p.fields, lambda, eps * lambda, p.layer);
    auto [u, stats] = solve(op, p.f, solver);
    fit.points.emplace_back(lambda, weighted_l2(u, p.grid, -s));
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int cnt = 0;
  for (const auto& [lambda, norm] : fit.points) {
    if (!(norm > 0.0)) {
      fit.degenerate = true;
      return fit;
    }
    const double x = std::log(lambda), y = std::log(norm);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++cnt;
  }
  const double denom = cnt * sxx - sx * sx;
  if (denom == 0.0) {
    fit.degenerate = true;
    return fit;
  }
  fit.slope = (cnt * sxy - sx * sy) / denom;
  return fit;
}

RatioStudy estimate_ratio_study(const Problem& p,
                                const std::vector<double>& lambdas,
                                const std::vector<double>& eps_values,
                                const std::vector<double>& deltas,
                                const SolverOptions& solver) {
  RatioStudy st;
  const double nf = dual_n(p.f, p.grid, p.dec, 1.0);
  std::vector<double> fweight(deltas.size(), 0.0);
  const VecD& r = p.grid.radii();
  for (size_t di = 0; di < deltas.size(); ++di) {
    double acc = 0.0;
    for (Index i = 0; i < p.grid.size(); ++i)
      acc += std::pow(1.0 + r[i], 1.0 + deltas[di]) * std::norm(p.f[i]);
    fweight[di] = acc * p.grid.cell_volume();
  }
  if (nf == 0.0) {
    st.degenerate = true;
    for (double lambda : lambdas)
      for (double eps : eps_values)
        st.rows.add(p, lambda, eps, 0.0, "estimate_ratio", 0.0, "degenerate");
    return st;
  }
  st.r1_min = std::numeric_limits<double>::infinity();
  for (double delta : deltas)
    st.r2_minmax[delta] = {std::numeric_limits<double>::infinity(), 0.0};
  for (double lambda : lambdas) {
    for (double eps : eps_values) {
      const DiscreteOperator op = assemble(p.grid, p.fields, lambda, eps, p.layer);
      auto [u, stats] = solve(op, p.f, solver);
      const double lhs = estimate_lhs_main(u, p.fields, lambda, p.grid, p.dec);
      const double r1 = lhs / (nf * nf);
      st.rows.add(p, lambda, eps, 0.0, "estimate_ratio", r1);
      st.r1_max = std::max(st.r1_max, r1);
      st.r1_min = std::min(st.r1_min, r1);
      for (size_t di = 0; di < deltas.size(); ++di) {
        const double rad =
            radiation_functional(u, p.fields, lambda, deltas[di], p.grid);
        if (fweight[di] > 0.0) {
          const double r2 = rad / fweight[di];
          st.rows.add(p, lambda, eps, deltas[di], "radiation_ratio", r2);
          auto& mm = st.r2_minmax[deltas[di]];
          mm.first = std::min(mm.first, r2);
          mm.second = std::max(mm.second, r2);
        } else {
          st.rows.add(p, lambda, eps, deltas[di], "radiation_ratio", 0.0,
                      "degenerate");
        }
      }
    }
  }
  return st;
}

EllipticCheck elliptic_check(const VecC& u, const VecC& f, const FieldSet& fields,
                             double lambda, double R, const Grid& grid) {
  if (!(R + 1.0 < grid.half_width()))
    throw std::invalid_argument("elliptic_check: needs R + 1 < L");
  EllipticCheck out;
  const VecD& r = grid.radii();
  const MatC g = covariant_gradient(u, fields, grid);
  const double vol = grid.cell_volume();
  double lhs = 0.0, uu = 0.0, ff = 0.0;
  for (Index i = 0; i < grid.size(); ++i) {
    if (r[i] <= R) lhs += g.row(i).squaredNorm();
    if (r[i] <= R + 1.0) {
      uu += std::norm(u[i]);
      ff += std::norm(f[i]);
    }
  }
  out.lhs = lhs * vol;
  out.u_term = (1.0 + lambda) * uu * vol;
  out.f_term = ff * vol;
  out.C = out.u_term > 0.0 ? std::max(0.0, (out.lhs - out.f_term) / out.u_term) : 0.0;
  return out;
}

double uniqueness_probe(const Problem& p, double lambda,
                        const SolverOptions& solver) {
  if (!p.layer.enabled())
    throw std::invalid_argument("uniqueness_probe: outgoing closure required");
  const DiscreteOperator op = assemble(p.grid, p.fields, lambda, 0.0, p.layer);
  auto [u, stats] = solve(op, VecC(VecC::Zero(p.grid.size())), solver);
  return morrey_campanato(u, p.grid, p.dec, 1.0);
}

std::optional<double> find_positivity_threshold(
    const Problem& p, const std::vector<double>& lambdas, double eps,
    const RadialMultiplier& pv, const SolverOptions& solver) {
  std::vector<std::pair<double, bool>> verdicts;
  for (double lambda : lambdas) {
    const DiscreteOperator op = assemble(p.grid, p.fields, lambda, eps, p.layer);
    auto [u, stats] = solve(op, p.f, solver);
    const double value = positivity_combination(u, pv, p.fields, lambda, p.grid);
    verdicts.emplace_back(lambda, value >= 0.0);
  }
  // Smallest sweep value from which positivity holds on the whole tail.
  for (size_t i = 0; i < verdicts.size(); ++i) {
    bool tail_ok = true;
    for (size_t j = i; j < verdicts.size(); ++j) tail_ok = tail_ok && verdicts[j].second;
    if (tail_ok) return verdicts[i].first;
  }
  return std::nullopt;
}

}  // namespace helmlab
