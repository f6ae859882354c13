#include "helmlab/operator.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace helmlab {

Complex AbsorbingLayerConfig::stretch(double t, double L) const {
  if (!enabled()) return Complex(1.0, 0.0);
  const double start = (1.0 - width) * L;
  const double a = std::abs(t);
  if (a <= start) return Complex(1.0, 0.0);
  const double xi = std::min(1.0, (a - start) / (L - start));
  return Complex(1.0, strength * std::pow(xi, ramp_order));
}

DiscreteOperator assemble(const Grid& grid, const FieldSet& fields,
                          double lambda, double epsilon,
                          AbsorbingLayerConfig layer) {
  if (lambda <= 0.0) throw std::invalid_argument("assemble: lambda must be positive");
  if (epsilon < 0.0) throw std::invalid_argument("assemble: epsilon must be nonnegative");
  if (epsilon == 0.0 && !layer.enabled())
    throw std::invalid_argument(
        "assemble: epsilon = 0 with no absorbing layer leaves the truncated "
        "problem ill-posed");
  if (layer.enabled() && !(layer.width > 0.0 && layer.width <= 0.5))
    throw std::invalid_argument("assemble: layer width must lie in (0, 1/2]");

  const int d = grid.dim();
  const Index N = grid.size();
  const double h = grid.spacing();
  const double L = grid.half_width();
  const double inv_h2 = 1.0 / (h * h);

  SpMatC M(N, N);
  M.reserve(Eigen::VectorXi::Constant(static_cast<int>(N), 2 * d + 1));

  std::vector<Eigen::Triplet<Complex>> trip;
  trip.reserve(static_cast<size_t>(N) * (2 * d + 1));

  int k[8];
  for (Index i = 0; i < N; ++i) {
    grid.decode(i, k);
    Complex diag(fields.V1_nodes[i] + fields.V2_nodes[i] + lambda, epsilon);
    for (int a = 0; a < d; ++a) {
      const double xc = grid.axis_coord(k[a]);
      const Complex sc = layer.stretch(xc, L);
      const Complex sp = layer.stretch(xc + 0.5 * h, L);
      const Complex sm = layer.stretch(xc - 0.5 * h, L);
      const Complex cp = inv_h2 / (sc * sp);
      const Complex cm = inv_h2 / (sc * sm);
      diag -= cp + cm;
      const Index ip = grid.neighbor(i, a, +1);
      const Index im = grid.neighbor(i, a, -1);
      if (ip >= 0) {
        const Complex U = std::polar(1.0, fields.link_phase(i, a));
        trip.emplace_back(static_cast<int>(i), static_cast<int>(ip), cp * U);
      }
      if (im >= 0) {
        const Complex U = std::polar(1.0, -fields.link_phase(im, a));
        trip.emplace_back(static_cast<int>(i), static_cast<int>(im), cm * U);
      }
    }
    trip.emplace_back(static_cast<int>(i), static_cast<int>(i), diag);
  }
  M.setFromTriplets(trip.begin(), trip.end());
  M.makeCompressed();
  return DiscreteOperator(grid, std::move(M), lambda, epsilon, layer);
}

VecC DiscreteOperator::apply(const VecC& u) const {
  if (u.size() != matrix_.rows())
    throw std::invalid_argument("apply: dimension mismatch");
  return matrix_ * u;
}

MatC covariant_gradient(const VecC& u, const FieldSet& fields, const Grid& grid) {
  const int d = grid.dim();
  const Index N = grid.size();
  if (u.size() != N) throw std::invalid_argument("covariant_gradient: dimension mismatch");
  const double h = grid.spacing();
  MatC g(N, d);
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < N; ++i) {
    for (int a = 0; a < d; ++a) {
      Complex sum = 0.0;
      int cnt = 0;
      const Index ip = grid.neighbor(i, a, +1);
      if (ip >= 0) {
        const double th = fields.link_phase(i, a);
        sum += (std::polar(1.0, 0.5 * th) * u[ip] - std::polar(1.0, -0.5 * th) * u[i]) / h;
        ++cnt;
      }
      const Index im = grid.neighbor(i, a, -1);
      if (im >= 0) {
        const double th = fields.link_phase(im, a);
        sum += (std::polar(1.0, 0.5 * th) * u[i] - std::polar(1.0, -0.5 * th) * u[im]) / h;
        ++cnt;
      }
      g(i, a) = cnt > 0 ? sum / static_cast<double>(cnt) : Complex(0.0);
    }
  }
  return g;
}

VecC radial_component(const MatC& grad, const Grid& grid) {
  const Index N = grid.size();
  const int d = grid.dim();
  const VecD& r = grid.radii();
  VecC gr(N);
  for (Index i = 0; i < N; ++i) {
    const PointD x = grid.point(i);
    Complex s = 0.0;
    for (int a = 0; a < d; ++a) s += (x[a] / r[i]) * grad(i, a);
    gr[i] = s;
  }
  return gr;
}

VecD tangential_sq(const MatC& grad, const VecC& grad_r) {
  const Index N = grad.rows();
  VecD t(N);
  for (Index i = 0; i < N; ++i)
    t[i] = std::max(0.0, grad.row(i).squaredNorm() - std::norm(grad_r[i]));
  return t;
}

namespace {

template <class EdgeTerm>
double edge_sum(const Grid& grid, EdgeTerm&& term) {
  const int d = grid.dim();
  const Index N = grid.size();
  const double h = grid.spacing();
  const double scale = grid.cell_volume() / (h * h);
  double total = 0.0;
  for (Index i = 0; i < N; ++i) {
    for (int a = 0; a < d; ++a) {
      const Index ip = grid.neighbor(i, a, +1);
      total += term(i, a, ip);
      // Ghost edge on the low side exists only where there is no interior
      // neighbor; it pairs the node with the zero Dirichlet ring.
      if (grid.neighbor(i, a, -1) < 0) total += term(i, a, Index(-2));
    }
  }
  return total * scale;
}

}  // namespace

double covariant_energy(const VecC& u, const FieldSet& fields, const Grid& grid) {
  return edge_sum(grid, [&](Index i, int a, Index ip) {
    if (ip == -2) return std::norm(u[i]);  // low-side ghost
    if (ip < 0) return std::norm(u[i]);    // high-side ghost
    const Complex U = std::polar(1.0, fields.link_phase(i, a));
    return std::norm(u[i] - U * u[ip]);
  });
}

double covariant_energy_weighted(const VecC& u, const FieldSet& fields,
                                 const Grid& grid,
                                 const std::function<double(double)>& w) {
  const double h = grid.spacing();
  return edge_sum(grid, [&](Index i, int a, Index ip) {
    PointD mid = grid.point(i);
    mid[a] += (ip == -2 ? -0.5 : 0.5) * h;
    const double wt = w(mid.norm());
    if (ip < 0) return wt * std::norm(u[i]);
    const Complex U = std::polar(1.0, fields.link_phase(i, a));
    return wt * std::norm(u[i] - U * u[ip]);
  });
}

double modulus_gradient_energy(const VecC& u, const Grid& grid) {
  return edge_sum(grid, [&](Index i, int /*a*/, Index ip) {
    if (ip < 0) return std::norm(std::abs(u[i]));
    const double dm = std::abs(u[i]) - std::abs(u[ip]);
    return dm * dm;
  });
}

}  // namespace helmlab
