#pragma once

#include <Eigen/SparseCore>

#include "helmlab/fields.hpp"
#include "helmlab/grid.hpp"
#include "helmlab/types.hpp"

namespace helmlab {

using SpMatC = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

// Complex coordinate stretching x -> x (1 + i sigma) in the outer `width`
// fraction of the box, with a polynomial ramp. strength = 0 disables the
// layer; the truncated system then needs epsilon > 0 to be well posed.
struct AbsorbingLayerConfig {
  double width = 0.25;
  double strength = 0.0;
  int ramp_order = 3;

  bool enabled() const { return strength > 0.0; }
  Complex stretch(double t, double L) const;  // s(t) = 1 + i sigma(|t|)
};

// Sparse realization of (grad + iA)^2 + V1 + V2 + lambda + i eps on the grid,
// with the covariant part discretized by link variables: the edge from x to
// x + h e_a carries the phase exp(i h A_a(x + h e_a/2)), which keeps the
// covariant Laplacian Hermitian and makes gauge covariance exact.
class DiscreteOperator {
 public:
  DiscreteOperator(Grid grid, SpMatC matrix, double lambda, double epsilon,
                   AbsorbingLayerConfig layer)
      : grid_(std::move(grid)),
        matrix_(std::move(matrix)),
        lambda_(lambda),
        epsilon_(epsilon),
        layer_(layer) {}

  const Grid& grid() const { return grid_; }
  const SpMatC& matrix() const { return matrix_; }
  double lambda() const { return lambda_; }
  double epsilon() const { return epsilon_; }
  const AbsorbingLayerConfig& layer() const { return layer_; }

  VecC apply(const VecC& u) const;

 private:
  Grid grid_;
  SpMatC matrix_;
  double lambda_;
  double epsilon_;
  AbsorbingLayerConfig layer_;
};

DiscreteOperator assemble(const Grid& grid, const FieldSet& fields,
                          double lambda, double epsilon,
                          AbsorbingLayerConfig layer = {});

// Node-averaged covariant gradient (grad + iA)u, one complex column per axis.
// Edge values use the symmetric half-phase form, then the two edges adjacent
// to a node are averaged (one-sided at the box boundary).
MatC covariant_gradient(const VecC& u, const FieldSet& fields, const Grid& grid);

// Radial part (x/|x|) . g and tangential magnitude^2 |g|^2 - |g_r|^2,
// clamped at zero.
VecC radial_component(const MatC& grad, const Grid& grid);
VecD tangential_sq(const MatC& grad, const VecC& grad_r);

// int |grad_A u|^2 as the exact quadratic form of the covariant Laplacian:
// the sum over edges of |u(x) - e^{i theta} u(x+h e_a)|^2 / h^2 times h^d,
// including boundary edges toward the zero Dirichlet ghost ring.
double covariant_energy(const VecC& u, const FieldSet& fields, const Grid& grid);

// Same edge sum with a radial weight w(|midpoint|).
double covariant_energy_weighted(const VecC& u, const FieldSet& fields,
                                 const Grid& grid,
                                 const std::function<double(double)>& w);

// Edge sum of |D|u||^2; by the triangle inequality every edge term is bounded
// by the corresponding covariant edge term, so the integrated diamagnetic
// inequality holds exactly on the grid.
double modulus_gradient_energy(const VecC& u, const Grid& grid);

}  // namespace helmlab
