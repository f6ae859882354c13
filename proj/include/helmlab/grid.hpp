#pragma once

#include <vector>

#include "helmlab/types.hpp"

namespace helmlab {

// Tensor-product grid on [-L, L]^d with n nodes per axis. With offset=true
// the nodes sit at (k + 1/2)h - L, so no node coincides with the origin and
// every node satisfies |x| >= h/2. Node coordinates are a pure function of
// (d, L, n, offset).
class Grid {
 public:
  Grid(int d, double L, int n, bool offset = true);

  int dim() const { return d_; }
  double half_width() const { return L_; }
  int per_axis() const { return n_; }
  double spacing() const { return h_; }
  bool offset() const { return offset_; }
  Index size() const { return size_; }
  double cell_volume() const { return cell_volume_; }

  // Coordinate of grid line k along one axis.
  double axis_coord(int k) const {
    return -L_ + (offset_ ? (k + 0.5) * h_ : k * h_);
  }

  void decode(Index node, int* k) const {
    for (int a = 0; a < d_; ++a) {
      k[a] = static_cast<int>(node % n_);
      node /= n_;
    }
  }
  Index encode(const int* k) const {
    Index i = 0;
    for (int a = d_ - 1; a >= 0; --a) i = i * n_ + k[a];
    return i;
  }

  PointD point(Index node) const {
    int k[8];
    decode(node, k);
    PointD x(d_);
    for (int a = 0; a < d_; ++a) x[a] = axis_coord(k[a]);
    return x;
  }

  // Index of the neighbor one step along `axis`, or -1 outside the box.
  Index neighbor(Index node, int axis, int step) const {
    const Index stride = strides_[axis];
    const int k = static_cast<int>((node / stride) % n_);
    const int kn = k + step;
    if (kn < 0 || kn >= n_) return -1;
    return node + static_cast<Index>(step) * stride;
  }

  Index stride(int axis) const { return strides_[axis]; }

  // |x| per node, cached.
  const VecD& radii() const { return r_; }

 private:
  int d_;
  double L_;
  int n_;
  double h_;
  bool offset_;
  Index size_;
  double cell_volume_;
  std::vector<Index> strides_;
  VecD r_;
};

// Dyadic annuli C(j) = { 2^{j-1} <= |x| <= 2^j }. Every node is assigned to
// the smallest admissible j, so boundary ties are deterministic. j_max is the
// largest exponent with 2^j <= L; box corners with |x| > L live in annuli
// beyond j_max (up to j_top), so the annuli cover the full node set.
struct DyadicDecomposition {
  int j_min = 0;
  int j_max = 0;
  int j_top = 0;
  double L = 0.0;
  std::vector<int> annulus_of;              // per node
  std::vector<std::vector<Index>> annuli;   // index j - j_min

  const std::vector<Index>& annulus(int j) const { return annuli[j - j_min]; }

  // Dyadic radii {2^j} with 2^j > R0, plus the box half-width; these realize
  // the sup over R in the weighted norms.
  std::vector<double> sup_radii(double R0) const;
};

DyadicDecomposition dyadic_decomposition(const Grid& grid);

// Smallest admissible dyadic exponent for radius r: min{ j : 2^j >= r }.
int dyadic_index(double r);

// Nodes with |x| in [R - h/2, R + h/2), quadrature weight h^{d-1} per node.
// Realizes surface integrals over the sphere of radius R.
struct SphereShell {
  double R = 0.0;
  double node_weight = 0.0;
  std::vector<Index> nodes;

  template <class F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (Index i : nodes) s += f(i);
    return s * node_weight;
  }
};

SphereShell sphere_shell(const Grid& grid, double R);

}  // namespace helmlab
