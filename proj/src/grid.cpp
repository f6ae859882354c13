#include "helmlab/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace helmlab {

Grid::Grid(int d, double L, int n, bool offset)
    : d_(d), L_(L), n_(n), offset_(offset) {
  if (d < 2 || d > 8) throw std::invalid_argument("grid: dimension must be in [2, 8]");
  if (L <= 0.0) throw std::invalid_argument("grid: half-width must be positive");
  if (n < 4) throw std::invalid_argument("grid: need at least 4 nodes per axis");
  if (offset && n % 2 != 0)
    throw std::invalid_argument("grid: offset grid requires even n (odd n places nodes at x=0)");
  h_ = 2.0 * L / n;
  size_ = 1;
  strides_.resize(d);
  for (int a = 0; a < d; ++a) {
    strides_[a] = size_;
    size_ *= n;
  }
  cell_volume_ = std::pow(h_, d);
  r_.resize(size_);
  int k[8];
  for (Index i = 0; i < size_; ++i) {
    decode(i, k);
    double s = 0.0;
    for (int a = 0; a < d; ++a) {
      const double x = axis_coord(k[a]);
      s += x * x;
    }
    r_[i] = std::sqrt(s);
  }
}

int dyadic_index(double r) {
  int j = static_cast<int>(std::ceil(std::log2(r)));
  while (std::ldexp(1.0, j) < r) ++j;
  while (j > -1060 && std::ldexp(1.0, j - 1) >= r) --j;
  return j;
}

DyadicDecomposition dyadic_decomposition(const Grid& grid) {
  DyadicDecomposition dec;
  dec.L = grid.half_width();
  const VecD& r = grid.radii();
  const Index N = grid.size();
  dec.annulus_of.resize(static_cast<size_t>(N));
  int jmin = 1 << 30, jtop = -(1 << 30);
  for (Index i = 0; i < N; ++i) {
    const int j = dyadic_index(r[i]);
    dec.annulus_of[static_cast<size_t>(i)] = j;
    jmin = std::min(jmin, j);
    jtop = std::max(jtop, j);
  }
  dec.j_min = jmin;
  dec.j_top = jtop;
  dec.j_max = dyadic_index(grid.half_width());
  if (std::ldexp(1.0, dec.j_max) > grid.half_width()) --dec.j_max;
  dec.annuli.assign(static_cast<size_t>(jtop - jmin + 1), {});
  for (Index i = 0; i < N; ++i)
    dec.annuli[static_cast<size_t>(dec.annulus_of[static_cast<size_t>(i)] - jmin)].push_back(i);
  return dec;
}

std::vector<double> DyadicDecomposition::sup_radii(double R0) const {
  std::vector<double> out;
  for (int j = j_min; j <= j_top; ++j) {
    const double R = std::ldexp(1.0, j);
    if (R > R0) out.push_back(R);
  }
  if (L > R0) {
    bool dup = false;
    for (double R : out) dup = dup || R == L;
    if (!dup) out.push_back(L);
  }
  return out;
}

SphereShell sphere_shell(const Grid& grid, double R) {
  const double h = grid.spacing();
  if (!(R > 0.5 * h && R < grid.half_width()))
    throw std::invalid_argument("sphere_shell: radius must lie in (h/2, L)");
  SphereShell shell;
  shell.R = R;
  shell.node_weight = std::pow(h, grid.dim() - 1);
  const VecD& r = grid.radii();
  for (Index i = 0; i < grid.size(); ++i)
    if (r[i] >= R - 0.5 * h && r[i] < R + 0.5 * h) shell.nodes.push_back(i);
  return shell;
}

}  // namespace helmlab
