#include "helmlab/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace helmlab {

OracleSolution free_resolvent_convolution(const VecC& f, double lambda,
                                          double epsilon, const Grid& grid) {
  if (grid.dim() != 3)
    throw std::invalid_argument("oracle: only the d=3 kernel is implemented");
  if (!(epsilon > 0.0))
    throw std::invalid_argument("oracle: requires epsilon > 0");
  if (grid.size() > 64 * 64 * 64)
    throw std::invalid_argument("oracle: grid too large for the dense sum");
  if (f.size() != grid.size())
    throw std::invalid_argument("oracle: dimension mismatch");

  const Complex k = std::sqrt(Complex(lambda, epsilon));

  std::vector<Index> sources;
  for (Index i = 0; i < grid.size(); ++i)
    if (f[i] != Complex(0.0)) sources.push_back(i);
  if (sources.size() > 1000)
    throw std::invalid_argument(
        "oracle: source support exceeds 1000 cells; truncate f");

  OracleSolution sol;
  sol.k = k;
  sol.u = VecC::Zero(grid.size());
  if (sources.empty()) return sol;

  const double h = grid.spacing();
  const double vol = grid.cell_volume();
  // Equal-volume ball radius and the exact integral of the kernel over it:
  // int_{B_a} -e^{ikr}/(4 pi r) dx = -( e^{ika}(1/k^2 - i a/k) - 1/k^2 ).
  const double a = h * std::cbrt(3.0 / (4.0 * kPi));
  const Complex iu(0.0, 1.0);
  const Complex self = -(std::exp(iu * k * a) * (1.0 / (k * k) - iu * a / k) -
                         1.0 / (k * k));

  const Index S = static_cast<Index>(sources.size());
  Eigen::MatrixXd sx(S, 3);
  VecC sf(S);
  for (Index s = 0; s < S; ++s) {
    const PointD p = grid.point(sources[s]);
    sx.row(s) = p.transpose();
    sf[s] = f[sources[s]];
  }

  const Index N = grid.size();
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < N; ++i) {
    const PointD p = grid.point(i);
    Complex acc = 0.0;
    for (Index s = 0; s < S; ++s) {
      const double dx = p[0] - sx(s, 0);
      const double dy = p[1] - sx(s, 1);
      const double dz = p[2] - sx(s, 2);
      const double r = std::sqrt(dx * dx + dy * dy + dz * dz);
      if (r == 0.0) {
        acc += self * sf[s];
      } else {
        const Complex ker = -std::exp(iu * k * r) / (4.0 * kPi * r);
        acc += ker * sf[s] * vol;
      }
    }
    sol.u[i] = acc;
  }
  return sol;
}

}  // namespace helmlab
