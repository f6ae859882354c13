#include "helmlab/solver.hpp"

#include <Eigen/SparseLU>
#include <chrono>
#include <cmath>
#include <unsupported/Eigen/FFT>
#include <vector>

namespace helmlab {

namespace {

constexpr Index kDirectLimit = 40000;

// DST-I of length n via a complex FFT of length 2(n+1) on the odd extension.
class SineTransform {
 public:
  explicit SineTransform(int n) : n_(n), buf_(2 * (n + 1)), spec_(2 * (n + 1)) {}

  // In-place on a strided line; plain DST-I without normalization.
  void apply(Complex* data, Index stride) {
    const int N = 2 * (n_ + 1);
    buf_[0] = Complex(0.0);
    buf_[n_ + 1] = Complex(0.0);
    for (int k = 1; k <= n_; ++k) {
      buf_[k] = data[(k - 1) * stride];
      buf_[N - k] = -buf_[k];
    }
    fft_.fwd(spec_, buf_);
    const Complex half_i(0.0, 0.5);
    for (int m = 1; m <= n_; ++m) data[(m - 1) * stride] = half_i * spec_[m];
  }

 private:
  int n_;
  Eigen::FFT<double> fft_;
  std::vector<Complex> buf_, spec_;
};

}  // namespace

ShiftedLaplacianPreconditioner::ShiftedLaplacianPreconditioner(const Grid& grid,
                                                               Complex shift)
    : d_(grid.dim()), n_(grid.per_axis()), size_(grid.size()), shift_(shift) {
  const double h = grid.spacing();
  axis_eigs_.resize(n_);
  for (int m = 1; m <= n_; ++m) {
    const double s = std::sin(0.5 * kPi * m / (n_ + 1));
    axis_eigs_[m - 1] = -4.0 / (h * h) * s * s;
  }
}

VecC ShiftedLaplacianPreconditioner::solve(const VecC& y) const {
  VecC z = y;
  SineTransform dst(n_);
  // Forward transform along every axis.
  for (int a = 0; a < d_; ++a) {
    Index stride = 1;
    for (int b = 0; b < a; ++b) stride *= n_;
    const Index lines = size_ / n_;
    for (Index l = 0; l < lines; ++l) {
      const Index block = l / stride;
      const Index inner = l % stride;
      const Index start = block * stride * n_ + inner;
      dst.apply(z.data() + start, stride);
    }
  }
  // Divide by the separable symbol.
  int k[8];
  for (Index i = 0; i < size_; ++i) {
    Index rem = i;
    double eig = 0.0;
    for (int a = 0; a < d_; ++a) {
      k[a] = static_cast<int>(rem % n_);
      rem /= n_;
      eig += axis_eigs_[k[a]];
    }
    z[i] /= (eig + shift_);
  }
  // Inverse = forward scaled by (2/(n+1))^d.
  for (int a = 0; a < d_; ++a) {
    Index stride = 1;
    for (int b = 0; b < a; ++b) stride *= n_;
    const Index lines = size_ / n_;
    for (Index l = 0; l < lines; ++l) {
      const Index block = l / stride;
      const Index inner = l % stride;
      const Index start = block * stride * n_ + inner;
      dst.apply(z.data() + start, stride);
    }
  }
  z *= std::pow(2.0 / (n_ + 1), d_);
  return z;
}

namespace {

struct GmresOutcome {
  VecC x;
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

// Right-preconditioned restarted GMRES with modified Gram-Schmidt and Givens
// rotations. Summation order is fixed, so reruns are bit-reproducible.
GmresOutcome gmres(const SpMatC& A, const VecC& b,
                   const ShiftedLaplacianPreconditioner& M, double tol,
                   int max_iter, int restart) {
  const Index N = b.size();
  GmresOutcome out;
  out.x = VecC::Zero(N);
  const double bnorm = b.norm();
  if (bnorm == 0.0) return {VecC::Zero(N), 0, 0.0, true};

  MatC V(N, restart + 1);
  MatC H = MatC::Zero(restart + 1, restart);
  VecC cs(restart), sn(restart), g(restart + 1);

  VecC r = b;
  double beta = bnorm;
  int total = 0;
  double best = 1.0;
  while (total < max_iter) {
    V.col(0) = r / beta;
    g.setZero();
    g[0] = beta;
    int m = 0;
    for (; m < restart && total < max_iter; ++m, ++total) {
      VecC w = A * VecC(M.solve(V.col(m)));
      for (int i = 0; i <= m; ++i) {
        const Complex hij = V.col(i).dot(w);
        H(i, m) = hij;
        w -= hij * V.col(i);
      }
      H(m + 1, m) = w.norm();
      if (std::abs(H(m + 1, m)) > 0.0) V.col(m + 1) = w / H(m + 1, m);
      for (int i = 0; i < m; ++i) {
        const Complex t = cs[i] * H(i, m) + sn[i] * H(i + 1, m);
        H(i + 1, m) = -std::conj(sn[i]) * H(i, m) + std::conj(cs[i]) * H(i + 1, m);
        H(i, m) = t;
      }
      const double denom = std::sqrt(std::norm(H(m, m)) + std::norm(H(m + 1, m)));
      if (denom == 0.0) {
        cs[m] = 1.0;
        sn[m] = 0.0;
      } else {
        cs[m] = std::conj(H(m, m)) / denom;
        sn[m] = std::conj(H(m + 1, m)) / denom;
      }
      const Complex t = cs[m] * H(m, m) + sn[m] * H(m + 1, m);
      H(m, m) = t;
      H(m + 1, m) = 0.0;
      g[m + 1] = -std::conj(sn[m]) * g[m];
      g[m] = cs[m] * g[m];
      const double rel = std::abs(g[m + 1]) / bnorm;
      best = std::min(best, rel);
      if (rel <= tol) {
        ++m;
        ++total;
        break;
      }
    }
    // Solve the small triangular system and update.
    VecC y = g.head(m);
    for (int i = m - 1; i >= 0; --i) {
      for (int j = i + 1; j < m; ++j) y[i] -= H(i, j) * y[j];
      y[i] /= H(i, i);
    }
    VecC corr = V.leftCols(m) * y;
    out.x += M.solve(corr);
    r = b - A * out.x;
    beta = r.norm();
    out.residual = beta / bnorm;
    out.iterations = total;
    if (out.residual <= tol) {
      out.converged = true;
      return out;
    }
    if (beta == 0.0) {
      out.converged = true;
      return out;
    }
  }
  out.residual = best;
  return out;
}

}  // namespace

std::pair<VecC, SolveStats> solve(const DiscreteOperator& op, const VecC& f,
                                  const SolverOptions& opts) {
  if (!(opts.tol > 0.0 && opts.tol <= 1e-2))
    throw std::invalid_argument("solve: tolerance must lie in (0, 1e-2]");
  if (f.size() != op.grid().size())
    throw std::invalid_argument("solve: right-hand side dimension mismatch");
  if (!f.allFinite()) throw std::invalid_argument("solve: right-hand side not finite");

  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&t0] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  SolveStats stats;
  const double fnorm = f.norm();
  if (fnorm == 0.0) {
    stats.method = "iterative";
    return {VecC::Zero(f.size()), stats};
  }

  auto run_direct = [&]() -> std::pair<VecC, SolveStats> {
    Eigen::SparseMatrix<Complex> Ac = op.matrix();
    Eigen::SparseLU<Eigen::SparseMatrix<Complex>> lu;
    lu.compute(Ac);
    if (lu.info() != Eigen::Success)
      throw NonConvergence(1.0, 0);
    VecC u = lu.solve(f);
    SolveStats s;
    s.method = "direct";
    s.iterations = 0;
    s.relative_residual = (op.matrix() * u - f).norm() / fnorm;
    s.seconds = elapsed();
    return {std::move(u), s};
  };

  if (opts.force_direct && op.grid().size() <= kDirectLimit) return run_direct();

  // Shift: match the dissipative part exactly when epsilon dominates,
  // otherwise use the standard complex-shifted Laplacian damping.
  const Complex shift(op.lambda(), std::max(op.epsilon(), 0.5 * op.lambda()));
  ShiftedLaplacianPreconditioner M(op.grid(), shift);
  GmresOutcome out =
      gmres(op.matrix(), f, M, opts.tol, opts.max_iter, opts.restart);
  if (out.converged) {
    stats.iterations = out.iterations;
    stats.relative_residual = (op.matrix() * out.x - f).norm() / fnorm;
    stats.seconds = elapsed();
    if (stats.relative_residual <= opts.tol) return {std::move(out.x), stats};
  }
  if (opts.allow_direct_fallback && op.grid().size() <= kDirectLimit) {
    auto res = run_direct();
    if (res.second.relative_residual <= opts.tol) return res;
  }
  throw NonConvergence(out.residual, out.iterations);
}

std::pair<VecC, SolveStats> solve(const DiscreteOperator& op, const VecC& f,
                                  double tol, int max_iter) {
  SolverOptions opts;
  opts.tol = tol;
  opts.max_iter = max_iter;
  return solve(op, f, opts);
}

}  // namespace helmlab
