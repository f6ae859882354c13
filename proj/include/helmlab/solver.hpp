#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "helmlab/operator.hpp"

namespace helmlab {

struct SolveStats {
  int iterations = 0;
  double relative_residual = 0.0;  // recomputed from the returned solution
  double seconds = 0.0;
  std::string method = "iterative";
};

struct SolverOptions {
  double tol = 1e-8;
  int max_iter = 2000;
  int restart = 50;
  bool allow_direct_fallback = true;
  bool force_direct = false;
};

class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(double best, int iters)
      : std::runtime_error("solver: no convergence after " +
                           std::to_string(iters) +
                           " iterations, best residual " + std::to_string(best)),
        best_residual(best),
        iterations(iters) {}
  double best_residual;
  int iterations;
};

// Exact inverse of the Dirichlet-truncated Laplacian plus a complex shift,
// realized by a fast sine transform per axis. Used as the right
// preconditioner for the indefinite Helmholtz iteration.
class ShiftedLaplacianPreconditioner {
 public:
  ShiftedLaplacianPreconditioner(const Grid& grid, Complex shift);
  VecC solve(const VecC& y) const;

 private:
  int d_;
  int n_;
  Index size_;
  Complex shift_;
  VecD axis_eigs_;  // eigenvalues of the 1D second-difference operator
};

// Solves op u = f to a recomputed relative residual <= tol. Restarted GMRES
// with the shifted-Laplacian preconditioner; falls back to a sparse direct
// factorization for systems up to 40000 unknowns when the iteration stalls.
std::pair<VecC, SolveStats> solve(const DiscreteOperator& op, const VecC& f,
                                  const SolverOptions& opts = {});
std::pair<VecC, SolveStats> solve(const DiscreteOperator& op, const VecC& f,
                                  double tol, int max_iter);

}  // namespace helmlab
