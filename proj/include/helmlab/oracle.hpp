#pragma once

#include "helmlab/grid.hpp"
#include "helmlab/types.hpp"

namespace helmlab {

struct OracleSolution {
  VecC u;
  Complex k;  // (lambda + i eps)^{1/2}, Re k > 0, Im k > 0
};

// Independent free-space reference in d = 3: u(x) = sum_y G(|x-y|) f(y) h^3
// with the outgoing kernel G(r) = -e^{ikr}/(4 pi r), so that applying the
// continuum Delta + lambda + i eps to u reproduces f. The singular self cell
// is replaced by the exact integral of G over the ball of equal volume.
// Deliberately a plain O(targets x sources) sum; grids above 64^3 or sources
// above 1000 cells are rejected.
OracleSolution free_resolvent_convolution(const VecC& f, double lambda,
                                          double epsilon, const Grid& grid);

}  // namespace helmlab
