#pragma once

#include <vector>

#include "ocsw/flow.hpp"
#include "ocsw/matrix.hpp"

namespace ocsw {

/// Orients a symmetric zero-diagonal matrix L into A with A + A^T = L and
/// every row/column sum of A within floor/ceil of half the matching sum of
/// L. Construction: Euler circuits over the multigraph with L(a,b) parallel
/// edges, odd-degree vertices tied through one shared virtual vertex.
/// Deterministic (lowest-index-first traversal).
IntMatrix orient_symmetric(const IntMatrix& L);

/// Splits a non-negative matrix A into `planes` matrices that sum to A,
/// with every entry, row sum and column sum within floor/ceil of the
/// corresponding value of A divided by `planes`. Sequential extraction: one
/// feasible circulation per plane on the residual.
std::vector<IntMatrix> decompose_integer(const IntMatrix& A, int planes);

/// Independent oracle for orient_symmetric: direct evaluation of the
/// inequality set (no shared code with the constructor).
bool check_orientation_bounds(const IntMatrix& L, const IntMatrix& A);

/// Independent oracle for decompose_integer: direct evaluation of the
/// per-entry and per-row/column floor/ceil chains.
bool check_plane_bounds(const IntMatrix& A,
                        const std::vector<IntMatrix>& planes);

/// The circulation network used to pull one fair share out of `parts`
/// remaining shares of A. Exposed for tests and the DOT debug dump.
struct ExtractionNetwork {
  BoundedFlowProblem problem;
  // arc layout: [0, rows) source->row arcs, then one arc per nonzero entry
  // in row-major order, then [*, +cols) column->sink arcs.
  std::vector<std::pair<int, int>> entry_of_arc;  // (-1,-1) for non-entry arcs
};
ExtractionNetwork build_extraction_network(const IntMatrix& A, int parts);

}  // namespace ocsw
