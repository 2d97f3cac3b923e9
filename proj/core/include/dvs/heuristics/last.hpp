#pragma once

#include "dvs/core/solver_graph.hpp"
#include "dvs/core/storage_plan.hpp"

namespace dvs {

/// Balances a minimum spanning tree against the shortest path tree: a
/// depth-first walk over `mst` relaxes path costs along tree edges (and back
/// along them when the reverse delta is revealed), and any version whose cost
/// exceeds alpha times its shortest distance is re-attached along its
/// shortest path in `spt`.
///
/// For undirected graphs with equal storage and recreation costs the result
/// satisfies R_i <= alpha * SP(i) for every version and
/// C <= (1 + 2 / (alpha - 1)) * C(mst). Directed inputs are accepted without
/// either guarantee. Throws invalid_input unless alpha > 1.
StoragePlan last(const SolverGraph& sg, const StoragePlan& mst, const StoragePlan& spt,
                 double alpha);

/// Whether last() on `sg` carries the two bounds above: undirected and
/// storage cost equal to recreation cost on every edge.
bool last_has_guarantee(const SolverGraph& sg);

}  // namespace dvs
