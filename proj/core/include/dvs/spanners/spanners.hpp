#pragma once

#include <vector>

#include "dvs/core/solver_graph.hpp"
#include "dvs/core/storage_plan.hpp"

namespace dvs {

/// Minimum spanning tree over storage costs (Prim, grown from the root).
/// Among equal weights the lower (u, v) edge wins.
StoragePlan mst_undirected(const SolverGraph& sg);

/// Minimum-cost arborescence rooted at 0 over storage costs (Chu-Liu /
/// Edmonds with recursive cycle contraction).
StoragePlan mca_directed(const SolverGraph& sg);

/// mst_undirected for undirected graphs, mca_directed otherwise.
StoragePlan min_storage_plan(const SolverGraph& sg);

/// Shortest path tree from the root over recreation costs (Dijkstra with a
/// binary heap). Among equally short paths the lower-numbered predecessor wins.
StoragePlan spt(const SolverGraph& sg);

/// Shortest recreation distance from the root to every node; index 0 is 0.
std::vector<Cost> shortest_distances(const SolverGraph& sg);

}  // namespace dvs
