#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dvs/core/cost_matrices.hpp"
#include "dvs/core/types.hpp"
#include "dvs/core/version_graph.hpp"

namespace dvs {

struct SolverEdge {
  VersionId from = kRoot;
  VersionId to = kRoot;
  EdgeCost cost;
};

/// Graph over the dummy root 0 and versions 1..n. Edge (0, i) carries the
/// materialization cost of version i; edge (i, j) carries the revealed delta
/// from i to j. Edges are stored sorted by (from, to), which is also the
/// tie-break order every solver uses.
class SolverGraph {
 public:
  using EdgeIndex = std::uint32_t;

  SolverGraph() = default;

  std::size_t version_count() const noexcept { return n_; }
  std::size_t node_count() const noexcept { return n_ + 1; }
  bool directed() const noexcept { return directed_; }

  std::span<const SolverEdge> edges() const noexcept { return edges_; }
  const SolverEdge& edge(EdgeIndex e) const { return edges_[e]; }

  /// Indices of edges leaving `u`, ascending by target.
  std::span<const EdgeIndex> out_edges(VersionId u) const;
  /// Indices of edges entering `v`, ascending by source.
  std::span<const EdgeIndex> in_edges(VersionId v) const;

  /// nullptr when (u, v) is not revealed.
  const SolverEdge* find(VersionId u, VersionId v) const;

  friend SolverGraph build_solver_graph(const CostMatrices& matrices);

 private:
  std::size_t n_ = 0;
  bool directed_ = true;
  std::vector<SolverEdge> edges_;
  std::vector<std::size_t> out_offsets_;
  std::vector<EdgeIndex> in_index_;
  std::vector<std::size_t> in_offsets_;
  std::vector<EdgeIndex> out_index_;
};

/// Throws invalid_input ("version has no materialization cost") when a
/// diagonal entry is missing.
SolverGraph build_solver_graph(const CostMatrices& matrices);

/// Same, after checking that `graph` describes the same version count.
SolverGraph build_solver_graph(const VersionGraph& graph,
                               const CostMatrices& matrices);

}  // namespace dvs
