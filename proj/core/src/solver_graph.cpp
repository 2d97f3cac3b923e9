#include "dvs/core/solver_graph.hpp"

#include <algorithm>
#include <string>

#include "dvs/core/errors.hpp"

namespace dvs {

std::span<const SolverGraph::EdgeIndex> SolverGraph::out_edges(VersionId u) const {
  return {out_index_.data() + out_offsets_[u], out_index_.data() + out_offsets_[u + 1]};
}

std::span<const SolverGraph::EdgeIndex> SolverGraph::in_edges(VersionId v) const {
  return {in_index_.data() + in_offsets_[v], in_index_.data() + in_offsets_[v + 1]};
}

const SolverEdge* SolverGraph::find(VersionId u, VersionId v) const {
  if (u > n_ || v > n_) return nullptr;
  auto out = out_edges(u);
  auto it = std::lower_bound(out.begin(), out.end(), v, [&](EdgeIndex e, VersionId target) {
    return edges_[e].to < target;
  });
  if (it == out.end() || edges_[*it].to != v) return nullptr;
  return &edges_[*it];
}

SolverGraph build_solver_graph(const CostMatrices& matrices) {
  const std::size_t n = matrices.size();
  for (VersionId v = 1; v <= n; ++v) {
    if (!matrices.contains(v, v)) {
      fail(ErrorKind::invalid_input,
           "version has no materialization cost: " + std::to_string(v));
    }
  }

  SolverGraph g;
  g.n_ = n;
  g.directed_ = matrices.directed();
  g.edges_.reserve(matrices.entries().size());

  // Root edges first; the matrix map is already (i, j)-ordered, so a single
  // pass over it yields the remaining edges in (from, to) order.
  for (VersionId v = 1; v <= n; ++v) {
    g.edges_.push_back({kRoot, v, *matrices.get(v, v)});
  }
  for (const auto& [key, cost] : matrices.entries()) {
    if (key.first != key.second) g.edges_.push_back({key.first, key.second, cost});
  }

  const std::size_t nodes = n + 1;
  g.out_offsets_.assign(nodes + 1, 0);
  g.in_offsets_.assign(nodes + 1, 0);
  for (const auto& e : g.edges_) {
    ++g.out_offsets_[e.from + 1];
    ++g.in_offsets_[e.to + 1];
  }
  for (std::size_t i = 0; i < nodes; ++i) {
    g.out_offsets_[i + 1] += g.out_offsets_[i];
    g.in_offsets_[i + 1] += g.in_offsets_[i];
  }
  g.out_index_.resize(g.edges_.size());
  g.in_index_.resize(g.edges_.size());
  std::vector<std::size_t> out_fill(g.out_offsets_.begin(), g.out_offsets_.end() - 1);
  std::vector<std::size_t> in_fill(g.in_offsets_.begin(), g.in_offsets_.end() - 1);
  // Edges are visited in (from, to) order, so both adjacency lists come out
  // sorted: out-lists by target, in-lists by source.
  for (SolverGraph::EdgeIndex e = 0; e < g.edges_.size(); ++e) {
    g.out_index_[out_fill[g.edges_[e].from]++] = e;
    g.in_index_[in_fill[g.edges_[e].to]++] = e;
  }
  return g;
}

SolverGraph build_solver_graph(const VersionGraph& graph, const CostMatrices& matrices) {
  if (graph.size() != matrices.size()) {
    fail(ErrorKind::invalid_input,
         "version graph has " + std::to_string(graph.size()) +
             " versions but matrices cover " + std::to_string(matrices.size()));
  }
  return build_solver_graph(matrices);
}

}  // namespace dvs
