#include "dvs/core/version_graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <string>

#include "dvs/core/errors.hpp"

namespace dvs {

VersionGraph::VersionGraph(std::size_t n, std::vector<Derivation> derivations,
                           std::vector<EdgeCost> full_sizes)
    : n_(n),
      edges_(std::move(derivations)),
      parents_(n + 1),
      children_(n + 1),
      full_sizes_(std::move(full_sizes)) {
  if (!full_sizes_.empty() && full_sizes_.size() != n_) {
    fail(ErrorKind::invalid_input, "full_sizes must cover every version");
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  for (const auto& [from, to] : edges_) {
    if (from == kRoot || to == kRoot || from > n_ || to > n_) {
      fail(ErrorKind::invalid_input,
           "derivation edge " + std::to_string(from) + "->" +
               std::to_string(to) + " out of range");
    }
    if (from == to) {
      fail(ErrorKind::invalid_input,
           "derivation self loop at version " + std::to_string(from));
    }
    parents_[to].push_back(from);
    children_[from].push_back(to);
  }

  // Kahn's algorithm; anything left over sits on a cycle.
  std::vector<std::size_t> indegree(n_ + 1, 0);
  for (const auto& e : edges_) ++indegree[e.second];
  std::deque<VersionId> ready;
  for (VersionId v = 1; v <= n_; ++v) {
    if (indegree[v] == 0) ready.push_back(v);
  }
  std::size_t seen = 0;
  while (!ready.empty()) {
    VersionId v = ready.front();
    ready.pop_front();
    ++seen;
    for (VersionId c : children_[v]) {
      if (--indegree[c] == 0) ready.push_back(c);
    }
  }
  if (seen != n_) {
    fail(ErrorKind::invalid_input, "derivation edges contain a cycle");
  }
}

std::span<const VersionId> VersionGraph::parents(VersionId v) const {
  return parents_.at(v);
}

std::span<const VersionId> VersionGraph::children(VersionId v) const {
  return children_.at(v);
}

const EdgeCost& VersionGraph::full_size(VersionId v) const {
  if (v == kRoot || v > full_sizes_.size()) {
    fail(ErrorKind::invalid_input,
         "no full size recorded for version " + std::to_string(v));
  }
  return full_sizes_[v - 1];
}

std::vector<std::size_t> VersionGraph::hop_distances(
    VersionId source, std::size_t max_hops) const {
  constexpr auto kFar = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(n_ + 1, kFar);
  if (source == kRoot || source > n_) return dist;
  dist[source] = 0;
  std::deque<VersionId> queue{source};
  while (!queue.empty()) {
    VersionId v = queue.front();
    queue.pop_front();
    if (dist[v] == max_hops) continue;
    auto visit = [&](VersionId w) {
      if (dist[w] == kFar) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    };
    for (VersionId w : parents_[v]) visit(w);
    for (VersionId w : children_[v]) visit(w);
  }
  return dist;
}

}  // namespace dvs
