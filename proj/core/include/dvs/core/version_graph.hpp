#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "dvs/core/types.hpp"

namespace dvs {

using Derivation = std::pair<VersionId, VersionId>;  // (from, to): `to` derived from `from`

/// Derivation history of versions 1..n. Edges form a DAG; merges show up as
/// versions with several parents. Full sizes are optional here because a
/// freshly generated history has no content yet.
class VersionGraph {
 public:
  VersionGraph() = default;

  /// Throws invalid_input on out-of-range endpoints, self loops or cycles.
  /// `full_sizes`, when non-empty, must have exactly n entries (index v-1).
  VersionGraph(std::size_t n, std::vector<Derivation> derivations,
               std::vector<EdgeCost> full_sizes = {});

  std::size_t size() const noexcept { return n_; }

  /// Sorted, duplicate free.
  std::span<const Derivation> derivations() const noexcept { return edges_; }

  std::span<const VersionId> parents(VersionId v) const;
  std::span<const VersionId> children(VersionId v) const;

  bool has_full_sizes() const noexcept { return !full_sizes_.empty(); }
  const EdgeCost& full_size(VersionId v) const;

  /// Undirected hop distance from `source` to every version, capped at
  /// `max_hops`; versions further away get SIZE_MAX. Index 0 is unused.
  std::vector<std::size_t> hop_distances(VersionId source,
                                         std::size_t max_hops) const;

 private:
  std::size_t n_ = 0;
  std::vector<Derivation> edges_;
  std::vector<std::vector<VersionId>> parents_;
  std::vector<std::vector<VersionId>> children_;
  std::vector<EdgeCost> full_sizes_;
};

}  // namespace dvs
