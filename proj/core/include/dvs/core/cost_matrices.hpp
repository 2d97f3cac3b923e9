#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>

#include "dvs/core/types.hpp"

namespace dvs {

/// Sparse storage (delta) and recreation (phi) matrices over versions 1..n.
///
/// Diagonal entries (i, i) hold the cost of materializing version i. An absent
/// off-diagonal entry means the delta was never computed; solvers treat it as
/// unusable. In the undirected case every entry is mirrored, so (i, j) exists
/// exactly when (j, i) does and both carry the same costs.
class CostMatrices {
 public:
  using Key = std::pair<VersionId, VersionId>;

  CostMatrices() = default;
  CostMatrices(std::size_t n, bool directed) : n_(n), directed_(directed) {}

  std::size_t size() const noexcept { return n_; }
  bool directed() const noexcept { return directed_; }

  /// Reveals an entry. Undirected matrices also write (j, i). Throws
  /// invalid_input for ids outside 1..n or negative costs, and for an
  /// undirected entry whose mirror already holds different costs.
  void set(VersionId i, VersionId j, EdgeCost cost);

  std::optional<EdgeCost> get(VersionId i, VersionId j) const;
  bool contains(VersionId i, VersionId j) const { return entries_.contains({i, j}); }

  /// All revealed entries in (i, j) order, diagonal included.
  const std::map<Key, EdgeCost>& entries() const noexcept { return entries_; }

  /// Number of versions without a diagonal entry.
  std::size_t missing_diagonal_count() const;

 private:
  std::size_t n_ = 0;
  bool directed_ = true;
  std::map<Key, EdgeCost> entries_;
};

}  // namespace dvs
