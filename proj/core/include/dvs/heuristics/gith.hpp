#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dvs/core/solver_graph.hpp"
#include "dvs/core/storage_plan.hpp"

namespace dvs {

enum class GitHOrdering {
  size_desc,           // non-increasing size, ties by id
  type_namehash_size,  // git's pack order: type, name hash, size (all descending)
};

struct GitHConfig {
  /// Candidates kept in the sliding window; kUnboundedWindow keeps them all.
  std::size_t window = 10;
  std::size_t max_depth = 50;
  GitHOrdering ordering = GitHOrdering::size_desc;

  static constexpr std::size_t kUnboundedWindow = std::numeric_limits<std::size_t>::max();
};

/// A version as GitH sees it. `name` and `type` only matter for the
/// type_namehash_size ordering; deltas are never tried across types.
struct GitHItem {
  VersionId id = kRoot;
  Cost size = 0;
  std::string name;
  int type = 0;
};

/// Delta from `base` to `target`, or nullopt when it cannot be used.
using DeltaOracle = std::function<std::optional<EdgeCost>(VersionId base, VersionId target)>;

/// git's pack_name_hash: folds the last 16 non-whitespace bytes of `path`,
/// the final bytes weighing most. Empty input hashes to 0.
std::uint32_t name_hash(std::string_view path);

/// Depth-biased delta size Delta / (max_depth - base_depth).
double biased_delta(Cost delta, std::size_t max_depth, std::size_t base_depth);

/// Window-based repack heuristic. Each version, in the configured order,
/// takes as parent the window member with the lowest depth-biased delta among
/// members with depth below max_depth whose delta is smaller than the
/// version's own full size; a version without such a member is materialized.
/// `items` must list each version 1..n exactly once.
StoragePlan gith(std::span<const GitHItem> items, const DeltaOracle& oracle,
                 const GitHConfig& config);

/// Same over a solver graph: sizes come from materialization costs and only
/// revealed deltas are admissible.
StoragePlan gith(const SolverGraph& sg, const GitHConfig& config);

/// Chain depth of every version in `plan` (materialized = 0); index 0 unused.
std::vector<std::size_t> chain_depths(const StoragePlan& plan);

}  // namespace dvs
