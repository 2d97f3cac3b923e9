#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dvs/core/types.hpp"

namespace dvs {

/// Parent assignment for versions 1..n. Parent 0 means the version is stored
/// in full; any other parent means it is stored as a delta from that version.
/// A plan is only meaningful once validate_plan() accepts it.
class StoragePlan {
 public:
  StoragePlan() = default;

  /// `parents[0]` is ignored and normalised to 0.
  explicit StoragePlan(std::vector<VersionId> parents);

  static StoragePlan all_materialized(std::size_t n);

  std::size_t version_count() const noexcept {
    return parents_.empty() ? 0 : parents_.size() - 1;
  }
  VersionId parent(VersionId v) const { return parents_.at(v); }
  bool materialized(VersionId v) const { return parent(v) == kRoot; }

  /// Indexed by version; element 0 is always 0.
  std::span<const VersionId> parents() const noexcept { return parents_; }

  friend bool operator==(const StoragePlan&, const StoragePlan&) = default;

 private:
  std::vector<VersionId> parents_;
};

}  // namespace dvs
