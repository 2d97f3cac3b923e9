#include "dvs/core/storage_plan.hpp"

namespace dvs {

StoragePlan::StoragePlan(std::vector<VersionId> parents) : parents_(std::move(parents)) {
  if (parents_.empty()) parents_.push_back(kRoot);
  parents_[0] = kRoot;
}

StoragePlan StoragePlan::all_materialized(std::size_t n) {
  return StoragePlan(std::vector<VersionId>(n + 1, kRoot));
}

}  // namespace dvs
