#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "dvs/core/solver_graph.hpp"
#include "dvs/core/storage_plan.hpp"

namespace dvs {

/// Access weights per version (index 0 unused). Weights are raw counts or any
/// other non-negative scale; nothing is normalised.
class WorkloadProfile {
 public:
  WorkloadProfile() = default;

  /// `freq[v]` for v in 1..n; freq[0] is ignored. Throws invalid_input on
  /// negative or non-finite weights, or when no weight is positive.
  explicit WorkloadProfile(std::vector<double> freq);

  static WorkloadProfile uniform(std::size_t n);

  std::size_t version_count() const noexcept { return freq_.empty() ? 0 : freq_.size() - 1; }
  double weight(VersionId v) const { return freq_.at(v); }
  const std::vector<double>& weights() const noexcept { return freq_; }

 private:
  std::vector<double> freq_;
};

struct CostReport {
  Cost total_storage = 0;
  std::vector<Cost> recreation;  // index 0 is the root and always 0
  Cost sum_recreation = 0;
  Cost max_recreation = 0;
  std::optional<double> weighted_sum;
};

/// Exact storage and recreation totals for a valid plan. Throws invalid_input
/// if the plan does not validate against `sg`.
CostReport evaluate(const StoragePlan& plan, const SolverGraph& sg,
                    const WorkloadProfile* workload = nullptr);

}  // namespace dvs
