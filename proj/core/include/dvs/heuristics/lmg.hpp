#pragma once

#include <functional>

#include "dvs/core/evaluate.hpp"
#include "dvs/core/solver_graph.hpp"
#include "dvs/core/storage_plan.hpp"

namespace dvs {

/// One accepted move: version `version` switched its parent from `old_parent`
/// to `new_parent` (the shortest-path-tree parent).
struct LmgMove {
  VersionId version = kRoot;
  VersionId old_parent = kRoot;
  VersionId new_parent = kRoot;
  Cost storage_increase = 0;  // may be negative
  double recreation_reduction = 0.0;
};

using LmgObserver = std::function<void(const LmgMove&)>;

/// Local move greedy. Starts from `base` (a min-storage tree) and repeatedly
/// swaps in the shortest-path-tree edge with the best ratio of recreation
/// reduction to storage increase while the total stays within `budget`.
/// With a workload the reduction is weighted by access frequency.
/// Throws infeasible when C(base) > budget.
StoragePlan lmg(const SolverGraph& sg, const StoragePlan& base, const StoragePlan& spt,
                Cost budget, const WorkloadProfile* workload = nullptr,
                const LmgObserver& observer = {});

/// Smallest budget (binary search over [C(base), C(spt)]) whose LMG plan keeps
/// the sum of recreation costs (weighted when a workload is given) within
/// `max_sum`. Throws infeasible when even the shortest path tree exceeds it.
StoragePlan lmg_min_storage(const SolverGraph& sg, const StoragePlan& base,
                            const StoragePlan& spt, double max_sum,
                            const WorkloadProfile* workload = nullptr);

}  // namespace dvs
