#include "dvs/core/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dvs/core/errors.hpp"
#include "dvs/core/validate.hpp"

namespace dvs {

WorkloadProfile::WorkloadProfile(std::vector<double> freq) : freq_(std::move(freq)) {
  if (freq_.empty()) freq_.push_back(0.0);
  freq_[0] = 0.0;
  bool any_positive = false;
  for (std::size_t v = 1; v < freq_.size(); ++v) {
    if (!std::isfinite(freq_[v]) || freq_[v] < 0.0) {
      fail(ErrorKind::invalid_input,
           "workload weight for version " + std::to_string(v) + " must be finite and >= 0");
    }
    any_positive = any_positive || freq_[v] > 0.0;
  }
  if (!any_positive) fail(ErrorKind::invalid_input, "workload needs a positive weight");
}

WorkloadProfile WorkloadProfile::uniform(std::size_t n) {
  std::vector<double> freq(n + 1, 1.0);
  return WorkloadProfile(std::move(freq));
}

CostReport evaluate(const StoragePlan& plan, const SolverGraph& sg,
                    const WorkloadProfile* workload) {
  require_valid(plan, sg);
  const std::size_t n = sg.version_count();
  if (workload != nullptr && workload->version_count() != n) {
    fail(ErrorKind::invalid_input, "workload covers " +
                                       std::to_string(workload->version_count()) +
                                       " versions, plan has " + std::to_string(n));
  }

  CostReport report;
  report.recreation.assign(n + 1, -1);
  report.recreation[kRoot] = 0;

  std::vector<VersionId> chain;
  for (VersionId v = 1; v <= n; ++v) {
    report.total_storage += sg.find(plan.parent(v), v)->cost.storage;
    // Resolve the chain up to the first node with a known cost, then unwind.
    chain.clear();
    VersionId w = v;
    while (report.recreation[w] < 0) {
      chain.push_back(w);
      w = plan.parent(w);
    }
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      const VersionId p = plan.parent(*it);
      report.recreation[*it] = report.recreation[p] + sg.find(p, *it)->cost.recreation;
    }
  }

  for (VersionId v = 1; v <= n; ++v) {
    report.sum_recreation += report.recreation[v];
    report.max_recreation = std::max(report.max_recreation, report.recreation[v]);
  }
  if (workload != nullptr) {
    double weighted = 0.0;
    for (VersionId v = 1; v <= n; ++v) {
      weighted += workload->weight(v) * static_cast<double>(report.recreation[v]);
    }
    report.weighted_sum = weighted;
  }
  return report;
}

}  // namespace dvs
