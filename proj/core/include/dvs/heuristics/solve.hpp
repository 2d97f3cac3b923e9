#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dvs/core/evaluate.hpp"
#include "dvs/core/solver_graph.hpp"
#include "dvs/core/storage_plan.hpp"
#include "dvs/heuristics/gith.hpp"

namespace dvs {

enum class Strategy {
  min_storage,  // mst for undirected graphs, mca otherwise
  mca,
  mst,
  spt,
  lmg,
  mp,
  last,
  gith,
};

std::optional<Strategy> parse_strategy(std::string_view name);
std::string_view to_string(Strategy strategy) noexcept;

/// Knobs for solve(). Which ones apply depends on the strategy:
///   lmg   budget (or budget_factor) bounds storage; theta instead bounds the
///         sum of recreation costs and minimizes storage
///   mp    theta bounds every recreation cost; budget (or budget_factor)
///         instead bounds storage and minimizes the maximum
///   last  alpha (default 2)
///   gith  gith
/// budget_factor scales the min-storage tree's cost; an explicit budget wins.
struct SolveParams {
  std::optional<Cost> budget;
  std::optional<double> budget_factor;
  std::optional<double> theta;
  double alpha = 2.0;
  GitHConfig gith;
  const WorkloadProfile* workload = nullptr;
};

struct Solution {
  StoragePlan plan;
  CostReport report;
  /// False only for LAST on inputs where its bounds do not apply.
  bool guaranteed = true;
};

/// Runs one strategy and evaluates the result. Throws invalid_input when a
/// required parameter is missing and infeasible when a bound cannot be met.
Solution solve(const SolverGraph& sg, Strategy strategy, const SolveParams& params);

struct SweepRow {
  double param = 0;
  Cost storage = 0;
  Cost sum_recreation = 0;
  Cost max_recreation = 0;
  std::optional<double> weighted_sum;
};

/// Runs `strategy` at `steps` evenly spaced parameter values from `lo` to
/// `hi`. The swept parameter is the storage budget for lmg, theta for mp,
/// alpha for last and the window for gith. With `relative`, budgets are
/// factors of the min-storage cost and thetas factors of the largest
/// shortest-path distance.
std::vector<SweepRow> sweep(const SolverGraph& sg, Strategy strategy, double lo, double hi,
                            std::size_t steps, bool relative, const SolveParams& params);

}  // namespace dvs
