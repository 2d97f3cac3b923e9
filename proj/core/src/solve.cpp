#include "dvs/heuristics/solve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include "dvs/core/errors.hpp"
#include "dvs/heuristics/last.hpp"
#include "dvs/heuristics/lmg.hpp"
#include "dvs/heuristics/mp.hpp"
#include "dvs/spanners/spanners.hpp"

namespace dvs {

namespace {

constexpr std::array<std::pair<std::string_view, Strategy>, 8> kNames{{
    {"min_storage", Strategy::min_storage},
    {"mca", Strategy::mca},
    {"mst", Strategy::mst},
    {"spt", Strategy::spt},
    {"lmg", Strategy::lmg},
    {"mp", Strategy::mp},
    {"last", Strategy::last},
    {"gith", Strategy::gith},
}};

// Lazily computed extremes shared by the runs of a sweep.
class Extremes {
 public:
  explicit Extremes(const SolverGraph& sg) : sg_(sg) {}

  const StoragePlan& base() {
    if (!base_) base_ = min_storage_plan(sg_);
    return *base_;
  }
  const StoragePlan& shortest() {
    if (!spt_) spt_ = spt(sg_);
    return *spt_;
  }
  Cost base_storage() {
    if (!base_storage_) base_storage_ = evaluate(base(), sg_).total_storage;
    return *base_storage_;
  }
  Cost max_shortest() {
    if (!max_spt_) max_spt_ = evaluate(shortest(), sg_).max_recreation;
    return *max_spt_;
  }

 private:
  const SolverGraph& sg_;
  std::optional<StoragePlan> base_, spt_;
  std::optional<Cost> base_storage_, max_spt_;
};

std::optional<Cost> budget_of(const SolveParams& params, Extremes& ext) {
  if (params.budget) return params.budget;
  if (params.budget_factor) {
    if (!(*params.budget_factor > 0)) {
      fail(ErrorKind::invalid_input, "budget factor must be positive");
    }
    return static_cast<Cost>(
        std::floor(*params.budget_factor * static_cast<long double>(ext.base_storage())));
  }
  return std::nullopt;
}

Solution run(const SolverGraph& sg, Strategy strategy, const SolveParams& params,
             Extremes& ext) {
  Solution out;
  switch (strategy) {
    case Strategy::min_storage:
      out.plan = ext.base();
      break;
    case Strategy::mca:
      out.plan = mca_directed(sg);
      break;
    case Strategy::mst:
      if (sg.directed()) fail(ErrorKind::invalid_input, "mst needs undirected matrices");
      out.plan = mst_undirected(sg);
      break;
    case Strategy::spt:
      out.plan = ext.shortest();
      break;
    case Strategy::lmg:
      if (auto budget = budget_of(params, ext)) {
        out.plan = lmg(sg, ext.base(), ext.shortest(), *budget, params.workload);
      } else if (params.theta) {
        out.plan = lmg_min_storage(sg, ext.base(), ext.shortest(), *params.theta,
                                   params.workload);
      } else {
        fail(ErrorKind::invalid_input, "lmg needs a budget, budget factor or theta");
      }
      break;
    case Strategy::mp:
      if (params.theta) {
        out.plan = mp(sg, static_cast<Cost>(std::floor(*params.theta)));
      } else if (auto budget = budget_of(params, ext)) {
        out.plan = mp_budget(sg, *budget);
      } else {
        fail(ErrorKind::invalid_input, "mp needs theta, a budget or a budget factor");
      }
      break;
    case Strategy::last:
      out.plan = last(sg, ext.base(), ext.shortest(), params.alpha);
      out.guaranteed = last_has_guarantee(sg);
      break;
    case Strategy::gith:
      out.plan = gith(sg, params.gith);
      break;
  }
  out.report = evaluate(out.plan, sg, params.workload);
  return out;
}

}  // namespace

std::optional<Strategy> parse_strategy(std::string_view name) {
  for (const auto& [key, value] : kNames) {
    if (key == name) return value;
  }
  return std::nullopt;
}

std::string_view to_string(Strategy strategy) noexcept {
  for (const auto& [key, value] : kNames) {
    if (value == strategy) return key;
  }
  return "?";
}

Solution solve(const SolverGraph& sg, Strategy strategy, const SolveParams& params) {
  Extremes ext(sg);
  return run(sg, strategy, params, ext);
}

std::vector<SweepRow> sweep(const SolverGraph& sg, Strategy strategy, double lo, double hi,
                            std::size_t steps, bool relative, const SolveParams& params) {
  if (steps == 0) fail(ErrorKind::invalid_input, "sweep needs at least one step");
  if (!(lo <= hi)) fail(ErrorKind::invalid_input, "sweep range must satisfy lo <= hi");
  Extremes ext(sg);
  std::vector<SweepRow> rows;
  rows.reserve(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    const double value = steps == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) /
                                                    static_cast<double>(steps - 1);
    SolveParams p = params;
    switch (strategy) {
      case Strategy::lmg:
        p.theta.reset();
        p.budget_factor.reset();
        if (relative) {
          p.budget_factor = value;
          p.budget.reset();
        } else {
          p.budget = static_cast<Cost>(std::floor(value));
        }
        break;
      case Strategy::mp:
        p.budget.reset();
        p.budget_factor.reset();
        p.theta = relative ? value * static_cast<double>(ext.max_shortest()) : value;
        break;
      case Strategy::last:
        p.alpha = value;
        break;
      case Strategy::gith:
        p.gith.window = static_cast<std::size_t>(std::llround(value));
        break;
      default:
        fail(ErrorKind::invalid_input,
             "sweep supports lmg, mp, last and gith, not " + std::string(to_string(strategy)));
    }
    auto solution = run(sg, strategy, p, ext);
    rows.push_back({value, solution.report.total_storage, solution.report.sum_recreation,
                    solution.report.max_recreation, solution.report.weighted_sum});
  }
  return rows;
}

}  // namespace dvs
