#include "dvs/exact/enumerate.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "dvs/core/errors.hpp"

namespace dvs {

std::optional<ObjectiveKind> parse_objective(std::string_view name) {
  if (name == "min_storage") return ObjectiveKind::min_storage;
  if (name == "min_sum_recreation") return ObjectiveKind::min_sum_recreation;
  if (name == "min_max_recreation") return ObjectiveKind::min_max_recreation;
  return std::nullopt;
}

std::optional<ConstraintKind> parse_constraint(std::string_view name) {
  if (name == "storage_budget") return ConstraintKind::storage_budget;
  if (name == "sum_recreation") return ConstraintKind::sum_recreation;
  if (name == "max_recreation") return ConstraintKind::max_recreation;
  return std::nullopt;
}

namespace {

bool same_quantity(ObjectiveKind o, ConstraintKind c) {
  return (o == ObjectiveKind::min_storage && c == ConstraintKind::storage_budget) ||
         (o == ObjectiveKind::min_sum_recreation && c == ConstraintKind::sum_recreation) ||
         (o == ObjectiveKind::min_max_recreation && c == ConstraintKind::max_recreation);
}

class Search {
 public:
  Search(const SolverGraph& sg, const Objective& objective)
      : sg_(sg), n_(sg.version_count()), objective_(objective) {
    parent_.assign(n_ + 1, kRoot);
    in_cost_.assign(n_ + 1, nullptr);
    recreation_.assign(n_ + 1, 0);
    // Cheapest way into each version, for the storage lower bound.
    suffix_min_.assign(n_ + 2, 0);
    for (VersionId v = static_cast<VersionId>(n_); v >= 1; --v) {
      Cost cheapest = kInfiniteCost;
      for (auto e : sg.in_edges(v)) cheapest = std::min(cheapest, sg.edge(e).cost.storage);
      suffix_min_[v] = suffix_min_[v + 1] + cheapest;
    }
  }

  void run() { assign(1, 0); }

  bool found() const { return found_; }
  const std::vector<VersionId>& best() const { return best_; }
  Cost best_value() const { return best_value_; }

 private:
  bool prunes(VersionId next, Cost storage) const {
    const Cost bound = storage + suffix_min_[next];
    if (objective_.constraint && objective_.constraint->kind == ConstraintKind::storage_budget &&
        bound > objective_.constraint->bound) {
      return true;
    }
    return found_ && objective_.kind == ObjectiveKind::min_storage && bound >= best_value_;
  }

  void assign(VersionId v, Cost storage) {
    if (v > n_) {
      leaf(storage);
      return;
    }
    for (auto e : sg_.in_edges(v)) {
      const auto& edge = sg_.edge(e);
      const VersionId u = edge.from;
      parent_[v] = u;
      in_cost_[v] = &edge.cost;
      if (!closes_loop(v) && !prunes(v + 1, storage + edge.cost.storage)) {
        assign(v + 1, storage + edge.cost.storage);
      }
    }
    parent_[v] = kRoot;
  }

  // A cycle through v can only involve versions assigned so far; any cycle is
  // caught when its highest-numbered member gets its parent.
  bool closes_loop(VersionId v) const {
    std::size_t steps = 0;
    for (VersionId x = parent_[v]; x != kRoot; x = parent_[x]) {
      if (x > v) return false;  // unassigned tail, resolved later
      if (x == v || ++steps > n_) return true;
    }
    return false;
  }

  void leaf(Cost storage) {
    std::vector<int> state(n_ + 1, 0);  // 0 unknown, 1 on stack, 2 done
    state[kRoot] = 2;
    recreation_[kRoot] = 0;
    std::vector<VersionId> chain;
    for (VersionId v = 1; v <= n_; ++v) {
      chain.clear();
      VersionId x = v;
      while (state[x] == 0) {
        state[x] = 1;
        chain.push_back(x);
        x = parent_[x];
      }
      if (state[x] == 1) return;  // cycle
      for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
        recreation_[*it] = recreation_[parent_[*it]] + in_cost_[*it]->recreation;
        state[*it] = 2;
      }
    }
    Cost sum = 0, max = 0;
    for (VersionId v = 1; v <= n_; ++v) {
      sum += recreation_[v];
      max = std::max(max, recreation_[v]);
    }
    if (objective_.constraint) {
      const Cost measured = objective_.constraint->kind == ConstraintKind::storage_budget ? storage
                            : objective_.constraint->kind == ConstraintKind::sum_recreation
                                ? sum
                                : max;
      if (measured > objective_.constraint->bound) return;
    }
    const Cost value = objective_.kind == ObjectiveKind::min_storage          ? storage
                       : objective_.kind == ObjectiveKind::min_sum_recreation ? sum
                                                                               : max;
    if (!found_ || value < best_value_) {
      found_ = true;
      best_value_ = value;
      best_ = parent_;
    }
  }

  const SolverGraph& sg_;
  std::size_t n_;
  Objective objective_;
  std::vector<VersionId> parent_;
  std::vector<const EdgeCost*> in_cost_;
  std::vector<Cost> recreation_;
  std::vector<Cost> suffix_min_;
  bool found_ = false;
  Cost best_value_ = 0;
  std::vector<VersionId> best_;
};

}  // namespace

ExactSolution enumerate_optimal(const SolverGraph& sg, const Objective& objective) {
  if (sg.version_count() > kMaxExactVersions) {
    fail(ErrorKind::invalid_input, "exhaustive search supports at most " +
                                       std::to_string(kMaxExactVersions) + " versions, got " +
                                       std::to_string(sg.version_count()));
  }
  if (objective.constraint && same_quantity(objective.kind, objective.constraint->kind)) {
    fail(ErrorKind::invalid_input, "objective and constraint must measure different quantities");
  }
  Search search(sg, objective);
  search.run();
  if (!search.found()) fail(ErrorKind::infeasible, "no plan satisfies the constraint");
  ExactSolution out;
  out.plan = StoragePlan(search.best());
  out.value = search.best_value();
  out.report = evaluate(out.plan, sg);
  return out;
}

}  // namespace dvs
