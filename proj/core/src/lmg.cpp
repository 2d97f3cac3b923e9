#include "dvs/heuristics/lmg.hpp"

#include <string>
#include <vector>

#include "dvs/core/errors.hpp"
#include "dvs/core/validate.hpp"
#include "wide_int.hpp"

namespace dvs {

namespace {

struct Candidate {
  VersionId u = kRoot;
  VersionId v = kRoot;
  Cost increase = 0;
  Cost gain = 0;          // R_v - (R_u + phi_uv), per affected unit of mass
  long double num = 0;    // gain * subtree mass
  detail::Wide num_exact = 0; // same, when masses are plain counts
};

// True when `a` should be applied before `b`.
bool better(const Candidate& a, const Candidate& b, bool exact) {
  const bool a_inf = a.increase <= 0;
  const bool b_inf = b.increase <= 0;
  if (a_inf != b_inf) return a_inf;
  int cmp;  // sign of rho(a) - rho(b)
  if (a_inf) {
    if (exact) {
      cmp = a.num_exact < b.num_exact ? -1 : (a.num_exact > b.num_exact ? 1 : 0);
    } else {
      cmp = a.num < b.num ? -1 : (a.num > b.num ? 1 : 0);
    }
  } else if (exact) {
    const detail::Wide l = a.num_exact * b.increase;
    const detail::Wide r = b.num_exact * a.increase;
    cmp = l < r ? -1 : (l > r ? 1 : 0);
  } else {
    const long double l = a.num * static_cast<long double>(b.increase);
    const long double r = b.num * static_cast<long double>(a.increase);
    cmp = l < r ? -1 : (l > r ? 1 : 0);
  }
  if (cmp != 0) return cmp > 0;
  return a.u != b.u ? a.u < b.u : a.v < b.v;
}

class LmgState {
 public:
  LmgState(const SolverGraph& sg, const StoragePlan& base, const WorkloadProfile* workload)
      : sg_(sg), n_(sg.version_count()), exact_(workload == nullptr) {
    parent_.assign(base.parents().begin(), base.parents().end());
    children_.assign(n_ + 1, {});
    for (VersionId v = 1; v <= n_; ++v) children_[parent_[v]].push_back(v);
    auto report = evaluate(base, sg);
    recreation_ = report.recreation;
    storage_ = report.total_storage;

    mass_.assign(n_ + 1, 0.0);
    for (VersionId v = 1; v <= n_; ++v) {
      const double w = workload ? workload->weight(v) : 1.0;
      for (VersionId x = v; x != kRoot; x = parent_[x]) mass_[x] += w;
    }
  }

  Cost storage() const { return storage_; }
  VersionId parent(VersionId v) const { return parent_[v]; }
  bool exact() const { return exact_; }

  // Fills `c` for moving v under u; false if the move gains nothing.
  bool assess(VersionId u, VersionId v, Candidate& c) const {
    const auto* edge = sg_.find(u, v);
    const auto* current = sg_.find(parent_[v], v);
    const Cost gain = recreation_[v] - (recreation_[u] + edge->cost.recreation);
    if (gain <= 0) return false;
    c.u = u;
    c.v = v;
    c.gain = gain;
    c.increase = edge->cost.storage - current->cost.storage;
    c.num = static_cast<long double>(gain) * mass_[v];
    if (exact_) c.num_exact = static_cast<detail::Wide>(gain) * static_cast<std::int64_t>(mass_[v]);
    return true;
  }

  LmgMove apply(const Candidate& c) {
    const VersionId v = c.v, old = parent_[v];
    auto& siblings = children_[old];
    std::erase(siblings, v);
    for (VersionId x = old; x != kRoot; x = parent_[x]) mass_[x] -= mass_[v];
    parent_[v] = c.u;
    children_[c.u].push_back(v);
    for (VersionId x = c.u; x != kRoot; x = parent_[x]) mass_[x] += mass_[v];

    // Every node below v gets the same reduction.
    std::vector<VersionId> stack{v};
    while (!stack.empty()) {
      const VersionId x = stack.back();
      stack.pop_back();
      recreation_[x] -= c.gain;
      for (VersionId child : children_[x]) stack.push_back(child);
    }
    storage_ += c.increase;
    return {v, old, c.u, c.increase, static_cast<double>(c.num)};
  }

  StoragePlan plan() const { return StoragePlan(parent_); }

 private:
  const SolverGraph& sg_;
  std::size_t n_;
  bool exact_;
  std::vector<VersionId> parent_;
  std::vector<std::vector<VersionId>> children_;
  std::vector<Cost> recreation_;
  std::vector<double> mass_;
  Cost storage_ = 0;
};

double objective(const StoragePlan& plan, const SolverGraph& sg,
                 const WorkloadProfile* workload) {
  auto report = evaluate(plan, sg, workload);
  return workload ? *report.weighted_sum : static_cast<double>(report.sum_recreation);
}

}  // namespace

StoragePlan lmg(const SolverGraph& sg, const StoragePlan& base, const StoragePlan& spt,
                Cost budget, const WorkloadProfile* workload, const LmgObserver& observer) {
  require_valid(spt, sg);
  LmgState state(sg, base, workload);
  if (state.storage() > budget) {
    fail(ErrorKind::infeasible, "budget " + std::to_string(budget) +
                                    " is below the base plan's storage " +
                                    std::to_string(state.storage()));
  }

  std::vector<VersionId> pool;
  for (VersionId v = 1; v <= sg.version_count(); ++v) {
    if (spt.parent(v) != state.parent(v)) pool.push_back(v);
  }

  Candidate c, best;
  while (!pool.empty()) {
    std::size_t best_at = pool.size();
    for (std::size_t i = 0; i < pool.size(); ++i) {
      const VersionId v = pool[i];
      if (!state.assess(spt.parent(v), v, c)) continue;
      if (state.storage() + c.increase > budget) continue;
      if (best_at == pool.size() || better(c, best, state.exact())) {
        best = c;
        best_at = i;
      }
    }
    if (best_at == pool.size()) break;
    auto move = state.apply(best);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best_at));
    if (observer) observer(move);
  }
  return state.plan();
}

StoragePlan lmg_min_storage(const SolverGraph& sg, const StoragePlan& base,
                            const StoragePlan& spt, double max_sum,
                            const WorkloadProfile* workload) {
  if (objective(spt, sg, workload) > max_sum) {
    fail(ErrorKind::infeasible, "recreation bound is below the shortest path tree's total");
  }
  if (objective(base, sg, workload) <= max_sum) return base;

  Cost lo = evaluate(base, sg).total_storage;
  Cost hi = std::max(lo, evaluate(spt, sg).total_storage);
  auto fits = [&](Cost budget, StoragePlan& out) {
    out = lmg(sg, base, spt, budget, workload);
    return objective(out, sg, workload) <= max_sum;
  };

  StoragePlan best;
  if (!fits(hi, best)) return spt;
  if (StoragePlan at_lo; fits(lo, at_lo)) return at_lo;
  // Invariant: fits(hi) holds; fits(lo) does not.
  while (hi - lo > 1) {
    const Cost mid = lo + (hi - lo) / 2;
    StoragePlan candidate;
    if (fits(mid, candidate)) {
      hi = mid;
      best = std::move(candidate);
    } else {
      lo = mid;
    }
  }
  return best;
}

}  // namespace dvs
