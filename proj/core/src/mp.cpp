#include "dvs/heuristics/mp.hpp"

#include <functional>
#include <queue>
#include <string>
#include <vector>

#include "dvs/core/errors.hpp"
#include "dvs/core/evaluate.hpp"
#include "dvs/spanners/spanners.hpp"

namespace dvs {

namespace {

// Whether `x` lies in the subtree rooted at `ancestor`.
bool below(const std::vector<VersionId>& parent, VersionId x, VersionId ancestor) {
  for (; x != kRoot; x = parent[x]) {
    if (x == ancestor) return true;
  }
  return ancestor == kRoot;
}

}  // namespace

StoragePlan mp(const SolverGraph& sg, Cost theta, const MpObserver& observer) {
  const std::size_t nodes = sg.node_count();
  const auto sp_plan = spt(sg);
  const auto sp = shortest_distances(sg);
  for (VersionId v = 1; v < nodes; ++v) {
    if (sp[v] > theta) {
      fail(ErrorKind::infeasible, "version " + std::to_string(v) + " needs recreation cost " +
                                      std::to_string(sp[v]) + " > theta " +
                                      std::to_string(theta));
    }
  }

  auto emit = [&](MpEvent::Kind kind, VersionId v, VersionId p, Cost l, Cost d) {
    if (observer) observer({kind, v, p, l, d});
  };

  std::vector<Cost> l(nodes, kInfiniteCost), d(nodes, kInfiniteCost);
  std::vector<VersionId> parent(nodes, kRoot);
  std::vector<bool> in_tree(nodes, false);
  using Item = std::pair<Cost, VersionId>;  // (l, version): ties go to the lower index
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  l[kRoot] = d[kRoot] = 0;
  queue.emplace(0, kRoot);

  while (!queue.empty()) {
    auto [key, i] = queue.top();
    queue.pop();
    if (in_tree[i] || key != l[i]) continue;
    in_tree[i] = true;
    if (i != kRoot) emit(MpEvent::Kind::dequeued, i, parent[i], l[i], d[i]);

    for (auto e : sg.out_edges(i)) {
      const auto& edge = sg.edge(e);
      const VersionId j = edge.to;
      const Cost through = d[i] + edge.cost.recreation;
      if (in_tree[j]) {
        if (through <= d[j] && edge.cost.storage <= l[j] && !below(parent, i, j)) {
          parent[j] = i;
          d[j] = through;
          l[j] = edge.cost.storage;
          emit(MpEvent::Kind::reparented, j, i, l[j], d[j]);
        }
      } else if (through <= theta && edge.cost.storage <= l[j]) {
        parent[j] = i;
        d[j] = through;
        l[j] = edge.cost.storage;
        queue.emplace(l[j], j);
        emit(MpEvent::Kind::enqueued, j, i, l[j], d[j]);
      }
    }
  }

  // Attach anything left over along its shortest path, top down.
  std::vector<VersionId> path;
  for (VersionId v = 1; v < nodes; ++v) {
    if (in_tree[v]) continue;
    path.clear();
    for (VersionId x = v; x != kRoot; x = sp_plan.parent(x)) path.push_back(x);
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      const VersionId x = *it, p = sp_plan.parent(x);
      if (in_tree[x] && (d[x] <= sp[x] || below(parent, p, x))) continue;
      parent[x] = p;
      d[x] = sp[x];
      l[x] = sg.find(p, x)->cost.storage;
      in_tree[x] = true;
      emit(MpEvent::Kind::repaired, x, p, l[x], d[x]);
    }
  }
  return StoragePlan(std::move(parent));
}

StoragePlan mp_budget(const SolverGraph& sg, Cost budget) {
  const auto base = min_storage_plan(sg);
  const auto base_report = evaluate(base, sg);
  if (budget < base_report.total_storage) {
    fail(ErrorKind::infeasible, "budget " + std::to_string(budget) +
                                    " is below the minimum storage " +
                                    std::to_string(base_report.total_storage));
  }
  const auto shortest = spt(sg);
  const auto spt_report = evaluate(shortest, sg);
  if (spt_report.total_storage <= budget) return shortest;

  StoragePlan best = base;
  Cost best_max = base_report.max_recreation;
  Cost best_storage = base_report.total_storage;
  auto consider = [&](const StoragePlan& plan) {
    auto report = evaluate(plan, sg);
    if (report.total_storage > budget) return false;
    if (report.max_recreation < best_max ||
        (report.max_recreation == best_max && report.total_storage < best_storage)) {
      best = plan;
      best_max = report.max_recreation;
      best_storage = report.total_storage;
    }
    return true;
  };

  Cost lo = spt_report.max_recreation;
  Cost hi = std::max(lo, base_report.max_recreation);
  if (!consider(mp(sg, hi))) return best;
  if (consider(mp(sg, lo))) return best;
  // consider(mp(hi)) held and consider(mp(lo)) did not.
  while (hi - lo > 1) {
    const Cost mid = lo + (hi - lo) / 2;
    if (consider(mp(sg, mid))) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return best;
}

}  // namespace dvs
