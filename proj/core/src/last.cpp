#include "dvs/heuristics/last.hpp"

#include <algorithm>
#include <vector>

#include "dvs/core/errors.hpp"
#include "dvs/core/evaluate.hpp"

namespace dvs {

bool last_has_guarantee(const SolverGraph& sg) {
  if (sg.directed()) return false;
  return std::all_of(sg.edges().begin(), sg.edges().end(), [](const SolverEdge& e) {
    return e.cost.storage == e.cost.recreation;
  });
}

StoragePlan last(const SolverGraph& sg, const StoragePlan& mst, const StoragePlan& spt,
                 double alpha) {
  if (!(alpha > 1.0)) fail(ErrorKind::invalid_input, "alpha must be greater than 1");
  const std::size_t n = sg.version_count();
  const auto sp = evaluate(spt, sg).recreation;
  auto d = evaluate(mst, sg).recreation;
  std::vector<VersionId> parent(mst.parents().begin(), mst.parents().end());

  std::vector<std::vector<VersionId>> children(n + 1);
  for (VersionId v = 1; v <= n; ++v) children[mst.parent(v)].push_back(v);

  auto below = [&](VersionId x, VersionId ancestor) {
    for (; x != kRoot; x = parent[x]) {
      if (x == ancestor) return true;
    }
    return false;
  };
  auto relax = [&](VersionId from, VersionId to) {
    const auto* edge = sg.find(from, to);
    if (edge == nullptr) return;
    if (d[to] > d[from] + edge->cost.recreation) {
      d[to] = d[from] + edge->cost.recreation;
      parent[to] = from;
    }
  };
  std::vector<VersionId> path;
  auto check = [&](VersionId v) {
    if (v == kRoot) return;
    if (static_cast<long double>(d[v]) <= alpha * static_cast<long double>(sp[v])) return;
    path.clear();
    for (VersionId x = v; x != kRoot; x = spt.parent(x)) path.push_back(x);
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      const VersionId x = *it, p = spt.parent(x);
      if (d[x] <= sp[x] || below(p, x)) continue;
      d[x] = sp[x];
      parent[x] = p;
    }
  };

  // Iterative DFS; each frame remembers the next child to descend into.
  std::vector<std::pair<VersionId, std::size_t>> stack{{kRoot, 0}};
  while (!stack.empty()) {
    auto& [u, next] = stack.back();
    if (next < children[u].size()) {
      const VersionId v = children[u][next++];
      relax(u, v);
      check(v);
      stack.emplace_back(v, 0);
      continue;
    }
    const VersionId v = u;
    stack.pop_back();
    if (stack.empty()) break;
    const VersionId up = stack.back().first;
    relax(v, up);
    check(up);
  }
  return StoragePlan(std::move(parent));
}

}  // namespace dvs
