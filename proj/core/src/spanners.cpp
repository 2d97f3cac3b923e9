#include "dvs/spanners/spanners.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <string>
#include <tuple>

#include "dvs/core/errors.hpp"

namespace dvs {

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

struct Arc {
  std::uint32_t u;
  std::uint32_t v;
  Cost w;
  std::uint32_t orig;  // index into the caller's arc list
};

// Returns, per node, the index (into `arcs`) of its chosen incoming arc; the
// root gets kNone. Arc order doubles as the tie-break among equal weights.
std::vector<std::uint32_t> edmonds(std::size_t nodes, std::uint32_t root,
                                   const std::vector<Arc>& arcs) {
  std::vector<std::uint32_t> best(nodes, kNone);
  for (std::uint32_t a = 0; a < arcs.size(); ++a) {
    const Arc& arc = arcs[a];
    if (arc.u == arc.v || arc.v == root) continue;
    if (best[arc.v] == kNone || arc.w < arcs[best[arc.v]].w) best[arc.v] = a;
  }
  for (std::uint32_t v = 0; v < nodes; ++v) {
    if (v != root && best[v] == kNone) {
      fail(ErrorKind::invalid_input, "node unreachable from the root");
    }
  }

  // Label cycles formed by the chosen arcs.
  std::vector<std::uint32_t> comp(nodes, kNone);
  std::vector<std::uint32_t> visit(nodes, kNone);
  std::vector<bool> on_cycle(nodes, false);
  std::uint32_t next = 0;
  for (std::uint32_t s = 0; s < nodes; ++s) {
    std::uint32_t v = s;
    while (v != root && visit[v] == kNone && comp[v] == kNone) {
      visit[v] = s;
      v = arcs[best[v]].u;
    }
    if (v != root && comp[v] == kNone && visit[v] == s) {
      for (std::uint32_t x = v;;) {
        comp[x] = next;
        on_cycle[x] = true;
        x = arcs[best[x]].u;
        if (x == v) break;
      }
      ++next;
    }
  }
  if (next == 0) return best;
  for (std::uint32_t v = 0; v < nodes; ++v) {
    if (comp[v] == kNone) comp[v] = next++;
  }

  // Contract; keep only the cheapest arc between each pair of components.
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> cheapest;
  std::vector<Arc> contracted;
  for (std::uint32_t a = 0; a < arcs.size(); ++a) {
    const Arc& arc = arcs[a];
    const std::uint32_t cu = comp[arc.u], cv = comp[arc.v];
    if (cu == cv || arc.v == root) continue;
    const Cost w = on_cycle[arc.v] ? arc.w - arcs[best[arc.v]].w : arc.w;
    auto [it, inserted] = cheapest.try_emplace({cu, cv}, contracted.size());
    if (inserted) {
      contracted.push_back({cu, cv, w, a});
    } else if (w < contracted[it->second].w) {
      contracted[it->second] = {cu, cv, w, a};
    }
  }
  // Restore the original arc order so ties keep resolving the same way.
  std::sort(contracted.begin(), contracted.end(),
            [](const Arc& x, const Arc& y) { return x.orig < y.orig; });

  auto sub = edmonds(next, comp[root], contracted);
  std::vector<std::uint32_t> chosen = best;
  for (std::uint32_t c = 0; c < next; ++c) {
    if (sub[c] == kNone) continue;
    const std::uint32_t a = contracted[sub[c]].orig;
    chosen[arcs[a].v] = a;
  }
  return chosen;
}

StoragePlan plan_from_parents(std::vector<VersionId> parents) {
  parents[kRoot] = kRoot;
  return StoragePlan(std::move(parents));
}

}  // namespace

StoragePlan mst_undirected(const SolverGraph& sg) {
  const std::size_t nodes = sg.node_count();
  std::vector<VersionId> parent(nodes, kRoot);
  std::vector<bool> in_tree(nodes, false);
  using Item = std::tuple<Cost, VersionId, VersionId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;

  auto add = [&](VersionId u) {
    in_tree[u] = true;
    for (auto e : sg.out_edges(u)) {
      const auto& edge = sg.edge(e);
      if (!in_tree[edge.to]) heap.emplace(edge.cost.storage, u, edge.to);
    }
  };
  add(kRoot);
  std::size_t added = 1;
  while (!heap.empty() && added < nodes) {
    auto [w, u, v] = heap.top();
    heap.pop();
    if (in_tree[v]) continue;
    parent[v] = u;
    ++added;
    add(v);
  }
  if (added < nodes) fail(ErrorKind::invalid_input, "some version is unreachable from the root");
  return plan_from_parents(std::move(parent));
}

StoragePlan mca_directed(const SolverGraph& sg) {
  std::vector<Arc> arcs;
  arcs.reserve(sg.edges().size());
  for (std::uint32_t e = 0; e < sg.edges().size(); ++e) {
    const auto& edge = sg.edge(e);
    arcs.push_back({edge.from, edge.to, edge.cost.storage, e});
  }
  // Edge order is (from, to), which is the tie-break we want.
  auto chosen = edmonds(sg.node_count(), kRoot, arcs);
  std::vector<VersionId> parent(sg.node_count(), kRoot);
  for (VersionId v = 1; v < sg.node_count(); ++v) parent[v] = arcs[chosen[v]].u;
  return plan_from_parents(std::move(parent));
}

StoragePlan min_storage_plan(const SolverGraph& sg) {
  return sg.directed() ? mca_directed(sg) : mst_undirected(sg);
}

namespace {

void dijkstra(const SolverGraph& sg, std::vector<Cost>& dist, std::vector<VersionId>& parent) {
  const std::size_t nodes = sg.node_count();
  dist.assign(nodes, kInfiniteCost);
  parent.assign(nodes, kRoot);
  std::vector<bool> done(nodes, false);
  using Item = std::pair<Cost, VersionId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[kRoot] = 0;
  heap.emplace(0, kRoot);
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (done[u] || d != dist[u]) continue;
    done[u] = true;
    for (auto e : sg.out_edges(u)) {
      const auto& edge = sg.edge(e);
      const VersionId v = edge.to;
      if (done[v]) continue;
      const Cost nd = d + edge.cost.recreation;
      if (nd < dist[v]) {
        dist[v] = nd;
        parent[v] = u;
        heap.emplace(nd, v);
      } else if (nd == dist[v] && u < parent[v]) {
        parent[v] = u;
      }
    }
  }
  for (VersionId v = 1; v < nodes; ++v) {
    if (!done[v]) {
      fail(ErrorKind::invalid_input, "version " + std::to_string(v) + " is unreachable");
    }
  }
}

}  // namespace

StoragePlan spt(const SolverGraph& sg) {
  std::vector<Cost> dist;
  std::vector<VersionId> parent;
  dijkstra(sg, dist, parent);
  return plan_from_parents(std::move(parent));
}

std::vector<Cost> shortest_distances(const SolverGraph& sg) {
  std::vector<Cost> dist;
  std::vector<VersionId> parent;
  dijkstra(sg, dist, parent);
  return dist;
}

}  // namespace dvs
