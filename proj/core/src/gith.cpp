#include "dvs/heuristics/gith.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <string>
#include <vector>

#include "dvs/core/errors.hpp"
#include "wide_int.hpp"

namespace dvs {

std::uint32_t name_hash(std::string_view path) {
  std::uint32_t hash = 0;
  for (unsigned char c : path) {
    if (std::isspace(c)) continue;
    hash = (hash >> 2) + (static_cast<std::uint32_t>(c) << 24);
  }
  return hash;
}

double biased_delta(Cost delta, std::size_t max_depth, std::size_t base_depth) {
  return static_cast<double>(delta) / static_cast<double>(max_depth - base_depth);
}

namespace {

struct Slot {
  VersionId id;
  std::size_t depth;
  int type;
};

}  // namespace

StoragePlan gith(std::span<const GitHItem> items, const DeltaOracle& oracle,
                 const GitHConfig& config) {
  if (config.window == 0) fail(ErrorKind::invalid_input, "window must be at least 1");
  if (config.max_depth == 0) fail(ErrorKind::invalid_input, "max depth must be at least 1");
  const std::size_t n = items.size();
  std::vector<bool> seen(n + 1, false);
  for (const auto& item : items) {
    if (item.id == kRoot || item.id > n || seen[item.id]) {
      fail(ErrorKind::invalid_input, "items must list versions 1..n once each");
    }
    seen[item.id] = true;
  }

  std::vector<const GitHItem*> order;
  order.reserve(n);
  for (const auto& item : items) order.push_back(&item);
  if (config.ordering == GitHOrdering::size_desc) {
    std::sort(order.begin(), order.end(), [](const GitHItem* a, const GitHItem* b) {
      if (a->size != b->size) return a->size > b->size;
      return a->id < b->id;
    });
  } else {
    std::vector<std::uint32_t> hash(n + 1);
    for (const auto& item : items) hash[item.id] = name_hash(item.name);
    std::sort(order.begin(), order.end(), [&](const GitHItem* a, const GitHItem* b) {
      if (a->type != b->type) return a->type > b->type;
      if (hash[a->id] != hash[b->id]) return hash[a->id] > hash[b->id];
      if (a->size != b->size) return a->size > b->size;
      return a->id < b->id;
    });
  }

  const auto max_depth = config.max_depth;
  std::vector<VersionId> parent(n + 1, kRoot);
  std::deque<Slot> window;
  for (const GitHItem* item : order) {
    std::size_t best = window.size();
    Cost best_delta = 0;
    // Most recent first; a later member must be strictly better to win.
    for (std::size_t k = window.size(); k-- > 0;) {
      const Slot& slot = window[k];
      if (slot.depth >= max_depth || slot.type != item->type) continue;
      auto delta = oracle(slot.id, item->id);
      if (!delta || delta->storage >= item->size) continue;
      if (best == window.size()) {
        best = k;
        best_delta = delta->storage;
        continue;
      }
      // delta / (d - depth) < best_delta / (d - best_depth), cross-multiplied.
      const auto lhs = static_cast<detail::Wide>(delta->storage) *
                       static_cast<detail::Wide>(max_depth - window[best].depth);
      const auto rhs = static_cast<detail::Wide>(best_delta) *
                       static_cast<detail::Wide>(max_depth - slot.depth);
      if (lhs < rhs) {
        best = k;
        best_delta = delta->storage;
      }
    }

    Slot self{item->id, 0, item->type};
    if (best < window.size()) {
      const Slot base = window[best];
      parent[item->id] = base.id;
      self.depth = base.depth + 1;
      window.erase(window.begin() + static_cast<std::ptrdiff_t>(best));
      window.push_back(self);
      window.push_back(base);
    } else {
      window.push_back(self);
    }
    while (window.size() > config.window) window.pop_front();
  }
  return StoragePlan(std::move(parent));
}

StoragePlan gith(const SolverGraph& sg, const GitHConfig& config) {
  std::vector<GitHItem> items;
  items.reserve(sg.version_count());
  for (VersionId v = 1; v <= sg.version_count(); ++v) {
    items.push_back({v, sg.find(kRoot, v)->cost.storage, {}, 0});
  }
  DeltaOracle oracle = [&sg](VersionId base, VersionId target) -> std::optional<EdgeCost> {
    if (const auto* edge = sg.find(base, target)) return edge->cost;
    return std::nullopt;
  };
  return gith(items, oracle, config);
}

std::vector<std::size_t> chain_depths(const StoragePlan& plan) {
  const std::size_t n = plan.version_count();
  constexpr std::size_t kUnknown = static_cast<std::size_t>(-1);
  std::vector<std::size_t> depth(n + 1, kUnknown);
  depth[kRoot] = 0;
  std::vector<VersionId> chain;
  for (VersionId v = 1; v <= n; ++v) {
    chain.clear();
    VersionId x = v;
    while (depth[x] == kUnknown) {
      chain.push_back(x);
      x = plan.parent(x);
      if (chain.size() > n) fail(ErrorKind::invalid_input, "plan contains a cycle");
    }
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      const VersionId p = plan.parent(*it);
      depth[*it] = p == kRoot ? 0 : depth[p] + 1;
    }
  }
  return depth;
}

}  // namespace dvs
