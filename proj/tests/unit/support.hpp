#pragma once

// Instance generators and brute-force oracles shared by the unit and
// acceptance tests. Everything here is deliberately naive so it can serve as
// a reference for the library code.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <limits>
#include <ostream>
#include <random>
#include <string>
#include <unistd.h>
#include <vector>

#include "dvs/core/cost_matrices.hpp"
#include "dvs/core/evaluate.hpp"
#include "dvs/core/solver_graph.hpp"
#include "dvs/core/storage_plan.hpp"

namespace dvs {

// Readable gtest output for plans: the parent of versions 1..n.
inline void PrintTo(const StoragePlan& plan, std::ostream* os) {
  *os << '[';
  for (VersionId v = 1; v <= plan.version_count(); ++v) *os << (v > 1 ? " " : "") << plan.parent(v);
  *os << ']';
}

}  // namespace dvs

namespace dvs::testing {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(DVS_FIXTURE_DIR) / name;
}

/// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::uint64_t counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("dvs-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

struct InstanceShape {
  std::size_t n = 6;
  bool directed = true;
  bool phi_equals_delta = false;
  double density = 0.5;  // chance that an off-diagonal pair is revealed
  Cost min_full = 50;
  Cost max_full = 200;
  Cost max_delta = 120;
};

/// Random matrices with every diagonal entry present; deltas are uniform in
/// [1, max_delta], recreation costs uniform in [1, 2 * max_delta] unless
/// phi_equals_delta.
inline CostMatrices random_matrices(std::mt19937_64& rng, const InstanceShape& s) {
  auto pick = [&](Cost lo, Cost hi) { return std::uniform_int_distribution<Cost>(lo, hi)(rng); };
  CostMatrices m(s.n, s.directed);
  for (VersionId v = 1; v <= s.n; ++v) {
    const Cost full = pick(s.min_full, s.max_full);
    m.set(v, v, {full, s.phi_equals_delta ? full : pick(s.min_full, s.max_full)});
  }
  std::bernoulli_distribution reveal(s.density);
  for (VersionId i = 1; i <= s.n; ++i) {
    for (VersionId j = 1; j <= s.n; ++j) {
      if (i == j || (!s.directed && j < i) || !reveal(rng)) continue;
      const Cost d = pick(1, s.max_delta);
      m.set(i, j, {d, s.phi_equals_delta ? d : pick(1, 2 * s.max_delta)});
    }
  }
  return m;
}

/// Recreation cost of every version by walking parent pointers; -1 for
/// versions on a cycle or with an unrevealed parent edge.
inline std::vector<Cost> walk_costs(const StoragePlan& plan, const SolverGraph& sg,
                                    Cost EdgeCost::*field) {
  const std::size_t n = sg.version_count();
  std::vector<Cost> out(n + 1, 0);
  for (VersionId v = 1; v <= n; ++v) {
    Cost total = 0;
    VersionId u = v;
    std::size_t steps = 0;
    while (u != kRoot && steps <= n) {
      const SolverEdge* e = sg.find(plan.parent(u), u);
      if (e == nullptr) {
        total = -1;
        break;
      }
      total += e->cost.*field;
      u = plan.parent(u);
      ++steps;
    }
    out[v] = (u == kRoot && total >= 0) ? total : -1;
  }
  return out;
}

inline bool plan_is_tree(const StoragePlan& plan, const SolverGraph& sg) {
  for (Cost c : walk_costs(plan, sg, &EdgeCost::recreation)) {
    if (c < 0) return false;
  }
  return true;
}

inline Cost storage_of(const StoragePlan& plan, const SolverGraph& sg) {
  Cost c = 0;
  for (VersionId v = 1; v <= sg.version_count(); ++v) c += sg.find(plan.parent(v), v)->cost.storage;
  return c;
}

/// Calls `visit` with every valid plan: an odometer over each version's
/// revealed in-edges, filtered by a parent-walk acyclicity check.
inline void for_each_plan(const SolverGraph& sg, const std::function<void(const StoragePlan&)>& visit) {
  const std::size_t n = sg.version_count();
  std::vector<std::vector<VersionId>> choices(n + 1);
  for (VersionId v = 1; v <= n; ++v) {
    for (auto e : sg.in_edges(v)) choices[v].push_back(sg.edge(e).from);
  }
  std::vector<std::size_t> digit(n + 1, 0);
  std::vector<VersionId> parents(n + 1, kRoot);
  while (true) {
    for (VersionId v = 1; v <= n; ++v) parents[v] = choices[v][digit[v]];
    StoragePlan plan(parents);
    if (plan_is_tree(plan, sg)) visit(plan);
    VersionId v = 1;
    while (v <= n && ++digit[v] == choices[v].size()) digit[v++] = 0;
    if (v > n) break;
  }
}

/// Random valid plan: versions join in random order, each under a random
/// already placed node it has a revealed edge from.
inline StoragePlan random_plan(std::mt19937_64& rng, const SolverGraph& sg) {
  const std::size_t n = sg.version_count();
  std::vector<VersionId> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<VersionId>(i + 1);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<char> placed(n + 1, 0);
  placed[kRoot] = 1;
  std::vector<VersionId> parents(n + 1, kRoot);
  for (VersionId v : order) {
    std::vector<VersionId> options;
    for (auto e : sg.in_edges(v)) {
      if (placed[sg.edge(e).from]) options.push_back(sg.edge(e).from);
    }
    parents[v] = options[rng() % options.size()];
    placed[v] = 1;
  }
  return StoragePlan(parents);
}

/// Bellman-Ford over recreation costs from the root.
inline std::vector<Cost> bellman_ford(const SolverGraph& sg) {
  const std::size_t n = sg.version_count();
  const Cost inf = std::numeric_limits<Cost>::max() / 4;
  std::vector<Cost> d(n + 1, inf);
  d[kRoot] = 0;
  for (std::size_t round = 0; round <= n; ++round) {
    for (const auto& e : sg.edges()) {
      if (d[e.from] != inf && d[e.from] + e.cost.recreation < d[e.to]) {
        d[e.to] = d[e.from] + e.cost.recreation;
      }
    }
  }
  return d;
}

/// CSV-ish text with `rows` lines of random small integers.
inline std::string random_table(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::string out;
  std::uniform_int_distribution<int> cell(0, 99);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (c) out += ',';
      out += std::to_string(cell(rng));
    }
    out += '\n';
  }
  return out;
}

/// A random edit of `text`: lines dropped, duplicated, inserted or changed.
inline std::string mutate_lines(std::mt19937_64& rng, const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string::npos) nl = text.size() - 1;
    lines.push_back(text.substr(start, nl - start + 1));
    start = nl + 1;
  }
  std::uniform_int_distribution<int> op(0, 5);
  std::vector<std::string> out;
  for (const auto& l : lines) {
    switch (op(rng)) {
      case 0: break;
      case 1: out.push_back(l); out.push_back(l); break;
      case 2: out.push_back(std::to_string(rng() % 1000) + ",x\n"); out.push_back(l); break;
      case 3: out.push_back("changed," + std::to_string(rng() % 1000) + "\n"); break;
      default: out.push_back(l); break;
    }
  }
  std::string joined;
  for (const auto& l : out) joined += l;
  if (rng() % 4 == 0 && !joined.empty() && joined.back() == '\n') joined.pop_back();
  if (rng() % 5 == 0) joined += "tail without newline";
  return joined;
}

}  // namespace dvs::testing
