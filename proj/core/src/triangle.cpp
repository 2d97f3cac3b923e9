#include "dvs/core/triangle.hpp"

#include <cstdlib>
#include <initializer_list>
#include <utility>
#include <vector>

namespace dvs {

namespace {

std::string costs(std::initializer_list<std::pair<const char*, Cost>> named) {
  std::string s;
  for (const auto& [name, value] : named) {
    if (!s.empty()) s += ' ';
    s += name;
    s += '=';
    s += std::to_string(value);
  }
  return s;
}

}  // namespace

std::vector<TriangleViolation> check_triangle(const CostMatrices& matrices) {
  std::vector<TriangleViolation> out;
  const std::size_t n = matrices.size();

  // Off-diagonal adjacency: out_[p] holds (q, d(p,q)).
  std::vector<std::vector<std::pair<VersionId, Cost>>> out_adj(n + 1);
  for (const auto& [key, cost] : matrices.entries()) {
    if (key.first != key.second) out_adj[key.first].emplace_back(key.second, cost.storage);
  }

  for (const auto& [key, cost] : matrices.entries()) {
    const auto [p, q] = key;
    if (p == q) continue;
    auto pp = matrices.get(p, p);
    auto qq = matrices.get(q, q);
    if (!pp || !qq) continue;
    const Cost dpp = pp->storage, dqq = qq->storage, dpq = cost.storage;
    if (dqq > dpp + dpq || std::llabs(dpp - dpq) > dqq) {
      out.push_back({TriangleViolation::Kind::materialization, p, q, kRoot,
                     costs({{"d(p,p)", dpp}, {"d(p,q)", dpq}, {"d(q,q)", dqq}})});
    }
  }

  const bool symmetric = !matrices.directed();
  for (VersionId p = 1; p <= n; ++p) {
    for (const auto& [q, dpq] : out_adj[p]) {
      for (const auto& [w, dqw] : out_adj[q]) {
        if (w == p) continue;
        // (p,q,w) and (w,q,p) are the same constraint when costs are mirrored.
        if (symmetric && w < p) continue;
        auto pw = matrices.get(p, w);
        if (!pw) continue;
        const Cost dpw = pw->storage;
        if (dpw > dpq + dqw || std::llabs(dpq - dqw) > dpw) {
          out.push_back({TriangleViolation::Kind::path, p, q, w,
                         costs({{"d(p,q)", dpq}, {"d(q,w)", dqw}, {"d(p,w)", dpw}})});
        }
      }
    }
  }
  return out;
}

}  // namespace dvs
