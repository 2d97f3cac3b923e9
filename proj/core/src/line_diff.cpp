#include "dvs/deltas/line_diff.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

namespace dvs {

LineIndex::LineIndex(std::string_view text) : bytes_(text.size()) {
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    end = end == std::string_view::npos ? text.size() : end + 1;
    lines_.push_back(text.substr(start, end - start));
    start = end;
  }
  hashes_.reserve(lines_.size());
  for (auto line : lines_) hashes_.push_back(std::hash<std::string_view>{}(line));
}

namespace {

using Match = std::pair<std::size_t, std::size_t>;

// Regions with at most this many cells are matched exactly.
constexpr std::size_t kExactCells = std::size_t{1} << 20;

class Matcher {
 public:
  Matcher(const LineIndex& a, const LineIndex& b) : a_(a), b_(b) {}

  std::vector<Match> run() {
    solve(0, a_.size(), 0, b_.size());
    return std::move(out_);
  }

 private:
  void solve(std::size_t alo, std::size_t ahi, std::size_t blo, std::size_t bhi) {
    while (alo < ahi && blo < bhi && a_.same_line(alo, b_, blo)) out_.emplace_back(alo++, blo++);
    std::size_t tail = 0;
    while (alo < ahi && blo < bhi && a_.same_line(ahi - 1, b_, bhi - 1)) {
      --ahi;
      --bhi;
      ++tail;
    }
    if (alo < ahi && blo < bhi) {
      auto anchors = unique_anchors(alo, ahi, blo, bhi);
      if (!anchors.empty()) {
        std::size_t pa = alo, pb = blo;
        for (auto [i, j] : anchors) {
          solve(pa, i, pb, j);
          out_.emplace_back(i, j);
          pa = i + 1;
          pb = j + 1;
        }
        solve(pa, ahi, pb, bhi);
      } else if ((ahi - alo) * (bhi - blo) <= kExactCells) {
        exact(alo, ahi, blo, bhi);
      }
    }
    for (std::size_t k = 0; k < tail; ++k) out_.emplace_back(ahi + k, bhi + k);
  }

  // Lines occurring exactly once on each side, reduced to the heaviest
  // subsequence increasing on both sides.
  std::vector<Match> unique_anchors(std::size_t alo, std::size_t ahi, std::size_t blo,
                                    std::size_t bhi) {
    struct Seen {
      std::uint32_t in_a = 0, in_b = 0;
      std::size_t ia = 0, ib = 0;
    };
    std::unordered_map<std::uint64_t, Seen> seen;
    seen.reserve((ahi - alo) + (bhi - blo));
    for (std::size_t i = alo; i < ahi; ++i) {
      auto& s = seen[a_.hash(i)];
      ++s.in_a;
      s.ia = i;
    }
    for (std::size_t j = blo; j < bhi; ++j) {
      auto it = seen.find(b_.hash(j));
      if (it == seen.end()) continue;
      ++it->second.in_b;
      it->second.ib = j;
    }
    std::vector<Match> pairs;
    for (const auto& [h, s] : seen) {
      if (s.in_a == 1 && s.in_b == 1 && a_.same_line(s.ia, b_, s.ib)) {
        pairs.emplace_back(s.ia, s.ib);
      }
    }
    if (pairs.empty()) return pairs;
    std::sort(pairs.begin(), pairs.end());

    // Heaviest increasing subsequence in b order, weights = line bytes.
    std::vector<std::size_t> rank(pairs.size());
    {
      std::vector<std::size_t> order(pairs.size());
      for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
      std::sort(order.begin(), order.end(),
                [&](std::size_t x, std::size_t y) { return pairs[x].second < pairs[y].second; });
      for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r;
    }
    const std::size_t m = pairs.size();
    // Fenwick tree over ranks holding (best total, pair index).
    std::vector<std::pair<std::uint64_t, std::size_t>> tree(m + 1, {0, m});
    std::vector<std::size_t> prev(m, m);
    std::pair<std::uint64_t, std::size_t> overall{0, m};
    for (std::size_t k = 0; k < m; ++k) {
      std::pair<std::uint64_t, std::size_t> best{0, m};
      for (std::size_t r = rank[k]; r > 0; r -= r & (~r + 1)) {
        if (tree[r].first > best.first) best = tree[r];
      }
      const std::uint64_t total = best.first + a_.line(pairs[k].first).size();
      prev[k] = best.second;
      for (std::size_t r = rank[k] + 1; r <= m; r += r & (~r + 1)) {
        if (total > tree[r].first) tree[r] = {total, k};
      }
      if (total > overall.first) overall = {total, k};
    }
    std::vector<Match> chain;
    for (std::size_t k = overall.second; k != m; k = prev[k]) chain.push_back(pairs[k]);
    std::reverse(chain.begin(), chain.end());
    return chain;
  }

  // Byte-weighted longest common subsequence by dynamic programming.
  void exact(std::size_t alo, std::size_t ahi, std::size_t blo, std::size_t bhi) {
    const std::size_t n = ahi - alo, m = bhi - blo;
    std::vector<std::uint64_t> dp((n + 1) * (m + 1), 0);
    auto at = [m](std::size_t i, std::size_t j) { return i * (m + 1) + j; };
    for (std::size_t i = n; i-- > 0;) {
      for (std::size_t j = m; j-- > 0;) {
        std::uint64_t best = std::max(dp[at(i + 1, j)], dp[at(i, j + 1)]);
        if (a_.same_line(alo + i, b_, blo + j)) {
          best = std::max<std::uint64_t>(best, dp[at(i + 1, j + 1)] + a_.line(alo + i).size());
        }
        dp[at(i, j)] = best;
      }
    }
    std::size_t i = 0, j = 0;
    while (i < n && j < m) {
      if (a_.same_line(alo + i, b_, blo + j) &&
          dp[at(i, j)] == dp[at(i + 1, j + 1)] + a_.line(alo + i).size()) {
        out_.emplace_back(alo + i, blo + j);
        ++i;
        ++j;
      } else if (dp[at(i + 1, j)] >= dp[at(i, j + 1)]) {
        ++i;
      } else {
        ++j;
      }
    }
  }

  const LineIndex& a_;
  const LineIndex& b_;
  std::vector<Match> out_;
};

}  // namespace

std::vector<std::pair<std::size_t, std::size_t>> match_lines(const LineIndex& a,
                                                            const LineIndex& b) {
  return Matcher(a, b).run();
}

}  // namespace dvs
