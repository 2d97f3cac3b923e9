#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace dvs {

/// A file split into LF-terminated lines. The last line keeps whatever it
/// ends with, so concatenating `lines` gives back the input exactly.
class LineIndex {
 public:
  LineIndex() = default;
  explicit LineIndex(std::string_view text);

  std::size_t size() const noexcept { return lines_.size(); }
  std::string_view line(std::size_t i) const { return lines_[i]; }
  std::uint64_t hash(std::size_t i) const { return hashes_[i]; }
  std::size_t bytes() const noexcept { return bytes_; }

  bool same_line(std::size_t i, const LineIndex& other, std::size_t j) const {
    return hashes_[i] == other.hashes_[j] && lines_[i] == other.lines_[j];
  }

 private:
  std::vector<std::string_view> lines_;
  std::vector<std::uint64_t> hashes_;
  std::size_t bytes_ = 0;
};

/// Pairs (i, j) with a.line(i) == b.line(j), strictly increasing in both,
/// chosen to keep as many bytes as possible in common. Exact on small
/// regions; larger regions are anchored on lines that occur once on each
/// side and refined between anchors.
std::vector<std::pair<std::size_t, std::size_t>> match_lines(const LineIndex& a,
                                                            const LineIndex& b);

}  // namespace dvs
