#include "dvs/core/cost_matrices.hpp"

#include <string>

#include "dvs/core/errors.hpp"

namespace dvs {

void CostMatrices::set(VersionId i, VersionId j, EdgeCost cost) {
  if (i == kRoot || j == kRoot || i > n_ || j > n_) {
    fail(ErrorKind::invalid_input, "matrix entry (" + std::to_string(i) + "," +
                                       std::to_string(j) + ") out of range");
  }
  if (cost.storage < 0 || cost.recreation < 0 || cost.storage == kInfiniteCost ||
      cost.recreation == kInfiniteCost) {
    fail(ErrorKind::invalid_input, "matrix entry (" + std::to_string(i) + "," +
                                       std::to_string(j) +
                                       ") must be finite and non-negative");
  }
  if (!directed_ && i != j) {
    auto mirror = entries_.find({j, i});
    if (mirror != entries_.end() && mirror->second != cost) {
      fail(ErrorKind::invalid_input,
           "undirected entry (" + std::to_string(i) + "," + std::to_string(j) +
               ") disagrees with its mirror");
    }
    entries_[{j, i}] = cost;
  }
  entries_[{i, j}] = cost;
}

std::optional<EdgeCost> CostMatrices::get(VersionId i, VersionId j) const {
  auto it = entries_.find({i, j});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::size_t CostMatrices::missing_diagonal_count() const {
  std::size_t missing = 0;
  for (VersionId v = 1; v <= n_; ++v) {
    if (!entries_.contains({v, v})) ++missing;
  }
  return missing;
}

}  // namespace dvs
