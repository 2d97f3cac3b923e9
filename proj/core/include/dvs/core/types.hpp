#pragma once

#include <cstdint>
#include <limits>

namespace dvs {

/// Index of a version. Real versions are numbered 1..n; 0 is the dummy root
/// that every materialized version hangs off.
using VersionId = std::uint32_t;
inline constexpr VersionId kRoot = 0;

/// Storage bytes or recreation cost units. Sums over large corpora need the
/// full 64 bits.
using Cost = std::int64_t;
inline constexpr Cost kInfiniteCost = std::numeric_limits<Cost>::max();

/// A (storage, recreation) pair attached to a matrix entry or graph edge.
struct EdgeCost {
  Cost storage = 0;
  Cost recreation = 0;

  friend bool operator==(const EdgeCost&, const EdgeCost&) = default;
};

}  // namespace dvs
