#pragma once

#include <cstddef>
#include <cstdint>

#include "dvs/core/evaluate.hpp"

namespace dvs {

/// Zipf access weights: a seeded random permutation ranks the versions and
/// the version at rank r (1-based) gets weight 1 / r^exponent. Throws
/// invalid_input unless n >= 1 and exponent > 0.
WorkloadProfile gen_workload(std::size_t n, double exponent, std::uint64_t seed);

}  // namespace dvs
