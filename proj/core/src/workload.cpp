#include "dvs/genlab/workload.hpp"

#include <cmath>
#include <numeric>
#include <utility>
#include <vector>

#include "dvs/core/errors.hpp"
#include "dvs/genlab/rng.hpp"

namespace dvs {

WorkloadProfile gen_workload(std::size_t n, double exponent, std::uint64_t seed) {
  if (n == 0) fail(ErrorKind::invalid_input, "workload needs at least one version");
  if (!(exponent > 0.0) || !std::isfinite(exponent)) {
    fail(ErrorKind::invalid_input, "Zipf exponent must be positive");
  }
  std::vector<VersionId> order(n);
  std::iota(order.begin(), order.end(), VersionId{1});
  Rng rng(seed);
  for (std::size_t i = n - 1; i > 0; --i) {
    std::swap(order[i], order[rng.uniform(0, i)]);
  }
  std::vector<double> freq(n + 1, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    freq[order[r]] = 1.0 / std::pow(static_cast<double>(r + 1), exponent);
  }
  return WorkloadProfile(std::move(freq));
}

}  // namespace dvs
