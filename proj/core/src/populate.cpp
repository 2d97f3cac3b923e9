#include "dvs/deltas/populate.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "dvs/core/errors.hpp"

namespace dvs {

PairPolicy PairPolicy::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon != std::string_view::npos) {
    const auto name = text.substr(0, colon);
    const auto number = text.substr(colon + 1);
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), value);
    if (ec == std::errc() && ptr == number.data() + number.size() && !number.empty()) {
      if (name == "k_hop") return {Kind::k_hop, value};
      if (name == "threshold") return {Kind::threshold, value};
    }
  }
  fail(ErrorKind::invalid_input,
       "pair policy must be k_hop:K or threshold:BYTES, got '" + std::string(text) + "'");
}

std::string PairPolicy::to_string() const {
  return (kind == Kind::k_hop ? "k_hop:" : "threshold:") + std::to_string(value);
}

std::vector<std::pair<VersionId, VersionId>> admitted_pairs(const VersionGraph& graph,
                                                           const std::vector<Cost>& sizes,
                                                           const PairPolicy& policy) {
  const std::size_t n = graph.size();
  std::vector<std::pair<VersionId, VersionId>> pairs;
  if (policy.kind == PairPolicy::Kind::k_hop) {
    for (VersionId i = 1; i <= n; ++i) {
      const auto hops = graph.hop_distances(i, policy.value);
      for (VersionId j = i + 1; j <= n; ++j) {
        if (hops[j] <= policy.value) pairs.emplace_back(i, j);
      }
    }
  } else {
    if (sizes.size() != n) {
      fail(ErrorKind::invalid_input, "threshold policy needs a size for every version");
    }
    for (VersionId i = 1; i <= n; ++i) {
      for (VersionId j = i + 1; j <= n; ++j) {
        const auto gap = static_cast<std::uint64_t>(std::llabs(sizes[i - 1] - sizes[j - 1]));
        if (gap < policy.value) pairs.emplace_back(i, j);
      }
    }
  }
  return pairs;
}

CostMatrices populate_matrices(const std::vector<std::string>& contents,
                               const VersionGraph& graph, const PopulateOptions& options) {
  const std::size_t n = graph.size();
  if (contents.size() != n) {
    fail(ErrorKind::invalid_input, "corpus has " + std::to_string(contents.size()) +
                                       " versions, graph has " + std::to_string(n));
  }
  const RecreationModel recreation =
      options.recreation ? options.recreation : RecreationModel(default_recreation);

  std::vector<Cost> sizes(n);
  for (std::size_t v = 0; v < n; ++v) sizes[v] = full_cost(contents[v].size());
  const auto pairs = admitted_pairs(graph, sizes, options.policy);

  std::vector<LineIndex> index;
  index.reserve(n);
  for (const auto& c : contents) index.emplace_back(c);

  const bool directed = options.mode == DeltaMode::directed;
  // Per pair: cost of i -> j, and of j -> i in directed mode.
  std::vector<std::pair<Cost, Cost>> costs(pairs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    try {
      for (std::size_t k = next++; k < pairs.size(); k = next++) {
        const auto& a = index[pairs[k].first - 1];
        const auto& b = index[pairs[k].second - 1];
        costs[k].first = delta_cost(a, b, options.mode);
        costs[k].second = directed ? delta_cost(b, a, options.mode) : costs[k].first;
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      next = pairs.size();
    }
  };
  const unsigned threads = std::max(1u, options.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  const auto kind = directed ? ArtifactKind::forward : ArtifactKind::undirected;
  CostMatrices matrices(n, directed);
  for (VersionId v = 1; v <= n; ++v) {
    const Cost s = sizes[v - 1];
    matrices.set(v, v, {s, recreation(ArtifactKind::full, s)});
  }
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [i, j] = pairs[k];
    matrices.set(i, j, {costs[k].first, recreation(kind, costs[k].first)});
    if (directed) matrices.set(j, i, {costs[k].second, recreation(kind, costs[k].second)});
  }
  return matrices;
}

}  // namespace dvs
