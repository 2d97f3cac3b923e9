#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dvs/core/cost_matrices.hpp"
#include "dvs/core/version_graph.hpp"
#include "dvs/deltas/delta.hpp"

namespace dvs {

/// Which version pairs get a delta computed.
struct PairPolicy {
  enum class Kind {
    k_hop,      // within `value` hops in the undirected view of the version graph
    threshold,  // full sizes differ by less than `value` bytes
  };
  Kind kind = Kind::k_hop;
  std::uint64_t value = 10;

  /// "k_hop:K" or "threshold:BYTES"; throws invalid_input otherwise.
  static PairPolicy parse(std::string_view text);
  std::string to_string() const;
};

/// Unordered pairs (i < j) admitted by `policy`, sorted. `sizes[v - 1]` is the
/// full size of version v and only matters for the threshold policy.
std::vector<std::pair<VersionId, VersionId>> admitted_pairs(const VersionGraph& graph,
                                                           const std::vector<Cost>& sizes,
                                                           const PairPolicy& policy);

struct PopulateOptions {
  PairPolicy policy;
  DeltaMode mode = DeltaMode::directed;
  RecreationModel recreation = default_recreation;
  unsigned threads = 1;
};

/// Cost matrices for a corpus (`contents[v - 1]` holds version v). Diagonal
/// entries are full-copy artifact sizes; every admitted pair gets delta costs
/// in both directions (one mirrored entry in undirected mode). The result
/// does not depend on the thread count. Throws invalid_input when the corpus
/// and graph disagree on the number of versions.
CostMatrices populate_matrices(const std::vector<std::string>& contents,
                               const VersionGraph& graph, const PopulateOptions& options);

}  // namespace dvs
