#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "dvs/core/evaluate.hpp"
#include "dvs/core/storage_plan.hpp"
#include "dvs/core/version_graph.hpp"
#include "dvs/deltas/delta.hpp"
#include "dvs/deltas/digest.hpp"
#include "dvs/deltas/populate.hpp"
#include "dvs/heuristics/solve.hpp"

namespace dvs {

/// One committed version as recorded in manifest.json.
struct ManifestEntry {
  std::vector<VersionId> parents;  // derivation parents, as committed
  VersionId storage_parent = kRoot;
  ArtifactKind kind = ArtifactKind::full;
  std::string object;  // hex sha256 of the encoded artifact, names objects/<object>
  Digest digest{};     // sha256 of the version's content
  std::uint64_t size = 0;
};

struct PlanOptions {
  PairPolicy policy;  // pairs that get a delta before solving
  unsigned threads = 1;
};

struct PlanResult {
  CostReport before;    // measured, as stats() would report
  CostReport after;     // measured, after the rewrite
  Solution solution;    // what the solver saw on the populated matrices
};

/// Local object store laid out as
///
///   <dir>/objects/<sha256>   encoded artifacts (see delta.hpp)
///   <dir>/manifest.json      versions, parents, storage plan, digests
///   <dir>/lock               flock(2) target
///
/// Mutating calls take an exclusive lock on `lock`; checkout and stats take
/// a shared one. The manifest is replaced atomically (write then rename).
class Repository {
 public:
  /// Creates an empty repository in `dir` (created if needed). Throws
  /// invalid_input if `dir` already holds a manifest.
  static Repository init(const std::filesystem::path& dir, DeltaMode mode = DeltaMode::directed);

  /// Throws io if there is no manifest and corruption if it does not parse.
  static Repository open(const std::filesystem::path& dir);

  const std::filesystem::path& dir() const noexcept { return dir_; }
  DeltaMode mode() const;

  std::size_t version_count() const;
  VersionGraph version_graph() const;
  StoragePlan current_plan() const;
  std::vector<ManifestEntry> entries() const;

  /// Appends a version derived from `parents` (empty for a root commit). It is
  /// stored as a delta from the first parent when that is smaller than a full
  /// copy. Throws invalid_input on unknown or repeated parents.
  VersionId commit(std::string_view content, const std::vector<VersionId>& parents);

  /// Populates cost matrices from the checked-out contents, runs `strategy`
  /// and rewrites every object to match the new plan. Objects no longer
  /// referenced are removed. On failure the repository is left as it was.
  PlanResult plan(Strategy strategy, const SolveParams& params, const PlanOptions& options = {});

  /// Rebuilds a version by applying the artifacts on its storage chain.
  /// Throws corruption when any object or intermediate digest is wrong.
  std::string checkout(VersionId id) const;

  /// Storage and recreation costs measured from the object files.
  CostReport stats() const;

 private:
  explicit Repository(std::filesystem::path dir) : dir_(std::move(dir)) {}

  std::filesystem::path dir_;
};

}  // namespace dvs
