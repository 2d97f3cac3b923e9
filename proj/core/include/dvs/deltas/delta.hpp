#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include "dvs/core/types.hpp"
#include "dvs/deltas/digest.hpp"
#include "dvs/deltas/line_diff.hpp"

namespace dvs {

enum class DeltaMode { directed, undirected };

enum class ArtifactKind : std::uint8_t {
  full = 0,        // payload is the content itself
  forward = 1,     // edit script source -> target
  undirected = 2,  // both edit scripts; either endpoint rebuilds the other
};

/// Fixed header in front of every artifact payload; see docs/delta-format.md.
inline constexpr std::size_t kArtifactHeaderSize = 80;
inline constexpr std::uint16_t kArtifactFormatVersion = 1;

/// A stored object: a full copy or a line-based delta between two contents
/// identified by their digests. The source digest is all zeros for full
/// artifacts.
struct DeltaArtifact {
  ArtifactKind kind = ArtifactKind::full;
  Digest source{};
  Digest target{};
  std::string payload;

  /// Encoded size in bytes, header included.
  Cost storage_cost() const noexcept {
    return static_cast<Cost>(kArtifactHeaderSize + payload.size());
  }
};

/// Maps an artifact's storage cost to its recreation cost. The default
/// (identity) is the regime where both costs coincide.
using RecreationModel = std::function<Cost(ArtifactKind kind, Cost storage_cost)>;

Cost default_recreation(ArtifactKind kind, Cost storage_cost);

DeltaArtifact make_full(std::string_view content);

/// Line-based delta. Directed mode stores src -> dst; undirected mode stores
/// both directions in one artifact.
DeltaArtifact compute_delta(std::string_view src, std::string_view dst, DeltaMode mode);

/// Rebuilds the other side of `artifact` from `src`. Full artifacts ignore
/// `src`. Throws corruption ("wrong base version") when `src` is not an
/// endpoint the artifact can start from, and corruption when the result does
/// not hash to the recorded digest.
std::string apply_delta(std::string_view src, const DeltaArtifact& artifact);

/// storage_cost() of compute_delta(src, dst, mode) without building the
/// payload. Indexes can be reused across many pairs.
Cost delta_cost(const LineIndex& src, const LineIndex& dst, DeltaMode mode);

/// storage_cost() of make_full(content).
inline Cost full_cost(std::size_t content_bytes) {
  return static_cast<Cost>(kArtifactHeaderSize + content_bytes);
}

/// Header + payload serialization. decode() throws corruption on a bad magic,
/// unknown version or kind, or a length mismatch.
std::string encode(const DeltaArtifact& artifact);
DeltaArtifact decode(std::string_view bytes);

}  // namespace dvs
