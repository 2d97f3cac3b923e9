#pragma once

#include <string>
#include <vector>

#include "dvs/core/cost_matrices.hpp"

namespace dvs {

struct TriangleViolation {
  enum class Kind {
    path,             // |d(p,q) - d(q,w)| <= d(p,w) <= d(p,q) + d(q,w) fails
    materialization,  // |d(p,p) - d(p,q)| <= d(q,q) <= d(p,p) + d(p,q) fails
  };
  Kind kind;
  VersionId p = kRoot;
  VersionId q = kRoot;
  VersionId w = kRoot;  // unused for materialization violations
  std::string detail;
};

/// Realizability checks on storage costs of a symmetric delta mechanism,
/// evaluated over revealed entries only. Works on directed matrices as well,
/// reading every (i, j) as given. Empty result means consistent.
std::vector<TriangleViolation> check_triangle(const CostMatrices& matrices);

}  // namespace dvs
