#pragma once

#include <string>
#include <vector>

#include "dvs/core/solver_graph.hpp"
#include "dvs/core/storage_plan.hpp"

namespace dvs {

enum class ViolationKind {
  size_mismatch,       // plan and graph disagree on the version count
  parent_out_of_range,
  self_parent,
  edge_not_revealed,   // parent edge absent from the solver graph
  cycle,               // version sits on a parent cycle
  unreachable,         // version's parent chain leads into a cycle
};

struct Violation {
  ViolationKind kind;
  VersionId version = kRoot;
  VersionId parent = kRoot;
  std::string message;
};

/// Checks that `plan` is a spanning tree rooted at the dummy root using only
/// revealed edges. Reports every violation, not just the first one; an empty
/// result means the plan is valid.
std::vector<Violation> validate_plan(const StoragePlan& plan, const SolverGraph& sg);

/// Throws invalid_input with the first violation when the plan is not valid.
void require_valid(const StoragePlan& plan, const SolverGraph& sg);

}  // namespace dvs
