#pragma once

#include <optional>
#include <string_view>

#include "dvs/core/evaluate.hpp"
#include "dvs/core/solver_graph.hpp"
#include "dvs/core/storage_plan.hpp"

namespace dvs {

enum class ObjectiveKind { min_storage, min_sum_recreation, min_max_recreation };
enum class ConstraintKind { storage_budget, sum_recreation, max_recreation };

struct Constraint {
  ConstraintKind kind;
  Cost bound = 0;
};

/// What to optimize, optionally subject to one bound on a different quantity.
struct Objective {
  ObjectiveKind kind = ObjectiveKind::min_storage;
  std::optional<Constraint> constraint;
};

std::optional<ObjectiveKind> parse_objective(std::string_view name);
std::optional<ConstraintKind> parse_constraint(std::string_view name);

struct ExactSolution {
  StoragePlan plan;
  Cost value = 0;
  CostReport report;
};

inline constexpr std::size_t kMaxExactVersions = 9;

/// Exhaustive search over every root-anchored spanning arborescence of `sg`.
/// Among optimal plans the lexicographically smallest parent vector wins.
/// Throws invalid_input for more than kMaxExactVersions versions or when the
/// objective and constraint measure the same quantity, and infeasible when no
/// plan meets the constraint.
ExactSolution enumerate_optimal(const SolverGraph& sg, const Objective& objective);

}  // namespace dvs
