#pragma once

#include <functional>

#include "dvs/core/solver_graph.hpp"
#include "dvs/core/storage_plan.hpp"

namespace dvs {

/// Trace record emitted by mp() for every label change.
struct MpEvent {
  enum class Kind {
    dequeued,    // `version` joined the tree under `parent`
    enqueued,    // label of a version outside the tree improved
    reparented,  // a version already in the tree moved under `parent`
    repaired,    // attached along its shortest path after the main loop
  };
  Kind kind;
  VersionId version = kRoot;
  VersionId parent = kRoot;
  Cost l = 0;  // marginal storage of `version`
  Cost d = 0;  // recreation cost bound of `version`
};

using MpObserver = std::function<void(const MpEvent&)>;

/// Modified Prim: grows a tree by smallest marginal storage while keeping
/// every recreation cost within `theta`; versions already in the tree are
/// re-parented when a cheaper delta keeps their recreation cost from rising.
/// Versions the greedy growth never reaches are attached along their shortest
/// path. Throws infeasible, naming the version, when a shortest recreation
/// distance exceeds `theta`.
StoragePlan mp(const SolverGraph& sg, Cost theta, const MpObserver& observer = {});

/// Min-max recreation under a storage budget: binary search on theta for the
/// smallest value whose MP plan fits `budget`; the min-storage tree and the
/// shortest path tree are also considered and the lowest maximum wins.
/// Throws infeasible when `budget` is below the min-storage tree's cost.
StoragePlan mp_budget(const SolverGraph& sg, Cost budget);

}  // namespace dvs
