#include "dvs/core/validate.hpp"

#include <cstdint>

#include "dvs/core/errors.hpp"

namespace dvs {

namespace {

enum class Reach : std::uint8_t { unknown, walking, rooted, broken };

std::string describe(VersionId v, VersionId p) {
  return "version " + std::to_string(v) + " (parent " + std::to_string(p) + ")";
}

}  // namespace

std::vector<Violation> validate_plan(const StoragePlan& plan, const SolverGraph& sg) {
  std::vector<Violation> out;
  const std::size_t n = sg.version_count();
  if (plan.version_count() != n) {
    out.push_back({ViolationKind::size_mismatch, kRoot, kRoot,
                   "plan covers " + std::to_string(plan.version_count()) +
                       " versions, graph has " + std::to_string(n)});
    return out;
  }

  std::vector<Reach> reach(n + 1, Reach::unknown);
  reach[kRoot] = Reach::rooted;

  for (VersionId v = 1; v <= n; ++v) {
    const VersionId p = plan.parent(v);
    if (p > n) {
      out.push_back({ViolationKind::parent_out_of_range, v, p,
                     describe(v, p) + ": parent out of range"});
      reach[v] = Reach::broken;
    } else if (p == v) {
      out.push_back({ViolationKind::self_parent, v, p, describe(v, p) + ": self parent"});
      reach[v] = Reach::broken;
    } else if (sg.find(p, v) == nullptr) {
      out.push_back({ViolationKind::edge_not_revealed, v, p,
                     describe(v, p) + ": edge not revealed"});
    }
  }

  std::vector<VersionId> walk;
  for (VersionId start = 1; start <= n; ++start) {
    if (reach[start] != Reach::unknown) continue;
    walk.clear();
    VersionId v = start;
    while (reach[v] == Reach::unknown) {
      reach[v] = Reach::walking;
      walk.push_back(v);
      v = plan.parent(v);
    }
    Reach outcome = reach[v] == Reach::rooted ? Reach::rooted : Reach::broken;
    if (reach[v] == Reach::walking) {
      // `v` is where this walk closed on itself: everything from v onward in
      // the walk is the cycle, everything before it merely leads into it.
      bool on_cycle = false;
      for (VersionId w : walk) {
        if (w == v) on_cycle = true;
        if (on_cycle) {
          out.push_back({ViolationKind::cycle, w, plan.parent(w),
                         describe(w, plan.parent(w)) + ": on a parent cycle"});
        } else {
          out.push_back({ViolationKind::unreachable, w, plan.parent(w),
                         describe(w, plan.parent(w)) + ": not reachable from root"});
        }
      }
    } else if (outcome == Reach::broken) {
      for (VersionId w : walk) {
        out.push_back({ViolationKind::unreachable, w, plan.parent(w),
                       describe(w, plan.parent(w)) + ": not reachable from root"});
      }
    }
    for (VersionId w : walk) reach[w] = outcome;
  }
  return out;
}

void require_valid(const StoragePlan& plan, const SolverGraph& sg) {
  auto violations = validate_plan(plan, sg);
  if (!violations.empty()) {
    fail(ErrorKind::invalid_input, "invalid storage plan: " + violations.front().message);
  }
}

}  // namespace dvs
