#include <gtest/gtest.h>

#include <limits>
#include <random>
#include <regex>

#include "dvs/core/errors.hpp"
#include "dvs/core/io.hpp"
#include "dvs/exact/enumerate.hpp"
#include "dvs/exact/ilp.hpp"
#include "dvs/heuristics/mp.hpp"
#include "dvs/spanners/spanners.hpp"
#include "support.hpp"

using namespace dvs;
namespace dt = dvs::testing;

namespace {

Cost measure(const CostReport& r, ObjectiveKind k) {
  switch (k) {
    case ObjectiveKind::min_storage: return r.total_storage;
    case ObjectiveKind::min_sum_recreation: return r.sum_recreation;
    case ObjectiveKind::min_max_recreation: return r.max_recreation;
  }
  return 0;
}

Cost measure(const CostReport& r, ConstraintKind k) {
  switch (k) {
    case ConstraintKind::storage_budget: return r.total_storage;
    case ConstraintKind::sum_recreation: return r.sum_recreation;
    case ConstraintKind::max_recreation: return r.max_recreation;
  }
  return 0;
}

// Best value and its lexicographically smallest plan, by brute force.
std::optional<std::pair<Cost, StoragePlan>> oracle(const SolverGraph& sg, const Objective& obj) {
  std::optional<std::pair<Cost, StoragePlan>> best;
  dt::for_each_plan(sg, [&](const StoragePlan& p) {
    const auto r = evaluate(p, sg);
    if (obj.constraint && measure(r, obj.constraint->kind) > obj.constraint->bound) return;
    const Cost v = measure(r, obj.kind);
    const auto ps = p.parents();
    if (!best || v < best->first ||
        (v == best->first && std::lexicographical_compare(ps.begin(), ps.end(),
                                                          best->second.parents().begin(),
                                                          best->second.parents().end()))) {
      best = std::make_pair(v, p);
    }
  });
  return best;
}

}  // namespace

TEST(Exact, MatchesBruteForceOnRandomInstances) {
  std::mt19937_64 rng(71);
  const ObjectiveKind objectives[] = {ObjectiveKind::min_storage, ObjectiveKind::min_sum_recreation,
                                      ObjectiveKind::min_max_recreation};
  const ConstraintKind constraints[] = {ConstraintKind::storage_budget,
                                        ConstraintKind::sum_recreation,
                                        ConstraintKind::max_recreation};
  for (int round = 0; round < 60; ++round) {
    dt::InstanceShape shape;
    shape.n = 3 + round % 3;
    shape.directed = round % 2 == 0;
    const auto sg = build_solver_graph(dt::random_matrices(rng, shape));
    for (auto ok : objectives) {
      for (auto ck : constraints) {
        if (static_cast<int>(ok) == static_cast<int>(ck)) continue;
        Objective obj;
        obj.kind = ok;
        // Bound between the two spanner extremes so it sometimes binds.
        const auto lo = evaluate(spt(sg), sg);
        const auto hi = evaluate(min_storage_plan(sg), sg);
        const Cost a = measure(lo, ck), b = measure(hi, ck);
        obj.constraint = Constraint{ck, std::min(a, b) + (std::max(a, b) - std::min(a, b)) / 2};
        const auto want = oracle(sg, obj);
        if (!want) {
          EXPECT_THROW(enumerate_optimal(sg, obj), Error);
          continue;
        }
        const auto got = enumerate_optimal(sg, obj);
        EXPECT_EQ(got.value, want->first) << "round " << round;
        EXPECT_EQ(got.plan, want->second) << "round " << round;
        EXPECT_EQ(measure(got.report, ok), got.value);
      }
    }
  }
}

TEST(Exact, UnconstrainedMinStorageIsSpanner) {
  std::mt19937_64 rng(72);
  for (int round = 0; round < 20; ++round) {
    dt::InstanceShape shape;
    shape.n = 5;
    shape.directed = round % 2 == 0;
    const auto sg = build_solver_graph(dt::random_matrices(rng, shape));
    const auto got = enumerate_optimal(sg, Objective{});
    EXPECT_EQ(got.value, evaluate(min_storage_plan(sg), sg).total_storage);
  }
}

TEST(Exact, RejectsBadRequests) {
  const auto sg = build_solver_graph(io::load_matrices(dt::fixture("five_versions.matrix")));
  Objective same{ObjectiveKind::min_storage, Constraint{ConstraintKind::storage_budget, 100}};
  EXPECT_THROW(enumerate_optimal(sg, same), Error);
  Objective impossible{ObjectiveKind::min_storage, Constraint{ConstraintKind::max_recreation, 1}};
  try {
    enumerate_optimal(sg, impossible);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::infeasible);
  }
  CostMatrices big(kMaxExactVersions + 1, true);
  for (VersionId v = 1; v <= kMaxExactVersions + 1; ++v) big.set(v, v, {1, 1});
  try {
    enumerate_optimal(build_solver_graph(big), Objective{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_input);
  }
}

TEST(Exact, ParseNames) {
  EXPECT_EQ(parse_objective("min_storage"), ObjectiveKind::min_storage);
  EXPECT_EQ(parse_constraint("max_recreation"), ConstraintKind::max_recreation);
  EXPECT_FALSE(parse_objective("fastest").has_value());
}

TEST(Exact, MpNeverBeatsOptimum) {
  std::mt19937_64 rng(73);
  for (int round = 0; round < 40; ++round) {
    dt::InstanceShape shape;
    shape.n = 6;
    shape.directed = round % 2 == 0;
    const auto sg = build_solver_graph(dt::random_matrices(rng, shape));
    const auto sp = shortest_distances(sg);
    const Cost theta = *std::max_element(sp.begin(), sp.end()) + 50;
    const auto opt = enumerate_optimal(
        sg, Objective{ObjectiveKind::min_storage, Constraint{ConstraintKind::max_recreation, theta}});
    EXPECT_GE(evaluate(mp(sg, theta), sg).total_storage, opt.value);
  }
}

TEST(Ilp, StructureCounts) {
  std::mt19937_64 rng(74);
  for (int round = 0; round < 30; ++round) {
    dt::InstanceShape shape;
    shape.n = 4 + round % 6;
    shape.directed = round % 2 == 0;
    const auto sg = build_solver_graph(dt::random_matrices(rng, shape));
    const Cost theta = 150 + static_cast<Cost>(rng() % 200);
    std::size_t usable = 0, omitted = 0;
    bool feasible = true;
    for (VersionId v = 1; v <= shape.n; ++v) {
      std::size_t in = 0;
      for (auto e : sg.in_edges(v)) {
        if (sg.edge(e).cost.recreation <= theta) ++in;
      }
      feasible = feasible && in > 0;
    }
    for (const auto& e : sg.edges()) (e.cost.recreation <= theta ? usable : omitted)++;
    if (!feasible) {
      EXPECT_THROW(export_ilp(sg, theta), Error);
      continue;
    }
    const auto model = export_ilp(sg, theta);
    EXPECT_EQ(model.stats.binaries, usable);
    EXPECT_EQ(model.stats.link_rows, usable);
    EXPECT_EQ(model.stats.omitted_edges, omitted);
    EXPECT_EQ(model.stats.assignment_rows, shape.n);
    EXPECT_EQ(model.stats.bound_rows, shape.n);
    EXPECT_EQ(model.stats.big_c, 2 * theta);
    // Count the rows in the text as well.
    const std::string& t = model.text;
    const auto count = [&](const std::regex& re) {
      return static_cast<std::size_t>(std::distance(std::sregex_iterator(t.begin(), t.end(), re),
                                                    std::sregex_iterator()));
    };
    EXPECT_EQ(count(std::regex(R"(\n a_\d+: )")), shape.n);
    EXPECT_EQ(count(std::regex(R"(\n l_\d+_\d+: )")), usable);
    EXPECT_NE(t.find("Minimize"), std::string::npos);
    EXPECT_NE(t.find("Binary"), std::string::npos);
    EXPECT_EQ(t.substr(t.size() - 4), "End\n");
  }
}

TEST(Ilp, RejectsNonPositiveTheta) {
  const auto sg = build_solver_graph(io::load_matrices(dt::fixture("mp_example.matrix")));
  EXPECT_THROW(export_ilp(sg, 0), Error);
}
