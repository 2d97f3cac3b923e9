#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "dvs/core/errors.hpp"
#include "dvs/core/evaluate.hpp"
#include "dvs/core/io.hpp"
#include "dvs/core/solver_graph.hpp"
#include "dvs/core/triangle.hpp"
#include "dvs/core/validate.hpp"
#include "dvs/core/version_graph.hpp"
#include "support.hpp"

using namespace dvs;
using dvs::testing::fixture;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no dvs::Error thrown";
  return ErrorKind::io;
}

SolverGraph five_versions() {
  return build_solver_graph(io::load_matrices(fixture("five_versions.matrix")));
}

}  // namespace

TEST(VersionGraph, AcceptsBranchesAndMerges) {
  VersionGraph g(4, {{1, 2}, {1, 3}, {2, 4}, {3, 4}});
  EXPECT_EQ(g.parents(4).size(), 2u);
  EXPECT_EQ(g.children(1).size(), 2u);
  EXPECT_FALSE(g.has_full_sizes());
}

TEST(VersionGraph, RejectsCyclesSelfLoopsAndRange) {
  EXPECT_EQ(kind_of([] { VersionGraph(3, {{1, 2}, {2, 3}, {3, 1}}); }), ErrorKind::invalid_input);
  EXPECT_EQ(kind_of([] { VersionGraph(2, {{2, 2}}); }), ErrorKind::invalid_input);
  EXPECT_EQ(kind_of([] { VersionGraph(2, {{1, 3}}); }), ErrorKind::invalid_input);
  EXPECT_EQ(kind_of([] { VersionGraph(2, {{0, 1}}); }), ErrorKind::invalid_input);
}

TEST(VersionGraph, HopDistancesIgnoreDirection) {
  VersionGraph g(5, {{1, 2}, {2, 3}, {1, 4}, {4, 5}});
  const auto hops = g.hop_distances(3, 10);
  EXPECT_EQ(hops[2], 1u);
  EXPECT_EQ(hops[1], 2u);
  EXPECT_EQ(hops[5], 4u);
  const auto capped = g.hop_distances(3, 2);
  EXPECT_EQ(capped[4], SIZE_MAX);
}

TEST(CostMatrices, UndirectedMirrorsAndRejectsConflicts) {
  CostMatrices m(3, false);
  m.set(1, 2, {5, 7});
  ASSERT_TRUE(m.get(2, 1).has_value());
  EXPECT_EQ(*m.get(2, 1), (EdgeCost{5, 7}));
  m.set(2, 1, {5, 7});
  EXPECT_EQ(kind_of([&] { m.set(2, 1, {6, 7}); }), ErrorKind::invalid_input);
  EXPECT_EQ(kind_of([&] { m.set(0, 1, {1, 1}); }), ErrorKind::invalid_input);
  EXPECT_EQ(kind_of([&] { m.set(1, 3, {-1, 1}); }), ErrorKind::invalid_input);
  EXPECT_EQ(m.missing_diagonal_count(), 3u);
}

TEST(SolverGraph, RootEdgesCarryMaterialization) {
  const auto sg = five_versions();
  EXPECT_EQ(sg.version_count(), 5u);
  ASSERT_NE(sg.find(0, 1), nullptr);
  EXPECT_EQ(sg.find(0, 1)->cost, (EdgeCost{10000, 10000}));
  ASSERT_NE(sg.find(3, 2), nullptr);
  EXPECT_EQ(sg.find(3, 2)->cost, (EdgeCost{1100, 3200}));
  EXPECT_EQ(sg.find(2, 3), nullptr);
  for (VersionId v = 1; v <= 5; ++v) EXPECT_FALSE(sg.in_edges(v).empty());
}

TEST(SolverGraph, MissingDiagonalIsInvalid) {
  CostMatrices m(2, true);
  m.set(1, 1, {1, 1});
  m.set(1, 2, {1, 1});
  EXPECT_EQ(kind_of([&] { build_solver_graph(m); }), ErrorKind::invalid_input);
}

TEST(Evaluate, AllMaterializedFiveVersions) {
  const auto sg = five_versions();
  const auto r = evaluate(StoragePlan::all_materialized(5), sg);
  EXPECT_EQ(r.total_storage, 49720);
  EXPECT_EQ(r.sum_recreation, 49720);
  EXPECT_EQ(r.max_recreation, 10120);
  EXPECT_FALSE(r.weighted_sum.has_value());
}

TEST(Evaluate, ChainPlanFiveVersions) {
  const auto sg = five_versions();
  const auto plan = io::load_plan(fixture("five_versions_chain.plan"));
  const auto r = evaluate(plan, sg);
  EXPECT_EQ(r.total_storage, 11450);
  EXPECT_EQ(r.recreation[5], 13550);
  EXPECT_EQ(r.recreation[4], 10000 + 200 + 400);
}

TEST(Evaluate, WeightedSumUsesRawWeights) {
  const auto sg = five_versions();
  WorkloadProfile w({0, 2, 0, 0, 0, 1});
  const auto r = evaluate(StoragePlan::all_materialized(5), sg, &w);
  ASSERT_TRUE(r.weighted_sum.has_value());
  EXPECT_DOUBLE_EQ(*r.weighted_sum, 2 * 10000.0 + 10120.0);
}

TEST(Evaluate, RejectsInvalidPlans) {
  const auto sg = five_versions();
  EXPECT_EQ(kind_of([&] { evaluate(StoragePlan({0, 2, 1, 0, 0, 0}), sg); }), ErrorKind::invalid_input);
}

TEST(Validate, ReportsEachViolation) {
  const auto sg = five_versions();
  // 4 -> 5 is not revealed; 1 and 2 point at each other.
  const auto v = validate_plan(StoragePlan({0, 2, 1, 0, 0, 4}), sg);
  auto has = [&](ViolationKind k, VersionId version) {
    return std::any_of(v.begin(), v.end(),
                       [&](const Violation& x) { return x.kind == k && x.version == version; });
  };
  EXPECT_TRUE(has(ViolationKind::edge_not_revealed, 5));
  EXPECT_TRUE(has(ViolationKind::edge_not_revealed, 1));
  EXPECT_TRUE(has(ViolationKind::cycle, 1) || has(ViolationKind::cycle, 2));
  EXPECT_TRUE(validate_plan(StoragePlan::all_materialized(5), sg).empty());
  EXPECT_FALSE(validate_plan(StoragePlan::all_materialized(4), sg).empty());
}

TEST(Validate, FuzzAgainstParentWalk) {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 300; ++round) {
    dvs::testing::InstanceShape shape;
    shape.n = 5;
    shape.directed = round % 2 == 0;
    const auto sg = build_solver_graph(dvs::testing::random_matrices(rng, shape));
    std::vector<VersionId> parents(6, 0);
    for (VersionId v = 1; v <= 5; ++v) parents[v] = static_cast<VersionId>(rng() % 6);
    const StoragePlan plan(parents);
    bool self = false;
    for (VersionId v = 1; v <= 5; ++v) self |= parents[v] == v;
    const bool expect_valid = !self && dvs::testing::plan_is_tree(plan, sg);
    EXPECT_EQ(validate_plan(plan, sg).empty(), expect_valid) << "round " << round;
  }
}

TEST(Evaluate, MatchesParentWalkOracle) {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 100; ++round) {
    dvs::testing::InstanceShape shape;
    shape.n = 6;
    shape.directed = round % 2 == 1;
    const auto sg = build_solver_graph(dvs::testing::random_matrices(rng, shape));
    dvs::testing::for_each_plan(sg, [&](const StoragePlan& plan) {
      if (rng() % 50 != 0) return;
      const auto r = evaluate(plan, sg);
      const auto rec = dvs::testing::walk_costs(plan, sg, &EdgeCost::recreation);
      EXPECT_EQ(r.total_storage, dvs::testing::storage_of(plan, sg));
      for (VersionId v = 1; v <= 6; ++v) EXPECT_EQ(r.recreation[v], rec[v]);
      EXPECT_EQ(r.sum_recreation, std::accumulate(rec.begin() + 1, rec.end(), Cost{0}));
    });
  }
}

TEST(Evaluate, InvariantUnderRelabeling) {
  std::mt19937_64 rng(99);
  for (int round = 0; round < 50; ++round) {
    dvs::testing::InstanceShape shape;
    shape.n = 7;
    shape.directed = round % 2 == 0;
    const auto m = dvs::testing::random_matrices(rng, shape);
    std::vector<VersionId> perm(8);
    std::iota(perm.begin(), perm.end(), VersionId{0});
    std::shuffle(perm.begin() + 1, perm.end(), rng);
    CostMatrices relabeled(7, shape.directed);
    for (const auto& [key, cost] : m.entries()) relabeled.set(perm[key.first], perm[key.second], cost);
    const auto sg = build_solver_graph(m);
    const auto sg2 = build_solver_graph(relabeled);
    const auto plan = dvs::testing::random_plan(rng, sg);
    std::vector<VersionId> moved(8, 0);
    for (VersionId v = 1; v <= 7; ++v) moved[perm[v]] = perm[plan.parent(v)];
    const auto a = evaluate(plan, sg);
    const auto b = evaluate(StoragePlan(moved), sg2);
    EXPECT_EQ(a.total_storage, b.total_storage);
    EXPECT_EQ(a.sum_recreation, b.sum_recreation);
    EXPECT_EQ(a.max_recreation, b.max_recreation);
    for (VersionId v = 1; v <= 7; ++v) EXPECT_EQ(a.recreation[v], b.recreation[perm[v]]);
  }
}

TEST(Workload, RejectsNegativeAndAllZero) {
  EXPECT_EQ(kind_of([] { WorkloadProfile({0, -1, 2}); }), ErrorKind::invalid_input);
  EXPECT_EQ(kind_of([] { WorkloadProfile({0, 0, 0}); }), ErrorKind::invalid_input);
  EXPECT_EQ(WorkloadProfile::uniform(3).version_count(), 3u);
}

TEST(Io, MatrixRoundTrip) {
  std::mt19937_64 rng(3);
  for (bool directed : {true, false}) {
    dvs::testing::InstanceShape shape;
    shape.directed = directed;
    const auto m = dvs::testing::random_matrices(rng, shape);
    std::stringstream buf;
    io::write_matrices(buf, m);
    const auto back = io::read_matrices(buf);
    EXPECT_EQ(back.directed(), directed);
    EXPECT_EQ(back.entries(), m.entries());
  }
}

TEST(Io, PlanAndWorkloadRoundTrip) {
  const StoragePlan plan({0, 0, 1, 1, 2});
  std::stringstream buf;
  io::write_plan(buf, plan);
  EXPECT_EQ(io::read_plan(buf), plan);

  const WorkloadProfile w({0, 0.5, 1.0 / 3.0, 4});
  std::stringstream wbuf;
  io::write_workload(wbuf, w);
  EXPECT_EQ(io::read_workload(wbuf).weights(), w.weights());
}

TEST(Io, MalformedInputIsInvalid) {
  std::stringstream bad_header("sideways\n1\t1\t1\t1\n");
  EXPECT_EQ(kind_of([&] { io::read_matrices(bad_header); }), ErrorKind::invalid_input);
  std::stringstream short_row("directed\n1\t1\t5\n");
  EXPECT_EQ(kind_of([&] { io::read_matrices(short_row); }), ErrorKind::invalid_input);
  std::stringstream gap("1\t0\n3\t0\n");
  EXPECT_EQ(kind_of([&] { io::read_plan(gap); }), ErrorKind::invalid_input);
  EXPECT_EQ(kind_of([] { io::load_matrices("/nonexistent/dvs/matrix"); }), ErrorKind::io);
}

TEST(Triangle, ReportsViolatingTriples) {
  CostMatrices ok(3, false);
  ok.set(1, 1, {10, 10});
  ok.set(2, 2, {10, 10});
  ok.set(3, 3, {10, 10});
  ok.set(1, 2, {2, 2});
  ok.set(2, 3, {2, 2});
  ok.set(1, 3, {3, 3});
  EXPECT_TRUE(check_triangle(ok).empty());

  // Mirrored entries cannot be overwritten, so build the violating copy anew.
  CostMatrices bad(3, false);
  for (const auto& [key, cost] : ok.entries()) {
    if (key.first <= key.second && key != CostMatrices::Key{1, 3}) bad.set(key.first, key.second, cost);
  }
  bad.set(1, 3, {9, 9});  // 9 > 2 + 2
  const auto v = check_triangle(bad);
  ASSERT_FALSE(v.empty());
  EXPECT_TRUE(std::any_of(v.begin(), v.end(), [](const TriangleViolation& x) {
    return x.kind == TriangleViolation::Kind::path;
  }));

  CostMatrices lopsided(2, false);
  lopsided.set(1, 1, {100, 100});
  lopsided.set(2, 2, {10, 10});
  lopsided.set(1, 2, {5, 5});  // |100 - 5| > 10
  const auto w = check_triangle(lopsided);
  ASSERT_FALSE(w.empty());
  EXPECT_EQ(w.front().kind, TriangleViolation::Kind::materialization);
}

TEST(Errors, ExitCodes) {
  EXPECT_EQ(exit_code(ErrorKind::io), 1);
  EXPECT_EQ(exit_code(ErrorKind::infeasible), 2);
  EXPECT_EQ(exit_code(ErrorKind::invalid_input), 3);
  EXPECT_EQ(exit_code(ErrorKind::corruption), 4);
  EXPECT_EQ(to_string(ErrorKind::corruption), "corruption");
}
