#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "dvs/core/errors.hpp"
#include "dvs/deltas/delta.hpp"
#include "dvs/genlab/generator.hpp"
#include "dvs/genlab/rng.hpp"
#include "dvs/genlab/workload.hpp"
#include "support.hpp"

using namespace dvs;
namespace dt = dvs::testing;

namespace {

GenParams small_params(std::uint64_t commits, std::uint64_t seed) {
  GenParams p;
  p.num_commits = commits;
  p.seed = seed;
  p.dataset.rows = 200;
  p.dataset.min_rows = 100;
  p.dataset.max_rows = 300;
  p.dataset.rows_per_edit = {5, 30};
  p.dataset.column_cells = {5, 30};
  return p;
}

std::size_t count_lines(const std::string& s) { return std::count(s.begin(), s.end(), '\n'); }

std::size_t count_columns(const std::string& s) {
  return std::count(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(s.find('\n')), ',') + 1;
}

}  // namespace

TEST(Rng, UniformStaysInRangeAndIsSeeded) {
  Rng a(5), b(5);
  for (int i = 0; i < 1000; ++i) {
    const auto x = a.uniform(3, 9);
    EXPECT_GE(x, 3u);
    EXPECT_LE(x, 9u);
    EXPECT_EQ(x, b.uniform(3, 9));
    const double u = a.unit();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    b.unit();
  }
  // The engine is std::mt19937_64, whose 10000th output the standard pins.
  Rng c(5489);
  std::uint64_t x = 0;
  for (int i = 0; i < 10000; ++i) x = c.next();
  EXPECT_EQ(x, 9981545732273789042ull);
}

TEST(Generator, ZeroProbabilityGivesChain) {
  auto p = small_params(40, 3);
  p.branch_probability = 0.0;
  const auto s = gen_version_graph(p);
  ASSERT_EQ(s.graph.size(), 40u);
  ASSERT_EQ(s.graph.derivations().size(), 39u);
  for (VersionId v = 2; v <= 40; ++v) {
    ASSERT_EQ(s.graph.parents(v).size(), 1u);
    EXPECT_EQ(s.graph.parents(v)[0], v - 1);
    EXPECT_EQ(s.content_parent[v - 1], v - 1);
    EXPECT_EQ(s.branch[v - 1], 0u);
  }
}

TEST(Generator, AlternatingBranchAndMerge) {
  // Every trunk commit sprouts one single-commit branch that the next trunk
  // commit merges: branch commits are even, merges odd.
  auto p = small_params(21, 4);
  p.branch_interval = 1;
  p.branch_probability = 1.0;
  p.branch_limit = 1;
  p.branch_length = 1;
  const auto s = gen_version_graph(p);
  std::set<Derivation> want;
  for (VersionId v = 2; v <= 21; ++v) {
    if (v % 2 == 0) {
      want.insert({v - 1, v});
    } else {
      want.insert({v - 2, v});
      want.insert({v - 1, v});
    }
  }
  const auto got = s.graph.derivations();
  EXPECT_EQ(std::set<Derivation>(got.begin(), got.end()), want);
  for (VersionId v = 3; v <= 21; v += 2) EXPECT_EQ(s.content_parent[v - 1], v - 2);
  EXPECT_EQ(s.branch[20 - 1], 10u);
}

TEST(Generator, StructuralInvariants) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto p = small_params(60 + seed, seed);
    p.branch_interval = 1 + seed % 4;
    p.branch_probability = 0.3 + 0.035 * static_cast<double>(seed);
    p.branch_limit = 1 + seed % 3;
    p.branch_length = 1 + seed % 5;
    const auto s = gen_version_graph(p);
    ASSERT_EQ(s.graph.size(), p.num_commits);
    EXPECT_EQ(s.content_parent[0], kRoot);
    EXPECT_TRUE(s.graph.parents(1).empty());
    std::size_t merges = 0;
    std::set<std::uint32_t> branch_ids;
    std::vector<std::uint32_t> merged;  // branch of each merged tip, in merge order
    for (VersionId v = 2; v <= p.num_commits; ++v) {
      const auto ps = s.graph.parents(v);
      ASSERT_GE(ps.size(), 1u);
      ASSERT_LE(ps.size(), 2u);
      if (ps.size() == 2) ++merges;
      // Content comes from the lower-numbered parent.
      EXPECT_EQ(s.content_parent[v - 1], *std::min_element(ps.begin(), ps.end()));
      for (auto q : ps) EXPECT_LT(q, v);
      if (s.branch[v - 1] != 0) branch_ids.insert(s.branch[v - 1]);
      // Only trunk commits merge.
      if (ps.size() == 2) {
        EXPECT_EQ(s.branch[v - 1], 0u);
        const auto tip = s.branch[ps[0] - 1] != 0 ? ps[0] : ps[1];
        merged.push_back(s.branch[tip - 1]);
      }
      EXPECT_GE(s.edits[v - 1].size(), p.dataset.commands.lo);
      EXPECT_LE(s.edits[v - 1].size(), p.dataset.commands.hi);
    }
    // Branches are merged once each, first opened first merged.
    EXPECT_LE(merges, branch_ids.size());
    for (std::size_t k = 0; k < merged.size(); ++k) EXPECT_EQ(merged[k], k + 1);
  }
}

TEST(Generator, Deterministic) {
  const auto p = small_params(30, 9);
  const auto a = gen_version_graph(p);
  const auto b = gen_version_graph(p);
  EXPECT_EQ(std::vector<Derivation>(a.graph.derivations().begin(), a.graph.derivations().end()),
            std::vector<Derivation>(b.graph.derivations().begin(), b.graph.derivations().end()));
  EXPECT_EQ(gen_datasets(a, p.dataset, p.seed), gen_datasets(b, p.dataset, p.seed));
  auto q = p;
  q.seed = 10;
  EXPECT_NE(gen_datasets(gen_version_graph(q), q.dataset, q.seed), gen_datasets(a, p.dataset, p.seed));
}

TEST(Generator, DatasetShapeTracksEdits) {
  const auto p = small_params(50, 12);
  const auto s = gen_version_graph(p);
  const auto contents = gen_datasets(s, p.dataset, p.seed);
  ASSERT_EQ(contents.size(), 50u);
  EXPECT_EQ(count_lines(contents[0]), p.dataset.rows + 1);
  EXPECT_EQ(count_columns(contents[0]), p.dataset.columns);
  for (const auto& c : contents) {
    const auto rows = count_lines(c) - 1;
    EXPECT_GE(rows, p.dataset.min_rows);
    EXPECT_LE(rows, p.dataset.max_rows);
    EXPECT_EQ(c.substr(0, 3), "id,");
    // Row ids are unique within a file.
    std::set<std::string> ids;
    std::size_t start = c.find('\n') + 1;
    while (start < c.size()) {
      const auto end = c.find('\n', start);
      EXPECT_TRUE(ids.insert(c.substr(start, c.find(',', start) - start)).second);
      start = end + 1;
    }
  }
}

TEST(Generator, EmptyEditKeepsContent) {
  Skeleton s;
  s.graph = VersionGraph(2, {{1, 2}});
  s.content_parent = {0, 1};
  s.edits = {{}, {}};
  s.branch = {0, 0};
  DatasetParams d;
  d.rows = 50;
  const auto c = gen_datasets(s, d, 1);
  EXPECT_EQ(c[0], c[1]);
}

TEST(Generator, DeleteRowsDeltaIsSmall) {
  Skeleton s;
  s.graph = VersionGraph(2, {{1, 2}});
  s.content_parent = {0, 1};
  s.edits = {{}, {EditCommand{EditCommand::Kind::delete_rows, 100, 20, 0}}};
  s.branch = {0, 0};
  DatasetParams d;
  d.rows = 1000;
  const auto c = gen_datasets(s, d, 2);
  EXPECT_EQ(count_lines(c[1]), count_lines(c[0]) - 20);
  const auto delta = compute_delta(c[0], c[1], DeltaMode::directed);
  EXPECT_LT(delta.storage_cost() * 50, full_cost(c[1].size()));
}

TEST(Generator, ColumnCommandsChangeWidth) {
  Skeleton s;
  s.graph = VersionGraph(3, {{1, 2}, {2, 3}});
  s.content_parent = {0, 1, 2};
  s.edits = {{}, {EditCommand{EditCommand::Kind::add_column, 3, 0, 0}},
             {EditCommand{EditCommand::Kind::remove_column, 1, 0, 0}}};
  s.branch = {0, 0, 0};
  DatasetParams d;
  d.rows = 20;
  d.columns = 4;
  const auto c = gen_datasets(s, d, 3);
  EXPECT_EQ(count_columns(c[0]), 4u);
  EXPECT_EQ(count_columns(c[1]), 5u);
  EXPECT_EQ(count_columns(c[2]), 4u);
  EXPECT_EQ(count_lines(c[2]), 21u);
}

TEST(Generator, ParamsRoundTripAndRejects) {
  auto p = small_params(77, 5);
  p.branch_probability = 0.25;
  p.dataset.mix.remove_column = 0.5;
  const auto q = parse_gen_params(format_gen_params(p));
  EXPECT_EQ(format_gen_params(q), format_gen_params(p));
  EXPECT_EQ(q.num_commits, 77u);
  EXPECT_DOUBLE_EQ(q.branch_probability, 0.25);
  EXPECT_EQ(parse_gen_params("# comment\nseed = 4\n").seed, 4u);
  for (auto bad : {"bogus = 1\n", "seed = x\n", "seed = 1\nseed = 2\n", "seed\n",
                   "branch_probability = 2\n", "rows = 5\nmin_rows = 10\n"}) {
    try {
      gen_version_graph(parse_gen_params(bad));
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::invalid_input) << bad;
    }
  }
}

TEST(Generator, CorpusRoundTrip) {
  dt::TempDir dir("corpus");
  const auto p = small_params(25, 6);
  const auto s = gen_version_graph(p);
  const auto contents = gen_datasets(s, p.dataset, p.seed);
  write_corpus(dir.path(), p, s, contents);
  const auto corpus = read_corpus(dir.path());
  EXPECT_EQ(corpus.contents, contents);
  EXPECT_EQ(std::vector<Derivation>(corpus.graph.derivations().begin(), corpus.graph.derivations().end()),
            std::vector<Derivation>(s.graph.derivations().begin(), s.graph.derivations().end()));
  std::filesystem::remove(dir.path() / "versions" / "3.csv");
  EXPECT_THROW(read_corpus(dir.path()), Error);
}

TEST(Workload, ZipfWeights) {
  const auto w = gen_workload(50, 1.2, 8);
  std::vector<double> weights(w.weights().begin() + 1, w.weights().end());
  std::sort(weights.begin(), weights.end(), std::greater<>());
  for (std::size_t r = 1; r <= 50; ++r) {
    EXPECT_NEAR(weights[r - 1], 1.0 / std::pow(static_cast<double>(r), 1.2), 1e-12);
  }
  EXPECT_EQ(gen_workload(50, 1.2, 8).weights(), w.weights());
  EXPECT_NE(gen_workload(50, 1.2, 9).weights(), w.weights());
  EXPECT_THROW(gen_workload(0, 1.0, 1), Error);
  EXPECT_THROW(gen_workload(5, 0.0, 1), Error);
}
