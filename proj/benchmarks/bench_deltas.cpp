// Delta engine timings on generated tables.

#include <benchmark/benchmark.h>

#include "dvs/deltas/delta.hpp"
#include "dvs/deltas/line_diff.hpp"
#include "dvs/deltas/populate.hpp"
#include "dvs/genlab/generator.hpp"

namespace {

using namespace dvs;

// Two consecutive versions of a generated table with `rows` rows.
std::pair<std::string, std::string> version_pair(std::uint64_t rows) {
  GenParams p;
  p.num_commits = 2;
  p.seed = 5;
  p.dataset.rows = rows;
  p.dataset.min_rows = rows / 2;
  p.dataset.max_rows = rows * 2;
  p.dataset.rows_per_edit = {rows / 20 + 1, rows / 5 + 1};
  p.dataset.column_cells = {rows / 20 + 1, rows / 5 + 1};
  const auto s = gen_version_graph(p);
  auto c = gen_datasets(s, p.dataset, p.seed);
  return {c[0], c[1]};
}

void BM_ComputeDelta(benchmark::State& state) {
  const auto [a, b] = version_pair(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(compute_delta(a, b, DeltaMode::directed));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * (a.size() + b.size())));
}
BENCHMARK(BM_ComputeDelta)->Arg(1000)->Arg(10000)->Unit(benchmark::kMicrosecond);

void BM_DeltaCost(benchmark::State& state) {
  const auto [a, b] = version_pair(static_cast<std::uint64_t>(state.range(0)));
  const LineIndex ia(a), ib(b);
  for (auto _ : state) benchmark::DoNotOptimize(delta_cost(ia, ib, DeltaMode::undirected));
}
BENCHMARK(BM_DeltaCost)->Arg(1000)->Arg(10000)->Unit(benchmark::kMicrosecond);

void BM_ApplyDelta(benchmark::State& state) {
  const auto [a, b] = version_pair(static_cast<std::uint64_t>(state.range(0)));
  const auto art = compute_delta(a, b, DeltaMode::directed);
  for (auto _ : state) benchmark::DoNotOptimize(apply_delta(a, art));
}
BENCHMARK(BM_ApplyDelta)->Arg(1000)->Arg(10000)->Unit(benchmark::kMicrosecond);

// Arguments: versions, hop limit.
void BM_Populate(benchmark::State& state) {
  GenParams p;
  p.num_commits = static_cast<std::uint64_t>(state.range(0));
  p.seed = 9;
  p.dataset.rows = 500;
  p.dataset.min_rows = 300;
  p.dataset.max_rows = 700;
  p.dataset.rows_per_edit = {20, 100};
  p.dataset.column_cells = {20, 100};
  const auto s = gen_version_graph(p);
  const auto contents = gen_datasets(s, p.dataset, p.seed);
  PopulateOptions opt;
  opt.policy = {PairPolicy::Kind::k_hop, static_cast<std::uint64_t>(state.range(1))};
  for (auto _ : state) benchmark::DoNotOptimize(populate_matrices(contents, s.graph, opt));
}
BENCHMARK(BM_Populate)->Args({100, 2})->Args({100, 6})->Unit(benchmark::kMillisecond);

}  // namespace
