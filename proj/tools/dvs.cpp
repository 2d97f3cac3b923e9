// dvs: command-line front end for the storage planner, generator and store.
//
// Reports go to stdout as tab-separated rows under a '#' header line; sweep
// results are CSV files. Failures print `error<TAB>kind<TAB>message` on
// stderr and exit with 1 (io), 2 (infeasible), 3 (invalid input) or
// 4 (corruption).

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dvs/core/errors.hpp"
#include "dvs/core/evaluate.hpp"
#include "dvs/core/io.hpp"
#include "dvs/core/solver_graph.hpp"
#include "dvs/core/triangle.hpp"
#include "dvs/core/validate.hpp"
#include "dvs/deltas/populate.hpp"
#include "dvs/exact/enumerate.hpp"
#include "dvs/exact/ilp.hpp"
#include "dvs/genlab/generator.hpp"
#include "dvs/genlab/workload.hpp"
#include "dvs/heuristics/solve.hpp"
#include "dvs/store/repository.hpp"

namespace {

using namespace dvs;

std::uint64_t default_seed() {
  const char* env = std::getenv("DVS_SEED");
  if (env == nullptr || *env == '\0') return 1;
  std::uint64_t seed = 0;
  const std::string_view s(env);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), seed);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    fail(ErrorKind::invalid_input, "DVS_SEED must be a non-negative integer");
  }
  return seed;
}

Strategy strategy_of(const std::string& name) {
  auto s = parse_strategy(name);
  if (!s) fail(ErrorKind::invalid_input, "unknown strategy '" + name + "'");
  return *s;
}

DeltaMode mode_of(const std::string& name) {
  if (name == "directed") return DeltaMode::directed;
  if (name == "undirected") return DeltaMode::undirected;
  fail(ErrorKind::invalid_input, "mode must be directed or undirected, got '" + name + "'");
}

void print_report(std::ostream& out, const CostReport& r, std::optional<bool> guaranteed = {}) {
  out << "# metric\tvalue\n"
      << "storage\t" << r.total_storage << '\n'
      << "sum_recreation\t" << r.sum_recreation << '\n'
      << "max_recreation\t" << r.max_recreation << '\n';
  if (r.weighted_sum) {
    std::ostringstream w;
    w.precision(17);
    w << *r.weighted_sum;
    out << "weighted_sum\t" << w.str() << '\n';
  }
  if (guaranteed) out << "guaranteed\t" << (*guaranteed ? "yes" : "no") << '\n';
}

// Solver knobs shared by solve, sweep and repo plan.
struct SolverFlags {
  std::string strategy;
  std::optional<Cost> budget;
  std::optional<double> budget_factor;
  std::optional<double> theta;
  double alpha = 2.0;
  std::size_t window = 10;
  std::size_t depth = 50;
  std::string ordering = "size";
  std::string workload_path;

  void add(CLI::App* app, bool with_strategy = true) {
    if (with_strategy) {
      app->add_option("--strategy", strategy,
                      "min_storage|mca|mst|spt|lmg|mp|last|gith")->required();
    }
    app->add_option("--budget", budget, "storage budget in bytes");
    app->add_option("--budget-factor", budget_factor, "budget as a multiple of the min-storage cost");
    app->add_option("--theta", theta, "recreation bound (max for mp, sum for lmg)");
    app->add_option("--alpha", alpha, "LAST stretch factor")->capture_default_str();
    app->add_option("--window", window, "GitH window")->capture_default_str();
    app->add_option("--depth", depth, "GitH maximum chain depth")->capture_default_str();
    app->add_option("--ordering", ordering, "GitH ordering: size|git")->capture_default_str();
    app->add_option("--workload", workload_path, "workload file (version, weight)");
  }

  SolveParams params(std::optional<WorkloadProfile>& workload) const {
    SolveParams p;
    p.budget = budget;
    p.budget_factor = budget_factor;
    p.theta = theta;
    p.alpha = alpha;
    p.gith.window = window;
    p.gith.max_depth = depth;
    if (ordering == "size") p.gith.ordering = GitHOrdering::size_desc;
    else if (ordering == "git") p.gith.ordering = GitHOrdering::type_namehash_size;
    else fail(ErrorKind::invalid_input, "ordering must be size or git");
    if (!workload_path.empty()) {
      workload = io::load_workload(workload_path);
      p.workload = &*workload;
    }
    return p;
  }
};

void add_gen(CLI::App& app) {
  auto* cmd = app.add_subcommand("gen", "generate a synthetic corpus");
  static std::string params_path, out_dir;
  static std::optional<std::uint64_t> seed;
  cmd->add_option("--params", params_path, "key = value parameter file")->required();
  cmd->add_option("--out", out_dir, "corpus directory")->required();
  cmd->add_option("--seed", seed, "overrides the seed in the parameter file");
  cmd->callback([] {
    GenParams defaults;
    defaults.seed = default_seed();
    GenParams p = load_gen_params(params_path, defaults);
    if (seed) p.seed = *seed;
    const Skeleton s = gen_version_graph(p);
    const auto contents = gen_datasets(s, p.dataset, p.seed);
    write_corpus(out_dir, p, s, contents);
    std::uint64_t bytes = 0;
    for (const auto& c : contents) bytes += c.size();
    std::cout << "# versions\tderivations\tbytes\n"
              << s.graph.size() << '\t' << s.graph.derivations().size() << '\t' << bytes << '\n';
  });
}

void add_workload(CLI::App& app) {
  auto* cmd = app.add_subcommand("workload", "generate a Zipf access workload");
  static std::size_t versions = 0;
  static double exponent = 2.0;
  static std::optional<std::uint64_t> seed;
  static std::string out;
  cmd->add_option("--versions", versions, "number of versions")->required();
  cmd->add_option("--exponent", exponent, "Zipf exponent")->capture_default_str();
  cmd->add_option("--seed", seed, "defaults to DVS_SEED, then 1");
  cmd->add_option("--out", out, "workload file")->required();
  cmd->callback([] {
    io::save_workload(out, gen_workload(versions, exponent, seed ? *seed : default_seed()));
  });
}

void add_matrix(CLI::App& app) {
  auto* cmd = app.add_subcommand("matrix", "compute cost matrices for a corpus");
  static std::string corpus, policy = "k_hop:10", mode = "directed", out;
  static unsigned threads = 1;
  cmd->add_option("--corpus", corpus, "corpus directory")->required();
  cmd->add_option("--policy", policy, "k_hop:K or threshold:BYTES")->capture_default_str();
  cmd->add_option("--mode", mode, "directed|undirected")->capture_default_str();
  cmd->add_option("--threads", threads, "worker threads")->capture_default_str();
  cmd->add_option("--out", out, "matrix file")->required();
  cmd->callback([] {
    const Corpus c = read_corpus(corpus);
    PopulateOptions options;
    options.policy = PairPolicy::parse(policy);
    options.mode = mode_of(mode);
    options.threads = threads;
    const auto m = populate_matrices(c.contents, c.graph, options);
    io::save_matrices(out, m);
    std::cout << "# versions\tentries\n" << m.size() << '\t' << m.entries().size() << '\n';
  });
}

void add_solve(CLI::App& app) {
  auto* cmd = app.add_subcommand("solve", "run one strategy on a matrix file");
  static SolverFlags flags;
  static std::string matrix, out;
  cmd->add_option("--matrix", matrix, "matrix file")->required();
  cmd->add_option("--out", out, "plan file");
  flags.add(cmd);
  cmd->callback([] {
    const SolverGraph sg = build_solver_graph(io::load_matrices(matrix));
    std::optional<WorkloadProfile> workload;
    const Strategy strategy = strategy_of(flags.strategy);
    const Solution s = solve(sg, strategy, flags.params(workload));
    if (!out.empty()) io::save_plan(out, s.plan);
    print_report(std::cout, s.report,
                 strategy == Strategy::last ? std::optional<bool>(s.guaranteed) : std::nullopt);
  });
}

void add_sweep(CLI::App& app) {
  auto* cmd = app.add_subcommand("sweep", "run a strategy over a parameter range");
  static SolverFlags flags;
  static std::string matrix, range, out;
  static bool relative = false;
  cmd->add_option("--matrix", matrix, "matrix file")->required();
  cmd->add_option("--param-range", range, "LO:HI:STEPS")->required();
  cmd->add_flag("--relative", relative,
                "budgets as multiples of the min-storage cost, thetas of the largest shortest path");
  cmd->add_option("--out", out, "CSV file")->required();
  flags.add(cmd);
  cmd->callback([] {
    double lo = 0, hi = 0;
    std::size_t steps = 0;
    {
      const auto a = range.find(':');
      const auto b = a == std::string::npos ? a : range.find(':', a + 1);
      bool ok = b != std::string::npos;
      if (ok) {
        const std::string los = range.substr(0, a), his = range.substr(a + 1, b - a - 1),
                          sts = range.substr(b + 1);
        auto r1 = std::from_chars(los.data(), los.data() + los.size(), lo);
        auto r2 = std::from_chars(his.data(), his.data() + his.size(), hi);
        auto r3 = std::from_chars(sts.data(), sts.data() + sts.size(), steps);
        ok = r1.ec == std::errc() && r1.ptr == los.data() + los.size() && r2.ec == std::errc() &&
             r2.ptr == his.data() + his.size() && r3.ec == std::errc() &&
             r3.ptr == sts.data() + sts.size() && steps >= 1;
      }
      if (!ok) fail(ErrorKind::invalid_input, "--param-range must be LO:HI:STEPS, got '" + range + "'");
    }
    const SolverGraph sg = build_solver_graph(io::load_matrices(matrix));
    std::optional<WorkloadProfile> workload;
    const auto rows = sweep(sg, strategy_of(flags.strategy), lo, hi, steps, relative,
                            flags.params(workload));
    std::ostringstream csv;
    csv.precision(17);
    csv << "param,storage,sum_recreation,max_recreation";
    if (workload) csv << ",weighted_sum";
    csv << '\n';
    for (const auto& r : rows) {
      csv << r.param << ',' << r.storage << ',' << r.sum_recreation << ',' << r.max_recreation;
      if (workload) csv << ',' << r.weighted_sum.value_or(0.0);
      csv << '\n';
    }
    io::write_file(out, csv.str());
    std::cout << "# runs\n" << rows.size() << '\n';
  });
}

void add_exact(CLI::App& app) {
  auto* cmd = app.add_subcommand("exact", "exhaustive optimum for small instances");
  static std::string matrix, objective, constraint, out;
  static std::optional<Cost> bound;
  cmd->add_option("--matrix", matrix, "matrix file")->required();
  cmd->add_option("--objective", objective,
                  "min_storage|min_sum_recreation|min_max_recreation")->required();
  cmd->add_option("--bound", bound, "bound for the constraint");
  cmd->add_option("--constraint", constraint,
                  "storage_budget|sum_recreation|max_recreation; defaults to max_recreation "
                  "for min_storage and storage_budget otherwise");
  cmd->add_option("--out", out, "plan file");
  cmd->callback([] {
    Objective o;
    const auto kind = parse_objective(objective);
    if (!kind) fail(ErrorKind::invalid_input, "unknown objective '" + objective + "'");
    o.kind = *kind;
    if (bound) {
      ConstraintKind ck = o.kind == ObjectiveKind::min_storage ? ConstraintKind::max_recreation
                                                                : ConstraintKind::storage_budget;
      if (!constraint.empty()) {
        const auto parsed = parse_constraint(constraint);
        if (!parsed) fail(ErrorKind::invalid_input, "unknown constraint '" + constraint + "'");
        ck = *parsed;
      }
      o.constraint = Constraint{ck, *bound};
    } else if (!constraint.empty()) {
      fail(ErrorKind::invalid_input, "--constraint needs --bound");
    }
    const SolverGraph sg = build_solver_graph(io::load_matrices(matrix));
    const ExactSolution s = enumerate_optimal(sg, o);
    if (!out.empty()) io::save_plan(out, s.plan);
    print_report(std::cout, s.report);
  });
}

void add_export_ilp(CLI::App& app) {
  auto* cmd = app.add_subcommand("export-ilp", "write the bounded-recreation ILP in LP format");
  static std::string matrix, out;
  static Cost theta = 0;
  cmd->add_option("--matrix", matrix, "matrix file")->required();
  cmd->add_option("--theta", theta, "bound on every recreation cost")->required();
  cmd->add_option("--out", out, "LP file")->required();
  cmd->callback([] {
    const IlpModel m = export_ilp(build_solver_graph(io::load_matrices(matrix)), theta);
    io::write_file(out, m.text);
    std::cout << "# binaries\tassignment_rows\tlink_rows\tbound_rows\tomitted_edges\tbig_c\n"
              << m.stats.binaries << '\t' << m.stats.assignment_rows << '\t'
              << m.stats.link_rows << '\t' << m.stats.bound_rows << '\t'
              << m.stats.omitted_edges << '\t' << m.stats.big_c << '\n';
  });
}

void add_validate(CLI::App& app) {
  auto* cmd = app.add_subcommand("validate", "check a matrix file and optionally a plan");
  static std::string matrix, plan;
  static bool triangle = false;
  cmd->add_option("--matrix", matrix, "matrix file")->required();
  cmd->add_option("--plan", plan, "plan file");
  cmd->add_flag("--triangle", triangle, "check delta triangle inequalities");
  cmd->callback([] {
    const auto m = io::load_matrices(matrix);
    const SolverGraph sg = build_solver_graph(m);
    std::size_t problems = 0;
    std::cout << "# check\tviolations\n";
    if (!plan.empty()) {
      const auto v = validate_plan(io::load_plan(plan), sg);
      std::cout << "plan\t" << v.size() << '\n';
      for (const auto& x : v) std::cerr << "plan\t" << x.message << '\n';
      problems += v.size();
    }
    if (triangle) {
      const auto v = check_triangle(m);
      std::cout << "triangle\t" << v.size() << '\n';
      for (const auto& x : v) std::cerr << "triangle\t" << x.detail << '\n';
      problems += v.size();
    }
    if (problems > 0) {
      fail(ErrorKind::invalid_input, std::to_string(problems) + " violation(s)");
    }
  });
}

void add_repo(CLI::App& app) {
  auto* repo = app.add_subcommand("repo", "local version store");
  repo->require_subcommand(1);
  repo->fallthrough();
  static std::string dir;
  repo->add_option("--repo", dir, "repository directory")->required();

  {
    auto* cmd = repo->add_subcommand("init", "create an empty repository");
    static std::string mode = "directed";
    cmd->add_option("--mode", mode, "directed|undirected")->capture_default_str();
    cmd->callback([] { Repository::init(dir, mode_of(mode)); });
  }
  {
    auto* cmd = repo->add_subcommand("commit", "commit a file, or a whole corpus");
    static std::string file, corpus;
    static std::vector<VersionId> parents;
    cmd->add_option("--file", file, "content to commit");
    cmd->add_option("--parent", parents, "derivation parent (repeatable; first one is the delta base)");
    cmd->add_option("--corpus", corpus, "commit every version of a generated corpus in order");
    cmd->callback([] {
      Repository r = Repository::open(dir);
      std::cout << "# version\n";
      if (!corpus.empty()) {
        if (!file.empty() || !parents.empty()) {
          fail(ErrorKind::invalid_input, "--corpus excludes --file and --parent");
        }
        if (r.version_count() != 0) fail(ErrorKind::invalid_input, "--corpus needs an empty repository");
        const Corpus c = read_corpus(corpus);
        for (VersionId v = 1; v <= c.graph.size(); ++v) {
          const auto p = c.graph.parents(v);
          std::cout << r.commit(c.contents[v - 1], {p.begin(), p.end()}) << '\n';
        }
        return;
      }
      if (file.empty()) fail(ErrorKind::invalid_input, "commit needs --file or --corpus");
      std::cout << r.commit(io::read_file(file), parents) << '\n';
    });
  }
  {
    auto* cmd = repo->add_subcommand("plan", "re-layout storage with a strategy");
    static SolverFlags flags;
    static std::string policy = "k_hop:10";
    static unsigned threads = 1;
    flags.add(cmd);
    cmd->add_option("--policy", policy, "pairs to diff before solving")->capture_default_str();
    cmd->add_option("--threads", threads, "worker threads for diffing")->capture_default_str();
    cmd->callback([] {
      Repository r = Repository::open(dir);
      std::optional<WorkloadProfile> workload;
      PlanOptions options;
      options.policy = PairPolicy::parse(policy);
      options.threads = threads;
      const auto result = r.plan(strategy_of(flags.strategy), flags.params(workload), options);
      std::cout << "# stage\tstorage\tsum_recreation\tmax_recreation\n"
                << "before\t" << result.before.total_storage << '\t'
                << result.before.sum_recreation << '\t' << result.before.max_recreation << '\n'
                << "after\t" << result.after.total_storage << '\t' << result.after.sum_recreation
                << '\t' << result.after.max_recreation << '\n';
    });
  }
  {
    auto* cmd = repo->add_subcommand("checkout", "rebuild a version");
    static VersionId version = 0;
    static std::string out;
    cmd->add_option("--version", version, "version id")->required();
    cmd->add_option("--out", out, "output file (stdout when omitted)");
    cmd->callback([] {
      const std::string content = Repository::open(dir).checkout(version);
      if (out.empty()) std::cout << content;
      else io::write_file(out, content);
    });
  }
  {
    auto* cmd = repo->add_subcommand("stats", "measured storage and recreation costs");
    cmd->callback([] { print_report(std::cout, Repository::open(dir).stats()); });
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dataset version storage planner"};
  app.require_subcommand(1);
  add_gen(app);
  add_workload(app);
  add_matrix(app);
  add_solve(app);
  add_sweep(app);
  add_exact(app);
  add_export_ilp(app);
  add_validate(app);
  add_repo(app);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error\tinvalid_input\t" << e.what() << '\n';
    return dvs::exit_code(dvs::ErrorKind::invalid_input);
  } catch (const dvs::Error& e) {
    std::cerr << "error\t" << dvs::to_string(e.kind()) << '\t' << e.what() << '\n';
    return dvs::exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error\tio\t" << e.what() << '\n';
    return dvs::exit_code(dvs::ErrorKind::io);
  }
  return 0;
}
