#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <sys/wait.h>

#include "dvs/core/io.hpp"
#include "support.hpp"

namespace dt = dvs::testing;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

// Runs the dvs binary through the shell; stderr is discarded unless the
// arguments redirect it.
Run dvs_run(const std::string& args) {
  const std::string cmd = std::string(DVS_CLI_PATH) + " " + args;
  Run r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int raw = ::pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string metric(const std::string& report, const std::string& key) {
  const auto at = report.find("\n" + key + "\t");
  if (at == std::string::npos) return {};
  const auto start = at + key.size() + 2;
  return report.substr(start, report.find('\n', start) - start);
}

std::string q(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

}  // namespace

TEST(Cli, SolveSptOnFiveVersions) {
  const auto r = dvs_run("solve --matrix " + q(dt::fixture("five_versions.matrix")) + " --strategy spt");
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_EQ(r.out.substr(0, 15), "# metric\tvalue\n");
  EXPECT_EQ(metric(r.out, "sum_recreation"), "49720");
}

TEST(Cli, ExitCodes) {
  const auto five = q(dt::fixture("five_versions.matrix"));
  EXPECT_EQ(dvs_run("solve --matrix /nonexistent/x.matrix --strategy spt 2>/dev/null").status, 1);
  EXPECT_EQ(dvs_run("solve --matrix " + five + " --strategy lmg --budget 1 2>/dev/null").status, 2);
  EXPECT_EQ(dvs_run("solve --matrix " + five + " --strategy nope 2>/dev/null").status, 3);
  EXPECT_EQ(dvs_run("solve --matrix " + five + " 2>/dev/null").status, 3);
  EXPECT_EQ(dvs_run("bogus 2>/dev/null").status, 3);
  const auto err = dvs_run("solve --matrix " + five + " --strategy mp 2>&1");
  EXPECT_EQ(err.status, 3);
  EXPECT_EQ(err.out.substr(0, 20), "error\tinvalid_input\t");
}

TEST(Cli, PlanFileAndValidate) {
  dt::TempDir dir("cli");
  const auto five = q(dt::fixture("five_versions.matrix"));
  const auto plan = dir.path() / "p.plan";
  ASSERT_EQ(dvs_run("solve --matrix " + five + " --strategy lmg --budget-factor 1.2 --out " + q(plan)).status, 0);
  EXPECT_EQ(dvs_run("validate --matrix " + five + " --plan " + q(plan)).status, 0);
  // A plan with a cycle fails validation.
  dvs::io::write_file(plan, "1\t2\n2\t1\n3\t0\n4\t0\n5\t0\n");
  EXPECT_EQ(dvs_run("validate --matrix " + five + " --plan " + q(plan)).status, 3);
  EXPECT_EQ(dvs_run("validate --matrix " + five + " --plan " + q(dt::fixture("five_versions_chain.plan"))).status, 0);
}

TEST(Cli, GenerateIsDeterministic) {
  dt::TempDir dir("cli");
  const auto params = dir.path() / "g.params";
  dvs::io::write_file(params,
                      "num_commits = 12\nrows = 60\nmin_rows = 30\nmax_rows = 90\n"
                      "rows_per_edit_min = 2\nrows_per_edit_max = 8\n");
  ASSERT_EQ(dvs_run("gen --params " + q(params) + " --out " + q(dir.path() / "a") + " --seed 3").status, 0);
  ASSERT_EQ(dvs_run("gen --params " + q(params) + " --out " + q(dir.path() / "b") + " --seed 3").status, 0);
  for (int v = 1; v <= 12; ++v) {
    const auto name = std::filesystem::path("versions") / (std::to_string(v) + ".csv");
    EXPECT_EQ(dvs::io::read_file(dir.path() / "a" / name), dvs::io::read_file(dir.path() / "b" / name));
  }
  const auto m1 = dir.path() / "m1", m2 = dir.path() / "m2";
  ASSERT_EQ(dvs_run("matrix --corpus " + q(dir.path() / "a") + " --policy k_hop:2 --out " + q(m1)).status, 0);
  ASSERT_EQ(dvs_run("matrix --corpus " + q(dir.path() / "b") + " --policy k_hop:2 --threads 3 --out " + q(m2)).status, 0);
  EXPECT_EQ(dvs::io::read_file(m1), dvs::io::read_file(m2));
  const auto s1 = dvs_run("solve --matrix " + q(m1) + " --strategy mp --theta 100000");
  const auto s2 = dvs_run("solve --matrix " + q(m1) + " --strategy mp --theta 100000");
  EXPECT_EQ(s1.status, 0);
  EXPECT_EQ(s1.out, s2.out);
}

TEST(Cli, SweepWritesOneRowPerStep) {
  dt::TempDir dir("cli");
  const auto csv = dir.path() / "s.csv";
  ASSERT_EQ(dvs_run("sweep --matrix " + q(dt::fixture("five_versions.matrix")) +
                    " --strategy lmg --param-range 1:2:4 --relative --out " + q(csv))
                .status,
            0);
  const auto text = dvs::io::read_file(csv);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 5);
}

TEST(Cli, ExactAndIlp) {
  dt::TempDir dir("cli");
  const auto mp = q(dt::fixture("mp_example.matrix"));
  const auto r = dvs_run("exact --matrix " + mp + " --objective min_storage --bound 6");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(metric(r.out, "storage"), "8");
  ASSERT_EQ(dvs_run("export-ilp --matrix " + mp + " --theta 6 --out " + q(dir.path() / "m.lp")).status, 0);
  EXPECT_NE(dvs::io::read_file(dir.path() / "m.lp").find("Binary"), std::string::npos);
}

TEST(Cli, RepositoryWorkflow) {
  dt::TempDir dir("cli");
  const auto repo = q(dir.path() / "r");
  dvs::io::write_file(dir.path() / "v1", "a\nb\nc\n");
  dvs::io::write_file(dir.path() / "v2", "a\nb\nc\nd\n");
  ASSERT_EQ(dvs_run("repo --repo " + repo + " init").status, 0);
  ASSERT_EQ(dvs_run("repo --repo " + repo + " commit --file " + q(dir.path() / "v1")).status, 0);
  ASSERT_EQ(dvs_run("repo --repo " + repo + " commit --file " + q(dir.path() / "v2") + " --parent 1").status, 0);
  EXPECT_EQ(dvs_run("repo --repo " + repo + " plan --strategy spt").status, 0);
  const auto out = dvs_run("repo --repo " + repo + " checkout --version 2");
  EXPECT_EQ(out.status, 0);
  EXPECT_EQ(out.out, "a\nb\nc\nd\n");
  const auto stats = dvs_run("repo --repo " + repo + " stats");
  EXPECT_EQ(stats.status, 0);
  EXPECT_FALSE(metric(stats.out, "storage").empty());
  EXPECT_EQ(dvs_run("repo --repo " + repo + " checkout --version 9 2>/dev/null").status, 3);
}
