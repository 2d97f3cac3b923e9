#include "dvs/core/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

#include "dvs/core/errors.hpp"

namespace dvs::io {

namespace {

struct LineReader {
  explicit LineReader(std::istream& stream) : in(stream) {}

  std::istream& in;
  std::size_t line_no = 0;
  std::string line;

  // Next non-blank, non-comment line split on tabs; false at EOF.
  bool next(std::vector<std::string_view>& fields) {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line.front() == '#') continue;
      fields.clear();
      std::string_view rest(line);
      while (true) {
        auto tab = rest.find('\t');
        fields.push_back(rest.substr(0, tab));
        if (tab == std::string_view::npos) break;
        rest.remove_prefix(tab + 1);
      }
      return true;
    }
    return false;
  }

  [[noreturn]] void bad(const std::string& what) const {
    fail(ErrorKind::invalid_input, "line " + std::to_string(line_no) + ": " + what);
  }

  template <typename T>
  T number(std::string_view field) const {
    T value{};
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
      bad("expected a number, got '" + std::string(field) + "'");
    }
    return value;
  }
};

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::io, "cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::io, "cannot write " + path.string());
  return out;
}

}  // namespace

CostMatrices read_matrices(std::istream& in) {
  LineReader reader(in);
  std::vector<std::string_view> fields;
  if (!reader.next(fields) || fields.size() != 1 ||
      (fields[0] != "directed" && fields[0] != "undirected")) {
    reader.bad("matrix file must start with 'directed' or 'undirected'");
  }
  const bool directed = fields[0] == "directed";

  std::map<std::pair<VersionId, VersionId>, EdgeCost> records;
  VersionId max_id = 0;
  while (reader.next(fields)) {
    if (fields.size() != 4) reader.bad("expected 4 tab-separated fields");
    auto i = reader.number<VersionId>(fields[0]);
    auto j = reader.number<VersionId>(fields[1]);
    EdgeCost cost{reader.number<Cost>(fields[2]), reader.number<Cost>(fields[3])};
    if (i == kRoot || j == kRoot) reader.bad("version ids start at 1");
    if (!records.emplace(std::pair{i, j}, cost).second) reader.bad("duplicate entry");
    max_id = std::max({max_id, i, j});
  }

  CostMatrices matrices(max_id, directed);
  for (const auto& [key, cost] : records) matrices.set(key.first, key.second, cost);
  return matrices;
}

void write_matrices(std::ostream& out, const CostMatrices& matrices) {
  out << (matrices.directed() ? "directed" : "undirected") << '\n';
  for (const auto& [key, cost] : matrices.entries()) {
    if (!matrices.directed() && key.first > key.second) continue;
    out << key.first << '\t' << key.second << '\t' << cost.storage << '\t' << cost.recreation
        << '\n';
  }
}

StoragePlan read_plan(std::istream& in) {
  LineReader reader(in);
  std::vector<std::string_view> fields;
  std::map<VersionId, VersionId> parents;
  while (reader.next(fields)) {
    if (fields.size() != 2) reader.bad("expected 'version<TAB>parent'");
    auto v = reader.number<VersionId>(fields[0]);
    auto p = reader.number<VersionId>(fields[1]);
    if (v == kRoot) reader.bad("version ids start at 1");
    if (!parents.emplace(v, p).second) reader.bad("version listed twice");
  }
  const std::size_t n = parents.empty() ? 0 : parents.rbegin()->first;
  if (parents.size() != n) {
    fail(ErrorKind::invalid_input, "plan file must list every version 1.." + std::to_string(n));
  }
  std::vector<VersionId> vec(n + 1, kRoot);
  for (const auto& [v, p] : parents) vec[v] = p;
  return StoragePlan(std::move(vec));
}

void write_plan(std::ostream& out, const StoragePlan& plan) {
  for (VersionId v = 1; v <= plan.version_count(); ++v) {
    out << v << '\t' << plan.parent(v) << '\n';
  }
}

WorkloadProfile read_workload(std::istream& in) {
  LineReader reader(in);
  std::vector<std::string_view> fields;
  std::map<VersionId, double> weights;
  while (reader.next(fields)) {
    if (fields.size() != 2) reader.bad("expected 'version<TAB>weight'");
    auto v = reader.number<VersionId>(fields[0]);
    auto w = reader.number<double>(fields[1]);
    if (v == kRoot) reader.bad("version ids start at 1");
    if (!weights.emplace(v, w).second) reader.bad("version listed twice");
  }
  const std::size_t n = weights.empty() ? 0 : weights.rbegin()->first;
  if (weights.size() != n) {
    fail(ErrorKind::invalid_input,
         "workload file must list every version 1.." + std::to_string(n));
  }
  std::vector<double> freq(n + 1, 0.0);
  for (const auto& [v, w] : weights) freq[v] = w;
  return WorkloadProfile(std::move(freq));
}

void write_workload(std::ostream& out, const WorkloadProfile& workload) {
  std::ostringstream buf;
  buf.precision(17);
  for (VersionId v = 1; v <= workload.version_count(); ++v) {
    buf << v << '\t' << workload.weight(v) << '\n';
  }
  out << buf.str();
}

CostMatrices load_matrices(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_matrices(in);
}

void save_matrices(const std::filesystem::path& path, const CostMatrices& matrices) {
  auto out = open_out(path);
  write_matrices(out, matrices);
}

StoragePlan load_plan(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_plan(in);
}

void save_plan(const std::filesystem::path& path, const StoragePlan& plan) {
  auto out = open_out(path);
  write_plan(out, plan);
}

WorkloadProfile load_workload(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_workload(in);
}

void save_workload(const std::filesystem::path& path, const WorkloadProfile& workload) {
  auto out = open_out(path);
  write_workload(out, workload);
}

std::string read_file(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) fail(ErrorKind::io, "read failed: " + path.string());
  return std::move(buf).str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  auto out = open_out(path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) fail(ErrorKind::io, "write failed: " + path.string());
}

}  // namespace dvs::io
