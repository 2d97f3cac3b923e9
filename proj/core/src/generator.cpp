#include "dvs/genlab/generator.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <map>
#include <sstream>

#include "dvs/core/errors.hpp"
#include "dvs/core/io.hpp"
#include "dvs/genlab/rng.hpp"

namespace dvs {

namespace {

constexpr std::uint64_t kMaxCellValue = 999999;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::map<std::string, std::string> parse_key_values(const std::string& text,
                                                    const std::string& what) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      fail(ErrorKind::invalid_input,
           what + " line " + std::to_string(line_no) + ": expected key = value");
    }
    std::string key = trim(std::string_view(body).substr(0, eq));
    std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key.empty() || value.empty()) {
      fail(ErrorKind::invalid_input,
           what + " line " + std::to_string(line_no) + ": empty key or value");
    }
    if (!out.emplace(key, value).second) {
      fail(ErrorKind::invalid_input, what + ": duplicate key '" + key + "'");
    }
  }
  return out;
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
  std::uint64_t x = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), x);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    fail(ErrorKind::invalid_input, "'" + key + "' needs a non-negative integer, got '" + value + "'");
  }
  return x;
}

double to_double(const std::string& key, const std::string& value) {
  double x = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), x);
  if (ec != std::errc() || ptr != value.data() + value.size() || !std::isfinite(x)) {
    fail(ErrorKind::invalid_input, "'" + key + "' needs a number, got '" + value + "'");
  }
  return x;
}

void validate(const GenParams& p) {
  auto require = [](bool ok, const char* msg) {
    if (!ok) fail(ErrorKind::invalid_input, msg);
  };
  const auto& d = p.dataset;
  require(p.num_commits >= 1, "num_commits must be positive");
  require(p.num_commits <= 0xFFFFFFFFull, "num_commits does not fit a version id");
  require(p.branch_interval >= 1, "branch_interval must be positive");
  require(p.branch_probability >= 0.0 && p.branch_probability <= 1.0,
          "branch_probability must lie in [0, 1]");
  require(p.branch_limit >= 1, "branch_limit must be positive");
  require(p.branch_length >= 1, "branch_length must be positive");
  require(d.min_rows >= 1, "min_rows must be positive");
  require(d.min_rows <= d.rows && d.rows <= d.max_rows, "rows must lie in [min_rows, max_rows]");
  require(d.min_columns >= 2, "min_columns must be at least 2");
  require(d.min_columns <= d.columns && d.columns <= d.max_columns,
          "columns must lie in [min_columns, max_columns]");
  require(d.commands.lo <= d.commands.hi, "commands_min exceeds commands_max");
  require(d.rows_per_edit.lo >= 1 && d.rows_per_edit.lo <= d.rows_per_edit.hi,
          "rows_per_edit range must be non-empty and start at 1 or more");
  require(d.column_cells.lo >= 1 && d.column_cells.lo <= d.column_cells.hi,
          "column_cells range must be non-empty and start at 1 or more");
  const double w[] = {d.mix.add_rows,      d.mix.delete_rows, d.mix.modify_rows,
                      d.mix.modify_column, d.mix.add_column,  d.mix.remove_column};
  double total = 0;
  for (double x : w) {
    require(x >= 0.0 && std::isfinite(x), "edit mix weights must be non-negative");
    total += x;
  }
  require(total > 0.0, "edit mix needs a positive weight");
}

struct Dims {
  std::uint64_t rows;
  std::uint64_t columns;
};

EditCommand::Kind pick_kind(Rng& rng, const EditMix& mix) {
  using K = EditCommand::Kind;
  const std::pair<K, double> table[] = {
      {K::add_rows, mix.add_rows},           {K::delete_rows, mix.delete_rows},
      {K::modify_rows, mix.modify_rows},     {K::modify_column, mix.modify_column},
      {K::add_column, mix.add_column},       {K::remove_column, mix.remove_column}};
  double total = 0;
  for (const auto& [k, w] : table) total += w;
  double x = rng.unit() * total;
  for (const auto& [k, w] : table) {
    if (x < w) return k;
    x -= w;
  }
  for (auto it = std::rbegin(table); it != std::rend(table); ++it) {
    if (it->second > 0) return it->first;
  }
  return K::modify_rows;
}

EditCommand make_command(Rng& rng, const DatasetParams& d, Dims& dims) {
  using K = EditCommand::Kind;
  K kind = pick_kind(rng, d.mix);
  if ((kind == K::delete_rows && dims.rows <= d.min_rows) ||
      (kind == K::add_rows && dims.rows >= d.max_rows) ||
      (kind == K::remove_column && dims.columns <= d.min_columns) ||
      (kind == K::add_column && dims.columns >= d.max_columns)) {
    kind = K::modify_rows;
  }
  EditCommand c{kind};
  switch (kind) {
    case K::add_rows:
      c.count = std::min(rng.uniform(d.rows_per_edit.lo, d.rows_per_edit.hi),
                         d.max_rows - dims.rows);
      c.at = rng.uniform(0, dims.rows);
      dims.rows += c.count;
      break;
    case K::delete_rows:
      c.count = std::min(rng.uniform(d.rows_per_edit.lo, d.rows_per_edit.hi),
                         dims.rows - d.min_rows);
      c.at = rng.uniform(0, dims.rows - c.count);
      dims.rows -= c.count;
      break;
    case K::modify_rows:
      c.count = std::min(rng.uniform(d.rows_per_edit.lo, d.rows_per_edit.hi), dims.rows);
      c.at = rng.uniform(0, dims.rows - c.count);
      break;
    case K::modify_column:
      c.at = rng.uniform(1, dims.columns - 1);
      c.count = std::min(rng.uniform(d.column_cells.lo, d.column_cells.hi), dims.rows);
      c.row = rng.uniform(0, dims.rows - c.count);
      break;
    case K::add_column:
      c.at = rng.uniform(1, dims.columns);
      ++dims.columns;
      break;
    case K::remove_column:
      c.at = rng.uniform(1, dims.columns - 1);
      --dims.columns;
      break;
  }
  return c;
}

// Row-major table; column 0 is the row id.
struct Table {
  std::vector<std::uint64_t> column_names;
  std::vector<std::vector<std::uint64_t>> rows;
};

class TableBuilder {
 public:
  explicit TableBuilder(std::uint64_t seed) : rng_(seed) {}

  Table root(const DatasetParams& d) {
    Table t;
    for (std::uint64_t c = 0; c < d.columns; ++c) t.column_names.push_back(next_column_++);
    t.rows.reserve(d.rows);
    for (std::uint64_t r = 0; r < d.rows; ++r) t.rows.push_back(fresh_row(d.columns));
    return t;
  }

  void apply(Table& t, const EditCommand& c) {
    using K = EditCommand::Kind;
    auto& rows = t.rows;
    const std::size_t width = t.column_names.size();
    switch (c.kind) {
      case K::add_rows: {
        std::vector<std::vector<std::uint64_t>> fresh;
        fresh.reserve(c.count);
        for (std::uint64_t i = 0; i < c.count; ++i) fresh.push_back(fresh_row(width));
        rows.insert(rows.begin() + static_cast<std::ptrdiff_t>(c.at),
                    std::make_move_iterator(fresh.begin()), std::make_move_iterator(fresh.end()));
        break;
      }
      case K::delete_rows:
        rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(c.at),
                   rows.begin() + static_cast<std::ptrdiff_t>(c.at + c.count));
        break;
      case K::modify_rows:
        for (std::uint64_t r = c.at; r < c.at + c.count; ++r) {
          for (std::size_t col = 1; col < width; ++col) rows[r][col] = cell();
        }
        break;
      case K::modify_column:
        for (std::uint64_t r = c.row; r < c.row + c.count; ++r) rows[r][c.at] = cell();
        break;
      case K::add_column:
        t.column_names.insert(t.column_names.begin() + static_cast<std::ptrdiff_t>(c.at),
                              next_column_++);
        for (auto& row : rows) row.insert(row.begin() + static_cast<std::ptrdiff_t>(c.at), cell());
        break;
      case K::remove_column:
        t.column_names.erase(t.column_names.begin() + static_cast<std::ptrdiff_t>(c.at));
        for (auto& row : rows) row.erase(row.begin() + static_cast<std::ptrdiff_t>(c.at));
        break;
    }
  }

 private:
  std::uint64_t cell() { return rng_.uniform(0, kMaxCellValue); }

  std::vector<std::uint64_t> fresh_row(std::size_t width) {
    std::vector<std::uint64_t> row(width);
    row[0] = next_row_id_++;
    for (std::size_t c = 1; c < width; ++c) row[c] = cell();
    return row;
  }

  Rng rng_;
  std::uint64_t next_row_id_ = 1;
  std::uint64_t next_column_ = 0;
};

std::string render(const Table& t) {
  std::string out;
  out.reserve(t.rows.size() * t.column_names.size() * 8 + 64);
  out += "id";
  for (std::size_t c = 1; c < t.column_names.size(); ++c) {
    out += ",c";
    out += std::to_string(t.column_names[c]);
  }
  out += '\n';
  char buf[24];
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, row[c]);
      out.append(buf, ptr);
    }
    out += '\n';
  }
  return out;
}

}  // namespace

GenParams parse_gen_params(const std::string& text, const GenParams& defaults) {
  GenParams p = defaults;
  auto& d = p.dataset;
  for (const auto& [key, value] : parse_key_values(text, "parameter file")) {
    if (key == "num_commits") p.num_commits = to_u64(key, value);
    else if (key == "branch_interval") p.branch_interval = to_u64(key, value);
    else if (key == "branch_probability") p.branch_probability = to_double(key, value);
    else if (key == "branch_limit") p.branch_limit = to_u64(key, value);
    else if (key == "branch_length") p.branch_length = to_u64(key, value);
    else if (key == "seed") p.seed = to_u64(key, value);
    else if (key == "rows") d.rows = to_u64(key, value);
    else if (key == "columns") d.columns = to_u64(key, value);
    else if (key == "commands_min") d.commands.lo = to_u64(key, value);
    else if (key == "commands_max") d.commands.hi = to_u64(key, value);
    else if (key == "rows_per_edit_min") d.rows_per_edit.lo = to_u64(key, value);
    else if (key == "rows_per_edit_max") d.rows_per_edit.hi = to_u64(key, value);
    else if (key == "column_cells_min") d.column_cells.lo = to_u64(key, value);
    else if (key == "column_cells_max") d.column_cells.hi = to_u64(key, value);
    else if (key == "min_rows") d.min_rows = to_u64(key, value);
    else if (key == "max_rows") d.max_rows = to_u64(key, value);
    else if (key == "min_columns") d.min_columns = to_u64(key, value);
    else if (key == "max_columns") d.max_columns = to_u64(key, value);
    else if (key == "mix_add_rows") d.mix.add_rows = to_double(key, value);
    else if (key == "mix_delete_rows") d.mix.delete_rows = to_double(key, value);
    else if (key == "mix_modify_rows") d.mix.modify_rows = to_double(key, value);
    else if (key == "mix_modify_column") d.mix.modify_column = to_double(key, value);
    else if (key == "mix_add_column") d.mix.add_column = to_double(key, value);
    else if (key == "mix_remove_column") d.mix.remove_column = to_double(key, value);
    else fail(ErrorKind::invalid_input, "unknown parameter '" + key + "'");
  }
  validate(p);
  return p;
}

GenParams load_gen_params(const std::filesystem::path& path, const GenParams& defaults) {
  return parse_gen_params(io::read_file(path), defaults);
}

std::string format_gen_params(const GenParams& p) {
  const auto& d = p.dataset;
  std::ostringstream out;
  out.precision(17);
  out << "num_commits = " << p.num_commits << '\n'
      << "branch_interval = " << p.branch_interval << '\n'
      << "branch_probability = " << p.branch_probability << '\n'
      << "branch_limit = " << p.branch_limit << '\n'
      << "branch_length = " << p.branch_length << '\n'
      << "seed = " << p.seed << '\n'
      << "rows = " << d.rows << '\n'
      << "columns = " << d.columns << '\n'
      << "commands_min = " << d.commands.lo << '\n'
      << "commands_max = " << d.commands.hi << '\n'
      << "rows_per_edit_min = " << d.rows_per_edit.lo << '\n'
      << "rows_per_edit_max = " << d.rows_per_edit.hi << '\n'
      << "column_cells_min = " << d.column_cells.lo << '\n'
      << "column_cells_max = " << d.column_cells.hi << '\n'
      << "min_rows = " << d.min_rows << '\n'
      << "max_rows = " << d.max_rows << '\n'
      << "min_columns = " << d.min_columns << '\n'
      << "max_columns = " << d.max_columns << '\n'
      << "mix_add_rows = " << d.mix.add_rows << '\n'
      << "mix_delete_rows = " << d.mix.delete_rows << '\n'
      << "mix_modify_rows = " << d.mix.modify_rows << '\n'
      << "mix_modify_column = " << d.mix.modify_column << '\n'
      << "mix_add_column = " << d.mix.add_column << '\n'
      << "mix_remove_column = " << d.mix.remove_column << '\n';
  return out.str();
}

Skeleton gen_version_graph(const GenParams& params) {
  validate(params);
  Rng rng(params.seed);
  const std::uint64_t n = params.num_commits;

  std::vector<Derivation> edges;
  std::vector<VersionId> content_parent{kRoot};
  std::vector<std::uint32_t> branch{0};
  VersionId next = 2;
  VersionId trunk_tip = 1;
  std::uint64_t trunk_count = 1;
  std::uint32_t branches = 0;
  std::deque<VersionId> pending;  // branch tips waiting to be merged

  auto add = [&](VersionId parent, std::uint32_t b) {
    const VersionId v = next++;
    edges.emplace_back(parent, v);
    content_parent.push_back(parent);
    branch.push_back(b);
    return v;
  };

  while (next <= n) {
    if (trunk_count % params.branch_interval == 0 && rng.bernoulli(params.branch_probability)) {
      const auto count = rng.uniform(1, params.branch_limit);
      for (std::uint64_t b = 0; b < count && next <= n; ++b) {
        const auto length = rng.uniform(1, params.branch_length);
        const std::uint32_t id = ++branches;
        VersionId tip = trunk_tip;
        for (std::uint64_t k = 0; k < length && next <= n; ++k) tip = add(tip, id);
        pending.push_back(tip);
      }
      if (next > n) break;
    }
    const VersionId v = add(trunk_tip, 0);
    if (!pending.empty()) {
      edges.emplace_back(pending.front(), v);
      content_parent.back() = std::min(trunk_tip, pending.front());
      pending.pop_front();
    }
    trunk_tip = v;
    ++trunk_count;
  }

  Skeleton s;
  s.graph = VersionGraph(n, edges);
  s.content_parent = std::move(content_parent);
  s.branch = std::move(branch);

  // Edit commands per version, in id order, tracking the content parent's shape.
  std::vector<Dims> dims(n + 1);
  dims[1] = {params.dataset.rows, params.dataset.columns};
  s.edits.assign(n, {});
  for (VersionId v = 2; v <= n; ++v) {
    Dims d = dims[s.content_parent[v - 1]];
    const auto count = rng.uniform(params.dataset.commands.lo, params.dataset.commands.hi);
    for (std::uint64_t k = 0; k < count; ++k) {
      s.edits[v - 1].push_back(make_command(rng, params.dataset, d));
    }
    dims[v] = d;
  }
  return s;
}

std::vector<std::string> gen_datasets(const Skeleton& skeleton, const DatasetParams& dataset,
                                      std::uint64_t seed) {
  const std::size_t n = skeleton.graph.size();
  if (skeleton.content_parent.size() != n || skeleton.edits.size() != n) {
    fail(ErrorKind::invalid_input, "skeleton vectors do not match its graph");
  }
  // A separate stream from the graph generator, so cell values do not shift
  // when only the graph parameters change.
  TableBuilder builder(seed ^ 0x9E3779B97F4A7C15ull);

  std::vector<std::size_t> remaining(n + 1, 0);
  for (VersionId v = 2; v <= n; ++v) {
    const VersionId p = skeleton.content_parent[v - 1];
    if (p == kRoot || p >= v) {
      fail(ErrorKind::invalid_input, "content parent of " + std::to_string(v) + " is not earlier");
    }
    ++remaining[p];
  }

  std::vector<std::string> out(n);
  std::vector<Table> tables(n + 1);
  for (VersionId v = 1; v <= n; ++v) {
    const VersionId p = skeleton.content_parent[v - 1];
    Table t;
    if (p == kRoot) {
      t = builder.root(dataset);
    } else {
      t = --remaining[p] == 0 ? std::move(tables[p]) : tables[p];
      if (remaining[p] == 0) tables[p] = Table{};
    }
    for (const auto& c : skeleton.edits[v - 1]) builder.apply(t, c);
    out[v - 1] = render(t);
    if (remaining[v] > 0) tables[v] = std::move(t);
  }
  return out;
}

void write_corpus(const std::filesystem::path& dir, const GenParams& params,
                  const Skeleton& skeleton, const std::vector<std::string>& contents) {
  namespace fs = std::filesystem;
  const std::size_t n = skeleton.graph.size();
  if (contents.size() != n) fail(ErrorKind::invalid_input, "corpus size does not match graph");
  std::error_code ec;
  fs::create_directories(dir / "versions", ec);
  if (ec) fail(ErrorKind::io, "cannot create " + (dir / "versions").string() + ": " + ec.message());
  for (VersionId v = 1; v <= n; ++v) {
    io::write_file(dir / "versions" / (std::to_string(v) + ".csv"), contents[v - 1]);
  }
  std::string graph = "# from\tto\n";
  for (const auto& [from, to] : skeleton.graph.derivations()) {
    graph += std::to_string(from) + '\t' + std::to_string(to) + '\n';
  }
  io::write_file(dir / "graph.tsv", graph);
  io::write_file(dir / "manifest", "versions = " + std::to_string(n) + '\n' + format_gen_params(params));
}

Corpus read_corpus(const std::filesystem::path& dir) {
  const auto manifest = parse_key_values(io::read_file(dir / "manifest"), "corpus manifest");
  const auto it = manifest.find("versions");
  if (it == manifest.end()) fail(ErrorKind::invalid_input, "corpus manifest lacks 'versions'");
  const std::uint64_t n = to_u64("versions", it->second);
  if (n == 0 || n > 0xFFFFFFFFull) fail(ErrorKind::invalid_input, "corpus has no versions");

  std::vector<Derivation> edges;
  std::istringstream in(io::read_file(dir / "graph.tsv"));
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      fail(ErrorKind::invalid_input, "graph.tsv line " + std::to_string(line_no) + ": expected from<TAB>to");
    }
    const auto from = to_u64("from", line.substr(0, tab));
    const auto to = to_u64("to", line.substr(tab + 1));
    if (from > n || to > n) {
      fail(ErrorKind::invalid_input, "graph.tsv line " + std::to_string(line_no) + ": unknown version");
    }
    edges.emplace_back(static_cast<VersionId>(from), static_cast<VersionId>(to));
  }

  Corpus c;
  c.graph = VersionGraph(n, std::move(edges));
  c.contents.reserve(n);
  for (std::uint64_t v = 1; v <= n; ++v) {
    const auto path = dir / "versions" / (std::to_string(v) + ".csv");
    if (!std::filesystem::exists(path)) {
      fail(ErrorKind::invalid_input, "corpus is missing version " + std::to_string(v));
    }
    c.contents.push_back(io::read_file(path));
  }
  return c;
}

}  // namespace dvs
