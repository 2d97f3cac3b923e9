#include "dvs/store/repository.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <optional>
#include <set>
#include <utility>

#include "json.hpp"

#include "dvs/core/errors.hpp"
#include "dvs/core/io.hpp"
#include "dvs/core/solver_graph.hpp"

namespace dvs {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kManifestFormat = 1;

class FileLock {
 public:
  FileLock(const fs::path& path, bool exclusive) {
    fd_ = ::open(path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
    if (fd_ < 0) fail(ErrorKind::io, "cannot open lock " + path.string() + ": " + std::strerror(errno));
    int rc;
    do {
      rc = ::flock(fd_, exclusive ? LOCK_EX : LOCK_SH);
    } while (rc != 0 && errno == EINTR);
    if (rc != 0) {
      const int err = errno;
      ::close(fd_);
      fail(ErrorKind::io, "cannot lock " + path.string() + ": " + std::strerror(err));
    }
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;
  ~FileLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }

 private:
  int fd_ = -1;
};

struct State {
  DeltaMode mode = DeltaMode::directed;
  std::vector<ManifestEntry> entries;  // index v - 1
};

std::string_view mode_name(DeltaMode m) { return m == DeltaMode::directed ? "directed" : "undirected"; }

std::string_view kind_name(ArtifactKind k) {
  switch (k) {
    case ArtifactKind::full: return "full";
    case ArtifactKind::forward: return "forward";
    case ArtifactKind::undirected: return "undirected";
  }
  return "full";
}

[[noreturn]] void corrupt(const std::string& msg) { fail(ErrorKind::corruption, "manifest: " + msg); }

// Every storage chain has to reach the root; derivation parents precede
// their child.
void check_state(const State& s) {
  const std::size_t n = s.entries.size();
  for (std::size_t i = 0; i < n; ++i) {
    const VersionId v = static_cast<VersionId>(i + 1);
    const auto& e = s.entries[i];
    for (VersionId p : e.parents) {
      if (p == kRoot || p >= v) corrupt("version " + std::to_string(v) + " has a bad parent");
    }
    if (e.storage_parent > n || e.storage_parent == v) {
      corrupt("version " + std::to_string(v) + " has a bad storage parent");
    }
    if ((e.storage_parent == kRoot) != (e.kind == ArtifactKind::full)) {
      corrupt("version " + std::to_string(v) + " artifact kind does not match its storage parent");
    }
  }
  std::vector<char> state(n + 1, 0);  // 0 new, 1 on stack, 2 reaches root
  state[kRoot] = 2;
  std::vector<VersionId> path;
  for (VersionId v = 1; v <= n; ++v) {
    VersionId u = v;
    while (state[u] == 0) {
      state[u] = 1;
      path.push_back(u);
      u = s.entries[u - 1].storage_parent;
    }
    if (state[u] == 1) corrupt("storage plan has a cycle through version " + std::to_string(u));
    for (VersionId w : path) state[w] = 2;
    path.clear();
  }
}

State load_state(const fs::path& dir) {
  const auto path = dir / "manifest.json";
  if (!fs::exists(path)) fail(ErrorKind::io, "no repository at " + dir.string());
  State s;
  try {
    const json doc = json::parse(io::read_file(path));
    if (doc.at("format").get<int>() != kManifestFormat) corrupt("unsupported format");
    const auto mode = doc.at("mode").get<std::string>();
    if (mode == "directed") s.mode = DeltaMode::directed;
    else if (mode == "undirected") s.mode = DeltaMode::undirected;
    else corrupt("unknown mode '" + mode + "'");
    const auto& versions = doc.at("versions");
    for (std::size_t i = 0; i < versions.size(); ++i) {
      const auto& j = versions[i];
      if (j.at("id").get<std::uint64_t>() != i + 1) corrupt("version ids are not consecutive");
      ManifestEntry e;
      e.parents = j.at("parents").get<std::vector<VersionId>>();
      e.storage_parent = j.at("storage_parent").get<VersionId>();
      const auto kind = j.at("kind").get<std::string>();
      if (kind == "full") e.kind = ArtifactKind::full;
      else if (kind == "forward") e.kind = ArtifactKind::forward;
      else if (kind == "undirected") e.kind = ArtifactKind::undirected;
      else corrupt("unknown artifact kind '" + kind + "'");
      e.object = j.at("object").get<std::string>();
      if (!digest_from_hex(e.object)) corrupt("bad object name '" + e.object + "'");
      const auto digest = digest_from_hex(j.at("digest").get<std::string>());
      if (!digest) corrupt("bad digest for version " + std::to_string(i + 1));
      e.digest = *digest;
      e.size = j.at("size").get<std::uint64_t>();
      s.entries.push_back(std::move(e));
    }
  } catch (const json::exception& ex) {
    corrupt(ex.what());
  }
  check_state(s);
  return s;
}

void save_state(const fs::path& dir, const State& s) {
  check_state(s);
  json versions = json::array();
  for (std::size_t i = 0; i < s.entries.size(); ++i) {
    const auto& e = s.entries[i];
    versions.push_back({{"id", i + 1},
                        {"parents", e.parents},
                        {"storage_parent", e.storage_parent},
                        {"kind", kind_name(e.kind)},
                        {"object", e.object},
                        {"digest", to_hex(e.digest)},
                        {"size", e.size}});
  }
  const json doc = {{"format", kManifestFormat}, {"mode", mode_name(s.mode)}, {"versions", versions}};
  const auto tmp = dir / "manifest.json.tmp";
  io::write_file(tmp, doc.dump(1) + '\n');
  std::error_code ec;
  fs::rename(tmp, dir / "manifest.json", ec);
  if (ec) {
    fs::remove(tmp, ec);
    fail(ErrorKind::io, "cannot replace manifest: " + ec.message());
  }
}

// Writes an encoded artifact under its content hash. Returns the object name
// and whether the file is new.
std::pair<std::string, bool> store_object(const fs::path& dir, const std::string& bytes) {
  const std::string name = to_hex(sha256(bytes));
  const auto path = dir / "objects" / name;
  if (fs::exists(path)) return {name, false};
  const auto tmp = dir / "objects" / (name + ".tmp");
  io::write_file(tmp, bytes);
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    fail(ErrorKind::io, "cannot store object " + name + ": " + ec.message());
  }
  return {name, true};
}

DeltaArtifact load_object(const fs::path& dir, const ManifestEntry& e, VersionId v) {
  const auto path = dir / "objects" / e.object;
  if (!fs::exists(path)) {
    fail(ErrorKind::corruption, "object for version " + std::to_string(v) + " is missing");
  }
  const std::string bytes = io::read_file(path);
  if (to_hex(sha256(bytes)) != e.object) {
    fail(ErrorKind::corruption, "object for version " + std::to_string(v) + " does not match its name");
  }
  DeltaArtifact a = decode(bytes);
  // Undirected artifacts are stored in a fixed orientation, so the version
  // may sit at either end.
  const bool ends_here =
      a.target == e.digest || (a.kind == ArtifactKind::undirected && a.source == e.digest);
  if (a.kind != e.kind || !ends_here) {
    fail(ErrorKind::corruption, "object for version " + std::to_string(v) + " belongs to another version");
  }
  return a;
}

std::string checkout_in(const fs::path& dir, const State& s, VersionId id) {
  std::vector<VersionId> chain;
  for (VersionId u = id; u != kRoot; u = s.entries[u - 1].storage_parent) chain.push_back(u);
  std::string content;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    content = apply_delta(content, load_object(dir, s.entries[*it - 1], *it));
  }
  return content;
}

// Contents of every version, each rebuilt from its already rebuilt parent.
std::vector<std::string> checkout_all(const fs::path& dir, const State& s) {
  const std::size_t n = s.entries.size();
  std::vector<std::vector<VersionId>> children(n + 1);
  for (VersionId v = 1; v <= n; ++v) children[s.entries[v - 1].storage_parent].push_back(v);
  std::vector<std::string> out(n);
  std::vector<VersionId> stack(children[kRoot].rbegin(), children[kRoot].rend());
  while (!stack.empty()) {
    const VersionId v = stack.back();
    stack.pop_back();
    const VersionId p = s.entries[v - 1].storage_parent;
    out[v - 1] = apply_delta(p == kRoot ? std::string_view{} : std::string_view(out[p - 1]),
                             load_object(dir, s.entries[v - 1], v));
    stack.insert(stack.end(), children[v].rbegin(), children[v].rend());
  }
  return out;
}

CostReport measure(const fs::path& dir, const State& s) {
  const std::size_t n = s.entries.size();
  CostReport r;
  r.recreation.assign(n + 1, 0);
  std::vector<Cost> edge(n + 1, 0);
  for (VersionId v = 1; v <= n; ++v) {
    const auto& e = s.entries[v - 1];
    std::error_code ec;
    const auto bytes = fs::file_size(dir / "objects" / e.object, ec);
    if (ec) fail(ErrorKind::corruption, "object for version " + std::to_string(v) + " is missing");
    const Cost storage = static_cast<Cost>(bytes);
    r.total_storage += storage;
    edge[v] = default_recreation(e.kind, storage);
  }
  std::vector<char> done(n + 1, 0);
  done[kRoot] = 1;
  std::vector<VersionId> path;
  for (VersionId v = 1; v <= n; ++v) {
    VersionId u = v;
    while (!done[u]) {
      path.push_back(u);
      u = s.entries[u - 1].storage_parent;
    }
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      r.recreation[*it] = r.recreation[s.entries[*it - 1].storage_parent] + edge[*it];
      done[*it] = 1;
    }
    path.clear();
  }
  for (VersionId v = 1; v <= n; ++v) {
    r.sum_recreation += r.recreation[v];
    r.max_recreation = std::max(r.max_recreation, r.recreation[v]);
  }
  return r;
}

VersionGraph graph_of(const State& s) {
  std::vector<Derivation> edges;
  for (std::size_t i = 0; i < s.entries.size(); ++i) {
    for (VersionId p : s.entries[i].parents) edges.emplace_back(p, static_cast<VersionId>(i + 1));
  }
  return VersionGraph(s.entries.size(), std::move(edges));
}

}  // namespace

Repository Repository::init(const fs::path& dir, DeltaMode mode) {
  std::error_code ec;
  fs::create_directories(dir / "objects", ec);
  if (ec) fail(ErrorKind::io, "cannot create " + (dir / "objects").string() + ": " + ec.message());
  FileLock lock(dir / "lock", true);
  if (fs::exists(dir / "manifest.json")) {
    fail(ErrorKind::invalid_input, "repository already exists at " + dir.string());
  }
  State s;
  s.mode = mode;
  save_state(dir, s);
  return Repository(dir);
}

Repository Repository::open(const fs::path& dir) {
  FileLock lock(dir / "lock", false);
  load_state(dir);
  return Repository(dir);
}

DeltaMode Repository::mode() const {
  FileLock lock(dir_ / "lock", false);
  return load_state(dir_).mode;
}

std::size_t Repository::version_count() const {
  FileLock lock(dir_ / "lock", false);
  return load_state(dir_).entries.size();
}

VersionGraph Repository::version_graph() const {
  FileLock lock(dir_ / "lock", false);
  return graph_of(load_state(dir_));
}

StoragePlan Repository::current_plan() const {
  FileLock lock(dir_ / "lock", false);
  const auto s = load_state(dir_);
  std::vector<VersionId> parents{kRoot};
  for (const auto& e : s.entries) parents.push_back(e.storage_parent);
  return StoragePlan(std::move(parents));
}

std::vector<ManifestEntry> Repository::entries() const {
  FileLock lock(dir_ / "lock", false);
  return load_state(dir_).entries;
}

VersionId Repository::commit(std::string_view content, const std::vector<VersionId>& parents) {
  FileLock lock(dir_ / "lock", true);
  State s = load_state(dir_);
  const std::size_t n = s.entries.size();
  if (n >= 0xFFFFFFFFull) fail(ErrorKind::invalid_input, "repository is full");
  std::set<VersionId> seen;
  for (VersionId p : parents) {
    if (p == kRoot || p > n) fail(ErrorKind::invalid_input, "unknown parent " + std::to_string(p));
    if (!seen.insert(p).second) fail(ErrorKind::invalid_input, "parent " + std::to_string(p) + " repeated");
  }

  DeltaArtifact artifact = make_full(content);
  VersionId storage_parent = kRoot;
  if (!parents.empty()) {
    const std::string base = checkout_in(dir_, s, parents.front());
    DeltaArtifact delta = compute_delta(base, content, s.mode);
    if (delta.storage_cost() < artifact.storage_cost()) {
      artifact = std::move(delta);
      storage_parent = parents.front();
    }
  }
  const auto [name, created] = store_object(dir_, encode(artifact));
  ManifestEntry e;
  e.parents = parents;
  e.storage_parent = storage_parent;
  e.kind = artifact.kind;
  e.object = name;
  e.digest = sha256(content);
  e.size = content.size();
  s.entries.push_back(std::move(e));
  try {
    save_state(dir_, s);
  } catch (...) {
    std::error_code ec;
    if (created) fs::remove(dir_ / "objects" / name, ec);
    throw;
  }
  return static_cast<VersionId>(n + 1);
}

PlanResult Repository::plan(Strategy strategy, const SolveParams& params, const PlanOptions& options) {
  FileLock lock(dir_ / "lock", true);
  const State old = load_state(dir_);
  const std::size_t n = old.entries.size();
  if (n == 0) fail(ErrorKind::invalid_input, "repository has no versions");

  PlanResult result;
  result.before = measure(dir_, old);
  const auto contents = checkout_all(dir_, old);
  const VersionGraph graph = graph_of(old);
  PopulateOptions populate;
  populate.policy = options.policy;
  populate.mode = old.mode;
  populate.threads = options.threads;
  const auto matrices = populate_matrices(contents, graph, populate);
  const SolverGraph sg = build_solver_graph(graph, matrices);
  result.solution = solve(sg, strategy, params);

  State next = old;
  std::vector<std::string> created;
  try {
    for (VersionId v = 1; v <= n; ++v) {
      const VersionId p = result.solution.plan.parent(v);
      const DeltaArtifact artifact = p == kRoot
                                         ? make_full(contents[v - 1])
                                         : compute_delta(contents[p - 1], contents[v - 1], old.mode);
      const auto [name, fresh] = store_object(dir_, encode(artifact));
      if (fresh) created.push_back(name);
      auto& e = next.entries[v - 1];
      e.storage_parent = p;
      e.kind = artifact.kind;
      e.object = name;
    }
    save_state(dir_, next);
  } catch (...) {
    std::error_code ec;
    for (const auto& name : created) fs::remove(dir_ / "objects" / name, ec);
    throw;
  }

  std::set<std::string> live;
  for (const auto& e : next.entries) live.insert(e.object);
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir_ / "objects", ec)) {
    if (!live.contains(entry.path().filename().string())) fs::remove(entry.path(), ec);
  }
  result.after = measure(dir_, next);
  return result;
}

std::string Repository::checkout(VersionId id) const {
  FileLock lock(dir_ / "lock", false);
  const State s = load_state(dir_);
  if (id == kRoot || id > s.entries.size()) {
    fail(ErrorKind::invalid_input, "unknown version " + std::to_string(id));
  }
  return checkout_in(dir_, s, id);
}

CostReport Repository::stats() const {
  FileLock lock(dir_ / "lock", false);
  return measure(dir_, load_state(dir_));
}

}  // namespace dvs
