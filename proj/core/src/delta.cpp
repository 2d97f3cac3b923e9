#include "dvs/deltas/delta.hpp"

#include <algorithm>
#include <cstring>
#include <vector>

#include "dvs/core/errors.hpp"

namespace dvs {

namespace {

constexpr char kMagic[4] = {'D', 'V', 'S', 'D'};

std::size_t varint_size(std::uint64_t v) {
  std::size_t n = 1;
  while (v >= 0x80) {
    v >>= 7;
    ++n;
  }
  return n;
}

void put_varint(std::string& out, std::uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<char>((v & 0x7f) | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<char>(v));
}

[[noreturn]] void corrupt(const std::string& what) {
  fail(ErrorKind::corruption, "malformed delta: " + what);
}

struct Reader {
  std::string_view data;
  std::size_t pos = 0;

  bool done() const { return pos == data.size(); }
  char byte() {
    if (pos >= data.size()) corrupt("truncated");
    return data[pos++];
  }
  std::uint64_t varint() {
    std::uint64_t v = 0;
    for (int shift = 0; shift < 64; shift += 7) {
      const auto b = static_cast<unsigned char>(byte());
      v |= static_cast<std::uint64_t>(b & 0x7f) << shift;
      if ((b & 0x80) == 0) return v;
    }
    corrupt("varint too long");
  }
  std::string_view bytes(std::uint64_t n) {
    if (n > data.size() - pos) corrupt("truncated");
    auto s = data.substr(pos, n);
    pos += n;
    return s;
  }
};

enum : char { kCopy = 'C', kSkip = 'S', kInsert = 'I' };

struct Op {
  char code;
  std::size_t count;  // lines for copy/skip, first target line for insert
  std::size_t lines;  // insert: number of target lines
  std::size_t bytes;  // insert: payload bytes
};

// Edit script turning `a` into `b`. A final copy running to the end of both
// sides is left implicit.
std::vector<Op> script(const LineIndex& a, const LineIndex& b) {
  const auto matches = match_lines(a, b);
  std::vector<Op> ops;
  auto push_insert = [&](std::size_t from, std::size_t to) {
    if (from == to) return;
    std::size_t bytes = 0;
    for (std::size_t j = from; j < to; ++j) bytes += b.line(j).size();
    ops.push_back({kInsert, from, to - from, bytes});
  };
  std::size_t i = 0, j = 0;
  for (auto [ai, bj] : matches) {
    if (ai > i) ops.push_back({kSkip, ai - i, 0, 0});
    push_insert(j, bj);
    if (!ops.empty() && ops.back().code == kCopy && ai == i && bj == j) {
      ++ops.back().count;
    } else {
      ops.push_back({kCopy, 1, 0, 0});
    }
    i = ai + 1;
    j = bj + 1;
  }
  if (i < a.size()) ops.push_back({kSkip, a.size() - i, 0, 0});
  push_insert(j, b.size());
  if (!ops.empty() && ops.back().code == kCopy && i == a.size() && j == b.size()) ops.pop_back();
  return ops;
}

std::size_t script_size(const std::vector<Op>& ops) {
  std::size_t total = 0;
  for (const auto& op : ops) {
    if (op.code == kInsert) {
      total += 1 + varint_size(op.bytes) + op.bytes;
    } else {
      total += 1 + varint_size(op.count);
    }
  }
  return total;
}

void write_script(std::string& out, const std::vector<Op>& ops, const LineIndex& b) {
  for (const auto& op : ops) {
    out.push_back(op.code);
    if (op.code == kInsert) {
      put_varint(out, op.bytes);
      for (std::size_t j = op.count; j < op.count + op.lines; ++j) out.append(b.line(j));
    } else {
      put_varint(out, op.count);
    }
  }
}

std::string run_script(std::string_view src, std::string_view ops) {
  const LineIndex a(src);
  std::string out;
  out.reserve(src.size());
  std::size_t i = 0;
  Reader r{ops};
  while (!r.done()) {
    const char code = r.byte();
    const std::uint64_t n = r.varint();
    switch (code) {
      case kCopy:
        if (n > a.size() - i) corrupt("copy past end of source");
        for (std::uint64_t k = 0; k < n; ++k) out.append(a.line(i++));
        break;
      case kSkip:
        if (n > a.size() - i) corrupt("skip past end of source");
        i += n;
        break;
      case kInsert:
        out.append(r.bytes(n));
        break;
      default:
        corrupt("unknown opcode");
    }
  }
  while (i < a.size()) out.append(a.line(i++));
  return out;
}

void put_u16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>(v >> 8));
}

void put_u64(std::string& out, std::uint64_t v) {
  for (int k = 0; k < 8; ++k) out.push_back(static_cast<char>((v >> (8 * k)) & 0xff));
}

std::uint64_t get_le(std::string_view s, std::size_t at, int width) {
  std::uint64_t v = 0;
  for (int k = 0; k < width; ++k) {
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(s[at + k])) << (8 * k);
  }
  return v;
}

// Undirected artifacts always run from the smaller side (then the
// lexicographically smaller one), so both orientations of a pair encode to
// the same bytes and cost the same.
bool canonical_first(const LineIndex& a, const LineIndex& b) {
  if (a.bytes() != b.bytes()) return a.bytes() < b.bytes();
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (a.line(k) != b.line(k)) return a.line(k) < b.line(k);
  }
  return a.size() <= b.size();
}

}  // namespace

Cost default_recreation(ArtifactKind, Cost storage_cost) { return storage_cost; }

DeltaArtifact make_full(std::string_view content) {
  DeltaArtifact a;
  a.kind = ArtifactKind::full;
  a.target = sha256(content);
  a.payload.assign(content);
  return a;
}

DeltaArtifact compute_delta(std::string_view src, std::string_view dst, DeltaMode mode) {
  const LineIndex a(src), b(dst);
  DeltaArtifact out;
  out.source = sha256(src);
  out.target = sha256(dst);
  if (mode == DeltaMode::directed) {
    const auto forward = script(a, b);
    out.kind = ArtifactKind::forward;
    out.payload.reserve(script_size(forward));
    write_script(out.payload, forward, b);
    return out;
  }
  out.kind = ArtifactKind::undirected;
  const bool keep = canonical_first(a, b);
  const LineIndex& x = keep ? a : b;
  const LineIndex& y = keep ? b : a;
  if (!keep) std::swap(out.source, out.target);
  const auto to_y = script(x, y);
  const auto to_x = script(y, x);
  const auto to_y_size = script_size(to_y);
  out.payload.reserve(varint_size(to_y_size) + to_y_size + script_size(to_x));
  put_varint(out.payload, to_y_size);
  write_script(out.payload, to_y, y);
  write_script(out.payload, to_x, x);
  return out;
}

Cost delta_cost(const LineIndex& src, const LineIndex& dst, DeltaMode mode) {
  if (mode == DeltaMode::directed) {
    return static_cast<Cost>(kArtifactHeaderSize + script_size(script(src, dst)));
  }
  const bool keep = canonical_first(src, dst);
  const LineIndex& x = keep ? src : dst;
  const LineIndex& y = keep ? dst : src;
  const auto to_y = script_size(script(x, y));
  return static_cast<Cost>(kArtifactHeaderSize + varint_size(to_y) + to_y +
                           script_size(script(y, x)));
}

std::string apply_delta(std::string_view src, const DeltaArtifact& artifact) {
  std::string out;
  Digest expect = artifact.target;
  switch (artifact.kind) {
    case ArtifactKind::full:
      out = artifact.payload;
      break;
    case ArtifactKind::forward:
      if (sha256(src) != artifact.source) {
        fail(ErrorKind::corruption, "wrong base version");
      }
      out = run_script(src, artifact.payload);
      break;
    case ArtifactKind::undirected: {
      Reader r{artifact.payload};
      const auto forward_size = r.varint();
      const auto forward = r.bytes(forward_size);
      const auto backward = artifact.payload.substr(r.pos);
      const auto have = sha256(src);
      if (have == artifact.source) {
        out = run_script(src, forward);
      } else if (have == artifact.target) {
        out = run_script(src, backward);
        expect = artifact.source;
      } else {
        fail(ErrorKind::corruption, "wrong base version");
      }
      break;
    }
  }
  if (sha256(out) != expect) fail(ErrorKind::corruption, "delta output digest mismatch");
  return out;
}

std::string encode(const DeltaArtifact& artifact) {
  std::string out;
  out.reserve(kArtifactHeaderSize + artifact.payload.size());
  out.append(kMagic, sizeof kMagic);
  put_u16(out, kArtifactFormatVersion);
  out.push_back(static_cast<char>(artifact.kind));
  out.push_back('\0');
  out.append(reinterpret_cast<const char*>(artifact.source.data()), artifact.source.size());
  out.append(reinterpret_cast<const char*>(artifact.target.data()), artifact.target.size());
  put_u64(out, artifact.payload.size());
  out.append(artifact.payload);
  return out;
}

DeltaArtifact decode(std::string_view bytes) {
  if (bytes.size() < kArtifactHeaderSize) corrupt("shorter than the header");
  if (std::memcmp(bytes.data(), kMagic, sizeof kMagic) != 0) corrupt("bad magic");
  if (get_le(bytes, 4, 2) != kArtifactFormatVersion) corrupt("unsupported format version");
  const auto kind = static_cast<unsigned char>(bytes[6]);
  if (kind > static_cast<unsigned char>(ArtifactKind::undirected)) corrupt("unknown kind");
  DeltaArtifact a;
  a.kind = static_cast<ArtifactKind>(kind);
  std::memcpy(a.source.data(), bytes.data() + 8, a.source.size());
  std::memcpy(a.target.data(), bytes.data() + 40, a.target.size());
  const auto length = get_le(bytes, 72, 8);
  if (length != bytes.size() - kArtifactHeaderSize) corrupt("payload length mismatch");
  a.payload.assign(bytes.substr(kArtifactHeaderSize));
  return a;
}

}  // namespace dvs
