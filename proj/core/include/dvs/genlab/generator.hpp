#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "dvs/core/version_graph.hpp"

namespace dvs {

struct Range {
  std::uint64_t lo = 1;
  std::uint64_t hi = 1;
};

/// Relative frequencies of the six edit commands.
struct EditMix {
  double add_rows = 2.0;
  double delete_rows = 2.0;
  double modify_rows = 4.0;
  double modify_column = 2.0;
  double add_column = 0.05;
  double remove_column = 0.05;
};

/// Shape of the generated tables and of the edits between versions.
struct DatasetParams {
  std::uint64_t rows = 10000;  // rows of the first version, header excluded
  std::uint64_t columns = 10;  // columns of the first version, id column included
  Range commands{1, 3};        // edit commands per derivation edge
  Range rows_per_edit{50, 250};  // rows touched by add/delete/modify rows
  Range column_cells{50, 250};   // cells touched by modify_column
  EditMix mix;
  std::uint64_t min_rows = 10;
  std::uint64_t max_rows = 100000;  // add_rows turns into modify_rows at this size
  std::uint64_t min_columns = 2;
  std::uint64_t max_columns = 20;
};

struct GenParams {
  std::uint64_t num_commits = 100;
  std::uint64_t branch_interval = 5;
  double branch_probability = 0.5;
  std::uint64_t branch_limit = 3;
  std::uint64_t branch_length = 5;
  std::uint64_t seed = 1;
  DatasetParams dataset;
};

/// Reads `key = value` lines ('#' starts a comment). Unknown keys and
/// malformed values throw invalid_input; missing keys keep the values in
/// `defaults`.
GenParams parse_gen_params(const std::string& text, const GenParams& defaults = {});
GenParams load_gen_params(const std::filesystem::path& path, const GenParams& defaults = {});
std::string format_gen_params(const GenParams& params);

struct EditCommand {
  enum class Kind { add_rows, delete_rows, modify_rows, modify_column, add_column, remove_column };
  Kind kind;
  std::uint64_t at = 0;     // first row, or column index for column commands
  std::uint64_t count = 0;  // rows touched; 0 for add/remove column
  std::uint64_t row = 0;    // modify_column: first row
};

/// A generated history: the graph plus, per version, the parent its content
/// is derived from (0 for the first version), the commands applied on that
/// edge, and the branch it belongs to (0 = trunk).
struct Skeleton {
  VersionGraph graph;
  std::vector<VersionId> content_parent;            // index v - 1
  std::vector<std::vector<EditCommand>> edits;      // index v - 1
  std::vector<std::uint32_t> branch;                // index v - 1
};

/// Trunk commits, with branches sprouting from the trunk tip after every
/// `branch_interval` trunk commits (probability `branch_probability`, count
/// uniform in [1, branch_limit], length uniform in [1, branch_length]). Each
/// branch tip is merged back by a later trunk commit; merges take their
/// content from the lower-numbered parent. Exactly num_commits versions.
Skeleton gen_version_graph(const GenParams& params);

/// CSV contents for every version (`result[v - 1]`). Column 0 holds row ids
/// that are never reused, so every data line is unique within a file.
std::vector<std::string> gen_datasets(const Skeleton& skeleton, const DatasetParams& dataset,
                                      std::uint64_t seed);

/// Corpus directory: versions/<id>.csv, graph.tsv (from<TAB>to per
/// derivation edge) and manifest (key = value).
void write_corpus(const std::filesystem::path& dir, const GenParams& params,
                  const Skeleton& skeleton, const std::vector<std::string>& contents);

struct Corpus {
  VersionGraph graph;
  std::vector<std::string> contents;  // index v - 1
};

Corpus read_corpus(const std::filesystem::path& dir);

}  // namespace dvs
