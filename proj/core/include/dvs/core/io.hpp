#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "dvs/core/cost_matrices.hpp"
#include "dvs/core/evaluate.hpp"
#include "dvs/core/storage_plan.hpp"

// Line-oriented interchange formats. Fields are tab separated, lines end in
// LF, blank lines and lines starting with '#' are skipped on input.
//
//   matrix file    first line `directed` or `undirected`, then one record
//                  `i  j  delta_storage  phi_recreation` per revealed entry;
//                  materialization costs use i == j. Undirected files list
//                  each unordered pair once (i < j) on output and accept
//                  either or both orientations on input.
//   plan file      `i  parent` for every version 1..n.
//   workload file  `i  weight` for every version 1..n.
namespace dvs::io {

CostMatrices read_matrices(std::istream& in);
void write_matrices(std::ostream& out, const CostMatrices& matrices);

StoragePlan read_plan(std::istream& in);
void write_plan(std::ostream& out, const StoragePlan& plan);

WorkloadProfile read_workload(std::istream& in);
void write_workload(std::ostream& out, const WorkloadProfile& workload);

CostMatrices load_matrices(const std::filesystem::path& path);
void save_matrices(const std::filesystem::path& path, const CostMatrices& matrices);
StoragePlan load_plan(const std::filesystem::path& path);
void save_plan(const std::filesystem::path& path, const StoragePlan& plan);
WorkloadProfile load_workload(const std::filesystem::path& path);
void save_workload(const std::filesystem::path& path, const WorkloadProfile& workload);

/// Whole-file helpers shared by the corpus and repository code.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

}  // namespace dvs::io
