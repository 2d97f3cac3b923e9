#pragma once

#include <cstddef>
#include <string>

#include "dvs/core/solver_graph.hpp"

namespace dvs {

struct IlpStats {
  std::size_t binaries = 0;         // one x_i_j per emitted edge
  std::size_t assignment_rows = 0;  // one per version
  std::size_t link_rows = 0;        // one big-C row per emitted edge
  std::size_t bound_rows = 0;       // 0 <= r_j <= theta, one per version
  std::size_t omitted_edges = 0;    // edges whose recreation cost alone exceeds theta
  Cost big_c = 0;                   // 2 * theta
};

struct IlpModel {
  std::string text;
  IlpStats stats;
};

/// Min-storage under a per-version recreation bound `theta`, as a
/// mixed-integer program in CPLEX LP format:
///
///   minimize    sum  delta_ij * x_i_j
///   subject to  sum_i x_i_j = 1                          for every version j
///               r_i - r_j + C x_i_j <= C - phi_ij        for every edge (i, j)
///               0 <= r_j <= theta,  r_0 = 0 (substituted), x binary
///
/// with C = 2 * theta. Edges with phi_ij > theta can never be used and are
/// left out, which keeps every x = 0 row slack. Throws invalid_input for
/// theta <= 0 and infeasible when some version has no usable incoming edge.
IlpModel export_ilp(const SolverGraph& sg, Cost theta);

}  // namespace dvs
