#include "dvs/exact/ilp.hpp"

#include <sstream>
#include <vector>

#include "dvs/core/errors.hpp"

namespace dvs {

namespace {

std::string x_name(const SolverEdge& e) {
  return "x_" + std::to_string(e.from) + "_" + std::to_string(e.to);
}

// Appends terms, breaking lines so no row gets unreasonably long.
class Row {
 public:
  explicit Row(std::ostringstream& out) : out_(out) {}
  void term(Cost coefficient, const std::string& var) {
    if (count_ > 0 && count_ % 6 == 0) out_ << "\n   ";
    out_ << (count_ == 0 ? (coefficient < 0 ? "- " : "") : (coefficient < 0 ? " - " : " + "));
    const Cost magnitude = coefficient < 0 ? -coefficient : coefficient;
    if (magnitude != 1) out_ << magnitude << ' ';
    out_ << var;
    ++count_;
  }

 private:
  std::ostringstream& out_;
  std::size_t count_ = 0;
};

}  // namespace

IlpModel export_ilp(const SolverGraph& sg, Cost theta) {
  if (theta <= 0) fail(ErrorKind::invalid_input, "theta must be positive");
  const std::size_t n = sg.version_count();
  IlpModel model;
  auto& stats = model.stats;
  stats.big_c = 2 * theta;

  std::vector<std::uint32_t> usable;
  for (std::uint32_t e = 0; e < sg.edges().size(); ++e) {
    if (sg.edge(e).cost.recreation > theta) {
      ++stats.omitted_edges;
    } else {
      usable.push_back(e);
    }
  }
  std::vector<std::vector<std::uint32_t>> into(n + 1);
  for (auto e : usable) into[sg.edge(e).to].push_back(e);
  for (VersionId v = 1; v <= n; ++v) {
    if (into[v].empty()) {
      fail(ErrorKind::infeasible, "version " + std::to_string(v) +
                                      " has no incoming edge with recreation cost <= theta");
    }
  }

  std::ostringstream out;
  out << "\\ min storage s.t. every recreation cost <= " << theta << "\n";
  out << "Minimize\n obj: ";
  {
    Row row(out);
    for (auto e : usable) row.term(sg.edge(e).cost.storage, x_name(sg.edge(e)));
  }
  out << "\nSubject To\n";
  for (VersionId v = 1; v <= n; ++v) {
    out << " a_" << v << ": ";
    Row row(out);
    for (auto e : into[v]) row.term(1, x_name(sg.edge(e)));
    out << " = 1\n";
    ++stats.assignment_rows;
  }
  for (auto e : usable) {
    const auto& edge = sg.edge(e);
    out << " l_" << edge.from << '_' << edge.to << ": ";
    Row row(out);
    if (edge.from != kRoot) row.term(1, "r_" + std::to_string(edge.from));
    row.term(-1, "r_" + std::to_string(edge.to));
    row.term(stats.big_c, x_name(edge));
    out << " <= " << stats.big_c - edge.cost.recreation << '\n';
    ++stats.link_rows;
  }
  out << "Bounds\n";
  for (VersionId v = 1; v <= n; ++v) {
    out << " 0 <= r_" << v << " <= " << theta << '\n';
    ++stats.bound_rows;
  }
  out << "Binary\n";
  for (auto e : usable) {
    out << ' ' << x_name(sg.edge(e)) << '\n';
    ++stats.binaries;
  }
  out << "End\n";
  model.text = std::move(out).str();
  return model;
}

}  // namespace dvs
