#include "vifw/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "vifw/solver.hpp"

namespace vifw {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

namespace {

void write_header(std::ostream& out, Index dim, bool with_s) {
  out << "k,tau,gamma,gap,dist";
  for (Index i = 0; i < dim; ++i) out << ",x" << i;
  if (with_s)
    for (Index i = 0; i < dim; ++i) out << ",s" << i;
  out << '\n';
}

std::ofstream open_or_throw(const std::string& path) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

}  // namespace

void write_trace_csv(std::ostream& out, const SolverTrace& trace) {
  if (trace.rows.empty()) throw std::invalid_argument("write_trace_csv: empty trace");
  const Index dim = trace.rows.front().x.size();
  write_header(out, dim, true);
  for (const auto& row : trace.rows) {
    out << row.k << ',' << format_double(row.tau) << ',' << format_double(row.gamma) << ','
        << format_double(row.gap) << ',';
    if (row.dist) out << format_double(*row.dist);
    for (Index i = 0; i < dim; ++i) out << ',' << format_double(row.x[i]);
    for (Index i = 0; i < dim; ++i) out << ',' << format_double(row.s[i]);
    out << '\n';
  }
}

void write_trace_csv_file(const std::string& path, const SolverTrace& trace) {
  auto out = open_or_throw(path);
  write_trace_csv(out, trace);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory, const FeasibleSet& set,
                          const Operator& op, TieRule rule) {
  const Index dim = trajectory.point(0).size();
  const double h = trajectory.time(1) - trajectory.time(0);
  write_header(out, dim, false);
  for (std::size_t j = 0; j < trajectory.size(); ++j) {
    const Vector& x = trajectory.point(j);
    const double gap = fw_gap(set, op, x, rule).gap;
    out << j << ',' << format_double(trajectory.time(j)) << ',' << format_double(h) << ','
        << format_double(gap) << ',';
    for (Index i = 0; i < dim; ++i) out << ',' << format_double(x[i]);
    out << '\n';
  }
}

void write_trajectory_csv_file(const std::string& path, const Trajectory& trajectory,
                               const FeasibleSet& set, const Operator& op, TieRule rule) {
  auto out = open_or_throw(path);
  write_trajectory_csv(out, trajectory, set, op, rule);
}

}  // namespace vifw
