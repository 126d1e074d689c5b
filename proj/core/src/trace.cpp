#include "sched/trace.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "sched/errors.hpp"

namespace sched {
namespace {

void put(std::ostream& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << buf;
}

}  // namespace

void write_trace_csv(const Trace& trace, std::ostream& out) {
  if (trace.empty()) throw Error(Errc::empty_trace, "nothing to serialize");
  const int n = trace.agent_count();
  out << "k,F,residual,feas_gap,edges,msgs";
  for (int i = 0; i < n; ++i) out << ",x_" << i;
  for (int i = 0; i < n; ++i) out << ",y_" << i;
  out << "\n";
  for (const TraceRow& row : trace.rows) {
    out << row.k << ',';
    put(out, row.cost);
    out << ',';
    put(out, row.cost - trace.f_star);
    out << ',';
    put(out, row.feas_gap);
    out << ',' << row.realized_edges << ',' << row.delivered_msgs;
    for (double v : row.x) {
      out << ',';
      put(out, v);
    }
    for (double v : row.y) {
      out << ',';
      put(out, v);
    }
    out << "\n";
  }
}

Trace read_trace_csv(std::istream& in) {
  std::string header;
  if (!std::getline(in, header))
    throw Error(Errc::config_parse, "empty trace file");
  int n = 0;
  {
    std::stringstream ss(header);
    std::string col;
    while (std::getline(ss, col, ',')) {
      if (col.rfind("x_", 0) == 0) ++n;
    }
  }
  Trace trace;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    TraceRow row;
    auto next = [&]() -> std::string {
      if (!std::getline(ss, field, ','))
        throw Error(Errc::config_parse, "truncated trace row");
      return field;
    };
    row.k = std::stoll(next());
    row.cost = std::stod(next());
    const double residual = std::stod(next());
    row.feas_gap = std::stod(next());
    row.realized_edges = std::stoi(next());
    row.delivered_msgs = std::stoi(next());
    row.x.reserve(static_cast<std::size_t>(n));
    row.y.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) row.x.push_back(std::stod(next()));
    for (int i = 0; i < n; ++i) row.y.push_back(std::stod(next()));
    if (trace.rows.empty() && !std::isnan(residual)) trace.f_star = row.cost - residual;
    trace.rows.push_back(std::move(row));
  }
  if (trace.empty()) throw Error(Errc::empty_trace, "trace file has no rows");
  return trace;
}

}  // namespace sched
