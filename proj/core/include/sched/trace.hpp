#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <vector>

namespace sched {

/// State snapshot at the start of round k, plus the network activity of the
/// step that produced it (zero for the initial row).
struct TraceRow {
  std::int64_t k = 0;
  double cost = 0.0;      // F(x(k))
  double feas_gap = 0.0;  // |sum_i (x_i - b_i)|
  int realized_edges = 0;
  int delivered_msgs = 0;
  std::vector<double> x;
  std::vector<double> y;
};

/// Per-round time series of one simulation run. f_star is attached once an
/// oracle solution is known; until then the residual column is NaN.
struct Trace {
  std::vector<TraceRow> rows;
  double f_star = std::numeric_limits<double>::quiet_NaN();

  bool empty() const noexcept { return rows.empty(); }
  int agent_count() const noexcept {
    return rows.empty() ? 0 : static_cast<int>(rows.front().x.size());
  }
  const TraceRow& back() const { return rows.back(); }
};

/// CSV with header k,F,residual,feas_gap,edges,msgs,x_0..x_{n-1},y_0..y_{n-1};
/// floats printed with 17 significant digits so values round-trip exactly.
void write_trace_csv(const Trace& trace, std::ostream& out);
Trace read_trace_csv(std::istream& in);

}  // namespace sched
