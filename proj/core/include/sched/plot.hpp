#pragma once

#include <string>

#include "sched/trace.hpp"

namespace sched::plot {

enum class Series { residual, states, momenta, feas_gap };

Series series_from_name(const std::string& name);
const char* to_string(Series s) noexcept;

/// Which trace columns to draw and how.
struct PlotSpec {
  Series series = Series::residual;
  bool log_y = false;
  std::string title;
};

/// Self-contained SVG line chart of the selected series, one polyline per
/// column (states/momenta add the cross-agent average as an extra line).
/// Output is deterministic for identical inputs. Throws empty-trace when the
/// trace has no rows.
std::string render_svg(const Trace& trace, const PlotSpec& spec);

void emit_plot(const Trace& trace, const PlotSpec& spec, const std::string& path);

}  // namespace sched::plot
