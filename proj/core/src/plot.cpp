#include "sched/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <vector>

#include "sched/errors.hpp"

namespace sched::plot {
namespace {

constexpr int kWidth = 960;
constexpr int kHeight = 540;
constexpr int kLeft = 72, kRight = 24, kTop = 44, kBottom = 52;

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct Line {
  std::string label;
  std::string color;
  bool dashed = false;
  std::vector<double> y;  // one value per trace row, may contain NaN
};

}  // namespace

Series series_from_name(const std::string& name) {
  if (name == "residual") return Series::residual;
  if (name == "states") return Series::states;
  if (name == "momenta") return Series::momenta;
  if (name == "feas_gap") return Series::feas_gap;
  throw Error(Errc::config_parse, "unknown series '" + name +
                                      "' (expected residual, states, momenta or feas_gap)");
}

const char* to_string(Series s) noexcept {
  switch (s) {
    case Series::residual: return "residual";
    case Series::states: return "states";
    case Series::momenta: return "momenta";
    case Series::feas_gap: return "feas_gap";
  }
  return "?";
}

std::string render_svg(const Trace& trace, const PlotSpec& spec) {
  if (trace.empty()) throw Error(Errc::empty_trace, "cannot plot an empty trace");
  const int n = trace.agent_count();
  const std::size_t rows = trace.rows.size();

  std::vector<Line> lines;
  switch (spec.series) {
    case Series::residual: {
      if (std::isnan(trace.f_star))
        throw Error(Errc::invalid_parameter,
                    "residual series needs f_star attached to the trace");
      Line l{"residual", kPalette[0], false, {}};
      for (const TraceRow& r : trace.rows) l.y.push_back(r.cost - trace.f_star);
      lines.push_back(std::move(l));
      break;
    }
    case Series::feas_gap: {
      Line l{"feas_gap", kPalette[0], false, {}};
      for (const TraceRow& r : trace.rows) l.y.push_back(r.feas_gap);
      lines.push_back(std::move(l));
      break;
    }
    case Series::states:
    case Series::momenta: {
      const bool momenta = spec.series == Series::momenta;
      for (int i = 0; i < n; ++i) {
        Line l{(momenta ? "y_" : "x_") + std::to_string(i),
               kPalette[static_cast<std::size_t>(i) % std::size(kPalette)], false, {}};
        for (const TraceRow& r : trace.rows)
          l.y.push_back(momenta ? r.y[static_cast<std::size_t>(i)]
                                : r.x[static_cast<std::size_t>(i)]);
        lines.push_back(std::move(l));
      }
      if (!momenta) {
        Line avg{"average", "#000000", true, {}};
        for (const TraceRow& r : trace.rows) {
          double s = 0.0;
          for (double v : r.x) s += v;
          avg.y.push_back(s / static_cast<double>(n));
        }
        lines.push_back(std::move(avg));
      }
      break;
    }
  }

  // Data ranges. On a log axis nonpositive values clamp to the smallest
  // positive value present.
  double floor_pos = std::numeric_limits<double>::infinity();
  for (const Line& l : lines)
    for (double v : l.y)
      if (std::isfinite(v) && v > 0.0) floor_pos = std::min(floor_pos, v);
  if (!std::isfinite(floor_pos)) floor_pos = 1e-300;

  const auto transform = [&](double v) -> double {
    if (!spec.log_y) return v;
    return std::log10(std::max(v, floor_pos));
  };

  double ymin = std::numeric_limits<double>::infinity(), ymax = -ymin;
  for (const Line& l : lines)
    for (double v : l.y) {
      if (!std::isfinite(v)) continue;
      const double t = transform(v);
      ymin = std::min(ymin, t);
      ymax = std::max(ymax, t);
    }
  if (!std::isfinite(ymin)) {
    ymin = 0.0;
    ymax = 1.0;
  }
  if (ymax - ymin < 1e-12) {
    ymax += 0.5;
    ymin -= 0.5;
  }
  const double kmin = static_cast<double>(trace.rows.front().k);
  const double kmax = static_cast<double>(trace.rows.back().k);
  const double kspan = std::max(kmax - kmin, 1.0);

  const auto px = [&](double k) {
    return kLeft + (k - kmin) / kspan * (kWidth - kLeft - kRight);
  };
  const auto py = [&](double t) {
    return kHeight - kBottom - (t - ymin) / (ymax - ymin) * (kHeight - kTop - kBottom);
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(kWidth) +
         "\" height=\"" + std::to_string(kHeight) + "\" viewBox=\"0 0 " +
         std::to_string(kWidth) + " " + std::to_string(kHeight) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  const std::string title = spec.title.empty() ? to_string(spec.series) : spec.title;
  svg += "<text x=\"" + std::to_string(kWidth / 2) +
         "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
         title + "</text>\n";

  // Axes, ticks, grid.
  svg += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(kHeight - kBottom) + "\" x2=\"" +
         fmt(kWidth - kRight) + "\" y2=\"" + fmt(kHeight - kBottom) +
         "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(kTop) + "\" x2=\"" + fmt(kLeft) +
         "\" y2=\"" + fmt(kHeight - kBottom) + "\" stroke=\"black\"/>\n";
  constexpr int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const double f = static_cast<double>(i) / kTicks;
    const double kv = kmin + f * kspan;
    const double tv = ymin + f * (ymax - ymin);
    const double xp = px(kv), yp = py(tv);
    svg += "<line x1=\"" + fmt(xp) + "\" y1=\"" + fmt(kTop) + "\" x2=\"" + fmt(xp) +
           "\" y2=\"" + fmt(kHeight - kBottom) + "\" stroke=\"#dddddd\"/>\n";
    svg += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(yp) + "\" x2=\"" +
           fmt(kWidth - kRight) + "\" y2=\"" + fmt(yp) + "\" stroke=\"#dddddd\"/>\n";
    svg += "<text x=\"" + fmt(xp) + "\" y=\"" + fmt(kHeight - kBottom + 18) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
           fmt(kv) + "</text>\n";
    const double label = spec.log_y ? std::pow(10.0, tv) : tv;
    svg += "<text x=\"" + fmt(kLeft - 6) + "\" y=\"" + fmt(yp + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
           fmt(label) + "</text>\n";
  }
  svg += "<text x=\"" + std::to_string((kLeft + kWidth - kRight) / 2) + "\" y=\"" +
         std::to_string(kHeight - 12) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">round k"
         "</text>\n";

  for (const Line& l : lines) {
    std::string points;
    int count = 0;
    for (std::size_t r = 0; r < rows; ++r) {
      const double v = l.y[r];
      if (!std::isfinite(v)) continue;
      points += fmt(px(static_cast<double>(trace.rows[r].k))) + "," +
                fmt(py(transform(v))) + " ";
      ++count;
    }
    if (count == 0) continue;
    if (count == 1) {
      // Degenerate single-point series: draw a marker instead of a line.
      const std::size_t comma = points.find(',');
      svg += "<circle cx=\"" + points.substr(0, comma) + "\" cy=\"" +
             points.substr(comma + 1, points.size() - comma - 2) +
             "\" r=\"3\" fill=\"" + l.color + "\"/>\n";
      continue;
    }
    svg += "<polyline fill=\"none\" stroke=\"" + l.color + "\" stroke-width=\"" +
           (l.dashed ? std::string("2\" stroke-dasharray=\"6,4") : std::string("1.2")) +
           "\" points=\"" + points + "\"/>\n";
  }
  svg += "</svg>\n";
  return svg;
}

void emit_plot(const Trace& trace, const PlotSpec& spec, const std::string& path) {
  const std::string svg = render_svg(trace, spec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::invalid_parameter, "cannot open '" + path + "' for writing");
  out << svg;
}

}  // namespace sched::plot
