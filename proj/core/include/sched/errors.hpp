#pragma once

#include <stdexcept>
#include <string>

namespace sched {

/// Machine-checkable failure kinds surfaced by the library.
enum class Errc {
  invalid_parameter,
  disconnected_graph,
  mismatched_size,
  degenerate_threshold,
  nonpositive_weight,
  unbounded_curvature,
  not_sector_bound,
  invalid_momentum,
  invalid_step,
  history_miss,
  bracket_failure,
  config_parse,
  unknown_preset,
  empty_trace,
  invariant_violation,
};

const char* to_string(Errc code) noexcept;

/// Exception carrying an Errc so callers can branch on the failure kind.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

inline const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_parameter: return "invalid-parameter";
    case Errc::disconnected_graph: return "disconnected-graph";
    case Errc::mismatched_size: return "mismatched-size";
    case Errc::degenerate_threshold: return "degenerate-threshold";
    case Errc::nonpositive_weight: return "nonpositive-weight";
    case Errc::unbounded_curvature: return "unbounded-curvature";
    case Errc::not_sector_bound: return "not-sector-bound";
    case Errc::invalid_momentum: return "invalid-momentum";
    case Errc::invalid_step: return "invalid-step";
    case Errc::history_miss: return "history-miss";
    case Errc::bracket_failure: return "bracket-failure";
    case Errc::config_parse: return "config-parse";
    case Errc::unknown_preset: return "unknown-preset";
    case Errc::empty_trace: return "empty-trace";
    case Errc::invariant_violation: return "invariant-violation";
  }
  return "unknown";
}

}  // namespace sched
