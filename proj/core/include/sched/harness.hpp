#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sched/analysis.hpp"
#include "sched/costs.hpp"
#include "sched/graph.hpp"
#include "sched/protocol.hpp"
#include "sched/trace.hpp"

namespace sched::harness {

/// One fully-specified run: problem, network, channel map, delays, rates and
/// output routing. Parsed from the key=value config format or its JSON
/// encoding; presets return ready-made instances.
struct ExperimentConfig {
  // [problem]
  std::string problem_kind = "academic";  // academic | cpu | file
  int n = 20;
  std::optional<std::uint64_t> problem_seed;
  std::string problem_path;  // kind = file

  // [graph]
  double p = 0.25;
  double w = 1.0;
  std::optional<std::uint64_t> graph_seed;
  double failure_rate = 0.0;
  int window = 3;

  // [nonlinearity]
  std::string map_type = "identity";  // identity | log | saturation | uniform
  double map_param = 0.0;
  double slope_floor = 0.05;

  // [delay]
  int tau_bar = 0;
  std::optional<std::uint64_t> delay_seed;

  // [run]
  double eta = 0.1;
  /// When set, the run ignores eta and uses this fraction of the admissible
  /// delayed bound, eta = eta_from_bound * eta_bar / (tau_bar + 1), computed
  /// from the realized spectrum. Requires a sector-bound nonlinearity.
  std::optional<double> eta_from_bound;
  double mu = 0.0;
  std::int64_t rounds = 1000;
  std::uint64_t master_seed = 1;
  std::optional<double> stop_dispersion;
  std::string out_dir = ".";
  std::string label;
  bool plots = false;
};

/// Step-bound inputs and outputs for a configured experiment. The governing
/// spectrum is the base graph when static, else the union graph over failure
/// realizations (window widened until the union connects).
struct BoundInfo {
  double u = 0.0;  // curvature bound of the configured problem
  graph::SpectralInfo spectrum;
  bool spectrum_valid = false;
  double kappa = 0.0, K = 0.0;
  analysis::StepBound bound;
  bool bound_valid = false;  // false for non-sector-bound maps
  std::vector<std::string> warnings;
};

BoundInfo compute_bound(const ExperimentConfig& cfg);

/// Everything produced by one run, before/after writing files.
struct RunResult {
  ExperimentConfig cfg;
  Trace trace;
  analysis::OptimalSolution opt;
  BoundInfo bound;
  std::string summary;  // key=value text written to summary.txt
  std::vector<std::string> warnings;
};

/// Parse a config from text or file. The format is sniffed: a leading '{'
/// selects the JSON encoding, anything else the sectioned key=value format.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

/// Per-agent cost/demand list as JSON (problem kind = file).
void write_problem_json(const costs::Problem& p, const std::string& path);
costs::Problem read_problem_json(const std::string& path);

/// Materialize the configured problem / network / map / delay model.
costs::Problem build_problem(const ExperimentConfig& cfg);
graph::SwitchingNetwork build_network(const ExperimentConfig& cfg);
nonlin::SectorMap build_map(const ExperimentConfig& cfg);
protocol::DelayModel build_delays(const ExperimentConfig& cfg);

/// Run one experiment; when write_files is set, emit trace_<label>.csv,
/// summary_<label>.txt and (with cfg.plots) SVG charts under cfg.out_dir.
RunResult run_experiment(const ExperimentConfig& cfg, bool write_files = true);

/// The study presets: fig3_ours, fig4, fig5, fig6_cpu, fig7. Each expands to
/// one config per swept parameter value, labelled accordingly.
std::vector<ExperimentConfig> preset(const std::string& name);
std::vector<std::string> preset_names();

/// Run every variant of a preset (engines execute in parallel) and write
/// outputs under out_dir. Returns one result per variant, input order.
std::vector<RunResult> run_preset(const std::string& name, const std::string& out_dir,
                                  std::optional<std::uint64_t> seed_override = {});

}  // namespace sched::harness
