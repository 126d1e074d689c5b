// sched: momentum-based distributed resource scheduling simulator.
//
//   sched run    --config <file> [--out <dir>] [--seed <u64>]
//   sched preset <name> [--out <dir>] [--seed <u64>]
//   sched bound  --config <file>
//   sched oracle --config <file>
//   sched plot   --trace <csv> --series <name> [--log] [--out <svg>]
//
// Exit codes: 0 success, 1 config error, 2 runtime error. The environment
// variable SCHED_SEED overrides the master seed (the --seed flag wins over
// both the config file and the environment).

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sched/analysis.hpp"
#include "sched/errors.hpp"
#include "sched/harness.hpp"
#include "sched/plot.hpp"
#include "sched/trace.hpp"

namespace {

std::optional<std::uint64_t> env_seed() {
  const char* env = std::getenv("SCHED_SEED");
  if (!env || !*env) return std::nullopt;
  try {
    return std::stoull(env);
  } catch (const std::exception&) {
    throw sched::Error(sched::Errc::config_parse,
                       std::string("SCHED_SEED is not an unsigned integer: ") + env);
  }
}

std::uint64_t resolve_seed(std::uint64_t from_config, const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const auto env = env_seed()) return *env;
  return from_config;
}

void print_result_line(const sched::harness::RunResult& r) {
  const auto res = sched::analysis::residual(r.trace, r.opt);
  std::printf("[%s] rounds=%lld final_residual=%.6g max_feas_gap=%.3g%s\n",
              r.cfg.label.empty() ? "run" : r.cfg.label.c_str(),
              static_cast<long long>(r.trace.rows.back().k), res.back(),
              [&] {
                double g = 0.0;
                for (const auto& row : r.trace.rows) g = std::max(g, row.feas_gap);
                return g;
              }(),
              r.warnings.empty() ? "" : " (with warnings, see summary)");
}

int dispatch(int argc, char** argv) {
  CLI::App app{"momentum-based distributed resource scheduling simulator"};
  app.require_subcommand(1);

  std::string config_path, out_dir, preset_name, trace_path, series_name = "residual";
  std::string svg_out;
  std::optional<std::uint64_t> seed_flag;
  bool log_scale = false;

  CLI::App* run = app.add_subcommand("run", "run one experiment from a config file");
  run->add_option("--config", config_path, "config file (key=value or JSON)")->required();
  run->add_option("--out", out_dir, "output directory (overrides config)");
  run->add_option("--seed", seed_flag, "master seed (overrides config and SCHED_SEED)");

  CLI::App* preset = app.add_subcommand("preset", "run a named study preset");
  preset->add_option("name", preset_name, "fig3_ours | fig4 | fig5 | fig6_cpu | fig7")
      ->required();
  preset->add_option("--out", out_dir, "output directory (default out_<name>)");
  preset->add_option("--seed", seed_flag, "master seed (overrides SCHED_SEED)");

  CLI::App* bound = app.add_subcommand("bound", "print the admissible step-rate bound");
  bound->add_option("--config", config_path, "config file")->required();

  CLI::App* oracle = app.add_subcommand("oracle", "print the centralized optimal solution");
  oracle->add_option("--config", config_path, "config file")->required();

  CLI::App* plot = app.add_subcommand("plot", "render an SVG chart from a trace CSV");
  plot->add_option("--trace", trace_path, "trace CSV file")->required();
  plot->add_option("--series", series_name, "residual | states | momenta | feas_gap");
  plot->add_flag("--log", log_scale, "logarithmic y axis");
  plot->add_option("--out", svg_out, "output SVG path (default <trace>.<series>.svg)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  if (run->parsed()) {
    sched::harness::ExperimentConfig cfg = sched::harness::parse_config_file(config_path);
    cfg.master_seed = resolve_seed(cfg.master_seed, seed_flag);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    // Default termination: stop once the gradient dispersion drops below
    // 1e-8, or when the round budget runs out. stop_dispersion = 0 disables
    // the early stop.
    if (!cfg.stop_dispersion) cfg.stop_dispersion = 1e-8;
    const auto result = sched::harness::run_experiment(cfg, true);
    print_result_line(result);
    const std::string trace_name =
        cfg.label.empty() ? "trace.csv" : "trace_" + cfg.label + ".csv";
    std::printf("wrote %s/%s\n", cfg.out_dir.c_str(), trace_name.c_str());
    return 0;
  }
  if (preset->parsed()) {
    if (out_dir.empty()) out_dir = "out_" + preset_name;
    std::optional<std::uint64_t> seed = seed_flag;
    if (!seed) seed = env_seed();
    const auto results = sched::harness::run_preset(preset_name, out_dir, seed);
    for (const auto& r : results) print_result_line(r);
    std::printf("wrote %zu variant(s) under %s/\n", results.size(), out_dir.c_str());
    return 0;
  }
  if (bound->parsed()) {
    sched::harness::ExperimentConfig cfg = sched::harness::parse_config_file(config_path);
    cfg.master_seed = resolve_seed(cfg.master_seed, seed_flag);
    const auto info = sched::harness::compute_bound(cfg);
    std::printf("u = %.17g\n", info.u);
    if (info.spectrum_valid) {
      std::printf("lambda2 = %.17g\n", info.spectrum.lambda2);
      std::printf("lambdaN = %.17g\n", info.spectrum.lambdaN);
    }
    if (info.bound_valid) {
      std::printf("kappa = %.17g\n", info.kappa);
      std::printf("K = %.17g\n", info.K);
      std::printf("tau_bar = %d\n", info.bound.tau_bar);
      std::printf("eta_bar = %.17g\n", info.bound.eta_bar);
      std::printf("eta_tau_bar = %.17g\n", info.bound.eta_tau_bar);
    }
    for (const auto& w : info.warnings) std::printf("warning = %s\n", w.c_str());
    return 0;
  }
  if (oracle->parsed()) {
    sched::harness::ExperimentConfig cfg = sched::harness::parse_config_file(config_path);
    cfg.master_seed = resolve_seed(cfg.master_seed, seed_flag);
    const auto problem = sched::harness::build_problem(cfg);
    const auto opt = sched::analysis::solve_oracle(problem);
    std::printf("lambda_star = %.17g\n", opt.lambda_star);
    std::printf("f_star = %.17g\n", opt.f_star);
    for (std::size_t i = 0; i < opt.x_star.size(); ++i)
      std::printf("x_%zu = %.17g\n", i, opt.x_star[i]);
    return 0;
  }
  if (plot->parsed()) {
    std::ifstream in(trace_path, std::ios::binary);
    if (!in)
      throw sched::Error(sched::Errc::config_parse, "cannot open trace '" + trace_path + "'");
    const sched::Trace trace = sched::read_trace_csv(in);
    sched::plot::PlotSpec spec;
    spec.series = sched::plot::series_from_name(series_name);
    spec.log_y = log_scale;
    if (svg_out.empty()) svg_out = trace_path + "." + series_name + ".svg";
    sched::plot::emit_plot(trace, spec, svg_out);
    std::printf("wrote %s\n", svg_out.c_str());
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const sched::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    const bool config_error = e.code() == sched::Errc::config_parse ||
                              e.code() == sched::Errc::unknown_preset;
    return config_error ? 1 : 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
