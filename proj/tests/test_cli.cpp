// End-to-end checks of the sched CLI: subcommands, file outputs, exit codes,
// and the SCHED_SEED override.

#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct CmdResult {
  int exit_code = -1;
  std::string output;
};

CmdResult run_cli(const std::string& args) {
  const std::string cmd = std::string(SCHED_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 512> buf{};
  CmdResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (std::fgets(buf.data(), static_cast<int>(buf.size()), pipe))
    result.output += buf.data();
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("sched_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_config(const fs::path& dir, const std::string& text) {
  const fs::path path = dir / "config.ini";
  std::ofstream out(path);
  out << text;
  return path;
}

const char* kConfig = R"(
[problem]
kind = academic
n = 8

[graph]
p = 0.5
failure_rate = 0.3
window = 3

[nonlinearity]
type = log
param = 0.0009765625

[delay]
tau_bar = 2

[run]
eta = 0.01
mu = 0.5
rounds = 60
seed = 11
)";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("bound subcommand prints the step bound") {
  const fs::path dir = fresh_dir("bound");
  const fs::path cfg = write_config(dir, kConfig);
  const CmdResult r = run_cli("bound --config " + cfg.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("eta_bar = ") != std::string::npos);
  CHECK(r.output.find("eta_tau_bar = ") != std::string::npos);
  CHECK(r.output.find("lambda2 = ") != std::string::npos);
  CHECK(r.output.find("kappa = ") != std::string::npos);
}

TEST_CASE("oracle subcommand prints the centralized solution") {
  const fs::path dir = fresh_dir("oracle");
  const fs::path cfg = write_config(dir, kConfig);
  const CmdResult r = run_cli("oracle --config " + cfg.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("lambda_star = ") != std::string::npos);
  CHECK(r.output.find("f_star = ") != std::string::npos);
  CHECK(r.output.find("x_0 = ") != std::string::npos);
  CHECK(r.output.find("x_7 = ") != std::string::npos);
}

TEST_CASE("run subcommand writes trace and summary; seed overrides apply") {
  const fs::path dir = fresh_dir("run");
  const fs::path cfg = write_config(dir, kConfig);
  const fs::path out_a = dir / "a";
  const fs::path out_b = dir / "b";
  const fs::path out_c = dir / "c";
  const fs::path out_d = dir / "d";

  CHECK(run_cli("run --config " + cfg.string() + " --out " + out_a.string()).exit_code == 0);
  CHECK(fs::exists(out_a / "trace.csv"));
  CHECK(fs::exists(out_a / "summary.txt"));

  CHECK(run_cli("run --config " + cfg.string() + " --out " + out_b.string()).exit_code == 0);
  CHECK(slurp(out_a / "trace.csv") == slurp(out_b / "trace.csv"));

  // SCHED_SEED overrides the config seed; --seed wins over both.
  CHECK(run_cli(std::string("run --config ") + cfg.string() + " --out " + out_c.string() +
                " --seed 999")
            .exit_code == 0);
  CHECK(slurp(out_a / "trace.csv") != slurp(out_c / "trace.csv"));

  const std::string env_cmd = "SCHED_SEED=999 " + std::string(SCHED_CLI_PATH) + " run --config " +
                              cfg.string() + " --out " + out_d.string() + " 2>&1";
  FILE* pipe = popen(env_cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[256];
  while (std::fgets(buf, sizeof buf, pipe)) {
  }
  REQUIRE(WEXITSTATUS(pclose(pipe)) == 0);
  CHECK(slurp(out_d / "trace.csv") == slurp(out_c / "trace.csv"));
}

TEST_CASE("plot subcommand renders an SVG from a trace") {
  const fs::path dir = fresh_dir("plot");
  const fs::path cfg = write_config(dir, kConfig);
  const fs::path out = dir / "out";
  REQUIRE(run_cli("run --config " + cfg.string() + " --out " + out.string()).exit_code == 0);
  const fs::path trace = out / "trace.csv";
  const fs::path svg = dir / "residual.svg";
  const CmdResult r = run_cli("plot --trace " + trace.string() +
                              " --series residual --log --out " + svg.string());
  CHECK(r.exit_code == 0);
  REQUIRE(fs::exists(svg));
  const std::string content = slurp(svg);
  CHECK(content.find("<svg") != std::string::npos);

  CHECK(run_cli("plot --trace " + trace.string() + " --series bogus").exit_code == 1);
}

TEST_CASE("exit codes: 1 for config errors, 2 for runtime errors") {
  const fs::path dir = fresh_dir("errors");
  CHECK(run_cli("run --config /nonexistent.ini").exit_code == 1);
  CHECK(run_cli("preset fig99").exit_code == 1);
  CHECK(run_cli("nonsense").exit_code == 1);

  const fs::path bad = write_config(dir, "[problem]\nbogus = 1\n");
  CHECK(run_cli("run --config " + bad.string()).exit_code == 1);

  // Config parses but the runtime rejects it (momentum out of range).
  const fs::path runtime_bad =
      write_config(dir, "[run]\nmu = 1.0\neta = 0.1\nrounds = 5\n");
  CHECK(run_cli("run --config " + runtime_bad.string()).exit_code == 2);
}

TEST_CASE("run subcommand stops early at the default dispersion target") {
  const fs::path dir = fresh_dir("earlystop");
  const fs::path cfg = write_config(dir, R"(
[problem]
kind = academic
n = 4

[graph]
p = 1.0

[nonlinearity]
type = identity

[run]
eta = 0.05
mu = 0.0
rounds = 200000
seed = 3
)");
  const fs::path out = dir / "out";
  const CmdResult r = run_cli("run --config " + cfg.string() + " --out " + out.string());
  CHECK(r.exit_code == 0);
  std::size_t rows = 0;
  std::ifstream in(out / "trace.csv");
  std::string line;
  while (std::getline(in, line)) ++rows;
  CHECK(rows > 2);
  CHECK(rows < 100000);  // stopped well before the 200000-round budget
}

TEST_CASE("preset subcommand runs all variants") {
  const fs::path dir = fresh_dir("preset");
  const CmdResult r =
      run_cli("preset fig3_ours --out " + (dir / "fig3").string() + " --seed 7");
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(dir / "fig3" / "trace_mu_0.9.csv"));
  CHECK(fs::exists(dir / "fig3" / "trace_mu_0.csv"));
  CHECK(fs::exists(dir / "fig3" / "summary_mu_0.9.txt"));
  CHECK(fs::exists(dir / "fig3" / "states_mu_0.9.svg"));
}
