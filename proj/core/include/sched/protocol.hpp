#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "sched/costs.hpp"
#include "sched/graph.hpp"
#include "sched/nonlinearity.hpp"
#include "sched/trace.hpp"

namespace sched::protocol {

/// Per-link transmission delay process. Each realized edge draws one delay
/// per round, shared by both directions (tau_ij = tau_ji), so the
/// antisymmetric gradient terms cancel round by round and the resource sum
/// stays constant. Draws are counter-based on (seed, round, edge): pure and
/// random-access.
struct DelayModel {
  int tau_bar = 0;
  std::uint64_t seed = 0;
  /// Optional override for the delay distribution. Must return values in
  /// [0, tau_bar]. Default: i.i.d. uniform integers on [0, tau_bar].
  std::function<int(std::int64_t round, std::uint64_t edge_key)> custom;

  int draw(std::int64_t round, std::uint64_t edge_key) const;
};

/// x_i(k), momentum y_i(k), and the ring of own transmitted payloads
/// g_l(df_i(k - r)) for r = 0..tau_bar, keyed by round stamp.
struct AgentState {
  double x = 0.0;
  double y = 0.0;
  std::vector<double> sent_payload;      // ring slot = stamp % (tau_bar + 1)
  std::vector<std::int64_t> sent_stamp;  // stamp tag per slot, -1 when empty
};

/// Gradient payload in flight. The stamp is the emission round; delivery
/// happens at stamp + delay.
struct Message {
  int sender = 0;
  int receiver = 0;
  std::int64_t stamp = 0;
  double payload = 0.0;
  double weight = 0.0;  // W_ij of the emitting link
};

struct StepSummary {
  std::int64_t round = 0;
  double cost = 0.0;
  double feas_gap = 0.0;
  int realized_edges = 0;
  int delivered_msgs = 0;
};

/// One consumed (edge, stamp, direction) event, for indicator bookkeeping.
struct Delivery {
  std::int64_t stamp = 0;
  int sender = 0;
  int receiver = 0;
  std::int64_t round = 0;
};

/// Synchronous round-based simulation of the delay-tolerant momentum
/// dynamics. The delay-free nonlinear dynamics fall out at tau_bar = 0, and
/// additionally the linear dynamics under the identity map.
///
/// Round k: realize the topology; for every realized edge draw one symmetric
/// delay r and schedule both directed payloads stamped k for round k + r;
/// consume every message due this round, each contributing
/// eta * W_ij * (payload_j(stamp) - own_payload_i(stamp)); then
/// x_i += contributions + mu * y_i, y_i := x_i(k+1) - x_i(k), and the new
/// payload g_l(df_i(k+1)) is buffered. Messages in flight survive later
/// failures of their link; an edge absent at emission time sends nothing.
///
/// A run is sequential and deterministic for fixed inputs and seeds.
/// Distinct engines may run fully in parallel.
class Engine {
 public:
  Engine(costs::Problem problem, graph::SwitchingNetwork network,
         nonlin::SectorMap map, DelayModel delays, double eta, double mu);

  /// Advance one round.
  StepSummary step();

  /// Execute up to `rounds` steps, recording a row per visited state
  /// (k = 0 .. rounds). Stops early once the gradient dispersion falls below
  /// stop_dispersion, when given. rounds must be >= 1.
  Trace run(std::int64_t rounds, std::optional<double> stop_dispersion = {});

  std::int64_t round() const noexcept { return round_; }
  int agent_count() const noexcept { return static_cast<int>(agents_.size()); }
  const std::vector<AgentState>& agents() const noexcept { return agents_; }
  std::vector<double> states() const;
  std::vector<double> momenta() const;
  const costs::Problem& problem() const noexcept { return problem_; }
  const graph::SwitchingNetwork& network() const noexcept { return network_; }

  double gradient_dispersion() const;

  /// When enabled, every consumed message is appended to deliveries().
  void record_deliveries(bool on) { record_deliveries_ = on; }
  const std::vector<Delivery>& deliveries() const noexcept { return deliveries_; }

 private:
  void buffer_payload(int agent, std::int64_t stamp);
  double own_payload(int agent, std::int64_t stamp) const;
  TraceRow snapshot(int realized_edges, int delivered_msgs) const;

  costs::Problem problem_;
  graph::SwitchingNetwork network_;
  nonlin::SectorMap map_;
  DelayModel delays_;
  double eta_;
  double mu_;

  std::int64_t round_ = 0;
  std::vector<AgentState> agents_;
  // In-flight queue: slot (delivery round % (tau_bar + 1)), insertion order.
  std::vector<std::vector<Message>> pending_;
  std::vector<double> delta_;  // per-round accumulator

  bool record_deliveries_ = false;
  std::vector<Delivery> deliveries_;
};

}  // namespace sched::protocol
