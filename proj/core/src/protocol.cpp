#include "sched/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sched/errors.hpp"
#include "sched/rng.hpp"

namespace sched::protocol {

int DelayModel::draw(std::int64_t round, std::uint64_t edge_key) const {
  if (tau_bar == 0) return 0;
  if (custom) {
    const int r = custom(round, edge_key);
    if (r < 0 || r > tau_bar)
      throw Error(Errc::invalid_parameter, "custom delay outside [0, tau_bar]");
    return r;
  }
  const std::uint64_t bits = rng::hash3(seed, static_cast<std::uint64_t>(round), edge_key);
  return static_cast<int>(bits % static_cast<std::uint64_t>(tau_bar + 1));
}

Engine::Engine(costs::Problem problem, graph::SwitchingNetwork network,
               nonlin::SectorMap map, DelayModel delays, double eta, double mu)
    : problem_(std::move(problem)),
      network_(std::move(network)),
      map_(std::move(map)),
      delays_(std::move(delays)),
      eta_(eta),
      mu_(mu) {
  if (!(mu_ >= 0.0 && mu_ < 1.0))
    throw Error(Errc::invalid_momentum, "momentum rate must satisfy 0 <= mu < 1");
  if (!(eta_ > 0.0)) throw Error(Errc::invalid_step, "step rate must be > 0");
  if (delays_.tau_bar < 0)
    throw Error(Errc::invalid_parameter, "max delay must be >= 0");
  const int n = problem_.size();
  if (n != network_.base.node_count())
    throw Error(Errc::mismatched_size, "problem size != network size");
  if (static_cast<int>(problem_.demands.size()) != n)
    throw Error(Errc::mismatched_size, "one demand per agent required");

  const std::size_t slots = static_cast<std::size_t>(delays_.tau_bar) + 1;
  agents_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    AgentState& a = agents_[static_cast<std::size_t>(i)];
    a.x = problem_.demands[static_cast<std::size_t>(i)];
    a.y = 0.0;
    a.sent_payload.assign(slots, 0.0);
    a.sent_stamp.assign(slots, -1);
    buffer_payload(i, 0);
  }
  pending_.resize(slots);
  delta_.resize(static_cast<std::size_t>(n));
}

void Engine::buffer_payload(int agent, std::int64_t stamp) {
  AgentState& a = agents_[static_cast<std::size_t>(agent)];
  const std::size_t slot =
      static_cast<std::size_t>(stamp % (delays_.tau_bar + 1));
  a.sent_payload[slot] = map_.apply(problem_.gradient_at(agent, a.x));
  a.sent_stamp[slot] = stamp;
}

double Engine::own_payload(int agent, std::int64_t stamp) const {
  const AgentState& a = agents_[static_cast<std::size_t>(agent)];
  const std::size_t slot =
      static_cast<std::size_t>(stamp % (delays_.tau_bar + 1));
  if (a.sent_stamp[slot] != stamp)
    throw Error(Errc::history_miss,
                "payload for stamp " + std::to_string(stamp) +
                    " already evicted; delay exceeded tau_bar");
  return a.sent_payload[slot];
}

StepSummary Engine::step() {
  const std::int64_t k = round_;
  const int slots = delays_.tau_bar + 1;

  // Realize the topology and schedule both directed payloads per live edge,
  // with one shared delay per edge and round.
  const graph::Topology now = graph::realize(network_, k);
  for (const graph::Edge& e : now.edges()) {
    const int r = delays_.draw(k, graph::edge_key(e.u, e.v));
    auto& due = pending_[static_cast<std::size_t>((k + r) % slots)];
    due.push_back(Message{e.u, e.v, k, own_payload(e.u, k), e.w});
    due.push_back(Message{e.v, e.u, k, own_payload(e.v, k), e.w});
  }

  // Consume everything due this round. A message from j stamped s pairs with
  // the receiver's own payload at the same stamp, keeping the sum of states
  // constant under arbitrary symmetric delays.
  auto& due = pending_[static_cast<std::size_t>(k % slots)];
  std::fill(delta_.begin(), delta_.end(), 0.0);
  for (const Message& msg : due) {
    const double term =
        eta_ * msg.weight * (msg.payload - own_payload(msg.receiver, msg.stamp));
    delta_[static_cast<std::size_t>(msg.receiver)] += term;
    if (record_deliveries_)
      deliveries_.push_back(Delivery{msg.stamp, msg.sender, msg.receiver, k});
  }
  const int delivered = static_cast<int>(due.size());
  due.clear();

  for (std::size_t i = 0; i < agents_.size(); ++i) {
    AgentState& a = agents_[i];
    const double prev = a.x;
    a.x = prev + delta_[i] + mu_ * a.y;
    a.y = a.x - prev;
  }
  round_ = k + 1;
  for (int i = 0; i < agent_count(); ++i) buffer_payload(i, round_);

  StepSummary summary;
  summary.round = k;
  summary.realized_edges = static_cast<int>(now.edge_count());
  summary.delivered_msgs = delivered;
  const std::vector<double> x = states();
  summary.cost = problem_.value(x);
  double gap = 0.0;
  for (int i = 0; i < agent_count(); ++i)
    gap += x[static_cast<std::size_t>(i)] - problem_.demands[static_cast<std::size_t>(i)];
  summary.feas_gap = std::fabs(gap);
  return summary;
}

std::vector<double> Engine::states() const {
  std::vector<double> x(agents_.size());
  for (std::size_t i = 0; i < agents_.size(); ++i) x[i] = agents_[i].x;
  return x;
}

std::vector<double> Engine::momenta() const {
  std::vector<double> y(agents_.size());
  for (std::size_t i = 0; i < agents_.size(); ++i) y[i] = agents_[i].y;
  return y;
}

double Engine::gradient_dispersion() const {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int i = 0; i < agent_count(); ++i) {
    const double g = problem_.gradient_at(i, agents_[static_cast<std::size_t>(i)].x);
    lo = std::min(lo, g);
    hi = std::max(hi, g);
  }
  return hi - lo;
}

TraceRow Engine::snapshot(int realized_edges, int delivered_msgs) const {
  TraceRow row;
  row.k = round_;
  row.x = states();
  row.y = momenta();
  row.cost = problem_.value(row.x);
  double gap = 0.0;
  for (int i = 0; i < agent_count(); ++i)
    gap += row.x[static_cast<std::size_t>(i)] - problem_.demands[static_cast<std::size_t>(i)];
  row.feas_gap = std::fabs(gap);
  row.realized_edges = realized_edges;
  row.delivered_msgs = delivered_msgs;
  return row;
}

Trace Engine::run(std::int64_t rounds, std::optional<double> stop_dispersion) {
  if (rounds < 1) throw Error(Errc::invalid_parameter, "round budget must be >= 1");
  Trace trace;
  trace.rows.reserve(static_cast<std::size_t>(rounds) + 1);
  trace.rows.push_back(snapshot(0, 0));
  for (std::int64_t t = 0; t < rounds; ++t) {
    if (stop_dispersion && gradient_dispersion() < *stop_dispersion) break;
    const StepSummary s = step();
    trace.rows.push_back(snapshot(s.realized_edges, s.delivered_msgs));
  }
  return trace;
}

}  // namespace sched::protocol
