#pragma once

// Test-only direct implementations of the delay-free dynamics, kept free of
// the engine's message queue and payload history so they can certify the
// special-case collapse independently.

#include <vector>

#include "sched/costs.hpp"
#include "sched/graph.hpp"
#include "sched/nonlinearity.hpp"

namespace refdyn {

/// One synchronous round of the nonlinear delay-free update over the realized
/// edge set: x_i += eta * sum_j W_ij (g(df_j) - g(df_i)) + mu * y_i, then
/// y_i = x_i(k+1) - x_i(k). Per-agent accumulation runs in edge order, the
/// same deterministic order the engine delivers in.
inline void delay_free_step(const sched::costs::Problem& p,
                            const sched::graph::Topology& now,
                            const sched::nonlin::SectorMap& map, double eta, double mu,
                            std::vector<double>& x, std::vector<double>& y) {
  const std::size_t n = static_cast<std::size_t>(p.size());
  std::vector<double> payload(n);
  for (std::size_t i = 0; i < n; ++i)
    payload[i] = map.apply(p.gradient_at(static_cast<int>(i), x[i]));
  std::vector<double> delta(n, 0.0);
  for (const sched::graph::Edge& e : now.edges()) {
    const auto u = static_cast<std::size_t>(e.u);
    const auto v = static_cast<std::size_t>(e.v);
    delta[v] += eta * e.w * (payload[u] - payload[v]);
    delta[u] += eta * e.w * (payload[v] - payload[u]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double prev = x[i];
    x[i] = prev + delta[i] + mu * y[i];
    y[i] = x[i] - prev;
  }
}

/// The linear special case: the identity map applied to raw gradients.
inline void linear_step(const sched::costs::Problem& p, const sched::graph::Topology& now,
                        double eta, double mu, std::vector<double>& x,
                        std::vector<double>& y) {
  const std::size_t n = static_cast<std::size_t>(p.size());
  std::vector<double> payload(n);
  for (std::size_t i = 0; i < n; ++i)
    payload[i] = p.gradient_at(static_cast<int>(i), x[i]);
  std::vector<double> delta(n, 0.0);
  for (const sched::graph::Edge& e : now.edges()) {
    const auto u = static_cast<std::size_t>(e.u);
    const auto v = static_cast<std::size_t>(e.v);
    delta[v] += eta * e.w * (payload[u] - payload[v]);
    delta[u] += eta * e.w * (payload[v] - payload[u]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double prev = x[i];
    x[i] = prev + delta[i] + mu * y[i];
    y[i] = x[i] - prev;
  }
}

}  // namespace refdyn
