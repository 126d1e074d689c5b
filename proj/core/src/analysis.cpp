#include "sched/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sched/errors.hpp"

namespace sched::analysis {
namespace {

// x with df(x) = lambda. Strict convexity makes the gradient strictly
// increasing, so the closed forms and the bisection below are both exact
// inversions.
double inverse_gradient(const costs::CompositeCost& cost, double lambda) {
  if (!cost.penalty()) {
    if (const auto* q = std::get_if<costs::QuadraticCost>(&cost.base()))
      return (lambda - q->d) / (2.0 * q->g);
    if (const auto* c = std::get_if<costs::CpuCost>(&cost.base()))
      return c->rho + c->pi_max * lambda;
  }
  double lo = -1.0, hi = 1.0;
  for (int i = 0; i < 200 && cost.gradient(lo) > lambda; ++i) lo *= 2.0;
  for (int i = 0; i < 200 && cost.gradient(hi) < lambda; ++i) hi *= 2.0;
  if (cost.gradient(lo) > lambda || cost.gradient(hi) < lambda)
    throw Error(Errc::bracket_failure, "gradient does not reach lambda");
  while (hi - lo > 1e-14 * std::max({1.0, std::fabs(lo), std::fabs(hi)})) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket at double resolution
    (cost.gradient(mid) < lambda ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

OptimalSolution solve_oracle(const costs::Problem& p, double tol) {
  const int n = p.size();
  if (n < 1) throw Error(Errc::invalid_parameter, "empty problem");
  if (static_cast<int>(p.demands.size()) != n)
    throw Error(Errc::mismatched_size, "one demand per agent required");
  const double total = p.total_demand();
  const double target_gap = tol * std::max(1.0, std::fabs(total));

  const auto constraint = [&](double lambda) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i)
      sum += inverse_gradient(p.costs[static_cast<std::size_t>(i)], lambda);
    return sum - total;
  };

  // Bracket lambda from the gradient range over a doubling state interval.
  double x_range = 1.0;
  for (double bi : p.demands) x_range = std::max(x_range, std::fabs(bi));
  double lam_lo = 0.0, lam_hi = 0.0;
  bool bracketed = false;
  for (int attempt = 0; attempt < 60; ++attempt) {
    lam_lo = std::numeric_limits<double>::infinity();
    lam_hi = -lam_lo;
    for (const costs::CompositeCost& c : p.costs) {
      lam_lo = std::min(lam_lo, c.gradient(-x_range));
      lam_hi = std::max(lam_hi, c.gradient(x_range));
    }
    if (constraint(lam_lo) <= 0.0 && constraint(lam_hi) >= 0.0) {
      bracketed = true;
      break;
    }
    x_range *= 2.0;
  }
  if (!bracketed)
    throw Error(Errc::bracket_failure, "could not bracket the multiplier");

  double lambda = 0.5 * (lam_lo + lam_hi);
  for (int it = 0; it < 400; ++it) {
    lambda = 0.5 * (lam_lo + lam_hi);
    const double h = constraint(lambda);
    if (std::fabs(h) <= target_gap) break;
    (h < 0.0 ? lam_lo : lam_hi) = lambda;
    if (lam_hi - lam_lo <= 1e-16 * std::max(1.0, std::fabs(lambda))) break;
  }

  OptimalSolution opt;
  opt.lambda_star = lambda;
  opt.x_star.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    opt.x_star[static_cast<std::size_t>(i)] =
        inverse_gradient(p.costs[static_cast<std::size_t>(i)], lambda);
  opt.f_star = p.value(opt.x_star);
  return opt;
}

StepBound step_bound(double kappa, double K, double lambda2, double lambdaN,
                     double u, int tau_bar) {
  if (!(kappa > 0.0 && K > 0.0 && lambda2 > 0.0 && lambdaN > 0.0 && u > 0.0))
    throw Error(Errc::invalid_parameter, "step bound inputs must be positive");
  if (tau_bar < 0) throw Error(Errc::invalid_parameter, "tau_bar must be >= 0");
  StepBound b;
  b.tau_bar = tau_bar;
  b.eta_bar = kappa * lambda2 / (u * lambdaN * lambdaN * K * K);
  b.eta_tau_bar = b.eta_bar / static_cast<double>(tau_bar + 1);
  return b;
}

std::vector<double> residual(const Trace& trace, const OptimalSolution& opt) {
  if (trace.empty()) throw Error(Errc::empty_trace, "no rows");
  if (trace.agent_count() != static_cast<int>(opt.x_star.size()))
    throw Error(Errc::mismatched_size, "trace and solution dimensions differ");
  std::vector<double> series;
  series.reserve(trace.rows.size());
  for (const TraceRow& row : trace.rows) series.push_back(row.cost - opt.f_star);
  return series;
}

double gradient_dispersion(const costs::Problem& p, std::span<const double> x) {
  if (static_cast<int>(x.size()) != p.size())
    throw Error(Errc::mismatched_size, "state dimension != agent count");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int i = 0; i < p.size(); ++i) {
    const double g = p.gradient_at(i, x[static_cast<std::size_t>(i)]);
    lo = std::min(lo, g);
    hi = std::max(hi, g);
  }
  return hi - lo;
}

double feasibility_gap(const costs::Problem& p, std::span<const double> x) {
  if (static_cast<int>(x.size()) != p.size())
    throw Error(Errc::mismatched_size, "state dimension != agent count");
  double gap = 0.0;
  for (int i = 0; i < p.size(); ++i)
    gap += x[static_cast<std::size_t>(i)] - p.demands[static_cast<std::size_t>(i)];
  return std::fabs(gap);
}

}  // namespace sched::analysis
