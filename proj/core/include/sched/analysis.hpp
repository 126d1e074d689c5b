#pragma once

#include <span>
#include <vector>

#include "sched/costs.hpp"
#include "sched/trace.hpp"

namespace sched::analysis {

/// Centralized ground truth: the unique feasible minimizer, its cost, and
/// the common gradient value lambda* = df_i(x*_i) shared by every agent.
struct OptimalSolution {
  std::vector<double> x_star;
  double f_star = 0.0;
  double lambda_star = 0.0;
};

/// Admissible step-rate bounds. eta_bar covers the delay-free case,
/// eta_tau_bar = eta_bar / (tau_bar + 1) the delayed one; convergence is
/// guaranteed strictly below the bound.
struct StepBound {
  double eta_bar = 0.0;
  double eta_tau_bar = 0.0;
  int tau_bar = 0;
};

/// Solves the problem by Lagrange-multiplier bisection: finds lambda with
/// sum_i (df_i)^{-1}(lambda) = sum_i b_i. Inverse gradients use the closed
/// form for penalty-free quadratic and CPU costs and monotone bisection
/// otherwise. The bracket for lambda starts from the gradient range over an
/// initial state interval and doubles until the constraint changes sign;
/// bracket-failure signals malformed costs. tol is the absolute feasibility
/// target scaled by max(1, |sum b|).
OptimalSolution solve_oracle(const costs::Problem& p, double tol = 1e-12);

/// eta_bar = kappa lambda2 / (u lambdaN^2 K^2), eta_tau_bar = eta_bar/(tau_bar+1).
StepBound step_bound(double kappa, double K, double lambda2, double lambdaN,
                     double u, int tau_bar);

/// F(x(k)) - F(x*), one entry per trace row.
std::vector<double> residual(const Trace& trace, const OptimalSolution& opt);

/// max_i df_i(x_i) - min_i df_i(x_i). Zero exactly at the optimum.
double gradient_dispersion(const costs::Problem& p, std::span<const double> x);

/// |sum_i (x_i - b_i)|.
double feasibility_gap(const costs::Problem& p, std::span<const double> x);

}  // namespace sched::analysis
