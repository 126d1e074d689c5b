#include "sched/analysis.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "sched/errors.hpp"
#include "sched/graph.hpp"
#include "sched/nonlinearity.hpp"
#include "sched/protocol.hpp"
#include "sched/rng.hpp"

using namespace sched;
using analysis::OptimalSolution;
using costs::CompositeCost;
using costs::CpuCost;
using costs::Problem;
using costs::QuadraticCost;

namespace {

// Exhaustive grid search over the feasible line (n=2) or plane (n=3):
// a coarse pass over a wide box, then a 1e-3 pass around the coarse minimum.
// Independent of the bisection path under test.
std::vector<double> brute_force(const Problem& p, double lo, double hi) {
  const double total = p.total_demand();
  const int n = p.size();
  REQUIRE((n == 2 || n == 3));
  std::vector<double> best;
  double best_f = std::numeric_limits<double>::infinity();
  const auto consider = [&](const std::vector<double>& x) {
    const double f = p.value(x);
    if (f < best_f) {
      best_f = f;
      best = x;
    }
  };
  const auto scan = [&](double a_lo, double a_hi, double b_lo, double b_hi, double step) {
    if (n == 2) {
      for (double x0 = a_lo; x0 <= a_hi; x0 += step) consider({x0, total - x0});
    } else {
      for (double x0 = a_lo; x0 <= a_hi; x0 += step)
        for (double x1 = b_lo; x1 <= b_hi; x1 += step)
          consider({x0, x1, total - x0 - x1});
    }
  };
  scan(lo, hi, lo, hi, n == 2 ? 0.01 : 0.05);
  const std::vector<double> coarse = best;
  const double r = n == 2 ? 0.02 : 0.1;
  scan(coarse[0] - r, coarse[0] + r, n == 3 ? coarse[1] - r : 0.0,
       n == 3 ? coarse[1] + r : 0.0, 1e-3);
  return best;
}

}  // namespace

TEST_CASE("oracle solves the two-parabola instance exactly") {
  // f1 = x^2, f2 = 2x^2, total demand 3: stationarity 2x1 = 4x2 and
  // feasibility x1 + x2 = 3 give lambda = 4, x = (2, 1).
  Problem p;
  p.costs = {CompositeCost(QuadraticCost{1.0, 0.0, 0.0}),
             CompositeCost(QuadraticCost{2.0, 0.0, 0.0})};
  p.demands = {1.5, 1.5};
  const OptimalSolution opt = analysis::solve_oracle(p);
  CHECK(opt.lambda_star == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(opt.x_star[0] == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(opt.x_star[1] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(opt.f_star == doctest::Approx(6.0).epsilon(1e-10));

  const std::vector<double> bf = brute_force(p, -1.0, 4.0);
  CHECK(std::fabs(bf[0] - opt.x_star[0]) <= 2e-3);
  CHECK(std::fabs(bf[1] - opt.x_star[1]) <= 2e-3);
}

TEST_CASE("identical quadratics split the demand symmetrically") {
  Problem p;
  p.costs.assign(5, CompositeCost(QuadraticCost{0.4, 2.0, 1.0}));
  p.demands.assign(5, 7.25);
  const OptimalSolution opt = analysis::solve_oracle(p);
  for (double x : opt.x_star) CHECK(x == doctest::Approx(7.25).epsilon(1e-10));
}

TEST_CASE("CPU agents at their demands are already optimal") {
  Problem p;
  p.costs = {CompositeCost(CpuCost{100.0, 20.0}), CompositeCost(CpuCost{50.0, 30.0}),
             CompositeCost(CpuCost{80.0, 10.0})};
  p.demands = {20.0, 30.0, 10.0};
  const OptimalSolution opt = analysis::solve_oracle(p);
  CHECK(opt.f_star == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(opt.x_star[0] == doctest::Approx(20.0).epsilon(1e-10));
  CHECK(opt.x_star[1] == doctest::Approx(30.0).epsilon(1e-10));
  CHECK(opt.x_star[2] == doctest::Approx(10.0).epsilon(1e-10));
}

TEST_CASE("oracle matches brute force on random small quadratic problems") {
  rng::Stream stream(404);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + trial % 2;
    Problem p;
    for (int i = 0; i < n; ++i) {
      p.costs.emplace_back(QuadraticCost{stream.uniform(0.2, 2.0), stream.uniform(-3.0, 3.0),
                                         stream.uniform(0.0, 5.0)});
      p.demands.push_back(stream.uniform(-2.0, 6.0));
    }
    const OptimalSolution opt = analysis::solve_oracle(p);
    const std::vector<double> bf = brute_force(p, -15.0, 15.0);
    for (int i = 0; i < n; ++i)
      CHECK(std::fabs(bf[static_cast<std::size_t>(i)] -
                      opt.x_star[static_cast<std::size_t>(i)]) <= 2e-3);
  }
}

TEST_CASE("oracle feasibility and stationarity invariants on penalized problems") {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
    const Problem p = costs::sample_academic_costs(20, seed);
    const OptimalSolution opt = analysis::solve_oracle(p);
    CHECK(analysis::feasibility_gap(p, opt.x_star) <= 1e-10 * std::fabs(p.total_demand()));
    CHECK(analysis::gradient_dispersion(p, opt.x_star) <= 1e-8);
  }
}

TEST_CASE("step bound formula") {
  // Identity map (kappa = K = 1), complete 2-graph (lambda = 2), u = 1.
  const auto b0 = analysis::step_bound(1.0, 1.0, 2.0, 2.0, 1.0, 0);
  CHECK(b0.eta_bar == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(b0.eta_tau_bar == b0.eta_bar);

  const auto b1 = analysis::step_bound(1.0, 1.0, 2.0, 2.0, 1.0, 1);
  CHECK(b1.eta_tau_bar == doctest::Approx(0.25).epsilon(1e-15));

  // With kappa = K = 1 and a flat spectrum the bound is 1/(u lambda).
  for (double lam : {1.0, 2.0, 5.0, 9.0}) {
    const auto b = analysis::step_bound(1.0, 1.0, lam, lam, 0.7, 0);
    CHECK(b.eta_bar == doctest::Approx(1.0 / (0.7 * lam)).epsilon(1e-15));
  }
  const auto grow = [](double lam) {
    return analysis::step_bound(1.0, 1.0, lam, lam, 0.7, 0).eta_bar;
  };
  CHECK(grow(2.0) > grow(3.0));  // decreasing in lambda

  CHECK_THROWS_AS(analysis::step_bound(0.0, 1.0, 1.0, 1.0, 1.0, 0), Error);
  CHECK_THROWS_AS(analysis::step_bound(1.0, 1.0, 1.0, 1.0, 1.0, -1), Error);
}

TEST_CASE("delayed bound is the exact division of the delay-free bound") {
  rng::Stream stream(5150);
  for (int trial = 0; trial < 200; ++trial) {
    const double kappa = stream.uniform(0.5, 1.0);
    const double K = kappa + stream.uniform(0.0, 0.5);
    const double l2 = stream.uniform(0.1, 3.0);
    const double ln = l2 + stream.uniform(0.0, 6.0);
    const double u = stream.uniform(0.05, 2.0);
    for (int tau : {0, 1, 2, 4, 7}) {
      const auto b = analysis::step_bound(kappa, K, l2, ln, u, tau);
      // Defining relation, bit-exact.
      CHECK(b.eta_tau_bar == b.eta_bar / static_cast<double>(tau + 1));
      // The multiplicative restatement can round; 1 ulp covers it.
      const double back = b.eta_tau_bar * static_cast<double>(tau + 1);
      CHECK(std::fabs(back - b.eta_bar) <=
            std::numeric_limits<double>::epsilon() * b.eta_bar);
    }
  }
}

TEST_CASE("residual series: definition and trivial cases") {
  Problem p;
  p.costs = {CompositeCost(QuadraticCost{1.0, 0.0, 0.0}),
             CompositeCost(QuadraticCost{2.0, 0.0, 0.0})};
  p.demands = {1.5, 1.5};
  const OptimalSolution opt = analysis::solve_oracle(p);

  Trace trace;
  TraceRow at_start;
  at_start.x = p.demands;
  at_start.cost = p.value(at_start.x);
  TraceRow at_opt;
  at_opt.x = opt.x_star;
  at_opt.cost = p.value(at_opt.x);
  trace.rows = {at_start, at_opt};
  const std::vector<double> res = analysis::residual(trace, opt);
  CHECK(res[0] == doctest::Approx(p.value(p.demands) - opt.f_star).epsilon(1e-12));
  CHECK(res[1] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(res[1] >= -1e-12);

  OptimalSolution wrong_dim = opt;
  wrong_dim.x_star.push_back(0.0);
  CHECK_THROWS_AS(analysis::residual(trace, wrong_dim), Error);
}

TEST_CASE("residual decreases monotonically for mu = 0 below the bound") {
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    const Problem p = costs::sample_academic_costs(8, seed);
    graph::Topology base = graph::generate_er(8, 0.6, 1.0, seed);
    if (!graph::is_connected(base)) continue;
    const auto spec = graph::spectral_bounds(base);
    const auto bound =
        analysis::step_bound(1.0, 1.0, spec.lambda2, spec.lambdaN, p.curvature_bound(), 0);
    graph::SwitchingNetwork net{std::move(base), 0.0, 0, 1};
    protocol::Engine engine(p, net, nonlin::SectorMap::identity(), protocol::DelayModel{},
                            0.9 * bound.eta_bar, 0.0);
    const Trace trace = engine.run(3000, 1e-3);
    const OptimalSolution opt = analysis::solve_oracle(p);
    const std::vector<double> res = analysis::residual(trace, opt);
    for (std::size_t k = 1; k < res.size(); ++k) CHECK(res[k] < res[k - 1]);
  }
}

TEST_CASE("dispersion and feasibility gap") {
  Problem p;
  p.costs.assign(2, CompositeCost(QuadraticCost{1.0, 0.0, 0.0}));
  p.demands = {1.0, 2.0};
  const std::vector<double> x{1.0, 2.0};
  CHECK(analysis::gradient_dispersion(p, x) == 2.0);  // gradients 2 and 4
  CHECK(analysis::feasibility_gap(p, x) == 0.0);      // x = b at initialization

  const OptimalSolution opt = analysis::solve_oracle(p);
  CHECK(analysis::gradient_dispersion(p, opt.x_star) <= 1e-8);
}
