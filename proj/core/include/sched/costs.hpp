#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace sched::costs {

/// g x^2 + d x + a with g > 0.
struct QuadraticCost {
  double g = 1.0;
  double d = 0.0;
  double a = 0.0;
};

/// (x - rho)^2 / (2 pi_max): CPU workload cost of a server with capacity
/// pi_max (clock cycles per allocation period) and local demand rho.
struct CpuCost {
  double pi_max = 1.0;
  double rho = 0.0;
};

/// sigma * max(x - M, 0)^c + sigma * max(m - x, 0)^c. Zero on [m, M];
/// continuously differentiable for c >= 2.
struct HardBoxPenalty {
  double m = 0.0;
  double M = 0.0;
  double sigma = 1.0;
  int c = 2;
};

/// (sigma/alpha) log(1 + e^{alpha (x - M)}) + (sigma/alpha) log(1 + e^{alpha (m - x)}).
/// Smooth everywhere, second derivative at most sigma*alpha/2.
struct SmoothLogPenalty {
  double m = 0.0;
  double M = 0.0;
  double sigma = 1.0;
  double alpha = 1.0;
};

using BaseCost = std::variant<QuadraticCost, CpuCost>;
using BoxPenalty = std::variant<HardBoxPenalty, SmoothLogPenalty>;

/// Strictly convex smooth local objective f_i: a base cost plus an optional
/// box-constraint penalty. Value and gradient are analytic and defined on all
/// of R. Immutable value type.
class CompositeCost {
 public:
  CompositeCost() = default;
  explicit CompositeCost(BaseCost base, std::optional<BoxPenalty> penalty = {});

  double value(double x) const;
  double gradient(double x) const;

  /// u with f'' < 2u everywhere, computed analytically: the halved supremum
  /// of the second derivative, summed over parts. Throws unbounded-curvature
  /// for a hard penalty with c >= 3.
  double curvature_bound() const;

  const BaseCost& base() const noexcept { return base_; }
  const std::optional<BoxPenalty>& penalty() const noexcept { return penalty_; }

 private:
  BaseCost base_{QuadraticCost{}};
  std::optional<BoxPenalty> penalty_;
};

/// One scheduling instance: per-agent costs f_i and local demands b_i.
/// The coupling constraint is sum_i (x_i - b_i) = 0.
struct Problem {
  std::vector<CompositeCost> costs;
  std::vector<double> demands;

  int size() const noexcept { return static_cast<int>(costs.size()); }
  double total_demand() const;

  /// F(x) = sum_i f_i(x_i).
  double value(std::span<const double> x) const;
  double gradient_at(int agent, double x) const { return costs[static_cast<std::size_t>(agent)].gradient(x); }

  /// Largest curvature bound across agents; the scalar u of the step bound.
  double curvature_bound() const;
};

/// Change of variables x_i := z_i a_i mapping the weighted problem
/// min sum f~_i(z_i) s.t. a^T z = b onto the standard form: returns costs
/// f_i(x) = f~_i(x / a_i) plus a per-agent split of b (uniform by default;
/// the dynamics only depend on the total, so the split is a free choice).
Problem normalize_problem(std::span<const double> weights,
                          std::span<const CompositeCost> raw_costs,
                          double total_demand,
                          std::span<const double> demand_split = {});

/// The scalar-argument transform behind normalize_problem: a cost equal to
/// x -> cost(x / a), expressed in the same variant types.
CompositeCost scale_argument(const CompositeCost& cost, double a);

/// Randomized quadratic instance: g_i in (0, 0.3], d_i in (0, 10],
/// a_i in (0, 10], hard box penalty (m=10, M=110, sigma=1, c=2), b_i = 50.
Problem sample_academic_costs(int n, std::uint64_t seed);

}  // namespace sched::costs
