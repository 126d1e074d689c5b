#include "sched/costs.hpp"

#include <algorithm>
#include <cmath>

#include "sched/errors.hpp"
#include "sched/rng.hpp"

namespace sched::costs {
namespace {

// log(1 + e^t) without overflow for large |t|.
double softplus(double t) {
  return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
}

double logistic(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

double ipow(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

struct ValueAt {
  double x;
  double operator()(const QuadraticCost& c) const { return c.g * x * x + c.d * x + c.a; }
  double operator()(const CpuCost& c) const {
    const double r = x - c.rho;
    return r * r / (2.0 * c.pi_max);
  }
  double operator()(const HardBoxPenalty& c) const {
    const double over = std::max(x - c.M, 0.0);
    const double under = std::max(c.m - x, 0.0);
    return c.sigma * (ipow(over, c.c) + ipow(under, c.c));
  }
  double operator()(const SmoothLogPenalty& c) const {
    return c.sigma / c.alpha *
           (softplus(c.alpha * (x - c.M)) + softplus(c.alpha * (c.m - x)));
  }
};

struct GradientAt {
  double x;
  double operator()(const QuadraticCost& c) const { return 2.0 * c.g * x + c.d; }
  double operator()(const CpuCost& c) const { return (x - c.rho) / c.pi_max; }
  double operator()(const HardBoxPenalty& c) const {
    const double over = std::max(x - c.M, 0.0);
    const double under = std::max(c.m - x, 0.0);
    const double k = c.sigma * static_cast<double>(c.c);
    return k * (ipow(over, c.c - 1) - ipow(under, c.c - 1));
  }
  double operator()(const SmoothLogPenalty& c) const {
    return c.sigma * (logistic(c.alpha * (x - c.M)) - logistic(c.alpha * (c.m - x)));
  }
};

// Halved supremum of the second derivative, per part.
struct CurvatureOf {
  double operator()(const QuadraticCost& c) const { return c.g; }
  double operator()(const CpuCost& c) const { return 1.0 / (2.0 * c.pi_max); }
  double operator()(const HardBoxPenalty& c) const {
    if (c.c != 2)
      throw Error(Errc::unbounded_curvature,
                  "hard penalty with c >= 3 has no global curvature bound");
    return c.sigma;
  }
  double operator()(const SmoothLogPenalty& c) const { return c.sigma * c.alpha / 4.0; }
};

void validate_base(const BaseCost& base) {
  if (const auto* q = std::get_if<QuadraticCost>(&base)) {
    if (!(q->g > 0.0))
      throw Error(Errc::invalid_parameter, "quadratic coefficient must be > 0");
  } else if (const auto* c = std::get_if<CpuCost>(&base)) {
    if (!(c->pi_max > 0.0))
      throw Error(Errc::invalid_parameter, "CPU capacity must be > 0");
  }
}

void validate_penalty(const BoxPenalty& penalty) {
  if (const auto* h = std::get_if<HardBoxPenalty>(&penalty)) {
    if (h->c < 2) throw Error(Errc::invalid_parameter, "hard penalty exponent must be >= 2");
    if (!(h->sigma > 0.0) || !(h->m <= h->M))
      throw Error(Errc::invalid_parameter, "bad hard penalty parameters");
  } else if (const auto* s = std::get_if<SmoothLogPenalty>(&penalty)) {
    if (!(s->sigma > 0.0) || !(s->alpha > 0.0) || !(s->m <= s->M))
      throw Error(Errc::invalid_parameter, "bad smooth penalty parameters");
  }
}

}  // namespace

CompositeCost::CompositeCost(BaseCost base, std::optional<BoxPenalty> penalty)
    : base_(std::move(base)), penalty_(std::move(penalty)) {
  validate_base(base_);
  if (penalty_) validate_penalty(*penalty_);
}

double CompositeCost::value(double x) const {
  double v = std::visit(ValueAt{x}, base_);
  if (penalty_) v += std::visit(ValueAt{x}, *penalty_);
  return v;
}

double CompositeCost::gradient(double x) const {
  double g = std::visit(GradientAt{x}, base_);
  if (penalty_) g += std::visit(GradientAt{x}, *penalty_);
  return g;
}

double CompositeCost::curvature_bound() const {
  double u = std::visit(CurvatureOf{}, base_);
  if (penalty_) u += std::visit(CurvatureOf{}, *penalty_);
  return u;
}

double Problem::total_demand() const {
  double b = 0.0;
  for (double bi : demands) b += bi;
  return b;
}

double Problem::value(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != size())
    throw Error(Errc::mismatched_size, "state dimension != agent count");
  double f = 0.0;
  for (int i = 0; i < size(); ++i) f += costs[static_cast<std::size_t>(i)].value(x[static_cast<std::size_t>(i)]);
  return f;
}

double Problem::curvature_bound() const {
  double u = 0.0;
  for (const CompositeCost& c : costs) u = std::max(u, c.curvature_bound());
  return u;
}

CompositeCost scale_argument(const CompositeCost& cost, double a) {
  if (!(a > 0.0)) throw Error(Errc::nonpositive_weight, "weight must be > 0");
  BaseCost base = cost.base();
  if (auto* q = std::get_if<QuadraticCost>(&base)) {
    q->g /= a * a;
    q->d /= a;
  } else if (auto* c = std::get_if<CpuCost>(&base)) {
    c->pi_max *= a * a;
    c->rho *= a;
  }
  std::optional<BoxPenalty> penalty = cost.penalty();
  if (penalty) {
    if (auto* h = std::get_if<HardBoxPenalty>(&*penalty)) {
      h->sigma /= ipow(a, h->c);
      h->m *= a;
      h->M *= a;
    } else if (auto* s = std::get_if<SmoothLogPenalty>(&*penalty)) {
      s->sigma /= a;
      s->alpha /= a;
      s->m *= a;
      s->M *= a;
    }
  }
  return CompositeCost(std::move(base), std::move(penalty));
}

Problem normalize_problem(std::span<const double> weights,
                          std::span<const CompositeCost> raw_costs,
                          double total_demand,
                          std::span<const double> demand_split) {
  if (weights.size() != raw_costs.size())
    throw Error(Errc::mismatched_size, "one weight per cost required");
  const std::size_t n = raw_costs.size();
  Problem p;
  p.costs.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    p.costs.push_back(scale_argument(raw_costs[i], weights[i]));
  if (demand_split.empty()) {
    p.demands.assign(n, total_demand / static_cast<double>(n));
  } else {
    if (demand_split.size() != n)
      throw Error(Errc::mismatched_size, "demand split size != agent count");
    p.demands.assign(demand_split.begin(), demand_split.end());
  }
  return p;
}

Problem sample_academic_costs(int n, std::uint64_t seed) {
  if (n < 2) throw Error(Errc::invalid_parameter, "need at least 2 agents");
  rng::Stream stream(seed);
  // Uniform on (eps, hi]: excludes zero exactly, includes the top end.
  const auto half_open = [&stream](double hi) {
    constexpr double eps = 1e-9;
    return hi - (hi - eps) * stream.unit();
  };
  Problem p;
  p.costs.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    QuadraticCost q{half_open(0.3), half_open(10.0), half_open(10.0)};
    p.costs.emplace_back(q, HardBoxPenalty{10.0, 110.0, 1.0, 2});
  }
  p.demands.assign(static_cast<std::size_t>(n), 50.0);
  return p;
}

}  // namespace sched::costs
