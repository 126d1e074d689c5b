#include "sched/nonlinearity.hpp"

#include <cmath>
#include <cstdio>

#include "sched/errors.hpp"

namespace sched::nonlin {
namespace {

struct Apply {
  double u;
  double operator()(const Identity&) const { return u; }
  double operator()(const LogQuantizer& q) const {
    if (u == 0.0) return 0.0;  // limit forced by oddness and sign preservation
    // std::round is round-half-away-from-zero, which keeps the quantizer
    // symmetric in log-magnitude at half-grid points.
    const double grid = std::round(std::log(std::fabs(u)) / q.rho);
    return std::copysign(std::exp(q.rho * grid), u);
  }
  double operator()(const Saturation& s) const {
    const double mag = std::fabs(u);
    const double clipped = std::min(mag, s.limit) + s.slope_floor * std::max(mag - s.limit, 0.0);
    return std::copysign(clipped, u);
  }
  double operator()(const UniformQuantizer& q) const {
    return q.delta * std::round(u / q.delta);
  }
};

}  // namespace

SectorMap::SectorMap(Variant v) : v_(std::move(v)) {
  if (const auto* q = std::get_if<LogQuantizer>(&v_)) {
    if (!(q->rho > 0.0))
      throw Error(Errc::invalid_parameter, "quantization level must be > 0");
  } else if (const auto* s = std::get_if<Saturation>(&v_)) {
    if (!(s->limit > 0.0) || !(s->slope_floor > 0.0) || !(s->slope_floor <= 1.0))
      throw Error(Errc::invalid_parameter, "saturation needs limit > 0 and slope floor in (0, 1]");
  } else if (const auto* q = std::get_if<UniformQuantizer>(&v_)) {
    if (!(q->delta > 0.0))
      throw Error(Errc::invalid_parameter, "quantization level must be > 0");
  }
}

double SectorMap::apply(double u) const { return std::visit(Apply{u}, v_); }

bool SectorMap::sector_bounded() const noexcept {
  return !std::holds_alternative<UniformQuantizer>(v_);
}

std::pair<double, double> SectorMap::sector_bounds() const {
  if (const auto* q = std::get_if<LogQuantizer>(&v_))
    return {std::exp(-q->rho / 2.0), std::exp(q->rho / 2.0)};
  if (const auto* s = std::get_if<Saturation>(&v_)) return {s->slope_floor, 1.0};
  if (std::holds_alternative<UniformQuantizer>(v_))
    throw Error(Errc::not_sector_bound,
                "uniform quantizer maps a neighborhood of zero to zero");
  return {1.0, 1.0};
}

std::string SectorMap::describe() const {
  char buf[64];
  if (const auto* q = std::get_if<LogQuantizer>(&v_)) {
    std::snprintf(buf, sizeof buf, "log(rho=%g)", q->rho);
  } else if (const auto* s = std::get_if<Saturation>(&v_)) {
    std::snprintf(buf, sizeof buf, "saturation(limit=%g,floor=%g)", s->limit, s->slope_floor);
  } else if (const auto* q = std::get_if<UniformQuantizer>(&v_)) {
    std::snprintf(buf, sizeof buf, "uniform(delta=%g)", q->delta);
  } else {
    std::snprintf(buf, sizeof buf, "identity");
  }
  return buf;
}

}  // namespace sched::nonlin
