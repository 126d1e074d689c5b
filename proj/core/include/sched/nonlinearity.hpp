#pragma once

#include <string>
#include <utility>
#include <variant>

namespace sched::nonlin {

struct Identity {};

/// Quantizes the log-magnitude to a uniform grid of level rho:
/// g(u) = sgn(u) exp(rho * round(log|u| / rho)), g(0) = 0.
/// Multiplicative error at most e^{rho/2} each way.
struct LogQuantizer {
  double rho = 1.0;
};

/// Leaky clip: |u| passes through below the limit, excess is scaled by
/// slope_floor. The leak keeps a positive lower sector slope; a pure clip
/// would have no global one on unbounded inputs.
struct Saturation {
  double limit = 1.0;
  double slope_floor = 0.05;
};

/// Delta * round(u / Delta). Odd but NOT sector-bound: everything below
/// Delta/2 in magnitude maps to zero. Kept only as a comparison baseline;
/// excluded from bound computations.
struct UniformQuantizer {
  double delta = 1.0;
};

/// Channel mapping applied to transmitted gradients. Identity, LogQuantizer
/// and Saturation are odd, sign-preserving and sector-bound with queryable
/// bounds kappa <= g(u)/u <= K; UniformQuantizer is the non-sector-bound
/// baseline. Immutable value type; apply() is pure.
class SectorMap {
 public:
  using Variant = std::variant<Identity, LogQuantizer, Saturation, UniformQuantizer>;

  SectorMap() : v_(Identity{}) {}
  explicit SectorMap(Variant v);

  static SectorMap identity() { return SectorMap(Identity{}); }
  static SectorMap log_quantizer(double rho) { return SectorMap(LogQuantizer{rho}); }
  static SectorMap saturation(double limit, double slope_floor = 0.05) {
    return SectorMap(Saturation{limit, slope_floor});
  }
  static SectorMap uniform_quantizer(double delta) {
    return SectorMap(UniformQuantizer{delta});
  }

  double apply(double u) const;

  bool sector_bounded() const noexcept;

  /// (kappa, K). Throws not-sector-bound for the uniform quantizer.
  std::pair<double, double> sector_bounds() const;

  const Variant& variant() const noexcept { return v_; }
  std::string describe() const;

 private:
  Variant v_;
};

}  // namespace sched::nonlin
