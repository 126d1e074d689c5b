#include "sched/nonlinearity.hpp"

#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "sched/errors.hpp"
#include "sched/graph.hpp"
#include "sched/rng.hpp"

using namespace sched;
using nonlin::SectorMap;

TEST_CASE("log quantizer fixes powers of the grid") {
  const SectorMap q = SectorMap::log_quantizer(0.5);
  CHECK(q.apply(1.0) == 1.0);  // log 1 = 0 is a grid point for every rho
  CHECK(q.apply(-1.0) == -1.0);
  CHECK(q.apply(0.0) == 0.0);
}

TEST_CASE("log quantizer with rho = 1 rounds 2 up to e") {
  const SectorMap q = SectorMap::log_quantizer(1.0);
  CHECK(q.apply(2.0) == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
  CHECK(q.apply(-2.0) == doctest::Approx(-std::exp(1.0)).epsilon(1e-15));
}

TEST_CASE("uniform quantizer has a dead zone around zero") {
  const SectorMap q = SectorMap::uniform_quantizer(1.0 / 16.0);
  CHECK(q.apply(0.03) == 0.0);  // round(0.48) = 0
  CHECK(q.apply(0.04) == 1.0 / 16.0);
  CHECK(q.apply(-0.04) == -1.0 / 16.0);
}

TEST_CASE("sector bounds per map") {
  CHECK(SectorMap::identity().sector_bounds() == std::pair{1.0, 1.0});

  const auto [k4, K4] = SectorMap::log_quantizer(std::ldexp(1.0, -10)).sector_bounds();
  CHECK(k4 == doctest::Approx(0.99951183).epsilon(1e-8));
  CHECK(K4 == doctest::Approx(1.00048840).epsilon(1e-8));

  const auto [ks, Ks] = SectorMap::saturation(10.0, 0.05).sector_bounds();
  CHECK(ks == 0.05);
  CHECK(Ks == 1.0);

  CHECK_FALSE(SectorMap::uniform_quantizer(0.25).sector_bounded());
  CHECK_THROWS_AS(SectorMap::uniform_quantizer(0.25).sector_bounds(), Error);
  try {
    SectorMap::uniform_quantizer(0.25).sector_bounds();
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_sector_bound);
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(SectorMap::log_quantizer(0.0), Error);
  CHECK_THROWS_AS(SectorMap::uniform_quantizer(-1.0), Error);
  CHECK_THROWS_AS(SectorMap::saturation(0.0), Error);
  CHECK_THROWS_AS(SectorMap::saturation(1.0, 0.0), Error);
}

TEST_CASE("sector certification: kappa |u| <= |g(u)| <= K |u| with no tolerance") {
  const SectorMap maps[] = {
      SectorMap::identity(),
      SectorMap::log_quantizer(1.0),
      SectorMap::log_quantizer(std::ldexp(1.0, -4)),
      SectorMap::log_quantizer(std::ldexp(1.0, -10)),
      SectorMap::saturation(100.0, 0.05),
  };
  for (const SectorMap& m : maps) {
    const auto [kappa, K] = m.sector_bounds();
    rng::Stream stream(7);
    int violations = 0;
    for (int i = 0; i < 100000; ++i) {
      double u = stream.uniform(-1e6, 1e6);
      if (u == 0.0) u = 1e-9;
      const double g = std::fabs(m.apply(u));
      const double mag = std::fabs(u);
      if (!(kappa * mag <= g && g <= K * mag)) ++violations;
    }
    CHECK(violations == 0);
  }
}

TEST_CASE("oddness is bit-exact for every map") {
  const SectorMap maps[] = {
      SectorMap::identity(),
      SectorMap::log_quantizer(0.125),
      SectorMap::saturation(3.0, 0.1),
      SectorMap::uniform_quantizer(1.0 / 16.0),
  };
  rng::Stream stream(11);
  for (const SectorMap& m : maps) {
    for (int i = 0; i < 20000; ++i) {
      const double u = stream.uniform(-1e4, 1e4);
      CHECK(m.apply(-u) == -m.apply(u));
    }
    // Half-grid points of the uniform quantizer round away from zero.
    CHECK(m.apply(-0.03125) == -m.apply(0.03125));
  }
}

TEST_CASE("Laplacian sector form lambda2 kappa <= g(x)^T L x <= lambdaN K") {
  // Identity and saturation have incremental slopes inside [kappa, K], so the
  // inequality holds for arbitrary x. The fine log quantizers hold here too:
  // entries of a spread-out random x almost never share a quantization cell,
  // and the slack absorbs the rare tie.
  const SectorMap maps[] = {
      SectorMap::identity(),
      SectorMap::saturation(40.0, 0.05),
      SectorMap::log_quantizer(std::ldexp(1.0, -7)),
      SectorMap::log_quantizer(std::ldexp(1.0, -10)),
  };
  rng::Stream stream(23);
  for (const SectorMap& m : maps) {
    const auto [kappa, K] = m.sector_bounds();
    for (int trial = 0; trial < 25; ++trial) {
      graph::Topology t = graph::generate_er(5 + trial % 8, 0.6, 1.0, 600 + static_cast<std::uint64_t>(trial));
      if (!graph::is_connected(t)) continue;
      const auto spec = graph::spectral_bounds(t);
      const Eigen::MatrixXd l = graph::laplacian(t);
      const int n = t.node_count();
      Eigen::VectorXd x(n), gx(n);
      for (int i = 0; i < n; ++i) x(i) = stream.uniform(-60.0, 60.0);
      for (int i = 0; i < n; ++i) gx(i) = m.apply(x(i));
      const Eigen::VectorXd xbar = x.array() - x.mean();
      const double quad = gx.dot(l * x);
      const double norm2 = xbar.squaredNorm();
      const double scale = std::max(1.0, std::fabs(quad));
      CHECK(spec.lambda2 * kappa * norm2 <= quad + 1e-8 * scale);
      CHECK(quad <= spec.lambdaN * K * norm2 + 1e-8 * scale);
    }
  }
}

TEST_CASE("coarse quantization breaks the Laplacian lower bound") {
  // A step map has zero increment between inputs in one quantization cell, so
  // for coarse levels the Laplacian form can dip below kappa lambda2 |xbar|^2.
  // This pins the boundary of the property tested above.
  const SectorMap q = SectorMap::log_quantizer(1.0);
  const auto [kappa, K] = q.sector_bounds();
  const graph::Topology pair(2, {{0, 1, 1.0}});
  const Eigen::MatrixXd l = graph::laplacian(pair);
  Eigen::Vector2d x(1.1, 1.2);  // same cell: both quantize to exp(0)
  Eigen::Vector2d gx(q.apply(x(0)), q.apply(x(1)));
  CHECK(gx(0) == gx(1));
  const double quad = gx.dot(l * x);
  const Eigen::Vector2d xbar = x.array() - x.mean();
  CHECK(quad < 2.0 * kappa * xbar.squaredNorm());
}
