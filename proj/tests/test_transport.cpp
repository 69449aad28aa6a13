#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "mhd1d/thermo.hpp"
#include "mhd1d/transport.hpp"

using namespace mhd1d;
using Catch::Approx;

namespace {
TransportParams with(double nu0, double eta0, double alpha, double kappa0, double q, double kappaR, double sigma0) {
  TransportParams p;
  p.nu0 = nu0;
  p.eta0 = eta0;
  p.alpha = alpha;
  p.kappa0 = kappa0;
  p.q = q;
  p.kappaR = kappaR;
  p.sigma0 = sigma0;
  return p;
}
}  // namespace

TEST_CASE("coefficient examples") {
  CHECK(shear_viscosity(with(1, 1, 1, 1, 2.6, 0, 1), 0.0) == 1.0);
  CHECK(shear_viscosity(with(1, 1, 1, 1, 2.6, 0, 1), 3.0) == Approx(4.0));
  CHECK(shear_viscosity(with(0.5, 1, 2, 1, 2.6, 0, 1), 2.0) == Approx(2.5));

  CHECK(bulk_viscosity(with(1, 0, 1, 1, 2.6, 0, 1), 5.0) == 0.0);
  CHECK(bulk_viscosity(with(1, 1, 1, 1, 2.6, 0, 1), 1.0) == Approx(2.0));
  CHECK(bulk_viscosity(with(1, 2, 1, 1, 2.6, 0, 1), 0.0) == Approx(2.0));

  CHECK(heat_conductivity(with(1, 1, 1, 1, 2.6, 0, 1), 1.0, 0.0) == 1.0);
  CHECK(heat_conductivity(with(1, 1, 1, 1, 3.0, 1, 1), 1.0, 1.0) == Approx(3.0));
  CHECK(heat_conductivity(with(1, 1, 1, 0.1, 2.6, 1, 1), 1.0, 2.0) ==
        Approx(0.1 * (1.0 + std::pow(2.0, 2.6)) + 8.0).epsilon(1e-14));
  CHECK(heat_conductivity(with(1, 1, 1, 0.1, 2.6, 1, 1), 1.0, 2.0) == Approx(8.7063).epsilon(1e-4));

  CHECK(resistivity(with(1, 1, 1, 1, 2.6, 0, 1), 0.0) == 1.0);
  CHECK(resistivity(with(1, 1, 1, 1, 2.6, 0, 2), 1.0) == Approx(1.0));
  CHECK(resistivity(with(1, 1, 2, 1, 2.6, 0, 1), 3.0) == Approx(10.0));
}

TEST_CASE("check_bounds verdicts") {
  const auto theta = log_grid(1e-3, 1e3, 61);
  const auto def = check_bounds(TransportParams{}, theta);
  CHECK(def.passed());
  CHECK_FALSE(def.has_warning());

  auto low = TransportParams{};
  low.q = 0.2;
  const auto rep = check_bounds(low, theta);
  REQUIRE(rep.find("kappa.exponent"));
  CHECK(rep.find("kappa.exponent")->severity == Severity::warning);
  CHECK(rep.find("kappa.exponent")->detail == "below both existence thresholds");

  auto mid = TransportParams{};
  mid.q = 2.2;  // between (2 + sqrt 211)/9 ~ 1.836 and 5/2
  CHECK(check_bounds(mid, theta).find("kappa.exponent")->severity == Severity::warning);
  CHECK(kappa_threshold_relaxed == Approx(1.8362).epsilon(1e-4));

  auto bad = TransportParams{};
  bad.eta0 = -1.0;
  CHECK_THROWS_AS(check_bounds(bad, theta), InvalidParams);
  CHECK_THROWS_AS(bulk_viscosity(bad, 1.0), InvalidParams);
}

TEST_CASE("coefficient laws are nonnegative and non-decreasing in theta") {
  const std::vector<TransportParams> params = {TransportParams{}, with(0.3, 0.0, 2.2, 0.5, 3.1, 0.7, 4.0),
                                               TransportParams::constant(0.2, 0.1, 0.3, 5.0)};
  for (const auto& p : params) {
    double prev[4] = {-1, -1, -1, -1};
    for (int k = 0; k <= 2000; ++k) {
      const double t = 0.01 * k;
      const double v[4] = {shear_viscosity(p, t), bulk_viscosity(p, t), heat_conductivity(p, 1.0, t),
                           resistivity(p, t)};
      for (int j = 0; j < 4; ++j) {
        CHECK(v[j] >= 0.0);
        CHECK(v[j] >= prev[j]);
        prev[j] = v[j];
      }
    }
  }
}

TEST_CASE("limits of the laws") {
  const auto p = with(0.7, 0.4, 1.0, 1.0, 2.6, 0.0, 3.0);
  CHECK(shear_viscosity(p, 0.0) == 0.7);
  CHECK(resistivity(p, 0.0) == Approx(1.0 / 3.0));
  // kappa0 -> 0 leaves the radiative law kappaR theta^3.
  auto r = with(1, 1, 1, 1e-300, 2.6, 2.0, 1);
  for (double t : {0.5, 1.0, 4.0}) CHECK(heat_conductivity(r, 1.0, t) == Approx(2.0 * t * t * t).epsilon(1e-14));
}

TEST_CASE("invalid transport input") {
  CHECK_THROWS_AS(shear_viscosity(TransportParams{}, -1.0), DomainError);
  CHECK_THROWS_AS(heat_conductivity(TransportParams{}, 0.0, 1.0), DomainError);
  auto p = TransportParams{};
  p.alpha = 0.5;
  CHECK_THROWS_AS(p.validate(), InvalidParams);
  p = TransportParams{};
  p.mu = 0.0;
  CHECK_THROWS_AS(p.validate(), InvalidParams);
}
