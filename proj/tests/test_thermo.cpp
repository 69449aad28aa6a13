#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "mhd1d/thermo.hpp"

using namespace mhd1d;
using Catch::Approx;

namespace {

// Independent closed forms used as oracles.
double oracle_p(double R, double a, double rho, double t) { return R * rho * t + a * t * t * t * t / 3.0; }
double oracle_e(double Cv, double a, double rho, double t) { return Cv * t + a * t * t * t * t / rho; }
double oracle_s(double Cv, double R, double a, double rho, double t) {
  return Cv * std::log(t) - R * std::log(rho) + 4.0 * a * t * t * t / (3.0 * rho);
}

PfClosure power_closure(double exponent) {
  return {[=](double z) { return std::pow(z, exponent); },
          [=](double z) { return exponent * std::pow(z, exponent - 1.0); }, 0.0};
}

}  // namespace

TEST_CASE("pressure examples") {
  CHECK(pressure(EosParams::full_radiative(1, 1.5, 3), {1, 1}) == Approx(2.0).epsilon(1e-15));
  CHECK(pressure(EosParams::full_radiative(1, 1.5, 3), {2, 1e-12}) == Approx(0.0).margin(1e-11));
  CHECK(pressure(EosParams::barotropic(1, 5.0 / 3.0), {8, 1}) == Approx(32.0).epsilon(1e-14));
}

TEST_CASE("internal energy examples") {
  CHECK(internal_energy(EosParams::full_radiative(1, 1.5, 3), {1, 1}) == Approx(4.5));
  for (double rho : {0.1, 1.0, 7.0}) CHECK(internal_energy(EosParams::full_radiative(1, 1.5, 0), {rho, 2.0}) == 3.0);
  // P_F(z) = z: p_F = rho theta, e = 1.5 p_F / rho.
  CHECK(internal_energy(EosParams::general_pf(power_closure(1.0)), {2, 3}) == Approx(4.5).epsilon(1e-14));
}

TEST_CASE("entropy examples") {
  CHECK(specific_entropy(EosParams::full_radiative(1, 1.5, 0.75), {1, 1}) == Approx(1.0));
  CHECK(specific_entropy(EosParams::full_radiative(1, 1.5, 0.0), {1, 1}) == 0.0);
  CHECK(specific_entropy(EosParams::general_pf(PfClosure::mixed(1, 1)), {std::exp(1.0), 1}) ==
        Approx(-1.0).epsilon(1e-9));
  const auto mixed = PfClosure::mixed(1, 1);
  CHECK(entropy_from_pf(mixed, 1.0) == 0.0);
  CHECK(entropy_from_pf(mixed, 2.0) == Approx(-std::log(2.0)).epsilon(1e-9));
  CHECK(entropy_from_pf(mixed, 0.5) == Approx(std::log(2.0)).epsilon(1e-9));
  CHECK(entropy_from_pf(power_closure(1.3), 1.0) == 0.0);
}

TEST_CASE("closed forms agree with independent oracles") {
  const auto eos = EosParams::full_radiative(0.7, 2.1, 0.3, 0.0);
  for (double rho : {1e-2, 0.5, 3.0, 40.0})
    for (double t : {1e-2, 0.8, 5.0}) {
      CHECK(pressure(eos, {rho, t}) == Approx(oracle_p(0.7, 0.3, rho, t)).epsilon(1e-14));
      CHECK(internal_energy(eos, {rho, t}) == Approx(oracle_e(2.1, 0.3, rho, t)).epsilon(1e-14));
      CHECK(specific_entropy(eos, {rho, t}) == Approx(oracle_s(2.1, 0.7, 0.3, rho, t)).margin(1e-13));
    }
}

TEST_CASE("magnetic energy") {
  CHECK(magnetic_energy(1.0, std::hypot(3.0, 4.0)) == Approx(12.5));
  CHECK(magnetic_energy(2.0, 0.0) == 0.0);
  CHECK(magnetic_energy(2.0, 2.0) == Approx(1.0));
  CHECK_THROWS_AS(magnetic_energy(0.0, 1.0), DomainError);
  // M takes |H| = |B| / mu.
  for (double s = 0.0; s <= 10.0; s += 0.5)
    CHECK(magnetic_energy_functional([](auto) { return 1.3; }, s / 1.3) ==
          Approx(magnetic_energy(1.3, s)).margin(1e-10));
}

TEST_CASE("maxwell residual examples") {
  const auto eos = EosParams::full_radiative(1, 1.5, 0.75);
  CHECK(maxwell_residual(eos, {1, 1}) < 1e-8);
  CHECK(maxwell_residual(EosParams::full_radiative(1, 1.5, 0), {2, 3}) < 1e-8);

  // Entropy built with 2R: the rho-component picks up theta * (-R / rho) extra.
  auto p = [](double r, double t) { return oracle_p(1, 0.75, r, t); };
  auto e = [](double r, double t) { return oracle_e(1.5, 0.75, r, t); };
  auto s_bad = [](double r, double t) { return oracle_s(1.5, 2.0, 0.75, r, t); };
  CHECK(maxwell_residual(p, e, s_bad, {1, 1}) == Approx(1.0).margin(1e-6));
}

TEST_CASE("maxwell relation holds on a log lattice") {
  const auto rho = log_grid(1e-3, 1e3, 20);
  const auto theta = log_grid(1e-3, 1e3, 20);
  for (const auto& eos : {EosParams::full_radiative(1, 1.5, 0.1), EosParams::general_pf(PfClosure::mixed(1, 1), 0.1)})
    for (double r : rho)
      for (double t : theta) CHECK(maxwell_residual_relative(eos, {r, t}) < 1e-6);
}

TEST_CASE("monotonicity in theta and rho") {
  const std::vector<EosParams> modes = {EosParams::full_radiative(1, 1.5, 0.2),
                                        EosParams::general_pf(PfClosure::mixed(1, 1), 0.2)};
  const auto grid = log_grid(1e-2, 1e2, 40);
  for (const auto& eos : modes)
    for (double fixed : {0.1, 1.0, 10.0})
      for (size_t i = 1; i < grid.size(); ++i) {
        CHECK(specific_entropy(eos, {fixed, grid[i]}) > specific_entropy(eos, {fixed, grid[i - 1]}));
        CHECK(pressure(eos, {grid[i], fixed}) > pressure(eos, {grid[i - 1], fixed}));
      }
  const auto baro = EosParams::barotropic(2, 1.4);
  for (size_t i = 1; i < grid.size(); ++i) CHECK(pressure(baro, {grid[i], 1}) > pressure(baro, {grid[i - 1], 1}));
}

TEST_CASE("structural validator verdicts") {
  const auto z = log_grid(1e-4, 1e4, 161);
  const auto good = validate_pf_closure(PfClosure::mixed(1, 1), z);
  CHECK(good.passed());

  const auto square = validate_pf_closure(power_closure(2.0), z);
  REQUIRE_FALSE(square.passed());
  CHECK(square.first_failure()->name == "p2.energy_positivity");

  const auto linear = validate_pf_closure(power_closure(1.0), z);
  REQUIRE_FALSE(linear.passed());
  CHECK(linear.first_failure()->name == "p4.limit_positive");
}

TEST_CASE("entropy log bounds for a valid closure") {
  const auto c = PfClosure::mixed(1, 1);
  // S_F = -ln z exactly for this closure.
  for (double z : log_grid(1e-3, 1e3, 30)) CHECK(entropy_from_pf(c, z) == Approx(-std::log(z)).margin(1e-8));
}

TEST_CASE("parameter invariants and domain errors") {
  CHECK_THROWS_AS(EosParams::full_radiative(0, 1.5, 0).validate(), InvalidParams);
  CHECK_THROWS_AS(EosParams::full_radiative(1, 1.5, -1).validate(), InvalidParams);
  CHECK_THROWS_AS(EosParams::barotropic(1, 1.0).validate(), InvalidParams);
  CHECK_THROWS_AS(EosParams::general_pf(PfClosure{}).validate(), InvalidParams);
  const auto eos = EosParams::full_radiative(1, 1.5, 0);
  CHECK_THROWS_AS(pressure(eos, {0, 1}), DomainError);
  CHECK_THROWS_AS(pressure(eos, {1, 0}), DomainError);
  CHECK_THROWS_AS(internal_energy(EosParams::barotropic(1, 1.4), {1, 1}), InvalidParams);
  CHECK_THROWS_AS(validate_pf_closure(PfClosure::mixed(1, 1), std::vector<double>{1.0, 0.5}), InvalidParams);
}
