#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "mhd1d/diagnostics.hpp"
#include "mhd1d/lagrangian_map.hpp"
#include "mhd1d/scenario.hpp"

using namespace mhd1d;
using Catch::Approx;
constexpr double pi = std::numbers::pi;

namespace {

State1D linear_density(int n) {
  State1D s(Grid1D(n, Coordinate::eulerian), 0.0);
  for (int i = 0; i < n; ++i) s.density_or_volume[i] = 2.0 * s.grid.center(i);
  return s;
}

}  // namespace

TEST_CASE("mass coordinate") {
  const std::vector<double> one(64, 1.0);
  const auto y = lagrangian_coordinate(one);
  for (int i = 0; i <= 64; ++i) CHECK(y[i] == Approx(i / 64.0).margin(1e-15));

  const auto s = linear_density(64);
  const auto y2 = lagrangian_coordinate(s.density_or_volume);
  CHECK(y2[32] == Approx(0.25).margin(1e-14));
  CHECK(y2[64] == Approx(1.0).margin(1e-14));
  for (int i = 0; i <= 64; ++i) CHECK(y2[i] == Approx(std::pow(i / 64.0, 2)).margin(1e-14));

  const std::vector<double> heavy(64, 1.5);
  CHECK_THROWS_AS(lagrangian_coordinate(heavy), InvalidParams);
}

TEST_CASE("uniform states map exactly") {
  State1D s(Grid1D(32, Coordinate::eulerian), 0.3);
  for (int i = 0; i < 32; ++i) {
    s.u[i] = std::sin(pi * s.grid.center(i));
    s.theta[i] = 1.0 + 0.1 * i;
  }
  const auto l = to_lagrangian(s);
  const auto back = to_eulerian(l);
  for (int i = 0; i < 32; ++i) {
    CHECK(l.density_or_volume[i] == Approx(1.0).margin(1e-14));
    CHECK(back.u[i] == Approx(s.u[i]).margin(1e-14));
    CHECK(back.theta[i] == Approx(s.theta[i]).margin(1e-14));
    CHECK(back.density_or_volume[i] == Approx(1.0).margin(1e-14));
  }
  CHECK(back.grid.domain_length == Approx(1.0).margin(1e-14));
}

TEST_CASE("linear density maps to v = 1 / (2 sqrt y)") {
  // Conservative remap of a piecewise-constant density: first order pointwise.
  double prev = 0.0;
  for (int n : {128, 256}) {
    const auto l = to_lagrangian(linear_density(n));
    double err = 0.0;
    for (int k = 0; k < n; ++k) {
      const double y = l.grid.center(k);
      if (y < 0.1) continue;
      err = std::max(err, std::abs(l.density_or_volume[k] - 1.0 / (2.0 * std::sqrt(y))));
    }
    CHECK(err < 0.5 / n);
    if (prev > 0.0) CHECK(prev / err > 1.8);
    prev = err;
  }
}

TEST_CASE("total energy is invariant under the change of variables") {
  const auto eos = EosParams::full_radiative(1, 1.5, 0.1);
  const int n = 256;
  State1D s(Grid1D(n, Coordinate::eulerian), 0.0);
  for (int i = 0; i < n; ++i) {
    const double x = s.grid.center(i);
    s.density_or_volume[i] = 1.0 + 0.3 * std::cos(pi * x);
    s.u[i] = 0.2 * std::sin(pi * x);
    s.w1[i] = 0.1 * std::sin(2 * pi * x);
    s.theta[i] = 1.0 + 0.2 * std::cos(2 * pi * x);
    s.b2[i] = 0.3 * std::sin(pi * x);
  }
  const double e0 = total_energy(s, eos, 1.0);
  const double e1 = total_energy(to_lagrangian(s), eos, 1.0);
  CHECK(std::abs(e1 - e0) / e0 < 10.0 / (n * n));
}

TEST_CASE("Lagrangian scenario initial data agree with the mapped Eulerian data") {
  RunConfig c;
  c.scenario = "mixed-wave";
  c.n_cells = 256;
  c.ic.amplitude = 0.2;
  RunConfig cl = c;
  cl.coordinate = Coordinate::lagrangian;
  const auto mapped = to_lagrangian(initial_state(c));
  const auto direct = initial_state(cl);
  CHECK(sobolev_norm(mapped, direct, 0) < 2e-4);
  double vol = 0.0;
  for (double v : direct.density_or_volume) vol += v * direct.grid.dx();
  CHECK(vol == Approx(1.0).margin(1e-12));
}
