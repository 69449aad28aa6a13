#pragma once

// Initial conditions. Profiles are written in Eulerian x on (0, 1); for
// Lagrangian runs they are pushed through the mass map y(x) = int_0^x rho.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "mhd1d/config.hpp"
#include "mhd1d/error.hpp"
#include "mhd1d/manufactured.hpp"
#include "mhd1d/state.hpp"

namespace mhd1d {

struct Profile {
  double rho = 1.0, u = 0.0, w1 = 0.0, w2 = 0.0, theta = 1.0, b2 = 0.0, b3 = 0.0;
};

namespace detail {

// Lowest admissible wavenumber times pi: sin(k pi x) vanishes at both ends
// and is periodic when k is even.
inline double base_wave(const RunConfig& c) {
  return (c.bc.kind == BcKind::periodic ? 2.0 : 1.0) * std::numbers::pi;
}

inline double gaussian_mass(double c, double w) {
  return 0.5 * w * std::sqrt(std::numbers::pi) * (std::erf((1.0 - c) / w) + std::erf(c / w));
}

}  // namespace detail

/// The scenario's fields at x, without random perturbation.
inline Profile scenario_profile(const RunConfig& c, double x) {
  const auto& ic = c.ic;
  const double A = ic.amplitude;
  const double k = detail::base_wave(c);
  Profile p;
  p.rho = ic.rho0;
  p.theta = ic.theta0;
  const std::string& s = c.scenario;
  if (s == "equilibrium" || s == "gravity-settling" || s == "free-boundary-compression") {
  } else if (s == "acoustic-pulse") {
    const double g = std::exp(-std::pow((x - ic.center) / ic.width, 2));
    p.rho = ic.rho0 * (1.0 + A * g) / (1.0 + A * detail::gaussian_mass(ic.center, ic.width));
  } else if (s == "transverse-shear") {
    p.w1 = A * std::sin(k * x);
    p.w2 = 0.5 * A * std::sin(2.0 * k * x);
  } else if (s == "magnetic-diffusion") {
    p.b2 = A * std::sin(k * x);
    p.b3 = 0.5 * A * std::sin(2.0 * k * x);
  } else if (s == "heat-mode") {
    p.theta = ic.theta0 * (1.0 + A * std::cos(2.0 * std::numbers::pi * x));
  } else if (s == "resistive-mode") {
    p.b2 = A * std::sin(2.0 * std::numbers::pi * x);
  } else if (s == "mixed-wave") {
    p.rho = ic.rho0 * (1.0 + A * std::cos(k * x));
    p.u = A * std::sin(k * x);
    p.w1 = A * std::sin(2.0 * k * x);
    p.w2 = 0.5 * A * std::sin(k * x);
    p.theta = ic.theta0 * (1.0 + 0.5 * A * std::cos(2.0 * k * x));
    p.b2 = A * std::sin(k * x);
    p.b3 = 0.5 * A * std::sin(2.0 * k * x);
  } else {
    throw InvalidParams("scenario_profile: no closed-form profile for scenario " + s);
  }
  return p;
}

namespace detail {

inline void set_cell(State1D& st, int i, const Profile& p, bool lag) {
  st.density_or_volume[i] = lag ? 1.0 / p.rho : p.rho;
  st.u[i] = p.u;
  st.w1[i] = p.w1;
  st.w2[i] = p.w2;
  st.theta[i] = p.theta;
  st.b2[i] = p.b2;
  st.b3[i] = p.b3;
}

// Mass map of a density profile on (0, 1) and its inverse.
template <class Rho>
class MassMap {
 public:
  explicit MassMap(Rho rho) : rho_(rho) {
    total_ = mass(1.0);
    if (std::abs(total_ - 1.0) > 1e-10)
      throw InvalidParams("Lagrangian initial data need unit total mass, got " + std::to_string(total_));
  }

  double mass(double x) const {
    if (x <= 0.0) return 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(rho_, 0.0, x, 10, 1e-12);
  }

  double position(double y) const {
    if (y <= 0.0) return 0.0;
    if (y >= 1.0) return 1.0;
    double lo = 0.0, hi = 1.0, x = y;
    for (int it = 0; it < 100; ++it) {
      const double f = mass(x) - y;
      if (std::abs(f) < 1e-15) return x;
      (f < 0.0 ? lo : hi) = x;
      double next = x - f / rho_(x);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (std::abs(next - x) < 1e-16) return next;
      x = next;
    }
    return x;
  }

 private:
  Rho rho_;
  double total_ = 1.0;
};

// Band-limited random fields: four modes per field with seeded coefficients.
// Odd fields (u, w, b) use sine modes that vanish at walls, even fields cosine
// modes with zero mean and zero slope at walls.
class Perturbation {
 public:
  Perturbation(std::uint64_t seed, bool periodic) : periodic_(periodic) {
    std::mt19937_64 gen(seed);
    for (auto& field : coef_)
      for (auto& c : field) c = 2.0 * std::generate_canonical<double, 53>(gen) - 1.0;
  }

  // Unit-amplitude perturbation of field k at s.
  double operator()(int k, double s) const {
    const bool odd = !(k == 0 || k == 4);
    double sum = 0.0;
    for (int m = 1; m <= 4; ++m) {
      const auto& c = coef_[k];
      if (periodic_) {
        const double arg = 2.0 * std::numbers::pi * m * s;
        sum += c[2 * (m - 1)] * std::sin(arg) + c[2 * (m - 1) + 1] * std::cos(arg);
      } else {
        const double arg = std::numbers::pi * m * s;
        sum += c[2 * (m - 1)] * (odd ? std::sin(arg) : std::cos(arg));
      }
    }
    return 0.25 * sum;
  }

 private:
  bool periodic_;
  std::array<std::array<double, 8>, 7> coef_{};
};

}  // namespace detail

/// The unperturbed background equilibrium of a configuration.
inline State1D reference_equilibrium(const RunConfig& c) {
  State1D st(c.grid(), 0.0);
  const bool lag = c.coordinate == Coordinate::lagrangian;
  for (int i = 0; i < c.n_cells; ++i) {
    Profile p;
    p.rho = c.ic.rho0;
    p.theta = c.ic.theta0;
    detail::set_cell(st, i, p, lag);
  }
  return st;
}

/// Adds `amplitude` times the seeded band-limited perturbation to every field.
/// Density and temperature perturbations are relative to the local value.
inline void add_perturbation(State1D& st, double amplitude, std::uint64_t seed, bool periodic) {
  if (amplitude == 0.0) return;
  const detail::Perturbation pert(seed, periodic);
  auto fields = st.fields();
  for (int i = 0; i < st.size(); ++i) {
    const double s = st.grid.center(i);
    for (int k = 0; k < 7; ++k) {
      const double d = amplitude * pert(k, s);
      auto& f = (*fields[k])[i];
      f = (k == 0 || k == 4) ? f * (1.0 + d) : f + d;
    }
  }
}

inline WaveManufactured manufactured_fields(const RunConfig& c) { return WaveManufactured{c.ic.amplitude}; }

/// Builds the solver model; the manufactured scenario installs its source.
inline Model build_model(const RunConfig& c) {
  Model m = c.model();
  if (c.scenario == "manufactured") m.options.source = make_manufactured_source(manufactured_fields(c), m, c.coordinate);
  m.validate(c.coordinate);
  return m;
}

/// Initial state of a configuration, perturbation included.
inline State1D initial_state(const RunConfig& c) {
  const Grid1D grid = c.grid();
  const bool lag = c.coordinate == Coordinate::lagrangian;
  State1D st(grid, 0.0);
  if (c.scenario == "manufactured") {
    st = manufactured_state(manufactured_fields(c), grid, 0.0);
  } else if (!lag) {
    for (int i = 0; i < grid.n_cells; ++i) detail::set_cell(st, i, scenario_profile(c, grid.center(i)), false);
  } else {
    auto rho = [&c](double x) { return scenario_profile(c, x).rho; };
    const detail::MassMap<decltype(rho)> map(rho);
    const double dy = grid.dx();
    double x_left = 0.0;
    for (int i = 0; i < grid.n_cells; ++i) {
      const double x_right = i + 1 == grid.n_cells ? 1.0 : map.position(grid.face(i + 1));
      Profile p = scenario_profile(c, map.position(grid.center(i)));
      p.rho = dy / (x_right - x_left);
      detail::set_cell(st, i, p, true);
      x_left = x_right;
    }
  }
  add_perturbation(st, c.perturb_amplitude, c.seed, c.bc.kind == BcKind::periodic);
  st.check();
  return st;
}

}  // namespace mhd1d
