#pragma once

// Conserved and monotone functionals, entropy production, discrete Sobolev
// distances and decay-rate fitting.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "mhd1d/diffusion.hpp"
#include "mhd1d/error.hpp"
#include "mhd1d/state.hpp"
#include "mhd1d/thermo.hpp"
#include "mhd1d/transport.hpp"

namespace mhd1d {

struct DiagnosticsRecord {
  double time = 0.0;
  double total_mass = 0.0;
  double total_energy = 0.0;
  double total_entropy = 0.0;
  double min_theta = 0.0;
  double min_density = 0.0;
  double min_entropy_production = 0.0;
  double sobolev_norm_s1 = 0.0;
};

inline double total_mass(const State1D& s) {
  const int n = s.size();
  for (int i = 0; i < n; ++i)
    if (!(s.density_or_volume[i] > 0.0))
      throw PositivityError(s.lagrangian() ? "v" : "rho", i, s.density_or_volume[i]);
  if (s.lagrangian()) return s.grid.domain_length;
  double m = 0.0;
  for (double r : s.density_or_volume) m += r;
  return m * s.grid.dx();
}

/// Kinetic + internal + magnetic energy. For the barotropic closure the
/// internal part is replaced by the pressure potential A rho^gamma / (gamma - 1).
inline double total_energy(const State1D& s, const EosParams& eos, double mu) {
  eos.validate();
  if (!(mu > 0.0)) throw DomainError("magnetic permeability must be positive");
  const int n = s.size();
  const bool lag = s.lagrangian();
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double rho = s.density(i);
    const double kin = 0.5 * (s.u[i] * s.u[i] + s.w1[i] * s.w1[i] + s.w2[i] * s.w2[i]);
    const double mag = magnetic_energy(mu, std::hypot(s.b2[i], s.b3[i]));
    double rho_e;
    if (eos.mode == EosMode::barotropic) {
      rho_e = eos.A * std::pow(rho, eos.gamma) / (eos.gamma - 1.0);
    } else {
      rho_e = rho * internal_energy(eos, {rho, s.theta[i]});
    }
    // Per unit length (Eulerian) or per unit mass (Lagrangian).
    sum += lag ? kin + (rho_e + mag) / rho : rho * kin + rho_e + mag;
  }
  return sum * s.grid.dx();
}

inline double total_entropy(const State1D& s, const EosParams& eos) {
  const int n = s.size();
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double rho = s.density(i);
    const double sp = specific_entropy(eos, {rho, s.theta[i]});
    sum += s.lagrangian() ? sp : rho * sp;
  }
  return sum * s.grid.dx();
}

namespace detail {

// Squared face gradients (n+1 faces) with the solver's boundary treatment.
inline std::vector<double> face_gradient_sq(const std::vector<double>& x, FaceBc left, FaceBc right,
                                            double dx) {
  const auto F = diffusion::face_flux(x, std::vector<double>(x.size() + 1, 1.0), 1.0, left, right, dx);
  std::vector<double> g(F.size());
  for (size_t f = 0; f < F.size(); ++f) g[f] = F[f] * F[f];
  return g;
}

}  // namespace detail

/// Per-cell entropy production
///   (1/theta) [(4/3 nu + eta) |u_x|^2 + nu |w_x|^2 + |(b/mu)_x|^2 / sigma + kappa |theta_x|^2 / theta],
/// with d_x = d_y / v in Lagrangian coordinates. Each squared gradient is the
/// mean over the two faces of the cell, using the solver's face stencils.
inline std::vector<double> entropy_production_density(const State1D& s, const EosParams& eos,
                                                       const TransportParams& tp, const BcSpec& bc = {}) {
  eos.validate();
  tp.validate();
  const int n = s.size();
  for (int i = 0; i < n; ++i)
    if (!(s.theta[i] > 0.0)) throw PositivityError("theta", i, s.theta[i]);
  const auto bcs = DiffusionBcs::from(bc);
  const double dx = s.grid.dx();
  const double mu = tp.mu;
  std::vector<double> bm2(s.b2), bm3(s.b3);
  for (int i = 0; i < n; ++i) {
    bm2[i] /= mu;
    bm3[i] /= mu;
  }
  const auto gu = detail::face_gradient_sq(s.u, bcs.u_left, bcs.u_right, dx);
  const auto gw1 = detail::face_gradient_sq(s.w1, bcs.wb, bcs.wb, dx);
  const auto gw2 = detail::face_gradient_sq(s.w2, bcs.wb, bcs.wb, dx);
  const auto gb2 = detail::face_gradient_sq(bm2, bcs.wb, bcs.wb, dx);
  const auto gb3 = detail::face_gradient_sq(bm3, bcs.wb, bcs.wb, dx);
  const auto gt = detail::face_gradient_sq(s.theta, bcs.theta, bcs.theta, dx);
  const bool heat = eos.has_temperature();

  std::vector<double> r(n);
  for (int i = 0; i < n; ++i) {
    auto avg = [&](const std::vector<double>& g) { return 0.5 * (g[i] + g[i + 1]); };
    const double t = s.theta[i];
    const double v = s.volume(i);
    const double metric = s.lagrangian() ? 1.0 / (v * v) : 1.0;
    double sum = coeff::longitudinal(tp, t) * avg(gu) + coeff::nu(tp, t) * (avg(gw1) + avg(gw2)) +
                 coeff::resistivity(tp, t) * (avg(gb2) + avg(gb3));
    if (heat) sum += coeff::kappa(tp, t) * avg(gt) / t;
    r[i] = metric * sum / t;
  }
  return r;
}

namespace detail {

// Centred first derivative at the cell centres, second-order one-sided at
// the two ends.
inline std::vector<double> centre_derivative(const std::vector<double>& f, double dx) {
  const size_t n = f.size();
  std::vector<double> d(n);
  for (size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * dx);
  d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * dx);
  d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * dx);
  return d;
}

}  // namespace detail

/// Discrete L2 distance over all seven fields; order 1 adds the L2 norm of
/// the first derivative of the difference.
inline double sobolev_norm(const State1D& s, const State1D& ref, int order) {
  if (!(s.grid == ref.grid)) throw InvalidParams("sobolev_norm: grid mismatch");
  if (order != 0 && order != 1) throw InvalidParams("sobolev_norm: order must be 0 or 1");
  const int n = s.size();
  const double dx = s.grid.dx();
  const auto a = s.fields();
  const auto b = ref.fields();
  double l2 = 0.0, h1 = 0.0;
  std::vector<double> d(n);
  for (int k = 0; k < 7; ++k) {
    for (int i = 0; i < n; ++i) d[i] = (*a[k])[i] - (*b[k])[i];
    for (int i = 0; i < n; ++i) l2 += d[i] * d[i] * dx;
    if (order == 1) {
      const auto dd = detail::centre_derivative(d, dx);
      for (int i = 0; i < n; ++i) h1 += dd[i] * dd[i] * dx;
    }
  }
  return std::sqrt(l2) + (order == 1 ? std::sqrt(h1) : 0.0);
}

struct DecayFit {
  double exponent = 0.0;
  bool super_polynomial = false;
  std::vector<double> window_exponents;  // fits for windows ending at 1/2, 3/4 and all of the series
};

namespace detail {

inline double trailing_slope(std::span<const double> t, std::span<const double> y, double window) {
  const size_t n = t.size();
  const size_t start = std::min(n - 2, static_cast<size_t>(std::floor((1.0 - window) * n)));
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(n - start);
  for (size_t i = start; i < n; ++i) {
    const double x = std::log1p(t[i]), l = std::log(y[i]);
    sx += x;
    sy += l;
    sxx += x * x;
    sxy += x * l;
  }
  const double den = m * sxx - sx * sx;
  if (!(den > 0.0)) throw InvalidParams("decay_fit: degenerate time series");
  return -(m * sxy - sx * sy) / den;
}

}  // namespace detail

/// Fits norms ~ (1 + t)^(-exponent) by least squares on the trailing
/// `window` fraction of the series.
inline DecayFit decay_fit(std::span<const double> times, std::span<const double> norms, double window = 0.5) {
  const size_t n = times.size();
  if (norms.size() != n) throw InvalidParams("decay_fit: times and norms differ in length");
  if (n < 10) throw InvalidParams("decay_fit: need at least 10 samples");
  if (!(window > 0.0 && window <= 1.0)) throw InvalidParams("decay_fit: window must lie in (0, 1]");
  for (size_t i = 0; i < n; ++i) {
    if (!(norms[i] > 0.0) || !std::isfinite(norms[i])) throw InvalidParams("decay_fit: norms must be positive");
    if (!(times[i] >= 0.0)) throw InvalidParams("decay_fit: times must be nonnegative");
    if (i > 0 && !(times[i] > times[i - 1])) throw InvalidParams("decay_fit: times must increase");
  }
  DecayFit fit;
  fit.exponent = detail::trailing_slope(times, norms, window);
  for (size_t end : {n / 2, (3 * n) / 4, n}) {
    if (end < 5) continue;
    fit.window_exponents.push_back(detail::trailing_slope(times.first(end), norms.first(end), window));
  }
  bool growing = fit.window_exponents.size() >= 2;
  for (size_t k = 1; k < fit.window_exponents.size(); ++k) {
    const double a = fit.window_exponents[k - 1], b = fit.window_exponents[k];
    if (!(b > a + 1e-3 * std::max(1.0, std::abs(a)))) growing = false;
  }
  fit.super_polynomial = growing;
  return fit;
}

/// Snapshot functionals. `reference` is the equilibrium used for the
/// Sobolev distance (omitted: distance reported as 0).
inline DiagnosticsRecord compute_diagnostics(const State1D& s, const Model& m,
                                             const State1D* reference = nullptr) {
  DiagnosticsRecord d;
  d.time = s.time;
  d.total_mass = total_mass(s);
  d.total_energy = total_energy(s, m.eos, m.transport.mu);
  d.total_entropy = m.eos.has_temperature() ? total_entropy(s, m.eos) : 0.0;
  d.min_theta = *std::min_element(s.theta.begin(), s.theta.end());
  double dmin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < s.size(); ++i) dmin = std::min(dmin, s.density(i));
  d.min_density = dmin;
  const auto r = entropy_production_density(s, m.eos, m.transport, m.bc);
  d.min_entropy_production = *std::min_element(r.begin(), r.end());
  d.sobolev_norm_s1 = reference ? sobolev_norm(s, *reference, 1) : 0.0;
  return d;
}

}  // namespace mhd1d
