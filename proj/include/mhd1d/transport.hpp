#pragma once

// Transport coefficient laws. All laws share the temperature scaling
// (1 + theta^alpha), except heat conduction, which grows like theta^q plus a
// radiative theta^3 part.

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>

#include "mhd1d/error.hpp"
#include "mhd1d/report.hpp"

namespace mhd1d {

enum class TransportLaw { scaled, constant };

struct TransportParams {
  double nu0 = 1.0;
  double eta0 = 1.0;
  double alpha = 1.0;
  double kappa0 = 1.0;
  double q = 2.6;
  double kappaR = 1.0;
  double sigma0 = 1.0;
  double mu = 1.0;
  TransportLaw law = TransportLaw::scaled;

  /// nu, eta, kappa and sigma all constant (kappaR is ignored).
  static TransportParams constant(double nu, double eta, double kappa, double sigma,
                                  double mu = 1.0) {
    TransportParams p;
    p.nu0 = nu;
    p.eta0 = eta;
    p.kappa0 = kappa;
    p.kappaR = 0.0;
    p.sigma0 = sigma;
    p.mu = mu;
    p.law = TransportLaw::constant;
    return p;
  }

  void validate() const {
    if (!(nu0 > 0.0)) throw InvalidParams("transport: nu0 must be > 0");
    if (!(eta0 >= 0.0)) throw InvalidParams("transport: eta0 must be >= 0");
    if (!(kappa0 > 0.0)) throw InvalidParams("transport: kappa0 must be > 0");
    if (!(kappaR >= 0.0)) throw InvalidParams("transport: kappaR must be >= 0");
    if (!(sigma0 > 0.0)) throw InvalidParams("transport: sigma0 must be > 0");
    if (!(mu > 0.0)) throw InvalidParams("transport: mu must be > 0");
    if (law == TransportLaw::scaled) {
      if (!(alpha >= 1.0)) throw InvalidParams("transport: alpha must be >= 1");
      if (!(q > 0.0)) throw InvalidParams("transport: q must be > 0");
    }
  }
};

namespace coeff {

// Unchecked kernels, templated for use inside the solver and with dual numbers.

template <class T>
T scaling(const TransportParams& p, const T& theta) {
  using std::pow;
  if (p.law == TransportLaw::constant) return T(1.0);
  return 1.0 + pow(theta, p.alpha);
}

template <class T>
T nu(const TransportParams& p, const T& theta) {
  return p.nu0 * scaling(p, theta);
}

template <class T>
T eta(const TransportParams& p, const T& theta) {
  return p.eta0 * scaling(p, theta);
}

/// 4/3 nu + eta
template <class T>
T longitudinal(const TransportParams& p, const T& theta) {
  return ((4.0 / 3.0) * p.nu0 + p.eta0) * scaling(p, theta);
}

template <class T>
T kappa(const TransportParams& p, const T& theta) {
  using std::pow;
  if (p.law == TransportLaw::constant) return T(p.kappa0);
  return p.kappa0 * (1.0 + pow(theta, p.q)) + p.kappaR * theta * theta * theta;
}

/// 1/sigma
template <class T>
T resistivity(const TransportParams& p, const T& theta) {
  return scaling(p, theta) / p.sigma0;
}

}  // namespace coeff

namespace detail {
inline void check_theta(double theta) {
  if (!(theta >= 0.0) || !std::isfinite(theta))
    throw DomainError("temperature must be nonnegative, got " + std::to_string(theta));
}
}  // namespace detail

inline double shear_viscosity(const TransportParams& p, double theta) {
  p.validate();
  detail::check_theta(theta);
  return coeff::nu(p, theta);
}

inline double bulk_viscosity(const TransportParams& p, double theta) {
  p.validate();
  detail::check_theta(theta);
  return coeff::eta(p, theta);
}

inline double heat_conductivity(const TransportParams& p, double rho, double theta) {
  p.validate();
  if (!(rho > 0.0)) throw DomainError("density must be positive, got " + std::to_string(rho));
  detail::check_theta(theta);
  return coeff::kappa(p, theta);
}

inline double resistivity(const TransportParams& p, double theta) {
  p.validate();
  detail::check_theta(theta);
  return coeff::resistivity(p, theta);
}

/// Growth thresholds on the conductivity exponent.
inline constexpr double kappa_threshold_strict = 2.5;
inline const double kappa_threshold_relaxed = (2.0 + std::sqrt(211.0)) / 9.0;
inline constexpr double alpha_weak_upper = 65.0 / 27.0;

inline ValidationReport check_bounds(const TransportParams& p, std::span<const double> theta) {
  p.validate();
  if (theta.empty()) throw InvalidParams("check_bounds: empty temperature grid");
  for (double t : theta)
    if (!(t >= 0.0)) throw InvalidParams("check_bounds: temperatures must be nonnegative");

  ValidationReport rep;
  const bool scaled = p.law == TransportLaw::scaled;
  auto corridor = [&](const char* name, auto law, double lo, double hi) {
    for (double t : theta) {
      const double s = scaled ? 1.0 + std::pow(t, p.alpha) : 1.0;
      const double v = law(t);
      const double tol = 1e-12 * std::max(1.0, std::abs(hi * s));
      if (v < lo * s - tol || v > hi * s + tol || !std::isfinite(v)) {
        rep.add(name, Severity::fail, "outside corridor", t);
        return;
      }
    }
    rep.add(name, Severity::pass, "within corridor");
  };
  corridor("nu.corridor", [&](double t) { return coeff::nu(p, t); }, p.nu0, p.nu0);
  corridor("eta.corridor", [&](double t) { return coeff::eta(p, t); }, 0.0, p.eta0);
  corridor("resistivity.corridor", [&](double t) { return coeff::resistivity(p, t); },
           1.0 / p.sigma0, 1.0 / p.sigma0);

  {
    std::optional<double> at;
    for (double t : theta) {
      const double k = coeff::kappa(p, t);
      const double lower = scaled ? p.kappa0 * (1.0 + std::pow(t, p.q)) : p.kappa0;
      if (!(k >= lower * (1.0 - 1e-12)) || !std::isfinite(k)) {
        at = t;
        break;
      }
    }
    rep.add("kappa.growth", at ? Severity::fail : Severity::pass,
            at ? "below (1 + theta^q) growth" : "kappa >= kappa0 (1 + theta^q)", at);
  }

  if (scaled) {
    if (p.q > kappa_threshold_strict) {
      rep.add("kappa.exponent", Severity::pass, "q > 5/2");
    } else if (p.q > kappa_threshold_relaxed) {
      rep.add("kappa.exponent", Severity::warning,
              "q <= 5/2: only the relaxed threshold (2 + sqrt 211)/9 holds");
    } else {
      rep.add("kappa.exponent", Severity::warning, "below both existence thresholds");
    }
    rep.add("alpha.weak_range", Severity::pass,
            p.alpha <= alpha_weak_upper ? "alpha <= 65/27"
                                        : "alpha > 65/27 (outside the 3D weak-existence range; "
                                          "informational)");
  }
  return rep;
}

}  // namespace mhd1d
