#pragma once

// Thermodynamic closure: pressure, internal energy, entropy and magnetic
// energy for the three supported equation-of-state modes, plus the
// structural checks on a general fluid pressure function P_F.
//
// The templated kernels in mhd1d::eos take any scalar (double or Dual<...>)
// and skip validation; the free functions in mhd1d validate their inputs.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "mhd1d/dual.hpp"
#include "mhd1d/error.hpp"
#include "mhd1d/report.hpp"

namespace mhd1d {

enum class EosMode { full_radiative, barotropic, general_pf };

/// Structural fluid pressure p_F(rho, theta) = theta^{5/2} P_F(rho / theta^{3/2}).
struct PfClosure {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  double p_infinity = 0.0;  // declared limit of P_F(z) / z^{5/3}

  /// P_F(z) = linear * z + degenerate * z^{5/3}: a perfect gas with a
  /// degenerate (Fermi) correction.
  static PfClosure mixed(double linear, double degenerate) {
    return {[=](double z) { return linear * z + degenerate * std::pow(z, 5.0 / 3.0); },
            [=](double z) { return linear + (5.0 / 3.0) * degenerate * std::pow(z, 2.0 / 3.0); },
            degenerate};
  }
};

struct EosParams {
  EosMode mode = EosMode::full_radiative;
  double R = 1.0;
  double C_V = 1.5;
  double a = 0.0;
  double A = 1.0;
  double gamma = 5.0 / 3.0;
  std::optional<PfClosure> pf;
  double s_ref = 0.0;

  static EosParams full_radiative(double R, double C_V, double a, double s_ref = 0.0) {
    EosParams p;
    p.mode = EosMode::full_radiative;
    p.R = R;
    p.C_V = C_V;
    p.a = a;
    p.s_ref = s_ref;
    return p;
  }

  static EosParams barotropic(double A, double gamma) {
    EosParams p;
    p.mode = EosMode::barotropic;
    p.A = A;
    p.gamma = gamma;
    return p;
  }

  static EosParams general_pf(PfClosure closure, double a = 0.0, double s_ref = 0.0) {
    EosParams p;
    p.mode = EosMode::general_pf;
    p.pf = std::move(closure);
    p.a = a;
    p.s_ref = s_ref;
    return p;
  }

  bool has_temperature() const { return mode != EosMode::barotropic; }

  void validate() const {
    switch (mode) {
      case EosMode::full_radiative:
        if (!(R > 0.0) || !(C_V > 0.0) || !(a >= 0.0))
          throw InvalidParams("full-radiative EOS requires R > 0, C_V > 0, a >= 0");
        break;
      case EosMode::barotropic:
        if (!(A > 0.0) || !(gamma > 1.0))
          throw InvalidParams("barotropic EOS requires A > 0, gamma > 1");
        break;
      case EosMode::general_pf:
        if (!pf || !pf->value || !pf->derivative)
          throw InvalidParams("general-pf EOS requires a P_F closure with value and derivative");
        if (!(a >= 0.0)) throw InvalidParams("general-pf EOS requires a >= 0");
        break;
    }
  }
};

struct ThermoPoint {
  double rho;
  double theta;
};

inline const char* to_string(EosMode m) {
  switch (m) {
    case EosMode::full_radiative: return "full-radiative";
    case EosMode::barotropic: return "barotropic";
    case EosMode::general_pf: return "general-pf";
  }
  return "?";
}

namespace eos {

namespace detail {

// P_F and P_F' are plain double functions; they cannot be differentiated
// through, so the general closure is restricted to double arithmetic.
template <class T>
void require_double(const EosParams& p) {
  if constexpr (!std::is_same_v<T, double>) {
    if (p.mode == EosMode::general_pf)
      throw InvalidParams("general-pf closures are evaluated in double precision only");
  }
}

inline double pf_value(const EosParams& p, double z) { return p.pf->value(z); }
inline double pf_derivative(const EosParams& p, double z) { return p.pf->derivative(z); }

}  // namespace detail

template <class T>
T pressure(const EosParams& p, const T& rho, const T& theta) {
  using std::pow;
  switch (p.mode) {
    case EosMode::full_radiative:
      return p.R * rho * theta + (p.a / 3.0) * pow(theta, 4.0);
    case EosMode::barotropic:
      return p.A * pow(rho, p.gamma);
    case EosMode::general_pf:
      detail::require_double<T>(p);
      if constexpr (std::is_same_v<T, double>) {
        const double z = rho / std::pow(theta, 1.5);
        return std::pow(theta, 2.5) * detail::pf_value(p, z) + (p.a / 3.0) * std::pow(theta, 4.0);
      }
  }
  return T(0.0);
}

template <class T>
T dp_drho(const EosParams& p, const T& rho, const T& theta) {
  using std::pow;
  switch (p.mode) {
    case EosMode::full_radiative:
      return p.R * theta;
    case EosMode::barotropic:
      return p.A * p.gamma * pow(rho, p.gamma - 1.0);
    case EosMode::general_pf:
      detail::require_double<T>(p);
      if constexpr (std::is_same_v<T, double>) {
        const double z = rho / std::pow(theta, 1.5);
        return theta * detail::pf_derivative(p, z);
      }
  }
  return T(0.0);
}

template <class T>
T dp_dtheta(const EosParams& p, const T& rho, const T& theta) {
  using std::pow;
  switch (p.mode) {
    case EosMode::full_radiative:
      return p.R * rho + (4.0 * p.a / 3.0) * pow(theta, 3.0);
    case EosMode::barotropic:
      return T(0.0);
    case EosMode::general_pf:
      detail::require_double<T>(p);
      if constexpr (std::is_same_v<T, double>) {
        const double z = rho / std::pow(theta, 1.5);
        return std::pow(theta, 1.5) *
                   (2.5 * detail::pf_value(p, z) - 1.5 * z * detail::pf_derivative(p, z)) +
               (4.0 * p.a / 3.0) * std::pow(theta, 3.0);
      }
  }
  return T(0.0);
}

/// Specific internal energy. Undefined (throws) for the barotropic mode.
template <class T>
T internal_energy(const EosParams& p, const T& rho, const T& theta) {
  using std::pow;
  switch (p.mode) {
    case EosMode::full_radiative:
      return p.C_V * theta + p.a * pow(theta, 4.0) / rho;
    case EosMode::barotropic:
      throw InvalidParams("barotropic EOS has no internal energy");
    case EosMode::general_pf:
      detail::require_double<T>(p);
      if constexpr (std::is_same_v<T, double>) {
        const double z = rho / std::pow(theta, 1.5);
        // e_F = (3/2) p_F / rho
        return 1.5 * std::pow(theta, 2.5) * detail::pf_value(p, z) / rho +
               p.a * std::pow(theta, 4.0) / rho;
      }
  }
  return T(0.0);
}

template <class T>
T de_dtheta(const EosParams& p, const T& rho, const T& theta) {
  using std::pow;
  switch (p.mode) {
    case EosMode::full_radiative:
      return p.C_V + 4.0 * p.a * pow(theta, 3.0) / rho;
    case EosMode::barotropic:
      throw InvalidParams("barotropic EOS has no internal energy");
    case EosMode::general_pf:
      detail::require_double<T>(p);
      if constexpr (std::is_same_v<T, double>) {
        const double z = rho / std::pow(theta, 1.5);
        const double P = detail::pf_value(p, z), dP = detail::pf_derivative(p, z);
        return 1.5 * ((5.0 / 3.0) * P - dP * z) / z + 4.0 * p.a * std::pow(theta, 3.0) / rho;
      }
  }
  return T(0.0);
}

/// Squared adiabatic sound speed dp/drho|_s.
template <class T>
T sound_speed_sq(const EosParams& p, const T& rho, const T& theta) {
  if (p.mode == EosMode::barotropic) return dp_drho(p, rho, theta);
  const T pt = dp_dtheta(p, rho, theta);
  return dp_drho(p, rho, theta) + theta * pt * pt / (rho * rho * de_dtheta(p, rho, theta));
}

/// Squared sound-speed bound used for time-step control: isothermal fluid part
/// plus (4/3) p_R / rho for radiation.
inline double stable_sound_speed_sq(const EosParams& p, double rho, double theta) {
  if (p.mode == EosMode::barotropic) return dp_drho(p, rho, theta);
  const double p_rad = (p.a / 3.0) * std::pow(theta, 4.0);
  return dp_drho(p, rho, theta) + (4.0 / 3.0) * p_rad / rho;
}

}  // namespace eos

// ---------------------------------------------------------------------------

namespace detail {

inline void check_point(const ThermoPoint& pt) {
  if (!(pt.rho > 0.0) || !std::isfinite(pt.rho))
    throw DomainError("density must be positive, got " + std::to_string(pt.rho));
  if (!(pt.theta > 0.0) || !std::isfinite(pt.theta))
    throw DomainError("temperature must be positive, got " + std::to_string(pt.theta));
}

inline void require_energy_mode(const EosParams& p, const char* what) {
  if (p.mode == EosMode::barotropic)
    throw InvalidParams(std::string(what) + " is undefined for the barotropic EOS");
}

}  // namespace detail

inline double pressure(const EosParams& params, const ThermoPoint& pt) {
  params.validate();
  if (params.mode == EosMode::barotropic) {
    if (!(pt.rho > 0.0)) throw DomainError("density must be positive");
    return eos::pressure(params, pt.rho, 1.0);
  }
  detail::check_point(pt);
  return eos::pressure(params, pt.rho, pt.theta);
}

inline double internal_energy(const EosParams& params, const ThermoPoint& pt) {
  params.validate();
  detail::require_energy_mode(params, "internal energy");
  detail::check_point(pt);
  return eos::internal_energy(params, pt.rho, pt.theta);
}

/// S_F(z) = int_1^z -(3/2) [(5/3) P_F - P_F' s] / s^2 ds, so S_F(1) = 0.
inline double entropy_from_pf(const PfClosure& closure, double z) {
  if (!(z > 0.0) || !std::isfinite(z))
    throw DomainError("entropy_from_pf requires z > 0, got " + std::to_string(z));
  if (!closure.value || !closure.derivative) throw InvalidParams("incomplete P_F closure");
  if (z == 1.0) return 0.0;

  // In t = ln s the integrand is -(3/2) [(5/3) P_F(s) - P_F'(s) s] / s, which
  // stays bounded as s -> 0 for any admissible closure.
  auto integrand = [&](double t) {
    const double s = std::exp(t);
    return -1.5 * ((5.0 / 3.0) * closure.value(s) - closure.derivative(s) * s) / s;
  };
  if (std::abs(std::log(z)) < 1e-4)
    return boost::math::quadrature::gauss<double, 7>::integrate(integrand, 0.0, std::log(z));
  constexpr double tol = 1e-10;
  double err = 0.0;
  const double result = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      integrand, 0.0, std::log(z), 20, tol, &err);
  const double scale = std::max(std::abs(result), std::abs(std::log(z)));
  if (!std::isfinite(result) || err > tol * scale + 1e-15)
    throw NumericalError("entropy_from_pf: quadrature did not converge (error estimate " +
                         std::to_string(err) + ")");
  return result;
}

namespace eos {

template <class T>
T entropy(const EosParams& p, const T& rho, const T& theta) {
  using std::log, std::pow;
  switch (p.mode) {
    case EosMode::full_radiative:
      return p.C_V * log(theta) - p.R * log(rho) + (4.0 * p.a / 3.0) * pow(theta, 3.0) / rho + p.s_ref;
    case EosMode::barotropic:
      throw InvalidParams("barotropic EOS has no entropy");
    case EosMode::general_pf:
      detail::require_double<T>(p);
      if constexpr (std::is_same_v<T, double>) {
        const double z = rho / std::pow(theta, 1.5);
        return entropy_from_pf(*p.pf, z) + (4.0 * p.a / 3.0) * std::pow(theta, 3.0) / rho + p.s_ref;
      }
  }
  return T(0.0);
}

}  // namespace eos

inline double specific_entropy(const EosParams& params, const ThermoPoint& pt) {
  params.validate();
  detail::require_energy_mode(params, "specific entropy");
  detail::check_point(pt);
  return eos::entropy(params, pt.rho, pt.theta);
}

/// Magnetic energy density |b|^2 / (2 mu) for constant permeability.
inline double magnetic_energy(double mu, double b_mag) {
  if (!(mu > 0.0)) throw DomainError("magnetic permeability must be positive");
  if (!(b_mag >= 0.0)) throw DomainError("field magnitude must be nonnegative");
  return b_mag * b_mag / (2.0 * mu);
}

/// M(s) = int_0^s tau d/dtau (tau mu(tau)) dtau for a field-dependent
/// permeability. `mu` must accept Dual<double>.
template <class MuFn>
double magnetic_energy_functional(MuFn&& mu, double s) {
  if (!(s >= 0.0)) throw DomainError("magnetic_energy_functional requires s >= 0");
  if (s == 0.0) return 0.0;
  auto integrand = [&](double tau) {
    const Dual<double> t = make_variable(tau);
    return tau * (t * mu(t)).der;
  };
  double err = 0.0;
  const double r = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      integrand, 0.0, s, 20, 1e-13, &err);
  return r;
}

// ---------------------------------------------------------------------------
// Maxwell relation residual: theta ds = de + p d(1/rho).

struct MaxwellComponents {
  double rho_component;    // theta s_rho - e_rho + p / rho^2
  double theta_component;  // theta s_theta - e_theta
  double rho_scale;        // magnitude of the largest term in each component
  double theta_scale;
};

template <class PFn, class EFn, class SFn>
MaxwellComponents maxwell_components(PFn&& p, EFn&& e, SFn&& s, const ThermoPoint& pt, double h) {
  if (!(h > 0.0) || !(h < 0.5))
    throw DomainError("maxwell stencil step must satisfy 0 < h < 0.5 (relative)");
  detail::check_point(pt);
  const double dr = h * pt.rho, dt = h * pt.theta;
  const double r0 = pt.rho, t0 = pt.theta;
  if (!(r0 - dr > 0.0) || !(t0 - dt > 0.0))
    throw DomainError("point too close to the domain boundary for the stencil");

  const double s_r = (s(r0 + dr, t0) - s(r0 - dr, t0)) / (2.0 * dr);
  const double e_r = (e(r0 + dr, t0) - e(r0 - dr, t0)) / (2.0 * dr);
  const double s_t = (s(r0, t0 + dt) - s(r0, t0 - dt)) / (2.0 * dt);
  const double e_t = (e(r0, t0 + dt) - e(r0, t0 - dt)) / (2.0 * dt);
  const double pv = p(r0, t0);

  MaxwellComponents c;
  c.rho_component = t0 * s_r - e_r + pv / (r0 * r0);
  c.theta_component = t0 * s_t - e_t;
  c.rho_scale = std::max({std::abs(t0 * s_r), std::abs(e_r), std::abs(pv / (r0 * r0))});
  c.theta_scale = std::max(std::abs(t0 * s_t), std::abs(e_t));
  return c;
}

inline MaxwellComponents maxwell_components(const EosParams& params, const ThermoPoint& pt,
                                            double h = 1e-5) {
  params.validate();
  detail::require_energy_mode(params, "maxwell_residual");
  auto p = [&](double r, double t) { return eos::pressure(params, r, t); };
  auto e = [&](double r, double t) { return eos::internal_energy(params, r, t); };
  auto s = [&](double r, double t) { return eos::entropy(params, r, t); };
  return maxwell_components(p, e, s, pt, h);
}

/// max over the two components of |theta ds - de - p d(1/rho)|, by centered
/// finite differences with relative step h.
inline double maxwell_residual(const EosParams& params, const ThermoPoint& pt, double h = 1e-5) {
  const auto c = maxwell_components(params, pt, h);
  return std::max(std::abs(c.rho_component), std::abs(c.theta_component));
}

template <class PFn, class EFn, class SFn>
double maxwell_residual(PFn&& p, EFn&& e, SFn&& s, const ThermoPoint& pt, double h = 1e-5) {
  const auto c = maxwell_components(p, e, s, pt, h);
  return std::max(std::abs(c.rho_component), std::abs(c.theta_component));
}

/// Residual normalised by the magnitude of the terms it balances.
inline double maxwell_residual_relative(const EosParams& params, const ThermoPoint& pt,
                                        double h = 1e-5) {
  const auto c = maxwell_components(params, pt, h);
  const double tiny = std::numeric_limits<double>::min();
  return std::max(std::abs(c.rho_component) / std::max(c.rho_scale, tiny),
                  std::abs(c.theta_component) / std::max(c.theta_scale, tiny));
}

// ---------------------------------------------------------------------------
// Structural validation of P_F.

namespace detail {

struct Extrapolation {
  double limit;
  bool converging;
};

// Three-point extrapolation of f(h) = L + C h^r (r > 0) to h -> 0, samples
// ordered h1 > h2 > h3 > 0. Reduces to Aitken's delta-squared on geometric
// spacing.
inline Extrapolation extrapolate_to_zero(double h1, double f1, double h2, double f2, double h3,
                                         double f3) {
  const double d1 = f1 - f2, d2 = f2 - f3;
  const double scale = std::max({std::abs(f1), std::abs(f2), std::abs(f3), 1e-300});
  if (std::abs(d1) <= 1e-10 * scale && std::abs(d2) <= 1e-10 * scale) return {f3, true};
  if (d1 * d2 <= 0.0 || std::abs(d2) >= std::abs(d1)) return {f3, false};

  const double target = d1 / d2;
  auto ratio = [&](double r) {
    return (std::pow(h1, r) - std::pow(h2, r)) / (std::pow(h2, r) - std::pow(h3, r));
  };
  double lo = 1e-8, hi = 50.0;
  if (target <= ratio(lo)) hi = lo;
  else if (target >= ratio(hi)) lo = hi;
  for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (ratio(mid) < target ? lo : hi) = mid;
  }
  const double r = 0.5 * (lo + hi);
  const double C = d2 / (std::pow(h2, r) - std::pow(h3, r));
  return {f3 - C * std::pow(h3, r), true};
}

inline std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace detail

/// Checks the structural hypotheses on P_F on a sampled grid. Strict
/// inequalities use an absolute margin of 1e-12; limits are extrapolated from
/// the three extreme grid points.
inline ValidationReport validate_pf_closure(const PfClosure& closure, std::span<const double> z) {
  if (z.empty()) throw InvalidParams("validate_pf_closure: empty grid");
  if (!closure.value || !closure.derivative) throw InvalidParams("incomplete P_F closure");
  for (size_t i = 0; i < z.size(); ++i) {
    if (!(z[i] > 0.0)) throw InvalidParams("validate_pf_closure: grid must be strictly positive");
    if (i > 0 && !(z[i] > z[i - 1]))
      throw InvalidParams("validate_pf_closure: grid must be strictly increasing");
  }
  if (z.size() < 3 || z.back() / z.front() < 1e4)
    throw InvalidParams("validate_pf_closure: grid must span at least four decades");

  constexpr double margin = 1e-12;
  const size_t n = z.size();
  std::vector<double> P(n), dP(n), G(n), ratio(n);
  for (size_t i = 0; i < n; ++i) {
    P[i] = closure.value(z[i]);
    dP[i] = closure.derivative(z[i]);
    G[i] = (5.0 / 3.0) * P[i] - dP[i] * z[i];
    ratio[i] = P[i] / std::pow(z[i], 5.0 / 3.0);
  }

  ValidationReport rep;
  auto first_where = [&](auto&& bad) -> std::optional<double> {
    for (size_t i = 0; i < n; ++i)
      if (bad(i)) return z[i];
    return std::nullopt;
  };

  {
    const double p0 = closure.value(0.0);
    const bool ok = std::abs(p0) <= margin;
    rep.add("p2.value_at_zero", ok ? Severity::pass : Severity::fail, "P_F(0) = " + detail::fmt(p0));
  }
  {
    auto at = first_where([&](size_t i) { return !(dP[i] > margin); });
    rep.add("p2.increasing", at ? Severity::fail : Severity::pass,
            at ? "P_F'(z) <= 0" : "P_F'(z) > 0 on grid", at);
  }
  {
    auto at = first_where([&](size_t i) { return !(G[i] > margin); });
    rep.add("p2.energy_positivity", at ? Severity::fail : Severity::pass,
            at ? "(5/3) P_F - P_F' z <= 0" : "(5/3) P_F - P_F' z > 0 on grid", at);
  }
  {
    std::optional<double> at;
    for (size_t i = 1; i < n && !at; ++i)
      if (ratio[i] > ratio[i - 1] + margin) at = z[i];
    rep.add("p3.ratio_nonincreasing", at ? Severity::fail : Severity::pass,
            at ? "P_F(z)/z^{5/3} increases" : "P_F(z)/z^{5/3} non-increasing", at);
  }

  // z -> infinity: h = 1/z on the three largest points.
  const auto lim_ratio = detail::extrapolate_to_zero(1.0 / z[n - 3], ratio[n - 3], 1.0 / z[n - 2],
                                                     ratio[n - 2], 1.0 / z[n - 1], ratio[n - 1]);
  {
    const bool ok = lim_ratio.converging && lim_ratio.limit > margin;
    std::string d = "P_F(z)/z^{5/3} -> " + detail::fmt(lim_ratio.limit);
    if (!lim_ratio.converging) d += " (no finite limit)";
    else if (!ok) d += ", limit not positive";
    rep.add("p4.limit_positive", ok ? Severity::pass : Severity::fail, d,
            ok ? std::nullopt : std::optional<double>(z[n - 1]));
  }
  {
    const double tol = 1e-6 * std::max(1.0, std::abs(closure.p_infinity));
    const bool ok = std::abs(lim_ratio.limit - closure.p_infinity) <= tol;
    rep.add("p4.declared_limit", ok ? Severity::pass : Severity::fail,
            "extrapolated " + detail::fmt(lim_ratio.limit) + ", declared " +
                detail::fmt(closure.p_infinity));
  }

  // z -> 0: h = z on the three smallest points.
  {
    std::vector<double> g(3);
    for (int k = 0; k < 3; ++k) g[k] = G[k] / z[k];
    const auto lim = detail::extrapolate_to_zero(z[2], g[2], z[1], g[1], z[0], g[0]);
    const bool ok = lim.converging && lim.limit > margin && std::isfinite(lim.limit);
    rep.add("p5.small_z_bounds", ok ? Severity::pass : Severity::fail,
            "((5/3) P_F - P_F' z)/z -> " + detail::fmt(lim.limit),
            ok ? std::nullopt : std::optional<double>(z[0]));
  }
  {
    std::vector<double> g(3);
    for (int k = 0; k < 3; ++k) g[k] = G[n - 3 + k] / z[n - 3 + k];
    const auto lim =
        detail::extrapolate_to_zero(1.0 / z[n - 3], g[0], 1.0 / z[n - 2], g[1], 1.0 / z[n - 1], g[2]);
    const bool ok = lim.converging && std::isfinite(lim.limit);
    rep.add("p6.large_z_bound", ok ? Severity::pass : Severity::fail,
            "((5/3) P_F - P_F' z)/z -> " + detail::fmt(lim.limit),
            ok ? std::nullopt : std::optional<double>(z[n - 1]));
  }
  {
    const auto p_lim = detail::extrapolate_to_zero(z[2], P[2], z[1], P[1], z[0], P[0]);
    const auto dp_lim = detail::extrapolate_to_zero(z[2], dP[2], z[1], dP[1], z[0], dP[0]);
    std::vector<double> q(3);
    for (int k = 0; k < 3; ++k) q[k] = dP[n - 3 + k] / std::pow(z[n - 3 + k], 2.0 / 3.0);
    const auto q_lim =
        detail::extrapolate_to_zero(1.0 / z[n - 3], q[0], 1.0 / z[n - 2], q[1], 1.0 / z[n - 1], q[2]);
    const bool p_ok = p_lim.converging && std::abs(p_lim.limit) <= 1e-2 * std::abs(P[0]) + margin;
    const bool dp_ok = dp_lim.converging && dp_lim.limit > margin;
    const double expected = (5.0 / 3.0) * lim_ratio.limit;
    const bool q_ok = q_lim.converging && q_lim.limit > margin &&
                      std::abs(q_lim.limit - expected) <= 1e-6 * std::max(1.0, std::abs(expected));
    const bool ok = p_ok && dp_ok && q_ok;
    std::string d = "P_F(0+) -> " + detail::fmt(p_lim.limit) + ", P_F'(0+) -> " +
                    detail::fmt(dp_lim.limit) + ", P_F'/z^{2/3} -> " + detail::fmt(q_lim.limit);
    std::optional<double> at;
    if (!p_ok || !dp_ok) at = z[0];
    else if (!q_ok) at = z[n - 1];
    rep.add("p7.limits", ok ? Severity::pass : Severity::fail, d, at);
  }
  {
    double inf_q = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < n; ++i) inf_q = std::min(inf_q, dP[i] / std::pow(z[i], 2.0 / 3.0));
    const double p_c = 0.6 * inf_q;
    // p_F(rho, theta) - p_c rho^{5/3} = theta^{5/2} [P_F(z) - p_c z^{5/3}], so
    // monotonicity in rho reduces to monotonicity of h(z) on the grid.
    std::optional<double> at;
    double prev = P[0] - p_c * std::pow(z[0], 5.0 / 3.0);
    for (size_t i = 1; i < n && !at; ++i) {
      const double h = P[i] - p_c * std::pow(z[i], 5.0 / 3.0);
      if (h < prev - margin * std::max(1.0, std::abs(prev))) at = z[i];
      prev = h;
    }
    const bool ok = !at && p_c > 0.0;
    rep.add("p8.pc_monotone", ok ? Severity::pass : Severity::fail,
            "p_c = " + detail::fmt(p_c), at);
  }

  // Entropy log bounds, only meaningful when S_F is well defined.
  {
    std::optional<double> at_small, at_large;
    double c_lo = std::numeric_limits<double>::infinity(), c_hi = 0.0, c3 = 0.0;
    bool quad_ok = true;
    for (size_t i = 0; i < n; ++i) {
      if (z[i] == 1.0) continue;
      double S = 0.0;
      try {
        S = entropy_from_pf(closure, z[i]);
      } catch (const NumericalError&) {
        quad_ok = false;
        (z[i] < 1.0 ? at_small : at_large) = z[i];
        break;
      }
      const double r = S / (-std::log(z[i]));
      if (z[i] < 1.0) {
        if (!(r > margin) || !std::isfinite(r)) {
          if (!at_small) at_small = z[i];
        } else {
          c_lo = std::min(c_lo, r);
          c_hi = std::max(c_hi, r);
        }
      } else {
        if (S > margin || !(r >= 0.0) || !std::isfinite(r)) {
          if (!at_large) at_large = z[i];
        } else {
          c3 = std::max(c3, r);
        }
      }
    }
    rep.add("p12.small_z_log_bounds", at_small ? Severity::fail : Severity::pass,
            at_small ? (quad_ok ? "S_F/(-ln z) not positive" : "quadrature failed")
                     : "c2 = " + detail::fmt(c_lo) + ", c1 = " + detail::fmt(c_hi),
            at_small);
    rep.add("p13.large_z_log_bounds", at_large ? Severity::fail : Severity::pass,
            at_large ? (quad_ok ? "S_F > 0 or unbounded ratio" : "quadrature failed")
                     : "c3 = " + detail::fmt(c3),
            at_large);
  }
  return rep;
}

/// Log-spaced grid helper for the validators.
inline std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> g(points);
  const double a = std::log10(lo), b = std::log10(hi);
  for (int i = 0; i < points; ++i) g[i] = std::pow(10.0, a + (b - a) * i / (points - 1));
  return g;
}

}  // namespace mhd1d
