#pragma once

// Batch experiments. Each returns a table (written as CSV by the caller) and
// a list of PASS/FAIL checks for the properties it asserts.

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <string>
#include <vector>

#include "mhd1d/config.hpp"
#include "mhd1d/diagnostics.hpp"
#include "mhd1d/report.hpp"
#include "mhd1d/run.hpp"
#include "mhd1d/scenario.hpp"
#include "mhd1d/thermo.hpp"
#include "mhd1d/transport.hpp"

namespace mhd1d {

struct ExperimentReport {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  ValidationReport checks;
  std::vector<std::string> warnings;

  bool passed() const { return checks.passed(); }
};

namespace detail {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

// Distance between two states over a group of fields (indices into
// State1D::fields()); order 1 is the full discrete H1 norm.
inline double group_distance(const State1D& a, const State1D& b, std::initializer_list<int> group, int order) {
  if (!(a.grid == b.grid)) throw InvalidParams("group_distance: grid mismatch");
  const int n = a.size();
  const double dx = a.grid.dx();
  const auto fa = a.fields();
  const auto fb = b.fields();
  double sum = 0.0;
  std::vector<double> d(n);
  for (int k : group) {
    for (int i = 0; i < n; ++i) d[i] = (*fa[k])[i] - (*fb[k])[i];
    for (double x : d) sum += x * x * dx;
    if (order == 1)
      for (double x : centre_derivative(d, dx)) sum += x * x * dx;
  }
  return std::sqrt(sum);
}

// Cell averages of pairs: the 2N state restricted to the N grid.
inline State1D restrict_to_coarse(const State1D& fine) {
  if (fine.size() % 2 != 0) throw InvalidParams("restrict_to_coarse: odd cell count");
  State1D coarse(Grid1D(fine.size() / 2, fine.coordinate(), fine.grid.domain_length), fine.time);
  const auto f = fine.fields();
  auto c = coarse.fields();
  for (int k = 0; k < 7; ++k)
    for (int i = 0; i < coarse.size(); ++i) (*c[k])[i] = 0.5 * ((*f[k])[2 * i] + (*f[k])[2 * i + 1]);
  return coarse;
}

inline bool strictly_decreasing(const std::vector<double>& v) {
  for (size_t i = 1; i < v.size(); ++i)
    if (!(v[i] < v[i - 1])) return false;
  return true;
}

inline std::string join(const std::vector<double>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt17(v[i]);
  return s;
}

inline void add_monotone_check(ExperimentReport& r, const std::string& name, const std::vector<double>& v) {
  r.checks.add(name, strictly_decreasing(v) ? Severity::pass : Severity::fail, "[" + join(v) + "]");
}

}  // namespace detail

/// log2 of successive error ratios.
inline std::vector<double> observed_orders(const std::vector<double>& errors) {
  std::vector<double> o;
  for (size_t i = 1; i < errors.size(); ++i) {
    if (!(errors[i] > 0.0) || !(errors[i - 1] > 0.0)) throw InvalidParams("observed_orders: errors must be positive");
    o.push_back(std::log2(errors[i - 1] / errors[i]));
  }
  return o;
}

/// Runs `base` for each nu in `nu_values` and once at `floor` (default half the
/// smallest value), and reports distances of each final state to the floor run.
inline ExperimentReport shear_viscosity_sweep(const RunConfig& base, const std::vector<double>& nu_values,
                                              double floor = 0.0) {
  if (nu_values.size() < 2) throw InvalidParams("shear_viscosity_sweep: need at least two viscosities");
  for (size_t i = 0; i < nu_values.size(); ++i) {
    if (!(nu_values[i] > 0.0)) throw InvalidParams("shear_viscosity_sweep: viscosities must be positive");
    if (i && !(nu_values[i] < nu_values[i - 1]))
      throw InvalidParams("shear_viscosity_sweep: viscosities must decrease strictly");
  }
  if (floor == 0.0) floor = 0.5 * nu_values.back();
  if (!(floor > 0.0 && floor < nu_values.back()))
    throw InvalidParams("shear_viscosity_sweep: floor must lie in (0, min nu)");

  ExperimentReport r;
  r.name = "sweep-nu";
  r.header = {"nu", "l2_density_or_volume", "l2_w", "l2_theta", "h1_u", "h1_b"};

  const State1D s0 = initial_state(base);
  bool transverse = false;
  for (int i = 0; i < s0.size(); ++i)
    transverse = transverse || s0.w1[i] != 0.0 || s0.w2[i] != 0.0 || s0.b2[i] != 0.0 || s0.b3[i] != 0.0;
  if (!transverse) r.warnings.push_back("transverse subsystem inactive; sweep uninformative");

  auto final_at = [&](double nu) {
    RunConfig c = base;
    c.transport.nu0 = nu;
    return run(c).final_state();
  };
  const State1D limit = final_at(floor);
  std::vector<std::vector<double>> cols(5);
  for (double nu : nu_values) {
    const State1D s = final_at(nu);
    const double d[5] = {detail::group_distance(s, limit, {0}, 0), detail::group_distance(s, limit, {2, 3}, 0),
                         detail::group_distance(s, limit, {4}, 0), detail::group_distance(s, limit, {1}, 1),
                         detail::group_distance(s, limit, {5, 6}, 1)};
    r.rows.push_back({nu, d[0], d[1], d[2], d[3], d[4]});
    for (int k = 0; k < 5; ++k) cols[k].push_back(d[k]);
  }
  for (int k = 0; k < 5; ++k) detail::add_monotone_check(r, "sweep_nu." + r.header[k + 1] + ".decreasing", cols[k]);
  if (!transverse) r.checks.add("sweep_nu.transverse_active", Severity::warning, r.warnings.back());
  return r;
}

/// Artificial-pressure energy delta * sum rho^Gamma / (Gamma - 1) * dx.
inline double artificial_energy_proxy(const State1D& s, double delta, double Gamma) {
  if (!(Gamma > 1.0)) throw InvalidParams("artificial_energy_proxy: Gamma must exceed 1");
  double sum = 0.0;
  for (int i = 0; i < s.size(); ++i) sum += std::pow(s.density(i), Gamma);
  return delta * sum / (Gamma - 1.0) * s.grid.dx();
}

/// Runs `base` over the (delta, epsilon) grid plus both axes, comparing each
/// final state with the unregularized run.
inline ExperimentReport regularization_sweep(const RunConfig& base, const std::vector<double>& delta_values,
                                             const std::vector<double>& epsilon_values) {
  auto check_list = [](const std::vector<double>& v, const char* what) {
    if (v.empty()) throw InvalidParams(std::string("regularization_sweep: empty ") + what + " list");
    for (size_t i = 0; i < v.size(); ++i) {
      if (!(v[i] > 0.0)) throw InvalidParams(std::string("regularization_sweep: ") + what + " values must be > 0");
      if (i && !(v[i] < v[i - 1]))
        throw InvalidParams(std::string("regularization_sweep: ") + what + " values must decrease toward 0");
    }
  };
  check_list(delta_values, "delta");
  check_list(epsilon_values, "epsilon");
  if (base.coordinate != Coordinate::eulerian)
    throw InvalidParams("regularization_sweep: regularization exists only in Eulerian coordinates");
  if (!(base.reg.Gamma > 8.0)) throw InvalidParams("Gamma required > 8 when delta > 0");

  const double Gamma = base.reg.Gamma;
  auto final_at = [&](double delta, double eps) {
    RunConfig c = base;
    c.reg.delta = delta;
    c.reg.epsilon = eps;
    return run(c).final_state();
  };

  ExperimentReport r;
  r.name = "sweep-reg";
  r.header = {"delta", "epsilon", "l2_distance", "proxy_fixed_state", "proxy_own_state"};
  const State1D baseline = final_at(0.0, 0.0);
  auto add_row = [&](double d, double e, const State1D& s) {
    const double dist = sobolev_norm(s, baseline, 0);
    r.rows.push_back({d, e, dist, artificial_energy_proxy(baseline, d, Gamma), artificial_energy_proxy(s, d, Gamma)});
    return dist;
  };

  const double self = add_row(0.0, 0.0, final_at(0.0, 0.0));
  r.checks.add("sweep_reg.baseline_zero", self == 0.0 ? Severity::pass : Severity::fail,
               "distance of the baseline to itself = " + detail::fmt17(self));

  std::vector<double> d_axis, e_axis, diag, proxy;
  for (double d : delta_values) {
    d_axis.push_back(add_row(d, 0.0, final_at(d, 0.0)));
    proxy.push_back(artificial_energy_proxy(baseline, d, Gamma));
  }
  for (double e : epsilon_values) e_axis.push_back(add_row(0.0, e, final_at(0.0, e)));
  for (size_t i = 0; i < delta_values.size(); ++i)
    for (size_t j = 0; j < epsilon_values.size(); ++j) {
      const double dist = add_row(delta_values[i], epsilon_values[j], final_at(delta_values[i], epsilon_values[j]));
      if (i == j) diag.push_back(dist);
    }

  detail::add_monotone_check(r, "sweep_reg.delta_axis.decreasing", d_axis);
  detail::add_monotone_check(r, "sweep_reg.epsilon_axis.decreasing", e_axis);
  if (diag.size() >= 2) detail::add_monotone_check(r, "sweep_reg.diagonal.decreasing", diag);
  detail::add_monotone_check(r, "sweep_reg.proxy.decreasing", proxy);
  double worst = 0.0;
  for (size_t i = 0; i < delta_values.size(); ++i)
    worst = std::max(worst, std::abs(proxy[i] / delta_values[i] - proxy[0] / delta_values[0]) / (proxy[0] / delta_values[0]));
  r.checks.add("sweep_reg.proxy.linear_in_delta", worst < 1e-12 ? Severity::pass : Severity::fail,
               "max relative deviation of proxy/delta = " + detail::fmt17(worst));
  return r;
}

struct DecayOptions {
  double bound = 10.0;  // allowed growth of the H1 distance over its initial value
};

/// Perturbs the equilibrium of `base` with each amplitude and tracks the H1
/// distance to it.
inline ExperimentReport equilibrium_decay_study(const RunConfig& base, const std::vector<double>& amplitudes,
                                                const DecayOptions& opt = {}) {
  if (amplitudes.empty()) throw InvalidParams("equilibrium_decay_study: no amplitudes");
  if (base.bc.kind == BcKind::free_boundary)
    throw InvalidParams("equilibrium_decay_study: needs periodic or fixed-dirichlet boundaries");
  ExperimentReport r;
  r.name = "decay";
  r.header = {"amplitude", "initial_norm", "max_ratio", "final_ratio", "fitted_exponent", "super_polynomial"};
  std::vector<double> amps, initial;
  for (double a : amplitudes) {
    if (!(a >= 0.0)) throw InvalidParams("equilibrium_decay_study: amplitudes must be >= 0");
    RunConfig c = base;
    c.scenario = "equilibrium";
    c.perturb_amplitude = a;
    const State1D ref = reference_equilibrium(c);
    std::vector<double> times, norms;
    run(c, [&](const State1D& s) {
      times.push_back(s.time);
      norms.push_back(sobolev_norm(s, ref, 1));
    });
    const double n0 = norms.front();
    const std::string tag = "decay.amplitude=" + detail::fmt17(a);
    if (a == 0.0 || n0 == 0.0) {
      r.rows.push_back({a, n0, detail::nan, detail::nan, detail::nan, 0.0});
      r.checks.add(tag + ".trivial", Severity::pass, "unperturbed equilibrium; ratios undefined");
      continue;
    }
    const double mx = *std::max_element(norms.begin(), norms.end());
    double exponent = detail::nan;
    bool superpoly = false;
    bool fitted = false;
    if (times.size() >= 10) {
      try {
        const auto fit = decay_fit(times, norms);
        exponent = fit.exponent;
        superpoly = fit.super_polynomial;
        fitted = true;
      } catch (const InvalidParams&) {
      }
    }
    r.rows.push_back({a, n0, mx / n0, norms.back() / n0, exponent, superpoly ? 1.0 : 0.0});
    r.checks.add(tag + ".bounded", mx <= opt.bound * n0 ? Severity::pass : Severity::fail,
                 "max/initial = " + detail::fmt17(mx / n0) + " (bound " + detail::fmt17(opt.bound) + ")");
    r.checks.add(tag + ".decays", norms.back() < n0 ? Severity::pass : Severity::fail,
                 "final/initial = " + detail::fmt17(norms.back() / n0));
    if (!fitted) r.warnings.push_back(tag + ": too few samples for a decay fit");
    amps.push_back(a);
    initial.push_back(n0);
  }
  if (amps.size() >= 2) {
    double worst = 0.0;
    const double ref = initial[0] / amps[0];
    for (size_t i = 1; i < amps.size(); ++i) worst = std::max(worst, std::abs(initial[i] / amps[i] - ref) / ref);
    r.checks.add("decay.initial_norm.linear", worst <= 0.01 ? Severity::pass : Severity::fail,
                 "max relative deviation of norm/amplitude = " + detail::fmt17(worst));
  }
  return r;
}

struct ConvergenceOptions {
  double min_order = 1.7;         // manufactured: required L2 order for every field group
  double min_self_ratio = 3.0;    // self-convergence: required ratio of successive differences
};

/// Manufactured scenario: L2 error against the exact fields and observed
/// order per field group. Other scenarios: differences between successive
/// resolutions (the finer one restricted) and their ratios.
inline ExperimentReport convergence_study(const RunConfig& base, const std::vector<int>& n_list,
                                          const ConvergenceOptions& opt = {}) {
  for (size_t i = 1; i < n_list.size(); ++i) {
    if (!(n_list[i] > n_list[i - 1])) throw InvalidParams("resolutions must increase");
    if (n_list[i] != 2 * n_list[i - 1]) throw InvalidParams("resolutions must double (non-doubling list)");
  }
  if (n_list.size() < 3) throw InvalidParams("convergence_study: need at least three resolutions");

  ExperimentReport r;
  r.name = "converge";
  std::vector<State1D> finals;
  for (int n : n_list) {
    RunConfig c = base;
    c.n_cells = n;
    finals.push_back(run(c).final_state());
  }

  if (base.scenario == "manufactured") {
    const char* names[5] = {"density_or_volume", "u", "w", "theta", "b"};
    r.header = {"n", "err_density_or_volume", "err_u", "err_w", "err_theta", "err_b",
                "order_density_or_volume", "order_u", "order_w", "order_theta", "order_b"};
    std::vector<std::vector<double>> errs(5);
    for (size_t k = 0; k < n_list.size(); ++k) {
      const State1D& s = finals[k];
      const State1D exact = manufactured_state(manufactured_fields(base), s.grid, s.time);
      const double e[5] = {detail::group_distance(s, exact, {0}, 0), detail::group_distance(s, exact, {1}, 0),
                           detail::group_distance(s, exact, {2, 3}, 0), detail::group_distance(s, exact, {4}, 0),
                           detail::group_distance(s, exact, {5, 6}, 0)};
      for (int g = 0; g < 5; ++g) errs[g].push_back(e[g]);
    }
    std::vector<std::vector<double>> orders(5);
    for (int g = 0; g < 5; ++g) orders[g] = observed_orders(errs[g]);
    for (size_t k = 0; k < n_list.size(); ++k) {
      std::vector<double> row{static_cast<double>(n_list[k])};
      for (int g = 0; g < 5; ++g) row.push_back(errs[g][k]);
      for (int g = 0; g < 5; ++g) row.push_back(k ? orders[g][k - 1] : detail::nan);
      r.rows.push_back(row);
    }
    for (int g = 0; g < 5; ++g) {
      const double mn = *std::min_element(orders[g].begin(), orders[g].end());
      r.checks.add(std::string("converge.order.") + names[g], mn >= opt.min_order ? Severity::pass : Severity::fail,
                   "orders [" + detail::join(orders[g]) + "], required >= " + detail::fmt17(opt.min_order));
    }
    return r;
  }

  r.header = {"n", "difference_to_next", "ratio", "order"};
  std::vector<double> diffs;
  for (size_t k = 0; k + 1 < finals.size(); ++k)
    diffs.push_back(sobolev_norm(detail::restrict_to_coarse(finals[k + 1]), finals[k], 0));
  for (size_t k = 0; k < n_list.size(); ++k) {
    const double d = k < diffs.size() ? diffs[k] : detail::nan;
    const double ratio = k + 1 < diffs.size() ? diffs[k] / diffs[k + 1] : detail::nan;
    r.rows.push_back({static_cast<double>(n_list[k]), d, ratio, std::log2(ratio)});
  }
  for (size_t k = 0; k + 1 < diffs.size(); ++k) {
    const double ratio = diffs[k] / diffs[k + 1];
    r.checks.add("converge.self_ratio.n=" + std::to_string(n_list[k]),
                 ratio >= opt.min_self_ratio ? Severity::pass : Severity::fail,
                 "ratio " + detail::fmt17(ratio) + ", required >= " + detail::fmt17(opt.min_self_ratio));
  }
  return r;
}

/// Thermodynamic and transport checks of a configuration.
inline ExperimentReport validate_eos(const RunConfig& c) {
  ExperimentReport r;
  r.name = "validate-eos";
  r.header = {"rho", "theta", "maxwell_relative_residual"};
  if (c.eos.mode == EosMode::general_pf) {
    const auto z = log_grid(1e-4, 1e4, 161);
    for (const auto& ch : validate_pf_closure(*c.eos.pf, z).checks) r.checks.checks.push_back(ch);
  }
  if (c.eos.mode != EosMode::barotropic) {
    const auto rho = log_grid(1e-3, 1e3, 20);
    const auto theta = log_grid(1e-3, 1e3, 20);
    double worst = 0.0;
    for (double x : rho)
      for (double t : theta) {
        const double res = maxwell_residual_relative(c.eos, {x, t});
        worst = std::max(worst, res);
        r.rows.push_back({x, t, res});
      }
    r.checks.add("eos.maxwell", worst < 1e-6 ? Severity::pass : Severity::fail,
                 "max relative residual " + detail::fmt17(worst) + " on a 20x20 lattice");
  }
  const auto theta = log_grid(1e-3, 1e3, 61);
  for (const auto& ch : check_bounds(c.transport, theta).checks) r.checks.checks.push_back(ch);
  return r;
}

}  // namespace mhd1d
