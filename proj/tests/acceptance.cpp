// Acceptance suite: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "mhd1d/mhd1d.hpp"

using namespace mhd1d;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
  bool ok = false;
  std::string detail;
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// Shared configuration of the smooth wall-bounded runs.
RunConfig smooth_walls(int n, Coordinate c, double t_end, double amplitude) {
  RunConfig r;
  r.scenario = "mixed-wave";
  r.coordinate = c;
  r.n_cells = n;
  r.t_end = t_end;
  r.cfl = 0.5;
  r.cadence = 1000000;
  r.eos = EosParams::full_radiative(1.0, 1.5, 0.1);
  r.transport.nu0 = r.transport.eta0 = r.transport.kappa0 = r.transport.kappaR = 0.01;
  r.transport.sigma0 = 100.0;
  r.ic.amplitude = amplitude;
  validate_config(r);
  return r;
}

Outcome maxwell_lattice() {
  const auto rho = log_grid(1e-3, 1e3, 20);
  const auto theta = log_grid(1e-3, 1e3, 20);
  const auto t0 = std::chrono::steady_clock::now();
  double worst[2] = {0.0, 0.0};
  const EosParams modes[2] = {EosParams::full_radiative(1.0, 1.5, 0.1),
                              EosParams::general_pf(PfClosure::mixed(1.0, 1.0), 0.1)};
  for (int k = 0; k < 2; ++k)
    for (double r : rho)
      for (double t : theta) worst[k] = std::max(worst[k], maxwell_residual_relative(modes[k], {r, t}));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {worst[0] < 1e-6 && worst[1] < 1e-6 && secs < 1.0,
          "max relative residual full-radiative " + num(worst[0]) + ", z+z^(5/3) " + num(worst[1]) + " (" +
              num(secs) + " s)"};
}

Outcome structural_suite() {
  const auto z = log_grid(1e-4, 1e4, 161);
  const auto t0 = std::chrono::steady_clock::now();
  const auto good = validate_pf_closure(PfClosure::mixed(1.0, 1.0), z);
  const PfClosure square{[](double x) { return x * x; }, [](double x) { return 2.0 * x; }, 0.0};
  const PfClosure linear{[](double x) { return x; }, [](double) { return 1.0; }, 0.0};
  const auto sq = validate_pf_closure(square, z);
  const auto li = validate_pf_closure(linear, z);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const std::string f_sq = sq.first_failure() ? sq.first_failure()->name : "none";
  const std::string f_li = li.first_failure() ? li.first_failure()->name : "none";
  return {good.passed() && f_sq == "p2.energy_positivity" && f_li == "p4.limit_positive" && secs < 1.0,
          std::string("z+z^(5/3) ") + (good.passed() ? "passes" : "fails") + ", z^2 rejected by " + f_sq +
              ", z rejected by " + f_li + " (" + num(secs) + " s)"};
}

struct ConservationRun {
  double energy_drift = 0.0;
  double mass_error = 0.0;
  double min_production = std::numeric_limits<double>::infinity();
  double worst_entropy_drop = 0.0;
  long steps = 0;
  double seconds = 0.0;
};

ConservationRun conservation_run() {
  const RunConfig c = smooth_walls(512, Coordinate::lagrangian, 1.0, 0.2);
  const Model m = build_model(c);
  ConservationRun out;
  double e0 = 0.0, s_prev = 0.0;
  bool first = true;
  const auto t0 = std::chrono::steady_clock::now();
  const auto tr = run(c, [&](const State1D& s) {
    const double e = total_energy(s, m.eos, m.transport.mu);
    const double ent = total_entropy(s, m.eos);
    double vol = 0.0;
    for (double v : s.density_or_volume) vol += v * s.grid.dx();
    if (first) {
      e0 = e;
      first = false;
    } else {
      out.worst_entropy_drop = std::max(out.worst_entropy_drop, s_prev - ent);
    }
    s_prev = ent;
    out.energy_drift = std::max(out.energy_drift, std::abs(e - e0) / std::abs(e0));
    out.mass_error = std::max(out.mass_error, std::abs(total_mass(s) - 1.0));
    out.mass_error = std::max(out.mass_error, std::abs(vol - 1.0));  // column length, an O(1) sanity bound
    const auto r = entropy_production_density(s, m.eos, m.transport, m.bc);
    out.min_production = std::min(out.min_production, *std::min_element(r.begin(), r.end()));
  });
  out.steps = tr.steps;
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

Outcome diffusion_oracles() {
  const int n = 256;
  const double t_end = 0.5;
  auto advance = [](State1D s, const Model& m, double t) {
    while (t - s.time > 1e-14) s = step(s, std::min(stable_dt(s, m, 0.5), t - s.time), m);
    return s;
  };
  auto coefficient = [](const State1D& s, const std::vector<double>& f, bool cosine) {
    double mean = 0.0;
    for (double x : f) mean += x / static_cast<double>(f.size());
    double a = 0.0;
    for (int i = 0; i < s.size(); ++i) {
      const double x = s.grid.center(i);
      a += 2.0 * (f[i] - mean) * (cosine ? std::cos(2 * pi * x) : std::sin(2 * pi * x)) * s.grid.dx();
    }
    return a;
  };

  Model heat;
  heat.eos = EosParams::full_radiative(1.0, 1.0, 0.0);
  const double kappa = 0.1;
  heat.transport = TransportParams::constant(1.0, 0.0, kappa, 1.0);
  heat.bc.kind = BcKind::periodic;
  heat.options.physics = {false, false, true, false};
  State1D s(Grid1D(n, Coordinate::eulerian), 0.0);
  for (int i = 0; i < n; ++i) s.theta[i] = 1.0 + 0.1 * std::cos(2 * pi * s.grid.center(i));
  const double a0 = coefficient(s, s.theta, true);
  const auto s1 = advance(s, heat, t_end);
  const double heat_err = std::abs(coefficient(s1, s1.theta, true) / a0 / std::exp(-4 * pi * pi * kappa * t_end) - 1.0);

  Model res = heat;
  const double sigma = 10.0, mu = 2.0;
  res.transport = TransportParams::constant(1.0, 0.0, 1.0, sigma, mu);
  res.options.physics = {false, false, false, true};
  State1D b(Grid1D(n, Coordinate::eulerian), 0.0);
  for (int i = 0; i < n; ++i) b.b2[i] = std::sin(2 * pi * b.grid.center(i));
  const double b0 = coefficient(b, b.b2, false);
  const auto b1 = advance(b, res, t_end);
  const double res_err =
      std::abs(coefficient(b1, b1.b2, false) / b0 / std::exp(-4 * pi * pi * t_end / (sigma * mu)) - 1.0);
  return {heat_err <= 0.02 && res_err <= 0.02,
          "relative amplitude error heat " + num(heat_err) + ", resistive " + num(res_err) + " (N=256, t=0.5)"};
}

Outcome poisson_oracle() {
  const int n = 256;
  std::vector<double> one(n, 1.0), sine(n);
  for (int i = 0; i < n; ++i) sine[i] = std::sin(pi * (i + 0.5) / n);
  const double e1 = std::abs(poisson_solve(one, 1.0).at(0.5) - 0.125);
  const double e2 = std::abs(poisson_solve(sine, 1.0).at(0.5) - 1.0 / (pi * pi));
  const double tol2 = 5.0 / (n * n);
  return {e1 <= 1e-6 && e2 <= tol2,
          "|psi(0.5) - 1/8| = " + num(e1) + ", |psi(0.5) - 1/pi^2| = " + num(e2) + " (tol " + num(tol2) + ")"};
}

Outcome cross_coordinate() {
  std::vector<double> err;
  for (int n : {256, 512}) {
    const auto e = run(smooth_walls(n, Coordinate::eulerian, 0.2, 0.2)).final_state();
    const auto l = run(smooth_walls(n, Coordinate::lagrangian, 0.2, 0.2)).final_state();
    err.push_back(sobolev_norm(to_lagrangian(e), l, 0));
  }
  const double ratio = err[1] / err[0];
  return {err[0] <= 5e-3 && ratio <= 0.65,
          "L2 mismatch N=256 " + num(err[0]) + ", N=512 " + num(err[1]) + ", ratio " + num(ratio) +
              " (required <= 5e-3 and ratio <= 0.65)"};
}

RunConfig shear_base() {
  RunConfig c;
  c.scenario = "transverse-shear";
  c.n_cells = 128;
  c.t_end = 0.5;
  c.cadence = 1000000;
  c.ic.amplitude = 0.5;
  c.eos = EosParams::full_radiative(1.0, 1.5, 0.1);
  c.transport.eta0 = 0.01;
  c.transport.kappa0 = c.transport.kappaR = 0.01;
  c.transport.sigma0 = 100.0;
  validate_config(c);
  return c;
}

Outcome report_outcome(const ExperimentReport& r, double seconds, double limit) {
  std::ostringstream os;
  for (const auto& ch : r.checks.checks)
    if (!ch.passed()) os << ch.name << " failed " << ch.detail << "; ";
  os << r.checks.checks.size() << " checks, " << num(seconds) << " s";
  return {r.passed() && seconds < limit, os.str()};
}

Outcome viscosity_sweep() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = shear_viscosity_sweep(shear_base(), {0.1, 0.05, 0.025, 0.0125});
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  auto o = report_outcome(r, secs, 300.0);
  if (!r.warnings.empty()) o.ok = false;
  return o;
}

Outcome regularization() {
  RunConfig c;
  c.scenario = "acoustic-pulse";
  c.n_cells = 128;
  c.t_end = 0.2;
  c.cadence = 1000000;
  c.ic.amplitude = 0.2;
  c.ic.width = 0.1;
  c.reg.Gamma = 10.0;
  c.transport.nu0 = c.transport.eta0 = c.transport.kappa0 = c.transport.kappaR = 0.01;
  validate_config(c);
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = regularization_sweep(c, {1e-2, 1e-3, 1e-4}, {1e-2, 1e-3, 1e-4});
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report_outcome(r, secs, 600.0);
}

Outcome decay() {
  RunConfig c;
  c.scenario = "equilibrium";
  c.bc.kind = BcKind::periodic;
  c.n_cells = 64;
  c.t_end = 5.0;
  c.cadence = 1000000;
  c.seed = 1;
  c.transport = TransportParams::constant(0.1, 0.05, 0.1, 10.0);
  validate_config(c);
  const auto r = equilibrium_decay_study(c, {1e-3});
  std::ostringstream os;
  os << "max/initial " << num(r.rows[0][2]) << ", final/initial " << num(r.rows[0][3])
     << ", fitted exponent " << num(r.rows[0][4]) << " (informational)";
  return {r.passed(), os.str()};
}

Outcome convergence() {
  std::ostringstream os;
  bool ok = true;
  for (auto coord : {Coordinate::eulerian, Coordinate::lagrangian}) {
    RunConfig c;
    c.scenario = "manufactured";
    c.coordinate = coord;
    c.bc.kind = BcKind::periodic;
    c.t_end = 0.5;
    c.cfl = 0.4;
    c.cadence = 1000000;
    c.ic.amplitude = 1.0;
    c.eos = EosParams::full_radiative(1.0, 1.5, 0.1);
    c.transport.nu0 = 0.05;
    c.transport.eta0 = 0.02;
    c.transport.kappa0 = 0.05;
    c.transport.kappaR = 0.01;
    c.transport.sigma0 = 10.0;
    validate_config(c);
    const auto r = convergence_study(c, {64, 128, 256});
    double mn = std::numeric_limits<double>::infinity();
    for (const auto& row : r.rows)
      for (size_t k = 6; k < row.size(); ++k)
        if (!std::isnan(row[k])) mn = std::min(mn, row[k]);
    ok = ok && r.passed();
    os << to_string(coord) << " min order " << num(mn) << "; ";
  }
  os << "required >= 1.7 for all five fields";
  return {ok, os.str()};
}

Outcome determinism() {
  const auto base = std::filesystem::temp_directory_path() / "mhd1d_acceptance_determinism";
  std::filesystem::remove_all(base);
  RunConfig c;
  c.scenario = "magnetic-diffusion";
  c.n_cells = 64;
  c.t_end = 0.2;
  c.cadence = 5;
  c.perturb_amplitude = 1e-2;
  c.seed = 2024;
  validate_config(c);
  const auto a = run_scenario(c, base / "first");
  const auto b = run_scenario(c, base / "second");
  bool same = a.exit_code == 0 && b.exit_code == 0;
  size_t bytes = 0;
  for (const char* f : {"fields.csv", "diagnostics.csv"}) {
    const auto x = slurp(a.directory / f), y = slurp(b.directory / f);
    same = same && !x.empty() && x == y;
    bytes += x.size();
  }
  std::filesystem::remove_all(base);
  return {same, std::to_string(bytes) + " bytes compared across two runs"};
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const std::string& name, const std::function<Outcome()>& fn) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.ok) ++failures;
    std::cout << (o.ok ? "PASS" : "FAIL") << " [" << id << "] " << name << ": " << o.detail << std::endl;
  };

  report(1, "thermodynamic consistency", maxwell_lattice);
  report(2, "structural hypothesis suite", structural_suite);

  ConservationRun cons;
  bool cons_ok = true;
  std::string cons_error;
  try {
    cons = conservation_run();
  } catch (const std::exception& e) {
    cons_ok = false;
    cons_error = e.what();
  }
  report(3, "conservation", [&]() -> Outcome {
    if (!cons_ok) return {false, "exception: " + cons_error};
    return {cons.energy_drift <= 1e-6 && cons.mass_error <= 1e-12 && cons.seconds < 120.0,
            "energy drift " + num(cons.energy_drift) + ", mass error " + num(cons.mass_error) + " (" +
                std::to_string(cons.steps) + " steps, " + num(cons.seconds) + " s)"};
  });
  report(4, "entropy law", [&]() -> Outcome {
    if (!cons_ok) return {false, "exception: " + cons_error};
    return {cons.min_production >= -1e-10 && cons.worst_entropy_drop <= 1e-8,
            "min production " + num(cons.min_production) + ", worst per-step entropy decrease " +
                num(cons.worst_entropy_drop)};
  });
  report(5, "analytic diffusion oracles", diffusion_oracles);
  report(6, "Poisson oracle", poisson_oracle);
  report(7, "cross-coordinate equivalence", cross_coordinate);
  report(8, "vanishing shear viscosity", viscosity_sweep);
  report(9, "vanishing regularization", regularization);
  report(10, "near-equilibrium boundedness and decay", decay);
  report(11, "convergence order", convergence);
  report(12, "determinism", determinism);

  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
