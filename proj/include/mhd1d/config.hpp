#pragma once

// Run configuration: flat `key = value` text, one entry per line, `#` starts
// a comment. Unknown keys are errors.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "mhd1d/error.hpp"
#include "mhd1d/state.hpp"
#include "mhd1d/thermo.hpp"
#include "mhd1d/transport.hpp"

namespace mhd1d {

/// Initial-condition knobs shared by the scenario library.
struct IcParams {
  double amplitude = 0.1;
  double width = 0.05;
  double center = 0.5;
  double rho0 = 1.0;
  double theta0 = 1.0;
};

struct RunConfig {
  std::string scenario = "equilibrium";
  Coordinate coordinate = Coordinate::eulerian;
  int n_cells = 64;
  double cfl = 0.5;
  double t_end = 1.0;
  BcSpec bc;
  EosParams eos = EosParams::full_radiative(1.0, 1.5, 0.0);
  double pf_linear = 1.0;
  double pf_degenerate = 1.0;
  TransportParams transport;
  RegularizationParams reg;
  GravityParams grav;
  double perturb_amplitude = 0.0;
  std::uint64_t seed = 0;
  std::string output_dir = "out";
  int cadence = 10;
  SolverOptions options;
  IcParams ic;

  Model model() const {
    Model m;
    m.eos = eos;
    m.transport = transport;
    m.bc = bc;
    m.reg = reg;
    m.grav = grav;
    m.options = options;
    return m;
  }

  Grid1D grid() const { return Grid1D(n_cells, coordinate, 1.0); }
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline double parse_double(const std::string& key, const std::string& v, int line) {
  try {
    size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("value of " + key + " is not a number: '" + v + "'", line, key);
  }
}

inline long long parse_integer(const std::string& key, const std::string& v, int line) {
  try {
    size_t pos = 0;
    const long long d = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("value of " + key + " is not an integer: '" + v + "'", line, key);
  }
}

inline bool parse_bool(const std::string& key, const std::string& v, int line) {
  if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "off" || v == "no") return false;
  throw ConfigError("value of " + key + " is not a boolean: '" + v + "'", line, key);
}

}  // namespace detail

/// Documented keys with their defaults, in the order used by --help and by
/// the canonical serialisation.
inline const std::vector<std::pair<std::string, std::string>>& config_keys() {
  static const std::vector<std::pair<std::string, std::string>> keys = {
      {"scenario", "equilibrium | acoustic-pulse | transverse-shear | magnetic-diffusion | gravity-settling | "
                   "free-boundary-compression | heat-mode | resistive-mode | mixed-wave | manufactured "
                   "(default equilibrium)"},
      {"coordinate", "eulerian | lagrangian (default eulerian)"},
      {"n_cells", "number of cells, >= 8 (default 64)"},
      {"cfl", "Courant number in (0, 1] (default 0.5)"},
      {"t_end", "final time (default 1)"},
      {"bc.kind", "fixed-dirichlet | free-boundary | periodic (default fixed-dirichlet)"},
      {"bc.external_pressure", "ambient pressure at the free end (default 1)"},
      {"eos.mode", "full-radiative | barotropic | general-pf (default full-radiative)"},
      {"eos.R", "gas constant (default 1)"},
      {"eos.C_V", "specific heat (default 1.5)"},
      {"eos.a", "radiation constant (default 0)"},
      {"eos.A", "barotropic amplitude (default 1)"},
      {"eos.gamma", "barotropic exponent (default 5/3)"},
      {"eos.s_ref", "entropy offset (default 0)"},
      {"eos.pf.linear", "general-pf: coefficient of z (default 1)"},
      {"eos.pf.degenerate", "general-pf: coefficient of z^(5/3) (default 1)"},
      {"transport.law", "scaled | constant (default scaled)"},
      {"transport.nu0", "shear viscosity amplitude (default 1)"},
      {"transport.eta0", "bulk viscosity amplitude (default 1)"},
      {"transport.alpha", "temperature exponent of nu, eta, 1/sigma (default 1)"},
      {"transport.kappa0", "material conductivity amplitude (default 1)"},
      {"transport.q", "conductivity exponent (default 2.6)"},
      {"transport.kappaR", "radiative conductivity constant (default 1)"},
      {"transport.sigma0", "electrical conductivity amplitude (default 1)"},
      {"transport.mu", "magnetic permeability (default 1)"},
      {"reg.epsilon", "artificial mass diffusion (default 0)"},
      {"reg.delta", "artificial pressure amplitude (default 0)"},
      {"reg.Gamma", "artificial pressure exponent, required > 8 when delta > 0 (default 0)"},
      {"gravity.G", "gravitational constant; > 0 enables self-gravity (default 0)"},
      {"perturb.amplitude", "band-limited random perturbation amplitude (default 0)"},
      {"perturb.seed", "seed of the perturbation (default 0)"},
      {"output.dir", "output base directory (default out)"},
      {"output.cadence", "steps between recorded snapshots, > 0 (default 10)"},
      {"integrator.diffusion", "implicit | explicit (default implicit)"},
      {"integrator.limiter", "mc | minmod | unlimited | first-order (default mc)"},
      {"integrator.picard", "Picard sweeps per implicit stage (default 2)"},
      {"physics.hyperbolic", "advective fluxes on/off (default true)"},
      {"physics.viscous", "viscosity on/off (default true)"},
      {"physics.heat", "heat conduction on/off (default true)"},
      {"physics.resistive", "resistivity on/off (default true)"},
      {"ic.amplitude", "scenario amplitude (default 0.1)"},
      {"ic.width", "pulse width (default 0.05)"},
      {"ic.center", "pulse centre (default 0.5)"},
      {"ic.rho0", "background density (default 1)"},
      {"ic.theta0", "background temperature (default 1)"},
  };
  return keys;
}

inline const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {
      "equilibrium",     "acoustic-pulse", "transverse-shear", "magnetic-diffusion", "gravity-settling",
      "free-boundary-compression", "heat-mode", "resistive-mode", "mixed-wave", "manufactured"};
  return names;
}

inline bool scenario_needs_temperature(const std::string& s) {
  return s == "heat-mode" || s == "free-boundary-compression";
}

/// Applies one key. `line` is used for error messages only.
inline void set_config_value(RunConfig& c, const std::string& key, const std::string& v, int line = 0) {
  using namespace detail;
  auto num = [&] { return parse_double(key, v, line); };
  auto flag = [&] { return parse_bool(key, v, line); };
  auto bad = [&](const std::string& what) { throw ConfigError(what + " for " + key + ": '" + v + "'", line, key); };

  if (key == "scenario") {
    bool known = false;
    for (const auto& s : scenario_names()) known = known || s == v;
    if (!known) bad("unknown scenario");
    c.scenario = v;
  } else if (key == "coordinate") {
    if (v == "eulerian" || v == "eulerian-x") c.coordinate = Coordinate::eulerian;
    else if (v == "lagrangian" || v == "lagrangian-y") c.coordinate = Coordinate::lagrangian;
    else bad("unknown coordinate");
  } else if (key == "n_cells") {
    c.n_cells = static_cast<int>(parse_integer(key, v, line));
  } else if (key == "cfl") {
    c.cfl = num();
  } else if (key == "t_end") {
    c.t_end = num();
  } else if (key == "bc.kind") {
    if (v == "fixed-dirichlet") c.bc.kind = BcKind::fixed_dirichlet;
    else if (v == "free-boundary") c.bc.kind = BcKind::free_boundary;
    else if (v == "periodic") c.bc.kind = BcKind::periodic;
    else bad("unknown boundary kind");
  } else if (key == "bc.external_pressure") {
    c.bc.external_pressure = num();
  } else if (key == "eos.mode") {
    if (v == "full-radiative") c.eos.mode = EosMode::full_radiative;
    else if (v == "barotropic") c.eos.mode = EosMode::barotropic;
    else if (v == "general-pf") c.eos.mode = EosMode::general_pf;
    else bad("unknown EOS mode");
  } else if (key == "eos.R") {
    c.eos.R = num();
  } else if (key == "eos.C_V") {
    c.eos.C_V = num();
  } else if (key == "eos.a") {
    c.eos.a = num();
  } else if (key == "eos.A") {
    c.eos.A = num();
  } else if (key == "eos.gamma") {
    c.eos.gamma = num();
  } else if (key == "eos.s_ref") {
    c.eos.s_ref = num();
  } else if (key == "eos.pf.linear") {
    c.pf_linear = num();
  } else if (key == "eos.pf.degenerate") {
    c.pf_degenerate = num();
  } else if (key == "transport.law") {
    if (v == "scaled") c.transport.law = TransportLaw::scaled;
    else if (v == "constant") c.transport.law = TransportLaw::constant;
    else bad("unknown transport law");
  } else if (key == "transport.nu0") {
    c.transport.nu0 = num();
  } else if (key == "transport.eta0") {
    c.transport.eta0 = num();
  } else if (key == "transport.alpha") {
    c.transport.alpha = num();
  } else if (key == "transport.kappa0") {
    c.transport.kappa0 = num();
  } else if (key == "transport.q") {
    c.transport.q = num();
  } else if (key == "transport.kappaR") {
    c.transport.kappaR = num();
  } else if (key == "transport.sigma0") {
    c.transport.sigma0 = num();
  } else if (key == "transport.mu") {
    c.transport.mu = num();
  } else if (key == "reg.epsilon") {
    c.reg.epsilon = num();
  } else if (key == "reg.delta") {
    c.reg.delta = num();
  } else if (key == "reg.Gamma") {
    c.reg.Gamma = num();
  } else if (key == "gravity.G") {
    c.grav.G = num();
    c.grav.enabled = c.grav.G > 0.0;
  } else if (key == "perturb.amplitude") {
    c.perturb_amplitude = num();
  } else if (key == "perturb.seed") {
    const long long s = parse_integer(key, v, line);
    if (s < 0) bad("seed must be nonnegative");
    c.seed = static_cast<std::uint64_t>(s);
  } else if (key == "output.dir") {
    if (v.empty()) bad("empty path");
    c.output_dir = v;
  } else if (key == "output.cadence") {
    c.cadence = static_cast<int>(parse_integer(key, v, line));
  } else if (key == "integrator.diffusion") {
    if (v == "implicit") c.options.diffusion = DiffusionMode::implicit;
    else if (v == "explicit") c.options.diffusion = DiffusionMode::explicit_;
    else bad("unknown diffusion mode");
  } else if (key == "integrator.limiter") {
    if (v == "mc") c.options.limiter = Limiter::mc;
    else if (v == "minmod") c.options.limiter = Limiter::minmod;
    else if (v == "unlimited") c.options.limiter = Limiter::unlimited;
    else if (v == "first-order") c.options.limiter = Limiter::first_order;
    else bad("unknown limiter");
  } else if (key == "integrator.picard") {
    c.options.picard_iterations = static_cast<int>(parse_integer(key, v, line));
  } else if (key == "physics.hyperbolic") {
    c.options.physics.hyperbolic = flag();
  } else if (key == "physics.viscous") {
    c.options.physics.viscous = flag();
  } else if (key == "physics.heat") {
    c.options.physics.heat = flag();
  } else if (key == "physics.resistive") {
    c.options.physics.resistive = flag();
  } else if (key == "ic.amplitude") {
    c.ic.amplitude = num();
  } else if (key == "ic.width") {
    c.ic.width = num();
  } else if (key == "ic.center") {
    c.ic.center = num();
  } else if (key == "ic.rho0") {
    c.ic.rho0 = num();
  } else if (key == "ic.theta0") {
    c.ic.theta0 = num();
  } else {
    throw ConfigError("unknown key '" + key + "'", line, key);
  }
}

namespace detail {

// Maps a parameter-record error onto the config key that causes it.
inline void rethrow_as_config(const std::exception& e, const std::string& key) {
  throw ConfigError(std::string(e.what()) + " (" + key + ")", 0, key);
}

}  // namespace detail

/// Cross-field validation; throws ConfigError naming the offending key.
inline void validate_config(RunConfig& c) {
  if (c.n_cells < 8) throw ConfigError("n_cells must be >= 8", 0, "n_cells");
  if (!(c.cfl > 0.0 && c.cfl <= 1.0)) throw ConfigError("cfl must lie in (0, 1]", 0, "cfl");
  if (!(c.t_end >= 0.0) || !std::isfinite(c.t_end)) throw ConfigError("t_end must be >= 0", 0, "t_end");
  if (c.cadence <= 0) throw ConfigError("cadence must be > 0", 0, "output.cadence");
  if (c.reg.delta > 0.0 && !(c.reg.Gamma > 8.0))
    throw ConfigError("Gamma required > 8 when delta > 0", 0, "reg.Gamma");
  if (c.eos.mode == EosMode::general_pf) c.eos.pf = PfClosure::mixed(c.pf_linear, c.pf_degenerate);

  try {
    c.eos.validate();
  } catch (const InvalidParams& e) {
    detail::rethrow_as_config(e, "eos");
  }
  try {
    c.transport.validate();
  } catch (const InvalidParams& e) {
    detail::rethrow_as_config(e, "transport");
  }
  try {
    c.reg.validate();
  } catch (const InvalidParams& e) {
    detail::rethrow_as_config(e, "reg");
  }
  if (c.eos.mode == EosMode::general_pf) {
    if (c.pf_linear < 0.0 || !(c.pf_degenerate > 0.0))
      throw ConfigError("general-pf closure needs eos.pf.linear >= 0 and eos.pf.degenerate > 0", 0,
                        "eos.pf.degenerate");
  }
  if (c.coordinate == Coordinate::lagrangian && c.reg.active())
    throw ConfigError("regularization (reg.epsilon, reg.delta) is only available in Eulerian coordinates", 0,
                      "reg.delta");
  if (c.coordinate == Coordinate::lagrangian && c.grav.G > 0.0)
    throw ConfigError("gravity is only available in Eulerian coordinates", 0, "gravity.G");
  if (c.bc.kind == BcKind::free_boundary && c.coordinate != Coordinate::lagrangian)
    throw ConfigError("free-boundary conditions require coordinate = lagrangian", 0, "bc.kind");
  if (c.options.picard_iterations < 1) throw ConfigError("integrator.picard must be >= 1", 0, "integrator.picard");
  if (!(c.perturb_amplitude >= 0.0)) throw ConfigError("perturb.amplitude must be >= 0", 0, "perturb.amplitude");

  const auto& s = c.scenario;
  if (c.eos.mode == EosMode::barotropic && scenario_needs_temperature(s))
    throw ConfigError("scenario " + s + " requires a temperature (energy equation) but eos.mode = barotropic", 0,
                      "eos.mode");
  if (c.eos.mode == EosMode::barotropic && c.options.physics.heat) c.options.physics.heat = false;
  if (s == "gravity-settling") {
    if (c.coordinate != Coordinate::eulerian)
      throw ConfigError("scenario gravity-settling requires coordinate = eulerian", 0, "coordinate");
    if (!(c.grav.G > 0.0)) throw ConfigError("scenario gravity-settling requires gravity.G > 0", 0, "gravity.G");
  }
  if (s == "free-boundary-compression" && c.bc.kind != BcKind::free_boundary)
    throw ConfigError("scenario free-boundary-compression requires bc.kind = free-boundary", 0, "bc.kind");
  if ((s == "heat-mode" || s == "resistive-mode" || s == "manufactured") && c.bc.kind != BcKind::periodic)
    throw ConfigError("scenario " + s + " requires bc.kind = periodic", 0, "bc.kind");
  if (s == "manufactured" && (c.reg.active() || c.grav.G > 0.0))
    throw ConfigError("scenario manufactured does not support regularization or gravity", 0, "scenario");
  if (s == "manufactured" && c.eos.mode == EosMode::general_pf)
    throw ConfigError("scenario manufactured needs eos.mode full-radiative or barotropic", 0, "eos.mode");
  if (!(c.ic.rho0 > 0.0) || !(c.ic.theta0 > 0.0))
    throw ConfigError("ic.rho0 and ic.theta0 must be positive", 0, "ic.rho0");
  if (c.coordinate == Coordinate::lagrangian && std::abs(c.ic.rho0 - 1.0) > 1e-12)
    throw ConfigError("Lagrangian runs need unit total mass (ic.rho0 = 1)", 0, "ic.rho0");
}

inline RunConfig parse_config(std::string_view text) {
  RunConfig c;
  std::map<std::string, int> seen;
  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const auto hash = raw.find('#');
    if (hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string line = detail::trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line_no);
    const std::string key = detail::trim(std::string_view(line).substr(0, eq));
    const std::string value = detail::trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) throw ConfigError("missing key", line_no);
    if (seen.count(key)) throw ConfigError("duplicate key '" + key + "'", line_no, key);
    seen[key] = line_no;
    set_config_value(c, key, value, line_no);
  }
  validate_config(c);
  return c;
}

namespace detail {
inline std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}
}  // namespace detail

/// Canonical text of a configuration: every key, fixed order, full precision.
inline std::string serialize_config(const RunConfig& c) {
  using detail::fmt17;
  std::ostringstream os;
  const auto& ph = c.options.physics;
  auto b = [](bool v) { return v ? "true" : "false"; };
  os << "scenario = " << c.scenario << '\n'
     << "coordinate = " << (c.coordinate == Coordinate::eulerian ? "eulerian" : "lagrangian") << '\n'
     << "n_cells = " << c.n_cells << '\n'
     << "cfl = " << fmt17(c.cfl) << '\n'
     << "t_end = " << fmt17(c.t_end) << '\n'
     << "bc.kind = " << to_string(c.bc.kind) << '\n'
     << "bc.external_pressure = " << fmt17(c.bc.external_pressure) << '\n'
     << "eos.mode = " << to_string(c.eos.mode) << '\n'
     << "eos.R = " << fmt17(c.eos.R) << '\n'
     << "eos.C_V = " << fmt17(c.eos.C_V) << '\n'
     << "eos.a = " << fmt17(c.eos.a) << '\n'
     << "eos.A = " << fmt17(c.eos.A) << '\n'
     << "eos.gamma = " << fmt17(c.eos.gamma) << '\n'
     << "eos.s_ref = " << fmt17(c.eos.s_ref) << '\n'
     << "eos.pf.linear = " << fmt17(c.pf_linear) << '\n'
     << "eos.pf.degenerate = " << fmt17(c.pf_degenerate) << '\n'
     << "transport.law = " << (c.transport.law == TransportLaw::scaled ? "scaled" : "constant") << '\n'
     << "transport.nu0 = " << fmt17(c.transport.nu0) << '\n'
     << "transport.eta0 = " << fmt17(c.transport.eta0) << '\n'
     << "transport.alpha = " << fmt17(c.transport.alpha) << '\n'
     << "transport.kappa0 = " << fmt17(c.transport.kappa0) << '\n'
     << "transport.q = " << fmt17(c.transport.q) << '\n'
     << "transport.kappaR = " << fmt17(c.transport.kappaR) << '\n'
     << "transport.sigma0 = " << fmt17(c.transport.sigma0) << '\n'
     << "transport.mu = " << fmt17(c.transport.mu) << '\n'
     << "reg.epsilon = " << fmt17(c.reg.epsilon) << '\n'
     << "reg.delta = " << fmt17(c.reg.delta) << '\n'
     << "reg.Gamma = " << fmt17(c.reg.Gamma) << '\n'
     << "gravity.G = " << fmt17(c.grav.G) << '\n'
     << "perturb.amplitude = " << fmt17(c.perturb_amplitude) << '\n'
     << "perturb.seed = " << c.seed << '\n'
     << "output.dir = " << c.output_dir << '\n'
     << "output.cadence = " << c.cadence << '\n'
     << "integrator.diffusion = " << (c.options.diffusion == DiffusionMode::implicit ? "implicit" : "explicit")
     << '\n'
     << "integrator.limiter = " << to_string(c.options.limiter) << '\n'
     << "integrator.picard = " << c.options.picard_iterations << '\n'
     << "physics.hyperbolic = " << b(ph.hyperbolic) << '\n'
     << "physics.viscous = " << b(ph.viscous) << '\n'
     << "physics.heat = " << b(ph.heat) << '\n'
     << "physics.resistive = " << b(ph.resistive) << '\n'
     << "ic.amplitude = " << fmt17(c.ic.amplitude) << '\n'
     << "ic.width = " << fmt17(c.ic.width) << '\n'
     << "ic.center = " << fmt17(c.ic.center) << '\n'
     << "ic.rho0 = " << fmt17(c.ic.rho0) << '\n'
     << "ic.theta0 = " << fmt17(c.ic.theta0) << '\n';
  return os.str();
}

/// 64-bit FNV-1a, as 16 hex digits.
inline std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

/// Canonical text with the output location removed; names the run.
inline std::string run_identity(const RunConfig& c) {
  RunConfig k = c;
  k.output_dir = RunConfig{}.output_dir;
  return serialize_config(k);
}

inline std::string config_hash(const RunConfig& c) { return fnv1a_hex(run_identity(c)); }

}  // namespace mhd1d
