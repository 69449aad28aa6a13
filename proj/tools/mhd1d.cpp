// Command-line driver. Exit codes: 0 pass, 1 property FAIL, 2 usage or
// configuration error, 3 runtime invariant abort.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mhd1d/mhd1d.hpp"

namespace {

using namespace mhd1d;

constexpr int kPass = 0, kFail = 1, kUsage = 2, kAbort = 3;

struct Common {
  std::string config_path;
  std::string out;
  int cadence = 0;
  long long seed = -1;
};

RunConfig load(const Common& c) {
  std::ifstream f(c.config_path);
  if (!f) throw ConfigError("cannot read config file " + c.config_path, 0);
  std::stringstream ss;
  ss << f.rdbuf();
  RunConfig cfg = parse_config(ss.str());
  if (c.cadence != 0) set_config_value(cfg, "output.cadence", std::to_string(c.cadence));
  if (c.seed >= 0) set_config_value(cfg, "perturb.seed", std::to_string(c.seed));
  if (!c.out.empty()) set_config_value(cfg, "output.dir", c.out);
  validate_config(cfg);
  return cfg;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("config", c.config_path, "configuration file")->required();
  sub->add_option("--out", c.out, "output base directory (overrides output.dir)");
  sub->add_option("--cadence", c.cadence, "steps between recorded snapshots")->check(CLI::PositiveNumber);
  sub->add_option("--seed", c.seed, "perturbation seed")->check(CLI::NonNegativeNumber);
}

std::string identity(const RunConfig& c, const std::string& extra) { return run_identity(c) + extra; }

template <class T>
std::string list_text(const std::vector<T>& v) {
  std::ostringstream os;
  for (const auto& x : v) os << x << ';';
  return os.str();
}

int finish(const ExperimentReport& r, const RunConfig& c, const std::string& extra) {
  const auto dir = output_directory(c.output_dir, r.name, identity(c, extra));
  const int code = write_report(r, dir, std::cout);
  std::cout << (code == kPass ? "PASS " : "FAIL ") << r.name << " -> " << dir.string() << '\n';
  return code;
}

std::string config_help() {
  std::ostringstream os;
  os << "\nConfiguration keys (key = value, '#' comments):\n";
  for (const auto& [k, d] : config_keys()) os << "  " << k << ": " << d << '\n';
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"One-dimensional viscous, heat-conducting, resistive MHD solver"};
  app.require_subcommand(1);
  app.footer(config_help());

  Common common;
  std::vector<double> nu_values, deltas, epsilons, amps;
  std::vector<int> n_list;
  double floor = 0.0, bound = 10.0, min_order = 1.7;

  auto* run_cmd = app.add_subcommand("run", "integrate one configuration and write fields/diagnostics CSV");
  add_common(run_cmd, common);

  auto* nu_cmd = app.add_subcommand("sweep-nu", "vanishing shear viscosity sweep");
  add_common(nu_cmd, common);
  nu_cmd->add_option("--values", nu_values, "strictly decreasing viscosities")->required()->delimiter(',');
  nu_cmd->add_option("--floor", floor, "viscosity of the limit run (default: half the smallest value)");

  auto* reg_cmd = app.add_subcommand("sweep-reg", "vanishing regularization sweep");
  add_common(reg_cmd, common);
  reg_cmd->add_option("--deltas", deltas, "decreasing artificial-pressure amplitudes")->required()->delimiter(',');
  reg_cmd->add_option("--epsilons", epsilons, "decreasing artificial-diffusion amplitudes")
      ->required()
      ->delimiter(',');

  auto* decay_cmd = app.add_subcommand("decay", "near-equilibrium boundedness and decay study");
  add_common(decay_cmd, common);
  decay_cmd->add_option("--amps", amps, "perturbation amplitudes")->required()->delimiter(',');
  decay_cmd->add_option("--bound", bound, "allowed growth of the H1 distance")->capture_default_str();

  auto* conv_cmd = app.add_subcommand("converge", "convergence study over doubling resolutions");
  add_common(conv_cmd, common);
  conv_cmd->add_option("--n", n_list, "doubling cell counts")->required()->delimiter(',');
  conv_cmd->add_option("--min-order", min_order, "required order for manufactured runs")->capture_default_str();

  auto* eos_cmd = app.add_subcommand("validate-eos", "thermodynamic and transport checks of a configuration");
  add_common(eos_cmd, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    const RunConfig cfg = load(common);
    if (run_cmd->parsed()) {
      const auto out = run_scenario(cfg, cfg.output_dir);
      std::cout << out.directory.string() << '\n';
      if (out.exit_code != 0) std::cerr << "aborted: " << out.message << '\n';
      return out.exit_code;
    }
    if (nu_cmd->parsed())
      return finish(shear_viscosity_sweep(cfg, nu_values, floor), cfg, list_text(nu_values) + std::to_string(floor));
    if (reg_cmd->parsed())
      return finish(regularization_sweep(cfg, deltas, epsilons), cfg, list_text(deltas) + "|" + list_text(epsilons));
    if (decay_cmd->parsed()) {
      DecayOptions opt;
      opt.bound = bound;
      return finish(equilibrium_decay_study(cfg, amps, opt), cfg, list_text(amps) + std::to_string(bound));
    }
    if (conv_cmd->parsed()) {
      ConvergenceOptions opt;
      opt.min_order = min_order;
      return finish(convergence_study(cfg, n_list, opt), cfg, list_text(n_list) + std::to_string(min_order));
    }
    if (eos_cmd->parsed()) return finish(validate_eos(cfg), cfg, "");
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidParams& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kUsage;
  } catch (const SimulationAborted& e) {
    std::cerr << "aborted: " << e.what() << '\n';
    return kAbort;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kAbort;
  }
  return kUsage;
}
