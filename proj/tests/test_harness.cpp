#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "mhd1d/mhd1d.hpp"

using namespace mhd1d;
using Catch::Approx;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int error_line(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

std::string error_text(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("minimal config takes documented defaults") {
  const auto c = parse_config("scenario = acoustic-pulse\nn_cells = 128\n");
  CHECK(c.scenario == "acoustic-pulse");
  CHECK(c.n_cells == 128);
  CHECK(c.cfl == 0.5);
  CHECK(c.coordinate == Coordinate::eulerian);
  CHECK(c.bc.kind == BcKind::fixed_dirichlet);
  CHECK(c.eos.mode == EosMode::full_radiative);
  CHECK(c.transport.q == 2.6);
  CHECK(c.cadence == 10);
  for (const auto& [key, doc] : config_keys()) CHECK(doc.find("default") != std::string::npos);
}

TEST_CASE("config errors") {
  CHECK_THAT(error_text("reg.delta = 0.1\n"), Catch::Matchers::ContainsSubstring("Gamma required > 8 when delta > 0"));
  CHECK_THAT(error_text("reg.delta = 0.1\nreg.Gamma = 8\n"), Catch::Matchers::ContainsSubstring("Gamma required > 8"));
  CHECK_THAT(error_text("scenario = heat-mode\nbc.kind = periodic\neos.mode = barotropic\n"),
             Catch::Matchers::ContainsSubstring("barotropic"));
  CHECK(error_line("# comment\nscenario = equilibrium\n\nnu = 3\n") == 4);
  CHECK(error_line("n_cells = many\n") == 1);
  CHECK(error_line("scenario = equilibrium\nno equals sign here\n") == 2);
  CHECK(error_line("cfl = 0.1\ncfl = 0.2\n") == 2);
  CHECK_THROWS_AS(parse_config("output.cadence = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("coordinate = eulerian\nbc.kind = free-boundary\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("coordinate = lagrangian\nreg.epsilon = 0.1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("scenario = gravity-settling\n"), ConfigError);
}

TEST_CASE("canonical serialisation round-trips") {
  const auto c = parse_config(
      "scenario = mixed-wave\ncoordinate = lagrangian\ntransport.nu0 = 0.125\neos.a = 0.1\nperturb.seed = 42\n");
  const auto again = parse_config(serialize_config(c));
  CHECK(serialize_config(again) == serialize_config(c));
  CHECK(config_hash(again) == config_hash(c));
  auto other = c;
  other.seed = 43;
  CHECK(config_hash(other) != config_hash(c));
}

TEST_CASE("scenarios produce valid states") {
  for (const auto& name : scenario_names()) {
    RunConfig c;
    c.scenario = name;
    if (name == "gravity-settling") c.grav = {1.0, true};
    if (name == "free-boundary-compression") {
      c.coordinate = Coordinate::lagrangian;
      c.bc.kind = BcKind::free_boundary;
    }
    if (name == "heat-mode" || name == "resistive-mode" || name == "manufactured") c.bc.kind = BcKind::periodic;
    validate_config(c);
    CHECK_NOTHROW(initial_state(c).check());
    if (name != "gravity-settling") {
      c.coordinate = Coordinate::lagrangian;
      CHECK_NOTHROW(initial_state(c).check());
    }
  }
}

TEST_CASE("perturbations are seeded, band-limited and linear in amplitude") {
  RunConfig c;
  c.n_cells = 64;
  c.perturb_amplitude = 1e-3;
  c.seed = 5;
  const auto a = initial_state(c);
  CHECK(a == initial_state(c));
  c.seed = 6;
  CHECK_FALSE(a == initial_state(c));
  c.seed = 5;
  c.perturb_amplitude = 2e-3;
  const auto ref = reference_equilibrium(c);
  CHECK(sobolev_norm(initial_state(c), ref, 1) == Approx(2.0 * sobolev_norm(a, ref, 1)).epsilon(1e-9));
  // Resolution independence of the H1 size of the perturbation.
  c.n_cells = 256;
  const double fine = sobolev_norm(initial_state(c), reference_equilibrium(c), 1);
  CHECK(fine == Approx(2.0 * sobolev_norm(a, ref, 1)).epsilon(0.05));
  // Zero-mean density perturbation keeps the mass.
  CHECK(total_mass(initial_state(c)) == Approx(1.0).margin(1e-14));
}

TEST_CASE("equilibrium run keeps flat diagnostics") {
  auto c = parse_config("scenario = equilibrium\nn_cells = 32\nt_end = 1\neos.a = 0.2\n");
  const auto tr = run(c);
  REQUIRE(tr.diagnostics.size() >= 2);
  const auto& d0 = tr.diagnostics.front();
  for (const auto& d : tr.diagnostics) {
    CHECK(std::abs(d.total_mass - d0.total_mass) <= 1e-13);
    CHECK(std::abs(d.total_energy - d0.total_energy) <= 1e-13);
    CHECK(std::abs(d.total_entropy - d0.total_entropy) <= 1e-13);
  }
  CHECK(tr.final_state().time == 1.0);
}

TEST_CASE("identical configs give byte-identical CSV files") {
  const auto base = std::filesystem::temp_directory_path() / "mhd1d_test_determinism";
  std::filesystem::remove_all(base);
  auto c = parse_config("scenario = mixed-wave\nn_cells = 32\nt_end = 0.05\nperturb.amplitude = 1e-3\nperturb.seed = 9\n");
  const auto a = run_scenario(c, base / "a");
  const auto b = run_scenario(c, base / "b");
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  CHECK(a.directory.filename() == b.directory.filename());
  for (const char* f : {"fields.csv", "diagnostics.csv", "config.txt"}) {
    const auto x = slurp(a.directory / f);
    CHECK(!x.empty());
    CHECK(x == slurp(b.directory / f));
  }
  CHECK(slurp(a.directory / "fields.csv").rfind("t,cell,coordinate,density_or_volume,u,w1,w2,theta,b2,b3\n", 0) == 0);
  c.seed = 10;
  CHECK(run_scenario(c, base / "a").directory != a.directory);
  std::filesystem::remove_all(base);
}

TEST_CASE("aborted runs flush what they have") {
  const auto base = std::filesystem::temp_directory_path() / "mhd1d_test_abort";
  std::filesystem::remove_all(base);
  // A violent compression with a nearly cold gas drives the volume negative.
  auto c = parse_config(
      "scenario = free-boundary-compression\ncoordinate = lagrangian\nbc.kind = free-boundary\n"
      "bc.external_pressure = 1e6\nn_cells = 16\nt_end = 1\ncfl = 1\ntransport.nu0 = 1e-6\n"
      "transport.eta0 = 0\ntransport.kappa0 = 1e-6\ntransport.kappaR = 0\n");
  const auto out = run_scenario(c, base);
  CHECK(out.exit_code == 3);
  CHECK_FALSE(out.message.empty());
  CHECK(std::filesystem::file_size(out.directory / "fields.csv") > 100);
  std::filesystem::remove_all(base);
}

TEST_CASE("experiment input validation") {
  RunConfig c;
  c.scenario = "transverse-shear";
  CHECK_THROWS_AS(shear_viscosity_sweep(c, {0.1}), InvalidParams);
  CHECK_THROWS_AS(shear_viscosity_sweep(c, {0.1, 0.2}), InvalidParams);
  CHECK_THROWS_WITH(convergence_study(c, {64, 64, 128}), Catch::Matchers::ContainsSubstring("resolutions must increase"));
  CHECK_THROWS_WITH(convergence_study(c, {64, 100, 200}), Catch::Matchers::ContainsSubstring("non-doubling"));
  CHECK_THROWS_AS(regularization_sweep(c, {1e-2, 1e-3}, {1e-2}), InvalidParams);  // Gamma unset
  const auto o = observed_orders({4e-4, 1e-4, 2.5e-5});
  CHECK(o[0] == Approx(2.0).epsilon(1e-14));
  CHECK(o[1] == Approx(2.0).epsilon(1e-14));
}

TEST_CASE("viscosity sweep on an inactive transverse subsystem warns") {
  auto c = parse_config("scenario = acoustic-pulse\nn_cells = 16\nt_end = 0.02\n");
  const auto r = shear_viscosity_sweep(c, {0.1, 0.05});
  REQUIRE_FALSE(r.warnings.empty());
  CHECK(r.warnings.front() == "transverse subsystem inactive; sweep uninformative");
  CHECK(r.rows.size() == 2);
}

TEST_CASE("decay study handles the trivial amplitude") {
  auto c = parse_config("scenario = equilibrium\nbc.kind = periodic\nn_cells = 16\nt_end = 0.2\noutput.cadence = 1\n");
  const auto r = equilibrium_decay_study(c, {0.0, 1e-3});
  REQUIRE(r.rows.size() == 2);
  CHECK(r.rows[0][1] == 0.0);
  CHECK(std::isnan(r.rows[0][2]));
  CHECK(r.rows[1][3] < 1.0);
  CHECK(r.passed());
}

TEST_CASE("acoustic pulse converges under refinement") {
  auto c = parse_config("scenario = acoustic-pulse\nt_end = 0.1\nic.width = 0.1\n");
  const auto r = convergence_study(c, {64, 128, 256});
  INFO(r.checks);
  CHECK(r.passed());
}

TEST_CASE("CSV formatting") {
  std::ostringstream os;
  write_table_csv(os, {"a", "b"}, {{0.1, 1.0 / 3.0}});
  CHECK(os.str() == "a,b\n0.10000000000000001,0.33333333333333331\n");
  CHECK_THROWS_AS(write_table_csv(os, {"a"}, {{1.0, 2.0}}), InvalidParams);
}
