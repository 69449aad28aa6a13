// Integrate a mixed wave in both coordinate systems and print the invariants.

#include <cstdio>

#include "mhd1d/mhd1d.hpp"

int main() {
  using namespace mhd1d;
  RunConfig c = parse_config(
      "scenario = mixed-wave\n"
      "n_cells = 128\n"
      "t_end = 0.2\n"
      "eos.a = 0.1\n"
      "transport.nu0 = 0.01\n"
      "transport.eta0 = 0.01\n"
      "transport.kappa0 = 0.01\n"
      "transport.kappaR = 0.01\n"
      "transport.sigma0 = 100\n"
      "ic.amplitude = 0.2\n");

  for (auto coord : {Coordinate::eulerian, Coordinate::lagrangian}) {
    c.coordinate = coord;
    const auto tr = run(c);
    const auto& first = tr.diagnostics.front();
    const auto& last = tr.diagnostics.back();
    std::printf("%-10s steps %5ld  mass %.15f  energy %.10f -> %.10f  entropy %.10f -> %.10f\n",
                to_string(coord), tr.steps, last.total_mass, first.total_energy, last.total_energy,
                first.total_entropy, last.total_entropy);
  }
}
