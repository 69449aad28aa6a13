// Free-boundary column squeezed by an external pressure.

#include <cstdio>

#include "mhd1d/mhd1d.hpp"

int main() {
  using namespace mhd1d;
  RunConfig c = parse_config(
      "scenario = free-boundary-compression\n"
      "coordinate = lagrangian\n"
      "bc.kind = free-boundary\n"
      "bc.external_pressure = 2\n"
      "n_cells = 64\n"
      "t_end = 2\n"
      "output.cadence = 50\n");

  const Model m = build_model(c);
  const auto tr = run(c);
  for (const auto& s : tr.snapshots) {
    double length = 0.0;
    for (double v : s.density_or_volume) length += v * s.grid.dx();
    std::printf("t %.4f  column length %.6f  energy %.8f\n", s.time, length,
                total_energy(s, m.eos, m.transport.mu));
  }
}
