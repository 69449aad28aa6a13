#pragma once

// Self-gravity potential: -psi'' = G rho on (0, L), psi = 0 at both ends.
// Three-point differences on the cell faces (nodes); the nodal density is the
// mean of the two adjacent cells.

#include <algorithm>
#include <span>
#include <vector>

#include "mhd1d/error.hpp"
#include "mhd1d/state.hpp"
#include "mhd1d/tridiagonal.hpp"

namespace mhd1d {

struct PoissonSolution {
  double dx = 0.0;
  std::vector<double> nodes;     // psi at x_j = j dx, j = 0..N
  std::vector<double> cells;     // mean of the two bounding nodes
  std::vector<double> gradient;  // (psi_{j+1} - psi_j) / dx per cell

  /// Piecewise-linear interpolation of the nodal values.
  double at(double x) const {
    const int n = static_cast<int>(nodes.size()) - 1;
    double s = x / dx;
    if (s <= 0.0) return nodes.front();
    if (s >= n) return nodes.back();
    const int j = static_cast<int>(s);
    const double t = s - j;
    return (1.0 - t) * nodes[j] + t * nodes[std::min(j + 1, n)];
  }
};

inline PoissonSolution poisson_solve(std::span<const double> rho, double G, double length = 1.0) {
  const int n = static_cast<int>(rho.size());
  if (n < 2) throw InvalidParams("poisson_solve: need at least two cells");
  if (!(G >= 0.0)) throw InvalidParams("poisson_solve: G must be >= 0");
  PoissonSolution sol;
  sol.dx = length / n;
  sol.nodes.assign(n + 1, 0.0);
  const int m = n - 1;  // interior nodes
  std::vector<double> a(m, -1.0), b(m, 2.0), c(m, -1.0), d(m);
  const double h2 = sol.dx * sol.dx;
  for (int j = 1; j <= m; ++j) d[j - 1] = G * 0.5 * (rho[j - 1] + rho[j]) * h2;
  if (m > 0) {
    const auto x = solve_tridiagonal(a, b, c, d);
    for (int j = 1; j <= m; ++j) sol.nodes[j] = x[j - 1];
  }
  sol.cells.resize(n);
  sol.gradient.resize(n);
  for (int i = 0; i < n; ++i) {
    sol.cells[i] = 0.5 * (sol.nodes[i] + sol.nodes[i + 1]);
    sol.gradient[i] = (sol.nodes[i + 1] - sol.nodes[i]) / sol.dx;
  }
  return sol;
}

}  // namespace mhd1d
