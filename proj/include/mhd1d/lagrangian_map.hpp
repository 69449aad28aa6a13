#pragma once

// Mass coordinate y(x) = int_0^x rho and the resampling between Eulerian and
// Lagrangian grids. Densities/volumes are remapped as cell averages (exactly
// mass preserving); the other fields are interpolated linearly at the target
// cell centres.

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "mhd1d/error.hpp"
#include "mhd1d/state.hpp"

namespace mhd1d {

/// Cumulative mass at the N+1 cell interfaces by midpoint quadrature.
inline std::vector<double> lagrangian_coordinate(std::span<const double> rho, double length = 1.0) {
  const int n = static_cast<int>(rho.size());
  if (n == 0) throw InvalidParams("lagrangian_coordinate: empty density");
  const double dx = length / n;
  std::vector<double> y(n + 1, 0.0);
  for (int i = 0; i < n; ++i) {
    if (!(rho[i] > 0.0)) throw PositivityError("rho", i, rho[i]);
    y[i + 1] = y[i] + rho[i] * dx;
  }
  if (std::abs(y[n] - 1.0) > 1e-8)
    throw InvalidParams("lagrangian_coordinate: total mass " + std::to_string(y[n]) +
                        " is not normalised to 1");
  return y;
}

namespace detail {

// Inverse of a strictly increasing piecewise-linear map given by knots
// (xs, ys): returns x with f(x) = y.
inline double invert_linear(std::span<const double> xs, std::span<const double> ys, double y) {
  const size_t n = ys.size();
  if (y <= ys.front()) return xs.front();
  if (y >= ys.back()) return xs.back();
  const size_t k = static_cast<size_t>(std::upper_bound(ys.begin(), ys.end(), y) - ys.begin());
  const double y0 = ys[k - 1], y1 = ys[std::min(k, n - 1)];
  if (!(y1 > y0)) throw NumericalError("non-monotone coordinate map");
  const double t = (y - y0) / (y1 - y0);
  return xs[k - 1] + t * (xs[k] - xs[k - 1]);
}

// Linear interpolation of cell-centred samples (centres cs) at position s;
// constant extension beyond the outermost centres.
inline double interp_centres(std::span<const double> cs, std::span<const double> f, double s) {
  const size_t n = cs.size();
  if (s <= cs.front()) return f.front();
  if (s >= cs.back()) return f.back();
  const size_t k = static_cast<size_t>(std::upper_bound(cs.begin(), cs.end(), s) - cs.begin());
  const double t = (s - cs[k - 1]) / (cs[k] - cs[k - 1]);
  return (1.0 - t) * f[k - 1] + t * f[std::min(k, n - 1)];
}

inline void resample_others(const State1D& src, std::span<const double> src_centres,
                            std::span<const double> positions, State1D& dst) {
  std::vector<double> State1D::*const members[] = {&State1D::u, &State1D::w1, &State1D::w2,
                                                   &State1D::theta, &State1D::b2, &State1D::b3};
  for (auto m : members) {
    const auto& f = src.*m;
    auto& g = dst.*m;
    for (size_t k = 0; k < positions.size(); ++k)
      g[k] = interp_centres(src_centres, f, positions[k]);
  }
}

}  // namespace detail

inline State1D to_lagrangian(const State1D& e) {
  if (e.lagrangian()) throw InvalidParams("to_lagrangian: state is already Lagrangian");
  e.check();
  const int n = e.size();
  const double L = e.grid.domain_length;
  const auto y = lagrangian_coordinate(e.density_or_volume, L);
  std::vector<double> xf(n + 1), xc(n);
  for (int i = 0; i <= n; ++i) xf[i] = e.grid.face(i);
  for (int i = 0; i < n; ++i) xc[i] = e.grid.center(i);

  State1D out(Grid1D(n, Coordinate::lagrangian, 1.0), e.time);
  const double dy = 1.0 / n;
  std::vector<double> x_of_yf(n + 1), pos(n);
  for (int k = 0; k <= n; ++k) x_of_yf[k] = detail::invert_linear(xf, y, k * dy);
  x_of_yf[0] = 0.0;
  x_of_yf[n] = L;
  for (int k = 0; k < n; ++k) {
    out.density_or_volume[k] = (x_of_yf[k + 1] - x_of_yf[k]) / dy;
    pos[k] = detail::invert_linear(xf, y, (k + 0.5) * dy);
  }
  detail::resample_others(e, xc, pos, out);
  return out;
}

/// Maps a Lagrangian state to a uniform Eulerian grid on (0, X), X = int v dy
/// the current physical length of the column.
inline State1D to_eulerian(const State1D& l) {
  if (!l.lagrangian()) throw InvalidParams("to_eulerian: state is already Eulerian");
  l.check();
  const int n = l.size();
  const double dy = l.grid.dx();
  std::vector<double> yf(n + 1), xf(n + 1, 0.0), xc(n);
  for (int k = 0; k <= n; ++k) yf[k] = k * dy;
  for (int k = 0; k < n; ++k) {
    xf[k + 1] = xf[k] + l.density_or_volume[k] * dy;
    xc[k] = 0.5 * (xf[k] + xf[k + 1]);
  }
  const double X = xf[n];
  State1D out(Grid1D(n, Coordinate::eulerian, X), l.time);
  const double dx = X / n;
  std::vector<double> y_of_xf(n + 1), pos(n);
  for (int i = 0; i <= n; ++i) y_of_xf[i] = detail::invert_linear(yf, xf, i * dx);
  y_of_xf[0] = 0.0;
  y_of_xf[n] = yf[n];
  for (int i = 0; i < n; ++i) {
    out.density_or_volume[i] = (y_of_xf[i + 1] - y_of_xf[i]) / dx;
    pos[i] = out.grid.center(i);
  }
  detail::resample_others(l, xc, pos, out);
  return out;
}

}  // namespace mhd1d
