#pragma once

// Primitive <-> conserved conversion. Temperature is recovered from the
// specific internal energy by safeguarded Newton iteration.

#include <algorithm>
#include <cmath>
#include <string>

#include "mhd1d/error.hpp"
#include "mhd1d/state.hpp"
#include "mhd1d/thermo.hpp"

namespace mhd1d {

/// Solves e(rho, theta) = e for theta > 0; `guess` seeds the iteration.
inline double temperature_from_energy(const EosParams& eos, double rho, double e, double guess, int cell = -1) {
  if (!(e > 0.0) || !std::isfinite(e)) throw PositivityError("theta", cell, e);
  auto f = [&](double t) { return eos::internal_energy(eos, rho, t) - e; };
  double t = (guess > 0.0 && std::isfinite(guess)) ? guess : 1.0;

  // Bracket, using that e is increasing in theta and tends to 0 as theta -> 0.
  double lo = t, hi = t;
  double flo = f(lo), fhi = flo;
  int guard = 0;
  while (flo > 0.0) {
    hi = lo;
    fhi = flo;
    lo *= 0.5;
    flo = f(lo);
    if (++guard > 2000 || lo == 0.0) throw PositivityError("theta", cell, lo);
  }
  while (fhi < 0.0) {
    lo = hi;
    flo = fhi;
    hi *= 2.0;
    fhi = f(hi);
    if (++guard > 4000 || !std::isfinite(fhi)) throw NumericalError("temperature inversion failed to bracket");
  }
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;

  t = std::clamp(t, lo, hi);
  for (int it = 0; it < 100; ++it) {
    const double ft = f(t);
    if (ft == 0.0) return t;
    (ft < 0.0 ? lo : hi) = t;
    const double d = eos::de_dtheta(eos, rho, t);
    double next = t - ft / d;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - t) <= 1e-15 * t) return next;
    t = next;
  }
  return t;
}

/// Total energy density (Eulerian, per unit length) or vE (Lagrangian, per
/// unit mass) of cell i.
inline double cell_total_energy(const State1D& s, const Model& m, int i) {
  const double mu = m.transport.mu;
  const double kin = 0.5 * (s.u[i] * s.u[i] + s.w1[i] * s.w1[i] + s.w2[i] * s.w2[i]);
  const double mag = (s.b2[i] * s.b2[i] + s.b3[i] * s.b3[i]) / (2.0 * mu);
  const double rho = s.density(i);
  const double e = eos::internal_energy(m.eos, rho, s.theta[i]);
  if (s.lagrangian()) return kin + e + s.volume(i) * mag;
  return rho * (kin + e) + mag;
}

inline Conserved to_conserved(const State1D& s, const Model& m) {
  const int n = s.size();
  Conserved q(n);
  const bool lag = s.lagrangian();
  for (int i = 0; i < n; ++i) {
    const double r = s.density_or_volume[i];
    if (lag) {
      q[kMass][i] = r;
      q[kMom][i] = s.u[i];
      q[kW1][i] = s.w1[i];
      q[kW2][i] = s.w2[i];
      q[kB2][i] = r * s.b2[i];
      q[kB3][i] = r * s.b3[i];
    } else {
      q[kMass][i] = r;
      q[kMom][i] = r * s.u[i];
      q[kW1][i] = r * s.w1[i];
      q[kW2][i] = r * s.w2[i];
      q[kB2][i] = s.b2[i];
      q[kB3][i] = s.b3[i];
    }
    q[kEnergy][i] = m.has_energy() ? cell_total_energy(s, m, i) : 0.0;
  }
  return q;
}

/// Inverse of to_conserved. `prev` supplies temperature guesses (and the
/// temperature itself for barotropic closures).
inline State1D from_conserved(const Conserved& q, const Model& m, const State1D& prev) {
  State1D s = prev;
  const int n = q.size();
  const bool lag = prev.lagrangian();
  const double mu = m.transport.mu;
  for (int i = 0; i < n; ++i) {
    const double r = q[kMass][i];
    if (!(r > 0.0) || !std::isfinite(r)) throw PositivityError(lag ? "v" : "rho", i, r);
    s.density_or_volume[i] = r;
    if (lag) {
      s.u[i] = q[kMom][i];
      s.w1[i] = q[kW1][i];
      s.w2[i] = q[kW2][i];
      s.b2[i] = q[kB2][i] / r;
      s.b3[i] = q[kB3][i] / r;
    } else {
      s.u[i] = q[kMom][i] / r;
      s.w1[i] = q[kW1][i] / r;
      s.w2[i] = q[kW2][i] / r;
      s.b2[i] = q[kB2][i];
      s.b3[i] = q[kB3][i];
    }
    if (m.has_energy()) {
      const double kin = 0.5 * (s.u[i] * s.u[i] + s.w1[i] * s.w1[i] + s.w2[i] * s.w2[i]);
      const double mag = (s.b2[i] * s.b2[i] + s.b3[i] * s.b3[i]) / (2.0 * mu);
      const double rho = lag ? 1.0 / r : r;
      const double e = lag ? q[kEnergy][i] - kin - r * mag : (q[kEnergy][i] - mag) / r - kin;
      if (!std::isfinite(e)) throw NumericalError("non-finite energy in cell " + std::to_string(i));
      s.theta[i] = temperature_from_energy(m.eos, rho, e, prev.theta[i], i);
    }
  }
  return s;
}

}  // namespace mhd1d
