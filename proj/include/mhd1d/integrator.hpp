#pragma once

// Time stepping. Implicit diffusion: Strang splitting
//   H(dt/2) D(dt) H(dt/2),
// H the hyperbolic/source operator advanced by SSP-RK2 (gravity potential
// recomputed at the start of each H), D the SDIRK2 diffusion solve. Explicit
// diffusion: SSP-RK2 on the full operator.

#include <algorithm>
#include <cmath>
#include <limits>

#include "mhd1d/conserved.hpp"
#include "mhd1d/diffusion.hpp"
#include "mhd1d/error.hpp"
#include "mhd1d/rhs.hpp"
#include "mhd1d/state.hpp"

namespace mhd1d {

/// Largest admissible step: cfl * min dx / (|u| + c_f) (Eulerian) or
/// cfl * min dy v / c_f (Lagrangian), with c_f^2 = c_s^2 + (1 + |b|^2)/(mu rho)
/// and c_s^2 the isothermal-plus-radiation bound. Explicit parabolic limits are
/// applied to the artificial mass diffusion always and to the physical
/// diffusion when it is integrated explicitly.
inline double stable_dt(const State1D& s, const Model& m, double cfl) {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw InvalidParams("cfl must lie in (0, 1]");
  s.check();
  const double dx = s.grid.dx();
  const double mu = m.transport.mu;
  double dt = std::numeric_limits<double>::infinity();
  if (m.options.physics.hyperbolic) {
    for (int i = 0; i < s.size(); ++i) {
      const double rho = s.density(i);
      double cs2 = eos::stable_sound_speed_sq(m.eos, rho, s.theta[i]);
      if (m.reg.delta > 0.0) cs2 += m.reg.delta * m.reg.Gamma * std::pow(rho, m.reg.Gamma - 1.0);
      const double bb = s.b2[i] * s.b2[i] + s.b3[i] * s.b3[i];
      const double cf = std::sqrt(cs2 + (State1D::b1 * State1D::b1 + bb) / (mu * rho));
      const double speed = s.lagrangian() ? cf * rho : std::abs(s.u[i]) + cf;
      if (!std::isfinite(speed)) throw NumericalError("non-finite signal speed in cell " + std::to_string(i));
      if (speed > 0.0) dt = std::min(dt, cfl * dx / speed);
    }
  }
  if (m.reg.epsilon > 0.0) dt = std::min(dt, dx * dx / (2.0 * m.reg.epsilon));
  if (m.options.diffusion == DiffusionMode::explicit_) {
    const double d = diffusion::max_diffusivity(s, m);
    if (d > 0.0) dt = std::min(dt, dx * dx / (2.0 * d));
  }
  if (!std::isfinite(dt)) {
    // Nothing bounds the step (all operators off or implicit with u = c = 0).
    dt = cfl * dx;
  }
  return dt;
}

namespace detail {

inline Conserved axpy(const Conserved& a, double h, const Tendencies& k) {
  Conserved r = a;
  for (int v = 0; v < kNumVars; ++v)
    for (size_t i = 0; i < r[v].size(); ++i) r[v][i] += h * k[v][i];
  return r;
}

// One SSP-RK2 (Heun) step of length h on the selected parts of the operator.
inline State1D ssp_rk2(const State1D& s, double h, const Model& m, RhsParts parts) {
  std::optional<PoissonSolution> psi;
  if (parts.hyperbolic) psi = gravity_potential(s, m);
  const PoissonSolution* pg = psi ? &*psi : nullptr;

  const Conserved q0 = to_conserved(s, m);
  const Tendencies k0 = compute_rhs(s, m, parts, pg);
  State1D s1 = from_conserved(axpy(q0, h, k0), m, s);
  s1.time = s.time + h;
  s1.check();

  const Conserved q1 = to_conserved(s1, m);
  const Tendencies k1 = compute_rhs(s1, m, parts, pg);
  Conserved q2 = axpy(q1, h, k1);
  for (int v = 0; v < kNumVars; ++v)
    for (size_t i = 0; i < q2[v].size(); ++i) q2[v][i] = 0.5 * (q0[v][i] + q2[v][i]);
  State1D s2 = from_conserved(q2, m, s1);
  s2.time = s.time + h;
  s2.check();
  return s2;
}

}  // namespace detail

/// Advances the state by dt. Throws PositivityError if density/volume or
/// temperature leaves the admissible set; the input is never modified.
inline State1D step(const State1D& s, double dt, const Model& m) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidParams("step: dt must be positive");
  m.validate(s.coordinate());
  s.check();
  const double t0 = s.time;
  State1D out;
  if (m.options.diffusion == DiffusionMode::explicit_) {
    out = detail::ssp_rk2(s, dt, m, RhsParts{true, true});
  } else {
    const RhsParts hyp{true, false};
    State1D a = detail::ssp_rk2(s, 0.5 * dt, m, hyp);
    State1D b = diffusion::implicit_step(a, dt, m);
    b.check();
    out = detail::ssp_rk2(b, 0.5 * dt, m, hyp);
  }
  out.time = t0 + dt;
  out.check();
  return out;
}

}  // namespace mhd1d
