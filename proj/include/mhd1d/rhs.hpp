#pragma once

// Semi-discrete right-hand sides. Hyperbolic fluxes: MUSCL reconstruction of
// the primitive fields and a Rusanov flux bounded by the fast magnetosonic
// speed. Eulerian conserved variables (rho, rho u, rho w, E, b) with fluxes
//   (rho u, rho u^2 + P, rho u w - b/mu, (E + P) u - w.b/mu, u b - w),
// Lagrangian (v, u, w, vE, vb) with fluxes
//   (-u, P, -b/mu, P u - w.b/mu, -w),
// where P = p + |b|^2/(2 mu) (b1 = 1).

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>

#include "mhd1d/boundary.hpp"
#include "mhd1d/diffusion.hpp"
#include "mhd1d/poisson.hpp"
#include "mhd1d/state.hpp"
#include "mhd1d/thermo.hpp"

namespace mhd1d {

namespace detail {

inline double minmod(double a, double b) {
  if (a * b <= 0.0) return 0.0;
  return std::abs(a) < std::abs(b) ? a : b;
}

inline double limited_slope(Limiter l, double dm, double dp) {
  switch (l) {
    case Limiter::first_order: return 0.0;
    case Limiter::minmod: return minmod(dm, dp);
    case Limiter::mc: {
      if (dm * dp <= 0.0) return 0.0;
      const double c = 0.5 * (dm + dp);
      const double lim = 2.0 * std::min(std::abs(dm), std::abs(dp));
      return std::copysign(std::min(std::abs(c), lim), c);
    }
    case Limiter::unlimited: return 0.5 * (dm + dp);
  }
  return 0.0;
}

using Vec7 = std::array<double, kNumVars>;

struct PointState {
  double r, u, w1, w2, th, b2, b3;
};

// Conserved vector, physical flux and the largest signal speed of a point state.
inline void physical_flux(const Model& m, bool lag, const PointState& s, Vec7& Q, Vec7& F, double& speed) {
  const double mu = m.transport.mu;
  const double rho = lag ? 1.0 / s.r : s.r;
  const double bb = s.b2 * s.b2 + s.b3 * s.b3;
  const double pmag = bb / (2.0 * mu);
  const double p = eos::pressure(m.eos, rho, s.th);
  const double wb = (s.w1 * s.b2 + s.w2 * s.b3) / mu;
  const bool energy = m.has_energy();

  double cs2 = eos::sound_speed_sq(m.eos, rho, s.th);
  double p_art = 0.0;
  if (m.reg.delta > 0.0) {
    p_art = m.reg.delta * std::pow(rho, m.reg.Gamma);
    cs2 += m.reg.delta * m.reg.Gamma * std::pow(rho, m.reg.Gamma - 1.0);
  }
  const double cf = std::sqrt(cs2 + (State1D::b1 * State1D::b1 + bb) / (mu * rho));
  const double kin = 0.5 * (s.u * s.u + s.w1 * s.w1 + s.w2 * s.w2);
  const double e = energy ? eos::internal_energy(m.eos, rho, s.th) : 0.0;

  if (lag) {
    Q = {s.r, s.u, s.w1, s.w2, energy ? kin + e + s.r * pmag : 0.0, s.r * s.b2, s.r * s.b3};
    F = {-s.u, p + pmag, -s.b2 / mu, -s.b3 / mu, energy ? (p + pmag) * s.u - wb : 0.0, -s.w1, -s.w2};
    speed = cf * rho;
  } else {
    const double E = rho * (kin + e) + pmag;
    Q = {rho, rho * s.u, rho * s.w1, rho * s.w2, energy ? E : 0.0, s.b2, s.b3};
    F = {rho * s.u,
         rho * s.u * s.u + p + pmag + p_art,
         rho * s.u * s.w1 - s.b2 / mu,
         rho * s.u * s.w2 - s.b3 / mu,
         energy ? (E + p + pmag) * s.u - wb : 0.0,
         s.u * s.b2 - s.w1,
         s.u * s.b3 - s.w2};
    speed = std::abs(s.u) + cf;
  }
}

}  // namespace detail

/// Which parts of the operator to assemble.
struct RhsParts {
  bool hyperbolic = true;   // fluxes, regularization, gravity, sources
  bool diffusion = true;    // viscous, resistive and heat fluxes (explicit)
};

/// Adds -d F_hyp / ds (plus regularization, gravity and user sources).
inline void add_hyperbolic(const State1D& s, const Model& m, Tendencies& out,
                           const PoissonSolution* gravity = nullptr) {
  const int n = s.size();
  const double dx = s.grid.dx();
  const bool lag = s.lagrangian();
  const auto& bc = m.bc;
  const bool walls = bc.kind != BcKind::periodic;

  if (m.options.physics.hyperbolic) {
    const Ghosted g = apply_bcs(s, bc);
    // Slopes for cells -1..n.
    std::array<std::vector<double>, 7> slope;
    for (int k = 0; k < 7; ++k) {
      slope[k].assign(static_cast<size_t>(n + 2), 0.0);
      for (int i = -1; i <= n; ++i) {
        const double x = g.at(k, i);
        double sl = detail::limited_slope(m.options.limiter, x - g.at(k, i - 1), g.at(k, i + 1) - x);
        if ((k == pR || k == pT) && (x - 0.5 * std::abs(sl) <= 0.0)) sl = 0.0;
        slope[k][static_cast<size_t>(i + 1)] = sl;
      }
    }
    auto point = [&](int i, double side) {
      auto v = [&](int k) { return g.at(k, i) + side * 0.5 * slope[k][static_cast<size_t>(i + 1)]; };
      return detail::PointState{v(pR), v(pU), v(pW1), v(pW2), v(pT), v(pB2), v(pB3)};
    };

    std::vector<detail::Vec7> F(static_cast<size_t>(n + 1));
    for (int f = 0; f <= n; ++f) {
      detail::Vec7 QL, FL, QR, FR;
      double sL, sR;
      const auto L = point(f - 1, +1.0);
      detail::physical_flux(m, lag, L, QL, FL, sL);

      if (f == n && bc.kind == BcKind::free_boundary) {
        // Acoustic half-Riemann problem against the prescribed external
        // pressure; the normal stress through this face is exactly p_ext.
        const double pe = bc.external_pressure;
        const double ub = L.u + (FL[kMom] - pe) / sL;
        F[f] = {-ub, pe, 0.0, 0.0, m.has_energy() ? pe * ub : 0.0, 0.0, 0.0};
        continue;
      }

      const auto R = point(f, -1.0);
      detail::physical_flux(m, lag, R, QR, FR, sR);
      const double lam = std::max(sL, sR);
      for (int k = 0; k < kNumVars; ++k) F[f][k] = 0.5 * (FL[k] + FR[k]) - 0.5 * lam * (QR[k] - QL[k]);

      if (walls && (f == 0 || f == n)) {
        // Impermeable wall: only the normal momentum flux survives.
        for (int k : {kMass, kW1, kW2, kEnergy, kB2, kB3}) F[f][k] = 0.0;
      }
    }
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < kNumVars; ++k) out[k][i] -= (F[i + 1][k] - F[i][k]) / dx;
  }

  // Artificial mass diffusion eps d^2 rho (homogeneous Neumann at walls).
  if (m.reg.epsilon > 0.0) {
    const auto& rho = s.density_or_volume;
    std::vector<double> Fm(static_cast<size_t>(n + 1), 0.0);
    for (int f = 1; f < n; ++f) Fm[f] = m.reg.epsilon * (rho[f] - rho[f - 1]) / dx;
    if (!walls) Fm[0] = Fm[n] = m.reg.epsilon * (rho[0] - rho[n - 1]) / dx;
    for (int i = 0; i < n; ++i) out[kMass][i] += (Fm[i + 1] - Fm[i]) / dx;
  }

  if (gravity) {
    for (int i = 0; i < n; ++i) {
      const double rho = s.density(i);
      out[kMom][i] += rho * gravity->gradient[i];
      if (m.has_energy()) out[kEnergy][i] += rho * s.u[i] * gravity->gradient[i];
    }
  }

  if (m.options.source) {
    std::array<double, kNumVars> src{};
    for (int i = 0; i < n; ++i) {
      src.fill(0.0);
      m.options.source(s.time, s.grid.center(i), src);
      for (int k = 0; k < kNumVars; ++k)
        if (k != kEnergy || m.has_energy()) out[k][i] += src[k];
    }
  }
}

inline std::optional<PoissonSolution> gravity_potential(const State1D& s, const Model& m) {
  if (!m.gravity_on()) return std::nullopt;
  return poisson_solve(s.density_or_volume, m.grav.G, s.grid.domain_length);
}

/// Full semi-discrete operator dQ/dt for either coordinate system.
inline Tendencies compute_rhs(const State1D& s, const Model& m, RhsParts parts = {},
                              const PoissonSolution* gravity = nullptr) {
  s.check();
  Tendencies out(s.size());
  std::optional<PoissonSolution> own;
  if (parts.hyperbolic) {
    if (!gravity && m.gravity_on()) {
      own = gravity_potential(s, m);
      gravity = &*own;
    }
    add_hyperbolic(s, m, out, gravity);
  }
  if (parts.diffusion) diffusion::add_tendencies(s, m, out);
  return out;
}

inline Tendencies eulerian_rhs(const State1D& s, const Model& m) {
  if (s.lagrangian()) throw InvalidParams("eulerian_rhs: state is in Lagrangian coordinates");
  m.validate(s.coordinate());
  return compute_rhs(s, m);
}

inline Tendencies eulerian_rhs(const State1D& s, const EosParams& eos, const TransportParams& transport,
                               const RegularizationParams& reg = {}, const GravityParams& grav = {},
                               const BcSpec& bc = {}) {
  Model m;
  m.eos = eos;
  m.transport = transport;
  m.reg = reg;
  m.grav = grav;
  m.bc = bc;
  return eulerian_rhs(s, m);
}

inline Tendencies lagrangian_rhs(const State1D& s, const Model& m) {
  if (!s.lagrangian()) throw InvalidParams("lagrangian_rhs: state is in Eulerian coordinates");
  m.validate(s.coordinate());
  return compute_rhs(s, m);
}

inline Tendencies lagrangian_rhs(const State1D& s, const EosParams& eos, const TransportParams& transport,
                                 const BcSpec& bc = {}) {
  Model m;
  m.eos = eos;
  m.transport = transport;
  m.bc = bc;
  return lagrangian_rhs(s, m);
}

}  // namespace mhd1d
