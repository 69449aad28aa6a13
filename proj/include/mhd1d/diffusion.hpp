#pragma once

// Viscous, resistive and heat-conduction operators in flux form.
//
// Both coordinate systems share one discretisation:
//   m_u d_t u = d(K_u g d u),      K_u = 4/3 nu + eta
//   m_u d_t w = d(K_w g d w),      K_w = nu
//   m_b d_t b = d(K_b g d(b/mu)),  K_b = 1/sigma
//   d_t (total energy) = d(u K_u g du + w.K_w g dw + (b/mu).K_b g d(b/mu) + kappa g d theta)
// with (m_u, m_b, g) = (rho, 1, 1) in Eulerian and (1, v, 1/v) in Lagrangian
// coordinates. Face coefficients are arithmetic means of the cell values of
// K g. The energy flux uses face means of u, w and b/mu, so total energy is
// conserved to round-off and the dissipation it carries into the internal
// energy is a sum of squares.

#include <cmath>
#include <vector>

#include "mhd1d/conserved.hpp"
#include "mhd1d/error.hpp"
#include "mhd1d/state.hpp"
#include "mhd1d/thermo.hpp"
#include "mhd1d/transport.hpp"
#include "mhd1d/tridiagonal.hpp"

namespace mhd1d {

enum class FaceBc { dirichlet, neumann, periodic };

struct DiffusionBcs {
  FaceBc u_left, u_right, wb, theta;

  static DiffusionBcs from(const BcSpec& bc) {
    switch (bc.kind) {
      case BcKind::periodic:
        return {FaceBc::periodic, FaceBc::periodic, FaceBc::periodic, FaceBc::periodic};
      case BcKind::free_boundary:
        // The full normal stress at the free end is carried by the hyperbolic
        // boundary flux, so the viscous flux of u vanishes there.
        return {FaceBc::dirichlet, FaceBc::neumann, FaceBc::dirichlet, FaceBc::neumann};
      case BcKind::fixed_dirichlet:
        break;
    }
    return {FaceBc::dirichlet, FaceBc::dirichlet, FaceBc::dirichlet, FaceBc::neumann};
  }
};

namespace diffusion {

/// Face coefficients K g (size n+1) of the four operators.
struct Coefficients {
  std::vector<double> Ku, Kw, Kb, Kt;
};

inline std::vector<double> to_faces(const std::vector<double>& cell, bool periodic) {
  const size_t n = cell.size();
  std::vector<double> f(n + 1);
  for (size_t i = 1; i < n; ++i) f[i] = 0.5 * (cell[i - 1] + cell[i]);
  if (periodic) {
    f[0] = f[n] = 0.5 * (cell[n - 1] + cell[0]);
  } else {
    f[0] = cell[0];
    f[n] = cell[n - 1];
  }
  return f;
}

inline Coefficients coefficients(const State1D& s, const Model& m, const std::vector<double>& theta) {
  const int n = s.size();
  const auto& tp = m.transport;
  const auto& ph = m.options.physics;
  const bool periodic = m.bc.kind == BcKind::periodic;
  std::vector<double> ku(n), kw(n), kb(n), kt(n);
  for (int i = 0; i < n; ++i) {
    const double g = s.lagrangian() ? 1.0 / s.density_or_volume[i] : 1.0;
    const double t = theta[i];
    ku[i] = ph.viscous ? coeff::longitudinal(tp, t) * g : 0.0;
    kw[i] = ph.viscous ? coeff::nu(tp, t) * g : 0.0;
    kb[i] = ph.resistive ? coeff::resistivity(tp, t) * g : 0.0;
    kt[i] = (ph.heat && m.has_energy()) ? coeff::kappa(tp, t) * g : 0.0;
  }
  return {to_faces(ku, periodic), to_faces(kw, periodic), to_faces(kb, periodic), to_faces(kt, periodic)};
}

/// Flux K s dx/ds at every face (size n+1), s a constant scale.
inline std::vector<double> face_flux(const std::vector<double>& x, const std::vector<double>& K, double scale,
                                     FaceBc left, FaceBc right, double dx) {
  const size_t n = x.size();
  std::vector<double> F(n + 1, 0.0);
  for (size_t f = 1; f < n; ++f) F[f] = K[f] * scale * (x[f] - x[f - 1]) / dx;
  if (left == FaceBc::periodic) {
    F[0] = F[n] = K[0] * scale * (x[0] - x[n - 1]) / dx;
    return F;
  }
  if (left == FaceBc::dirichlet) F[0] = 2.0 * K[0] * scale * x[0] / dx;
  if (right == FaceBc::dirichlet) F[n] = -2.0 * K[n] * scale * x[n - 1] / dx;
  return F;
}

/// Face values used in the energy flux: mean of neighbours, 0 on Dirichlet faces.
inline std::vector<double> face_mean(const std::vector<double>& x, FaceBc left, FaceBc right) {
  const size_t n = x.size();
  std::vector<double> v(n + 1, 0.0);
  for (size_t f = 1; f < n; ++f) v[f] = 0.5 * (x[f - 1] + x[f]);
  if (left == FaceBc::periodic) {
    v[0] = v[n] = 0.5 * (x[n - 1] + x[0]);
    return v;
  }
  if (left == FaceBc::neumann) v[0] = x[0];
  if (right == FaceBc::neumann) v[n] = x[n - 1];
  return v;
}

/// Solves m_i x_i - c (F_{i+1}(x) - F_i(x)) / dx = r_i.
inline std::vector<double> solve_implicit(const std::vector<double>& m, const std::vector<double>& r, double c,
                                          const std::vector<double>& K, double scale, FaceBc left,
                                          FaceBc right, double dx) {
  const size_t n = m.size();
  const double k = c * scale / (dx * dx);
  std::vector<double> a(n, 0.0), b(n), cc(n, 0.0);
  for (size_t i = 0; i < n; ++i) {
    b[i] = m[i] + k * (K[i] + K[i + 1]);
    if (i > 0) a[i] = -k * K[i];
    if (i + 1 < n) cc[i] = -k * K[i + 1];
  }
  if (left == FaceBc::periodic) {
    a[0] = -k * K[0];
    cc[n - 1] = -k * K[n];
    return solve_cyclic_tridiagonal(a, b, cc, r);
  }
  if (left == FaceBc::dirichlet) b[0] += k * K[0];
  if (left == FaceBc::neumann) b[0] -= k * K[0];
  if (right == FaceBc::dirichlet) b[n - 1] += k * K[n];
  if (right == FaceBc::neumann) b[n - 1] -= k * K[n];
  return solve_tridiagonal(a, b, cc, r);
}

struct Fluxes {
  std::vector<double> u, w1, w2, b2, b3, theta, energy;
};

/// Mechanical part of the energy flux plus the heat flux, given the
/// component fluxes.
inline std::vector<double> energy_flux(const State1D& s, const Model& m, const DiffusionBcs& bcs,
                                       const Fluxes& F) {
  const size_t n = static_cast<size_t>(s.size());
  const double mu = m.transport.mu;
  const auto um = face_mean(s.u, bcs.u_left, bcs.u_right);
  const auto w1m = face_mean(s.w1, bcs.wb, bcs.wb);
  const auto w2m = face_mean(s.w2, bcs.wb, bcs.wb);
  const auto b2m = face_mean(s.b2, bcs.wb, bcs.wb);
  const auto b3m = face_mean(s.b3, bcs.wb, bcs.wb);
  std::vector<double> FE(n + 1);
  for (size_t f = 0; f <= n; ++f)
    FE[f] = um[f] * F.u[f] + w1m[f] * F.w1[f] + w2m[f] * F.w2[f] + (b2m[f] / mu) * F.b2[f] +
            (b3m[f] / mu) * F.b3[f] + F.theta[f];
  return FE;
}

inline Fluxes fluxes(const State1D& s, const Model& m, const Coefficients& K) {
  const auto bcs = DiffusionBcs::from(m.bc);
  const double dx = s.grid.dx();
  const double inv_mu = 1.0 / m.transport.mu;
  Fluxes F;
  F.u = face_flux(s.u, K.Ku, 1.0, bcs.u_left, bcs.u_right, dx);
  F.w1 = face_flux(s.w1, K.Kw, 1.0, bcs.wb, bcs.wb, dx);
  F.w2 = face_flux(s.w2, K.Kw, 1.0, bcs.wb, bcs.wb, dx);
  F.b2 = face_flux(s.b2, K.Kb, inv_mu, bcs.wb, bcs.wb, dx);
  F.b3 = face_flux(s.b3, K.Kb, inv_mu, bcs.wb, bcs.wb, dx);
  F.theta = face_flux(s.theta, K.Kt, 1.0, bcs.theta, bcs.theta, dx);
  F.energy = energy_flux(s, m, bcs, F);
  return F;
}

/// Adds the explicit diffusive tendencies of the conserved variables.
inline void add_tendencies(const State1D& s, const Model& m, Tendencies& out) {
  const auto K = coefficients(s, m, s.theta);
  const auto F = fluxes(s, m, K);
  const int n = s.size();
  const double dx = s.grid.dx();
  for (int i = 0; i < n; ++i) {
    out[kMom][i] += (F.u[i + 1] - F.u[i]) / dx;
    out[kW1][i] += (F.w1[i + 1] - F.w1[i]) / dx;
    out[kW2][i] += (F.w2[i + 1] - F.w2[i]) / dx;
    out[kB2][i] += (F.b2[i + 1] - F.b2[i]) / dx;
    out[kB3][i] += (F.b3[i + 1] - F.b3[i]) / dx;
    if (m.has_energy()) out[kEnergy][i] += (F.energy[i + 1] - F.energy[i]) / dx;
  }
}

/// Largest diffusivity (coefficient over capacity) over the cells, for the
/// explicit stability limit.
inline double max_diffusivity(const State1D& s, const Model& m) {
  const auto& tp = m.transport;
  const auto& ph = m.options.physics;
  double dmax = 0.0;
  for (int i = 0; i < s.size(); ++i) {
    const double rho = s.density(i), t = s.theta[i];
    const double g = s.lagrangian() ? rho : 1.0;  // 1/v
    const double mu_cap = s.lagrangian() ? 1.0 : rho;
    const double mb_cap = s.lagrangian() ? 1.0 / rho : 1.0;
    if (ph.viscous) dmax = std::max(dmax, coeff::longitudinal(tp, t) * g / mu_cap);
    if (ph.resistive) dmax = std::max(dmax, coeff::resistivity(tp, t) * g / (mb_cap * tp.mu));
    if (ph.heat && m.has_energy()) {
      const double cap = (s.lagrangian() ? 1.0 : rho) * eos::de_dtheta(m.eos, rho, t);
      dmax = std::max(dmax, coeff::kappa(tp, t) * g / cap);
    }
  }
  return dmax;
}

namespace detail {

struct StageResult {
  std::vector<double> u, w1, w2, b2, b3, theta;
  std::vector<double> energy;  // cell total energy (conserved form)
};

// Internal energy per conserved unit and its temperature derivative.
inline void internal_energy(const Model& m, bool lag, double r, double t, double& val, double& der) {
  const double rho = lag ? 1.0 / r : r;
  const double e = eos::internal_energy(m.eos, rho, t);
  const double et = eos::de_dtheta(m.eos, rho, t);
  val = lag ? e : rho * e;
  der = lag ? et : rho * et;
}

}  // namespace detail

/// Implicit diffusion substep of length dt by the two-stage, L-stable SDIRK
/// scheme (gamma = 1 - 1/sqrt 2). The coefficients are refreshed by Picard
/// iteration; the first iterate uses the coefficients of the stage predictor.
inline State1D implicit_step(const State1D& s0, double dt, const Model& m) {
  const auto& ph = m.options.physics;
  const bool energy = m.has_energy();
  if (!ph.viscous && !ph.resistive && !(ph.heat && energy)) return s0;

  const int n = s0.size();
  const double dx = s0.grid.dx();
  const bool lag = s0.lagrangian();
  const double mu = m.transport.mu;
  const double inv_mu = 1.0 / mu;
  const auto bcs = DiffusionBcs::from(m.bc);
  const double gam = 1.0 - 1.0 / std::sqrt(2.0);

  std::vector<double> mu_w(n), mb_w(n), r(n);
  for (int i = 0; i < n; ++i) {
    r[i] = s0.density_or_volume[i];
    mu_w[i] = lag ? 1.0 : r[i];
    mb_w[i] = lag ? r[i] : 1.0;
  }
  std::vector<double> E0(n);
  if (energy)
    for (int i = 0; i < n; ++i) E0[i] = cell_total_energy(s0, m, i);

  auto weighted = [&](const std::vector<double>& w, const std::vector<double>& x) {
    std::vector<double> y(n);
    for (int i = 0; i < n; ++i) y[i] = w[i] * x[i];
    return y;
  };

  // rhs_* are the explicit parts (m x)^n + a dt k1; the stage solves
  // m x - gam dt L(x) = rhs.
  struct Rhs {
    std::vector<double> u, w1, w2, b2, b3, E;
  };

  auto stage = [&](const Rhs& rhs, const std::vector<double>& theta_start, State1D& work) {
    const double c = gam * dt;
    std::vector<double> theta_it = theta_start;
    for (int p = 0; p < m.options.picard_iterations; ++p) {
      work.theta = theta_it;
      const auto K = coefficients(work, m, theta_it);
      if (ph.viscous) {
        work.u = solve_implicit(mu_w, rhs.u, c, K.Ku, 1.0, bcs.u_left, bcs.u_right, dx);
        work.w1 = solve_implicit(mu_w, rhs.w1, c, K.Kw, 1.0, bcs.wb, bcs.wb, dx);
        work.w2 = solve_implicit(mu_w, rhs.w2, c, K.Kw, 1.0, bcs.wb, bcs.wb, dx);
      }
      if (ph.resistive) {
        work.b2 = solve_implicit(mb_w, rhs.b2, c, K.Kb, inv_mu, bcs.wb, bcs.wb, dx);
        work.b3 = solve_implicit(mb_w, rhs.b3, c, K.Kb, inv_mu, bcs.wb, bcs.wb, dx);
      }
      if (!energy) break;

      // Mechanical energy flux at the new velocities and fields.
      Fluxes F;
      F.u = face_flux(work.u, K.Ku, 1.0, bcs.u_left, bcs.u_right, dx);
      F.w1 = face_flux(work.w1, K.Kw, 1.0, bcs.wb, bcs.wb, dx);
      F.w2 = face_flux(work.w2, K.Kw, 1.0, bcs.wb, bcs.wb, dx);
      F.b2 = face_flux(work.b2, K.Kb, inv_mu, bcs.wb, bcs.wb, dx);
      F.b3 = face_flux(work.b3, K.Kb, inv_mu, bcs.wb, bcs.wb, dx);
      F.theta.assign(n + 1, 0.0);
      const auto Fmech = energy_flux(work, m, bcs, F);

      // Newton on  int(theta_i) - c (Ft_{i+1} - Ft_i)/dx = target_i.
      std::vector<double> target(n);
      for (int i = 0; i < n; ++i) {
        const double kin = 0.5 * (work.u[i] * work.u[i] + work.w1[i] * work.w1[i] + work.w2[i] * work.w2[i]);
        const double mag = (work.b2[i] * work.b2[i] + work.b3[i] * work.b3[i]) / (2.0 * mu);
        const double kin_c = lag ? kin : r[i] * kin;
        const double mag_c = lag ? r[i] * mag : mag;
        target[i] = rhs.E[i] + c * (Fmech[i + 1] - Fmech[i]) / dx - kin_c - mag_c;
      }
      std::vector<double> th = theta_it;
      const double k = c / (dx * dx);
      const auto& Kt = K.Kt;
      bool converged = false;
      for (int it = 0; it < 60 && !converged; ++it) {
        const auto Ft = face_flux(th, Kt, 1.0, bcs.theta, bcs.theta, dx);
        std::vector<double> a(n, 0.0), b(n), cc(n, 0.0), res(n);
        double scale = 0.0;
        for (int i = 0; i < n; ++i) {
          double val, der;
          detail::internal_energy(m, lag, r[i], th[i], val, der);
          res[i] = val - c * (Ft[i + 1] - Ft[i]) / dx - target[i];
          scale = std::max(scale, std::abs(target[i]));
          b[i] = der + k * (Kt[i] + Kt[i + 1]);
          if (i > 0) a[i] = -k * Kt[i];
          if (i + 1 < n) cc[i] = -k * Kt[i + 1];
        }
        std::vector<double> d;
        if (bcs.theta == FaceBc::periodic) {
          a[0] = -k * Kt[0];
          cc[n - 1] = -k * Kt[n];
          d = solve_cyclic_tridiagonal(a, b, cc, res);
        } else {
          b[0] -= k * Kt[0];
          b[n - 1] -= k * Kt[n];
          d = solve_tridiagonal(a, b, cc, res);
        }
        double lam = 1.0, change = 0.0;
        for (int halvings = 0;; ++halvings) {
          bool ok = true;
          for (int i = 0; i < n && ok; ++i) ok = th[i] - lam * d[i] > 0.0;
          if (ok) break;
          lam *= 0.5;
          if (halvings > 60) {
            int worst = 0;
            for (int i = 1; i < n; ++i)
              if (target[i] < target[worst]) worst = i;
            throw PositivityError("theta", worst, target[worst]);
          }
        }
        for (int i = 0; i < n; ++i) {
          th[i] -= lam * d[i];
          change = std::max(change, std::abs(lam * d[i]) / th[i]);
        }
        converged = lam == 1.0 && change < 1e-14;
        if (!converged && it >= 2) {
          // Stop once the residual is at round-off level.
          double rmax = 0.0;
          for (int i = 0; i < n; ++i) rmax = std::max(rmax, std::abs(res[i]));
          if (lam == 1.0 && rmax <= 1e-15 * std::max(scale, 1e-300)) converged = true;
        }
      }
      if (!converged) throw NumericalError("implicit heat solve: Newton did not converge");
      theta_it = th;
      work.theta = th;
    }
    if (!energy) work.theta = s0.theta;
  };

  auto stage_energy = [&](const State1D& w) {
    std::vector<double> E(n);
    for (int i = 0; i < n; ++i) E[i] = cell_total_energy(w, m, i);
    return E;
  };

  // Stage 1.
  Rhs rhs1{weighted(mu_w, s0.u), weighted(mu_w, s0.w1), weighted(mu_w, s0.w2),
           weighted(mb_w, s0.b2), weighted(mb_w, s0.b3), E0};
  State1D s1 = s0;
  stage(rhs1, s0.theta, s1);
  const std::vector<double> E1 = energy ? stage_energy(s1) : std::vector<double>(n, 0.0);

  // Stage 2: explicit part uses k1 = (X1 - X0) / (gam dt), exactly the
  // operator value of stage 1.
  const double w = (1.0 - gam) / gam;
  auto combine = [&](const std::vector<double>& x0, const std::vector<double>& x1) {
    std::vector<double> y(n);
    for (int i = 0; i < n; ++i) y[i] = x0[i] + w * (x1[i] - x0[i]);
    return y;
  };
  Rhs rhs2{combine(rhs1.u, weighted(mu_w, s1.u)),   combine(rhs1.w1, weighted(mu_w, s1.w1)),
           combine(rhs1.w2, weighted(mu_w, s1.w2)), combine(rhs1.b2, weighted(mb_w, s1.b2)),
           combine(rhs1.b3, weighted(mb_w, s1.b3)), combine(E0, E1)};
  State1D s2 = s1;
  stage(rhs2, s1.theta, s2);
  return s2;
}

}  // namespace diffusion

}  // namespace mhd1d
