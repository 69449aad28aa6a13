#pragma once

// Manufactured solutions. For prescribed smooth fields q(t, s) the source
//   S = d_t Q(q) + d_s [F_hyp(q) - F_diff(q, d_s q)]
// is evaluated exactly with nested dual numbers: one level for d_s of the
// flux, one more for the gradients inside the diffusive flux.

#include <array>
#include <cmath>
#include <numbers>

#include "mhd1d/dual.hpp"
#include "mhd1d/state.hpp"
#include "mhd1d/thermo.hpp"
#include "mhd1d/transport.hpp"

namespace mhd1d {

template <class T>
struct FieldPoint {
  T r, u, w1, w2, th, b2, b3;
};

/// Smooth periodic fields on (0, 1), travelling at different speeds so that
/// every term of the operator is exercised. `r` is rho (Eulerian) or v
/// (Lagrangian).
struct WaveManufactured {
  double amplitude = 1.0;

  template <class T>
  FieldPoint<T> operator()(const T& t, const T& s) const {
    using std::sin, std::cos;
    constexpr double k = 2.0 * std::numbers::pi;
    const double a = amplitude;
    return {1.0 + 0.2 * a * sin(k * s - t),
            0.2 * a * sin(k * s + t + 1.0),
            0.1 * a * cos(k * s - 2.0 * t),
            0.1 * a * sin(2.0 * k * s + t),
            1.0 + 0.2 * a * cos(k * s + t),
            0.2 * a * sin(k * s + 2.0 * t),
            0.1 * a * cos(2.0 * k * s - t)};
  }
};

namespace detail {

// Conserved vector and net flux F_hyp - F_diff of the continuous system.
template <class T>
void continuous_flux(const Model& m, bool lag, const FieldPoint<T>& f, const FieldPoint<T>& ds,
                     std::array<T, kNumVars>& Q, std::array<T, kNumVars>& F) {
  const double mu = m.transport.mu;
  const auto& tp = m.transport;
  const auto& ph = m.options.physics;
  const bool energy = m.has_energy();
  const T rho = lag ? 1.0 / f.r : f.r;
  const T g = lag ? 1.0 / f.r : T(1.0);
  const T bb = f.b2 * f.b2 + f.b3 * f.b3;
  const T pmag = bb / (2.0 * mu);
  const T p = eos::pressure(m.eos, rho, f.th);
  const T wb = (f.w1 * f.b2 + f.w2 * f.b3) / mu;
  const T kin = 0.5 * (f.u * f.u + f.w1 * f.w1 + f.w2 * f.w2);
  const T e = energy ? eos::internal_energy(m.eos, rho, f.th) : T(0.0);

  const T Ku = ph.viscous ? coeff::longitudinal(tp, f.th) * g : T(0.0);
  const T Kw = ph.viscous ? coeff::nu(tp, f.th) * g : T(0.0);
  const T Kb = ph.resistive ? coeff::resistivity(tp, f.th) * g : T(0.0);
  const T Kt = (ph.heat && energy) ? coeff::kappa(tp, f.th) * g : T(0.0);
  const T Fu = Ku * ds.u, Fw1 = Kw * ds.w1, Fw2 = Kw * ds.w2;
  const T Fb2 = Kb * ds.b2 / mu, Fb3 = Kb * ds.b3 / mu;
  const T FE = f.u * Fu + f.w1 * Fw1 + f.w2 * Fw2 + (f.b2 / mu) * Fb2 + (f.b3 / mu) * Fb3 + Kt * ds.th;
  const double h = ph.hyperbolic ? 1.0 : 0.0;

  if (lag) {
    Q = {f.r, f.u, f.w1, f.w2, energy ? kin + e + f.r * pmag : T(0.0), f.r * f.b2, f.r * f.b3};
    F = {h * (-f.u),
         h * (p + pmag) - Fu,
         h * (-f.b2 / mu) - Fw1,
         h * (-f.b3 / mu) - Fw2,
         energy ? h * ((p + pmag) * f.u - wb) - FE : T(0.0),
         h * (-f.w1) - Fb2,
         h * (-f.w2) - Fb3};
  } else {
    const T E = rho * (kin + e) + pmag;
    Q = {rho, rho * f.u, rho * f.w1, rho * f.w2, energy ? E : T(0.0), f.b2, f.b3};
    F = {h * (rho * f.u),
         h * (rho * f.u * f.u + p + pmag) - Fu,
         h * (rho * f.u * f.w1 - f.b2 / mu) - Fw1,
         h * (rho * f.u * f.w2 - f.b3 / mu) - Fw2,
         energy ? h * ((E + p + pmag) * f.u - wb) - FE : T(0.0),
         h * (f.u * f.b2 - f.w1) - Fb2,
         h * (f.u * f.b3 - f.w2) - Fb3};
  }
}

template <class T>
FieldPoint<T> value_part(const FieldPoint<Dual<T>>& f) {
  return {f.r.val, f.u.val, f.w1.val, f.w2.val, f.th.val, f.b2.val, f.b3.val};
}
template <class T>
FieldPoint<T> derivative_part(const FieldPoint<Dual<T>>& f) {
  return {f.r.der, f.u.der, f.w1.der, f.w2.der, f.th.der, f.b2.der, f.b3.der};
}

}  // namespace detail

/// Exact source of the manufactured fields at (t, s).
template <class Fields>
std::array<double, kNumVars> manufactured_source(const Fields& fields, const Model& m, Coordinate c, double t,
                                                 double s) {
  using D1 = Dual<double>;
  using D2 = Dual<D1>;
  const bool lag = c == Coordinate::lagrangian;
  std::array<double, kNumVars> out{};

  // d_t Q: seed t.
  {
    const auto f = fields(D1(t, 1.0), D1(s, 0.0));
    const FieldPoint<D1> zero{0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    std::array<D1, kNumVars> Q, F;
    detail::continuous_flux(m, lag, f, zero, Q, F);
    for (int k = 0; k < kNumVars; ++k) out[k] += Q[k].der;
  }
  // d_s F: outer level seeds s for the divergence, inner level for gradients.
  {
    const D2 s2(D1(s, 1.0), D1(1.0, 0.0));
    const D2 t2(D1(t, 0.0), D1(0.0, 0.0));
    const auto f2 = fields(t2, s2);
    const auto f = detail::value_part(f2);
    const auto ds = detail::derivative_part(f2);
    std::array<D1, kNumVars> Q, F;
    detail::continuous_flux(m, lag, f, ds, Q, F);
    for (int k = 0; k < kNumVars; ++k) out[k] += F[k].der;
  }
  return out;
}

template <class Fields>
SourceFn make_manufactured_source(const Fields& fields, const Model& m, Coordinate c) {
  if (m.reg.active() || m.gravity_on())
    throw InvalidParams("manufactured sources do not cover regularization or gravity");
  if (m.eos.mode == EosMode::general_pf)
    throw InvalidParams("manufactured sources need a closed-form EOS");
  Model copy = m;
  copy.options.source = nullptr;
  return [fields, copy, c](double t, double s, std::array<double, kNumVars>& out) {
    out = manufactured_source(fields, copy, c, t, s);
  };
}

/// Samples the manufactured fields at the cell centres.
template <class Fields>
State1D manufactured_state(const Fields& fields, const Grid1D& grid, double t) {
  State1D st(grid, t);
  for (int i = 0; i < grid.n_cells; ++i) {
    const auto f = fields(t, grid.center(i));
    st.density_or_volume[i] = f.r;
    st.u[i] = f.u;
    st.w1[i] = f.w1;
    st.w2[i] = f.w2;
    st.theta[i] = f.th;
    st.b2[i] = f.b2;
    st.b3[i] = f.b3;
  }
  return st;
}

}  // namespace mhd1d
