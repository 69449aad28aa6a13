#pragma once

// Ghost-cell filling. Two ghost layers on each side; reflections are odd for
// u, w, b and even for density/volume and temperature.

#include <array>
#include <vector>

#include "mhd1d/state.hpp"

namespace mhd1d {

inline constexpr int kGhost = 2;

/// Primitive fields extended by kGhost cells on each side; index i runs over
/// [-kGhost, n + kGhost).
struct Ghosted {
  int n = 0;
  std::array<std::vector<double>, 7> f;  // same order as State1D::fields()

  double& at(int k, int i) { return f[static_cast<size_t>(k)][static_cast<size_t>(i + kGhost)]; }
  double at(int k, int i) const { return f[static_cast<size_t>(k)][static_cast<size_t>(i + kGhost)]; }
};

enum Prim : int { pR = 0, pU = 1, pW1 = 2, pW2 = 3, pT = 4, pB2 = 5, pB3 = 6 };

namespace detail {
inline bool odd_field(int k) { return k == pU || k == pW1 || k == pW2 || k == pB2 || k == pB3; }
}  // namespace detail

inline Ghosted apply_bcs(const State1D& s, const BcSpec& bc) {
  bc.validate(s.coordinate());
  Ghosted g;
  const int n = s.size();
  g.n = n;
  const auto src = s.fields();
  for (int k = 0; k < 7; ++k) {
    g.f[k].assign(static_cast<size_t>(n + 2 * kGhost), 0.0);
    const auto& v = *src[k];
    for (int i = 0; i < n; ++i) g.at(k, i) = v[i];
    for (int j = 1; j <= kGhost; ++j) {
      if (bc.kind == BcKind::periodic) {
        g.at(k, -j) = v[n - j];
        g.at(k, n - 1 + j) = v[j - 1];
        continue;
      }
      const double sgn = detail::odd_field(k) ? -1.0 : 1.0;
      g.at(k, -j) = sgn * v[j - 1];
      // Free boundary: the right end is not a wall for u; mirror it evenly.
      const double sgn_r = (bc.kind == BcKind::free_boundary && k == pU) ? 1.0 : sgn;
      g.at(k, n - 1 + j) = sgn_r * v[n - j];
    }
  }
  return g;
}

}  // namespace mhd1d
