#pragma once

// Thomas algorithm and its cyclic variant (Sherman-Morrison).
// Row i reads a[i] x[i-1] + b[i] x[i] + c[i] x[i+1] = d[i]; a[0] and c[n-1]
// are ignored for the open system and couple the ends for the cyclic one.

#include <cmath>
#include <string>
#include <vector>

#include "mhd1d/error.hpp"

namespace mhd1d {

inline std::vector<double> solve_tridiagonal(const std::vector<double>& a, const std::vector<double>& b,
                                             const std::vector<double>& c, const std::vector<double>& d) {
  const size_t n = b.size();
  if (n == 0 || a.size() != n || c.size() != n || d.size() != n)
    throw InvalidParams("tridiagonal: inconsistent sizes");
  std::vector<double> cp(n), dp(n), x(n);
  double piv = b[0];
  if (piv == 0.0 || !std::isfinite(piv)) throw NumericalError("tridiagonal: zero pivot in row 0");
  cp[0] = c[0] / piv;
  dp[0] = d[0] / piv;
  for (size_t i = 1; i < n; ++i) {
    piv = b[i] - a[i] * cp[i - 1];
    if (piv == 0.0 || !std::isfinite(piv))
      throw NumericalError("tridiagonal: zero pivot in row " + std::to_string(i));
    cp[i] = c[i] / piv;
    dp[i] = (d[i] - a[i] * dp[i - 1]) / piv;
  }
  x[n - 1] = dp[n - 1];
  for (size_t i = n - 1; i-- > 0;) x[i] = dp[i] - cp[i] * x[i + 1];
  return x;
}

inline std::vector<double> solve_cyclic_tridiagonal(const std::vector<double>& a, const std::vector<double>& b,
                                                    const std::vector<double>& c, const std::vector<double>& d) {
  const size_t n = b.size();
  if (n < 3) throw InvalidParams("cyclic tridiagonal: need at least 3 rows");
  const double alpha = c[n - 1];  // couples row n-1 to x[0]
  const double beta = a[0];       // couples row 0 to x[n-1]
  const double g = -b[0];
  std::vector<double> bb(b);
  bb[0] = b[0] - g;
  bb[n - 1] = b[n - 1] - alpha * beta / g;
  std::vector<double> aa(a), cc(c);
  aa[0] = 0.0;
  cc[n - 1] = 0.0;
  const auto x = solve_tridiagonal(aa, bb, cc, d);
  std::vector<double> uvec(n, 0.0);
  uvec[0] = g;
  uvec[n - 1] = alpha;
  const auto z = solve_tridiagonal(aa, bb, cc, uvec);
  const double denom = 1.0 + z[0] + beta * z[n - 1] / g;
  if (denom == 0.0 || !std::isfinite(denom)) throw NumericalError("cyclic tridiagonal: singular system");
  const double fact = (x[0] + beta * x[n - 1] / g) / denom;
  std::vector<double> out(n);
  for (size_t i = 0; i < n; ++i) out[i] = x[i] - fact * z[i];
  return out;
}

}  // namespace mhd1d
