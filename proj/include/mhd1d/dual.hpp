#pragma once

// Forward-mode dual numbers. Nesting Dual<Dual<double>> gives exact second
// derivatives, which is all the manufactured-source machinery needs.

#include <cmath>
#include <type_traits>

namespace mhd1d {

template <class T>
struct Dual {
  T val{};
  T der{};

  constexpr Dual() = default;
  constexpr Dual(double v) : val(v), der(0.0) {}  // NOLINT: implicit by design of AD
  constexpr Dual(T v, T d) : val(v), der(d) {}

  Dual& operator+=(const Dual& o) { val += o.val; der += o.der; return *this; }
  Dual& operator-=(const Dual& o) { val -= o.val; der -= o.der; return *this; }
  Dual& operator*=(const Dual& o) { *this = *this * o; return *this; }
  Dual& operator/=(const Dual& o) { *this = *this / o; return *this; }
};

template <class T>
struct is_dual : std::false_type {};
template <class T>
struct is_dual<Dual<T>> : std::true_type {};
template <class T>
inline constexpr bool is_dual_v = is_dual<T>::value;

inline double value_of(double x) { return x; }
template <class T>
double value_of(const Dual<T>& x) { return value_of(x.val); }

template <class T> Dual<T> operator+(const Dual<T>& a, const Dual<T>& b) { return {a.val + b.val, a.der + b.der}; }
template <class T> Dual<T> operator-(const Dual<T>& a, const Dual<T>& b) { return {a.val - b.val, a.der - b.der}; }
template <class T> Dual<T> operator-(const Dual<T>& a) { return {-a.val, -a.der}; }
template <class T> Dual<T> operator*(const Dual<T>& a, const Dual<T>& b) { return {a.val * b.val, a.der * b.val + a.val * b.der}; }
template <class T> Dual<T> operator/(const Dual<T>& a, const Dual<T>& b) {
  return {a.val / b.val, (a.der * b.val - a.val * b.der) / (b.val * b.val)};
}

template <class T> Dual<T> operator+(const Dual<T>& a, double b) { return {a.val + b, a.der}; }
template <class T> Dual<T> operator+(double a, const Dual<T>& b) { return {a + b.val, b.der}; }
template <class T> Dual<T> operator-(const Dual<T>& a, double b) { return {a.val - b, a.der}; }
template <class T> Dual<T> operator-(double a, const Dual<T>& b) { return {a - b.val, -b.der}; }
template <class T> Dual<T> operator*(const Dual<T>& a, double b) { return {a.val * b, a.der * b}; }
template <class T> Dual<T> operator*(double a, const Dual<T>& b) { return {a * b.val, a * b.der}; }
template <class T> Dual<T> operator/(const Dual<T>& a, double b) { return {a.val / b, a.der / b}; }
template <class T> Dual<T> operator/(double a, const Dual<T>& b) { return Dual<T>(a) / b; }

template <class T> bool operator<(const Dual<T>& a, const Dual<T>& b) { return value_of(a) < value_of(b); }
template <class T> bool operator<(const Dual<T>& a, double b) { return value_of(a) < b; }
template <class T> bool operator>(const Dual<T>& a, double b) { return value_of(a) > b; }
template <class T> bool operator<=(const Dual<T>& a, double b) { return value_of(a) <= b; }

template <class T>
Dual<T> sin(const Dual<T>& x) {
  using std::sin, std::cos;
  return {sin(x.val), cos(x.val) * x.der};
}
template <class T>
Dual<T> cos(const Dual<T>& x) {
  using std::sin, std::cos;
  return {cos(x.val), -sin(x.val) * x.der};
}
template <class T>
Dual<T> exp(const Dual<T>& x) {
  using std::exp;
  T e = exp(x.val);
  return {e, e * x.der};
}
template <class T>
Dual<T> log(const Dual<T>& x) {
  using std::log;
  return {log(x.val), x.der / x.val};
}
template <class T>
Dual<T> sqrt(const Dual<T>& x) {
  using std::sqrt;
  T r = sqrt(x.val);
  return {r, x.der / (2.0 * r)};
}
template <class T>
Dual<T> pow(const Dual<T>& x, double p) {
  using std::pow;
  return {pow(x.val, p), p * pow(x.val, p - 1.0) * x.der};
}

/// Seeds a variable for differentiation: value x, unit derivative.
template <class T>
Dual<T> make_variable(T x) {
  return {x, T(1.0)};
}

}  // namespace mhd1d
