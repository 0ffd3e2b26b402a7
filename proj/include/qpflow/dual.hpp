#pragma once

#include <cmath>
#include <complex>
#include <type_traits>

#include <Eigen/Core>

namespace qpflow {

/// First-order forward-mode dual number over an arbitrary scalar ring T.
///
/// T may be double, std::complex<double>, or another Dual (nesting gives
/// higher derivatives). Arithmetic follows the product and chain rules;
/// the derivative of a constant is 0 and of the seed variable is 1.
template <class T>
struct Dual {
  T v{};  // value
  T d{};  // derivative

  Dual() = default;
  Dual(const T& value) : v(value), d(T(0)) {}  // NOLINT: implicit by design
  Dual(const T& value, const T& deriv) : v(value), d(deriv) {}

  static Dual variable(const T& value) { return Dual(value, T(1)); }

  Dual operator-() const { return Dual(-v, -d); }

  Dual& operator+=(const Dual& o) { v += o.v; d += o.d; return *this; }
  Dual& operator-=(const Dual& o) { v -= o.v; d -= o.d; return *this; }
  Dual& operator*=(const Dual& o) {
    d = d * o.v + v * o.d;
    v *= o.v;
    return *this;
  }
  Dual& operator/=(const Dual& o) {
    v /= o.v;
    d = (d - v * o.d) / o.v;
    return *this;
  }
};

using DualD = Dual<double>;
using DualC = Dual<std::complex<double>>;

template <class T> Dual<T> operator+(Dual<T> a, const Dual<T>& b) { return a += b; }
template <class T> Dual<T> operator-(Dual<T> a, const Dual<T>& b) { return a -= b; }
template <class T> Dual<T> operator*(Dual<T> a, const Dual<T>& b) { return a *= b; }
template <class T> Dual<T> operator/(Dual<T> a, const Dual<T>& b) { return a /= b; }

template <class T> Dual<T> operator+(Dual<T> a, const T& b) { return a += Dual<T>(b); }
template <class T> Dual<T> operator-(Dual<T> a, const T& b) { return a -= Dual<T>(b); }
template <class T> Dual<T> operator*(Dual<T> a, const T& b) { return a *= Dual<T>(b); }
template <class T> Dual<T> operator/(Dual<T> a, const T& b) { return a /= Dual<T>(b); }
template <class T> Dual<T> operator+(const T& a, Dual<T> b) { return Dual<T>(a) += b; }
template <class T> Dual<T> operator-(const T& a, const Dual<T>& b) { return Dual<T>(a) -= b; }
template <class T> Dual<T> operator*(const T& a, Dual<T> b) { return b *= Dual<T>(a); }
template <class T> Dual<T> operator/(const T& a, const Dual<T>& b) { return Dual<T>(a) /= b; }

template <class T> Dual<T> operator+(Dual<T> a, double b) requires(!std::is_same_v<T, double>) { return a += Dual<T>(T(b)); }
template <class T> Dual<T> operator-(Dual<T> a, double b) requires(!std::is_same_v<T, double>) { return a -= Dual<T>(T(b)); }
template <class T> Dual<T> operator*(Dual<T> a, double b) requires(!std::is_same_v<T, double>) { return a *= Dual<T>(T(b)); }
template <class T> Dual<T> operator/(Dual<T> a, double b) requires(!std::is_same_v<T, double>) { return a /= Dual<T>(T(b)); }
template <class T> Dual<T> operator+(double a, Dual<T> b) requires(!std::is_same_v<T, double>) { return Dual<T>(T(a)) += b; }
template <class T> Dual<T> operator-(double a, const Dual<T>& b) requires(!std::is_same_v<T, double>) { return Dual<T>(T(a)) -= b; }
template <class T> Dual<T> operator*(double a, Dual<T> b) requires(!std::is_same_v<T, double>) { return b *= Dual<T>(T(a)); }
template <class T> Dual<T> operator/(double a, const Dual<T>& b) requires(!std::is_same_v<T, double>) { return Dual<T>(T(a)) /= b; }

// Equality is componentwise; ordering compares values only.
template <class T> bool operator==(const Dual<T>& a, const Dual<T>& b) { return a.v == b.v && a.d == b.d; }
template <class T> bool operator!=(const Dual<T>& a, const Dual<T>& b) { return !(a == b); }
template <class T> bool operator<(const Dual<T>& a, const Dual<T>& b) { return a.v < b.v; }
template <class T> bool operator>(const Dual<T>& a, const Dual<T>& b) { return a.v > b.v; }
template <class T> bool operator<=(const Dual<T>& a, const Dual<T>& b) { return a.v <= b.v; }
template <class T> bool operator>=(const Dual<T>& a, const Dual<T>& b) { return a.v >= b.v; }

// Whitelisted entire functions plus the few extras the polar chart needs.
// Unqualified recursive calls keep nested duals working.
template <class T> Dual<T> exp(const Dual<T>& x) {
  using std::exp;
  const T e = exp(x.v);
  return {e, x.d * e};
}
template <class T> Dual<T> sin(const Dual<T>& x) {
  using std::sin;
  using std::cos;
  return {sin(x.v), x.d * cos(x.v)};
}
template <class T> Dual<T> cos(const Dual<T>& x) {
  using std::sin;
  using std::cos;
  return {cos(x.v), -x.d * sin(x.v)};
}
template <class T> Dual<T> sinh(const Dual<T>& x) {
  using std::sinh;
  using std::cosh;
  return {sinh(x.v), x.d * cosh(x.v)};
}
template <class T> Dual<T> cosh(const Dual<T>& x) {
  using std::sinh;
  using std::cosh;
  return {cosh(x.v), x.d * sinh(x.v)};
}
template <class T> Dual<T> sqrt(const Dual<T>& x) {
  using std::sqrt;
  const T s = sqrt(x.v);
  return {s, x.d / (T(2) * s)};
}
template <class T> Dual<T> atan2(const Dual<T>& y, const Dual<T>& x) {
  using std::atan2;
  // Derivative of any continuous branch: (x dy - y dx) / (x^2 + y^2).
  return {atan2(y.v, x.v), (x.v * y.d - y.v * x.d) / (x.v * x.v + y.v * y.v)};
}
template <class T> Dual<T> abs(const Dual<T>& x) {
  return x.v < T(0) ? -x : x;
}

inline double value_of(double x) { return x; }
template <class T> auto value_of(const Dual<T>& x) { return value_of(x.v); }

}  // namespace qpflow

namespace Eigen {

template <class T>
struct NumTraits<qpflow::Dual<T>> : GenericNumTraits<qpflow::Dual<T>> {
  using Real = qpflow::Dual<T>;
  using NonInteger = qpflow::Dual<T>;
  using Nested = qpflow::Dual<T>;
  using Literal = T;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 2,
    MulCost = 4,
  };
  static Real epsilon() { return Real(NumTraits<T>::epsilon()); }
  static Real dummy_precision() { return Real(NumTraits<T>::dummy_precision()); }
  static int digits10() { return NumTraits<T>::digits10(); }
};

}  // namespace Eigen
