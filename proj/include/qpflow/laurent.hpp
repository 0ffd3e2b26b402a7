#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <string>

#include "qpflow/errors.hpp"
#include "qpflow/rational.hpp"

namespace qpflow {

/// Sparse polynomial in three variables over an exact coefficient ring K.
/// Exponents are signed; which variables may go negative is a convention of
/// the wrapper aliases below. No zero coefficients are ever stored.
template <class K>
class SparsePoly3 {
 public:
  using Expo = std::array<int, 3>;
  using Map = std::map<Expo, K>;

  SparsePoly3() = default;

  static SparsePoly3 monomial(const Expo& e, K c) {
    SparsePoly3 out;
    out.add_term(e, c);
    return out;
  }
  static SparsePoly3 constant(K c) { return monomial({0, 0, 0}, std::move(c)); }

  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const Map& terms() const { return terms_; }

  void add_term(const Expo& e, const K& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  SparsePoly3 operator-() const {
    SparsePoly3 out;
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
  }

  friend SparsePoly3 operator+(const SparsePoly3& a, const SparsePoly3& b) {
    SparsePoly3 out = a;
    for (const auto& [e, c] : b.terms_) out.add_term(e, c);
    return out;
  }
  friend SparsePoly3 operator-(const SparsePoly3& a, const SparsePoly3& b) {
    SparsePoly3 out = a;
    for (const auto& [e, c] : b.terms_) out.add_term(e, -c);
    return out;
  }
  friend SparsePoly3 operator*(const SparsePoly3& a, const SparsePoly3& b) {
    SparsePoly3 out;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_)
        out.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
    return out;
  }
  SparsePoly3& operator+=(const SparsePoly3& o) { return *this = *this + o; }
  SparsePoly3& operator-=(const SparsePoly3& o) { return *this = *this - o; }
  SparsePoly3& operator*=(const SparsePoly3& o) { return *this = *this * o; }

  SparsePoly3 scaled(const K& k) const {
    SparsePoly3 out;
    if (k.is_zero()) return out;
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, c * k);
    return out;
  }

  /// Partial derivative with respect to variable index 0, 1, or 2.
  SparsePoly3 derivative(int var) const {
    SparsePoly3 out;
    for (const auto& [e, c] : terms_) {
      if (e[var] == 0) continue;
      Expo d = e;
      d[var] -= 1;
      out.add_term(d, c * K(e[var]));
    }
    return out;
  }

  friend bool operator==(const SparsePoly3& a, const SparsePoly3& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const SparsePoly3& a, const SparsePoly3& b) { return !(a == b); }

 private:
  Map terms_;
};

/// Exact element of Q[r, r^-1, p_r, p_phi]; variables (r, p_r, p_phi),
/// exponent of r may be negative.
using LaurentPoly = SparsePoly3<BigRational>;

/// Workspace ring for the z-variable constructions; variables (z, zbar, r),
/// exponent of r may be negative, coefficients in Q(i).
using ZPoly = SparsePoly3<GaussianRational>;

/// Complexified Laurent polynomial, the image of a ZPoly under
/// z -> p_phi + i r p_r; variables (r, p_r, p_phi).
using CLaurent = SparsePoly3<GaussianRational>;

inline LaurentPoly lp_monomial(int e_r, int e_pr, int e_pphi, BigRational c) {
  return LaurentPoly::monomial({e_r, e_pr, e_pphi}, std::move(c));
}

/// Numeric evaluation at a polar point.
inline double eval_laurent(const LaurentPoly& p, double r, double p_r, double p_phi) {
  double out = 0.0;
  for (const auto& [e, c] : p.terms())
    out += c.to_double() * std::pow(r, e[0]) * std::pow(p_r, e[1]) * std::pow(p_phi, e[2]);
  return out;
}

/// Max total momentum degree e_pr + e_pphi; -1 for the zero polynomial.
inline int momentum_degree_of(const LaurentPoly& p) {
  int deg = -1;
  for (const auto& [e, c] : p.terms()) deg = std::max(deg, e[1] + e[2]);
  return deg;
}

std::string laurent_str(const LaurentPoly& p);

// --- ZPoly operations -------------------------------------------------------

/// Complex conjugation: swaps z and zbar and conjugates coefficients.
/// An involution; fixed points represent real functions.
ZPoly zconj(const ZPoly& p);

/// Exact division by z; throws DivisibilityFailure if any term lacks a
/// factor of z.
ZPoly div_exact_z(const ZPoly& p);

/// Exact division by z zbar = |z|^2.
ZPoly div_exact_zzbar(const ZPoly& p);

/// Substitutes z = p_phi + i r p_r, zbar = p_phi - i r p_r.
CLaurent substitute_z(const ZPoly& p);

/// Splits a CLaurent into exact real and imaginary LaurentPoly parts.
void split_real_imag(const CLaurent& p, LaurentPoly& re, LaurentPoly& im);

}  // namespace qpflow
