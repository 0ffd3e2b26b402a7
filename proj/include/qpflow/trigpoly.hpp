#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "qpflow/fexpr.hpp"
#include "qpflow/laurent.hpp"
#include "qpflow/phase.hpp"

namespace qpflow {

/// Exact element of Q[r, r^-1, p_r, p_phi] (x) span{1, cos 2phi, sin 2phi}:
///   u0 + uc cos(2 phi) + us sin(2 phi).
/// The Hamiltonian lives in the trig-free part; every constructed integral
/// has u0 = 0 (pure character-(+-2) content).
struct TrigPoly {
  LaurentPoly u0, uc, us;

  bool trig_free() const { return uc.is_zero() && us.is_zero(); }

  TrigPoly operator-() const { return {-u0, -uc, -us}; }
  friend TrigPoly operator+(const TrigPoly& a, const TrigPoly& b) {
    return {a.u0 + b.u0, a.uc + b.uc, a.us + b.us};
  }
  friend TrigPoly operator-(const TrigPoly& a, const TrigPoly& b) {
    return {a.u0 - b.u0, a.uc - b.uc, a.us - b.us};
  }
  friend bool operator==(const TrigPoly& a, const TrigPoly& b) {
    return a.u0 == b.u0 && a.uc == b.uc && a.us == b.us;
  }
  friend bool operator!=(const TrigPoly& a, const TrigPoly& b) { return !(a == b); }

  TrigPoly scaled(const BigRational& k) const {
    return {u0.scaled(k), uc.scaled(k), us.scaled(k)};
  }
};

inline TrigPoly trig_free(LaurentPoly p) { return {std::move(p), {}, {}}; }

/// Product; defined only when at least one factor is trig-free (otherwise the
/// result would leave the cos2phi/sin2phi span). Throws SpanViolation.
TrigPoly operator*(const TrigPoly& a, const TrigPoly& b);

/// Canonical Poisson bracket {a, b}; at least one argument must be trig-free.
/// d/dphi acts on (uc, us) as (2 us, -2 uc). Exact.
TrigPoly poisson_bracket(const TrigPoly& a, const TrigPoly& b);

/// H = p_r^2 + p_phi^2 r^-2 + sum_n gamma_n (r p_r)^n for polynomial F.
/// Throws NotPolynomial for Expr FSpec.
TrigPoly h_symbolic(const FSpec& f);

inline bool is_zero(const TrigPoly& a) {
  return a.u0.is_zero() && a.uc.is_zero() && a.us.is_zero();
}

/// Max momentum degree over all components; degree of zero is -1.
inline int momentum_degree(const TrigPoly& a) {
  return std::max({momentum_degree_of(a.u0), momentum_degree_of(a.uc),
                   momentum_degree_of(a.us)});
}

/// Numeric evaluation at a polar point.
double eval(const TrigPoly& a, const PolarState& s);

std::string pretty(const TrigPoly& a);

nlohmann::json trigpoly_to_json(const TrigPoly& a);

}  // namespace qpflow
