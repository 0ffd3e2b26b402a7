#pragma once

#include <complex>
#include <utility>

#include <Eigen/Core>

#include "qpflow/dual.hpp"
#include "qpflow/errors.hpp"

namespace qpflow {

template <class S>
using VecX = Eigen::Matrix<S, Eigen::Dynamic, 1>;

/// |q| threshold below which the polar chart is treated as singular.
inline constexpr double kOriginEps = 1e-9;
/// q^2 p^2 threshold below which z = p_phi + i r p_r has no usable phase.
inline constexpr double kDegenerateZ2 = 1e-18;

/// Phase-space point in R^{2n}, n >= 2.
template <class S>
struct CartesianStateT {
  VecX<S> q, p;

  Eigen::Index dim() const { return q.size(); }
};
using CartesianState = CartesianStateT<double>;

/// Polar-chart point for n = 2: r > 0, phi in (-pi, pi].
template <class S>
struct PolarStateT {
  S r, phi, p_r, p_phi;
};
using PolarState = PolarStateT<double>;

/// z = p_phi + i r p_r; re = L, im = q.p of the matching Cartesian state.
struct ZVar {
  double re, im;
  std::complex<double> as_complex() const { return {re, im}; }
};

template <class S>
CartesianStateT<S> make_state(std::initializer_list<S> q, std::initializer_list<S> p) {
  CartesianStateT<S> s;
  s.q.resize(Eigen::Index(q.size()));
  s.p.resize(Eigen::Index(p.size()));
  Eigen::Index i = 0;
  for (const S& v : q) s.q[i++] = v;
  i = 0;
  for (const S& v : p) s.p[i++] = v;
  return s;
}

inline CartesianState state2(double q1, double q2, double p1, double p2) {
  return make_state<double>({q1, q2}, {p1, p2});
}

/// Canonical polar transform, n = 2 only. phi from the two-argument
/// arctangent; p_r = q.p / r; p_phi = q1 p2 - q2 p1.
template <class S>
PolarStateT<S> to_polar(const CartesianStateT<S>& s) {
  if (s.dim() != 2) throw DomainError("to_polar requires n = 2");
  using std::sqrt;
  using std::atan2;
  const S r2 = s.q.squaredNorm();
  if (!(value_of(r2) > kOriginEps * kOriginEps))
    throw OriginSingularity("to_polar: |q| <= 1e-9");
  const S r = sqrt(r2);
  PolarStateT<S> out;
  out.r = r;
  out.phi = atan2(s.q[1], s.q[0]);
  out.p_r = s.q.dot(s.p) / r;
  out.p_phi = s.q[0] * s.p[1] - s.q[1] * s.p[0];
  return out;
}

/// Inverse polar transform; exactly the textbook formulas.
template <class S>
CartesianStateT<S> to_cartesian(const PolarStateT<S>& s) {
  if (!(value_of(s.r) > 0.0)) throw DomainError("to_cartesian: r must be positive");
  using std::sin;
  using std::cos;
  const S c = cos(s.phi), n = sin(s.phi);
  CartesianStateT<S> out;
  out.q.resize(2);
  out.p.resize(2);
  out.q[0] = s.r * c;
  out.q[1] = s.r * n;
  out.p[0] = s.p_r * c - (s.p_phi / s.r) * n;
  out.p[1] = s.p_r * n + (s.p_phi / s.r) * c;
  return out;
}

/// All angular-momentum components L_ij = q_i p_j - q_j p_i, i < j in
/// lexicographic order, plus L^2 = sum L_ij^2.
template <class S>
std::pair<VecX<S>, S> angular_momentum(const CartesianStateT<S>& s) {
  const Eigen::Index n = s.dim();
  VecX<S> L(n * (n - 1) / 2);
  S L2(0.0);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      L[k] = s.q[i] * s.p[j] - s.q[j] * s.p[i];
      L2 += L[k] * L[k];
      ++k;
    }
  }
  return {std::move(L), L2};
}

inline ZVar z_of(const PolarState& s) { return {s.p_phi, s.r * s.p_r}; }

}  // namespace qpflow
