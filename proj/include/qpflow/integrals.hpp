#pragma once

#include <optional>
#include <string>
#include <utility>

#include "qpflow/dynamics.hpp"
#include "qpflow/fexpr.hpp"
#include "qpflow/phase.hpp"
#include "qpflow/rational.hpp"

namespace qpflow {

namespace detail {

/// Minimal complex-over-S helper so the closed forms stay generic in the
/// scalar (double or Dual<double>).
template <class S>
struct Cplx {
  S re{}, im{};
  friend Cplx operator+(const Cplx& a, const Cplx& b) { return {a.re + b.re, a.im + b.im}; }
  friend Cplx operator-(const Cplx& a, const Cplx& b) { return {a.re - b.re, a.im - b.im}; }
  friend Cplx operator*(const Cplx& a, const Cplx& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Cplx operator/(const Cplx& a, const Cplx& b) {
    const S n2 = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / n2, (a.im * b.re - a.re * b.im) / n2};
  }
  Cplx scaled(const S& k) const { return {re * k, im * k}; }
};

template <class S>
Cplx<S> cpow(Cplx<S> base, int e) {
  Cplx<S> out{S(1.0), S(0.0)};
  for (; e > 0; e >>= 1) {
    if (e & 1) out = out * base;
    if (e > 1) base = base * base;
  }
  return out;
}

template <class S>
S spow(S base, int e) {
  S out(1.0);
  for (; e > 0; e >>= 1) {
    if (e & 1) out = out * base;
    if (e > 1) base = base * base;
  }
  return out;
}

}  // namespace detail

/// C_1 in the branch-free Cartesian closed form (n = 2):
///   [2 L (q.p)(q1^2 - q2^2) - (L^2 - (q.p)^2) 2 q1 q2] / (q^2 p^2 q^2).
/// Equals sin(2(arctan(r p_r / p_phi) - phi)) wherever the latter is defined.
template <class S>
S eval_c1(const CartesianStateT<S>& s) {
  if (s.dim() != 2) throw DomainError("eval_c1 requires n = 2");
  const S q2 = s.q.squaredNorm(), p2 = s.p.squaredNorm();
  if (!(value_of(q2) > kOriginEps * kOriginEps))
    throw OriginSingularity("eval_c1: |q| <= 1e-9");
  if (!(value_of(q2) * value_of(p2) > kDegenerateZ2))
    throw DegenerateZ("eval_c1: q^2 p^2 <= 1e-18");
  const S qp = s.q.dot(s.p);
  const S L = s.q[0] * s.p[1] - s.q[1] * s.p[0];
  const S num = 2.0 * L * qp * (s.q[0] * s.q[0] - s.q[1] * s.q[1]) -
                (L * L - qp * qp) * (2.0 * s.q[0] * s.q[1]);
  return num / (q2 * p2 * q2);
}

/// C_n of the z-variable closed form: with W = (z^2/|z|^2)^n,
///   C_n = Im(W) cos(2 n phi) - Re(W) sin(2 n phi).
template <class S>
S eval_cn(const PolarStateT<S>& s, int n) {
  if (n < 1) throw DomainError("eval_cn requires n >= 1");
  using std::sin;
  using std::cos;
  const S zr = s.p_phi, zi = s.r * s.p_r;
  const S n2 = zr * zr + zi * zi;
  if (!(value_of(n2) > kDegenerateZ2)) throw DegenerateZ("eval_cn: |z|^2 <= 1e-18");
  detail::Cplx<S> w{(zr * zr - zi * zi) / n2, 2.0 * zr * zi / n2};
  w = detail::cpow(w, n);
  const S a = 2.0 * double(n) * s.phi;
  return w.im * cos(a) - w.re * sin(a);
}

/// The analytic integral of the two-path identity, axis 2 by default:
///   K = p_a^2 + q^2 p_a^2 (DA + (q.p) DB) + q_a p_a B(-L^2),
/// with divided differences between u = q^2 p^2 - L^2 and v = -L^2.
/// Valid at p = 0; axis 1 swaps indices.
template <class S>
S eval_k(const CartesianStateT<S>& s, const FSpec& f, int axis = 2) {
  if (s.dim() != 2) throw DomainError("eval_k requires n = 2");
  if (axis != 1 && axis != 2) throw DomainError("eval_k axis must be 1 or 2");
  const Eigen::Index a = axis - 1;
  const S q2 = s.q.squaredNorm(), p2 = s.p.squaredNorm();
  const S qp = s.q.dot(s.p);
  const S L = s.q[0] * s.p[1] - s.q[1] * s.p[0];
  const S u = q2 * p2 - L * L, v = -L * L;
  S DA, DB;
  divided_diff_AB(f, u, v, DA, DB);
  S Av, Bv;
  eval_AB_real(f, v, Av, Bv);
  const S pa = s.p[a], qa = s.q[a];
  return pa * pa + q2 * pa * pa * (DA + qp * DB) + qa * pa * Bv;
}

/// C~ for the even monomial F = gamma s^{2k}: G = |z|^2(...) evaluated in
/// complex arithmetic times C_1 (numeric route, any real gamma).
template <class S>
S ctilde_even_closed(const PolarStateT<S>& s, int k, double gamma) {
  if (k < 1) throw DomainError("ctilde_even requires k >= 1");
  const S zr = s.p_phi, zi = s.r * s.p_r;
  const S z2 = zr * zr + zi * zi;
  if (!(value_of(z2) > kDegenerateZ2)) throw DegenerateZ("ctilde_even: |z|^2 <= 1e-18");
  // G = H - (-1)^k gamma p_phi^{2k} = |z|^2/r^2 + gamma (r p_r)^{2k}
  //     - (-1)^k gamma p_phi^{2k}.
  const double sgn = k % 2 == 0 ? 1.0 : -1.0;
  const S G = z2 / (s.r * s.r) + gamma * detail::spow(zi, 2 * k) -
              (sgn * gamma) * detail::spow(zr, 2 * k);
  return G * eval_cn(s, 1);
}

/// C~ for the odd monomial F = gamma s^{2k+1} via A + iB = i zbar W / z with
/// W = (-1)^k gamma p_phi^{2k+1} + iE (numeric route, any real gamma).
template <class S>
S ctilde_odd_closed(const PolarStateT<S>& s, int k, double gamma) {
  if (k < 0) throw DomainError("ctilde_odd requires k >= 0");
  using std::sin;
  using std::cos;
  const S zr = s.p_phi, zi = s.r * s.p_r;
  const S z2 = zr * zr + zi * zi;
  if (!(value_of(z2) > kDegenerateZ2)) throw DegenerateZ("ctilde_odd: |z|^2 <= 1e-18");
  const double sgn = k % 2 == 0 ? 1.0 : -1.0;
  const S E = z2 / (s.r * s.r) + gamma * detail::spow(zi, 2 * k + 1);
  const detail::Cplx<S> W{(sgn * gamma) * detail::spow(zr, 2 * k + 1), E};
  const detail::Cplx<S> z{zr, zi}, zbar{zr, -zi};
  const detail::Cplx<S> iunit{S(0.0), S(1.0)};
  const detail::Cplx<S> AB = iunit * zbar * (W / z);
  return AB.re * cos(2.0 * s.phi) - AB.im * sin(2.0 * s.phi);
}

/// Zernike integral for F = gamma1 s + gamma2 s^2 via
/// W = gamma1 p_phi + i(E + gamma2 p_phi^2) (numeric route).
template <class S>
S zernike_closed(const PolarStateT<S>& s, double gamma1, double gamma2) {
  using std::sin;
  using std::cos;
  const S zr = s.p_phi, zi = s.r * s.p_r;
  const S z2 = zr * zr + zi * zi;
  if (!(value_of(z2) > kDegenerateZ2)) throw DegenerateZ("zernike: |z|^2 <= 1e-18");
  const S rp = s.r * s.p_r;
  const S E = z2 / (s.r * s.r) + gamma1 * rp + gamma2 * rp * rp;
  const detail::Cplx<S> W{gamma1 * s.p_phi, E + gamma2 * s.p_phi * s.p_phi};
  const detail::Cplx<S> z{zr, zi}, zbar{zr, -zi};
  const detail::Cplx<S> iunit{S(0.0), S(1.0)};
  const detail::Cplx<S> AB = iunit * zbar * (W / z);
  return AB.re * cos(2.0 * s.phi) - AB.im * sin(2.0 * s.phi);
}

/// The explicit N = 3 integral, evaluated literally:
///   [(p_r^2 - p_phi^2/r^2) + gamma (r^3 p_r^3 - 2 r p_r p_phi^2)] cos 2phi
/// - [2 p_r p_phi / r + gamma (2 r^2 p_r^2 p_phi - p_phi^3)] sin 2phi.
template <class S>
S c3_explicit(const PolarStateT<S>& s, double gamma) {
  using std::sin;
  using std::cos;
  const S r = s.r, pr = s.p_r, pp = s.p_phi;
  const S ca = pr * pr - pp * pp / (r * r) + gamma * (r * r * r * pr * pr * pr - 2.0 * r * pr * pp * pp);
  const S sa = 2.0 * pr * pp / r + gamma * (2.0 * r * r * pr * pr * pp - pp * pp * pp);
  return ca * cos(2.0 * s.phi) - sa * sin(2.0 * s.phi);
}

using PlaneBasis = std::pair<VecX<double>, VecX<double>>;

/// Orthonormal basis of span{q, p} by Gram-Schmidt; CollinearState when
/// L^2 <= 1e-18, OriginSingularity when |q| <= 1e-9.
PlaneBasis plane_basis(const CartesianState& s);

/// C_1 of the state projected onto a 2-plane; `basis` defaults to the plane
/// spanned by the state itself. With a basis fixed at t = 0 the value is
/// conserved along trajectories in any dimension.
template <class S>
S eval_plane_c1(const CartesianStateT<S>& s, const std::optional<PlaneBasis>& basis = {}) {
  PlaneBasis b;
  if (basis) {
    b = *basis;
  } else {
    CartesianState sd;
    sd.q.resize(s.dim());
    sd.p.resize(s.dim());
    for (Eigen::Index i = 0; i < s.dim(); ++i) {
      sd.q[i] = value_of(s.q[i]);
      sd.p[i] = value_of(s.p[i]);
    }
    b = plane_basis(sd);
  }
  if (b.first.size() != s.dim()) throw DomainError("plane basis dimension mismatch");
  CartesianStateT<S> proj;
  proj.q.resize(2);
  proj.p.resize(2);
  proj.q[0] = S(0.0);
  proj.q[1] = S(0.0);
  proj.p[0] = S(0.0);
  proj.p[1] = S(0.0);
  for (Eigen::Index i = 0; i < s.dim(); ++i) {
    proj.q[0] += s.q[i] * b.first[i];
    proj.q[1] += s.q[i] * b.second[i];
    proj.p[0] += s.p[i] * b.first[i];
    proj.p[1] += s.p[i] * b.second[i];
  }
  return eval_c1(proj);
}

// --- IntegralSpec ------------------------------------------------------------

/// Which conserved quantity to evaluate; mirrors the CLI config schema.
struct IntegralSpec {
  enum class Kind {
    Energy,
    AngularMomentum,       // components i < j (1-based)
    AngularMomentumTotal,  // L^2
    Cn,                    // parameter n
    KAnalytic,             // axis 1|2
    CTildeEven,            // k, gamma
    CTildeOdd,             // k, gamma
    Zernike,               // gamma1, gamma2
    C3Explicit,            // gamma
    PlaneC1,
  };
  Kind kind = Kind::Energy;
  int n = 1;
  int k = 0;
  int i = 1, j = 2;
  int axis = 2;
  BigRational gamma, gamma1, gamma2;

  std::string name() const;
};

/// Binds an IntegralSpec to evaluators; throws SpecMismatch when the spec's
/// construction does not match f (kinds CTilde*, Zernike, C3Explicit).
Observable make_observable(const IntegralSpec& spec, const FSpec& f);

/// Numeric evaluation of a constructed integral at a polar state (n = 2 path).
double eval_construction(const PolarState& s, const IntegralSpec& spec, const FSpec& f);

}  // namespace qpflow
