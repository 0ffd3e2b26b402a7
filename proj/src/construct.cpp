#include "qpflow/construct.hpp"

#include <stdexcept>

namespace qpflow {

namespace {

ZPoly z_monomial(int e_z, int e_zbar, int e_r, GaussianRational c) {
  return ZPoly::monomial({e_z, e_zbar, e_r}, std::move(c));
}

// (z + zbar)^n and (z - zbar)^n by repeated multiplication.
ZPoly zsum_pow(int n, bool minus) {
  ZPoly base = z_monomial(1, 0, 0, GaussianRational(1));
  base.add_term({0, 1, 0}, minus ? GaussianRational(-1) : GaussianRational(1));
  ZPoly out = ZPoly::constant(GaussianRational(1));
  for (int k = 0; k < n; ++k) out *= base;
  return out;
}

// E = |z|^2 r^-2 + gamma c_E (z - zbar)^N for the monomial F = gamma s^N,
// with c_E = 1 / (2i)^N.
ZPoly energy_zpoly(int N, const BigRational& gamma) {
  ZPoly out = z_monomial(1, 1, -2, GaussianRational(1));
  // (2i)^-N = 2^-N i^-N; i^-N cycles through 1, -i, -1, i.
  BigRational pow2 = BigRational(1, 2).pow(N);
  GaussianRational c;
  switch (N % 4) {
    case 0: c = GaussianRational(pow2); break;
    case 1: c = GaussianRational(BigRational(0), -pow2); break;
    case 2: c = GaussianRational(-pow2); break;
    default: c = GaussianRational(BigRational(0), pow2); break;
  }
  out += zsum_pow(N, true).scaled(c * GaussianRational(gamma));
  return out;
}

// Converts a ZPoly known to represent a real function into a LaurentPoly;
// a surviving imaginary part is an implementation bug.
LaurentPoly realify(const ZPoly& zp) {
  LaurentPoly re, im;
  split_real_imag(substitute_z(zp), re, im);
  if (!im.is_zero())
    throw std::logic_error("realify: nonvanishing imaginary part: " + laurent_str(im));
  return re;
}

// Common tail of the odd/Zernike pipeline: W = G cos(chi) + i G sin(chi)
// must be divisible by z; then A + iB = i zbar (W / z) and
// C~ = A cos2phi - B sin2phi.
TrigPoly from_choice(const ZPoly& W) {
  ZPoly AB = z_monomial(0, 1, 0, GaussianRational::i_unit()) * div_exact_z(W);
  LaurentPoly A, B;
  split_real_imag(substitute_z(AB), A, B);
  return {{}, std::move(A), -B};
}

}  // namespace

TrigPoly construct_even(int k, const BigRational& gamma) {
  if (k < 1) throw DomainError("construct_even requires k >= 1");
  // G = |z|^2 r^-2 + gamma (-1)^k 2^-2k ((z - zbar)^2k - (z + zbar)^2k).
  ZPoly G = z_monomial(1, 1, -2, GaussianRational(1));
  BigRational coef = BigRational(1, 2).pow(2 * k) * gamma;
  if (k % 2 != 0) coef = -coef;
  G += (zsum_pow(2 * k, true) - zsum_pow(2 * k, false)).scaled(GaussianRational(coef));

  // C_1 = Im(z^2)/|z|^2 cos2phi - Re(z^2)/|z|^2 sin2phi, so
  //   uc part: G z^2 / (2i |z|^2) + conj, us part: -(G z^2 / (2 |z|^2) + conj).
  const ZPoly z2 = z_monomial(2, 0, 0, GaussianRational(1));
  const ZPoly zb2 = z_monomial(0, 2, 0, GaussianRational(1));
  const GaussianRational half(BigRational(1, 2));
  const GaussianRational half_over_i(BigRational(0), BigRational(-1, 2));  // 1/(2i)
  ZPoly Pc = div_exact_zzbar((G * (z2 - zb2)).scaled(half_over_i));
  ZPoly Ps = div_exact_zzbar((G * (z2 + zb2)).scaled(half));
  return {{}, realify(Pc), -realify(Ps)};
}

TrigPoly construct_odd(int k, const BigRational& gamma) {
  if (k < 0) throw DomainError("construct_odd requires k >= 0");
  const int N = 2 * k + 1;
  // G cos(chi) = (-1)^k gamma p_phi^N with p_phi = (z + zbar)/2.
  BigRational ccoef = BigRational(1, 2).pow(N) * gamma;
  if (k % 2 != 0) ccoef = -ccoef;
  ZPoly W = zsum_pow(N, false).scaled(GaussianRational(ccoef));
  // + i E with E in z, zbar, r variables.
  W += energy_zpoly(N, gamma).scaled(GaussianRational::i_unit());
  return from_choice(W);
}

TrigPoly construct_zernike(const BigRational& gamma1, const BigRational& gamma2) {
  if (gamma1.is_zero() && gamma2.is_zero())
    throw DegenerateChoice("Zernike construction with gamma1 = gamma2 = 0");
  // G cos(chi) = gamma1 (z + zbar)/2.
  ZPoly W = zsum_pow(1, false).scaled(GaussianRational(gamma1 * BigRational(1, 2)));
  // G sin(chi) = E + gamma2 p_phi^2
  //            = |z|^2 r^-2 + gamma1 (z - zbar)/(2i) - gamma2 (z - zbar)^2/4
  //              + gamma2 (z + zbar)^2/4.
  ZPoly S = z_monomial(1, 1, -2, GaussianRational(1));
  S += zsum_pow(1, true).scaled(GaussianRational(BigRational(0), -gamma1 * BigRational(1, 2)));
  const BigRational quarter(1, 4);
  S += zsum_pow(2, true).scaled(GaussianRational(-gamma2 * quarter));
  S += zsum_pow(2, false).scaled(GaussianRational(gamma2 * quarter));
  W += S.scaled(GaussianRational::i_unit());
  return from_choice(W);
}

TrigPoly construct_for_monomial(int N, const BigRational& gamma) {
  if (N < 1) throw DomainError("monomial degree must be >= 1");
  return N % 2 == 0 ? construct_even(N / 2, gamma) : construct_odd((N - 1) / 2, gamma);
}

}  // namespace qpflow
