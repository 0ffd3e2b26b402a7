#include "qpflow/laurent.hpp"

#include <algorithm>
#include <vector>

namespace qpflow {

namespace {

void append_var(std::string& out, const char* name, int e) {
  if (e == 0) return;
  out += "*";
  out += name;
  if (e != 1) out += "^" + std::to_string(e);
}

}  // namespace

std::string laurent_str(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [e, c] : p.terms()) {
    std::string term = c.den() == BigInt(1) ? c.num().str() : c.str();
    if (c.sign() >= 0 && !out.empty()) term = "+" + term;
    append_var(term, "r", e[0]);
    append_var(term, "pr", e[1]);
    append_var(term, "pphi", e[2]);
    if (!out.empty()) out += " ";
    out += term;
  }
  return out;
}

ZPoly zconj(const ZPoly& p) {
  ZPoly out;
  for (const auto& [e, c] : p.terms()) out.add_term({e[1], e[0], e[2]}, c.conj());
  return out;
}

ZPoly div_exact_z(const ZPoly& p) {
  ZPoly out;
  for (const auto& [e, c] : p.terms()) {
    if (e[0] < 1) throw DivisibilityFailure("ZPoly term without a factor of z");
    out.add_term({e[0] - 1, e[1], e[2]}, c);
  }
  return out;
}

ZPoly div_exact_zzbar(const ZPoly& p) {
  ZPoly out;
  for (const auto& [e, c] : p.terms()) {
    if (e[0] < 1 || e[1] < 1)
      throw DivisibilityFailure("ZPoly term without a factor of z zbar");
    out.add_term({e[0] - 1, e[1] - 1, e[2]}, c);
  }
  return out;
}

CLaurent substitute_z(const ZPoly& p) {
  // z = p_phi + i r p_r, zbar = p_phi - i r p_r over variables (r, p_r, p_phi).
  const GaussianRational one(1), iu = GaussianRational::i_unit();
  CLaurent zpoly, zbpoly;
  zpoly.add_term({0, 0, 1}, one);
  zpoly.add_term({1, 1, 0}, iu);
  zbpoly.add_term({0, 0, 1}, one);
  zbpoly.add_term({1, 1, 0}, -iu);

  int max_z = 0, max_zb = 0;
  for (const auto& [e, c] : p.terms()) {
    max_z = std::max(max_z, e[0]);
    max_zb = std::max(max_zb, e[1]);
  }
  std::vector<CLaurent> zpow(max_z + 1), zbpow(max_zb + 1);
  zpow[0] = CLaurent::constant(one);
  for (int k = 1; k <= max_z; ++k) zpow[k] = zpow[k - 1] * zpoly;
  zbpow[0] = CLaurent::constant(one);
  for (int k = 1; k <= max_zb; ++k) zbpow[k] = zbpow[k - 1] * zbpoly;

  CLaurent out;
  for (const auto& [e, c] : p.terms()) {
    CLaurent term = (zpow[e[0]] * zbpow[e[1]]).scaled(c);
    // r^{e_r} shift.
    CLaurent shifted;
    for (const auto& [te, tc] : term.terms()) shifted.add_term({te[0] + e[2], te[1], te[2]}, tc);
    out += shifted;
  }
  return out;
}

void split_real_imag(const CLaurent& p, LaurentPoly& re, LaurentPoly& im) {
  re = {};
  im = {};
  for (const auto& [e, c] : p.terms()) {
    re.add_term(e, c.re);
    im.add_term(e, c.im);
  }
}

}  // namespace qpflow
