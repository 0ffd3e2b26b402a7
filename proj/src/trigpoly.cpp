#include "qpflow/trigpoly.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

namespace qpflow {

TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
  if (!a.trig_free() && !b.trig_free())
    throw SpanViolation("product of two trig-carrying elements leaves the span");
  if (a.trig_free()) return {a.u0 * b.u0, a.u0 * b.uc, a.u0 * b.us};
  return {b.u0 * a.u0, b.u0 * a.uc, b.u0 * a.us};
}

namespace {

// Componentwise partials with respect to r, p_r, p_phi.
TrigPoly deriv(const TrigPoly& a, int var) {
  return {a.u0.derivative(var), a.uc.derivative(var), a.us.derivative(var)};
}

// d/dphi: u0 drops, (uc, us) -> (2 us, -2 uc).
TrigPoly deriv_phi(const TrigPoly& a) {
  const BigRational two(2);
  return {{}, a.us.scaled(two), a.uc.scaled(-two)};
}

}  // namespace

TrigPoly poisson_bracket(const TrigPoly& a, const TrigPoly& b) {
  if (!a.trig_free() && !b.trig_free())
    throw SpanViolation("poisson_bracket requires one trig-free argument");
  // {a,b} = a_r b_pr - a_pr b_r + a_phi b_pphi - a_pphi b_phi
  // with positions (r, phi) and momenta (p_r, p_phi).
  return deriv(a, 0) * deriv(b, 1) - deriv(a, 1) * deriv(b, 0) +
         deriv_phi(a) * deriv(b, 2) - deriv(a, 2) * deriv_phi(b);
}

TrigPoly h_symbolic(const FSpec& f) {
  if (!f.is_poly()) throw NotPolynomial("h_symbolic requires a polynomial F");
  LaurentPoly u0 = lp_monomial(0, 2, 0, BigRational(1)) + lp_monomial(-2, 0, 2, BigRational(1));
  const auto& gammas = f.gammas();
  for (size_t i = 0; i < gammas.size(); ++i) {
    const int n = int(i) + 1;
    u0 += lp_monomial(n, n, 0, gammas[i]);  // gamma_n (r p_r)^n
  }
  return trig_free(std::move(u0));
}

double eval(const TrigPoly& a, const PolarState& s) {
  const double base = eval_laurent(a.u0, s.r, s.p_r, s.p_phi);
  const double c = eval_laurent(a.uc, s.r, s.p_r, s.p_phi);
  const double n = eval_laurent(a.us, s.r, s.p_r, s.p_phi);
  return base + c * std::cos(2.0 * s.phi) + n * std::sin(2.0 * s.phi);
}

std::string pretty(const TrigPoly& a) {
  if (is_zero(a)) return "0";
  std::string out;
  auto emit = [&out](const LaurentPoly& p, const char* suffix) {
    if (p.is_zero()) return;
    if (!out.empty()) out += " + ";
    out += "(" + laurent_str(p) + ")";
    out += suffix;
  };
  emit(a.u0, "");
  emit(a.uc, "*cos(2phi)");
  emit(a.us, "*sin(2phi)");
  return out;
}

namespace {

nlohmann::json laurent_to_json(const LaurentPoly& p) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [e, c] : p.terms())
    out.push_back({e[0], e[1], e[2], c.num().str(), c.den().str()});
  return out;
}

}  // namespace

nlohmann::json trigpoly_to_json(const TrigPoly& a) {
  return {{"u0", laurent_to_json(a.u0)},
          {"uc", laurent_to_json(a.uc)},
          {"us", laurent_to_json(a.us)}};
}

}  // namespace qpflow
