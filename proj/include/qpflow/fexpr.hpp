#pragma once

#include <complex>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qpflow/dual.hpp"
#include "qpflow/errors.hpp"
#include "qpflow/rational.hpp"

namespace qpflow {

enum class FuncId { Exp, Sin, Cos, Sinh, Cosh };

/// Node of a parsed expression over +, -, *, /, ^, literals, the variable s,
/// and the entire-function whitelist.
struct ExprNode {
  enum class Op { Const, Var, Add, Sub, Mul, Div, Neg, Pow, Call } op;
  BigRational lit;      // Const
  int ipow = 0;         // Pow exponent
  FuncId fn = FuncId::Exp;  // Call
  std::shared_ptr<const ExprNode> a, b;
};

/// The analytic function F: either an exact polynomial sum_{n>=1} gamma_n s^n
/// or a parsed expression AST. Immutable after construction; evaluable at
/// real, complex, and dual arguments with identical semantics.
class FSpec {
 public:
  FSpec() = default;  // F == 0

  /// Parses text; polynomial expressions with zero constant term canonicalize
  /// to the exact-coefficient Poly form.
  static FSpec parse(std::string_view text);

  /// Polynomial from gamma_1..gamma_N (trailing zeros trimmed).
  static FSpec poly(std::vector<BigRational> gammas);

  bool is_poly() const { return !root_; }
  /// gamma_1..gamma_N; valid only for Poly.
  const std::vector<BigRational>& gammas() const { return gammas_; }
  /// Polynomial degree N; 0 for F == 0. Valid only for Poly.
  int degree() const { return int(gammas_.size()); }
  const std::string& text() const { return text_; }

  template <class S>
  S operator()(const S& x) const;

 private:
  std::vector<BigRational> gammas_;        // Poly form
  std::shared_ptr<const ExprNode> root_;   // Expr form (null for Poly)
  std::string text_;                       // source text (Expr) or printed poly
};

namespace detail {

template <class S>
S eval_node(const ExprNode& n, const S& x) {
  using std::exp; using std::sin; using std::cos; using std::sinh; using std::cosh;
  switch (n.op) {
    case ExprNode::Op::Const: return S(n.lit.to_double());
    case ExprNode::Op::Var: return x;
    case ExprNode::Op::Add: return eval_node(*n.a, x) + eval_node(*n.b, x);
    case ExprNode::Op::Sub: return eval_node(*n.a, x) - eval_node(*n.b, x);
    case ExprNode::Op::Mul: return eval_node(*n.a, x) * eval_node(*n.b, x);
    case ExprNode::Op::Div: return eval_node(*n.a, x) / eval_node(*n.b, x);
    case ExprNode::Op::Neg: return -eval_node(*n.a, x);
    case ExprNode::Op::Pow: {
      S base = eval_node(*n.a, x), out(1.0);
      for (int k = n.ipow; k > 0; k >>= 1) {
        if (k & 1) out = out * base;
        if (k > 1) base = base * base;
      }
      return out;
    }
    case ExprNode::Op::Call: {
      S v = eval_node(*n.a, x);
      switch (n.fn) {
        case FuncId::Exp: return exp(v);
        case FuncId::Sin: return sin(v);
        case FuncId::Cos: return cos(v);
        case FuncId::Sinh: return sinh(v);
        case FuncId::Cosh: return cosh(v);
      }
    }
  }
  return S(0.0);
}

}  // namespace detail

template <class S>
S FSpec::operator()(const S& x) const {
  if (root_) return detail::eval_node(*root_, x);
  // Horner on gamma_N..gamma_1, then one multiply by x (constant term is 0).
  S acc(0.0);
  for (size_t i = gammas_.size(); i-- > 0;) acc = acc * x + S(gammas_[i].to_double());
  return acc * x;
}

/// F(x) with derivative propagated from x.
template <class S>
Dual<S> eval_f(const FSpec& f, const Dual<S>& x) {
  return f(x);
}
inline double eval_f(const FSpec& f, double x) { return f(x); }
inline std::complex<double> eval_f(const FSpec& f, const std::complex<double>& x) {
  return f(x);
}

/// F'(x) by dual evaluation.
template <class S>
S f_prime(const FSpec& f, const S& x) {
  return f(Dual<S>::variable(x)).d;
}

/// Second derivative at x via nested duals.
inline double f_second(const FSpec& f, double x) {
  using DD = Dual<Dual<double>>;
  DD xx(Dual<double>(x, 1.0), Dual<double>(1.0, 0.0));
  return f(xx).d.d;
}

/// Even/odd split F(x) = A(x^2) + x B(x^2) evaluated at w = x^2 with
/// x the principal square root of w. Entire-function whitelist keeps both
/// components single-valued for any complex w.
std::pair<std::complex<double>, std::complex<double>> eval_AB(const FSpec& f,
                                                              std::complex<double> w);

namespace detail {

template <class S>
struct ComplexifyImpl;
template <>
struct ComplexifyImpl<double> {
  using type = std::complex<double>;
  static type lift(double x) { return {x, 0.0}; }
  static double re(const type& z) { return z.real(); }
};
template <>
struct ComplexifyImpl<Dual<double>> {
  using type = Dual<std::complex<double>>;
  static type lift(const Dual<double>& x) {
    return {std::complex<double>(x.v, 0.0), std::complex<double>(x.d, 0.0)};
  }
  static Dual<double> re(const type& z) { return {z.v.real(), z.d.real()}; }
};

template <class S>
typename ComplexifyImpl<S>::type principal_sqrt(const typename ComplexifyImpl<S>::type& w);

template <>
inline std::complex<double> principal_sqrt<double>(const std::complex<double>& w) {
  return std::sqrt(w);
}
template <>
inline Dual<std::complex<double>> principal_sqrt<Dual<double>>(
    const Dual<std::complex<double>>& w) {
  const std::complex<double> s = std::sqrt(w.v);
  return {s, w.d / (2.0 * s)};
}

}  // namespace detail

/// Real-argument even/odd split; w may be negative (forces F at imaginary
/// arguments internally). Outputs are real for real-analytic F. S is double
/// or Dual<double>. Near w = 0 the removable singularity of B is handled by
/// the limit B(0) = F'(0); similarly A(w) ~ F(0) + w F''(0)/2.
template <class S>
void eval_AB_real(const FSpec& f, const S& w, S& A, S& B) {
  using C = detail::ComplexifyImpl<S>;
  constexpr double kLimitEps = 1e-12;
  if (std::abs(value_of(w)) <= kLimitEps) {
    const double f0 = f(0.0);
    const double f1 = f_prime(f, 0.0);
    const double f2 = f_second(f, 0.0);
    A = S(f0) + w * S(f2 / 2.0);
    B = S(f1);
    return;
  }
  const auto wc = C::lift(w);
  const auto x = detail::principal_sqrt<S>(wc);
  const auto fp = f(x);
  const auto fm = f(-x);
  A = C::re((fp + fm) * 0.5);
  B = C::re((fp - fm) / (x * 2.0));
}

/// Divided differences of A and B between u and v:
/// DA = (A(u) - A(v)) / (u - v), DB likewise. At near-coincident arguments
/// (|u - v| <= 1e-8 max(1, |u|, |v|)) switches to the exact derivative at the
/// midpoint, evaluated through duals.
void divided_diff_AB(const FSpec& f, double u, double v, double& DA, double& DB);

/// Dual-argument divided differences; callers must keep |u - v| away from the
/// coincidence regime (guaranteed by the documented rejection predicates).
inline void divided_diff_AB(const FSpec& f, const Dual<double>& u, const Dual<double>& v,
                            Dual<double>& DA, Dual<double>& DB) {
  Dual<double> Au, Bu, Av, Bv;
  eval_AB_real(f, u, Au, Bu);
  eval_AB_real(f, v, Av, Bv);
  const Dual<double> duv = u - v;
  DA = (Au - Av) / duv;
  DB = (Bu - Bv) / duv;
}

}  // namespace qpflow
