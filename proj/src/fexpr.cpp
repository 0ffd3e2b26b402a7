#include "qpflow/fexpr.hpp"

#include <cctype>
#include <cmath>
#include <optional>

namespace qpflow {

namespace {

struct Token {
  enum class Kind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End } kind;
  size_t offset;
  std::string text;  // Number / Ident payload
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    tok_.offset = pos_;
    if (pos_ >= src_.size()) {
      tok_.kind = Token::Kind::End;
      return;
    }
    char c = src_[pos_];
    switch (c) {
      case '+': tok_ = {Token::Kind::Plus, pos_++, "+"}; return;
      case '-': tok_ = {Token::Kind::Minus, pos_++, "-"}; return;
      case '*': tok_ = {Token::Kind::Star, pos_++, "*"}; return;
      case '/': tok_ = {Token::Kind::Slash, pos_++, "/"}; return;
      case '^': tok_ = {Token::Kind::Caret, pos_++, "^"}; return;
      case '(': tok_ = {Token::Kind::LParen, pos_++, "("}; return;
      case ')': tok_ = {Token::Kind::RParen, pos_++, ")"}; return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
        ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
        size_t mark = pos_++;
        if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
        if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        } else {
          pos_ = mark;  // 'e' belongs to something else; not an exponent
        }
      }
      tok_ = {Token::Kind::Number, start, std::string(src_.substr(start, pos_ - start))};
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      tok_ = {Token::Kind::Ident, start, std::string(src_.substr(start, pos_ - start))};
      return;
    }
    throw ParseError(pos_, std::string("unexpected character '") + c + "'");
  }

  std::string_view src_;
  size_t pos_ = 0;
  Token tok_;
};

using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr make_node(ExprNode n) { return std::make_shared<const ExprNode>(std::move(n)); }

NodePtr make_binary(ExprNode::Op op, NodePtr a, NodePtr b) {
  ExprNode n;
  n.op = op;
  n.a = std::move(a);
  n.b = std::move(b);
  return make_node(std::move(n));
}

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) {}

  NodePtr parse() {
    NodePtr e = expr();
    if (lex_.peek().kind != Token::Kind::End)
      throw ParseError(lex_.peek().offset, "trailing input");
    return e;
  }

 private:
  NodePtr expr() {
    NodePtr lhs = term();
    while (true) {
      auto k = lex_.peek().kind;
      if (k == Token::Kind::Plus) {
        lex_.take();
        lhs = make_binary(ExprNode::Op::Add, lhs, term());
      } else if (k == Token::Kind::Minus) {
        lex_.take();
        lhs = make_binary(ExprNode::Op::Sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    while (true) {
      auto k = lex_.peek().kind;
      if (k == Token::Kind::Star) {
        lex_.take();
        lhs = make_binary(ExprNode::Op::Mul, lhs, factor());
      } else if (k == Token::Kind::Slash) {
        lex_.take();
        lhs = make_binary(ExprNode::Op::Div, lhs, factor());
      } else {
        return lhs;
      }
    }
  }

  NodePtr factor() {
    if (lex_.peek().kind == Token::Kind::Minus) {
      lex_.take();
      ExprNode n;
      n.op = ExprNode::Op::Neg;
      n.a = factor();
      return make_node(std::move(n));
    }
    if (lex_.peek().kind == Token::Kind::Plus) {
      lex_.take();
      return factor();
    }
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    if (lex_.peek().kind == Token::Kind::Caret) {
      lex_.take();
      Token t = lex_.peek();
      if (t.kind != Token::Kind::Number || t.text.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError(t.offset, "exponent must be an integer literal");
      lex_.take();
      if (t.text.size() > 4) throw ParseError(t.offset, "exponent too large");
      ExprNode n;
      n.op = ExprNode::Op::Pow;
      n.ipow = std::stoi(t.text);
      n.a = std::move(base);
      return make_node(std::move(n));
    }
    return base;
  }

  NodePtr atom() {
    Token t = lex_.take();
    switch (t.kind) {
      case Token::Kind::Number: {
        ExprNode n;
        n.op = ExprNode::Op::Const;
        try {
          n.lit = BigRational::from_string(t.text);
        } catch (const DomainError& e) {
          throw ParseError(t.offset, e.what());
        }
        return make_node(std::move(n));
      }
      case Token::Kind::Ident: {
        if (t.text == "s") {
          ExprNode n;
          n.op = ExprNode::Op::Var;
          return make_node(std::move(n));
        }
        FuncId fn;
        if (t.text == "exp") fn = FuncId::Exp;
        else if (t.text == "sin") fn = FuncId::Sin;
        else if (t.text == "cos") fn = FuncId::Cos;
        else if (t.text == "sinh") fn = FuncId::Sinh;
        else if (t.text == "cosh") fn = FuncId::Cosh;
        else throw UnsupportedFunction(t.offset, t.text);
        if (lex_.peek().kind != Token::Kind::LParen)
          throw ParseError(lex_.peek().offset, "expected '(' after function name");
        lex_.take();
        ExprNode n;
        n.op = ExprNode::Op::Call;
        n.fn = fn;
        n.a = expr();
        if (lex_.peek().kind != Token::Kind::RParen)
          throw ParseError(lex_.peek().offset, "expected ')'");
        lex_.take();
        return make_node(std::move(n));
      }
      case Token::Kind::LParen: {
        NodePtr e = expr();
        if (lex_.peek().kind != Token::Kind::RParen)
          throw ParseError(lex_.peek().offset, "expected ')'");
        lex_.take();
        return e;
      }
      default:
        throw ParseError(t.offset, "expected number, 's', function, or '('");
    }
  }

  Lexer lex_;
};

// Structural fold to exact polynomial coefficients c_0..c_N, when the AST is
// polynomial in s (division only by nonzero constants). Degree capped to keep
// pathological inputs from exploding.
constexpr size_t kMaxPolyDegree = 4096;

std::optional<std::vector<BigRational>> as_poly(const ExprNode& n) {
  using Coeffs = std::vector<BigRational>;
  auto trim = [](Coeffs& c) {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
  };
  switch (n.op) {
    case ExprNode::Op::Const:
      return n.lit.is_zero() ? Coeffs{} : Coeffs{n.lit};
    case ExprNode::Op::Var:
      return Coeffs{BigRational(0), BigRational(1)};
    case ExprNode::Op::Add:
    case ExprNode::Op::Sub: {
      auto a = as_poly(*n.a), b = as_poly(*n.b);
      if (!a || !b) return std::nullopt;
      Coeffs out = *a;
      out.resize(std::max(a->size(), b->size()), BigRational(0));
      for (size_t i = 0; i < b->size(); ++i)
        out[i] = n.op == ExprNode::Op::Add ? out[i] + (*b)[i] : out[i] - (*b)[i];
      trim(out);
      return out;
    }
    case ExprNode::Op::Mul: {
      auto a = as_poly(*n.a), b = as_poly(*n.b);
      if (!a || !b) return std::nullopt;
      if (a->empty() || b->empty()) return Coeffs{};
      if (a->size() + b->size() - 2 > kMaxPolyDegree) return std::nullopt;
      Coeffs out(a->size() + b->size() - 1, BigRational(0));
      for (size_t i = 0; i < a->size(); ++i)
        for (size_t j = 0; j < b->size(); ++j) out[i + j] += (*a)[i] * (*b)[j];
      trim(out);
      return out;
    }
    case ExprNode::Op::Div: {
      auto a = as_poly(*n.a), b = as_poly(*n.b);
      if (!a || !b || b->size() != 1) return std::nullopt;
      Coeffs out = *a;
      for (auto& c : out) c = c / (*b)[0];
      return out;
    }
    case ExprNode::Op::Neg: {
      auto a = as_poly(*n.a);
      if (!a) return std::nullopt;
      for (auto& c : *a) c = -c;
      return a;
    }
    case ExprNode::Op::Pow: {
      auto a = as_poly(*n.a);
      if (!a) return std::nullopt;
      if (!a->empty() && (a->size() - 1) * size_t(n.ipow) > kMaxPolyDegree) return std::nullopt;
      Coeffs out{BigRational(1)};
      for (int k = 0; k < n.ipow; ++k) {
        if (a->empty()) return n.ipow == 0 ? out : Coeffs{};
        Coeffs next(out.size() + a->size() - 1, BigRational(0));
        for (size_t i = 0; i < out.size(); ++i)
          for (size_t j = 0; j < a->size(); ++j) next[i + j] += out[i] * (*a)[j];
        out = std::move(next);
      }
      trim(out);
      return out;
    }
    case ExprNode::Op::Call:
      return std::nullopt;
  }
  return std::nullopt;
}

std::string poly_text(const std::vector<BigRational>& gammas) {
  if (gammas.empty()) return "0";
  std::string out;
  for (size_t i = 0; i < gammas.size(); ++i) {
    if (gammas[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + gammas[i].str() + ")*s";
    if (i > 0) out += "^" + std::to_string(i + 1);
  }
  return out.empty() ? "0" : out;
}

}  // namespace

FSpec FSpec::poly(std::vector<BigRational> gammas) {
  while (!gammas.empty() && gammas.back().is_zero()) gammas.pop_back();
  FSpec f;
  f.gammas_ = std::move(gammas);
  f.text_ = poly_text(f.gammas_);
  return f;
}

FSpec FSpec::parse(std::string_view text) {
  if (text.empty()) throw ParseError(0, "empty input");
  Parser p(text);
  NodePtr root = p.parse();

  if (auto coeffs = as_poly(*root)) {
    if (coeffs->empty() || (*coeffs)[0].is_zero()) {
      std::vector<BigRational> gammas(coeffs->empty() ? 0 : coeffs->size() - 1);
      for (size_t i = 1; i < coeffs->size(); ++i) gammas[i - 1] = (*coeffs)[i];
      return poly(std::move(gammas));
    }
    // Nonzero constant term: stays an Expr (Poly stores gamma_1.. only).
  }

  FSpec f;
  f.root_ = std::move(root);
  f.text_ = std::string(text);
  if (!std::isfinite(f(0.0)))
    throw ParseError(0, "expression is not finite at s = 0");
  return f;
}

std::pair<std::complex<double>, std::complex<double>> eval_AB(const FSpec& f,
                                                              std::complex<double> w) {
  constexpr double kLimitEps = 1e-12;
  if (std::abs(w) <= kLimitEps) {
    const double f0 = f(0.0), f1 = f_prime(f, 0.0), f2 = f_second(f, 0.0);
    return {std::complex<double>(f0) + w * (f2 / 2.0), std::complex<double>(f1)};
  }
  const std::complex<double> x = std::sqrt(w);
  const std::complex<double> fp = f(x), fm = f(-x);
  return {(fp + fm) * 0.5, (fp - fm) / (2.0 * x)};
}

void divided_diff_AB(const FSpec& f, double u, double v, double& DA, double& DB) {
  const double scale = std::max({1.0, std::abs(u), std::abs(v)});
  if (std::abs(u - v) <= 1e-8 * scale) {
    // Exact derivative at the midpoint through a dual argument.
    const double m = 0.5 * (u + v);
    Dual<double> A, B;
    eval_AB_real(f, Dual<double>::variable(m), A, B);
    DA = A.d;
    DB = B.d;
    return;
  }
  double Au, Bu, Av, Bv;
  eval_AB_real(f, u, Au, Bu);
  eval_AB_real(f, v, Av, Bv);
  DA = (Au - Av) / (u - v);
  DB = (Bu - Bv) / (u - v);
}

}  // namespace qpflow
