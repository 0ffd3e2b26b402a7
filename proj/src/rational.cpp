#include "qpflow/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "qpflow/errors.hpp"

namespace qpflow {

namespace {
constexpr uint64_t kBase = uint64_t(1) << 32;
}

BigInt::BigInt(long long v) {
  if (v == 0) return;
  sign_ = v > 0 ? 1 : -1;
  // Avoid UB on LLONG_MIN by widening through unsigned.
  uint64_t m = v > 0 ? uint64_t(v) : uint64_t(0) - uint64_t(v);
  while (m != 0) {
    mag_.push_back(uint32_t(m & 0xffffffffu));
    m >>= 32;
  }
}

void BigInt::trim() {
  while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
  if (mag_.empty()) sign_ = 0;
}

int BigInt::cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

std::vector<uint32_t> BigInt::add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
  std::vector<uint32_t> out;
  out.reserve(std::max(a.size(), b.size()) + 1);
  uint64_t carry = 0;
  for (size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
    uint64_t s = carry;
    if (i < a.size()) s += a[i];
    if (i < b.size()) s += b[i];
    out.push_back(uint32_t(s & 0xffffffffu));
    carry = s >> 32;
  }
  if (carry) out.push_back(uint32_t(carry));
  return out;
}

std::vector<uint32_t> BigInt::sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
  std::vector<uint32_t> out;
  out.reserve(a.size());
  int64_t borrow = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    int64_t s = int64_t(a[i]) - borrow - (i < b.size() ? int64_t(b[i]) : 0);
    if (s < 0) {
      s += int64_t(kBase);
      borrow = 1;
    } else {
      borrow = 0;
    }
    out.push_back(uint32_t(s));
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

std::vector<uint32_t> BigInt::mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<uint32_t> out(a.size() + b.size(), 0);
  for (size_t i = 0; i < a.size(); ++i) {
    uint64_t carry = 0;
    for (size_t j = 0; j < b.size(); ++j) {
      uint64_t cur = uint64_t(out[i + j]) + uint64_t(a[i]) * uint64_t(b[j]) + carry;
      out[i + j] = uint32_t(cur & 0xffffffffu);
      carry = cur >> 32;
    }
    size_t k = i + b.size();
    while (carry) {
      uint64_t cur = uint64_t(out[k]) + carry;
      out[k] = uint32_t(cur & 0xffffffffu);
      carry = cur >> 32;
      ++k;
    }
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

// Knuth algorithm D on 32-bit limbs.
void BigInt::divmod_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                        std::vector<uint32_t>& q, std::vector<uint32_t>& r) {
  q.clear();
  r.clear();
  if (b.empty()) throw DomainError("division by zero");
  if (cmp_mag(a, b) < 0) {
    r = a;
    return;
  }
  if (b.size() == 1) {
    uint64_t d = b[0];
    q.assign(a.size(), 0);
    uint64_t rem = 0;
    for (size_t i = a.size(); i-- > 0;) {
      uint64_t cur = (rem << 32) | a[i];
      q[i] = uint32_t(cur / d);
      rem = cur % d;
    }
    while (!q.empty() && q.back() == 0) q.pop_back();
    if (rem) r.push_back(uint32_t(rem));
    return;
  }

  // Normalize so the divisor's top limb has its high bit set.
  int shift = 0;
  for (uint32_t top = b.back(); !(top & 0x80000000u); top <<= 1) ++shift;
  const size_t n = b.size(), m = a.size() - n;
  std::vector<uint32_t> u(a.size() + 1, 0), v(n, 0);
  for (size_t i = a.size(); i-- > 0;) {
    u[i + 1] |= shift ? uint32_t(uint64_t(a[i]) >> (32 - shift)) : 0;
    u[i] = a[i] << shift;
  }
  for (size_t i = n; i-- > 0;) {
    if (shift && i + 1 < n) v[i + 1] |= uint32_t(uint64_t(b[i]) >> (32 - shift));
    v[i] |= b[i] << shift;
  }

  q.assign(m + 1, 0);
  for (size_t j = m + 1; j-- > 0;) {
    uint64_t num = (uint64_t(u[j + n]) << 32) | u[j + n - 1];
    uint64_t qhat = num / v[n - 1];
    uint64_t rhat = num % v[n - 1];
    while (qhat >= kBase ||
           (n >= 2 && qhat * v[n - 2] > ((rhat << 32) | u[j + n - 2]))) {
      --qhat;
      rhat += v[n - 1];
      if (rhat >= kBase) break;
    }
    // Multiply-subtract qhat*v from u[j..j+n].
    int64_t borrow = 0;
    uint64_t carry = 0;
    for (size_t i = 0; i < n; ++i) {
      uint64_t prod = qhat * v[i] + carry;
      carry = prod >> 32;
      int64_t sub = int64_t(u[i + j]) - int64_t(prod & 0xffffffffu) - borrow;
      if (sub < 0) {
        sub += int64_t(kBase);
        borrow = 1;
      } else {
        borrow = 0;
      }
      u[i + j] = uint32_t(sub);
    }
    int64_t top = int64_t(u[j + n]) - int64_t(carry) - borrow;
    if (top < 0) {
      // qhat one too large; add back.
      top += int64_t(kBase);
      --qhat;
      uint64_t c = 0;
      for (size_t i = 0; i < n; ++i) {
        uint64_t s = uint64_t(u[i + j]) + v[i] + c;
        u[i + j] = uint32_t(s & 0xffffffffu);
        c = s >> 32;
      }
      top += int64_t(c);
      top &= int64_t(kBase - 1);
    }
    u[j + n] = uint32_t(top);
    q[j] = uint32_t(qhat);
  }
  while (!q.empty() && q.back() == 0) q.pop_back();

  r.assign(u.begin(), u.begin() + n);
  if (shift) {
    for (size_t i = 0; i < n; ++i) {
      r[i] >>= shift;
      if (i + 1 < n) r[i] |= u[i + 1] << (32 - shift);
    }
  }
  while (!r.empty() && r.back() == 0) r.pop_back();
}

BigInt BigInt::abs() const {
  BigInt out = *this;
  if (out.sign_ < 0) out.sign_ = 1;
  return out;
}

BigInt BigInt::operator-() const {
  BigInt out = *this;
  out.sign_ = -out.sign_;
  return out;
}

BigInt operator+(const BigInt& a, const BigInt& b) {
  if (a.sign_ == 0) return b;
  if (b.sign_ == 0) return a;
  BigInt out;
  if (a.sign_ == b.sign_) {
    out.sign_ = a.sign_;
    out.mag_ = BigInt::add_mag(a.mag_, b.mag_);
  } else {
    int c = BigInt::cmp_mag(a.mag_, b.mag_);
    if (c == 0) return BigInt();
    if (c > 0) {
      out.sign_ = a.sign_;
      out.mag_ = BigInt::sub_mag(a.mag_, b.mag_);
    } else {
      out.sign_ = b.sign_;
      out.mag_ = BigInt::sub_mag(b.mag_, a.mag_);
    }
  }
  return out;
}

BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

BigInt operator*(const BigInt& a, const BigInt& b) {
  if (a.sign_ == 0 || b.sign_ == 0) return BigInt();
  BigInt out;
  out.sign_ = a.sign_ * b.sign_;
  out.mag_ = BigInt::mul_mag(a.mag_, b.mag_);
  return out;
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
  std::vector<uint32_t> qm, rm;
  divmod_mag(a.mag_, b.mag_, qm, rm);
  q = BigInt();
  r = BigInt();
  q.mag_ = std::move(qm);
  r.mag_ = std::move(rm);
  q.sign_ = q.mag_.empty() ? 0 : a.sign_ * b.sign_;
  r.sign_ = r.mag_.empty() ? 0 : a.sign_;
}

BigInt operator/(const BigInt& a, const BigInt& b) {
  BigInt q, r;
  BigInt::divmod(a, b, q, r);
  return q;
}

BigInt operator%(const BigInt& a, const BigInt& b) {
  BigInt q, r;
  BigInt::divmod(a, b, q, r);
  return r;
}

bool operator==(const BigInt& a, const BigInt& b) {
  return a.sign_ == b.sign_ && a.mag_ == b.mag_;
}

bool operator<(const BigInt& a, const BigInt& b) {
  if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
  int c = BigInt::cmp_mag(a.mag_, b.mag_);
  return a.sign_ >= 0 ? c < 0 : c > 0;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
  a = a.abs();
  b = b.abs();
  while (!b.is_zero()) {
    BigInt r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.is_zero() ? BigInt(1) : a;
}

BigInt BigInt::from_string(std::string_view text) {
  size_t i = 0;
  int sign = 1;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    if (text[i] == '-') sign = -1;
    ++i;
  }
  if (i >= text.size()) throw DomainError("empty integer literal");
  BigInt out;
  const BigInt ten(10);
  for (; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') throw DomainError("bad digit in integer literal");
    out = out * ten + BigInt(text[i] - '0');
  }
  if (sign < 0) out = -out;
  return out;
}

std::string BigInt::str() const {
  if (sign_ == 0) return "0";
  std::vector<uint32_t> m = mag_;
  std::string digits;
  while (!m.empty()) {
    // Divide by 1e9 and emit the remainder.
    uint64_t rem = 0;
    for (size_t i = m.size(); i-- > 0;) {
      uint64_t cur = (rem << 32) | m[i];
      m[i] = uint32_t(cur / 1000000000u);
      rem = cur % 1000000000u;
    }
    while (!m.empty() && m.back() == 0) m.pop_back();
    for (int k = 0; k < 9; ++k) {
      digits.push_back(char('0' + rem % 10));
      rem /= 10;
    }
  }
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  std::string out;
  if (sign_ < 0) out.push_back('-');
  out.append(digits.rbegin(), digits.rend());
  return out;
}

double BigInt::to_double() const {
  double out = 0.0;
  for (size_t i = mag_.size(); i-- > 0;) out = out * 4294967296.0 + double(mag_[i]);
  return sign_ < 0 ? -out : out;
}

bool BigInt::fits_i64() const {
  if (mag_.size() > 2) return false;
  if (mag_.size() < 2) return true;
  uint64_t m = (uint64_t(mag_[1]) << 32) | mag_[0];
  return sign_ > 0 ? m <= uint64_t(INT64_MAX) : m <= uint64_t(INT64_MAX) + 1;
}

long long BigInt::as_i64() const {
  uint64_t m = 0;
  for (size_t i = mag_.size(); i-- > 0;) m = (m << 32) | mag_[i];
  return sign_ < 0 ? -(long long)(m) : (long long)(m);
}

// ---------------------------------------------------------------------------

BigRational::BigRational(long long n, long long d) : num_(n), den_(d) { normalize(); }

BigRational::BigRational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
  normalize();
}

void BigRational::normalize() {
  if (den_.is_zero()) throw DomainError("rational with zero denominator");
  if (num_.is_zero()) {
    den_ = BigInt(1);
    return;
  }
  if (den_.sign() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  BigInt g = BigInt::gcd(num_, den_);
  num_ = num_ / g;
  den_ = den_ / g;
}

BigRational BigRational::operator-() const {
  BigRational out = *this;
  out.num_ = -out.num_;
  return out;
}

BigRational operator+(const BigRational& a, const BigRational& b) {
  return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}

BigRational operator-(const BigRational& a, const BigRational& b) {
  return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
}

BigRational operator*(const BigRational& a, const BigRational& b) {
  return {a.num_ * b.num_, a.den_ * b.den_};
}

BigRational operator/(const BigRational& a, const BigRational& b) {
  if (b.is_zero()) throw DomainError("rational division by zero");
  return {a.num_ * b.den_, a.den_ * b.num_};
}

bool operator<(const BigRational& a, const BigRational& b) {
  return a.num_ * b.den_ < b.num_ * a.den_;
}

BigRational BigRational::inv() const {
  if (is_zero()) throw DomainError("inverse of zero");
  return {den_, num_};
}

BigRational BigRational::pow(int e) const {
  if (e == 0) return BigRational(1);
  if (e < 0) return inv().pow(-e);
  BigRational base = *this, out(1);
  for (int k = e; k > 0; k >>= 1) {
    if (k & 1) out *= base;
    if (k > 1) base *= base;
  }
  return out;
}

BigRational BigRational::from_string(std::string_view text) {
  // Strip surrounding whitespace.
  size_t b = text.find_first_not_of(" \t");
  size_t e = text.find_last_not_of(" \t");
  if (b == std::string_view::npos) throw DomainError("empty rational literal");
  text = text.substr(b, e - b + 1);

  if (size_t slash = text.find('/'); slash != std::string_view::npos) {
    BigInt n = BigInt::from_string(text.substr(0, slash));
    BigInt d = BigInt::from_string(text.substr(slash + 1));
    return {std::move(n), std::move(d)};
  }

  // Decimal / scientific literal, converted exactly.
  size_t i = 0;
  int sign = 1;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    if (text[i] == '-') sign = -1;
    ++i;
  }
  BigInt mantissa(0);
  long long exp10 = 0;
  bool any_digit = false, seen_dot = false;
  const BigInt ten(10);
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c >= '0' && c <= '9') {
      mantissa = mantissa * ten + BigInt(c - '0');
      if (seen_dot) --exp10;
      any_digit = true;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else if ((c == 'e' || c == 'E') && any_digit) {
      long long ev = 0, esign = 1;
      ++i;
      if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        if (text[i] == '-') esign = -1;
        ++i;
      }
      if (i >= text.size()) throw DomainError("empty exponent in rational literal");
      for (; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9') throw DomainError("bad exponent in rational literal");
        ev = ev * 10 + (text[i] - '0');
        if (ev > 4096) throw DomainError("exponent too large in rational literal");
      }
      exp10 += esign * ev;
      break;
    } else {
      throw DomainError("bad character in rational literal");
    }
  }
  if (!any_digit) throw DomainError("no digits in rational literal");
  BigInt num = sign < 0 ? -mantissa : mantissa;
  BigInt den(1);
  for (long long k = 0; k < std::llabs(exp10); ++k) {
    if (exp10 > 0)
      num = num * ten;
    else
      den = den * ten;
  }
  return {std::move(num), std::move(den)};
}

std::string BigRational::str() const {
  if (den_ == BigInt(1)) return num_.str();
  return num_.str() + "/" + den_.str();
}

double BigRational::to_double() const { return num_.to_double() / den_.to_double(); }

std::string GaussianRational::str() const {
  if (im.is_zero()) return re.str();
  if (re.is_zero()) return im.str() + "*i";
  return "(" + re.str() + (im.sign() > 0 ? "+" : "") + im.str() + "*i)";
}

}  // namespace qpflow
