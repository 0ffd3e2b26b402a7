#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qpflow {

/// Arbitrary-precision signed integer; sign-magnitude over base-2^32 limbs.
class BigInt {
 public:
  BigInt() = default;
  BigInt(long long v);  // NOLINT: implicit by design

  static BigInt from_string(std::string_view text);  // decimal, optional sign

  bool is_zero() const { return sign_ == 0; }
  int sign() const { return sign_; }
  BigInt abs() const;
  bool is_odd() const { return sign_ != 0 && (mag_[0] & 1u); }

  BigInt operator-() const;
  friend BigInt operator+(const BigInt& a, const BigInt& b);
  friend BigInt operator-(const BigInt& a, const BigInt& b);
  friend BigInt operator*(const BigInt& a, const BigInt& b);
  /// Truncated division (quotient toward zero) with matching remainder.
  static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
  friend BigInt operator/(const BigInt& a, const BigInt& b);
  friend BigInt operator%(const BigInt& a, const BigInt& b);

  friend bool operator==(const BigInt& a, const BigInt& b);
  friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }
  friend bool operator<(const BigInt& a, const BigInt& b);
  friend bool operator>(const BigInt& a, const BigInt& b) { return b < a; }
  friend bool operator<=(const BigInt& a, const BigInt& b) { return !(b < a); }
  friend bool operator>=(const BigInt& a, const BigInt& b) { return !(a < b); }

  std::string str() const;
  double to_double() const;
  bool fits_i64() const;
  long long as_i64() const;  // valid only when fits_i64()

  static BigInt gcd(BigInt a, BigInt b);

 private:
  int sign_ = 0;                   // -1, 0, +1
  std::vector<uint32_t> mag_;      // little-endian, no leading zero limbs

  void trim();
  static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
  static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
  static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);  // a >= b
  static std::vector<uint32_t> mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
  static void divmod_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                         std::vector<uint32_t>& q, std::vector<uint32_t>& r);
};

/// Exact rational; always reduced, denominator positive.
class BigRational {
 public:
  BigRational() : num_(0), den_(1) {}
  BigRational(long long v) : num_(v), den_(1) {}  // NOLINT: implicit by design
  BigRational(long long n, long long d);
  BigRational(BigInt n, BigInt d);

  /// Accepts "a/b", integers, and exact decimal/scientific literals
  /// ("-3/2", "7", "0.25", "2e-3").
  static BigRational from_string(std::string_view text);

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  int sign() const { return num_.sign(); }

  BigRational operator-() const;
  friend BigRational operator+(const BigRational& a, const BigRational& b);
  friend BigRational operator-(const BigRational& a, const BigRational& b);
  friend BigRational operator*(const BigRational& a, const BigRational& b);
  friend BigRational operator/(const BigRational& a, const BigRational& b);  // DomainError on /0
  BigRational& operator+=(const BigRational& o) { return *this = *this + o; }
  BigRational& operator-=(const BigRational& o) { return *this = *this - o; }
  BigRational& operator*=(const BigRational& o) { return *this = *this * o; }
  BigRational& operator/=(const BigRational& o) { return *this = *this / o; }

  friend bool operator==(const BigRational& a, const BigRational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const BigRational& a, const BigRational& b) { return !(a == b); }
  friend bool operator<(const BigRational& a, const BigRational& b);

  BigRational pow(int e) const;  // integer exponent, negative allowed (DomainError on 0^-n)
  BigRational inv() const;

  std::string str() const;  // "n" or "n/d"
  double to_double() const;

 private:
  BigInt num_, den_;
  void normalize();
};

/// Exact element of Q(i); conjugation is an involution.
struct GaussianRational {
  BigRational re, im;

  GaussianRational() = default;
  GaussianRational(BigRational r) : re(std::move(r)) {}  // NOLINT: implicit by design
  GaussianRational(BigRational r, BigRational i) : re(std::move(r)), im(std::move(i)) {}
  GaussianRational(long long r) : re(r) {}  // NOLINT: implicit by design

  static GaussianRational i_unit() { return {BigRational(0), BigRational(1)}; }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_real() const { return im.is_zero(); }
  GaussianRational conj() const { return {re, -im}; }

  GaussianRational operator-() const { return {-re, -im}; }
  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
  GaussianRational& operator-=(const GaussianRational& o) { return *this = *this - o; }
  GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

  std::string str() const;
};

}  // namespace qpflow
