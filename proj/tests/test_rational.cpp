#include <doctest.h>

#include <random>

#include "qpflow/errors.hpp"
#include "qpflow/rational.hpp"

using qpflow::BigInt;
using qpflow::BigRational;
using qpflow::GaussianRational;

TEST_CASE("BigInt arithmetic basics") {
  CHECK(BigInt(0).str() == "0");
  CHECK(BigInt(-17).str() == "-17");
  CHECK((BigInt(1000000007) * BigInt(998244353)).str() == "998244359987710471");
  CHECK((BigInt(-5) + BigInt(3)).str() == "-2");
  CHECK((BigInt(1) - BigInt(1)).is_zero());
  CHECK(BigInt::from_string("-123456789012345678901234567890").str() ==
        "-123456789012345678901234567890");
}

TEST_CASE("BigInt multiplication and division agree with 64-bit reference") {
  std::mt19937_64 rng(12345);
  for (int it = 0; it < 2000; ++it) {
    const long long a = (long long)(rng() % 2000000000ull) - 1000000000ll;
    long long b = (long long)(rng() % 2000000000ull) - 1000000000ll;
    if (b == 0) b = 7;
    CHECK((BigInt(a) * BigInt(b)).str() == std::to_string(a * b));
    BigInt q, r;
    BigInt::divmod(BigInt(a), BigInt(b), q, r);
    CHECK(q.str() == std::to_string(a / b));
    CHECK(r.str() == std::to_string(a % b));
  }
}

TEST_CASE("BigInt multi-limb divmod reconstructs the dividend") {
  std::mt19937_64 rng(99);
  auto random_big = [&](int limbs) {
    BigInt out(0);
    for (int i = 0; i < limbs; ++i)
      out = out * BigInt(1ll << 32) + BigInt((long long)(rng() & 0xffffffffull));
    return out;
  };
  for (int it = 0; it < 300; ++it) {
    BigInt a = random_big(1 + int(rng() % 6));
    BigInt b = random_big(1 + int(rng() % 4));
    if (b.is_zero()) continue;
    if (rng() & 1) a = -a;
    if (rng() & 1) b = -b;
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    CHECK(q * b + r == a);
    CHECK(r.abs() < b.abs());
  }
}

TEST_CASE("BigInt gcd") {
  CHECK(BigInt::gcd(BigInt(12), BigInt(18)).str() == "6");
  CHECK(BigInt::gcd(BigInt(-12), BigInt(18)).str() == "6");
  CHECK(BigInt::gcd(BigInt(0), BigInt(5)).str() == "5");
  const BigInt a = BigInt::from_string("123456789123456789") * BigInt(77);
  const BigInt b = BigInt::from_string("123456789123456789") * BigInt(21);
  CHECK(BigInt::gcd(a, b).str() == (BigInt::from_string("123456789123456789") * BigInt(7)).str());
}

TEST_CASE("BigRational is always reduced with positive denominator") {
  CHECK(BigRational(6, -4).str() == "-3/2");
  CHECK(BigRational(0, 7).str() == "0");
  CHECK((BigRational(1, 3) + BigRational(1, 6)).str() == "1/2");
  CHECK((BigRational(2, 3) * BigRational(9, 4)).str() == "3/2");
  CHECK((BigRational(1, 3) - BigRational(1, 3)).is_zero());
  CHECK((BigRational(7, 2) / BigRational(7, 2)).str() == "1");
  CHECK_THROWS_AS(BigRational(1, 0), qpflow::DomainError);
  CHECK_THROWS_AS(BigRational(1, 2) / BigRational(0), qpflow::DomainError);
}

TEST_CASE("BigRational parsing") {
  CHECK(BigRational::from_string("-3/2").str() == "-3/2");
  CHECK(BigRational::from_string("7").str() == "7");
  CHECK(BigRational::from_string("0.25").str() == "1/4");
  CHECK(BigRational::from_string("2e-3").str() == "1/500");
  CHECK(BigRational::from_string("-1.5e2").str() == "-150");
  CHECK_THROWS_AS(BigRational::from_string("abc"), qpflow::DomainError);
}

TEST_CASE("BigRational field laws on random values") {
  std::mt19937_64 rng(7);
  auto rand_rat = [&]() {
    long long n = (long long)(rng() % 2001) - 1000;
    long long d = 1 + (long long)(rng() % 999);
    return BigRational(n, d);
  };
  for (int it = 0; it < 500; ++it) {
    const BigRational a = rand_rat(), b = rand_rat(), c = rand_rat();
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    if (!a.is_zero()) CHECK(a * a.inv() == BigRational(1));
  }
}

TEST_CASE("BigRational pow and to_double") {
  CHECK(BigRational(1, 2).pow(10).str() == "1/1024");
  CHECK(BigRational(-3, 2).pow(3).str() == "-27/8");
  CHECK(BigRational(2).pow(-2).str() == "1/4");
  CHECK(BigRational(3, 4).to_double() == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("GaussianRational conjugation is an involution and multiplicative") {
  const GaussianRational a(BigRational(3, 2), BigRational(-1, 3));
  const GaussianRational b(BigRational(-2), BigRational(5, 7));
  CHECK(a.conj().conj() == a);
  CHECK((a * b).conj() == a.conj() * b.conj());
  CHECK((GaussianRational::i_unit() * GaussianRational::i_unit()) == GaussianRational(-1));
  CHECK((a * b) == (b * a));
}
