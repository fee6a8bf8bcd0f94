#include <doctest.h>

#include <cmath>
#include <random>

#include "wpvol/rational.hpp"

using namespace wpvol;

TEST_CASE("rational formatting") {
  CHECK(to_string(BigRational(1, 8)) == "1/8");
  CHECK(to_string(BigRational(5)) == "5");
  CHECK(to_string(BigRational(0)) == "0");
  CHECK(to_string(make_rational(-6, 4)) == "-3/2");
  CHECK(to_string(make_rational(3, -6)) == "-1/2");
  CHECK_THROWS_AS(make_rational(1, 0), DomainError);
}

TEST_CASE("strict rational parsing") {
  CHECK(parse_rational("1/1152") == BigRational(1, 1152));
  CHECK(parse_rational("-7/3") == BigRational(-7, 3));
  CHECK(parse_rational("0") == 0);
  CHECK(parse_rational("61") == 61);

  for (const char* bad : {"2/4", "0/5", "+1", "01", "1/0", "1/-2", "1/02", "", "/3", "3/", "1.5", " 1", "-0", "a/b"})
    CHECK_THROWS_AS(parse_rational(bad), FormatError);
}

TEST_CASE("rational text round trip on random values") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    BigInteger num(static_cast<long>(rng() % 2000001) - 1000000);
    BigInteger den(static_cast<long>(rng() % 1000000) + 1);
    mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), rng() % 200);
    BigRational q = make_rational(num, den);
    CHECK(parse_rational(to_string(q)) == q);
  }
}

TEST_CASE("factorials") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(6) == 720);
  CHECK(double_factorial(-1) == 1);
  CHECK(double_factorial(0) == 1);
  CHECK(double_factorial(7) == 105);
  CHECK(double_factorial(8) == 384);
}

TEST_CASE("log of rationals far outside double range") {
  CHECK(log_rational(BigRational(1)) == 0.0);
  CHECK(log_rational(BigRational(1, 24)) == doctest::Approx(-std::log(24.0)).epsilon(1e-15));

  // 3 * 2^1000000 / 7^5: ln = ln(3) + 1e6 ln 2 - 5 ln 7
  BigInteger big = 3;
  mpz_mul_2exp(big.get_mpz_t(), big.get_mpz_t(), 1000000);
  BigRational q(big, 16807);
  const long double expected = std::log(3.0L) + 1000000.0L * std::log(2.0L) - 5.0L * std::log(7.0L);
  CHECK(std::fabs(log_rational(q) - static_cast<double>(expected)) / static_cast<double>(expected) < 1e-12);

  // both parts huge, ratio near 2
  BigInteger a = 1, b = 1;
  mpz_mul_2exp(a.get_mpz_t(), a.get_mpz_t(), 800001);
  mpz_mul_2exp(b.get_mpz_t(), b.get_mpz_t(), 800000);
  b += 1;
  CHECK(log_rational(BigRational(a, b)) == doctest::Approx(std::log(2.0)).epsilon(1e-14));

  CHECK_THROWS_AS(log_rational(BigRational(0)), DomainError);
  CHECK_THROWS_AS(log_rational(BigRational(-1, 2)), DomainError);
}
