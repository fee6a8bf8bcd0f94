#include "wpvol/rational.hpp"

#include <cstdio>
#include <vector>

#include <mpfr.h>

namespace wpvol {

BigRational make_rational(const BigInteger& num, const BigInteger& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  BigRational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const BigRational& q) { return q.get_str(10); }

namespace {

bool is_decimal_integer(std::string_view s, bool allow_sign) {
  if (allow_sign && !s.empty() && s.front() == '-') s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  // no leading zeros, except the literal "0"
  return s.size() == 1 || s.front() != '0';
}

}  // namespace

BigRational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  if (!is_decimal_integer(num, true) || num == "-0")
    throw FormatError("malformed rational numerator: '" + std::string(text) + "'");
  BigInteger n(std::string(num), 10);
  if (slash == std::string_view::npos) return BigRational(n);

  std::string_view den = text.substr(slash + 1);
  if (!is_decimal_integer(den, false))
    throw FormatError("malformed rational denominator: '" + std::string(text) + "'");
  BigInteger d(std::string(den), 10);
  if (d == 0) throw FormatError("zero denominator: '" + std::string(text) + "'");
  BigInteger g;
  mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  if (g != 1) throw FormatError("rational not in lowest terms: '" + std::string(text) + "'");
  return BigRational(n, d);
}

BigInteger factorial(unsigned long n) {
  BigInteger r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

BigInteger double_factorial(long n) {
  if (n < -1) throw DomainError("double factorial of " + std::to_string(n));
  if (n <= 0) return 1;
  BigInteger r;
  mpz_2fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

double log_rational(const BigRational& q) {
  if (sgn(q) <= 0) throw DomainError("logarithm of a non-positive rational");
  // mpfr_set_q rounds once, so 128 bits carry the answer to double precision
  // even when num and den each have millions of bits.
  mpfr_t x;
  mpfr_init2(x, 128);
  mpfr_set_q(x, q.get_mpq_t(), MPFR_RNDN);
  mpfr_log(x, x, MPFR_RNDN);
  double out = mpfr_get_d(x, MPFR_RNDN);
  mpfr_clear(x);
  return out;
}

std::string format_float(double x, int digits) {
  if (digits < 1) digits = 1;
  if (digits > 17) digits = 17;
  std::vector<char> buf(64);
  int len = std::snprintf(buf.data(), buf.size(), "%.*g", digits, x);
  return std::string(buf.data(), static_cast<size_t>(len));
}

}  // namespace wpvol
