#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace wpvol {

/// Exact rational value of every intersection number and bound.
/// GMP keeps mpq_class canonical after arithmetic; values built from a raw
/// numerator/denominator pair must go through make_rational().
using BigRational = mpq_class;
using BigInteger = mpz_class;

/// Precondition violations: unstable moduli points, excluded pairs,
/// non-positive hypotheses. Reported with exit code 2 by the CLI.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed text input (cache lines, rational literals).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

BigRational make_rational(const BigInteger& num, const BigInteger& den);

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const BigRational& q);

/// Strict parser for "<int>" or "<int>/<positive int>". Rejects leading '+',
/// leading zeros, whitespace, zero denominators and fractions not in lowest
/// terms.
BigRational parse_rational(std::string_view text);

BigInteger factorial(unsigned long n);

/// n!! with the convention (-1)!! = 0!! = 1.
BigInteger double_factorial(long n);

/// Natural logarithm of a positive rational, correctly handled for operands
/// far outside double range. Relative error well below 1e-12.
double log_rational(const BigRational& q);

/// Renders x with `digits` significant digits ("%.*g").
std::string format_float(double x, int digits);

}  // namespace wpvol
