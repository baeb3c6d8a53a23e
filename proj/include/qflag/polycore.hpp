#pragma once

// Exact arithmetic substrate: big integers and rationals (GMP), dense integer
// polynomials and truncated power series.

#include <compare>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace qflag {

using BigInt = mpz_class;

/// Exact rational, always stored in lowest terms with a positive denominator.
class Rational {
public:
  Rational() = default;
  Rational(const BigInt& numerator, const BigInt& denominator = 1);
  explicit Rational(const mpq_class& value);
  template <std::integral T>
  Rational(T value) : Rational(BigInt(value)) {}

  BigInt numerator() const { return value_.get_num(); }
  BigInt denominator() const { return value_.get_den(); }
  bool is_integer() const { return value_.get_den() == 1; }
  const mpq_class& value() const { return value_; }

  /// Greatest integer not exceeding the value.
  BigInt floor() const;
  /// "p" when integral, otherwise "p/q".
  std::string to_string() const;

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.value_ + b.value_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.value_ - b.value_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.value_ * b.value_)); }
  friend Rational operator/(const Rational& a, const Rational& b);
  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

private:
  mpq_class value_{0};
};

/// Dense univariate polynomial over Z. Index i of coeffs() is the coefficient
/// of x^i; the leading stored coefficient is never zero, so the zero
/// polynomial has no coefficients at all.
class IntPoly {
public:
  /// degree() of the zero polynomial.
  static constexpr std::int64_t kZeroDegree = std::numeric_limits<std::int64_t>::min();

  IntPoly() = default;
  explicit IntPoly(std::vector<BigInt> coeffs);
  IntPoly(std::initializer_list<long> coeffs);

  static IntPoly constant(const BigInt& c);
  static IntPoly monomial(const BigInt& c, std::size_t power);

  bool is_zero() const { return coeffs_.empty(); }
  std::int64_t degree() const;
  /// Coefficient of x^i, zero beyond the stored range.
  BigInt coeff(std::size_t i) const;
  const std::vector<BigInt>& coeffs() const { return coeffs_; }

  std::string to_string() const;

  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.coeffs_ == b.coeffs_; }

private:
  void normalize();
  std::vector<BigInt> coeffs_;
};

IntPoly poly_add(const IntPoly& a, const IntPoly& b);
IntPoly poly_sub(const IntPoly& a, const IntPoly& b);
IntPoly poly_mul(const IntPoly& a, const IntPoly& b);
/// x^k * p
IntPoly poly_shift(const IntPoly& p, std::size_t k);
/// x^D * p(1/x). Requires D >= deg p.
IntPoly poly_reverse(const IntPoly& p, std::size_t degree_bound);
BigInt eval_at_integer(const IntPoly& p, const BigInt& x);
/// Quotient of an exact division over Z. Throws ValidationError for a zero
/// divisor or when the division leaves a remainder.
IntPoly poly_exact_divide(const IntPoly& numerator, const IntPoly& divisor);

inline IntPoly operator+(const IntPoly& a, const IntPoly& b) { return poly_add(a, b); }
inline IntPoly operator-(const IntPoly& a, const IntPoly& b) { return poly_sub(a, b); }
inline IntPoly operator*(const IntPoly& a, const IntPoly& b) { return poly_mul(a, b); }

/// Power series t^0..t^N with an explicit truncation order N.
class TruncatedSeries {
public:
  explicit TruncatedSeries(std::size_t order);
  static TruncatedSeries one(std::size_t order);
  static TruncatedSeries from_poly(const IntPoly& p, std::size_t order);

  std::size_t order() const { return coeffs_.size() - 1; }
  const std::vector<BigInt>& coeffs() const { return coeffs_; }
  /// Coefficient of t^m; zero for m < 0 or m > order().
  BigInt coeff(std::int64_t m) const;
  void set_coeff(std::size_t m, const BigInt& value);

  /// Multiply in place by (1 - t^w).
  void multiply_one_minus(std::size_t w);
  /// Divide in place by (1 - t^w), i.e. a cumulative sum with stride w.
  void divide_one_minus(std::size_t w);
  TruncatedSeries truncated(std::size_t order) const;

  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) = default;

private:
  std::vector<BigInt> coeffs_;
};

/// prod_i 1/(1 - t^{w_i}) up to t^N. Every weight must be >= 1.
TruncatedSeries series_reciprocal_product(std::span<const long> weights, std::size_t order);

/// Product of two integer-coefficient sequences, as polynomials.
std::vector<BigInt> convolve(std::span<const BigInt> a, std::span<const BigInt> b);

inline BigInt to_big(std::uint64_t v) { return BigInt(static_cast<unsigned long>(v)); }

BigInt factorial(unsigned long n);
/// Ordinary binomial coefficient for 0 <= k <= n (zero otherwise).
BigInt binomial(unsigned long n, unsigned long k);

}  // namespace qflag
