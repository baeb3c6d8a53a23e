#include "qflag/polycore.hpp"

#include <algorithm>
#include <sstream>

#include "qflag/error.hpp"

namespace qflag {

// ---------------------------------------------------------------- Rational

Rational::Rational(const BigInt& numerator, const BigInt& denominator) {
  if (denominator == 0) throw ValidationError("rational with zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational::Rational(const mpq_class& value) : value_(value) { value_.canonicalize(); }

BigInt Rational::floor() const {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return q;
}

std::string Rational::to_string() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.value_ == 0) throw ValidationError("division by zero rational");
  return Rational(mpq_class(a.value_ / b.value_));
}

// ---------------------------------------------------------------- IntPoly

IntPoly::IntPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
  normalize();
}

IntPoly IntPoly::constant(const BigInt& c) { return IntPoly(std::vector<BigInt>{c}); }

IntPoly IntPoly::monomial(const BigInt& c, std::size_t power) {
  std::vector<BigInt> v(power + 1);
  v[power] = c;
  return IntPoly(std::move(v));
}

void IntPoly::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

std::int64_t IntPoly::degree() const {
  return coeffs_.empty() ? kZeroDegree : static_cast<std::int64_t>(coeffs_.size()) - 1;
}

BigInt IntPoly::coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigInt(0); }

std::string IntPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const BigInt& c = coeffs_[i];
    if (c == 0) continue;
    BigInt mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0 || mag != 1) out << mag.get_str();
    if (i >= 1) out << "x";
    if (i >= 2) out << "^" << i;
  }
  return out.str();
}

IntPoly poly_add(const IntPoly& a, const IntPoly& b) {
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  std::vector<BigInt> out(std::max(x.size(), y.size()));
  for (std::size_t i = 0; i < x.size(); ++i) out[i] += x[i];
  for (std::size_t i = 0; i < y.size(); ++i) out[i] += y[i];
  return IntPoly(std::move(out));
}

IntPoly poly_sub(const IntPoly& a, const IntPoly& b) {
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  std::vector<BigInt> out(std::max(x.size(), y.size()));
  for (std::size_t i = 0; i < x.size(); ++i) out[i] += x[i];
  for (std::size_t i = 0; i < y.size(); ++i) out[i] -= y[i];
  return IntPoly(std::move(out));
}

std::vector<BigInt> convolve(std::span<const BigInt> a, std::span<const BigInt> b) {
  if (a.empty() || b.empty()) return {};
  std::vector<BigInt> out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

IntPoly poly_mul(const IntPoly& a, const IntPoly& b) { return IntPoly(convolve(a.coeffs(), b.coeffs())); }

IntPoly poly_shift(const IntPoly& p, std::size_t k) {
  if (p.is_zero()) return p;
  std::vector<BigInt> out(k);
  out.insert(out.end(), p.coeffs().begin(), p.coeffs().end());
  return IntPoly(std::move(out));
}

IntPoly poly_reverse(const IntPoly& p, std::size_t degree_bound) {
  if (p.is_zero()) return p;
  if (p.degree() > static_cast<std::int64_t>(degree_bound)) {
    throw ValidationError("poly_reverse: bound " + std::to_string(degree_bound) + " is below degree " +
                          std::to_string(p.degree()));
  }
  std::vector<BigInt> out(degree_bound + 1);
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) out[degree_bound - i] = p.coeffs()[i];
  return IntPoly(std::move(out));
}

BigInt eval_at_integer(const IntPoly& p, const BigInt& x) {
  BigInt acc = 0;
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * x + *it;
  return acc;
}

IntPoly poly_exact_divide(const IntPoly& numerator, const IntPoly& divisor) {
  if (divisor.is_zero()) throw ValidationError("polynomial division by zero");
  if (numerator.is_zero()) return numerator;
  if (numerator.degree() < divisor.degree()) throw ValidationError("polynomial division is not exact");
  std::vector<BigInt> rem = numerator.coeffs();
  const auto& dv = divisor.coeffs();
  const std::size_t dd = dv.size() - 1;
  std::vector<BigInt> quot(rem.size() - dd);
  for (std::size_t k = quot.size(); k-- > 0;) {
    const BigInt& top = rem[k + dd];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), dv.back().get_mpz_t())) {
      throw ValidationError("polynomial division is not exact");
    }
    BigInt q = top / dv.back();
    for (std::size_t j = 0; j <= dd; ++j) rem[k + j] -= q * dv[j];
    quot[k] = std::move(q);
  }
  for (const auto& r : rem) {
    if (r != 0) throw ValidationError("polynomial division is not exact");
  }
  return IntPoly(std::move(quot));
}

// -------------------------------------------------------- TruncatedSeries

TruncatedSeries::TruncatedSeries(std::size_t order) : coeffs_(order + 1) {}

TruncatedSeries TruncatedSeries::one(std::size_t order) {
  TruncatedSeries s(order);
  s.coeffs_[0] = 1;
  return s;
}

TruncatedSeries TruncatedSeries::from_poly(const IntPoly& p, std::size_t order) {
  TruncatedSeries s(order);
  for (std::size_t i = 0; i < p.coeffs().size() && i <= order; ++i) s.coeffs_[i] = p.coeffs()[i];
  return s;
}

BigInt TruncatedSeries::coeff(std::int64_t m) const {
  if (m < 0 || m > static_cast<std::int64_t>(order())) return 0;
  return coeffs_[static_cast<std::size_t>(m)];
}

void TruncatedSeries::set_coeff(std::size_t m, const BigInt& value) {
  if (m > order()) throw ValidationError("series index beyond truncation order");
  coeffs_[m] = value;
}

void TruncatedSeries::multiply_one_minus(std::size_t w) {
  if (w == 0) throw ValidationError("weight must be positive");
  for (std::size_t m = coeffs_.size(); m-- > w;) coeffs_[m] -= coeffs_[m - w];
}

void TruncatedSeries::divide_one_minus(std::size_t w) {
  if (w == 0) throw ValidationError("weight must be positive");
  for (std::size_t m = w; m < coeffs_.size(); ++m) coeffs_[m] += coeffs_[m - w];
}

TruncatedSeries TruncatedSeries::truncated(std::size_t order) const {
  if (order > this->order()) throw ValidationError("cannot extend a truncated series");
  TruncatedSeries s(order);
  std::copy_n(coeffs_.begin(), order + 1, s.coeffs_.begin());
  return s;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  const std::size_t n = std::min(a.order(), b.order());
  TruncatedSeries out(n);
  for (std::size_t i = 0; i <= n; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; i + j <= n; ++j) out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return out;
}

TruncatedSeries series_reciprocal_product(std::span<const long> weights, std::size_t order) {
  TruncatedSeries s = TruncatedSeries::one(order);
  for (long w : weights) {
    if (w <= 0) throw ValidationError("weights must be positive, got " + std::to_string(w));
    s.divide_one_minus(static_cast<std::size_t>(w));
  }
  return s;
}

BigInt factorial(unsigned long n) {
  BigInt f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

BigInt binomial(unsigned long n, unsigned long k) {
  if (k > n) return 0;
  BigInt b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

}  // namespace qflag
