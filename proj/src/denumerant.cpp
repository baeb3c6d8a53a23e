#include "qflag/denumerant.hpp"

#include <numeric>
#include <string>

namespace qflag {

WeightVector::WeightVector(std::vector<long> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw ValidationError("weight vector must be non-empty");
  for (long w : weights_) {
    if (w <= 0) throw ValidationError("weights must be positive, got " + std::to_string(w));
  }
}

WeightVector WeightVector::ones(unsigned n) { return WeightVector(std::vector<long>(n, 1)); }

WeightVector WeightVector::range(unsigned n) {
  std::vector<long> w(n);
  std::iota(w.begin(), w.end(), 1L);
  return WeightVector(std::move(w));
}

std::uint64_t WeightVector::lcm() const {
  std::uint64_t acc = 1;
  for (long w : weights_) acc = std::lcm(acc, static_cast<std::uint64_t>(w));
  return acc;
}

TruncatedSeries denumerant_series(const WeightVector& w, std::size_t order) {
  return series_reciprocal_product(w.values(), order);
}

BigInt denumerant(const WeightVector& w, std::int64_t m) {
  if (m < 0) return 0;
  return denumerant_series(w, static_cast<std::size_t>(m)).coeff(m);
}

WeightVector epsilon_weights(const FlagShape& shape) {
  std::vector<long> w;
  w.reserve(shape.n());
  for (unsigned e : shape.block_sizes()) {
    for (unsigned i = 1; i <= e; ++i) w.push_back(i);
  }
  return WeightVector(std::move(w));
}

const char* to_string(PsiMethod method) {
  switch (method) {
    case PsiMethod::FnCoefficients: return "fn";
    case PsiMethod::SubsetOracle: return "subset";
    case PsiMethod::Pentagonal: return "pentagonal";
    case PsiMethod::ExpLog: return "explog";
  }
  return "?";
}

// ------------------------------------------------------------------ psi

PsiTable::PsiTable(unsigned n) : n_(n) {
  if (n == 0) throw ValidationError("psi requires n >= 1");
  values_.assign(1, BigInt(1));
  for (unsigned i = 1; i <= n; ++i) {
    values_.resize(values_.size() + i);
    for (std::size_t m = values_.size(); m-- > i;) values_[m] -= values_[m - i];
  }
}

BigInt PsiTable::at(std::int64_t r) const {
  if (r < 0 || static_cast<std::uint64_t>(r) > top()) return 0;
  return values_[static_cast<std::size_t>(r)];
}

namespace {

std::int64_t psi_top(unsigned n) { return static_cast<std::int64_t>(n) * (n + 1) / 2; }

BigInt psi_subset(unsigned n, std::int64_t r, const Limits& limits) {
  if (n >= 63 || (1ULL << n) > limits.subset_cap) {
    throw ResourceError("subset oracle needs 2^" + std::to_string(n) + " subsets, above cap " +
                        std::to_string(limits.subset_cap));
  }
  BigInt total = 0;
  const std::uint64_t count = 1ULL << n;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    std::int64_t weight = 0;
    int size = 0;
    for (unsigned i = 0; i < n; ++i) {
      if (mask & (1ULL << i)) {
        weight += i + 1;
        ++size;
      }
    }
    if (weight == r) total += (size % 2 == 0) ? 1 : -1;
  }
  return total;
}

BigInt psi_pentagonal(unsigned n, std::int64_t r) {
  if (r < 1 || r > static_cast<std::int64_t>(n)) {
    throw ValidationError("pentagonal method applies only to 1 <= r <= n");
  }
  for (std::int64_t s = 1; s * (3 * s - 1) <= 2 * r; ++s) {
    if (s * (3 * s - 1) == 2 * r || s * (3 * s + 1) == 2 * r) return (s % 2 == 0) ? 1 : -1;
  }
  return 0;
}

// Sum over multi-indices i_1 + 2 i_2 + ... + r i_r = r of
//   prod_j (-alpha_n(j))^{i_j} / i_j!.
// The sum factors over j, so it is accumulated as the product over j of the
// truncated series sum_i (-alpha_n(j))^i / i! * t^{j i}.
BigInt psi_exp_log(unsigned n, std::int64_t r) {
  const auto order = static_cast<std::size_t>(r);
  std::vector<mpq_class> acc(order + 1, mpq_class(0));
  acc[0] = 1;
  for (std::size_t j = 1; j <= order; ++j) {
    const mpq_class alpha(restricted_divisor_sum(n, j), BigInt(static_cast<unsigned long>(j)));
    const mpq_class minus_alpha = -alpha;
    std::vector<mpq_class> factor(order / j + 1);
    factor[0] = 1;
    for (std::size_t i = 1; i < factor.size(); ++i) {
      factor[i] = factor[i - 1] * minus_alpha / static_cast<unsigned long>(i);
    }
    std::vector<mpq_class> next(order + 1, mpq_class(0));
    for (std::size_t a = 0; a <= order; ++a) {
      if (acc[a] == 0) continue;
      for (std::size_t i = 0; a + i * j <= order; ++i) next[a + i * j] += acc[a] * factor[i];
    }
    acc = std::move(next);
  }
  mpq_class result = acc[order];
  result.canonicalize();
  if (result.get_den() != 1) {
    throw std::logic_error("exp-log evaluation of psi produced a non-integer: " + result.get_str());
  }
  return result.get_num();
}

}  // namespace

BigInt psi(unsigned n, std::int64_t r, PsiMethod method, const Limits& limits) {
  if (n == 0) throw ValidationError("psi requires n >= 1");
  if (method == PsiMethod::Pentagonal) return psi_pentagonal(n, r);
  if (r < 0 || r > psi_top(n)) return 0;
  switch (method) {
    case PsiMethod::FnCoefficients: return PsiTable(n).at(r);
    case PsiMethod::SubsetOracle: return psi_subset(n, r, limits);
    case PsiMethod::ExpLog: return psi_exp_log(n, r);
    case PsiMethod::Pentagonal: break;
  }
  throw ValidationError("unknown psi method");
}

// ----------------------------------------------------------- divisor sums

BigInt restricted_divisor_sum(unsigned n, std::uint64_t k) {
  if (k == 0) throw ValidationError("restricted divisor sum requires k >= 1");
  std::uint64_t total = 0;
  const std::uint64_t top = std::min<std::uint64_t>(n, k);
  for (std::uint64_t d = 1; d <= top; ++d) {
    if (k % d == 0) total += d;
  }
  return to_big(total);
}

BigInt restricted_divisor_sum_floor_form(unsigned n, std::uint64_t k) {
  if (k == 0) throw ValidationError("restricted divisor sum requires k >= 1");
  BigInt total = 0;
  const std::uint64_t top = std::min<std::uint64_t>(n, k);
  for (std::uint64_t d = 1; d <= top; ++d) {
    const Rational ratio(to_big(k), to_big(d));
    const Rational inner = Rational(BigInt(1 + ratio.floor())) - ratio;
    total += inner.floor() * to_big(d);
  }
  return total;
}

// ------------------------------------------------------------- identities

bool signed_subset_identity_check(unsigned r, const WeightVector& w, std::size_t order, const Limits& limits) {
  if (r >= 63 || (1ULL << r) > limits.subset_cap) {
    throw ResourceError("signed subset sum over 2^" + std::to_string(r) + " subsets exceeds cap");
  }
  TruncatedSeries lhs = denumerant_series(w, order);
  for (unsigned i = 1; i <= r; ++i) lhs.multiply_one_minus(i);

  const TruncatedSeries d = denumerant_series(w, order);
  std::vector<BigInt> rhs(order + 1);
  for (std::uint64_t mask = 0; mask < (1ULL << r); ++mask) {
    std::int64_t omega = 0;
    int size = 0;
    for (unsigned i = 0; i < r; ++i) {
      if (mask & (1ULL << i)) {
        omega += i + 1;
        ++size;
      }
    }
    for (std::size_t m = 0; m <= order; ++m) {
      const BigInt term = d.coeff(static_cast<std::int64_t>(m) - omega);
      if (size % 2 == 0) {
        rhs[m] += term;
      } else {
        rhs[m] -= term;
      }
    }
  }
  return lhs.coeffs() == rhs;
}

MahonianViaDenumerant mahonian_via_denumerant(const FlagShape& shape, std::uint64_t k, const Limits& limits) {
  const unsigned n = shape.n();
  if (n >= 63 || (1ULL << n) > limits.subset_cap) {
    throw ResourceError("subset form over 2^" + std::to_string(n) + " subsets exceeds cap");
  }
  const TruncatedSeries d = denumerant_series(epsilon_weights(shape), static_cast<std::size_t>(k));
  const auto kk = static_cast<std::int64_t>(k);

  MahonianViaDenumerant out;
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    std::int64_t omega = 0;
    int size = 0;
    for (unsigned i = 0; i < n; ++i) {
      if (mask & (1ULL << i)) {
        omega += i + 1;
        ++size;
      }
    }
    if (omega > kk) continue;
    if (size % 2 == 0) {
      out.subset_form += d.coeff(kk - omega);
    } else {
      out.subset_form -= d.coeff(kk - omega);
    }
  }
  const PsiTable psi_n(n);
  for (std::int64_t i = 0; i <= kk; ++i) out.psi_form += psi_n.at(i) * d.coeff(kk - i);
  return out;
}

BigInt generalized_binomial(std::int64_t a, std::int64_t b) {
  if (a < 0 || b < 0 || a < b) return 0;
  return binomial(static_cast<unsigned long>(a), static_cast<unsigned long>(b));
}

BigInt full_mahonian_via_binomials(unsigned n, std::uint64_t k) {
  if (n == 0) throw ValidationError("n must be positive");
  const PsiTable psi_n(n);
  const auto kk = static_cast<std::int64_t>(k);
  const std::int64_t nm1 = n - 1;
  BigInt total = 0;
  for (std::int64_t i = 0; i <= kk; ++i) total += psi_n.at(i) * generalized_binomial(nm1 + kk - i, nm1);
  return total;
}

bool quasipolynomial_check(const WeightVector& w, std::uint64_t start, std::uint64_t samples) {
  if (samples == 0) throw ValidationError("quasipolynomial_check needs at least one sample");
  const std::uint64_t n = w.size();
  const std::uint64_t step = w.lcm();
  const std::uint64_t last = start + samples - 1 + n * step;
  const TruncatedSeries d = denumerant_series(w, static_cast<std::size_t>(last));
  for (std::uint64_t m = start; m < start + samples; ++m) {
    BigInt diff = 0;
    for (std::uint64_t j = 0; j <= n; ++j) {
      const BigInt term = binomial(n, j) * d.coeff(static_cast<std::int64_t>(m + j * step));
      if ((n - j) % 2 == 0) {
        diff += term;
      } else {
        diff -= term;
      }
    }
    if (diff != 0) return false;
  }
  return true;
}

RationalBounds denumerant_bounds(const FlagShape& shape, std::uint64_t m) {
  const BigInt denom = shape.block_factorial_product();
  const std::uint64_t nm1 = shape.n() - 1;
  return {Rational(binomial(nm1 + m, nm1), denom), Rational(binomial(nm1 + shape.eta() + m, nm1), denom)};
}

}  // namespace qflag
