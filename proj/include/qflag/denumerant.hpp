#pragma once

// Sylvester denumerants D_w(m), the signed subset counts psi_n(r) (the
// coefficients of (1-t)(1-t^2)...(1-t^n)) and the identities linking them to
// inversion counts.

#include <cstdint>
#include <span>
#include <vector>

#include "qflag/error.hpp"
#include "qflag/polycore.hpp"
#include "qflag/qanalogue.hpp"

namespace qflag {

/// An n-tuple of positive integer weights.
class WeightVector {
public:
  explicit WeightVector(std::vector<long> weights);
  /// (1, 1, ..., 1)
  static WeightVector ones(unsigned n);
  /// (1, 2, ..., n)
  static WeightVector range(unsigned n);

  std::span<const long> values() const { return weights_; }
  std::size_t size() const { return weights_.size(); }
  /// Least common multiple of the weights.
  std::uint64_t lcm() const;

  friend bool operator==(const WeightVector&, const WeightVector&) = default;

private:
  std::vector<long> weights_;
};

/// D_w(0..order).
TruncatedSeries denumerant_series(const WeightVector& w, std::size_t order);
/// D_w(m); zero for m < 0.
BigInt denumerant(const WeightVector& w, std::int64_t m);

/// epsilon(d, n): block j contributes 1, 2, ..., e_j.
WeightVector epsilon_weights(const FlagShape& shape);

enum class PsiMethod {
  FnCoefficients,  // coefficient of t^r in f_n(t)
  SubsetOracle,    // signed count of subsets T of [n] with element sum r
  Pentagonal,      // Euler's pentagonal numbers, 1 <= r <= n only
  ExpLog,          // exp(log f_n) with alpha_n(j) = sigma_n(j)/j, exact rationals
};

const char* to_string(PsiMethod method);

/// psi_n(r). Zero for r outside [0, n(n+1)/2]. Throws ValidationError when
/// the method does not apply to (n, r), ResourceError when 2^n exceeds
/// limits.subset_cap for the subset oracle.
BigInt psi(unsigned n, std::int64_t r, PsiMethod method = PsiMethod::FnCoefficients, const Limits& limits = {});

/// All psi_n(r), 0 <= r <= n(n+1)/2.
class PsiTable {
public:
  explicit PsiTable(unsigned n);

  unsigned n() const { return n_; }
  std::size_t top() const { return values_.size() - 1; }
  /// psi_n(r), zero outside [0, top()].
  BigInt at(std::int64_t r) const;
  const std::vector<BigInt>& values() const { return values_; }

private:
  unsigned n_;
  std::vector<BigInt> values_;
};

/// Sum of the divisors of k that do not exceed n.
BigInt restricted_divisor_sum(unsigned n, std::uint64_t k);
/// The same quantity as sum_{d <= min(n,k)} floor(1 + floor(k/d) - k/d) * d.
BigInt restricted_divisor_sum_floor_form(unsigned n, std::uint64_t k);

/// Compares the series of prod_{i<=r}(1-t^i) / prod_i (1-t^{w_i}) against
/// sum_{T subset [r]} (-1)^|T| D_w(m - omega(T)) for all m <= order.
bool signed_subset_identity_check(unsigned r, const WeightVector& w, std::size_t order, const Limits& limits = {});

struct MahonianViaDenumerant {
  BigInt subset_form;  // sum over T subset [n] of (-1)^|T| D_eps(k - omega(T))
  BigInt psi_form;     // sum_i psi_n(i) D_eps(k - i)
};

/// I_n(d; k) through the denumerants of epsilon(d, n).
MahonianViaDenumerant mahonian_via_denumerant(const FlagShape& shape, std::uint64_t k, const Limits& limits = {});

/// I_n(k) = sum_i psi_n(i) binom(n - 1 + k - i, n - 1).
BigInt full_mahonian_via_binomials(unsigned n, std::uint64_t k);

/// binom(a, b), with 0 whenever min(a, b) < 0 or a < b.
BigInt generalized_binomial(std::int64_t a, std::int64_t b);

/// True iff the n-th difference of m -> D_w(m) with step lcm(w) vanishes at
/// each of start, start+1, ..., start+samples-1 (n = number of weights).
bool quasipolynomial_check(const WeightVector& w, std::uint64_t start, std::uint64_t samples);

struct RationalBounds {
  Rational lower;
  Rational upper;
};

/// binom(n-1+m, n-1)/prod e_i!  <=  D_eps(m)  <=  binom(n-1+eta+m, n-1)/prod e_i!
RationalBounds denumerant_bounds(const FlagShape& shape, std::uint64_t m);

}  // namespace qflag
