#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qflag/error.hpp"
#include "qflag/polycore.hpp"

namespace qflag {

/// The pair (n, d) with d_1 < ... < d_r < n. d may be empty. Block sizes are
/// e_i = d_i - d_{i-1} with d_0 = 0 and d_{r+1} = n.
class FlagShape {
public:
  /// Throws ValidationError unless n >= 1 and d is strictly increasing in [1, n).
  FlagShape(unsigned n, std::vector<unsigned> d);

  /// d = (1, 2, ..., n-1).
  static FlagShape full(unsigned n);
  /// Every shape of size n (all 2^(n-1) subsets of [n-1]), in a fixed order.
  static std::vector<FlagShape> all_of_size(unsigned n);

  unsigned n() const { return n_; }
  const std::vector<unsigned>& d() const { return d_; }
  std::size_t r() const { return d_.size(); }
  /// e_1, ..., e_{r+1}.
  std::vector<unsigned> block_sizes() const;
  /// d_i for 0 <= i <= r+1.
  unsigned boundary(std::size_t i) const;

  /// sum_{i<j} e_i e_j, the largest inversion count.
  std::uint64_t nu() const;
  /// sum_i e_i (e_i - 1) / 2.
  std::uint64_t eta() const;
  /// n! / prod e_i!
  BigInt multinomial() const;
  /// prod e_i!
  BigInt block_factorial_product() const;

  /// True when every d_i of this shape also occurs in `finer`.
  bool is_refined_by(const FlagShape& finer) const;

  std::string to_string() const;

  friend bool operator==(const FlagShape&, const FlagShape&) = default;

private:
  unsigned n_;
  std::vector<unsigned> d_;
};

IntPoly q_int(unsigned n);
IntPoly q_factorial(unsigned n);
/// Gaussian binomial via binom(n,e) = binom(n-1,e-1) + x^e binom(n-1,e).
IntPoly q_binomial(unsigned n, unsigned e);
/// Gaussian binomial as n!_x / (e!_x (n-e)!_x) with exact division. Oracle only.
IntPoly q_binomial_quotient_form(unsigned n, unsigned e);
/// prod_{i=1}^{r} binom(n - d_{i-1}, e_i)_x
IntPoly q_multinomial(const FlagShape& shape);

/// Number of partitions of m into at most `max_parts` parts, each at most `max_part`.
BigInt partition_count(unsigned max_part, unsigned max_parts, std::int64_t m);

struct MultisetSum {
  IntPoly poly;           // sum over multisets M of x^{sum(M)}
  std::uint64_t count{};  // number of multisets visited
};

/// Enumerates every multiset of at most `max_size` integers from [1, max_element].
/// Throws ResourceError when binom(max_element + max_size, max_element) exceeds limits.word_cap.
MultisetSum multiset_sum_poly(unsigned max_element, unsigned max_size, const Limits& limits = {});

}  // namespace qflag
