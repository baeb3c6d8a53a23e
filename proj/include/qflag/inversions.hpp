#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qflag/denumerant.hpp"
#include "qflag/error.hpp"
#include "qflag/polycore.hpp"
#include "qflag/qanalogue.hpp"

namespace qflag {

/// A permutation of the multiset {1^{e_1}, ..., (r+1)^{e_{r+1}}}.
class MultisetWord {
public:
  /// Throws ValidationError unless letter i occurs exactly e_i times.
  MultisetWord(FlagShape shape, std::vector<unsigned> letters);

  const FlagShape& shape() const { return shape_; }
  const std::vector<unsigned>& letters() const { return letters_; }
  std::string to_string() const;

  friend bool operator==(const MultisetWord& a, const MultisetWord& b) { return a.letters_ == b.letters_; }
  friend auto operator<=>(const MultisetWord& a, const MultisetWord& b) { return a.letters_ <=> b.letters_; }

private:
  FlagShape shape_;
  std::vector<unsigned> letters_;
};

/// Single-consumer stream over S(M) in lexicographic order.
class WordStream {
public:
  /// Throws ResourceError when n!/prod e_i! exceeds limits.word_cap.
  explicit WordStream(const FlagShape& shape, const Limits& limits = {});

  std::optional<MultisetWord> next();
  std::uint64_t size() const { return size_; }

private:
  FlagShape shape_;
  std::vector<unsigned> current_;
  std::uint64_t size_;
  bool done_ = false;
};

std::uint64_t inversion_count_naive(std::span<const unsigned> word);
/// Merge-sort counter; equal letters never form an inversion.
std::uint64_t inversion_count_merge(std::span<const unsigned> word);
inline std::uint64_t inversion_count(const MultisetWord& w) { return inversion_count_merge(w.letters()); }

/// Histogram of inv over S(M), by enumeration. `jobs` > 1 splits the words by
/// leading letter across threads; the result does not depend on `jobs`.
IntPoly inversion_distribution_oracle(const FlagShape& shape, const Limits& limits = {}, unsigned jobs = 1);

/// counts[k] = I_n(d; k) for 0 <= k <= nu(d).
struct MahonianTable {
  FlagShape shape;
  std::vector<BigInt> counts;
};

/// Coefficients of the q-multinomial; no enumeration.
MahonianTable mahonian_table(const FlagShape& shape);
/// I_n(k) from (1)(1+t)...(1+t+...+t^{n-1}).
MahonianTable full_mahonian(unsigned n);

struct RefinementResult {
  /// d[i]* for each block i of the coarse shape.
  std::vector<FlagShape> block_shapes;
  /// c_m: coefficients of prod_i sum_j I_{e_i}(d[i]*; j) t^j, with c_0 = 1.
  std::vector<BigInt> convolver;
  /// I_n(d; .) recovered from I_n(d*; .).
  MahonianTable table;
};

/// Recovers I_n(d; k) = I_n(d*; k) - sum_{m>=1} c_m I_n(d; k-m).
/// Throws ValidationError unless `refined` refines `shape`.
RefinementResult refinement_recurrence(const FlagShape& shape, const FlagShape& refined);

/// Lower and upper estimates of I_n(d; k) obtained from the denumerant bounds.
RationalBounds inv_bounds(const FlagShape& shape, std::uint64_t k);

/// Every interior k with seq[k]^2 < seq[k-1] * seq[k+1].
std::vector<std::size_t> log_concavity_scan(std::span<const BigInt> seq);

}  // namespace qflag
