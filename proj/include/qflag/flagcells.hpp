#pragma once

// Linear algebra over prime fields F_p: reduced column forms, the cell
// decomposition of GL(n)/P(n,d) indexed by ordered set partitions, and
// brute-force enumeration of flags.

#include <compare>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "qflag/error.hpp"
#include "qflag/inversions.hpp"
#include "qflag/polycore.hpp"
#include "qflag/qanalogue.hpp"

namespace qflag {

bool is_prime(std::uint64_t p);

/// Dense matrix over F_p, row-major, entries in [0, p).
class FpMatrix {
public:
  /// Zero matrix. Throws ValidationError unless p is prime.
  FpMatrix(std::uint32_t p, std::size_t rows, std::size_t cols);
  static FpMatrix identity(std::uint32_t p, std::size_t n);
  /// Entries are reduced mod p (negative values allowed).
  static FpMatrix from_rows(std::uint32_t p, const std::vector<std::vector<long>>& rows);

  std::uint32_t modulus() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint32_t operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, long value);
  std::span<const std::uint32_t> entries() const { return entries_; }

  /// Columns [first, first + count).
  FpMatrix columns(std::size_t first, std::size_t count) const;
  /// Rows separated by ';', entries by ' '.
  std::string to_string() const;

  friend bool operator==(const FpMatrix&, const FpMatrix&) = default;
  friend auto operator<=>(const FpMatrix&, const FpMatrix&) = default;

private:
  std::uint32_t p_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint32_t> entries_;
};

FpMatrix mat_mul(const FpMatrix& a, const FpMatrix& b);
/// Throws ValidationError for non-square or singular input.
FpMatrix mat_inverse(const FpMatrix& a);
std::size_t rank(const FpMatrix& a);
/// [a | b]
FpMatrix hconcat(const FpMatrix& a, const FpMatrix& b);

// ------------------------------------------------------- reduced forms

/// The column-selector matrix A[s] (rows labelled 1..n).
FpMatrix selector_matrix(std::uint32_t p, std::size_t n, std::span<const unsigned> pivots);

/// True iff M is in s-reduced form (anti: anti s-reduced form): row s_j of
/// column j is 1, other pivot rows of column j are 0, and entries above
/// (anti: below) s_j are 0. Rows are labelled 1..n.
bool is_s_reduced(const FpMatrix& m, std::span<const unsigned> pivots, bool anti = false);

struct SReduction {
  std::vector<unsigned> pivots;  // s_1 < ... < s_e, 1-based row labels
  FpMatrix reduced;              // N * transform
  FpMatrix transform;            // in GL(e, F_p)
};

/// Column reduction of an n x e matrix of rank e. Throws ValidationError on
/// rank deficiency.
SReduction s_reduce(const FpMatrix& n, bool anti = false);

/// Block upper triangular with respect to the shape's blocks, with
/// invertible diagonal blocks.
bool is_parabolic_member(const FpMatrix& g, const FlagShape& shape);

// ------------------------------------------------------------- cells

/// (sigma_1, ..., sigma_{r+1}): a partition of [n] into increasing blocks
/// with |sigma_i| = e_i.
class OrderedSetPartition {
public:
  OrderedSetPartition(FlagShape shape, std::vector<std::vector<unsigned>> blocks);

  const FlagShape& shape() const { return shape_; }
  const std::vector<std::vector<unsigned>>& blocks() const { return blocks_; }
  /// sigma(j) for j = 1..n (index j-1): the blocks read left to right.
  std::vector<unsigned> as_permutation() const;
  /// "{1,2}|{3}"
  std::string to_string() const;

  friend bool operator==(const OrderedSetPartition& a, const OrderedSetPartition& b) { return a.blocks_ == b.blocks_; }
  friend auto operator<=>(const OrderedSetPartition& a, const OrderedSetPartition& b) { return a.blocks_ <=> b.blocks_; }

private:
  FlagShape shape_;
  std::vector<std::vector<unsigned>> blocks_;
};

/// Visits every element of pi(d) in lexicographic order of blocks. Returns
/// the count. Throws ResourceError when |pi(d)| exceeds limits.word_cap.
std::uint64_t enumerate_partitions(const FlagShape& shape,
                                   const std::function<void(const OrderedSetPartition&)>& visit,
                                   const Limits& limits = {});

struct SigmaStats {
  std::vector<unsigned> perm;           // sigma(j), index j-1
  std::vector<unsigned> mu;             // block index of position j, 1-based
  std::vector<std::uint64_t> delta;     // |Delta(sigma, j)|
  std::uint64_t lambda{};               // sum of delta
};

SigmaStats sigma_stats(const OrderedSetPartition& sigma);

/// Rows (1-based) that may hold arbitrary entries in column j (index j-1) of a
/// matrix in (anti) sigma-form: rows of later blocks' pivots that lie below
/// (anti: above) sigma(j).
std::vector<std::vector<unsigned>> free_rows(const OrderedSetPartition& sigma, bool anti = false);
std::uint64_t cell_dimension(const OrderedSetPartition& sigma, bool anti = false);
/// Entry pattern check: a_{sigma(j), j} = 1 and a_{ij} = 0 off the free rows.
bool matches_cell_pattern(const FpMatrix& a, const OrderedSetPartition& sigma, bool anti = false);

struct CellForm {
  OrderedSetPartition sigma;
  FpMatrix matrix;
  bool anti = false;

  friend bool operator==(const CellForm&, const CellForm&) = default;
  friend auto operator<=>(const CellForm& a, const CellForm& b) {
    if (auto c = a.matrix <=> b.matrix; c != 0) return c;
    if (auto c = a.sigma <=> b.sigma; c != 0) return c;
    return a.anti <=> b.anti;
  }
};

struct CellDecomposition {
  CellForm form;       // form.matrix = A * transform
  FpMatrix transform;  // in P(n, d, F_p)
};

/// The unique sigma and g in P(n, d) with A g in (anti) sigma-form.
/// Throws ValidationError when A is singular.
CellDecomposition cell_form(const FpMatrix& a, const FlagShape& shape, bool anti = false);

/// Position n - sigma(i) + 1 carries letter mu(i). inv of the result equals lambda(sigma).
MultisetWord theta_word(const OrderedSetPartition& sigma);
/// Row v carries the block index of the position sigma maps to v. inv of the
/// result equals the anti cell dimension.
MultisetWord row_block_word(const OrderedSetPartition& sigma);

/// sum over sigma in pi(d) of x^{cell dimension}.
IntPoly cell_sum_poly(const FlagShape& shape, bool anti = false, const Limits& limits = {});

/// For d = (d1), an element tau of pi(d) with lambda(tau) = k, 0 <= k <= d1 (n - d1).
OrderedSetPartition tau_for_lambda(unsigned n, unsigned d1, std::uint64_t k);

// ------------------------------------------------------------- flags

/// A d-flag V_1 < ... < V_r in F_p^n. bases[m] is the s-reduced n x d_{m+1}
/// basis of V_{m+1}, so equal flags compare equal entrywise.
struct Flag {
  FlagShape shape;
  std::uint32_t p;
  std::vector<FpMatrix> bases;

  std::string to_string() const;
  friend bool operator==(const Flag& a, const Flag& b) { return a.bases == b.bases; }
  friend auto operator<=>(const Flag& a, const Flag& b) { return a.bases <=> b.bases; }
};

/// V_m spanned by the first d_m columns of A. Throws ValidationError when A is singular.
Flag phi_flag(const FpMatrix& a, const FlagShape& shape);

/// Every d-flag in F_p^n, each exactly once. Returns the count. Throws
/// ResourceError when p^n exceeds limits.field_vector_cap.
std::uint64_t enumerate_flags(const FlagShape& shape, std::uint32_t p, const std::function<void(const Flag&)>& visit,
                              const Limits& limits = {});

BigInt gl_order(unsigned n, std::uint32_t p);
BigInt parabolic_order(const FlagShape& shape, std::uint32_t p);
/// |GL(n, F_p)| / |P(n, d, F_p)|.
BigInt flag_count_group_formula(const FlagShape& shape, std::uint32_t p);

/// Visits every element of GL(n, F_p). Throws ResourceError when |GL| exceeds limits.word_cap.
std::uint64_t enumerate_gl(unsigned n, std::uint32_t p, const std::function<void(const FpMatrix&)>& visit,
                           const Limits& limits = {});
FpMatrix random_gl(unsigned n, std::uint32_t p, std::mt19937_64& rng);
FpMatrix random_parabolic(const FlagShape& shape, std::uint32_t p, std::mt19937_64& rng);

}  // namespace qflag
