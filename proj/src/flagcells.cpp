#include "qflag/flagcells.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace qflag {

namespace {

std::uint32_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint32_t p) {
  std::uint64_t result = 1;
  base %= p;
  while (exp) {
    if (exp & 1) result = result * base % p;
    base = base * base % p;
    exp >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p) { return mod_pow(a, p - 2, p); }

// Column operations on a row-major matrix held as (p, rows, cols, data).
struct ColumnOps {
  std::uint32_t p;
  std::size_t rows;
  std::size_t cols;
  std::vector<std::uint32_t>& a;

  std::uint32_t& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  void swap_cols(std::size_t x, std::size_t y) {
    if (x == y) return;
    for (std::size_t i = 0; i < rows; ++i) std::swap(at(i, x), at(i, y));
  }
  void scale_col(std::size_t x, std::uint32_t f) {
    for (std::size_t i = 0; i < rows; ++i) at(i, x) = static_cast<std::uint32_t>(std::uint64_t{at(i, x)} * f % p);
  }
  // col[y] -= f * col[x]
  void sub_col(std::size_t y, std::size_t x, std::uint32_t f) {
    if (f == 0) return;
    const std::uint64_t neg = p - f;
    for (std::size_t i = 0; i < rows; ++i) {
      at(i, y) = static_cast<std::uint32_t>((at(i, y) + neg * at(i, x)) % p);
    }
  }
};

FpMatrix reverse_rows(const FpMatrix& m) {
  FpMatrix out(m.modulus(), m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out.set(m.rows() - 1 - i, j, m(i, j));
  }
  return out;
}

FpMatrix reverse_cols(const FpMatrix& m) {
  FpMatrix out(m.modulus(), m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out.set(i, m.cols() - 1 - j, m(i, j));
  }
  return out;
}

SReduction s_reduce_straight(const FpMatrix& input) {
  const std::uint32_t p = input.modulus();
  const std::size_t rows = input.rows();
  const std::size_t e = input.cols();
  std::vector<std::uint32_t> m(input.entries().begin(), input.entries().end());
  const FpMatrix id = FpMatrix::identity(p, e);
  std::vector<std::uint32_t> g(id.entries().begin(), id.entries().end());
  ColumnOps mo{p, rows, e, m};
  ColumnOps go{p, e, e, g};
  std::vector<unsigned> pivots;
  std::size_t row = 0;
  for (std::size_t j = 0; j < e; ++j) {
    // Step 1: topmost row with a nonzero entry among columns j..e-1.
    std::size_t col = e;
    for (; row < rows; ++row) {
      for (std::size_t c = j; c < e; ++c) {
        if (mo.at(row, c) != 0) {
          col = c;
          break;
        }
      }
      if (col != e) break;
    }
    if (col == e) throw ValidationError("s_reduce: matrix does not have full column rank");
    mo.swap_cols(j, col);
    go.swap_cols(j, col);
    // Step 2: make the pivot 1.
    const std::uint32_t inv = mod_inverse(mo.at(row, j), p);
    mo.scale_col(j, inv);
    go.scale_col(j, inv);
    // Step 3: clear the pivot row in every other column.
    for (std::size_t c = 0; c < e; ++c) {
      if (c == j) continue;
      const std::uint32_t f = mo.at(row, c);
      mo.sub_col(c, j, f);
      go.sub_col(c, j, f);
    }
    pivots.push_back(static_cast<unsigned>(row + 1));
    ++row;
  }
  FpMatrix reduced(p, rows, e);
  FpMatrix transform(p, e, e);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t c = 0; c < e; ++c) reduced.set(i, c, m[i * e + c]);
  }
  for (std::size_t i = 0; i < e; ++i) {
    for (std::size_t c = 0; c < e; ++c) transform.set(i, c, g[i * e + c]);
  }
  return {std::move(pivots), std::move(reduced), std::move(transform)};
}

void combinations(const std::vector<unsigned>& pool, std::size_t k, std::size_t start, std::vector<unsigned>& chosen,
                  const std::function<void(const std::vector<unsigned>&)>& visit) {
  if (chosen.size() == k) {
    visit(chosen);
    return;
  }
  for (std::size_t i = start; i + (k - chosen.size()) <= pool.size(); ++i) {
    chosen.push_back(pool[i]);
    combinations(pool, k, i + 1, chosen, visit);
    chosen.pop_back();
  }
}

BigInt int_pow(std::uint64_t base, std::uint64_t exp) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, exp);
  return out;
}

}  // namespace

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

// ------------------------------------------------------------- FpMatrix

FpMatrix::FpMatrix(std::uint32_t p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), entries_(rows * cols, 0) {
  if (!is_prime(p)) throw ValidationError("modulus " + std::to_string(p) + " is not prime");
  if (p > 65521) throw ValidationError("modulus too large for 32-bit entries");
}

FpMatrix FpMatrix::identity(std::uint32_t p, std::size_t n) {
  FpMatrix m(p, n, n);
  for (std::size_t i = 0; i < n; ++i) m.entries_[i * n + i] = 1;
  return m;
}

FpMatrix FpMatrix::from_rows(std::uint32_t p, const std::vector<std::vector<long>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  FpMatrix m(p, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw ValidationError("ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

void FpMatrix::set(std::size_t i, std::size_t j, long value) {
  const long p = static_cast<long>(p_);
  entries_[i * cols_ + j] = static_cast<std::uint32_t>(((value % p) + p) % p);
}

FpMatrix FpMatrix::columns(std::size_t first, std::size_t count) const {
  if (first + count > cols_) throw ValidationError("column range out of bounds");
  FpMatrix out(p_, rows_, count);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < count; ++j) out.entries_[i * count + j] = (*this)(i, first + j);
  }
  return out;
}

std::string FpMatrix::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) out << ';';
    for (std::size_t j = 0; j < cols_; ++j) out << (j ? " " : "") << (*this)(i, j);
  }
  return out.str();
}

FpMatrix mat_mul(const FpMatrix& a, const FpMatrix& b) {
  if (a.modulus() != b.modulus() || a.cols() != b.rows()) throw ValidationError("mat_mul: incompatible operands");
  const std::uint32_t p = a.modulus();
  FpMatrix out(p, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      std::uint64_t acc = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) acc = (acc + std::uint64_t{a(i, k)} * b(k, j)) % p;
      out.set(i, j, static_cast<long>(acc));
    }
  }
  return out;
}

FpMatrix hconcat(const FpMatrix& a, const FpMatrix& b) {
  if (a.modulus() != b.modulus() || a.rows() != b.rows()) throw ValidationError("hconcat: incompatible operands");
  FpMatrix out(a.modulus(), a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out.set(i, j, a(i, j));
    for (std::size_t j = 0; j < b.cols(); ++j) out.set(i, a.cols() + j, b(i, j));
  }
  return out;
}

std::size_t rank(const FpMatrix& a) {
  const std::uint32_t p = a.modulus();
  std::vector<std::vector<std::uint64_t>> m(a.rows(), std::vector<std::uint64_t>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = a(i, j);
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t piv = r;
    while (piv < a.rows() && m[piv][c] == 0) ++piv;
    if (piv == a.rows()) continue;
    std::swap(m[piv], m[r]);
    const std::uint64_t inv = mod_inverse(static_cast<std::uint32_t>(m[r][c]), p);
    for (std::size_t j = c; j < a.cols(); ++j) m[r][j] = m[r][j] * inv % p;
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      const std::uint64_t f = m[i][c];
      if (f == 0) continue;
      for (std::size_t j = c; j < a.cols(); ++j) m[i][j] = (m[i][j] + (p - f) * m[r][j]) % p;
    }
    ++r;
  }
  return r;
}

FpMatrix mat_inverse(const FpMatrix& a) {
  if (a.rows() != a.cols()) throw ValidationError("mat_inverse: matrix is not square");
  const std::size_t n = a.rows();
  const std::uint32_t p = a.modulus();
  std::vector<std::vector<std::uint64_t>> m(n, std::vector<std::uint64_t>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a(i, j);
    m[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) throw ValidationError("mat_inverse: matrix is singular");
    std::swap(m[piv], m[c]);
    const std::uint64_t inv = mod_inverse(static_cast<std::uint32_t>(m[c][c]), p);
    for (auto& v : m[c]) v = v * inv % p;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m[i][c] == 0) continue;
      const std::uint64_t f = m[i][c];
      for (std::size_t j = 0; j < 2 * n; ++j) m[i][j] = (m[i][j] + (p - f) * m[c][j]) % p;
    }
  }
  FpMatrix out(p, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out.set(i, j, static_cast<long>(m[i][n + j]));
  }
  return out;
}

// -------------------------------------------------------- reduced forms

FpMatrix selector_matrix(std::uint32_t p, std::size_t n, std::span<const unsigned> pivots) {
  FpMatrix m(p, n, pivots.size());
  for (std::size_t j = 0; j < pivots.size(); ++j) {
    if (pivots[j] == 0 || pivots[j] > n) throw ValidationError("selector row out of range");
    m.set(pivots[j] - 1, j, 1);
  }
  return m;
}

bool is_s_reduced(const FpMatrix& m, std::span<const unsigned> pivots, bool anti) {
  if (pivots.size() != m.cols()) return false;
  for (std::size_t j = 0; j + 1 < pivots.size(); ++j) {
    if (pivots[j] >= pivots[j + 1]) return false;
  }
  for (std::size_t j = 0; j < m.cols(); ++j) {
    const unsigned s = pivots[j];
    if (s == 0 || s > m.rows()) return false;
    for (std::size_t i = 1; i <= m.rows(); ++i) {
      const std::uint32_t v = m(i - 1, j);
      if (i == s) {
        if (v != 1) return false;
      } else if (std::find(pivots.begin(), pivots.end(), i) != pivots.end() || (anti ? i > s : i < s)) {
        if (v != 0) return false;
      }
    }
  }
  return true;
}

SReduction s_reduce(const FpMatrix& n, bool anti) {
  if (!anti) return s_reduce_straight(n);
  // Anti form: reduce the row-reversed matrix, then restore row order and
  // reverse the columns so the pivots increase again.
  SReduction flipped = s_reduce_straight(reverse_rows(n));
  SReduction out{{}, reverse_cols(reverse_rows(flipped.reduced)), reverse_cols(flipped.transform)};
  const auto rows = static_cast<unsigned>(n.rows());
  for (auto it = flipped.pivots.rbegin(); it != flipped.pivots.rend(); ++it) out.pivots.push_back(rows + 1 - *it);
  return out;
}

bool is_parabolic_member(const FpMatrix& g, const FlagShape& shape) {
  const std::size_t n = shape.n();
  if (g.rows() != n || g.cols() != n) return false;
  const auto e = shape.block_sizes();
  std::vector<std::size_t> block_of(n);
  for (std::size_t b = 0, pos = 0; b < e.size(); ++b) {
    for (unsigned k = 0; k < e[b]; ++k) block_of[pos++] = b;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (block_of[i] > block_of[j] && g(i, j) != 0) return false;
    }
  }
  for (std::size_t b = 0; b < e.size(); ++b) {
    const std::size_t lo = shape.boundary(b);
    FpMatrix diag(g.modulus(), e[b], e[b]);
    for (std::size_t i = 0; i < e[b]; ++i) {
      for (std::size_t j = 0; j < e[b]; ++j) diag.set(i, j, g(lo + i, lo + j));
    }
    if (rank(diag) != e[b]) return false;
  }
  return true;
}

// ------------------------------------------------------------------ cells

OrderedSetPartition::OrderedSetPartition(FlagShape shape, std::vector<std::vector<unsigned>> blocks)
    : shape_(std::move(shape)), blocks_(std::move(blocks)) {
  const auto e = shape_.block_sizes();
  if (blocks_.size() != e.size()) throw ValidationError("partition must have r+1 blocks");
  std::vector<bool> seen(shape_.n() + 1, false);
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (blocks_[i].size() != e[i]) throw ValidationError("block sizes must equal e_i");
    for (std::size_t k = 0; k < blocks_[i].size(); ++k) {
      const unsigned v = blocks_[i][k];
      if (v == 0 || v > shape_.n()) throw ValidationError("block element outside [n]");
      if (k && blocks_[i][k - 1] >= v) throw ValidationError("blocks must be strictly increasing");
      if (seen[v]) throw ValidationError("blocks must be disjoint");
      seen[v] = true;
    }
  }
}

std::vector<unsigned> OrderedSetPartition::as_permutation() const {
  std::vector<unsigned> perm;
  perm.reserve(shape_.n());
  for (const auto& b : blocks_) perm.insert(perm.end(), b.begin(), b.end());
  return perm;
}

std::string OrderedSetPartition::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (i) out << '|';
    out << '{';
    for (std::size_t k = 0; k < blocks_[i].size(); ++k) out << (k ? "," : "") << blocks_[i][k];
    out << '}';
  }
  return out.str();
}

std::uint64_t enumerate_partitions(const FlagShape& shape,
                                   const std::function<void(const OrderedSetPartition&)>& visit,
                                   const Limits& limits) {
  const BigInt total = shape.multinomial();
  if (total > to_big(limits.word_cap)) {
    throw ResourceError("ordered set partitions for " + shape.to_string() + " has " + total.get_str() + " elements, above cap " +
                        std::to_string(limits.word_cap));
  }
  const auto e = shape.block_sizes();
  std::vector<std::vector<unsigned>> blocks;
  std::uint64_t count = 0;
  std::function<void(const std::vector<unsigned>&)> place = [&](const std::vector<unsigned>& pool) {
    if (blocks.size() + 1 == e.size()) {
      blocks.push_back(pool);
      visit(OrderedSetPartition(shape, blocks));
      ++count;
      blocks.pop_back();
      return;
    }
    std::vector<unsigned> chosen;
    combinations(pool, e[blocks.size()], 0, chosen, [&](const std::vector<unsigned>& pick) {
      std::vector<unsigned> rest;
      std::set_difference(pool.begin(), pool.end(), pick.begin(), pick.end(), std::back_inserter(rest));
      blocks.push_back(pick);
      place(rest);
      blocks.pop_back();
    });
  };
  std::vector<unsigned> all(shape.n());
  std::iota(all.begin(), all.end(), 1U);
  place(all);
  return count;
}

SigmaStats sigma_stats(const OrderedSetPartition& sigma) {
  const FlagShape& shape = sigma.shape();
  const unsigned n = shape.n();
  SigmaStats out;
  out.perm = sigma.as_permutation();
  out.mu.resize(n);
  for (std::size_t b = 0; b <= shape.r(); ++b) {
    for (unsigned j = shape.boundary(b); j < shape.boundary(b + 1); ++j) out.mu[j] = static_cast<unsigned>(b + 1);
  }
  out.delta.assign(n, 0);
  for (unsigned j = 0; j < n; ++j) {
    // T(mu(j)): rows not used by positions 1..d_{mu(j)}.
    const unsigned used_upto = shape.boundary(out.mu[j]);
    std::uint64_t count = 0;
    for (unsigned pos = used_upto; pos < n; ++pos) {
      if (out.perm[pos] > out.perm[j]) ++count;
    }
    out.delta[j] = count;
    out.lambda += count;
  }
  return out;
}

std::vector<std::vector<unsigned>> free_rows(const OrderedSetPartition& sigma, bool anti) {
  const FlagShape& shape = sigma.shape();
  const auto perm = sigma.as_permutation();
  const unsigned n = shape.n();
  std::vector<std::vector<unsigned>> out(n);
  std::size_t block = 0;
  for (unsigned j = 0; j < n; ++j) {
    while (j >= shape.boundary(block + 1)) ++block;
    for (unsigned pos = shape.boundary(block + 1); pos < n; ++pos) {
      if (anti ? perm[pos] < perm[j] : perm[pos] > perm[j]) out[j].push_back(perm[pos]);
    }
    std::sort(out[j].begin(), out[j].end());
  }
  return out;
}

std::uint64_t cell_dimension(const OrderedSetPartition& sigma, bool anti) {
  std::uint64_t total = 0;
  for (const auto& rows : free_rows(sigma, anti)) total += rows.size();
  return total;
}

bool matches_cell_pattern(const FpMatrix& a, const OrderedSetPartition& sigma, bool anti) {
  const unsigned n = sigma.shape().n();
  if (a.rows() != n || a.cols() != n) return false;
  const auto perm = sigma.as_permutation();
  const auto free = free_rows(sigma, anti);
  for (unsigned j = 0; j < n; ++j) {
    for (unsigned i = 1; i <= n; ++i) {
      const std::uint32_t v = a(i - 1, j);
      if (i == perm[j]) {
        if (v != 1) return false;
      } else if (!std::binary_search(free[j].begin(), free[j].end(), i) && v != 0) {
        return false;
      }
    }
  }
  return true;
}

CellDecomposition cell_form(const FpMatrix& a, const FlagShape& shape, bool anti) {
  const unsigned n = shape.n();
  if (a.rows() != n || a.cols() != n) throw ValidationError("cell_form: matrix must be n x n");
  if (rank(a) != n) throw ValidationError("cell_form: matrix is singular");
  const std::uint32_t p = a.modulus();
  FpMatrix b(p, n, n);
  std::vector<std::vector<unsigned>> blocks;
  for (std::size_t m = 0; m <= shape.r(); ++m) {
    const unsigned lo = shape.boundary(m);
    const unsigned width = shape.boundary(m + 1) - lo;
    FpMatrix c = a.columns(lo, width);
    // Clear the pivot rows of earlier blocks using those blocks' columns,
    // oldest block first; later blocks vanish on earlier pivot rows.
    for (std::size_t t = 0; t < m; ++t) {
      const unsigned tlo = shape.boundary(t);
      for (std::size_t k = 0; k < blocks[t].size(); ++k) {
        const unsigned row = blocks[t][k] - 1;
        const std::size_t bcol = tlo + k;
        for (unsigned col = 0; col < width; ++col) {
          const std::uint32_t f = c(row, col);
          if (f == 0) continue;
          for (unsigned i = 0; i < n; ++i) {
            c.set(i, col, static_cast<long>(c(i, col)) - static_cast<long>(std::uint64_t{f} * b(i, bcol) % p));
          }
        }
      }
    }
    SReduction red = s_reduce(c, anti);
    for (unsigned i = 0; i < n; ++i) {
      for (unsigned col = 0; col < width; ++col) b.set(i, lo + col, red.reduced(i, col));
    }
    blocks.push_back(std::move(red.pivots));
  }
  FpMatrix g = mat_mul(mat_inverse(a), b);
  return {CellForm{OrderedSetPartition(shape, std::move(blocks)), std::move(b), anti}, std::move(g)};
}

MultisetWord theta_word(const OrderedSetPartition& sigma) {
  const SigmaStats st = sigma_stats(sigma);
  const unsigned n = sigma.shape().n();
  std::vector<unsigned> letters(n);
  for (unsigned i = 0; i < n; ++i) letters[n - st.perm[i]] = st.mu[i];
  return MultisetWord(sigma.shape(), std::move(letters));
}

MultisetWord row_block_word(const OrderedSetPartition& sigma) {
  const SigmaStats st = sigma_stats(sigma);
  const unsigned n = sigma.shape().n();
  std::vector<unsigned> letters(n);
  for (unsigned j = 0; j < n; ++j) letters[st.perm[j] - 1] = st.mu[j];
  return MultisetWord(sigma.shape(), std::move(letters));
}

IntPoly cell_sum_poly(const FlagShape& shape, bool anti, const Limits& limits) {
  std::vector<BigInt> hist;
  enumerate_partitions(
      shape,
      [&](const OrderedSetPartition& sigma) {
        const std::uint64_t dim = cell_dimension(sigma, anti);
        if (hist.size() <= dim) hist.resize(dim + 1);
        hist[dim] += 1;
      },
      limits);
  return IntPoly(std::move(hist));
}

OrderedSetPartition tau_for_lambda(unsigned n, unsigned d1, std::uint64_t k) {
  if (d1 == 0 || d1 >= n) throw ValidationError("tau_for_lambda requires 1 <= d1 < n");
  const unsigned e1 = d1;
  const unsigned e2 = n - d1;
  if (k > std::uint64_t{e1} * e2) {
    throw ValidationError("k = " + std::to_string(k) + " outside [0, " + std::to_string(std::uint64_t{e1} * e2) + "]");
  }
  const auto a = static_cast<unsigned>(k / e2);
  const auto b = static_cast<unsigned>(k % e2);
  std::vector<unsigned> first;
  if (a == e1) {
    for (unsigned j = 1; j <= e1; ++j) first.push_back(j);
  } else {
    for (unsigned j = 1; j <= a; ++j) first.push_back(j);
    for (unsigned j = 0; j + a + 2 <= e1; ++j) first.push_back(n - j);
    first.push_back(n - e1 + a + 1 - b);
  }
  std::sort(first.begin(), first.end());
  std::vector<unsigned> second;
  for (unsigned j = 1; j <= n; ++j) {
    if (!std::binary_search(first.begin(), first.end(), j)) second.push_back(j);
  }
  return OrderedSetPartition(FlagShape(n, {d1}), {std::move(first), std::move(second)});
}

// ------------------------------------------------------------------ flags

std::string Flag::to_string() const {
  std::string out;
  for (std::size_t m = 0; m < bases.size(); ++m) {
    if (m) out += " | ";
    out += bases[m].to_string();
  }
  return out;
}

Flag phi_flag(const FpMatrix& a, const FlagShape& shape) {
  if (a.rows() != shape.n() || a.cols() != shape.n()) throw ValidationError("phi_flag: matrix must be n x n");
  if (rank(a) != shape.n()) throw ValidationError("phi_flag: matrix is singular");
  Flag flag{shape, a.modulus(), {}};
  for (unsigned dm : shape.d()) flag.bases.push_back(s_reduce(a.columns(0, dm)).reduced);
  return flag;
}

namespace {

// Every s-reduced n x k matrix over F_p, i.e. one canonical basis per
// k-dimensional subspace.
std::vector<FpMatrix> canonical_subspaces(unsigned n, unsigned k, std::uint32_t p) {
  std::vector<FpMatrix> out;
  std::vector<unsigned> rows(n);
  std::iota(rows.begin(), rows.end(), 1U);
  std::vector<unsigned> chosen;
  combinations(rows, k, 0, chosen, [&](const std::vector<unsigned>& pivots) {
    FpMatrix base = selector_matrix(p, n, pivots);
    std::vector<std::pair<unsigned, unsigned>> free;  // (row index, column)
    for (unsigned j = 0; j < k; ++j) {
      for (unsigned i = pivots[j] + 1; i <= n; ++i) {
        if (!std::binary_search(pivots.begin(), pivots.end(), i)) free.emplace_back(i - 1, j);
      }
    }
    std::vector<std::uint32_t> digits(free.size(), 0);
    while (true) {
      FpMatrix m = base;
      for (std::size_t f = 0; f < free.size(); ++f) m.set(free[f].first, free[f].second, digits[f]);
      out.push_back(std::move(m));
      std::size_t f = 0;
      while (f < digits.size() && ++digits[f] == p) digits[f++] = 0;
      if (f == digits.size()) break;
    }
  });
  return out;
}

}  // namespace

std::uint64_t enumerate_flags(const FlagShape& shape, std::uint32_t p, const std::function<void(const Flag&)>& visit,
                              const Limits& limits) {
  if (!is_prime(p)) throw ValidationError("modulus " + std::to_string(p) + " is not prime");
  if (int_pow(p, shape.n()) > to_big(limits.field_vector_cap)) {
    throw ResourceError("flag enumeration over F_" + std::to_string(p) + "^" + std::to_string(shape.n()) +
                        " exceeds vector cap " + std::to_string(limits.field_vector_cap));
  }
  std::vector<std::vector<FpMatrix>> levels;
  for (unsigned dm : shape.d()) levels.push_back(canonical_subspaces(shape.n(), dm, p));

  std::uint64_t count = 0;
  Flag flag{shape, p, {}};
  std::function<void(std::size_t)> extend = [&](std::size_t m) {
    if (m == levels.size()) {
      visit(flag);
      ++count;
      return;
    }
    for (const FpMatrix& v : levels[m]) {
      if (m > 0 && rank(hconcat(flag.bases.back(), v)) != v.cols()) continue;
      flag.bases.push_back(v);
      extend(m + 1);
      flag.bases.pop_back();
    }
  };
  extend(0);
  return count;
}

BigInt gl_order(unsigned n, std::uint32_t p) {
  BigInt total = 1;
  const BigInt top = int_pow(p, n);
  for (unsigned i = 0; i < n; ++i) total *= top - int_pow(p, i);
  return total;
}

BigInt parabolic_order(const FlagShape& shape, std::uint32_t p) {
  const auto e = shape.block_sizes();
  BigInt total = 1;
  for (unsigned ei : e) total *= gl_order(ei, p);
  return total * int_pow(p, shape.nu());
}

BigInt flag_count_group_formula(const FlagShape& shape, std::uint32_t p) {
  if (!is_prime(p)) throw ValidationError("modulus " + std::to_string(p) + " is not prime");
  const BigInt g = gl_order(shape.n(), p);
  const BigInt par = parabolic_order(shape, p);
  if (!mpz_divisible_p(g.get_mpz_t(), par.get_mpz_t())) throw std::logic_error("|P| does not divide |GL|");
  return g / par;
}

std::uint64_t enumerate_gl(unsigned n, std::uint32_t p, const std::function<void(const FpMatrix&)>& visit,
                           const Limits& limits) {
  if (!is_prime(p)) throw ValidationError("modulus " + std::to_string(p) + " is not prime");
  if (gl_order(n, p) > to_big(limits.word_cap)) throw ResourceError("GL enumeration exceeds cap");
  std::uint64_t count = 0;
  if (p == 2 && n <= 4) {
    // Rejection over all 2^(n*n) matrices.
    const std::uint64_t total = 1ULL << (n * n);
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      FpMatrix m(p, n, n);
      for (unsigned b = 0; b < n * n; ++b) m.set(b / n, b % n, (mask >> b) & 1U);
      if (rank(m) == n) {
        visit(m);
        ++count;
      }
    }
    return count;
  }
  // Row by row, each new row independent of the rows already placed.
  const std::uint64_t vectors = int_pow(p, n).get_ui();
  FpMatrix m(p, n, n);
  std::function<void(unsigned)> place = [&](unsigned row) {
    if (row == n) {
      visit(m);
      ++count;
      return;
    }
    for (std::uint64_t code = 0; code < vectors; ++code) {
      std::uint64_t c = code;
      for (unsigned j = 0; j < n; ++j) {
        m.set(row, j, static_cast<long>(c % p));
        c /= p;
      }
      FpMatrix head(p, row + 1, n);
      for (unsigned i = 0; i <= row; ++i) {
        for (unsigned j = 0; j < n; ++j) head.set(i, j, m(i, j));
      }
      if (rank(head) == row + 1) place(row + 1);
    }
    for (unsigned j = 0; j < n; ++j) m.set(row, j, 0);
  };
  place(0);
  return count;
}

FpMatrix random_gl(unsigned n, std::uint32_t p, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> entry(0, p - 1);
  while (true) {
    FpMatrix m(p, n, n);
    for (unsigned i = 0; i < n; ++i) {
      for (unsigned j = 0; j < n; ++j) m.set(i, j, entry(rng));
    }
    if (rank(m) == n) return m;
  }
}

FpMatrix random_parabolic(const FlagShape& shape, std::uint32_t p, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> entry(0, p - 1);
  const unsigned n = shape.n();
  FpMatrix g(p, n, n);
  for (std::size_t b = 0; b <= shape.r(); ++b) {
    const unsigned lo = shape.boundary(b);
    const unsigned hi = shape.boundary(b + 1);
    const FpMatrix diag = random_gl(hi - lo, p, rng);
    for (unsigned i = lo; i < hi; ++i) {
      for (unsigned j = lo; j < hi; ++j) g.set(i, j, diag(i - lo, j - lo));
      for (unsigned j = hi; j < n; ++j) g.set(i, j, entry(rng));
    }
  }
  return g;
}

}  // namespace qflag
