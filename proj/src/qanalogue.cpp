#include "qflag/qanalogue.hpp"

#include <sstream>

namespace qflag {

FlagShape::FlagShape(unsigned n, std::vector<unsigned> d) : n_(n), d_(std::move(d)) {
  if (n_ == 0) throw ValidationError("n must be positive");
  unsigned prev = 0;
  for (unsigned v : d_) {
    if (v <= prev) throw ValidationError("d must be a strictly increasing sequence of positive integers");
    if (v >= n_) {
      throw ValidationError("d entries must be < n (got " + std::to_string(v) + " with n=" + std::to_string(n_) + ")");
    }
    prev = v;
  }
}

FlagShape FlagShape::full(unsigned n) {
  std::vector<unsigned> d;
  for (unsigned i = 1; i < n; ++i) d.push_back(i);
  return FlagShape(n, std::move(d));
}

std::vector<FlagShape> FlagShape::all_of_size(unsigned n) {
  if (n == 0) throw ValidationError("n must be positive");
  if (n > 31) throw ResourceError("too many shapes to list");
  std::vector<FlagShape> out;
  const std::uint32_t count = 1U << (n - 1);
  out.reserve(count);
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    std::vector<unsigned> d;
    for (unsigned i = 1; i < n; ++i) {
      if (mask & (1U << (i - 1))) d.push_back(i);
    }
    out.emplace_back(n, std::move(d));
  }
  return out;
}

unsigned FlagShape::boundary(std::size_t i) const {
  if (i == 0) return 0;
  if (i == d_.size() + 1) return n_;
  if (i > d_.size() + 1) throw ValidationError("boundary index out of range");
  return d_[i - 1];
}

std::vector<unsigned> FlagShape::block_sizes() const {
  std::vector<unsigned> e;
  e.reserve(d_.size() + 1);
  for (std::size_t i = 1; i <= d_.size() + 1; ++i) e.push_back(boundary(i) - boundary(i - 1));
  return e;
}

std::uint64_t FlagShape::nu() const {
  std::uint64_t total = 0;
  std::uint64_t before = 0;
  for (unsigned e : block_sizes()) {
    total += before * e;
    before += e;
  }
  return total;
}

std::uint64_t FlagShape::eta() const {
  std::uint64_t total = 0;
  for (unsigned e : block_sizes()) total += std::uint64_t{e} * (e - 1) / 2;
  return total;
}

BigInt FlagShape::block_factorial_product() const {
  BigInt p = 1;
  for (unsigned e : block_sizes()) p *= factorial(e);
  return p;
}

BigInt FlagShape::multinomial() const { return factorial(n_) / block_factorial_product(); }

bool FlagShape::is_refined_by(const FlagShape& finer) const {
  if (finer.n_ != n_) return false;
  std::size_t j = 0;
  for (unsigned v : d_) {
    while (j < finer.d_.size() && finer.d_[j] < v) ++j;
    if (j == finer.d_.size() || finer.d_[j] != v) return false;
  }
  return true;
}

std::string FlagShape::to_string() const {
  std::ostringstream out;
  out << "n=" << n_ << " d=(";
  for (std::size_t i = 0; i < d_.size(); ++i) out << (i ? "," : "") << d_[i];
  out << ")";
  return out.str();
}

// ----------------------------------------------------------------------

IntPoly q_int(unsigned n) {
  return IntPoly(std::vector<BigInt>(n, BigInt(1)));
}

IntPoly q_factorial(unsigned n) {
  IntPoly acc = IntPoly::constant(1);
  for (unsigned m = 2; m <= n; ++m) acc = poly_mul(acc, q_int(m));
  return acc;
}

IntPoly q_binomial(unsigned n, unsigned e) {
  if (e > n) throw ValidationError("q_binomial requires 0 <= e <= n");
  // row[j] holds binom(m, j)_x for the current m; updated downward in j so
  // that row[j-1] still refers to m-1 when it is read.
  std::vector<IntPoly> row(e + 1);
  row[0] = IntPoly::constant(1);
  for (unsigned m = 1; m <= n; ++m) {
    for (unsigned j = std::min(m, e); j >= 1; --j) {
      row[j] = poly_add(row[j - 1], poly_shift(row[j], j));
    }
  }
  return row[e];
}

IntPoly q_binomial_quotient_form(unsigned n, unsigned e) {
  if (e > n) throw ValidationError("q_binomial requires 0 <= e <= n");
  return poly_exact_divide(q_factorial(n), poly_mul(q_factorial(e), q_factorial(n - e)));
}

IntPoly q_multinomial(const FlagShape& shape) {
  IntPoly acc = IntPoly::constant(1);
  const auto e = shape.block_sizes();
  for (std::size_t i = 1; i <= shape.r(); ++i) {
    acc = poly_mul(acc, q_binomial(shape.n() - shape.boundary(i - 1), e[i - 1]));
  }
  return acc;
}

BigInt partition_count(unsigned max_part, unsigned max_parts, std::int64_t m) {
  if (m < 0) return 0;
  if (static_cast<std::uint64_t>(m) > std::uint64_t{max_part} * max_parts) return 0;
  const auto target = static_cast<std::size_t>(m);
  // table[s][k] = partitions of k into at most s parts, parts <= current bound.
  // Bound 0: only the empty partition.
  std::vector<std::vector<BigInt>> table(max_parts + 1, std::vector<BigInt>(target + 1));
  for (auto& row : table) row[0] = 1;
  for (unsigned bound = 1; bound <= max_part; ++bound) {
    // p(b, s, k) = p(b-1, s, k) + p(b, s-1, k-b); increasing s reads the
    // already-updated row s-1.
    for (unsigned s = 1; s <= max_parts; ++s) {
      for (std::size_t k = bound; k <= target; ++k) table[s][k] += table[s - 1][k - bound];
    }
  }
  return table[max_parts][target];
}

namespace {

void visit_multisets(unsigned smallest, unsigned max_element, unsigned slots_left, std::size_t sum,
                     std::vector<BigInt>& hist, std::uint64_t& count) {
  if (hist.size() <= sum) hist.resize(sum + 1);
  hist[sum] += 1;
  ++count;
  if (slots_left == 0) return;
  for (unsigned v = smallest; v <= max_element; ++v) {
    visit_multisets(v, max_element, slots_left - 1, sum + v, hist, count);
  }
}

}  // namespace

MultisetSum multiset_sum_poly(unsigned max_element, unsigned max_size, const Limits& limits) {
  const BigInt total = binomial(max_element + max_size, max_element);
  if (total > to_big(limits.word_cap)) {
    throw ResourceError("multiset enumeration of " + total.get_str() + " multisets exceeds cap " +
                        std::to_string(limits.word_cap));
  }
  std::vector<BigInt> hist;
  std::uint64_t count = 0;
  visit_multisets(1, max_element, max_size, 0, hist, count);
  return {IntPoly(std::move(hist)), count};
}

}  // namespace qflag
