#include "qflag/inversions.hpp"

#include <algorithm>
#include <thread>

namespace qflag {

namespace {

std::vector<unsigned> sorted_letters(const FlagShape& shape) {
  std::vector<unsigned> letters;
  letters.reserve(shape.n());
  const auto e = shape.block_sizes();
  for (std::size_t i = 0; i < e.size(); ++i) letters.insert(letters.end(), e[i], static_cast<unsigned>(i + 1));
  return letters;
}

std::uint64_t checked_word_count(const FlagShape& shape, const Limits& limits) {
  const BigInt total = shape.multinomial();
  if (total > to_big(limits.word_cap)) {
    throw ResourceError("S(M) for " + shape.to_string() + " has " + total.get_str() + " words, above cap " +
                        std::to_string(limits.word_cap));
  }
  return total.get_ui();
}

std::uint64_t merge_count(std::vector<unsigned>& v, std::vector<unsigned>& scratch, std::size_t lo,
                          std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::uint64_t count = merge_count(v, scratch, lo, mid) + merge_count(v, scratch, mid, hi);
  std::size_t i = lo;
  std::size_t j = mid;
  std::size_t k = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      count += mid - i;
      scratch[k++] = v[j++];
    } else {
      scratch[k++] = v[i++];
    }
  }
  while (i < mid) scratch[k++] = v[i++];
  while (j < hi) scratch[k++] = v[j++];
  std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo), scratch.begin() + static_cast<std::ptrdiff_t>(hi),
            v.begin() + static_cast<std::ptrdiff_t>(lo));
  return count;
}

void add_to_histogram(std::vector<BigInt>& hist, std::uint64_t k) {
  if (hist.size() <= k) hist.resize(k + 1);
  hist[k] += 1;
}

}  // namespace

MultisetWord::MultisetWord(FlagShape shape, std::vector<unsigned> letters)
    : shape_(std::move(shape)), letters_(std::move(letters)) {
  if (letters_.size() != shape_.n()) throw ValidationError("word length must equal n");
  const auto e = shape_.block_sizes();
  std::vector<unsigned> seen(e.size());
  for (unsigned c : letters_) {
    if (c == 0 || c > e.size()) throw ValidationError("letter " + std::to_string(c) + " outside 1..r+1");
    ++seen[c - 1];
  }
  if (seen != e) throw ValidationError("letter multiplicities do not match the block sizes");
}

std::string MultisetWord::to_string() const {
  const bool compact = shape_.r() + 1 < 10;
  std::string out;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (!compact && i) out += ',';
    out += std::to_string(letters_[i]);
  }
  return out;
}

WordStream::WordStream(const FlagShape& shape, const Limits& limits)
    : shape_(shape), current_(sorted_letters(shape)), size_(checked_word_count(shape, limits)) {}

std::optional<MultisetWord> WordStream::next() {
  if (done_) return std::nullopt;
  MultisetWord out(shape_, current_);
  done_ = !std::next_permutation(current_.begin(), current_.end());
  return out;
}

std::uint64_t inversion_count_naive(std::span<const unsigned> word) {
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < word.size(); ++i) {
    for (std::size_t j = i + 1; j < word.size(); ++j) {
      if (word[i] > word[j]) ++count;
    }
  }
  return count;
}

std::uint64_t inversion_count_merge(std::span<const unsigned> word) {
  std::vector<unsigned> v(word.begin(), word.end());
  std::vector<unsigned> scratch(v.size());
  return merge_count(v, scratch, 0, v.size());
}

IntPoly inversion_distribution_oracle(const FlagShape& shape, const Limits& limits, unsigned jobs) {
  checked_word_count(shape, limits);
  const std::vector<unsigned> letters = sorted_letters(shape);
  const unsigned alphabet = static_cast<unsigned>(shape.r() + 1);

  // Words starting with letter `lead`: the lead contributes one inversion per
  // smaller letter behind it; the tail runs over the remaining multiset.
  auto histogram_for_lead = [&](unsigned lead) {
    std::vector<BigInt> hist;
    std::vector<unsigned> tail = letters;
    tail.erase(std::find(tail.begin(), tail.end(), lead));
    const auto smaller = static_cast<std::uint64_t>(std::count_if(tail.begin(), tail.end(),
                                                                  [lead](unsigned c) { return c < lead; }));
    do {
      add_to_histogram(hist, smaller + inversion_count_naive(tail));
    } while (std::next_permutation(tail.begin(), tail.end()));
    return hist;
  };

  std::vector<std::vector<BigInt>> parts(alphabet);
  if (jobs <= 1 || alphabet == 1) {
    for (unsigned lead = 1; lead <= alphabet; ++lead) parts[lead - 1] = histogram_for_lead(lead);
  } else {
    std::vector<std::thread> workers;
    const unsigned width = std::min(jobs, alphabet);
    for (unsigned w = 0; w < width; ++w) {
      workers.emplace_back([&, w] {
        for (unsigned lead = w + 1; lead <= alphabet; lead += width) parts[lead - 1] = histogram_for_lead(lead);
      });
    }
    for (auto& t : workers) t.join();
  }

  std::vector<BigInt> total;
  for (const auto& part : parts) {
    if (total.size() < part.size()) total.resize(part.size());
    for (std::size_t k = 0; k < part.size(); ++k) total[k] += part[k];
  }
  return IntPoly(std::move(total));
}

MahonianTable mahonian_table(const FlagShape& shape) {
  std::vector<BigInt> counts = q_multinomial(shape).coeffs();
  counts.resize(shape.nu() + 1);
  return {shape, std::move(counts)};
}

MahonianTable full_mahonian(unsigned n) {
  IntPoly acc = IntPoly::constant(1);
  for (unsigned m = 2; m <= n; ++m) acc = poly_mul(acc, q_int(m));
  return {FlagShape::full(n), acc.coeffs()};
}

RefinementResult refinement_recurrence(const FlagShape& shape, const FlagShape& refined) {
  if (!shape.is_refined_by(refined)) {
    throw ValidationError(refined.to_string() + " is not a refinement of " + shape.to_string());
  }
  RefinementResult out{{}, {BigInt(1)}, {shape, {}}};
  const auto e = shape.block_sizes();
  for (std::size_t i = 1; i <= e.size(); ++i) {
    const unsigned lo = shape.boundary(i - 1);
    const unsigned hi = shape.boundary(i);
    std::vector<unsigned> inner;
    for (unsigned v : refined.d()) {
      if (v > lo && v < hi) inner.push_back(v - lo);
    }
    FlagShape block(e[i - 1], std::move(inner));
    // Summing prod_i I_{e_i}(d[i]*; j_i) over j in A_m is the m-th
    // coefficient of the product of the block tables.
    out.convolver = convolve(out.convolver, mahonian_table(block).counts);
    out.block_shapes.push_back(std::move(block));
  }

  const std::vector<BigInt> fine = mahonian_table(refined).counts;
  std::vector<BigInt> recovered(fine.size());
  for (std::size_t k = 0; k < fine.size(); ++k) {
    BigInt value = fine[k];
    for (std::size_t m = 1; m <= k && m < out.convolver.size(); ++m) value -= out.convolver[m] * recovered[k - m];
    recovered[k] = std::move(value);
  }
  const std::size_t len = shape.nu() + 1;
  for (std::size_t k = len; k < recovered.size(); ++k) {
    if (recovered[k] != 0) throw std::logic_error("refinement recurrence left a nonzero tail");
  }
  recovered.resize(len);
  out.table.counts = std::move(recovered);
  return out;
}

RationalBounds inv_bounds(const FlagShape& shape, std::uint64_t k) {
  const unsigned n = shape.n();
  const PsiTable psi_n(n);
  const std::int64_t nm1 = n - 1;
  const auto eta = static_cast<std::int64_t>(shape.eta());
  const auto kk = static_cast<std::int64_t>(k);
  BigInt lower = 0;
  BigInt upper = 0;
  for (std::int64_t i = 0; i <= kk; ++i) {
    const BigInt p = psi_n.at(i);
    if (p > 0) {
      lower += p * generalized_binomial(nm1 + kk - i, nm1);
      upper += p * generalized_binomial(nm1 + eta + kk - i, nm1);
    } else if (p < 0) {
      lower += p * generalized_binomial(nm1 + eta + kk - i, nm1);
      upper += p * generalized_binomial(nm1 + kk - i, nm1);
    }
  }
  const BigInt denom = shape.block_factorial_product();
  return {Rational(lower, denom), Rational(upper, denom)};
}

std::vector<std::size_t> log_concavity_scan(std::span<const BigInt> seq) {
  std::vector<std::size_t> failures;
  for (std::size_t k = 1; k + 1 < seq.size(); ++k) {
    if (seq[k] * seq[k] < seq[k - 1] * seq[k + 1]) failures.push_back(k);
  }
  return failures;
}

}  // namespace qflag
