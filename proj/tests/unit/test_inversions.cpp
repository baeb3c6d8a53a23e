#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qflag/error.hpp"
#include "qflag/inversions.hpp"

using namespace qflag;

namespace {

std::vector<BigInt> big(const oracle::Coeffs& c) {
  std::vector<BigInt> v;
  for (long long x : c) v.emplace_back(static_cast<long>(x));
  return v;
}

std::vector<BigInt> big(std::initializer_list<long> c) {
  std::vector<BigInt> v;
  for (long x : c) v.emplace_back(x);
  return v;
}

}  // namespace

TEST_SUITE("inversions") {
  TEST_CASE("word validation and rendering") {
    const FlagShape s(3, {2});
    CHECK(MultisetWord(s, {1, 2, 1}).to_string() == "121");
    CHECK_THROWS_AS(MultisetWord(s, {1, 2, 2}), ValidationError);
    CHECK_THROWS_AS(MultisetWord(s, {1, 1}), ValidationError);
    CHECK_THROWS_AS(MultisetWord(s, {1, 3, 1}), ValidationError);
  }

  TEST_CASE("word stream order and size") {
    WordStream ws(FlagShape(3, {2}));
    CHECK(ws.size() == 3);
    std::vector<std::string> got;
    while (auto w = ws.next()) got.push_back(w->to_string());
    CHECK(got == std::vector<std::string>{"112", "121", "211"});
    CHECK(WordStream(FlagShape(2, {1})).size() == 2);
    CHECK(WordStream(FlagShape(4, {2})).size() == 6);
    Limits tight;
    tight.word_cap = 5;
    CHECK_THROWS_AS(WordStream(FlagShape(4, {2}), tight), ResourceError);
  }

  TEST_CASE("inversion counts") {
    const std::vector<unsigned> w{2, 1, 1};
    CHECK(inversion_count_naive(w) == 2);
    CHECK(inversion_count_merge(w) == 2);
    const std::vector<unsigned> sorted{1, 1, 2, 3, 3};
    CHECK(inversion_count_merge(sorted) == 0);
    const FlagShape s(7, {2, 4});
    CHECK(inversion_count(MultisetWord(s, {3, 3, 3, 2, 2, 1, 1})) == s.nu());
    std::mt19937 rng(11);
    for (int t = 0; t < 500; ++t) {
      std::vector<unsigned> r(rng() % 40);
      for (auto& x : r) x = 1 + rng() % 5;
      CHECK(inversion_count_merge(r) == oracle::inversions(r));
    }
  }

  TEST_CASE("enumerated distribution") {
    CHECK(inversion_distribution_oracle(FlagShape(3, {2})) == IntPoly{1, 1, 1});
    CHECK(inversion_distribution_oracle(FlagShape::full(3)) == IntPoly{1, 2, 2, 1});
    CHECK(inversion_distribution_oracle(FlagShape(2, {1})) == IntPoly{1, 1});
    const FlagShape s(7, {2, 5});
    CHECK(inversion_distribution_oracle(s, {}, 4) == inversion_distribution_oracle(s, {}, 1));
  }

  TEST_CASE("tables agree with a direct permutation histogram") {
    for (unsigned n = 1; n <= 7; ++n) {
      for (const auto& s : FlagShape::all_of_size(n)) {
        CHECK(mahonian_table(s).counts == big(oracle::inversion_histogram(s.block_sizes())));
      }
    }
  }

  TEST_CASE("published Mahonian values") {
    const auto t = mahonian_table(FlagShape(7, {2, 4})).counts;
    CHECK(std::vector<BigInt>(t.begin(), t.begin() + 5) == big({1, 2, 5, 8, 13}));
    const auto i10 = full_mahonian(10).counts;
    CHECK(i10[12] == 47043);
    CHECK(i10[20] == 230131);
    CHECK(full_mahonian(3).counts == big({1, 2, 2, 1}));
    for (unsigned n = 1; n <= 10; ++n) CHECK(full_mahonian(n).counts[0] == 1);
  }

  TEST_CASE("refinement recurrence") {
    const FlagShape s(7, {2, 4});
    const auto trivial = refinement_recurrence(s, s);
    CHECK(trivial.convolver == big({1}));
    CHECK(trivial.table.counts == mahonian_table(s).counts);
    const auto full = refinement_recurrence(s, FlagShape::full(7));
    CHECK(full.table.counts == mahonian_table(s).counts);
    CHECK(full.block_shapes.size() == 3);
    CHECK_THROWS_AS(refinement_recurrence(s, FlagShape(7, {3})), ValidationError);
    for (unsigned n = 1; n <= 6; ++n) {
      for (const auto& coarse : FlagShape::all_of_size(n)) {
        for (const auto& fine : FlagShape::all_of_size(n)) {
          if (!coarse.is_refined_by(fine)) continue;
          CHECK(refinement_recurrence(coarse, fine).table.counts == mahonian_table(coarse).counts);
        }
      }
    }
  }

  TEST_CASE("upper and lower bounds") {
    CHECK(inv_bounds(FlagShape(5, {1, 2}), 6).upper == Rational(104));
    CHECK(inv_bounds(FlagShape(5, {1, 2, 3}), 6).upper == Rational(77));
    CHECK(inv_bounds(FlagShape(5, {2}), 6).upper < Rational(84));
    CHECK(inv_bounds(FlagShape(5, {2}), 6).upper == Rational(BigInt(1001), BigInt(12)));
    const FlagShape one(10, {1});
    CHECK(inv_bounds(one, 12).upper == Rational(BigInt(8141213783L), BigInt(181440)));
    CHECK(inv_bounds(one, 12).upper < Rational(44871));
    CHECK(inv_bounds(one, 20).upper < Rational(182032));
    for (unsigned n = 2; n <= 6; ++n) {
      for (const auto& s : FlagShape::all_of_size(n)) {
        const auto t = mahonian_table(s).counts;
        for (std::uint64_t k = 0; k < t.size(); ++k) {
          const auto b = inv_bounds(s, k);
          CHECK(b.lower <= Rational(t[k]));
          CHECK(Rational(t[k]) <= b.upper);
        }
      }
    }
  }

  TEST_CASE("log-concavity scan") {
    CHECK(log_concavity_scan(big({1, 2, 5, 8, 13})) == std::vector<std::size_t>{1, 3});
    CHECK(log_concavity_scan(big({4, 4, 4, 4})).empty());
    CHECK(log_concavity_scan(big({1, 2})).empty());
    for (unsigned n = 2; n <= 10; ++n) CHECK(log_concavity_scan(full_mahonian(n).counts).empty());
    const auto t = mahonian_table(FlagShape(7, {2, 4})).counts;
    CHECK(log_concavity_scan(t) == std::vector<std::size_t>{1, 3, 13, 15});
  }
}
