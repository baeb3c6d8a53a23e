#include <doctest.h>

#include "oracles.hpp"
#include "qflag/denumerant.hpp"
#include "qflag/error.hpp"
#include "qflag/inversions.hpp"

using namespace qflag;

namespace {

const PsiMethod kMethods[] = {PsiMethod::FnCoefficients, PsiMethod::SubsetOracle, PsiMethod::ExpLog};

}  // namespace

TEST_SUITE("denumerant") {
  TEST_CASE("weight vectors") {
    CHECK_THROWS_AS(WeightVector({}), ValidationError);
    CHECK_THROWS_AS(WeightVector({1, 0}), ValidationError);
    CHECK_THROWS_AS(WeightVector({1, -2}), ValidationError);
    CHECK(WeightVector({4, 6, 3}).lcm() == 12);
    CHECK(WeightVector::range(3) == WeightVector({1, 2, 3}));
    CHECK(WeightVector::ones(2) == WeightVector({1, 1}));
  }

  TEST_CASE("denumerants") {
    CHECK(denumerant(WeightVector({1, 2}), 4) == 3);
    CHECK(denumerant(WeightVector({5, 7}), 0) == 1);
    CHECK(denumerant(WeightVector({5, 7}), -3) == 0);
    for (unsigned n = 1; n <= 6; ++n) {
      for (long m = 0; m <= 30; ++m) CHECK(denumerant(WeightVector::ones(n), m) == binomial(n - 1 + m, n - 1));
    }
    const std::vector<long> w{3, 5, 6};
    for (long m = 0; m <= 50; ++m) CHECK(denumerant(WeightVector(w), m) == static_cast<long>(oracle::representations(w, m)));
  }

  TEST_CASE("epsilon weights") {
    CHECK(epsilon_weights(FlagShape(4, {2})) == WeightVector({1, 2, 1, 2}));
    CHECK(epsilon_weights(FlagShape(4, {})) == WeightVector({1, 2, 3, 4}));
    CHECK(epsilon_weights(FlagShape::full(4)) == WeightVector::ones(4));
  }

  TEST_CASE("psi examples") {
    CHECK(psi(6, 5) == 1);
    CHECK(psi(6, 6) == 0);
    CHECK(psi(6, 7) == 2);
    CHECK(psi(6, 0) == 1);
    CHECK(psi(6, -1) == 0);
    CHECK(psi(6, 22) == 0);
    CHECK(psi(6, 21) == 1);
    CHECK(psi(5, 1, PsiMethod::Pentagonal) == -1);
    CHECK(psi(5, 2, PsiMethod::Pentagonal) == -1);
    CHECK(psi(5, 3, PsiMethod::Pentagonal) == 0);
    CHECK(psi(5, 4, PsiMethod::Pentagonal) == 0);
    CHECK(psi(5, 5, PsiMethod::Pentagonal) == 1);
    CHECK_THROWS_AS(psi(5, 0, PsiMethod::Pentagonal), ValidationError);
    CHECK_THROWS_AS(psi(5, 6, PsiMethod::Pentagonal), ValidationError);
    CHECK(std::string(to_string(PsiMethod::ExpLog)) == "explog");
  }

  TEST_CASE("psi methods agree with a subset count up to n = 12") {
    for (unsigned n = 1; n <= 12; ++n) {
      const PsiTable table(n);
      CHECK(table.top() == n * (n + 1) / 2);
      for (long r = 0; r <= static_cast<long>(table.top()); ++r) {
        const BigInt want(static_cast<long>(oracle::signed_subsets(n, r)));
        CHECK(table.at(r) == want);
        for (auto m : kMethods) CHECK(psi(n, r, m) == want);
        if (r >= 1 && r <= static_cast<long>(n)) CHECK(psi(n, r, PsiMethod::Pentagonal) == want);
      }
    }
  }

  TEST_CASE("subset oracle respects its cap") {
    Limits tight;
    tight.subset_cap = 16;
    CHECK_THROWS_AS(psi(5, 3, PsiMethod::SubsetOracle, tight), ResourceError);
  }

  TEST_CASE("restricted divisor sums") {
    CHECK(restricted_divisor_sum(5, 6) == 6);
    CHECK(restricted_divisor_sum(1, 17) == 1);
    for (unsigned n = 1; n <= 9; ++n) {
      CHECK(restricted_divisor_sum(n, 1) == 1);
      for (std::uint64_t k = 1; k <= 40; ++k) {
        long want = 0;
        for (unsigned d = 1; d <= n; ++d) want += (k % d == 0) ? d : 0;
        CHECK(restricted_divisor_sum(n, k) == want);
        CHECK(restricted_divisor_sum_floor_form(n, k) == want);
      }
    }
    CHECK_THROWS_AS(restricted_divisor_sum(3, 0), ValidationError);
  }

  TEST_CASE("signed subset identity") {
    CHECK(signed_subset_identity_check(0, WeightVector({2, 3}), 10));
    CHECK(signed_subset_identity_check(2, WeightVector({1, 2, 3}), 20));
    CHECK(signed_subset_identity_check(3, WeightVector::ones(4), 25));
    CHECK(signed_subset_identity_check(4, epsilon_weights(FlagShape(5, {2})), 30));
  }

  TEST_CASE("Mahonian numbers from denumerants") {
    const auto v = mahonian_via_denumerant(FlagShape(7, {2, 4}), 3);
    CHECK(v.subset_form == 8);
    CHECK(v.psi_form == 8);
    CHECK(mahonian_via_denumerant(FlagShape(6, {3}), 0).psi_form == 1);
    const FlagShape s(5, {2});
    const IntPoly q = q_multinomial(s);
    for (std::uint64_t k = 0; k <= s.nu() + 2; ++k) {
      const auto m = mahonian_via_denumerant(s, k);
      CHECK(m.subset_form == q.coeff(k));
      CHECK(m.psi_form == q.coeff(k));
    }
  }

  TEST_CASE("full Mahonian numbers from binomials") {
    CHECK(full_mahonian_via_binomials(3, 1) == 2);
    CHECK(full_mahonian_via_binomials(10, 12) == 47043);
    CHECK(full_mahonian_via_binomials(10, 20) == 230131);
    CHECK(full_mahonian_via_binomials(7, 0) == 1);
    for (unsigned n = 1; n <= 8; ++n) {
      const auto h = oracle::inversion_histogram(std::vector<unsigned>(n, 1));
      for (std::size_t k = 0; k < h.size(); ++k) CHECK(full_mahonian_via_binomials(n, k) == static_cast<long>(h[k]));
    }
  }

  TEST_CASE("generalized binomial") {
    CHECK(generalized_binomial(-1, 2) == 0);
    CHECK(generalized_binomial(3, 5) == 0);
    CHECK(generalized_binomial(4, 2) == 6);
  }

  TEST_CASE("quasi-polynomial differences vanish") {
    CHECK(quasipolynomial_check(WeightVector({2, 3}), 6, 20));
    CHECK(quasipolynomial_check(WeightVector({1, 2}), 0, 30));
    CHECK(quasipolynomial_check(WeightVector({1, 2, 3}), 0, 30));
  }

  TEST_CASE("denumerant bounds sandwich the epsilon denumerant") {
    for (unsigned n = 1; n <= 6; ++n) {
      for (const auto& s : FlagShape::all_of_size(n)) {
        const WeightVector w = epsilon_weights(s);
        for (std::uint64_t m = 0; m <= 30; ++m) {
          const auto b = denumerant_bounds(s, m);
          const Rational v(denumerant(w, static_cast<std::int64_t>(m)));
          CHECK(b.lower <= v);
          CHECK(v <= b.upper);
        }
      }
    }
  }
}
