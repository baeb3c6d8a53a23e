#include <doctest.h>

#include <map>
#include <set>

#include "oracles.hpp"
#include "qflag/error.hpp"
#include "qflag/flagcells.hpp"

using namespace qflag;

TEST_SUITE("flagcells") {
  TEST_CASE("matrices over F_p") {
    CHECK(is_prime(65521));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(91));
    CHECK_THROWS_AS(FpMatrix(4, 2, 2), ValidationError);
    const FpMatrix a = FpMatrix::from_rows(2, {{1, 1}, {0, 1}});
    CHECK(mat_inverse(a) == a);
    CHECK(mat_mul(FpMatrix::identity(2, 2), a) == a);
    CHECK(FpMatrix::from_rows(5, {{-1, 7}}).to_string() == "4 2");
    CHECK_THROWS_AS(mat_inverse(FpMatrix::from_rows(3, {{1, 2}, {2, 1}})), ValidationError);
    const FpMatrix b = FpMatrix::from_rows(7, {{2, 3, 1}, {0, 4, 5}, {6, 1, 1}});
    CHECK(mat_mul(b, mat_inverse(b)) == FpMatrix::identity(7, 3));
    const std::vector<unsigned> s{1, 3};
    CHECK(rank(selector_matrix(5, 4, s)) == 2);
    CHECK(hconcat(FpMatrix::identity(3, 2), FpMatrix(3, 2, 1)).cols() == 3);
  }

  TEST_CASE("s-reduction") {
    const FpMatrix n = FpMatrix::from_rows(2, {{1}, {1}});
    const auto red = s_reduce(n);
    CHECK(red.pivots == std::vector<unsigned>{1});
    CHECK(red.reduced == n);
    const std::vector<unsigned> piv{2, 4};
    const FpMatrix sel = selector_matrix(3, 4, piv);
    const auto same = s_reduce(sel);
    CHECK(same.pivots == piv);
    CHECK(same.reduced == sel);
    CHECK(same.transform == FpMatrix::identity(3, 2));
    const FpMatrix m = FpMatrix::from_rows(3, {{0, 0}, {2, 1}, {1, 1}, {1, 2}});
    for (bool anti : {false, true}) {
      const auto r = s_reduce(m, anti);
      CHECK(is_s_reduced(r.reduced, r.pivots, anti));
      CHECK(mat_mul(m, r.transform) == r.reduced);
      CHECK(rank(r.transform) == 2);
    }
    CHECK_THROWS_AS(s_reduce(FpMatrix::from_rows(2, {{1, 1}, {1, 1}})), ValidationError);
  }

  TEST_CASE("parabolic membership") {
    const FlagShape s(3, {1});
    CHECK(is_parabolic_member(FpMatrix::identity(2, 3), s));
    const FpMatrix upper = FpMatrix::from_rows(3, {{1, 2, 1}, {0, 2, 1}, {0, 0, 1}});
    for (const auto& shape : FlagShape::all_of_size(3)) CHECK(is_parabolic_member(upper, shape));
    const FpMatrix swap = FpMatrix::from_rows(2, {{0, 1, 0}, {1, 0, 0}, {0, 0, 1}});
    CHECK_FALSE(is_parabolic_member(swap, s));
    CHECK(is_parabolic_member(swap, FlagShape(3, {2})));
  }

  TEST_CASE("ordered set partitions") {
    const FlagShape s(3, {2});
    CHECK_THROWS_AS(OrderedSetPartition(s, {{1}, {2, 3}}), ValidationError);
    CHECK_THROWS_AS(OrderedSetPartition(s, {{1, 1}, {3}}), ValidationError);
    CHECK_THROWS_AS(OrderedSetPartition(s, {{2, 1}, {3}}), ValidationError);
    const OrderedSetPartition sigma(s, {{1, 2}, {3}});
    CHECK(sigma.to_string() == "{1,2}|{3}");
    CHECK(sigma.as_permutation() == std::vector<unsigned>{1, 2, 3});
    std::uint64_t seen = 0;
    CHECK(enumerate_partitions(FlagShape(5, {2, 3}), [&](const OrderedSetPartition&) { ++seen; }) == 30);
    CHECK(seen == 30);
  }

  TEST_CASE("sigma statistics") {
    const FlagShape s(3, {2});
    const auto st = sigma_stats(OrderedSetPartition(s, {{1, 2}, {3}}));
    CHECK(st.delta == std::vector<std::uint64_t>{1, 1, 0});
    CHECK(st.lambda == 2);
    CHECK(st.mu == std::vector<unsigned>{1, 1, 2});
    const FlagShape t(6, {2, 4});
    CHECK(sigma_stats(OrderedSetPartition(t, {{1, 2}, {3, 4}, {5, 6}})).lambda == t.nu());
    CHECK(sigma_stats(OrderedSetPartition(t, {{5, 6}, {3, 4}, {1, 2}})).lambda == 0);
  }

  TEST_CASE("theta words") {
    const FlagShape s(3, {2});
    const auto w = theta_word(OrderedSetPartition(s, {{1, 2}, {3}}));
    CHECK(w.letters() == std::vector<unsigned>{2, 1, 1});
    CHECK(inversion_count(w) == 2);
    const auto v = theta_word(OrderedSetPartition(FlagShape(2, {1}), {{2}, {1}}));
    CHECK(v.letters() == std::vector<unsigned>{1, 2});
    CHECK(inversion_count(v) == 0);
  }

  TEST_CASE("theta is a bijection carrying lambda to inversions") {
    for (unsigned n = 1; n <= 6; ++n) {
      for (const auto& s : FlagShape::all_of_size(n)) {
        std::set<std::vector<unsigned>> words;
        enumerate_partitions(s, [&](const OrderedSetPartition& sigma) {
          const auto w = theta_word(sigma);
          CHECK(inversion_count(w) == sigma_stats(sigma).lambda);
          CHECK(inversion_count(row_block_word(sigma)) == cell_dimension(sigma, true));
          words.insert(w.letters());
        });
        CHECK(to_big(words.size()) == s.multinomial());
      }
    }
  }

  TEST_CASE("cell sums") {
    CHECK(cell_sum_poly(FlagShape(2, {1})) == IntPoly{1, 1});
    for (unsigned n = 1; n <= 6; ++n) {
      for (const auto& s : FlagShape::all_of_size(n)) {
        CHECK(cell_sum_poly(s, false) == q_multinomial(s));
        CHECK(cell_sum_poly(s, true) == q_multinomial(s));
      }
    }
  }

  TEST_CASE("free rows") {
    const OrderedSetPartition sigma(FlagShape(3, {1}), {{2}, {1, 3}});
    std::uint64_t straight = 0, anti = 0;
    for (const auto& rows : free_rows(sigma, false)) straight += rows.size();
    for (const auto& rows : free_rows(sigma, true)) anti += rows.size();
    CHECK(straight == cell_dimension(sigma, false));
    CHECK(anti == cell_dimension(sigma, true));
    CHECK(straight + anti == FlagShape(3, {1}).nu());
  }

  TEST_CASE("cell forms") {
    const FlagShape s(2, {1});
    const auto cd = cell_form(FpMatrix::identity(5, 2), s);
    CHECK(cd.form.sigma == OrderedSetPartition(s, {{1}, {2}}));
    CHECK(cd.form.matrix == FpMatrix::identity(5, 2));
    CHECK(cd.transform == FpMatrix::identity(5, 2));
    CHECK_THROWS_AS(cell_form(FpMatrix(3, 2, 2), s), ValidationError);
    std::mt19937_64 rng(3);
    for (const auto& shape : FlagShape::all_of_size(4)) {
      for (int t = 0; t < 20; ++t) {
        const FpMatrix a = random_gl(4, 5, rng);
        for (bool anti : {false, true}) {
          const auto c = cell_form(a, shape, anti);
          CHECK(is_parabolic_member(c.transform, shape));
          CHECK(mat_mul(a, c.transform) == c.form.matrix);
          CHECK(matches_cell_pattern(c.form.matrix, c.form.sigma, anti));
          CHECK(cell_form(c.form.matrix, shape, anti).form == c.form);
          CHECK(cell_form(mat_mul(a, random_parabolic(shape, 5, rng)), shape, anti).form == c.form);
        }
      }
    }
  }

  TEST_CASE("tau construction") {
    const auto tau = tau_for_lambda(4, 2, 3);
    CHECK(tau.blocks()[0] == std::vector<unsigned>{1, 3});
    CHECK(sigma_stats(tau).lambda == 3);
    CHECK(tau_for_lambda(6, 2, 0).blocks()[0] == std::vector<unsigned>{5, 6});
    CHECK(tau_for_lambda(6, 2, 8).blocks()[0] == std::vector<unsigned>{1, 2});
    CHECK_THROWS_AS(tau_for_lambda(6, 2, 9), ValidationError);
    CHECK_THROWS_AS(tau_for_lambda(6, 6, 0), ValidationError);
    for (unsigned n = 2; n <= 8; ++n) {
      for (unsigned d1 = 1; d1 < n; ++d1) {
        for (std::uint64_t k = 0; k <= std::uint64_t{d1} * (n - d1); ++k) {
          CHECK(sigma_stats(tau_for_lambda(n, d1, k)).lambda == k);
        }
      }
    }
  }

  TEST_CASE("flag map and enumeration") {
    const FlagShape s(3, {1, 2});
    const Flag standard = phi_flag(FpMatrix::identity(3, 3), s);
    CHECK(standard.bases[0] == FpMatrix::from_rows(3, {{1}, {0}, {0}}));
    CHECK(standard.bases[1] == FpMatrix::from_rows(3, {{1, 0}, {0, 1}, {0, 0}}));
    CHECK(enumerate_flags(FlagShape(2, {1}), 2, [](const Flag&) {}) == 3);
    CHECK(enumerate_flags(s, 2, [](const Flag&) {}) == 21);
    CHECK(enumerate_flags(FlagShape(4, {2}), 2, [](const Flag&) {}) == 35);
    std::set<Flag> distinct;
    enumerate_flags(s, 3, [&](const Flag& f) { distinct.insert(f); });
    CHECK(distinct.size() == 52);
    Limits tight;
    tight.field_vector_cap = 8;
    CHECK_THROWS_AS(enumerate_flags(FlagShape(4, {2}), 2, [](const Flag&) {}, tight), ResourceError);
  }

  TEST_CASE("flag counts agree with a subspace-chain count") {
    for (std::uint32_t p : {2U, 3U}) {
      for (unsigned n = 1; n <= (p == 2 ? 4U : 3U); ++n) {
        for (const auto& s : FlagShape::all_of_size(n)) {
          const long long want = oracle::flag_count(n, s.d(), p);
          CHECK(enumerate_flags(s, p, [](const Flag&) {}) == static_cast<std::uint64_t>(want));
          CHECK(flag_count_group_formula(s, p) == static_cast<long>(want));
          CHECK(eval_at_integer(q_multinomial(s), p) == static_cast<long>(want));
        }
      }
    }
  }

  TEST_CASE("group orders") {
    CHECK(gl_order(3, 2) == 168);
    CHECK(parabolic_order(FlagShape::full(3), 2) == 8);
    CHECK(flag_count_group_formula(FlagShape::full(3), 2) == 21);
    std::uint64_t count = 0;
    CHECK(enumerate_gl(3, 2, [&](const FpMatrix& m) { count += rank(m) == 3; }) == 168);
    CHECK(count == 168);
    CHECK(enumerate_gl(2, 3, [](const FpMatrix&) {}) == 48);
  }

  TEST_CASE("exhaustive cell decomposition of GL(3, F_2)") {
    std::vector<FpMatrix> group;
    enumerate_gl(3, 2, [&](const FpMatrix& a) { group.push_back(a); });
    for (const auto& s : FlagShape::all_of_size(3)) {
      if (s.r() == 0) continue;
      std::map<CellForm, std::size_t> sizes;
      for (const auto& a : group) ++sizes[cell_form(a, s).form];
      CHECK(to_big(sizes.size()) == eval_at_integer(q_multinomial(s), 2));
      for (const auto& [form, size] : sizes) CHECK(to_big(size) == parabolic_order(s, 2));
    }
  }
}
