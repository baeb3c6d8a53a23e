#include "qflag/verify.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "qflag/denumerant.hpp"
#include "qflag/flagcells.hpp"
#include "qflag/inversions.hpp"
#include "qflag/qanalogue.hpp"

namespace qflag {

namespace {

// A check returns std::nullopt on success or a description of the first failure.
using CheckFn = std::function<std::optional<std::string>()>;

struct Check {
  std::string suite;
  std::string name;
  CheckFn run;
};

std::vector<FlagShape> shapes_up_to(unsigned max_n) {
  std::vector<FlagShape> out;
  for (unsigned n = 1; n <= max_n; ++n) {
    for (auto& s : FlagShape::all_of_size(n)) out.push_back(std::move(s));
  }
  return out;
}

std::vector<FlagShape> refinements_of(const FlagShape& shape) {
  std::vector<FlagShape> out;
  for (auto& finer : FlagShape::all_of_size(shape.n())) {
    if (shape.is_refined_by(finer)) out.push_back(std::move(finer));
  }
  return out;
}

// ------------------------------------------------------------ qanalogue

std::vector<Check> qanalogue_checks(unsigned max_n, const Limits& limits) {
  std::vector<Check> c;
  const unsigned top = std::max(max_n, 1U);
  c.push_back({"qanalogue", "recurrence-matches-quotient", [top]() -> std::optional<std::string> {
                 for (unsigned n = 0; n <= top; ++n) {
                   for (unsigned e = 0; e <= n; ++e) {
                     if (q_binomial(n, e) != q_binomial_quotient_form(n, e)) {
                       return "n=" + std::to_string(n) + " e=" + std::to_string(e);
                     }
                   }
                 }
                 return std::nullopt;
               }});
  c.push_back({"qanalogue", "palindromic-and-symmetric", [top]() -> std::optional<std::string> {
                 for (unsigned n = 0; n <= top; ++n) {
                   for (unsigned e = 0; e <= n; ++e) {
                     const IntPoly b = q_binomial(n, e);
                     if (poly_reverse(b, std::size_t{e} * (n - e)) != b || b != q_binomial(n, n - e)) {
                       return "n=" + std::to_string(n) + " e=" + std::to_string(e);
                     }
                   }
                 }
                 return std::nullopt;
               }});
  c.push_back({"qanalogue", "multinomial-degree-and-value", [top]() -> std::optional<std::string> {
                 for (const auto& s : shapes_up_to(top)) {
                   const IntPoly p = q_multinomial(s);
                   const std::uint64_t n = s.n();
                   std::uint64_t alt = n * (n - 1) / 2;
                   for (unsigned e : s.block_sizes()) alt -= std::uint64_t{e} * (e - 1) / 2;
                   if (p.degree() != static_cast<std::int64_t>(s.nu()) || s.nu() != alt ||
                       eval_at_integer(p, 1) != s.multinomial() || s.nu() + s.eta() + n != n * (n + 1) / 2) {
                     return s.to_string();
                   }
                 }
                 return std::nullopt;
               }});
  c.push_back({"qanalogue", "partition-coefficients", [top]() -> std::optional<std::string> {
                 for (unsigned n = 0; n <= top; ++n) {
                   for (unsigned e = 0; e <= n; ++e) {
                     const IntPoly b = q_binomial(n, e);
                     for (std::size_t m = 0; m <= std::size_t{e} * (n - e) + 1; ++m) {
                       if (b.coeff(m) != partition_count(e, n - e, static_cast<std::int64_t>(m))) {
                         return "n=" + std::to_string(n) + " e=" + std::to_string(e) + " m=" + std::to_string(m);
                       }
                     }
                   }
                 }
                 return std::nullopt;
               }});
  c.push_back({"qanalogue", "multiset-sums", [top, limits]() -> std::optional<std::string> {
                 for (unsigned n = 0; n <= std::min(top, 10U); ++n) {
                   for (unsigned e = 0; e <= n; ++e) {
                     const MultisetSum ms = multiset_sum_poly(e, n - e, limits);
                     if (ms.poly != q_binomial(n, e) || to_big(ms.count) != binomial(n, e)) {
                       return "n=" + std::to_string(n) + " e=" + std::to_string(e);
                     }
                   }
                 }
                 return std::nullopt;
               }});
  return c;
}

// ----------------------------------------------------------- inversions

std::vector<Check> inversion_checks(unsigned max_n, const Limits& limits) {
  std::vector<Check> c;
  const unsigned top = std::max(max_n, 1U);
  c.push_back({"inversions", "enumeration-matches-q-multinomial", [top, limits]() -> std::optional<std::string> {
                 for (const auto& s : shapes_up_to(std::min(top, 8U))) {
                   if (inversion_distribution_oracle(s, limits) != q_multinomial(s)) return s.to_string();
                 }
                 return std::nullopt;
               }});
  c.push_back({"inversions", "table-symmetry-and-positivity", [top]() -> std::optional<std::string> {
                 for (const auto& s : shapes_up_to(top)) {
                   const auto t = mahonian_table(s).counts;
                   for (std::size_t k = 0; k < t.size(); ++k) {
                     if (t[k] < 1 || t[k] != t[t.size() - 1 - k]) return s.to_string() + " k=" + std::to_string(k);
                   }
                 }
                 return std::nullopt;
               }});
  c.push_back({"inversions", "row-sum-recurrence", [top]() -> std::optional<std::string> {
                 for (unsigned n = 2; n <= top; ++n) {
                   const auto prev = full_mahonian(n - 1).counts;
                   const auto cur = full_mahonian(n).counts;
                   for (std::size_t k = 0; k < cur.size(); ++k) {
                     BigInt sum = 0;
                     for (std::size_t j = (k + 1 >= n ? k + 1 - n : 0); j <= k; ++j) {
                       if (j < prev.size()) sum += prev[j];
                     }
                     if (sum != cur[k] || cur[k] != cur[cur.size() - 1 - k]) {
                       return "n=" + std::to_string(n) + " k=" + std::to_string(k);
                     }
                   }
                 }
                 return std::nullopt;
               }});
  c.push_back({"inversions", "refinement-recurrence", [top]() -> std::optional<std::string> {
                 for (const auto& s : shapes_up_to(std::min(top, 7U))) {
                   const auto expected = mahonian_table(s).counts;
                   for (const auto& finer : refinements_of(s)) {
                     const auto got = refinement_recurrence(s, finer);
                     if (got.table.counts != expected) return s.to_string() + " <- " + finer.to_string();
                     const auto fine = mahonian_table(finer).counts;
                     for (std::size_t k = 0; k < expected.size(); ++k) {
                       if (expected[k] > fine[k]) return "monotonicity " + s.to_string() + " <- " + finer.to_string();
                     }
                   }
                 }
                 return std::nullopt;
               }});
  c.push_back({"inversions", "merge-count-matches-naive", [top]() -> std::optional<std::string> {
                 std::mt19937_64 rng(20240611);
                 for (int trial = 0; trial < 2000; ++trial) {
                   std::uniform_int_distribution<unsigned> len(0, 3 * top);
                   std::uniform_int_distribution<unsigned> letter(1, 4);
                   std::vector<unsigned> w(len(rng));
                   for (auto& x : w) x = letter(rng);
                   if (inversion_count_merge(w) != inversion_count_naive(w)) return "trial " + std::to_string(trial);
                 }
                 return std::nullopt;
               }});
  c.push_back({"inversions", "full-mahonian-log-concave", [top]() -> std::optional<std::string> {
                 for (unsigned n = 1; n <= top; ++n) {
                   if (!log_concavity_scan(full_mahonian(n).counts).empty()) return "n=" + std::to_string(n);
                 }
                 return std::nullopt;
               }});
  c.push_back({"inversions", "lower-bound-nonpositive", [top]() -> std::optional<std::string> {
                 for (unsigned n = 3; n <= top; ++n) {
                   for (const auto& s : FlagShape::all_of_size(n)) {
                     if (s.eta() < 1) continue;
                     for (std::uint64_t k = 2; k <= std::uint64_t{n} * (n - 1) / 2; ++k) {
                       if (inv_bounds(s, k).lower > Rational(0)) return s.to_string() + " k=" + std::to_string(k);
                     }
                   }
                 }
                 return std::nullopt;
               }});
  c.push_back({"inversions", "published-upper-bounds", []() -> std::optional<std::string> {
                 if (inv_bounds(FlagShape(5, {1, 2}), 6).upper != Rational(104)) return "n=5 d=(1,2)";
                 if (inv_bounds(FlagShape(5, {1, 2, 3}), 6).upper != Rational(77)) return "n=5 d=(1,2,3)";
                 if (!(inv_bounds(FlagShape(5, {2}), 6).upper < Rational(84))) return "n=5 d=(2)";
                 const auto i10 = full_mahonian(10).counts;
                 const FlagShape s(10, {1});
                 if (!(inv_bounds(s, 12).upper < Rational(i10[12])) || !(inv_bounds(s, 12).upper < Rational(44871))) {
                   return "n=10 k=12";
                 }
                 if (!(inv_bounds(s, 20).upper < Rational(i10[20])) || !(inv_bounds(s, 20).upper < Rational(182032))) {
                   return "n=10 k=20";
                 }
                 return std::nullopt;
               }});
  return c;
}

// ----------------------------------------------------------- denumerant

std::vector<Check> denumerant_checks(unsigned max_n, const Limits& limits) {
  std::vector<Check> c;
  const unsigned top = std::max(max_n, 1U);
  c.push_back({"denumerant", "psi-methods-agree", [top, limits]() -> std::optional<std::string> {
                 for (unsigned n = 1; n <= top; ++n) {
                   const PsiTable t(n);
                   const bool subsets = n < 63 && (1ULL << n) <= limits.subset_cap;
                   for (std::int64_t r = 0; r <= static_cast<std::int64_t>(t.top()); ++r) {
                     const BigInt v = t.at(r);
                     bool ok = psi(n, r, PsiMethod::ExpLog) == v;
                     if (subsets) ok = ok && psi(n, r, PsiMethod::SubsetOracle, limits) == v;
                     if (r >= 1 && r <= n) ok = ok && psi(n, r, PsiMethod::Pentagonal) == v;
                     if (!ok) return "n=" + std::to_string(n) + " r=" + std::to_string(r);
                   }
                 }
                 return std::nullopt;
               }});
  c.push_back({"denumerant", "psi-symmetry-and-bound", [top]() -> std::optional<std::string> {
                 for (unsigned n = 1; n <= top; ++n) {
                   const PsiTable t(n);
                   const auto last = static_cast<std::int64_t>(t.top());
                   for (std::int64_t r = 0; r <= last; ++r) {
                     const BigInt mirrored = (n % 2 == 0) ? t.at(last - r) : BigInt(-t.at(last - r));
                     if (t.at(r) != mirrored || abs(t.at(r)) > generalized_binomial(n - 1 + r, n - 1)) {
                       return "n=" + std::to_string(n) + " r=" + std::to_string(r);
                     }
                   }
                 }
                 return std::nullopt;
               }});
  c.push_back({"denumerant", "divisor-sum-forms", [top]() -> std::optional<std::string> {
                 for (unsigned n = 1; n <= top; ++n) {
                   for (std::uint64_t k = 1; k <= 60; ++k) {
                     if (restricted_divisor_sum(n, k) != restricted_divisor_sum_floor_form(n, k)) {
                       return "n=" + std::to_string(n) + " k=" + std::to_string(k);
                     }
                   }
                 }
                 return std::nullopt;
               }});
  c.push_back({"denumerant", "signed-subset-identity", [limits]() -> std::optional<std::string> {
                 const std::vector<WeightVector> ws{WeightVector::ones(4), WeightVector({1, 2, 3}), WeightVector({2, 3}),
                                                    epsilon_weights(FlagShape(5, {2}))};
                 for (std::size_t i = 0; i < ws.size(); ++i) {
                   for (unsigned r = 0; r <= 4; ++r) {
                     if (!signed_subset_identity_check(r, ws[i], 30, limits)) {
                       return "w#" + std::to_string(i) + " r=" + std::to_string(r);
                     }
                   }
                 }
                 return std::nullopt;
               }});
  c.push_back({"denumerant", "mahonian-via-denumerants", [top, limits]() -> std::optional<std::string> {
                 for (const auto& s : shapes_up_to(std::min(top, 7U))) {
                   const auto t = mahonian_table(s).counts;
                   for (std::size_t k = 0; k <= t.size(); ++k) {
                     const auto v = mahonian_via_denumerant(s, k, limits);
                     const BigInt want = k < t.size() ? t[k] : BigInt(0);
                     if (v.subset_form != want || v.psi_form != want) return s.to_string() + " k=" + std::to_string(k);
                   }
                 }
                 return std::nullopt;
               }});
  c.push_back({"denumerant", "full-mahonian-via-binomials", [top]() -> std::optional<std::string> {
                 for (unsigned n = 1; n <= top; ++n) {
                   const auto t = full_mahonian(n).counts;
                   for (std::size_t k = 0; k < t.size(); ++k) {
                     if (full_mahonian_via_binomials(n, k) != t[k]) {
                       return "n=" + std::to_string(n) + " k=" + std::to_string(k);
                     }
                   }
                 }
                 return std::nullopt;
               }});
  c.push_back({"denumerant", "all-ones-denumerant", [top]() -> std::optional<std::string> {
                 for (unsigned n = 1; n <= top; ++n) {
                   const TruncatedSeries d = denumerant_series(WeightVector::ones(n), 30);
                   for (unsigned m = 0; m <= 30; ++m) {
                     if (d.coeff(m) != binomial(n - 1 + m, n - 1)) {
                       return "n=" + std::to_string(n) + " m=" + std::to_string(m);
                     }
                   }
                 }
                 return std::nullopt;
               }});
  c.push_back({"denumerant", "quasipolynomial-differences", []() -> std::optional<std::string> {
                 for (const auto& w : {WeightVector({1, 2}), WeightVector({2, 3}), WeightVector({1, 2, 3})}) {
                   if (!quasipolynomial_check(w, 0, 40)) return "w size " + std::to_string(w.size());
                 }
                 return std::nullopt;
               }});
  c.push_back({"denumerant", "denumerant-bounds", [top]() -> std::optional<std::string> {
                 for (const auto& s : shapes_up_to(top)) {
                   const TruncatedSeries d = denumerant_series(epsilon_weights(s), 30);
                   for (unsigned m = 0; m <= 30; ++m) {
                     const auto b = denumerant_bounds(s, m);
                     const Rational v(d.coeff(m));
                     if (b.lower > v || v > b.upper) return s.to_string() + " m=" + std::to_string(m);
                   }
                 }
                 return std::nullopt;
               }});
  return c;
}

// ------------------------------------------------------------ flagcells

std::optional<std::string> gl3_cells(const FlagShape& shape, bool anti, const Limits& limits) {
  const std::uint32_t p = 2;
  std::vector<FpMatrix> group;
  enumerate_gl(shape.n(), p, [&](const FpMatrix& a) { group.push_back(a); }, limits);
  std::vector<CellForm> forms;
  forms.reserve(group.size());
  std::map<OrderedSetPartition, std::set<FpMatrix>> per_sigma;
  const std::string tag = shape.to_string() + (anti ? " anti" : "");
  for (const auto& a : group) {
    const auto cd = cell_form(a, shape, anti);
    if (!is_parabolic_member(cd.transform, shape) || mat_mul(a, cd.transform) != cd.form.matrix) {
      return tag + ": bad transform for " + a.to_string();
    }
    const auto again = cell_form(cd.form.matrix, shape, anti);
    if (again.form != cd.form || again.transform != FpMatrix::identity(p, shape.n())) return tag + ": not idempotent";
    if (!matches_cell_pattern(cd.form.matrix, cd.form.sigma, anti)) return tag + ": pattern mismatch";
    per_sigma[cd.form.sigma].insert(cd.form.matrix);
    forms.push_back(cd.form);
  }
  std::set<CellForm> distinct(forms.begin(), forms.end());
  if (to_big(distinct.size()) != eval_at_integer(q_multinomial(shape), p)) return tag + ": wrong number of forms";
  for (const auto& [sigma, mats] : per_sigma) {
    if (to_big(mats.size()) != BigInt(1) << cell_dimension(sigma, anti)) return tag + ": cell size " + sigma.to_string();
  }
  for (std::size_t i = 0; i < group.size(); ++i) {
    const FpMatrix inv = mat_inverse(group[i]);
    for (std::size_t j = 0; j < group.size(); ++j) {
      const bool same_coset = is_parabolic_member(mat_mul(inv, group[j]), shape);
      if (same_coset != (forms[i] == forms[j])) return tag + ": coset mismatch";
      if (!anti && same_coset != (phi_flag(group[i], shape) == phi_flag(group[j], shape))) {
        return tag + ": flag map mismatch";
      }
    }
  }
  return std::nullopt;
}

std::vector<Check> flagcell_checks(unsigned max_n, const Limits& limits) {
  std::vector<Check> c;
  const unsigned top = std::max(max_n, 1U);
  c.push_back({"flagcells", "counting-triangle", [top, limits]() -> std::optional<std::string> {
                 for (std::uint32_t p : {2U, 3U}) {
                   for (const auto& s : shapes_up_to(std::min(top, 4U))) {
                     const std::uint64_t enumerated = enumerate_flags(s, p, [](const Flag&) {}, limits);
                     const BigInt group = flag_count_group_formula(s, p);
                     const BigInt poly = eval_at_integer(q_multinomial(s), p);
                     const BigInt cells = eval_at_integer(cell_sum_poly(s, false, limits), p);
                     if (to_big(enumerated) != group || group != poly || poly != cells) {
                       return s.to_string() + " p=" + std::to_string(p);
                     }
                   }
                 }
                 return std::nullopt;
               }});
  if (top >= 3) {
    c.push_back({"flagcells", "gl3-f2-cell-decomposition", [limits]() -> std::optional<std::string> {
                   for (const auto& s : FlagShape::all_of_size(3)) {
                     for (bool anti : {false, true}) {
                       if (auto err = gl3_cells(s, anti, limits)) return err;
                     }
                   }
                   return std::nullopt;
                 }});
    c.push_back({"flagcells", "gl3-f3-sampled-cosets", []() -> std::optional<std::string> {
                   std::mt19937_64 rng(7);
                   for (const auto& s : FlagShape::all_of_size(3)) {
                     for (int trial = 0; trial < 50; ++trial) {
                       const FpMatrix a = random_gl(3, 3, rng);
                       const FpMatrix g = random_parabolic(s, 3, rng);
                       const FpMatrix ag = mat_mul(a, g);
                       if (phi_flag(a, s) != phi_flag(ag, s) || cell_form(a, s).form != cell_form(ag, s).form) {
                         return s.to_string() + " same coset split";
                       }
                       const FpMatrix b = random_gl(3, 3, rng);
                       const bool same = is_parabolic_member(mat_mul(mat_inverse(b), a), s);
                       if (same != (phi_flag(a, s) == phi_flag(b, s))) return s.to_string() + " coset law";
                     }
                   }
                   return std::nullopt;
                 }});
  }
  c.push_back({"flagcells", "theta-bijection", [top, limits]() -> std::optional<std::string> {
                 for (const auto& s : shapes_up_to(std::min(top, 7U))) {
                   std::set<std::vector<unsigned>> words;
                   std::optional<std::string> err;
                   const std::uint64_t count = enumerate_partitions(
                       s,
                       [&](const OrderedSetPartition& sigma) {
                         const MultisetWord w = theta_word(sigma);
                         if (inversion_count(w) != sigma_stats(sigma).lambda && !err) err = sigma.to_string();
                         if (inversion_count(row_block_word(sigma)) != cell_dimension(sigma, true) && !err) {
                           err = "anti " + sigma.to_string();
                         }
                         words.insert(w.letters());
                       },
                       limits);
                   if (err) return s.to_string() + " " + *err;
                   if (words.size() != count || to_big(count) != s.multinomial()) return s.to_string() + " not bijective";
                 }
                 return std::nullopt;
               }});
  c.push_back({"flagcells", "cell-sums", [top, limits]() -> std::optional<std::string> {
                 for (const auto& s : shapes_up_to(std::min(top, 7U))) {
                   const IntPoly q = q_multinomial(s);
                   if (cell_sum_poly(s, false, limits) != q || cell_sum_poly(s, true, limits) != q) return s.to_string();
                 }
                 return std::nullopt;
               }});
  c.push_back({"flagcells", "tau-construction", [top]() -> std::optional<std::string> {
                 for (unsigned n = 2; n <= std::min(top, 8U); ++n) {
                   for (unsigned d1 = 1; d1 < n; ++d1) {
                     for (std::uint64_t k = 0; k <= std::uint64_t{d1} * (n - d1); ++k) {
                       if (sigma_stats(tau_for_lambda(n, d1, k)).lambda != k) {
                         return "n=" + std::to_string(n) + " d1=" + std::to_string(d1) + " k=" + std::to_string(k);
                       }
                     }
                   }
                 }
                 return std::nullopt;
               }});
  return c;
}

}  // namespace

const std::vector<std::string>& verification_suites() {
  static const std::vector<std::string> names{"qanalogue", "inversions", "denumerant", "flagcells"};
  return names;
}

std::vector<CheckResult> run_verification(std::string_view suite, unsigned max_n, const Limits& limits,
                                          unsigned jobs) {
  const bool all = suite == "all";
  const auto& names = verification_suites();
  if (!all && std::find(names.begin(), names.end(), suite) == names.end()) {
    throw ValidationError("unknown suite '" + std::string(suite) + "'");
  }
  std::vector<Check> checks;
  auto add = [&](std::vector<Check> more) {
    for (auto& c : more) checks.push_back(std::move(c));
  };
  if (all || suite == "qanalogue") add(qanalogue_checks(max_n, limits));
  if (all || suite == "inversions") add(inversion_checks(max_n, limits));
  if (all || suite == "denumerant") add(denumerant_checks(max_n, limits));
  if (all || suite == "flagcells") add(flagcell_checks(max_n, limits));

  std::vector<CheckResult> results(checks.size());
  auto run_one = [&](std::size_t i) {
    CheckResult& r = results[i];
    r.suite = checks[i].suite;
    r.name = checks[i].name;
    try {
      const auto failure = checks[i].run();
      r.passed = !failure.has_value();
      r.detail = failure.value_or("ok");
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
  };
  const unsigned width = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(checks.size())));
  if (width == 1) {
    for (std::size_t i = 0; i < checks.size(); ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < width; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < checks.size(); i = next++) run_one(i);
      });
    }
    for (auto& t : workers) t.join();
  }
  return results;
}

}  // namespace qflag
