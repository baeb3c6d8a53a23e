// qflag command-line front end. Talks to the library only through qflag.h.
#include <cerrno>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qflag/qflag.h"

namespace {

constexpr const char* kCapEnv = "QFLAG_CAP";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::int64_t> parse_list(const std::string& text, const char* what) {
  std::vector<std::int64_t> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    const std::string token = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (token.empty() || token.find_first_not_of("0123456789-") != std::string::npos) {
      throw UsageError(std::string("malformed ") + what + " '" + text + "'");
    }
    errno = 0;
    char* end = nullptr;
    const long long v = std::strtoll(token.c_str(), &end, 10);
    if (errno != 0 || *end != '\0') throw UsageError(std::string("malformed ") + what + " '" + text + "'");
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::vector<unsigned> parse_d(const std::string& text, unsigned n) {
  std::vector<unsigned> d;
  if (text.empty()) return d;
  for (auto v : parse_list(text, "d-sequence")) {
    if (v < 1 || v > static_cast<std::int64_t>(n)) {
      throw UsageError("d-sequence entries must lie in 1.." + std::to_string(n) + ", got " + std::to_string(v));
    }
    d.push_back(static_cast<unsigned>(v));
  }
  for (std::size_t i = 1; i < d.size(); ++i) {
    if (d[i] <= d[i - 1]) throw UsageError("d-sequence must be strictly increasing: '" + text + "'");
  }
  if (!d.empty() && d.back() == n) {
    d.pop_back();
    std::cerr << "qflag: note: dropping d_r = n from the d-sequence\n";
  }
  return d;
}

std::optional<std::uint64_t> parse_cap(const std::string& text, const char* source) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    throw UsageError(std::string(source) + ": cap must be a positive integer, got '" + text + "'");
  }
  errno = 0;
  const unsigned long long v = std::strtoull(text.c_str(), nullptr, 10);
  if (errno != 0 || v == 0) throw UsageError(std::string(source) + ": cap must be a positive integer");
  return v;
}

struct Options {
  std::string format = "table";
  std::string cap;
  std::string out;
  unsigned jobs = 1;
};

int emit(qflag_context* ctx, qflag_status status, qflag_result* result, const Options& opt) {
  const std::string error = qflag_context_last_error(ctx);
  if (result != nullptr) {
    char* text = nullptr;
    const qflag_status rs = qflag_result_render(ctx, result, opt.format.c_str(), &text);
    qflag_result_free(result);
    if (rs != QFLAG_OK) {
      std::cerr << "qflag: " << qflag_context_last_error(ctx) << "\n";
      return static_cast<int>(rs);
    }
    if (opt.out.empty()) {
      std::cout << text;
      std::cout.flush();
    } else {
      std::ofstream file(opt.out, std::ios::binary);
      file << text;
      if (!file) {
        qflag_string_free(text);
        std::cerr << "qflag: cannot write '" << opt.out << "'\n";
        return QFLAG_E_VALIDATION;
      }
    }
    qflag_string_free(text);
  }
  if (status != QFLAG_OK) {
    std::cerr << "qflag: " << qflag_status_string(status) << ": " << error << "\n";
  }
  return static_cast<int>(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact q-multinomials, Mahonian statistics, denumerants and flag cells over F_p."};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"table", "csv", "json"}));
  app.add_option("--cap", opt.cap, std::string("Enumeration cap in words (overrides ") + kCapEnv + ")");
  app.add_option("--out", opt.out, "Write the payload to this file instead of stdout");
  app.add_option("--jobs", opt.jobs, "Worker threads for verification sweeps")->check(CLI::PositiveNumber);

  unsigned n = 0, e = 0, d1 = 0, max_n = 6;
  std::uint32_t p = 0;
  std::int64_t r = 0, m = 0;
  std::uint64_t k = 0;
  std::string d_text, w_text, method, suite = "all";
  std::optional<std::string> eval_q;
  bool count_only = false, cells = false;

  std::function<qflag_status(qflag_context*, qflag_result**)> run;

  auto* qbinom = app.add_subcommand("qbinom", "Gaussian binomial coefficient [n choose e]_q");
  qbinom->add_option("n", n)->required();
  qbinom->add_option("e", e)->required();
  qbinom->add_option("--eval", eval_q, "Evaluate at the integer q");
  qbinom->callback([&] {
    run = [&](qflag_context* c, qflag_result** o) {
      return qflag_qbinom(c, n, e, eval_q ? eval_q->c_str() : nullptr, o);
    };
  });

  auto* qmultinom = app.add_subcommand("qmultinom", "q-multinomial coefficient of a d-sequence");
  qmultinom->add_option("n", n)->required();
  qmultinom->add_option("--d", d_text, "Comma-separated d_1 < ... < d_r");
  qmultinom->add_option("--eval", eval_q, "Evaluate at the integer q");
  qmultinom->callback([&] {
    run = [&](qflag_context* c, qflag_result** o) {
      const auto d = parse_d(d_text, n);
      return qflag_qmultinom(c, n, d.data(), d.size(), eval_q ? eval_q->c_str() : nullptr, o);
    };
  });

  auto* invdist = app.add_subcommand("invdist", "Inversion distribution of multiset permutations");
  invdist->add_option("n", n)->required();
  invdist->add_option("--d", d_text, "Comma-separated d_1 < ... < d_r");
  invdist->callback([&] {
    run = [&](qflag_context* c, qflag_result** o) {
      const auto d = parse_d(d_text, n);
      return qflag_invdist(c, n, d.data(), d.size(), o);
    };
  });

  auto* inv = app.add_subcommand("inv", "Number of words with exactly k inversions");
  inv->add_option("n", n)->required();
  inv->add_option("--d", d_text, "Comma-separated d_1 < ... < d_r");
  inv->add_option("--k", k)->required();
  inv->add_option("--method", method, "table, denumerant or binomial")->default_str("table");
  inv->callback([&] {
    run = [&](qflag_context* c, qflag_result** o) {
      const auto d = parse_d(d_text, n);
      return qflag_inv(c, n, d.data(), d.size(), k, method.empty() ? "table" : method.c_str(), o);
    };
  });

  auto* psi = app.add_subcommand("psi", "Coefficient of t^r in (1-t)(1-t^2)...(1-t^n)");
  psi->add_option("n", n)->required();
  psi->add_option("r", r)->required();
  psi->add_option("--method", method, "fn, subset, pentagonal or explog")->default_str("fn");
  psi->callback([&] {
    run = [&](qflag_context* c, qflag_result** o) {
      return qflag_psi(c, n, r, method.empty() ? "fn" : method.c_str(), o);
    };
  });

  auto* denumerant = app.add_subcommand("denumerant", "Sylvester denumerant D_w(m)");
  denumerant->add_option("--w", w_text, "Comma-separated positive weights")->required();
  denumerant->add_option("m", m)->required();
  denumerant->callback([&] {
    run = [&](qflag_context* c, qflag_result** o) {
      std::vector<long> w;
      for (auto v : parse_list(w_text, "weight vector")) w.push_back(static_cast<long>(v));
      return qflag_denumerant(c, w.data(), w.size(), m, o);
    };
  });

  auto* bounds = app.add_subcommand("bounds", "Lower and upper bounds on the inversion count");
  bounds->add_option("n", n)->required();
  bounds->add_option("--d", d_text, "Comma-separated d_1 < ... < d_r");
  bounds->add_option("--k", k)->required();
  bounds->callback([&] {
    run = [&](qflag_context* c, qflag_result** o) {
      const auto d = parse_d(d_text, n);
      return qflag_bounds(c, n, d.data(), d.size(), k, o);
    };
  });

  auto* flags = app.add_subcommand("flags", "Flags of F_p^n by brute-force enumeration");
  flags->add_option("n", n)->required();
  flags->add_option("--d", d_text, "Comma-separated d_1 < ... < d_r");
  flags->add_option("--p", p, "Prime field size")->required();
  auto* count_flag = flags->add_flag("--count-only", count_only, "Print only the number of flags");
  flags->add_flag("--cells", cells, "List the cells and their sizes")->excludes(count_flag);
  flags->callback([&] {
    run = [&](qflag_context* c, qflag_result** o) {
      const auto d = parse_d(d_text, n);
      const char* mode = count_only ? "count" : cells ? "cells" : "list";
      return qflag_flags(c, n, d.data(), d.size(), p, mode, o);
    };
  });

  auto* tau = app.add_subcommand("tau", "Ordered set partition with lambda = k for d = (d1)");
  tau->add_option("n", n)->required();
  tau->add_option("d1", d1)->required();
  tau->add_option("k", k)->required();
  tau->callback([&] { run = [&](qflag_context* c, qflag_result** o) { return qflag_tau(c, n, d1, k, o); }; });

  auto* verify = app.add_subcommand("verify", "Run the cross-oracle self-checks");
  verify->add_option("--suite", suite)->check(
      CLI::IsMember({"qanalogue", "inversions", "denumerant", "flagcells", "all"}));
  verify->add_option("--max-n", max_n)->check(CLI::Range(1U, 12U));
  verify->callback([&] {
    run = [&](qflag_context* c, qflag_result** o) { return qflag_verify(c, suite.c_str(), max_n, o); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "qflag: " << e.what() << "\n" << "Run with --help for usage.\n";
    return 1;
  }

  qflag_context* ctx = nullptr;
  if (qflag_context_new(&ctx) != QFLAG_OK) {
    std::cerr << "qflag: cannot allocate context\n";
    return QFLAG_E_INTERNAL;
  }
  int code = 0;
  try {
    std::optional<std::uint64_t> cap;
    if (!opt.cap.empty()) {
      cap = parse_cap(opt.cap, "--cap");
    } else if (const char* env = std::getenv(kCapEnv); env != nullptr && *env != '\0') {
      cap = parse_cap(env, kCapEnv);
    }
    if (cap) qflag_context_set_word_cap(ctx, *cap);
    qflag_context_set_jobs(ctx, opt.jobs);
    qflag_result* result = nullptr;
    const qflag_status status = run(ctx, &result);
    code = emit(ctx, status, result, opt);
  } catch (const UsageError& e) {
    std::cerr << "qflag: " << e.what() << "\n";
    code = 1;
  }
  qflag_context_free(ctx);
  return code;
}
