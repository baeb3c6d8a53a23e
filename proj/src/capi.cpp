#include "qflag/qflag.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "qflag/denumerant.hpp"
#include "qflag/flagcells.hpp"
#include "qflag/inversions.hpp"
#include "qflag/qanalogue.hpp"
#include "qflag/record.hpp"
#include "qflag/verify.hpp"

struct qflag_context {
  qflag::Limits limits;
  unsigned jobs = 1;
  std::string last_error;
};

struct qflag_result {
  qflag::Record record;
};

namespace {

using qflag::BigInt;
using qflag::Record;

class VerifyFailed : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Runs body(), which fills a Record, and maps exceptions to status codes.
template <class Body>
qflag_status guarded(qflag_context* ctx, qflag_result** out, Body&& body) {
  if (ctx == nullptr) return QFLAG_E_VALIDATION;
  ctx->last_error.clear();
  if (out == nullptr) {
    ctx->last_error = "null output pointer";
    return QFLAG_E_VALIDATION;
  }
  *out = nullptr;
  auto* result = new (std::nothrow) qflag_result;
  if (result == nullptr) {
    ctx->last_error = "out of memory";
    return QFLAG_E_INTERNAL;
  }
  qflag_status status = QFLAG_OK;
  try {
    body(result->record);
  } catch (const VerifyFailed& e) {
    ctx->last_error = e.what();
    status = QFLAG_E_VERIFY;
  } catch (const qflag::ValidationError& e) {
    ctx->last_error = e.what();
    status = QFLAG_E_VALIDATION;
  } catch (const qflag::ResourceError& e) {
    ctx->last_error = e.what();
    status = QFLAG_E_RESOURCE;
  } catch (const std::bad_alloc&) {
    ctx->last_error = "out of memory";
    status = QFLAG_E_INTERNAL;
  } catch (const std::exception& e) {
    ctx->last_error = e.what();
    status = QFLAG_E_INTERNAL;
  }
  if (status == QFLAG_OK || status == QFLAG_E_VERIFY) {
    *out = result;
  } else {
    delete result;
  }
  return status;
}

qflag::FlagShape make_shape(unsigned n, const unsigned* d, size_t r) {
  if (r > 0 && d == nullptr) throw qflag::ValidationError("null d-sequence");
  return qflag::FlagShape(n, std::vector<unsigned>(d, d + r));
}

std::string join_d(const qflag::FlagShape& s) {
  std::string out;
  for (std::size_t i = 0; i < s.d().size(); ++i) out += (i ? "," : "") + std::to_string(s.d()[i]);
  return out;
}

BigInt parse_integer(const char* text) {
  BigInt v;
  if (text == nullptr || *text == '\0' || v.set_str(text, 10) != 0) {
    throw qflag::ValidationError(std::string("not an integer: '") + (text ? text : "") + "'");
  }
  return v;
}

std::string method_or(const char* method, const char* fallback) { return method ? method : fallback; }

void fill_poly(Record& rec, const qflag::IntPoly& p, const char* eval_q) {
  if (eval_q != nullptr) {
    const BigInt q = parse_integer(eval_q);
    rec.parameters.emplace_back("q", q.get_str());
    rec.columns = {"value"};
    rec.rows.push_back({qflag::eval_at_integer(p, q).get_str()});
    return;
  }
  rec.columns = {"k", "coeff"};
  const auto& c = p.coeffs();
  for (std::size_t k = 0; k < c.size(); ++k) rec.rows.push_back({std::to_string(k), c[k].get_str()});
}

qflag::PsiMethod parse_psi_method(const std::string& name) {
  for (auto m : {qflag::PsiMethod::FnCoefficients, qflag::PsiMethod::SubsetOracle, qflag::PsiMethod::Pentagonal,
                 qflag::PsiMethod::ExpLog}) {
    if (name == qflag::to_string(m)) return m;
  }
  throw qflag::ValidationError("unknown psi method '" + name + "' (fn, subset, pentagonal, explog)");
}

}  // namespace

extern "C" {

const char* qflag_version(void) { return "1.0.0"; }

const char* qflag_status_string(qflag_status status) {
  switch (status) {
    case QFLAG_OK: return "ok";
    case QFLAG_E_VALIDATION: return "validation error";
    case QFLAG_E_RESOURCE: return "resource cap exceeded";
    case QFLAG_E_VERIFY: return "verification failed";
    case QFLAG_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

qflag_status qflag_context_new(qflag_context** out) {
  if (out == nullptr) return QFLAG_E_VALIDATION;
  *out = new (std::nothrow) qflag_context;
  return *out ? QFLAG_OK : QFLAG_E_INTERNAL;
}

void qflag_context_free(qflag_context* ctx) { delete ctx; }

qflag_status qflag_context_set_word_cap(qflag_context* ctx, uint64_t cap) {
  if (ctx == nullptr) return QFLAG_E_VALIDATION;
  if (cap == 0) {
    ctx->last_error = "cap must be positive";
    return QFLAG_E_VALIDATION;
  }
  ctx->limits.word_cap = cap;
  ctx->last_error.clear();
  return QFLAG_OK;
}

qflag_status qflag_context_set_jobs(qflag_context* ctx, unsigned jobs) {
  if (ctx == nullptr) return QFLAG_E_VALIDATION;
  ctx->jobs = jobs == 0 ? 1 : jobs;
  ctx->last_error.clear();
  return QFLAG_OK;
}

const char* qflag_context_last_error(const qflag_context* ctx) { return ctx ? ctx->last_error.c_str() : ""; }

qflag_status qflag_qbinom(qflag_context* ctx, unsigned n, unsigned e, const char* eval_q, qflag_result** out) {
  return guarded(ctx, out, [&](Record& rec) {
    if (e > n) throw qflag::ValidationError("need 0 <= e <= n");
    rec.kind = "qbinom";
    rec.parameters = {{"n", std::to_string(n)}, {"e", std::to_string(e)}};
    fill_poly(rec, qflag::q_binomial(n, e), eval_q);
  });
}

qflag_status qflag_qmultinom(qflag_context* ctx, unsigned n, const unsigned* d, size_t r, const char* eval_q,
                             qflag_result** out) {
  return guarded(ctx, out, [&](Record& rec) {
    const auto shape = make_shape(n, d, r);
    rec.kind = "qmultinom";
    rec.parameters = {{"n", std::to_string(n)}, {"d", join_d(shape)}};
    fill_poly(rec, qflag::q_multinomial(shape), eval_q);
  });
}

qflag_status qflag_invdist(qflag_context* ctx, unsigned n, const unsigned* d, size_t r, qflag_result** out) {
  return guarded(ctx, out, [&](Record& rec) {
    const auto shape = make_shape(n, d, r);
    rec.kind = "invdist";
    rec.parameters = {{"n", std::to_string(n)}, {"d", join_d(shape)}};
    rec.columns = {"k", "count"};
    const auto t = qflag::mahonian_table(shape);
    for (std::size_t k = 0; k < t.counts.size(); ++k) rec.rows.push_back({std::to_string(k), t.counts[k].get_str()});
  });
}

qflag_status qflag_inv(qflag_context* ctx, unsigned n, const unsigned* d, size_t r, uint64_t k, const char* method,
                       qflag_result** out) {
  return guarded(ctx, out, [&](Record& rec) {
    const auto shape = make_shape(n, d, r);
    const std::string how = method_or(method, "table");
    BigInt value;
    if (how == "table") {
      const auto t = qflag::mahonian_table(shape).counts;
      value = k < t.size() ? t[k] : BigInt(0);
    } else if (how == "denumerant") {
      value = qflag::mahonian_via_denumerant(shape, k, ctx->limits).psi_form;
    } else if (how == "binomial") {
      if (shape.r() + 1 != n) throw qflag::ValidationError("method binomial needs the full flag d = 1,...,n-1");
      value = qflag::full_mahonian_via_binomials(n, k);
    } else {
      throw qflag::ValidationError("unknown inv method '" + how + "' (table, denumerant, binomial)");
    }
    rec.kind = "inv";
    rec.parameters = {{"n", std::to_string(n)}, {"d", join_d(shape)}, {"k", std::to_string(k)}, {"method", how}};
    rec.columns = {"count"};
    rec.rows.push_back({value.get_str()});
  });
}

qflag_status qflag_psi(qflag_context* ctx, unsigned n, int64_t r, const char* method, qflag_result** out) {
  return guarded(ctx, out, [&](Record& rec) {
    const std::string how = method_or(method, "fn");
    const BigInt value = qflag::psi(n, r, parse_psi_method(how), ctx->limits);
    rec.kind = "psi";
    rec.parameters = {{"n", std::to_string(n)}, {"r", std::to_string(r)}, {"method", how}};
    rec.columns = {"psi"};
    rec.rows.push_back({value.get_str()});
  });
}

qflag_status qflag_denumerant(qflag_context* ctx, const long* w, size_t len, int64_t m, qflag_result** out) {
  return guarded(ctx, out, [&](Record& rec) {
    if (len > 0 && w == nullptr) throw qflag::ValidationError("null weight vector");
    const qflag::WeightVector weights(std::vector<long>(w, w + len));
    std::string ws;
    for (std::size_t i = 0; i < len; ++i) ws += (i ? "," : "") + std::to_string(w[i]);
    rec.kind = "denumerant";
    rec.parameters = {{"w", ws}, {"m", std::to_string(m)}};
    rec.columns = {"count"};
    rec.rows.push_back({qflag::denumerant(weights, m).get_str()});
  });
}

qflag_status qflag_bounds(qflag_context* ctx, unsigned n, const unsigned* d, size_t r, uint64_t k,
                          qflag_result** out) {
  return guarded(ctx, out, [&](Record& rec) {
    const auto shape = make_shape(n, d, r);
    const auto b = qflag::inv_bounds(shape, k);
    const auto t = qflag::mahonian_table(shape).counts;
    rec.kind = "bounds";
    rec.parameters = {{"n", std::to_string(n)}, {"d", join_d(shape)}, {"k", std::to_string(k)}};
    rec.columns = {"lower", "count", "upper"};
    rec.rows.push_back({b.lower.to_string(), (k < t.size() ? t[k] : BigInt(0)).get_str(), b.upper.to_string()});
  });
}

qflag_status qflag_flags(qflag_context* ctx, unsigned n, const unsigned* d, size_t r, uint32_t p, const char* mode,
                         qflag_result** out) {
  return guarded(ctx, out, [&](Record& rec) {
    const auto shape = make_shape(n, d, r);
    const std::string how = method_or(mode, "list");
    rec.kind = "flags";
    rec.parameters = {{"n", std::to_string(n)}, {"d", join_d(shape)}, {"p", std::to_string(p)}, {"mode", how}};
    if (how == "list") {
      rec.columns = {"index", "flag"};
      qflag::enumerate_flags(
          shape, p, [&](const qflag::Flag& f) { rec.rows.push_back({std::to_string(rec.rows.size()), f.to_string()}); },
          ctx->limits);
    } else if (how == "count") {
      rec.columns = {"count"};
      rec.rows.push_back({std::to_string(qflag::enumerate_flags(shape, p, [](const qflag::Flag&) {}, ctx->limits))});
    } else if (how == "cells") {
      if (!qflag::is_prime(p)) throw qflag::ValidationError("p must be prime");
      rec.columns = {"sigma", "lambda", "points"};
      qflag::enumerate_partitions(
          shape,
          [&](const qflag::OrderedSetPartition& sigma) {
            const auto lambda = qflag::sigma_stats(sigma).lambda;
            BigInt points;
            mpz_ui_pow_ui(points.get_mpz_t(), p, lambda);
            rec.rows.push_back({sigma.to_string(), std::to_string(lambda), points.get_str()});
          },
          ctx->limits);
    } else {
      throw qflag::ValidationError("unknown flags mode '" + how + "' (list, count, cells)");
    }
  });
}

qflag_status qflag_tau(qflag_context* ctx, unsigned n, unsigned d1, uint64_t k, qflag_result** out) {
  return guarded(ctx, out, [&](Record& rec) {
    const auto tau = qflag::tau_for_lambda(n, d1, k);
    rec.kind = "tau";
    rec.parameters = {{"n", std::to_string(n)}, {"d1", std::to_string(d1)}, {"k", std::to_string(k)}};
    rec.columns = {"tau", "lambda"};
    rec.rows.push_back({tau.to_string(), std::to_string(qflag::sigma_stats(tau).lambda)});
  });
}

qflag_status qflag_verify(qflag_context* ctx, const char* suite, unsigned max_n, qflag_result** out) {
  return guarded(ctx, out, [&](Record& rec) {
    const std::string name = suite ? suite : "all";
    rec.kind = "verify";
    rec.parameters = {{"suite", name}, {"max_n", std::to_string(max_n)}};
    rec.columns = {"suite", "check", "result", "detail"};
    std::size_t failures = 0;
    for (const auto& c : qflag::run_verification(name, max_n, ctx->limits, ctx->jobs)) {
      rec.rows.push_back({c.suite, c.name, c.passed ? "pass" : "fail", c.detail});
      failures += c.passed ? 0 : 1;
    }
    if (failures > 0) throw VerifyFailed(std::to_string(failures) + " check(s) failed");
  });
}

void qflag_result_free(qflag_result* result) { delete result; }

const char* qflag_result_kind(const qflag_result* result) { return result ? result->record.kind.c_str() : nullptr; }

size_t qflag_result_columns(const qflag_result* result) { return result ? result->record.columns.size() : 0; }

size_t qflag_result_rows(const qflag_result* result) { return result ? result->record.rows.size() : 0; }

const char* qflag_result_column_name(const qflag_result* result, size_t column) {
  if (result == nullptr || column >= result->record.columns.size()) return nullptr;
  return result->record.columns[column].c_str();
}

const char* qflag_result_cell(const qflag_result* result, size_t row, size_t column) {
  if (result == nullptr || row >= result->record.rows.size() || column >= result->record.rows[row].size()) {
    return nullptr;
  }
  return result->record.rows[row][column].c_str();
}

qflag_status qflag_result_render(qflag_context* ctx, const qflag_result* result, const char* format, char** out) {
  if (ctx == nullptr) return QFLAG_E_VALIDATION;
  ctx->last_error.clear();
  if (result == nullptr || out == nullptr) {
    ctx->last_error = "null argument";
    return QFLAG_E_VALIDATION;
  }
  *out = nullptr;
  try {
    const std::string text = qflag::render(result->record, qflag::parse_output_format(format ? format : "table"));
    char* buf = static_cast<char*>(std::malloc(text.size() + 1));
    if (buf == nullptr) {
      ctx->last_error = "out of memory";
      return QFLAG_E_INTERNAL;
    }
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *out = buf;
    return QFLAG_OK;
  } catch (const qflag::ValidationError& e) {
    ctx->last_error = e.what();
    return QFLAG_E_VALIDATION;
  } catch (const std::exception& e) {
    ctx->last_error = e.what();
    return QFLAG_E_INTERNAL;
  }
}

void qflag_string_free(char* s) { std::free(s); }

}  // extern "C"
