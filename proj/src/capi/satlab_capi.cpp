#include "satlab.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "satlab/error.hpp"
#include "satlab/problem.hpp"

struct satlab_problem {
  satlab::Problem problem;
};

struct satlab_report {
  satlab::Report report;
};

namespace {

thread_local std::string last_error;

satlab_status status_of(satlab::ErrorKind kind) {
  switch (kind) {
    case satlab::ErrorKind::Structural: return SATLAB_ERR_STRUCTURAL;
    case satlab::ErrorKind::Precondition: return SATLAB_ERR_PRECONDITION;
    case satlab::ErrorKind::Construction: return SATLAB_ERR_CONSTRUCTION;
    case satlab::ErrorKind::Capacity: return SATLAB_ERR_CAPACITY;
    case satlab::ErrorKind::Consistency: return SATLAB_ERR_CONSISTENCY;
    case satlab::ErrorKind::Parse: return SATLAB_ERR_PARSE;
    case satlab::ErrorKind::Schema: return SATLAB_ERR_SCHEMA;
    case satlab::ErrorKind::Internal: return SATLAB_ERR_INTERNAL;
  }
  return SATLAB_ERR_INTERNAL;
}

satlab_status failure(satlab_status s, const std::string& message) {
  last_error = message;
  return s;
}

template <class F>
satlab_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return SATLAB_OK;
  } catch (const satlab::Error& e) {
    return failure(status_of(e.kind()), std::string(satlab::to_string(e.kind())) + " error: " + e.what());
  } catch (const std::bad_alloc&) {
    return failure(SATLAB_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return failure(SATLAB_ERR_INTERNAL, std::string("internal error: ") + e.what());
  }
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

satlab::RunOptions options_of(const satlab_options* o) {
  satlab::RunOptions r;
  if (o) {
    if (o->has_epsilon) r.epsilon = o->epsilon;
    r.seed = o->seed;
  }
  return r;
}

template <class Run>
satlab_status run(const satlab_problem* problem, satlab_report** out, Run&& body) {
  if (!problem || !out) return failure(SATLAB_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new satlab_report{body(problem->problem)}; });
}

}  // namespace

extern "C" {

const char* satlab_version(void) { return "0.1.0"; }

const char* satlab_status_string(satlab_status status) {
  switch (status) {
    case SATLAB_OK: return "ok";
    case SATLAB_ERR_STRUCTURAL: return "structural error";
    case SATLAB_ERR_PRECONDITION: return "precondition error";
    case SATLAB_ERR_CONSTRUCTION: return "construction error";
    case SATLAB_ERR_CAPACITY: return "capacity error";
    case SATLAB_ERR_CONSISTENCY: return "consistency error";
    case SATLAB_ERR_PARSE: return "parse error";
    case SATLAB_ERR_SCHEMA: return "schema error";
    case SATLAB_ERR_INTERNAL: return "internal error";
    case SATLAB_ERR_ARGUMENT: return "invalid argument";
  }
  return "unknown status";
}

const char* satlab_last_error(void) { return last_error.c_str(); }

satlab_status satlab_problem_parse(const char* text, size_t length, satlab_problem** out) {
  if (!text || !out) return failure(SATLAB_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new satlab_problem{satlab::Problem::parse(std::string_view(text, length))}; });
}

void satlab_problem_destroy(satlab_problem* problem) { delete problem; }

satlab_status satlab_problem_kind(const satlab_problem* problem, char** out) {
  if (!problem || !out) return failure(SATLAB_ERR_ARGUMENT, "null argument");
  return guarded([&] { *out = duplicate(problem->problem.kind()); });
}

satlab_status satlab_problem_canonical_json(const satlab_problem* problem, char** out) {
  if (!problem || !out) return failure(SATLAB_ERR_ARGUMENT, "null argument");
  return guarded([&] { *out = duplicate(problem->problem.canonical_json()); });
}

satlab_status satlab_run_analyze(const satlab_problem* problem, const satlab_options* options, satlab_report** out) {
  return run(problem, out, [&](const satlab::Problem& p) { return satlab::run_analyze(p, options_of(options)); });
}

satlab_status satlab_run_strata(const satlab_problem* problem, const satlab_options* options, satlab_report** out) {
  return run(problem, out, [&](const satlab::Problem& p) { return satlab::run_strata(p, options_of(options)); });
}

satlab_status satlab_run_hopf(const satlab_problem* problem, const satlab_options* options, satlab_report** out) {
  return run(problem, out, [&](const satlab::Problem& p) { return satlab::run_hopf(p, options_of(options)); });
}

satlab_status satlab_run_graph_witness(const satlab_problem* problem, const satlab_options* options,
                                       const satlab_graph_query* query, satlab_report** out) {
  satlab::GraphQuery q;
  if (query) {
    if (query->alpha) q.alpha = query->alpha;
    if (query->beta) q.beta = query->beta;
    if (query->has_n) q.n = query->n;
    if (query->has_batch) q.batch = query->batch;
  }
  return run(problem, out,
             [&](const satlab::Problem& p) { return satlab::run_graph_witness(p, options_of(options), q); });
}

satlab_status satlab_report_json(const satlab_report* report, int include_timing, char** out) {
  if (!report || !out) return failure(SATLAB_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    nlohmann::json data = report->report.data;
    if (!include_timing) data.erase("timing_ms");
    *out = duplicate(data.dump(2));
  });
}

satlab_status satlab_report_text(const satlab_report* report, char** out) {
  if (!report || !out) return failure(SATLAB_ERR_ARGUMENT, "null argument");
  return guarded([&] { *out = duplicate(report->report.text); });
}

void satlab_report_destroy(satlab_report* report) { delete report; }

void satlab_string_free(char* s) { std::free(s); }

}  // extern "C"
