#include "dirpareto/dirpareto.h"

#include <exception>
#include <new>
#include <string>

#include "dirpareto/commands.hpp"
#include "dirpareto/gallery.hpp"
#include "dirpareto/scalarize.hpp"

struct dp_session {
  dirpareto::cli::RunOptions options;
  std::string last_error;
};

struct dp_result {
  int exit_code = DP_EXIT_ERROR;
  std::string verdict;
  std::string report;
  std::string csv;
  std::string svg;
};

namespace {

using dirpareto::Error;
using dirpareto::ErrorCode;
namespace cli = dirpareto::cli;

dp_status status_of(ErrorCode c) {
  switch (c) {
    case ErrorCode::kInvalidArgument: return DP_INVALID_ARGUMENT;
    case ErrorCode::kDimensionMismatch: return DP_DIMENSION_MISMATCH;
    case ErrorCode::kParse: return DP_PARSE_ERROR;
    case ErrorCode::kDomain: return DP_DOMAIN_ERROR;
    case ErrorCode::kNumerical: return DP_NUMERICAL_ERROR;
    case ErrorCode::kIo: return DP_IO_ERROR;
  }
  return DP_INTERNAL_ERROR;
}

dp_result* wrap(const cli::CommandResult& r) {
  auto* out = new dp_result;
  out->exit_code = r.exit_code;
  out->verdict = r.verdict;
  out->report = cli::dump_report(r.report);
  out->csv = r.csv;
  out->svg = r.svg;
  return out;
}

template <typename Fn>
dp_status guarded(dp_session* s, const char* command, dp_result** out, Fn fn) {
  if (!s || !out) return DP_INVALID_ARGUMENT;
  *out = nullptr;
  dp_status st = DP_OK;
  std::string msg;
  try {
    *out = wrap(fn());
    s->last_error.clear();
    return DP_OK;
  } catch (const Error& e) {
    st = status_of(e.code());
    msg = e.what();
  } catch (const std::bad_alloc&) {
    st = DP_INTERNAL_ERROR;
    msg = "out of memory";
  } catch (const std::exception& e) {
    st = DP_INTERNAL_ERROR;
    msg = e.what();
  }
  s->last_error = msg;
  try {
    *out = wrap(cli::error_result(command ? command : "", msg, static_cast<int>(st)));
  } catch (...) {
    *out = nullptr;
  }
  return st;
}

}  // namespace

extern "C" {

const char* dp_version(void) { return "1.0.0"; }

dp_status dp_session_create(dp_session** out) {
  if (!out) return DP_INVALID_ARGUMENT;
  *out = new (std::nothrow) dp_session;
  return *out ? DP_OK : DP_INTERNAL_ERROR;
}

void dp_session_destroy(dp_session* session) { delete session; }

dp_status dp_session_set_option(dp_session* s, const char* key, const char* value) {
  if (!s || !key || !value) return DP_INVALID_ARGUMENT;
  const std::string k = key;
  const std::string v = value;
  try {
    std::size_t used = 0;
    auto whole = [&](std::size_t n) {
      if (n != v.size()) throw std::invalid_argument("trailing characters");
    };
    if (k == "radius") {
      const double r = std::stod(v, &used);
      whole(used);
      if (!(r > 0.0)) throw std::invalid_argument("radius must be positive");
      s->options.radius = r;
    } else if (k == "levels" || k == "rays") {
      const int n = std::stoi(v, &used);
      whole(used);
      if (n <= 0) throw std::invalid_argument(k + " must be positive");
      (k == "levels" ? s->options.levels : s->options.rays) = n;
    } else if (k == "seed") {
      s->options.seed = std::stoull(v, &used);
      whole(used);
    } else if (k == "norm") {
      if (v == "l2") {
        s->options.norm = dirpareto::mintime::Norm::kL2;
      } else if (v == "linf") {
        s->options.norm = dirpareto::mintime::Norm::kLinf;
      } else {
        throw std::invalid_argument("norm must be l2 or linf");
      }
    } else if (k == "tol") {
      const double t = std::stod(v, &used);
      whole(used);
      if (!(t > 0.0)) throw std::invalid_argument("tol must be positive");
      s->options.tol = t;
    } else if (k == "weak") {
      if (v != "0" && v != "1") throw std::invalid_argument("weak must be 0 or 1");
      s->options.weak = v == "1";
    } else {
      s->last_error = "unknown option '" + k + "'";
      return DP_INVALID_ARGUMENT;
    }
  } catch (const std::exception& e) {
    s->last_error = "option " + k + ": " + e.what();
    return DP_INVALID_ARGUMENT;
  }
  s->last_error.clear();
  return DP_OK;
}

const char* dp_session_last_error(const dp_session* s) { return s ? s->last_error.c_str() : ""; }

dp_status dp_run(dp_session* s, const char* command, const char* problem_json, dp_result** out) {
  return guarded(s, command, out, [&] {
    if (!command || !problem_json) throw Error(ErrorCode::kInvalidArgument, "null argument");
    return cli::run_command(command, cli::parse_problem(problem_json), s->options);
  });
}

dp_status dp_run_file(dp_session* s, const char* command, const char* path, dp_result** out) {
  return guarded(s, command, out, [&] {
    if (!command || !path) throw Error(ErrorCode::kInvalidArgument, "null argument");
    return cli::run_command(command, cli::load_problem(path), s->options);
  });
}

dp_status dp_run_example(dp_session* s, const char* name, dp_result** out) {
  return guarded(s, "examples run", out, [&] {
    if (!name) throw Error(ErrorCode::kInvalidArgument, "null argument");
    return cli::run_example(name, s->options);
  });
}

dp_status dp_list_examples(dp_session* s, dp_result** out) {
  return guarded(s, "examples list", out, [] { return cli::list_examples(); });
}

int dp_result_exit_code(const dp_result* r) { return r ? r->exit_code : DP_EXIT_ERROR; }
const char* dp_result_verdict(const dp_result* r) { return r ? r->verdict.c_str() : ""; }
const char* dp_result_report(const dp_result* r) { return r ? r->report.c_str() : ""; }
const char* dp_result_csv(const dp_result* r) { return r ? r->csv.c_str() : ""; }
const char* dp_result_svg(const dp_result* r) { return r ? r->svg.c_str() : ""; }
void dp_result_destroy(dp_result* r) { delete r; }

size_t dp_example_count(void) { return cli::gallery_names().size(); }

const char* dp_example_name(size_t i) {
  const auto& n = cli::gallery_names();
  return i < n.size() ? n[i].c_str() : nullptr;
}

size_t dp_command_count(void) { return cli::command_names().size(); }

const char* dp_command_name(size_t i) {
  const auto& n = cli::command_names();
  return i < n.size() ? n[i].c_str() : nullptr;
}

dp_status dp_gerstewitz_value(const double* rows, size_t nrows, size_t dim, const double* e,
                              const double* y, double* value) {
  if (!rows || !e || !y || !value || nrows == 0 || dim == 0) return DP_INVALID_ARGUMENT;
  try {
    std::vector<dirpareto::Vector> k;
    for (size_t i = 0; i < nrows; ++i) {
      k.push_back(Eigen::Map<const dirpareto::Vector>(rows + i * dim, static_cast<Eigen::Index>(dim)));
    }
    const dirpareto::scalarize::ScalarizationContext ctx(
        dirpareto::geometry::HalfspaceCone(dim, std::move(k)),
        Eigen::Map<const dirpareto::Vector>(e, static_cast<Eigen::Index>(dim)));
    *value = dirpareto::scalarize::gerstewitz_value(
        ctx, Eigen::Map<const dirpareto::Vector>(y, static_cast<Eigen::Index>(dim)));
    return DP_OK;
  } catch (const Error& ex) {
    return status_of(ex.code());
  } catch (...) {
    return DP_INTERNAL_ERROR;
  }
}

}  // extern "C"
