#include "fermatball/fermatball.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "fermatball/error.hpp"
#include "fermatball/namba.hpp"
#include "fermatball/report.hpp"

struct fb_report {
  fermatball::report::Report value;
};

struct fb_arrangement {
  fermatball::namba::BranchArrangement value;
};

namespace {

thread_local std::string last_error;

fb_status to_status(fermatball::ErrorCode code) {
  switch (code) {
    case fermatball::ErrorCode::InvalidArgument: return FB_ERR_INVALID_ARGUMENT;
    case fermatball::ErrorCode::Parse: return FB_ERR_PARSE;
    case fermatball::ErrorCode::Domain: return FB_ERR_DOMAIN;
    case fermatball::ErrorCode::Budget: return FB_ERR_BUDGET;
    case fermatball::ErrorCode::Numerical: return FB_ERR_NUMERICAL;
    case fermatball::ErrorCode::Internal: return FB_ERR_INTERNAL;
  }
  return FB_ERR_INTERNAL;
}

template <class F>
fb_status guarded(F&& body) {
  last_error.clear();
  try {
    body();
    return FB_OK;
  } catch (const fermatball::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown failure";
  }
  return FB_ERR_INTERNAL;
}

fb_status null_argument(const char* what) {
  last_error = std::string("null argument: ") + what;
  return FB_ERR_INVALID_ARGUMENT;
}

template <class F>
fb_status make_report(fb_report** out, F&& build) {
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new fb_report{build()}; });
}

}  // namespace

extern "C" {

const char* fb_version(void) { return "0.1.0"; }

const char* fb_last_error(void) { return last_error.c_str(); }

const char* fb_status_name(fb_status status) {
  switch (status) {
    case FB_OK: return "ok";
    case FB_ERR_INVALID_ARGUMENT: return "invalid argument";
    case FB_ERR_PARSE: return "parse error";
    case FB_ERR_DOMAIN: return "domain error";
    case FB_ERR_BUDGET: return "budget exceeded";
    case FB_ERR_NUMERICAL: return "numerical failure";
    case FB_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

fb_status fb_verify(const char* suite, unsigned workers, fb_report** out) {
  if (!suite) return null_argument("suite");
  return make_report(out, [&] {
    fermatball::report::RunOptions opt;
    opt.workers = workers == 0 ? 1 : workers;
    return fermatball::report::run_suite(suite, opt);
  });
}

fb_status fb_arrangement_load(const char* path, fb_arrangement** out) {
  if (!path) return null_argument("path");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new fb_arrangement{fermatball::namba::load_arrangement(path)}; });
}

fb_status fb_arrangement_parse(const char* text, fb_arrangement** out) {
  if (!text) return null_argument("text");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new fb_arrangement{fermatball::namba::parse_arrangement(text)}; });
}

fb_status fb_arrangement_builtin(const char* name, fb_arrangement** out) {
  if (!name) return null_argument("name");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    const std::string n = name;
    if (n == "p2-quadrilateral")
      *out = new fb_arrangement{fermatball::namba::p2_quadrilateral()};
    else if (n == "dp5-ten-curves")
      *out = new fb_arrangement{fermatball::namba::dp5_ten_curves()};
    else
      fermatball::fail(fermatball::ErrorCode::InvalidArgument, "unknown built-in arrangement '" + n + "'");
  });
}

fb_status fb_arrangement_rank(const fb_arrangement* arr, size_t* out) {
  if (!arr) return null_argument("arrangement");
  if (!out) return null_argument("out");
  *out = arr->value.lattice.rank();
  last_error.clear();
  return FB_OK;
}

fb_status fb_arrangement_branch_count(const fb_arrangement* arr, size_t* out) {
  if (!arr) return null_argument("arrangement");
  if (!out) return null_argument("out");
  *out = arr->value.branches.size();
  last_error.clear();
  return FB_OK;
}

void fb_arrangement_free(fb_arrangement* arr) { delete arr; }

fb_status fb_namba_classify(const fb_arrangement* arr, fb_report** out) {
  if (!arr) return null_argument("arrangement");
  return make_report(out, [&] { return fermatball::report::namba_classify(arr->value); });
}

fb_status fb_lattice_search(long height, unsigned workers, fb_report** out) {
  return make_report(out, [&] { return fermatball::report::lattice_search(height, workers); });
}

fb_status fb_lattice_quotient(unsigned level, int with_diagonal, size_t budget, int compare_rank, fb_report** out) {
  return make_report(out, [&] {
    return fermatball::report::lattice_quotient(level, with_diagonal != 0, budget == 0 ? 10'000'000 : budget,
                                                compare_rank);
  });
}

fb_status fb_lattice_member(const char* matrix, fb_report** out) {
  if (!matrix) return null_argument("matrix");
  return make_report(out, [&] { return fermatball::report::lattice_member(matrix); });
}

fb_status fb_dm_enumerate(int max_denominator, fb_report** out) {
  return make_report(out, [&] { return fermatball::report::dm_enumerate(max_denominator); });
}

fb_status fb_dm_periods(const char* mu, const char* points, int samples, unsigned long seed, fb_report** out) {
  if (!mu) return null_argument("mu");
  if (!points) return null_argument("points");
  return make_report(out, [&] { return fermatball::report::dm_periods(mu, points, samples, seed); });
}

fb_status fb_report_totals(const fb_report* report, size_t* total, size_t* passed) {
  if (!report) return null_argument("report");
  if (total) *total = report->value.checks.size();
  if (passed) *passed = report->value.passed();
  last_error.clear();
  return FB_OK;
}

fb_status fb_report_render(const fb_report* report, fb_format format, char** out) {
  if (!report) return null_argument("report");
  if (!out) return null_argument("out");
  *out = nullptr;
  if (format != FB_FORMAT_JSON && format != FB_FORMAT_MARKDOWN) {
    last_error = "unknown report format";
    return FB_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    const std::string text = fermatball::report::render(
        report->value, format == FB_FORMAT_JSON ? fermatball::report::Format::Json : fermatball::report::Format::Markdown);
    char* buf = static_cast<char*>(std::malloc(text.size() + 1));
    if (!buf) throw std::bad_alloc();
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *out = buf;
  });
}

void fb_report_free(fb_report* report) { delete report; }

void fb_string_free(char* s) { std::free(s); }

}  // extern "C"
