#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>

#include "fermatball/fermatball.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Owned {
  fb_report* report = nullptr;
  ~Owned() { fb_report_free(report); }
};

int finish(fb_status status, fb_report* report, fb_format format) {
  Owned guard{report};
  if (status != FB_OK) {
    std::cerr << "error (" << fb_status_name(status) << "): " << fb_last_error() << "\n";
    return kExitUsage;
  }
  char* text = nullptr;
  if (fb_report_render(report, format, &text) != FB_OK) {
    std::cerr << "error: " << fb_last_error() << "\n";
    return kExitUsage;
  }
  std::fputs(text, stdout);
  fb_string_free(text);
  size_t total = 0, passed = 0;
  fb_report_totals(report, &total, &passed);
  return passed == total ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and numerical checks for a ball-quotient surface and its abelian covers", "fermatball"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "json";
  unsigned workers = 1;
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "md"}));
  app.add_option("--workers", workers, "Worker threads for searches")->check(CLI::Range(1u, 256u));

  std::string suite;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", suite, "fano, chern, namba, lattice, dm or all")->required();

  auto* namba = app.add_subcommand("namba", "Abelian covers of a branch arrangement");
  namba->require_subcommand(1);
  std::string arrangement_path;
  auto* classify = namba->add_subcommand("classify", "Cover group of an arrangement file");
  classify->add_option("file", arrangement_path, "Arrangement file")->required();

  auto* lattice = app.add_subcommand("lattice", "The congruence group over the Eisenstein integers");
  lattice->require_subcommand(1);
  long height = 1;
  auto* search = lattice->add_subcommand("search", "Enumerate group elements up to an entry-norm bound");
  search->add_option("--height", height, "Maximum entry norm")->required()->check(CLI::PositiveNumber);
  unsigned level = 2;
  bool with_diagonal = false;
  std::size_t budget = 10'000'000;
  auto* quotient = lattice->add_subcommand("quotient", "Finite image modulo a power of 1-w");
  quotient->add_option("--level", level, "Exponent k of the modulus")->required()->check(CLI::Range(1u, 8u));
  quotient->add_flag("--with-diagonal", with_diagonal, "Add the diagonal units to the generators");
  quotient->add_option("--budget", budget, "Maximum closure size");
  int compare_rank = -1;
  quotient->add_option("--compare-rank", compare_rank, "Expected abelianization rank")->check(CLI::NonNegativeNumber);
  std::string matrix;
  auto* member = lattice->add_subcommand("member", "Membership test for a 3x3 matrix");
  member->add_option("matrix", matrix, "Nine a+bw tokens, row-major")->required();

  auto* dm = app.add_subcommand("dm", "Hypergeometric tuples and periods");
  dm->require_subcommand(1);
  int max_den = 12;
  auto* enumerate = dm->add_subcommand("enumerate", "Tuples passing the integrality condition");
  enumerate->add_option("--max-den", max_den, "Largest common denominator")->required()->check(CLI::Range(1, 24));
  std::string mu, points;
  int samples = 8;
  unsigned long seed = 1;
  auto* periods = dm->add_subcommand("periods", "Periods and their numerical rank");
  periods->add_option("--mu", mu, "Five rationals p/q separated by commas")->required();
  periods->add_option("--points", points, "Five complex numbers re+imI separated by commas")->required();
  periods->add_option("--samples", samples, "Perturbed configurations")->check(CLI::Range(1, 200));
  periods->add_option("--seed", seed, "Perturbation seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  const fb_format fmt = format == "md" ? FB_FORMAT_MARKDOWN : FB_FORMAT_JSON;
  fb_report* report = nullptr;

  fb_status status = FB_ERR_INVALID_ARGUMENT;
  if (*verify) {
    status = fb_verify(suite.c_str(), workers, &report);
  } else if (*classify) {
    fb_arrangement* arr = nullptr;
    status = fb_arrangement_load(arrangement_path.c_str(), &arr);
    if (status == FB_OK) status = fb_namba_classify(arr, &report);
    fb_arrangement_free(arr);
  } else if (*search) {
    status = fb_lattice_search(height, workers, &report);
  } else if (*quotient) {
    status = fb_lattice_quotient(level, with_diagonal, budget, compare_rank, &report);
  } else if (*member) {
    status = fb_lattice_member(matrix.c_str(), &report);
  } else if (*enumerate) {
    status = fb_dm_enumerate(max_den, &report);
  } else if (*periods) {
    status = fb_dm_periods(mu.c_str(), points.c_str(), samples, seed, &report);
  }
  return finish(status, report, fmt);
}
