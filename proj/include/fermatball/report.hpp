#pragma once

// Verification suites and query reports, rendered as JSON or markdown.

#include <string>
#include <vector>

#include <json.hpp>

namespace fermatball::namba {
struct BranchArrangement;
}

namespace fermatball::report {

enum class Provenance { Paper, Trivial, Derived };
enum class Format { Json, Markdown };

std::string to_string(Provenance p);

struct CheckResult {
  std::string id;
  std::string expected;
  std::string computed;
  bool pass = false;
  Provenance provenance = Provenance::Derived;
  std::string comparison = "exact";
  std::string note;
};

struct Report {
  std::string suite;
  std::vector<CheckResult> checks;
  nlohmann::ordered_json data;  // null for verification suites

  std::size_t passed() const;
  bool all_pass() const { return passed() == checks.size(); }
};

struct RunOptions {
  unsigned workers = 1;
};

const std::vector<std::string>& suite_names();  // fano chern namba lattice dm all
Report run_suite(const std::string& name, const RunOptions& options = {});

Report namba_classify(const namba::BranchArrangement& arr);
Report lattice_search(long height, unsigned workers);
// compare_rank < 0 skips the rank comparison check.
Report lattice_quotient(unsigned level, bool with_diagonal, std::size_t budget = 10'000'000, int compare_rank = -1);
Report lattice_member(const std::string& matrix);
Report dm_enumerate(int max_denominator);
Report dm_periods(const std::string& mu, const std::string& points, int samples, unsigned long seed = 1);

std::string render(const Report& r, Format f);

}  // namespace fermatball::report
