// Prints one PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "sbt/suites.hpp"

using namespace sbt;
namespace fs = std::filesystem;

namespace {

struct Criterion {
  int number;
  std::string title;
  std::vector<std::string> prefixes;
};

bool has_prefix(const std::string& id, const std::vector<std::string>& prefixes) {
  for (const auto& p : prefixes)
    if (id.rfind(p + "/", 0) == 0) return true;
  return false;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

int main() {
  RunConfig cfg;
  cfg.seed = 7;
  const auto reports = run_suite("all", cfg);

  const std::vector<Criterion> criteria{
      {1, "plancherel on torus-1, torus-2, su2", {"plancherel"}},
      {2, "heat transform isometry on T1", {"isometry"}},
      {3, "nu_r exponential moments", {"nu_moment"}},
      {4, "fractional Bergman weight equality", {"weighted_bergman"}},
      {5, "truncated gamma multiplier bounds", {"multiplier_bounds"}},
      {6, "fractional Sobolev isometry", {"sobolev_isometry", "cts_bergman"}},
      {7, "equivalence ratio stability", {"equivalence"}},
      {8, "extension order, c_s spread, lambda^s", {"extension"}},
      {9, "Hermite level norms against U_t", {"level_norm"}},
      {10, "U_t quadrature vs closed form", {"ut_closed_form"}},
      {11, "Hermite transform isometry", {"hermite_isometry", "level_isometry"}},
      {12, "Gutzmer identity", {"gutzmer"}},
      {13, "Hermite Sobolev isometry and equivalence", {"hermite_sobolev", "tts_bergman", "hermite_equivalence"}},
  };

  bool all_ok = true;
  for (const auto& c : criteria) {
    int n = 0, failed = 0;
    double worst = 0.0;
    std::string worst_id;
    for (const auto& r : reports) {
      if (!has_prefix(r.id, c.prefixes)) continue;
      ++n;
      if (!r.pass) {
        ++failed;
        if (worst_id.empty()) worst_id = r.id;
      }
      worst = std::max(worst, r.rel_err);
    }
    const bool ok = n > 0 && failed == 0;
    all_ok = all_ok && ok;
    std::printf("criterion %2d %s  %-42s checks=%d failed=%d max_rel_err=%.3g%s%s\n", c.number, ok ? "PASS" : "FAIL",
                c.title.c_str(), n, failed, worst, worst_id.empty() ? "" : " first_failure=", worst_id.c_str());
  }
  for (const auto& r : reports)
    if (r.id.find("/error") != std::string::npos) {
      std::printf("error report %s: %s\n", r.id.c_str(), r.meta.dump().c_str());
      all_ok = false;
    }

  const fs::path base = fs::temp_directory_path() / "sbt_acceptance";
  fs::remove_all(base);
  bool same = true;
  std::string first;
  for (int run = 0; run < 2; ++run) {
    const fs::path dir = base / ("run" + std::to_string(run));
    const std::string cmd =
        std::string(SBT_CLI_PATH) + " verify --suite all --seed 7 --out " + dir.string() + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    const std::string json = slurp(dir / "report_all.json");
    if (WEXITSTATUS(status) != 0 || json.empty()) same = false;
    if (run == 0) first = json;
    else same = same && json == first;
  }
  all_ok = all_ok && same;
  std::printf("criterion 14 %s  %-42s bytes=%zu\n", same ? "PASS" : "FAIL", "verify --suite all is deterministic",
              first.size());
  return all_ok ? 0 : 1;
}
