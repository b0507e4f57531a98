// Acceptance runner: one pass/fail line per numbered criterion.
//   acceptance [--criterion N] [--golden DIR]

#include "holorot/cli.hpp"
#include "holorot/verify.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>

using namespace holorot;

namespace {

struct Capture {
  int code;
  std::string out;
};

Capture capture(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::main_entry(args, out, err);
  return {code, out.str()};
}

// Every command run twice in-process must give identical bytes.
std::string cli_determinism(const std::string& golden) {
  std::vector<std::vector<std::string>> commands{
      {"generate", "--kind", "product:DiagonalSphere", "--seed", "17", "--rank", "3"},
      {"generate", "--kind", "spinstanton", "--seed", "18"},
      {"spin7", "--format", "csv"},
      {"verify", "--suite", "kahler", "--format", "text"},
  };
  if (!golden.empty()) {
    const std::string full = golden + "/product_DiagonalSphere.json";
    const std::string quat = golden + "/quat_hyperholomorphic.json";
    const std::string spin = golden + "/spin7_hyperkahler.json";
    commands.push_back({"decompose", "--in", full});
    commands.push_back({"decompose", "--in", quat, "--format", "text"});
    commands.push_back({"classify", "--in", full});
    commands.push_back({"classify", "--in", spin, "--samples", "300"});
    commands.push_back({"calibrate", "--in", quat, "--samples", "300", "--format", "csv"});
    commands.push_back({"calibrate", "--in", full, "--grid", "12", "--format", "csv"});
  }
  std::string failures;
  for (const auto& c : commands) {
    const Capture a = capture(c), b = capture(c);
    if (a.code != 0 || a.code != b.code || a.out != b.out || a.out.empty()) failures += " [" + c.front() + "]";
  }
  return failures;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  std::string golden;
  app.add_option("--criterion", only, "run a single criterion (1-9)")->check(CLI::Range(1, 9));
  app.add_option("--golden", golden, "golden model directory");
  CLI11_PARSE(app, argc, argv);

  VerifyOptions o;
  if (!golden.empty()) o.golden_dir = golden;
  using Fn = CriterionResult (*)(const VerifyOptions&);
  const Fn fns[] = {check_quaternionic_ranks, check_w_h_intersection, check_calibration_maximum,
                    check_spin7_spectrum,     check_spin_rotation,    check_product_classifier,
                    check_corollary,          check_common_11,        check_models_and_golden};
  bool all = true;
  for (int id = 1; id <= 9; ++id) {
    if (only != 0 && id != only) continue;
    CriterionResult r = fns[id - 1](o);
    if (id == 9) {
      const std::string bad = cli_determinism(golden);
      if (!bad.empty()) {
        r.passed = false;
        r.detail = (r.detail == "ok" ? "" : r.detail + "; ") + "CLI output differs between runs:" + bad;
      }
    }
    all = all && r.passed;
    std::printf("criterion %d: %s  %s (%.2f s) %s\n", r.id, r.passed ? "PASS" : "FAIL", r.name.c_str(), r.seconds,
                r.passed ? "" : r.detail.c_str());
  }
  return all ? 0 : 1;
}
