// The numbered verification criteria, shared by the CLI `verify` command and
// the acceptance test binary.
#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace holorot {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyOptions {
  /// Directory with manifest.json and golden model files; skipped when unset.
  std::optional<std::filesystem::path> golden_dir;
  std::size_t calibration_samples = 1000;
  std::size_t spin7_samples = 10000;
  std::size_t grid = 64;
};

CriterionResult check_quaternionic_ranks(const VerifyOptions& o);     // 1
CriterionResult check_w_h_intersection(const VerifyOptions& o);       // 2
CriterionResult check_calibration_maximum(const VerifyOptions& o);    // 3
CriterionResult check_spin7_spectrum(const VerifyOptions& o);         // 4
CriterionResult check_spin_rotation(const VerifyOptions& o);          // 5
CriterionResult check_product_classifier(const VerifyOptions& o);     // 6
CriterionResult check_corollary(const VerifyOptions& o);              // 7
CriterionResult check_common_11(const VerifyOptions& o);              // 8
CriterionResult check_models_and_golden(const VerifyOptions& o);      // 9

/// "quaternionic" (1-3), "spin7" (4-5), "k3xk3" (6-7), "kahler" (8),
/// "models" (9) or "all".
std::vector<std::string> suite_names();
std::vector<CriterionResult> run_suite(const std::string& suite, const VerifyOptions& o);

/// Classifies every entry of a golden manifest and compares with the
/// recorded expectation; returns the number of failures.
std::size_t check_golden_manifest(const std::filesystem::path& dir, std::string& detail);

}  // namespace holorot
