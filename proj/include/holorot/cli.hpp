// Command-line front end: argument parsing, command dispatch and report
// rendering in json, csv or text.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace holorot::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNotRotable = 2;
inline constexpr int kExitUsage = 64;

enum class Format { Json, Csv, Text };

struct RunConfig {
  std::string command;  // decompose, classify, calibrate, verify, generate, spin7
  std::string input;
  std::string output;
  Format format = Format::Json;
  double tol = 1e-9;
  std::size_t grid = 64;
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  /// "quat:n", "quaternionic" (with n), "complex:m", "spin7" or "k3xk3";
  /// empty means "take it from the model file".
  std::string structure;
  int n = 2;
  std::string expect;
  std::string kind;
  int rank = 2;
  int variant = 0;
  double lambda = 0.0;
  std::string suite = "all";
  std::string golden;
  bool allow_non_hym = false;

  /// Throws holorot::Error on a violated invariant.
  void validate() const;
};

/// Executes one command, writing the report to `out` (or the --out file)
/// and diagnostics to `err`. Returns the process exit code.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv and runs; usage errors return kExitUsage.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace holorot::cli
