#include "holorot/cli.hpp"
#include "holorot/io.hpp"

#include <doctest.h>

#include <filesystem>
#include <sstream>

using namespace holorot;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::main_entry(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("holorot_cli_" + name)).string();
}

}  // namespace

TEST_CASE("usage errors exit 64") {
  CHECK(run_cli({}).code == cli::kExitUsage);
  CHECK(run_cli({"frobnicate"}).code == cli::kExitUsage);
  CHECK(run_cli({"spin7", "--bogus"}).code == cli::kExitUsage);
  CHECK(run_cli({"spin7", "--format", "yaml"}).code == cli::kExitUsage);
  CHECK(run_cli({"spin7", "--tol", "0"}).code == cli::kExitUsage);
  CHECK(run_cli({"spin7", "--grid", "1"}).code == cli::kExitUsage);
  CHECK(run_cli({"--help"}).code == cli::kExitOk);
}

TEST_CASE("runtime errors exit 1") {
  const Run r = run_cli({"classify", "--in", temp_file("missing.json")});
  CHECK(r.code == cli::kExitError);
  CHECK(r.err.find("holorot:") == 0);
  CHECK(run_cli({"decompose"}).code == cli::kExitError);
  CHECK(run_cli({"generate", "--kind", "nonsense"}).code == cli::kExitError);
}

TEST_CASE("generate then classify") {
  const std::string path = temp_file("full.json");
  REQUIRE(run_cli({"generate", "--kind", "product:FullProduct", "--seed", "9", "--out", path}).code == 0);
  const Run r = run_cli({"classify", "--structure", "k3xk3", "--in", path});
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["verdict"] == "FullProduct");
  CHECK(run_cli({"classify", "--in", path, "--expect", "rotable"}).code == 0);
  CHECK(run_cli({"classify", "--in", path, "--expect", "LeftSphere"}).code == cli::kExitNotRotable);

  const std::string nr = temp_file("nr.json");
  REQUIRE(run_cli({"generate", "--kind", "product:NotRotable", "--seed", "9", "--out", nr}).code == 0);
  CHECK(run_cli({"classify", "--in", nr, "--expect", "rotable"}).code == cli::kExitNotRotable);
  CHECK(run_cli({"classify", "--in", nr}).code == 0);
  std::filesystem::remove(path);
  std::filesystem::remove(nr);
}

TEST_CASE("calibration sweep CSV is constant for hyperholomorphic input") {
  const std::string path = temp_file("hh.json");
  REQUIRE(run_cli({"generate", "--kind", "hyperholomorphic", "--structure", "quat:2", "--seed", "3", "--out", path})
              .code == 0);
  const Run r = run_cli({"calibrate", "--structure", "quaternionic", "--n", "2", "--in", path, "--samples", "200",
                         "--format", "csv"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "a,b,c,functional");
  std::vector<double> values;
  while (std::getline(lines, line)) values.push_back(std::stod(line.substr(line.rfind(',') + 1)));
  REQUIRE(values.size() == 202);
  for (double v : values) CHECK(v == doctest::Approx(values.front()).epsilon(1e-9));
  std::filesystem::remove(path);
}

TEST_CASE("structure mismatch is an error") {
  const std::string path = temp_file("sp.json");
  REQUIRE(run_cli({"generate", "--kind", "spinstanton", "--out", path}).code == 0);
  CHECK(run_cli({"decompose", "--in", path, "--structure", "quat:1"}).code == cli::kExitError);
  const Run r = run_cli({"decompose", "--in", path, "--format", "text"});
  CHECK(r.code == 0);
  CHECK(r.out.find("Lambda2_21") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("every format renders") {
  for (const char* f : {"json", "csv", "text"}) {
    const Run r = run_cli({"spin7", "--format", f});
    CHECK(r.code == 0);
    CHECK_FALSE(r.out.empty());
  }
  const Json j = Json::parse(run_cli({"spin7"}).out);
  CHECK(j["spectrum"][0]["eigenvalue"] == -1);
  CHECK(j["spectrum"][0]["multiplicity"] == 21);
  CHECK(j["table"]["rows"].size() == 14);
}
