#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;

const std::string kScenario =
    std::string(PACT_DATA_DIR) + "/scenarios/free_circle.json";

// Exit code of the installed binary; output is discarded.
int run_cli(const std::string& args) {
  const std::string cmd =
      std::string(PACT_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("run writes a trace and matching metadata") {
  const std::string out = "cli_test_out";
  fs::remove_all(out);
  CHECK(run_cli("run --scenario " + kScenario + " --out " + out) == 0);

  const fs::path csv = fs::path(out) / "free_circle_trace.csv";
  const fs::path meta = fs::path(out) / "free_circle_meta.json";
  REQUIRE(fs::exists(csv));
  REQUIRE(fs::exists(meta));

  std::ifstream mf(meta);
  nlohmann::json j;
  mf >> j;
  CHECK(j.at("scenario") == "free_circle");
  CHECK(j.at("rows") == 800);  // 8 s at 100 Hz
  CHECK(j.at("seed") == 11);

  std::ifstream cf(csv);
  std::string header;
  std::getline(cf, header);
  CHECK(header.rfind("t,q0,", 0) == 0);
  size_t lines = 0;
  for (std::string l; std::getline(cf, l);) ++lines;
  CHECK(lines == 800);
}

TEST_CASE("seed and parameter overrides reach the run") {
  const std::string out = "cli_test_out_set";
  fs::remove_all(out);
  CHECK(run_cli("run --scenario " + kScenario +
                " --seed 123 --set K_p=30 --out " + out) == 0);
  std::ifstream mf(fs::path(out) / "free_circle_meta.json");
  REQUIRE(mf);
  nlohmann::json j;
  mf >> j;
  CHECK(j.at("seed") == 123);
  CHECK(j.at("params").at("K_p") == 30.0);
}

TEST_CASE("sensing toggles are accepted") {
  CHECK(run_cli("run --scenario " + kScenario +
                " --no-proximity --no-restrictions") == 0);
}

TEST_CASE("compare runs both variants") {
  CHECK(run_cli("compare --scenario " + kScenario) == 0);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("run") == 2);                       // missing --scenario
  CHECK(run_cli("run --bogus") == 2);               // unknown flag
  CHECK(run_cli("") == 2);                          // missing subcommand
  CHECK(run_cli("run --scenario /no/such/file.json") == 2);
  CHECK(run_cli("run --scenario " + kScenario + " --set nope=1") == 2);
  CHECK(run_cli("run --scenario " + kScenario + " --set K_p") == 2);
}

TEST_CASE("help exits cleanly") {
  CHECK(run_cli("--help") == 0);
  CHECK(run_cli("run --help") == 0);
}
