#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "brandt/errors.hpp"
#include "brandt/scenario.hpp"

using namespace brandt;

namespace {

ScenarioSpec Parse(std::vector<std::string> args) {
  args.insert(args.begin(), {"brandt-lab", "run"});
  ParseResult r = ParseArgs(args);
  REQUIRE(r.spec.has_value());
  return *r.spec;
}

std::string UsageMessage(std::vector<std::string> args) {
  args.insert(args.begin(), {"brandt-lab", "run"});
  try {
    ParseArgs(args);
  } catch (const LabError& e) {
    CHECK(e.code() == ErrorCode::kUsageError);
    return e.what();
  }
  FAIL("expected UsageError");
  return "";
}

std::string Slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("parse examples") {
  const ScenarioSpec s =
      Parse({"--scenario", "honest", "--n", "3", "--k", "3", "--bids", "1,2,1", "--seed", "7"});
  CHECK(s.scenario == "honest");
  CHECK(s.n == 3);
  CHECK(s.bids == std::vector<int>{1, 2, 1});
  CHECK(s.bids_explicit);
  CHECK(s.seed == 7);
  CHECK(s.defenses == DefenseFlags{});

  const ScenarioSpec w = Parse({"--scenario", "full-privacy-attack", "--ni-proofs"});
  CHECK(w.defenses.ni_proofs);
  CHECK(w.warnings.size() == 1);
  CHECK(w.bids.size() == 3);
  CHECK_FALSE(w.bids_explicit);

  CHECK(UsageMessage({"--scenario", "honest", "--n", "3", "--bids", "1,2"}).find("--bids") !=
        std::string::npos);
  CHECK(UsageMessage({"--scenario", "honest", "--bids", "1,2,x"}).find("--bids") !=
        std::string::npos);
  CHECK(UsageMessage({"--scenario", "honest", "--k", "2", "--bids", "1,2,3"}).find("--bids") !=
        std::string::npos);
  CHECK(UsageMessage({"--scenario", "bogus"}).find("--scenario") != std::string::npos);
  CHECK(UsageMessage({"--scenario", "honest", "--target", "4"}).find("--target") !=
        std::string::npos);
  CHECK(UsageMessage({"--scenario", "honest", "--Y", "5"}).find("--Y") != std::string::npos);
  CHECK(UsageMessage({"--scenario", "honest", "--group", "custom", "--p", "23"})
            .find("--group") != std::string::npos);
  CHECK(UsageMessage({"--scenario", "honest", "--group", "custom", "--p", "23", "--q", "11",
                      "--g", "5"})
            .find("--group") != std::string::npos);
  CHECK(UsageMessage({"--scenario", "honest", "--n", "0"}).find("--n") != std::string::npos);
}

TEST_CASE("defense flags and custom groups") {
  const ScenarioSpec all = Parse({"--scenario", "wrong-key", "--all-defenses"});
  CHECK(all.defenses == DefenseFlags::All());
  const ScenarioSpec custom =
      Parse({"--scenario", "honest", "--group", "custom", "--p", "0x17", "--q", "11", "--g", "4"});
  CHECK(custom.group == "custom");
  const ScenarioOutcome out = RunScenario(custom);
  CHECK(out.report["parameters"]["group"]["p"] == "23");
  CHECK(out.report["parameters"]["Y"] == "16");
}

TEST_CASE("help is not an error") {
  const ParseResult r = ParseArgs({"brandt-lab", "run", "--help"});
  CHECK_FALSE(r.spec.has_value());
  CHECK(r.help.find("--scenario") != std::string::npos);
}

TEST_CASE("seed falls back to the environment") {
  setenv(kSeedEnvVar, "42", 1);
  CHECK(Parse({"--scenario", "honest"}).seed == 42);
  CHECK(Parse({"--scenario", "honest", "--seed", "3"}).seed == 3);
  setenv(kSeedEnvVar, "4x", 1);
  CHECK(UsageMessage({"--scenario", "honest"}).find(kSeedEnvVar) != std::string::npos);
  unsetenv(kSeedEnvVar);
  CHECK(Parse({"--scenario", "honest"}).seed == 1);
}

TEST_CASE("honest run report") {
  const ScenarioOutcome out =
      RunScenario(Parse({"--scenario", "honest", "--bids", "1,2,1", "--seed", "7"}));
  CHECK(out.exit_code == 0);
  CHECK(out.report["winner"]["bidder"] == 2);
  CHECK(out.report["winner"]["price"] == 2);
  CHECK(out.report["true_bids"] == nlohmann::json({1, 2, 1}));
  CHECK(out.transcript.is_array());
  CHECK(out.transcript.size() > 0);
}

TEST_CASE("attack scenarios with defenses off and on") {
  const std::vector<int> bids{1, 2, 1};
  const ScenarioOutcome full =
      RunScenario(Parse({"--scenario", "full-privacy-attack", "--bids", "1,2,1", "--seed", "7"}));
  CHECK(full.exit_code == 0);
  CHECK(full.report["recovered_bids"] == nlohmann::json(bids));
  CHECK(full.report["success"] == true);

  const ScenarioOutcome blocked = RunScenario(
      Parse({"--scenario", "full-privacy-attack", "--bids", "1,2,1", "--seed", "7", "--ni-proofs"}));
  CHECK(blocked.exit_code == 0);
  CHECK(blocked.report["success"] == false);
  CHECK(blocked.report["error"]["code"] == "ProofRejected");

  for (const std::string& name : ScenarioNames()) {
    if (name == "recovery-bench" || name == "honest") continue;
    const ScenarioOutcome on =
        RunScenario(Parse({"--scenario", name, "--bids", "1,2,1", "--seed", "7", "--all-defenses"}));
    CHECK_MESSAGE(on.exit_code == 0, name);
    CHECK_MESSAGE(on.report["success"] == false, name);
  }
}

TEST_CASE("identical seeds give identical bytes") {
  const auto dir = std::filesystem::temp_directory_path() / "brandt-scenario-test";
  std::filesystem::create_directories(dir);
  std::vector<std::string> files;
  for (int rep = 0; rep < 2; ++rep) {
    ScenarioSpec s = Parse({"--scenario", "full-privacy-attack", "--seed", "9"});
    s.report_path = (dir / "report.json").string();
    s.transcript_path = (dir / "board.json").string();
    EmitReport(RunScenario(s), s);
    files.push_back(Slurp(s.report_path));
    files.push_back(Slurp(s.transcript_path));
  }
  CHECK(files[0] == files[2]);
  CHECK(files[1] == files[3]);
  CHECK(files[0].find("\"scenario\": \"full-privacy-attack\"") != std::string::npos);
  std::filesystem::remove_all(dir);

  ScenarioSpec bad = Parse({"--scenario", "honest"});
  bad.report_path = "/nonexistent-dir/x/report.json";
  try {
    EmitReport(RunScenario(bad), bad);
    FAIL("expected IoError");
  } catch (const LabError& e) {
    CHECK(e.code() == ErrorCode::kIoError);
  }
}

TEST_CASE("recovery bench stays within the bound") {
  const ScenarioOutcome out =
      RunScenario(Parse({"--scenario", "recovery-bench", "--n", "10", "--k", "10"}));
  CHECK(out.exit_code == 0);
  CHECK(out.report["op_count"].get<uint64_t>() <= 10000);
  CHECK(out.report["recovered_bids"] == out.report["true_bids"]);
  CHECK(out.report["true_bids"].size() == 10);
}

TEST_CASE("report field order is fixed") {
  const ScenarioOutcome out = RunScenario(Parse({"--scenario", "wrong-key", "--seed", "2"}));
  std::vector<std::string> keys;
  for (auto& [k, v] : out.report.items()) keys.push_back(k);
  REQUIRE(keys.size() >= 4);
  CHECK(keys[0] == "scenario");
  CHECK(keys[1] == "parameters");
  CHECK(keys[2] == "expectation");
  CHECK(keys[3] == "true_bids");
}
