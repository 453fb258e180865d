#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "brandt/defenses.hpp"
#include "json.hpp"

namespace brandt {

inline constexpr const char* kSeedEnvVar = "BRANDT_LAB_SEED";

struct ScenarioSpec {
  std::string scenario = "honest";
  int n = 3;
  int k = 3;
  std::vector<int> bids;       // 1-based prices; drawn from the seed if not given
  bool bids_explicit = false;
  uint64_t seed = 1;
  std::string group = "small"; // small | large | custom
  std::string p, q, g;         // custom group, decimal or 0x-hex
  std::string big_y;           // empty: g^2
  DefenseFlags defenses;
  bool random_exponent = false;
  int target = 1;              // impersonation target, 1-based
  bool rerandomize_copies = false;
  bool colluding_bidders = false;
  int attacker = 0;            // 1-based; 0 picks the scenario default
  std::string report_path;
  std::string transcript_path;
  std::vector<std::string> warnings;
};

const std::vector<std::string>& ScenarioNames();

struct ParseResult {
  std::optional<ScenarioSpec> spec;  // empty when help was requested
  std::string help;
};

// argv[0] is the program name, argv[1] must be "run". Throws
// LabError{UsageError} naming the offending flag.
ParseResult ParseArgs(const std::vector<std::string>& argv);

struct ScenarioOutcome {
  int exit_code = 2;  // 0 matched, 1 mismatch, 2 error
  nlohmann::ordered_json report;
  nlohmann::ordered_json transcript;
  std::string summary;
};

ScenarioOutcome RunScenario(const ScenarioSpec& spec);

// Writes report and transcript files where the spec asks for them.
// Throws LabError{IoError}.
void EmitReport(const ScenarioOutcome& outcome, const ScenarioSpec& spec);

}  // namespace brandt
