#include "brandt/scenario.hpp"

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "brandt/adversary.hpp"
#include "brandt/errors.hpp"
#include "brandt/recovery.hpp"

namespace brandt {
namespace {

constexpr uint64_t kBidStream = 4000;

LabError Usage(const std::string& flag, const std::string& what) {
  return LabError(ErrorCode::kUsageError, flag + ": " + what);
}

mpz_class ParseInteger(const std::string& flag, const std::string& text) {
  mpz_class v;
  if (text.empty() || v.set_str(text, 0) != 0 || v < 0) {
    throw Usage(flag, "'" + text + "' is not a non-negative integer");
  }
  return v;
}

std::vector<int> ParseBids(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw Usage("--bids", "'" + item + "' is not an integer");
    }
  }
  return out;
}

GroupParams MakeGroup(const ScenarioSpec& spec) {
  if (spec.group == "small") return GroupParams::Small();
  if (spec.group == "large") return GroupParams::Large();
  return GroupParams::Validate(ParseInteger("--p", spec.p), ParseInteger("--q", spec.q),
                               ParseInteger("--g", spec.g));
}

AuctionConfig MakeConfig(const ScenarioSpec& spec) {
  AuctionConfig config = AuctionConfig::Make(spec.n, spec.k, MakeGroup(spec), spec.defenses);
  if (!spec.big_y.empty()) {
    config.big_y = GroupElement{ParseInteger("--Y", spec.big_y)};
  }
  return config;
}

bool AttackExpected(const ScenarioSpec& s) {
  const DefenseFlags& d = s.defenses;
  if (s.scenario == "full-privacy-attack") {
    return !d.ni_proofs && (!d.noise_product_check || s.random_exponent);
  }
  if (s.scenario == "mitm-demo") return !d.ni_proofs;
  if (s.scenario == "forged-eqdl") return !d.ni_proofs && !d.noise_product_check;
  if (s.scenario == "impersonation") return s.colluding_bidders || !d.authenticate;
  if (s.scenario == "exceptional-values") return !d.noise_product_check;
  if (s.scenario == "wrong-key") return !d.key_consistency;
  return false;
}

nlohmann::ordered_json CellJson(const Cell& c) {
  return {{"bidder", c.bidder + 1}, {"price", c.price + 1}};
}

nlohmann::ordered_json Parameters(const ScenarioSpec& spec, const AuctionConfig* config) {
  nlohmann::ordered_json p;
  p["n"] = spec.n;
  p["k"] = spec.k;
  p["seed"] = spec.seed;
  p["bids_source"] = spec.bids_explicit ? "explicit" : "seed";
  nlohmann::ordered_json group;
  group["name"] = spec.group;
  if (config) {
    group["p"] = config->params.p().get_str();
    group["q"] = config->params.q().get_str();
    group["g"] = config->params.g().value.get_str();
    p["group"] = group;
    p["Y"] = config->big_y.value.get_str();
    p["proof_mode"] = ProofModeName(config->proof_mode());
  } else {
    p["group"] = group;
  }
  p["defenses"] = {{"ni_proofs", spec.defenses.ni_proofs},
                   {"authenticate", spec.defenses.authenticate},
                   {"noise_product_check", spec.defenses.noise_product_check},
                   {"key_consistency", spec.defenses.key_consistency}};
  if (spec.scenario == "full-privacy-attack") {
    p["attacker_exponent"] = spec.random_exponent ? "random" : "one";
  }
  if (spec.scenario == "impersonation") {
    p["target"] = spec.target;
    p["rerandomize_copies"] = spec.rerandomize_copies;
    p["colluding_bidders"] = spec.colluding_bidders;
  }
  return p;
}

nlohmann::ordered_json ErrorJson(const AttackReport& r) {
  if (!r.error) return nullptr;
  nlohmann::ordered_json e;
  e["code"] = ErrorCodeName(*r.error);
  e["party"] = r.error_party ? nlohmann::ordered_json(PartyName(*r.error_party))
                             : nlohmann::ordered_json(nullptr);
  e["round"] = r.error_round;
  e["message"] = r.error_message;
  return e;
}

void FillFromAttack(nlohmann::ordered_json& j, const AttackReport& r) {
  j["true_bids"] = r.true_bids;
  j["expected_winner"] = r.expected_winner ? CellJson(*r.expected_winner)
                                           : nlohmann::ordered_json(nullptr);
  if (r.result) {
    j["result_status"] = ResultStatusName(r.result->status);
    j["winner"] = r.result->winner ? CellJson(*r.result->winner)
                                   : nlohmann::ordered_json(nullptr);
    nlohmann::ordered_json ones = nlohmann::ordered_json::array();
    for (const auto& c : r.result->ones) ones.push_back(CellJson(c));
    j["ones"] = ones;
  } else {
    j["result_status"] = nullptr;
    j["winner"] = nullptr;
    j["ones"] = nullptr;
  }
  j["recovered_bids"] = r.recovered_bids.empty() ? nlohmann::ordered_json(nullptr)
                                                 : nlohmann::ordered_json(r.recovered_bids);
  j["exponents"] = r.exponents ? ExponentVectorToJson(*r.exponents)
                               : nlohmann::ordered_json(nullptr);
  if (r.revealed_price) j["revealed_price"] = *r.revealed_price;
  j["completed"] = r.completed;
  j["success"] = r.success;
  j["error"] = ErrorJson(r);
  j["defense_verdicts"] = {{"events", r.events},
                           {"restarts", r.restarts},
                           {"rerandomizations", r.rerandomizations}};
  j["proofs_verified"] = r.proofs_verified;
}

std::vector<int> DrawBids(const ScenarioSpec& spec) {
  Rng rng(spec.seed, kBidStream);
  std::vector<int> bids;
  for (int b = 0; b < spec.n; ++b) {
    bids.push_back(static_cast<int>(rng.Below(mpz_class(spec.k)).get_si()) + 1);
  }
  return bids;
}

int DefaultAttacker(const ScenarioSpec& spec) {
  return spec.attacker > 0 ? spec.attacker - 1 : spec.n - 1;
}

Cell FirstLosingCell(int n, int k, const Cell& winner) {
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j) {
      if (!(Cell{i, j} == winner)) return {i, j};
    }
  }
  throw LabError(ErrorCode::kInvalidConfig, "no losing cell for n = k = 1");
}

struct Run {
  AttackReport report;
  bool matched = false;
  std::string expectation;
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();
  std::string timing;  // summary only, never in the report
};

Run RunHonest(const AuctionConfig& config, const std::vector<int>& bids, uint64_t seed) {
  Run run;
  run.expectation = "correct-winner";
  AttackReport& r = run.report;
  r.scenario = "honest";
  r.n = config.n;
  r.k = config.k;
  r.true_bids = bids;
  r.expected_winner = ExpectedWinner(bids);
  auto auction = Auction::Honest(config, bids, seed);
  try {
    r.result = auction->Run();
    r.completed = true;
    r.success = r.result->winner && *r.result->winner == *r.expected_winner;
  } catch (const LabError& e) {
    r.error = e.code();
    r.error_party = e.party();
    r.error_round = RoundName(auction->current_round());
    r.error_message = e.what();
  }
  r.events = auction->events();
  r.proofs_verified = auction->proofs_verified();
  r.restarts = auction->restarts();
  r.rerandomizations = auction->rerandomizations();
  r.transcript = auction->board().ToJson();
  run.matched = r.success;
  return run;
}

Run RunMitm(const AuctionConfig& config, uint64_t seed) {
  Run run;
  const GroupParams& gp = config.params;
  AttackReport& r = run.report;
  r.scenario = "mitm-demo";
  r.n = config.n;
  r.k = config.k;
  Rng rng(seed, kAdversaryStream);
  Rng victor_rng(seed, kVerifierStream);
  const KeyShare peggy_key = GenKeyShare(gp, rng);
  const AffineClaim claim{gp.ScalarOf(1), 1, -1};
  const GroupElement w = AffinePublic(gp, claim, peggy_key.y);
  run.extra["claim"] = {{"h", "1"}, {"a", 1}, {"b", -1}};
  run.extra["v"] = peggy_key.y.value.get_str();
  run.extra["w"] = w.value.get_str();
  try {
    ProverSession peggy = ProverSession::Pdl(gp, peggy_key.x);
    PdlVerifier victor(gp, PdlStatement{gp.g(), w}, victor_rng);
    const MitmOutcome out =
        MitmAffinePdl(gp, claim, peggy, peggy_key.y, victor, config.proof_mode(), rng);
    run.extra["peggy_accepts"] = out.peggy_accepts;
    run.extra["victor_accepts"] = out.victor_accepts;
    run.extra["victor_transcript"] = {
        {"commitment", out.victor.commitments[0].value.get_str()},
        {"challenge", out.victor.challenge.value.get_str()},
        {"response", out.victor.responses[0].value.get_str()}};
    r.completed = true;
    r.success = out.victor_accepts;
  } catch (const LabError& e) {
    r.error = e.code();
    r.error_round = "proof";
    r.error_message = e.what();
    // Show what relaying a finished non-interactive proof gives.
    const PdlStatement st{gp.g(), peggy_key.y};
    ProverSession peggy = ProverSession::Pdl(gp, peggy_key.x);
    const ProofRecord proof =
        MakeRecord(st, RunProof(st, peggy, rng, FiatShamirChallenges(gp)),
                   ProofMode::kFiatShamir);
    const ProofRecord moved = TransformNiPdl(gp, claim, peggy_key.y, proof);
    run.extra["ni_transform_accepted"] =
        VerifyProof(gp, PdlStatement{gp.g(), w}, moved, ProofMode::kFiatShamir);
  }
  return run;
}

Run RunBench(const ScenarioSpec& spec) {
  Run run;
  AttackReport& r = run.report;
  r.scenario = "recovery-bench";
  r.n = spec.n;
  r.k = spec.k;
  r.true_bids = spec.bids;
  const std::vector<uint8_t> b = BidVectorFromPrices(spec.n, spec.k, spec.bids);
  const StructuredMatrix m(spec.n, spec.k);
  const ExponentVector l = ApplyF(m, b);
  OpCounter counter;
  const auto start = std::chrono::steady_clock::now();
  const RecoveredBids rec = RecoverBids(l, &counter);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.recovered_bids = rec.Prices();
  r.completed = true;
  r.success = r.recovered_bids == r.true_bids;
  const uint64_t bound = static_cast<uint64_t>(spec.n) * spec.n * spec.k * spec.k;
  run.extra["op_count"] = counter.additions;
  run.extra["op_bound"] = bound;
  run.expectation = "exact-recovery-within-bound";
  run.matched = r.success && counter.additions <= bound;
  std::ostringstream s;
  s << "  recovery took " << seconds << " s\n";
  run.timing = s.str();
  return run;
}

}  // namespace

const std::vector<std::string>& ScenarioNames() {
  static const std::vector<std::string> names{
      "honest",    "full-privacy-attack", "mitm-demo",  "forged-eqdl",
      "impersonation", "exceptional-values", "wrong-key", "recovery-bench"};
  return names;
}

ParseResult ParseArgs(const std::vector<std::string>& argv) {
  ScenarioSpec spec;
  CLI::App app{"Sealed-bid auction protocol lab", "brandt-lab"};
  app.require_subcommand(1);
  CLI::App* run = app.add_subcommand("run", "Run one scenario");

  std::string bids_text;
  std::optional<uint64_t> seed;
  std::string exponent = "one";
  bool all_defenses = false;
  run->add_option("--scenario", spec.scenario, "Scenario to run")
      ->required()
      ->check(CLI::IsMember(ScenarioNames()));
  run->add_option("--n", spec.n, "Number of bidders")->check(CLI::Range(1, 1 << 16));
  run->add_option("--k", spec.k, "Number of prices")->check(CLI::Range(1, 1 << 16));
  run->add_option("--bids", bids_text, "Comma-separated prices, 1-based");
  run->add_option("--seed", seed, "Seed (default from BRANDT_LAB_SEED, else 1)");
  run->add_option("--group", spec.group, "Group")
      ->check(CLI::IsMember({"small", "large", "custom"}));
  run->add_option("--p", spec.p, "Custom group modulus");
  run->add_option("--q", spec.q, "Custom group order");
  run->add_option("--g", spec.g, "Custom group generator");
  run->add_option("--Y", spec.big_y, "Bid marker element (default g^2)");
  run->add_flag("--ni-proofs", spec.defenses.ni_proofs, "Fiat-Shamir proofs");
  run->add_flag("--authenticate", spec.defenses.authenticate, "Authenticate posts");
  run->add_flag("--noise-product-check", spec.defenses.noise_product_check,
                "Restart and re-randomize on exceptional values");
  run->add_flag("--key-consistency", spec.defenses.key_consistency,
                "Tie decryption shares to the keygen share");
  run->add_flag("--all-defenses", all_defenses, "Every defense on");
  run->add_option("--attacker-exponent", exponent, "Noise-removal exponent")
      ->check(CLI::IsMember({"one", "random"}));
  run->add_option("--target", spec.target, "Impersonation target (1-based)");
  run->add_option("--attacker", spec.attacker, "Attacking bidder (1-based)");
  run->add_flag("--rerandomize-copies", spec.rerandomize_copies,
                "Re-encrypt copied bids");
  run->add_flag("--colluding-bidders", spec.colluding_bidders,
                "Copies come from registered dishonest bidders");
  run->add_option("--report", spec.report_path, "Write report JSON here");
  run->add_option("--transcript", spec.transcript_path, "Write board JSON here");

  std::vector<const char*> raw;
  for (const auto& a : argv) raw.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::CallForHelp&) {
    return {std::nullopt, app.get_subcommands().empty() ? app.help() : run->help()};
  } catch (const CLI::CallForAllHelp&) {
    return {std::nullopt, app.help("", CLI::AppFormatMode::All)};
  } catch (const CLI::ParseError& e) {
    throw LabError(ErrorCode::kUsageError, e.what());
  }

  if (all_defenses) spec.defenses = DefenseFlags::All();
  spec.random_exponent = exponent == "random";

  if (seed) {
    spec.seed = *seed;
  } else if (const char* env = std::getenv(kSeedEnvVar); env != nullptr && *env) {
    try {
      size_t used = 0;
      spec.seed = std::stoull(env, &used);
      if (used != std::strlen(env)) throw std::invalid_argument(env);
    } catch (const std::exception&) {
      throw Usage(kSeedEnvVar, std::string("'") + env + "' is not an unsigned integer");
    }
  }

  if (!bids_text.empty()) {
    spec.bids = ParseBids(bids_text);
    spec.bids_explicit = true;
    if (static_cast<int>(spec.bids.size()) != spec.n) {
      throw Usage("--bids", "expected " + std::to_string(spec.n) + " prices, got " +
                                std::to_string(spec.bids.size()));
    }
    for (int b : spec.bids) {
      if (b < 1 || b > spec.k) {
        throw Usage("--bids", "price " + std::to_string(b) + " outside [1, " +
                                  std::to_string(spec.k) + "]");
      }
    }
  } else {
    spec.bids = DrawBids(spec);
  }

  if (spec.group == "custom") {
    if (spec.p.empty() || spec.q.empty() || spec.g.empty()) {
      throw Usage("--group", "custom needs --p, --q and --g");
    }
    try {
      MakeGroup(spec);
    } catch (const LabError& e) {
      throw Usage("--group", e.what());
    }
  } else if (!spec.p.empty() || !spec.q.empty() || !spec.g.empty()) {
    throw Usage("--p", "only valid with --group custom");
  }
  if (!spec.big_y.empty()) {
    const GroupParams gp = MakeGroup(spec);
    const mpz_class y = ParseInteger("--Y", spec.big_y);
    if (!gp.IsMember(y) || y == 1) throw Usage("--Y", "must be a subgroup element other than 1");
  }
  if (spec.target < 1 || spec.target > spec.n) {
    throw Usage("--target", "must be in [1, n]");
  }
  if (spec.attacker < 0 || spec.attacker > spec.n) {
    throw Usage("--attacker", "must be in [1, n]");
  }
  if (spec.rerandomize_copies && spec.defenses.ni_proofs) {
    throw Usage("--rerandomize-copies", "needs interactive proofs to relay");
  }
  if (spec.scenario == "full-privacy-attack" && spec.defenses.ni_proofs) {
    spec.warnings.push_back(
        "--ni-proofs overrides the interactive proofs the attack relies on; "
        "expecting it to be blocked");
  }
  if (spec.scenario == "forged-eqdl" && spec.defenses.ni_proofs) {
    spec.warnings.push_back("--ni-proofs: no sessions to relay; expecting rejection");
  }
  return {spec, {}};
}

ScenarioOutcome RunScenario(const ScenarioSpec& spec) {
  ScenarioOutcome outcome;
  nlohmann::ordered_json& j = outcome.report;
  j["scenario"] = spec.scenario;
  try {
    Run run;
    std::optional<AuctionConfig> config;
    if (spec.scenario == "recovery-bench") {
      run = RunBench(spec);
    } else {
      config = MakeConfig(spec);
      config->Validate();
      const std::vector<int>& bids = spec.bids;
      const int attacker = DefaultAttacker(spec);
      if (spec.scenario == "honest") {
        run = RunHonest(*config, bids, spec.seed);
      } else if (spec.scenario == "full-privacy-attack") {
        run.report = FullPrivacyAttack(*config, bids,
                                       {spec.seed, attacker, spec.random_exponent});
      } else if (spec.scenario == "mitm-demo") {
        run = RunMitm(*config, spec.seed);
      } else if (spec.scenario == "forged-eqdl") {
        run.report = ForgedEqdlRun(*config, bids, spec.seed);
      } else if (spec.scenario == "impersonation") {
        run.report = ImpersonationAttack(
            *config, spec.target - 1, bids,
            {spec.seed, spec.rerandomize_copies, spec.colluding_bidders});
      } else if (spec.scenario == "exceptional-values") {
        const Cell cell = FirstLosingCell(spec.n, spec.k, ExpectedWinner(bids));
        run.report = ForceZeroNoise(*config, bids, cell, attacker, spec.seed);
        run.extra["target_cell"] = CellJson(cell);
      } else if (spec.scenario == "wrong-key") {
        run.report = WrongKeyDecrypt(*config, bids, attacker, spec.seed);
      }
      if (spec.scenario != "honest") {
        const bool expected = AttackExpected(spec);
        run.expectation = expected ? "attack-succeeds" : "attack-blocked";
        run.matched = run.report.success == expected;
        // A neutralized exceptional value must still leave the right winner.
        if (spec.scenario == "exceptional-values" && !expected) {
          const auto& res = run.report.result;
          run.matched = run.matched && res && res->winner &&
                        *res->winner == ExpectedWinner(bids);
        }
      }
    }
    j["parameters"] = Parameters(spec, config ? &*config : nullptr);
    j["expectation"] = run.expectation;
    FillFromAttack(j, run.report);
    for (auto& [key, value] : run.extra.items()) j[key] = value;
    j["matched"] = run.matched;
    j["warnings"] = spec.warnings;
    j["transcript"] = spec.transcript_path.empty()
                          ? nlohmann::ordered_json(nullptr)
                          : nlohmann::ordered_json(spec.transcript_path);
    outcome.transcript = run.report.transcript.is_null()
                             ? nlohmann::ordered_json::array()
                             : run.report.transcript;
    outcome.exit_code = run.matched ? 0 : 1;

    std::ostringstream s;
    s << spec.scenario << ": expectation " << run.expectation << ", "
      << (run.matched ? "matched" : "MISMATCH") << "\n";
    if (run.report.result && run.report.result->winner) {
      s << "  winner: bidder " << run.report.result->winner->bidder + 1 << " at price "
        << run.report.result->winner->price + 1 << "\n";
    } else if (run.report.result) {
      s << "  result: " << ResultStatusName(run.report.result->status) << "\n";
    }
    if (!run.report.recovered_bids.empty()) {
      s << "  recovered bids:";
      for (int b : run.report.recovered_bids) s << " " << b;
      s << "\n";
    }
    if (run.report.error) s << "  stopped: " << run.report.error_message << "\n";
    for (const auto& w : spec.warnings) s << "  warning: " << w << "\n";
    s << run.timing;
    outcome.summary = s.str();
  } catch (const LabError& e) {
    outcome.exit_code = 2;
    j["parameters"] = Parameters(spec, nullptr);
    j["error"] = {{"code", ErrorCodeName(e.code())}, {"message", e.what()}};
    j["matched"] = false;
    outcome.transcript = nlohmann::ordered_json::array();
    outcome.summary = std::string("error: ") + e.what() + "\n";
  }
  return outcome;
}

void EmitReport(const ScenarioOutcome& outcome, const ScenarioSpec& spec) {
  auto write = [](const std::string& path, const nlohmann::ordered_json& j) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw LabError(ErrorCode::kIoError, "cannot open " + path);
    out << j.dump(2) << "\n";
    if (!out) throw LabError(ErrorCode::kIoError, "cannot write " + path);
  };
  if (!spec.report_path.empty()) write(spec.report_path, outcome.report);
  if (!spec.transcript_path.empty()) write(spec.transcript_path, outcome.transcript);
}

}  // namespace brandt
