#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "brandt/auction.hpp"
#include "brandt/errors.hpp"
#include "brandt/recovery.hpp"
#include "json.hpp"

namespace brandt {

// ---- Proof malleability ----

// Mallory claims knowledge of a*h + b*x where x is Peggy's secret.
struct AffineClaim {
  Scalar h;
  long a = 1;
  long b = 1;
};

// w = g^(a*h) * v^b.
GroupElement AffinePublic(const GroupParams& params, const AffineClaim& claim,
                          const GroupElement& v);

// Mallory's message transformations between Peggy and Victor.
class MitmRelay {
 public:
  MitmRelay(GroupParams params, AffineClaim claim)
      : params_(std::move(params)), claim_(std::move(claim)) {}

  GroupElement Commitment(const GroupElement& z) const;  // z^b
  Scalar Challenge(const Scalar& c) const { return c; }  // forwarded as is
  Scalar Response(const Scalar& c, const Scalar& s) const;  // c*(a*h) + b*s

 private:
  GroupParams params_;
  AffineClaim claim_;
};

// Honest interactive PDL verifier.
class PdlVerifier {
 public:
  PdlVerifier(GroupParams params, PdlStatement statement, Rng& rng)
      : params_(std::move(params)), statement_(std::move(statement)), rng_(&rng) {}

  Scalar Challenge(const GroupElement& commitment);
  bool Accept(const Scalar& response);
  const Transcript& transcript() const { return transcript_; }

 private:
  GroupParams params_;
  PdlStatement statement_;
  Rng* rng_;
  Transcript transcript_;
};

struct MitmOutcome {
  Transcript peggy;   // Peggy's own session, as Mallory saw it
  Transcript victor;  // the transcript Victor checked
  bool peggy_accepts = false;
  bool victor_accepts = false;
};

// Runs Peggy's PDL session of v = g^x through Mallory to Victor, who checks
// knowledge of log_g w for w = AffinePublic(claim, v). Fiat-Shamir mode
// has no verifier challenge to forward: throws LabError{ModeMismatch}.
MitmOutcome MitmAffinePdl(const GroupParams& params, const AffineClaim& claim,
                          ProverSession& peggy, const GroupElement& v,
                          PdlVerifier& victor, ProofMode mode, Rng& rng);

// The same transformation applied to a finished Fiat-Shamir proof. The
// challenge no longer hashes the transformed statement, so verification
// fails except by chance collision of the challenge.
ProofRecord TransformNiPdl(const GroupParams& params, const AffineClaim& claim,
                           const GroupElement& v, const ProofRecord& proof);

// Mallory's EQDL prover for her noise-removed cell: multiplies inverted
// commitments of the other bidders' sessions and answers c*t - sum r_o.
class ForgedEqdlProver final : public InteractiveProver {
 public:
  ForgedEqdlProver(GroupParams params, std::vector<std::unique_ptr<InteractiveProver>> others,
                   Scalar t);

  std::vector<GroupElement> Commit(Rng& rng) override;
  std::vector<Scalar> Respond(const Scalar& challenge) override;

 private:
  GroupParams params_;
  std::vector<std::unique_ptr<InteractiveProver>> others_;
  Scalar t_;
};

// Opens one session per other bidder for `cell` and runs the forged proof
// of `statement` against `challenges`. Throws LabError{ModeMismatch} in
// Fiat-Shamir mode.
Transcript ForgeOutcomeEqdl(Auction& auction, int mallory, Cell cell,
                            const EqdlStatement& statement, const Scalar& t, Rng& rng,
                            const ChallengeSource& challenges);

// Wraps a bid-proof session for a copy re-randomized by `shift`: every
// response s (or s_b with sub-challenge c_b) grows by c * shift.
class ShiftedRelay final : public InteractiveProver {
 public:
  ShiftedRelay(GroupParams params, std::unique_ptr<InteractiveProver> inner, Scalar shift)
      : params_(std::move(params)), inner_(std::move(inner)), shift_(std::move(shift)) {}

  std::vector<GroupElement> Commit(Rng& rng) override { return inner_->Commit(rng); }
  std::vector<Scalar> Respond(const Scalar& challenge) override;

 private:
  GroupParams params_;
  std::unique_ptr<InteractiveProver> inner_;
  Scalar shift_;
};

// ---- Noise removal ----

// gamma = base_alpha^t / prod(others' gamma), delta likewise.
Grid<Ciphertext> NoiseRemovalShares(const GroupParams& params,
                                    const Grid<Ciphertext>& bases,
                                    std::span<const Grid<Ciphertext>> others,
                                    const Scalar& t);

// Bidder that posts last in the outcome round and cancels every other
// bidder's randomizers. Proofs are forged through the other bidders; in
// Fiat-Shamir mode it can only splice their posted proofs, which fails.
class NoiseRemovingBidder : public Bidder {
 public:
  NoiseRemovingBidder(int index, int price, Scalar t)
      : Bidder(index, price), t_(std::move(t)) {}

  bool WaitsForOthers() const override { return true; }
  std::vector<Post> Outcome(RoundContext& ctx) override;

  const Scalar& exponent() const { return t_; }
  bool forgery_unavailable() const { return forgery_unavailable_; }

 private:
  Scalar t_;
  bool forgery_unavailable_ = false;
};

// Colluding bidder that, once, sets its randomizer at `target` so that the
// randomizers of all bidders sum to zero there.
class ForceZeroBidder : public Bidder {
 public:
  ForceZeroBidder(int index, int price, Cell target)
      : Bidder(index, price), target_(target) {}

  std::vector<Post> Outcome(RoundContext& ctx) override;

 private:
  Cell target_;
  bool used_ = false;
};

// Decrypts with x + offset and proves the weak same-key statement for it.
class WrongKeyBidder : public Bidder {
 public:
  WrongKeyBidder(int index, int price, Scalar offset)
      : Bidder(index, price), offset_(std::move(offset)) {}

  std::vector<Post> Decrypt(RoundContext& ctx) override;

 private:
  Scalar offset_;
};

// ---- Impersonation ----

// (alpha * y^x, beta * g^x): same plaintext, fresh ciphertext.
Ciphertext ReencryptBidCopy(const GroupParams& params, const Ciphertext& ct,
                            const GroupElement& y, const Scalar& x);

// A bid payload copying the target's posted bid. With `rerandomize` every
// ciphertext is re-encrypted and the proofs are relayed through the target's
// interactive sessions (interactive mode only).
Bytes CopyBidPayload(RoundContext& ctx, int target, bool rerandomize, Rng& rng);

// Attacker controlling the channel: every bid post claimed by a bidder other
// than the target is replaced by a copy of the target's bid. The copy
// carries the target's tag, which is all the attacker has.
class ImpersonationNetwork : public Network {
 public:
  ImpersonationNetwork(int target, bool rerandomize, uint64_t seed)
      : target_(target), rerandomize_(rerandomize), rng_(seed, kAdversaryStream) {}

  std::vector<Post> Transmit(Post post, RoundContext& ctx) override;

 private:
  int target_;
  bool rerandomize_;
  Rng rng_;
};

// Dishonest bidder resubmitting the target's bid under its own identity.
class CopyingBidder : public Bidder {
 public:
  CopyingBidder(int index, int price, int target, bool rerandomize, uint64_t seed)
      : Bidder(index, price), target_(target), rerandomize_(rerandomize),
        rng_(seed, kAdversaryStream + 1 + index) {}

  std::vector<Post> Bid(RoundContext& ctx) override;

 private:
  int target_;
  bool rerandomize_;
  Rng rng_;
};

// ---- Attack runs ----

struct AttackReport {
  std::string scenario;
  int n = 0;
  int k = 0;
  std::vector<int> true_bids;
  std::vector<int> recovered_bids;          // empty unless bids were recovered
  std::optional<int> revealed_price;        // impersonation only
  std::optional<ExponentVector> exponents;
  std::optional<AuctionResult> result;
  std::optional<Cell> expected_winner;
  bool completed = false;                   // the protocol ran to the end
  bool success = false;                     // the attack achieved its goal
  std::optional<ErrorCode> error;
  std::optional<int> error_party;
  std::string error_round;
  std::string error_message;
  std::vector<std::string> events;
  uint64_t proofs_verified = 0;
  int restarts = 0;
  int rerandomizations = 0;
  nlohmann::ordered_json transcript;
};

struct FullAttackOptions {
  uint64_t seed = 1;
  int mallory = -1;            // default: last bidder
  bool random_exponent = false;
};

// Noise removal by one bidder, then the seller inverts the outcome.
AttackReport FullPrivacyAttack(const AuctionConfig& config, std::span<const int> true_bids,
                               const FullAttackOptions& options);

// Only the outcome round: do the honest verifiers accept Mallory's forged
// EQDL proofs?
AttackReport ForgedEqdlRun(const AuctionConfig& config, std::span<const int> true_bids,
                           uint64_t seed);

struct ImpersonationOptions {
  uint64_t seed = 1;
  bool rerandomize = false;
  bool colluding_bidders = false;  // copies come from dishonest registered bidders
};

AttackReport ImpersonationAttack(const AuctionConfig& config, int target,
                                 std::span<const int> true_bids,
                                 const ImpersonationOptions& options);

// `colluder` zeroes the randomizer sum at the losing cell `cell`.
AttackReport ForceZeroNoise(const AuctionConfig& config, std::span<const int> true_bids,
                            Cell cell, int colluder, uint64_t seed);

AttackReport WrongKeyDecrypt(const AuctionConfig& config, std::span<const int> true_bids,
                             int cheater, uint64_t seed, long offset = 1);

// Recovers every bid from v = Y^(t * l): exponent search then inversion.
// Throws LabError{NotAPower} or LabError{InconsistentExponents}.
RecoveredBids SellerRecovery(const AuctionConfig& config, const Grid<GroupElement>& v,
                             const Scalar& t, ExponentVector* exponents = nullptr);

}  // namespace brandt
