#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "brandt/elgamal.hpp"
#include "brandt/encoding.hpp"
#include "brandt/group.hpp"

namespace brandt {

enum class ProofMode { kInteractiveMalleable, kFiatShamir };

const char* ProofModeName(ProofMode mode);

// Knowledge of x with v = g^x.
struct PdlStatement {
  GroupElement g;
  GroupElement v;
};

// Knowledge of x with v = g1^x and w = g2^x.
struct EqdlStatement {
  GroupElement g1;
  GroupElement g2;
  GroupElement v;
  GroupElement w;
};

// One x with publics[i] = bases[i]^x for every i.
struct MultiEqdlStatement {
  std::vector<GroupElement> bases;
  std::vector<GroupElement> publics;
};

// log_g(beta) = log_y(alpha)  OR  log_g(beta) = log_y(alpha / Y).
struct BidValidityStatement {
  GroupElement y;
  GroupElement g;
  GroupElement big_y;
  GroupElement alpha;
  GroupElement beta;
};

// log_y(prod(alpha) / Y) = log_g(prod(beta)).
struct SumValidityStatement {
  GroupElement y;
  GroupElement g;
  GroupElement big_y;
  std::vector<GroupElement> alphas;
  std::vector<GroupElement> betas;
};

using SigmaStatement =
    std::variant<PdlStatement, EqdlStatement, MultiEqdlStatement,
                 BidValidityStatement, SumValidityStatement>;

std::string_view DomainTag(const SigmaStatement& statement);

// Domain tag, then p, q, g, then the statement elements in declared order;
// every field length-prefixed, integers at the fixed element width.
Bytes SerializeStatement(const GroupParams& params, const SigmaStatement& statement);

// Commit / challenge / response. Multi-branch proofs carry several
// commitments and responses (see the OR prover for its layout).
struct Transcript {
  std::vector<GroupElement> commitments;
  Scalar challenge;
  std::vector<Scalar> responses;
};

// A transcript as embedded in a board post. hash_name is kHashName for
// Fiat-Shamir proofs and "interactive" for verifier-challenged ones.
struct ProofRecord {
  std::string tag;
  std::string hash_name;
  Transcript transcript;
};

inline constexpr std::string_view kInteractiveHashName = "interactive";

void WriteProof(ByteWriter& out, const ProofRecord& proof);
ProofRecord ReadProof(ByteReader& in);

ProofRecord MakeRecord(const SigmaStatement& statement, Transcript transcript,
                       ProofMode mode);

Scalar FiatShamirChallenge(const GroupParams& params,
                           const SigmaStatement& statement,
                           std::span<const GroupElement> commitments);

// Supplies the challenge once the prover has committed. Interactive
// verifiers draw it at random; the adversary may inject its own.
using ChallengeSource = std::function<Scalar(const SigmaStatement&,
                                             std::span<const GroupElement>)>;

ChallengeSource VerifierChallenges(const GroupParams& params, Rng& rng);
ChallengeSource FiatShamirChallenges(const GroupParams& params);
ChallengeSource FixedChallenge(Scalar challenge);

class InteractiveProver {
 public:
  virtual ~InteractiveProver() = default;
  virtual std::vector<GroupElement> Commit(Rng& rng) = 0;
  virtual std::vector<Scalar> Respond(const Scalar& challenge) = 0;
};

Transcript RunProof(const SigmaStatement& statement, InteractiveProver& prover,
                    Rng& rng, const ChallengeSource& challenges);

// Prover state for a discrete-log relation over one or more bases:
// commitments bases[i]^r, response r + c * x mod q. One base is the PDL
// prover, two the EQDL prover. Respond is legal exactly once, after Commit.
class ProverSession final : public InteractiveProver {
 public:
  enum class Phase { kFresh, kCommitted, kResponded };

  ProverSession(GroupParams params, std::vector<GroupElement> bases, Scalar witness);

  static ProverSession Pdl(const GroupParams& params, const Scalar& x);
  static ProverSession Eqdl(const GroupParams& params, const GroupElement& g1,
                            const GroupElement& g2, const Scalar& x);

  std::vector<GroupElement> Commit(Rng& rng) override;
  std::vector<GroupElement> CommitWithNonce(const Scalar& nonce);
  std::vector<Scalar> Respond(const Scalar& challenge) override;
  Scalar RespondScalar(const Scalar& challenge);

  Phase phase() const { return phase_; }

 private:
  GroupParams params_;
  std::vector<GroupElement> bases_;
  Scalar witness_;
  Scalar nonce_;
  Phase phase_ = Phase::kFresh;
};

// OR prover for BidValidityStatement. The false branch is simulated with a
// random sub-challenge; Respond splits the real challenge c = c0 + c1.
// Commitments: [y^w0, g^w0, y^w1, g^w1]; responses: [c0, c1, s0, s1].
class BidValidityProver final : public InteractiveProver {
 public:
  // Throws LabError{WitnessMismatch} unless the ciphertext encrypts Y
  // (is_y) or 1 (!is_y) under randomness r.
  BidValidityProver(GroupParams params, BidValidityStatement statement, Scalar r,
                    bool is_y);

  std::vector<GroupElement> Commit(Rng& rng) override;
  std::vector<Scalar> Respond(const Scalar& challenge) override;

 private:
  GroupParams params_;
  BidValidityStatement statement_;
  Scalar r_;
  int real_branch_;
  Scalar nonce_;
  Scalar simulated_challenge_;
  Scalar simulated_response_;
  ProverSession::Phase phase_ = ProverSession::Phase::kFresh;
};

bool VerifyPdl(const GroupParams& params, const PdlStatement& st, const Transcript& t);
bool VerifyEqdl(const GroupParams& params, const EqdlStatement& st, const Transcript& t);
bool VerifyMultiEqdl(const GroupParams& params, const MultiEqdlStatement& st,
                     const Transcript& t);
bool VerifyBidValidity(const GroupParams& params, const BidValidityStatement& st,
                       const Transcript& t);
bool VerifySumValidity(const GroupParams& params, const SumValidityStatement& st,
                       const Transcript& t);
bool Verify(const GroupParams& params, const SigmaStatement& st, const Transcript& t);

// Checks the domain tag, then the algebra; in Fiat-Shamir mode also that
// the challenge is the hash of statement and commitments.
bool VerifyProof(const GroupParams& params, const SigmaStatement& st,
                 const ProofRecord& proof, ProofMode mode);

EqdlStatement SumValidityAsEqdl(const GroupParams& params,
                                const SumValidityStatement& st);

Transcript EqdlRun(const GroupParams& params, const GroupElement& g1,
                   const GroupElement& g2, const GroupElement& v,
                   const GroupElement& w, const Scalar& x, Rng& rng,
                   const ChallengeSource& challenges);

Transcript ProveBidValidity(const GroupParams& params, const Ciphertext& ct,
                            const Scalar& r, bool is_y, const GroupElement& y,
                            const GroupElement& big_y, Rng& rng,
                            const ChallengeSource& challenges);

Transcript ProveSumValidity(const GroupParams& params, const SumValidityStatement& st,
                            const Scalar& r_sum, Rng& rng,
                            const ChallengeSource& challenges);

// Special soundness: two accepting single-response transcripts with the same
// commitment and distinct challenges reveal x = (s1 - s2) / (c1 - c2).
std::optional<Scalar> ExtractWitness(const GroupParams& params, const Transcript& a,
                                     const Transcript& b);

}  // namespace brandt
