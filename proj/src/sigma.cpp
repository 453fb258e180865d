#include "brandt/sigma.hpp"

#include "brandt/errors.hpp"

namespace brandt {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void WriteList(ByteWriter& out, std::span<const GroupElement> xs) {
  out.U32(static_cast<uint32_t>(xs.size()));
  for (const auto& x : xs) out.Element(x);
}

// g^s == commitment * v^c
bool CheckRelation(const GroupParams& gp, const GroupElement& base,
                   const GroupElement& pub, const GroupElement& commitment,
                   const Scalar& c, const Scalar& s) {
  return gp.Exp(base, s) == gp.Mul(commitment, gp.Exp(pub, c));
}

bool AllMembers(const GroupParams& gp, std::span<const GroupElement> xs) {
  for (const auto& x : xs) {
    if (!gp.IsMember(x)) return false;
  }
  return true;
}

bool ScalarsReduced(const GroupParams& gp, const Transcript& t) {
  if (t.challenge.value < 0 || t.challenge.value >= gp.q()) return false;
  for (const auto& s : t.responses) {
    if (s.value < 0 || s.value >= gp.q()) return false;
  }
  return true;
}

}  // namespace

const char* ProofModeName(ProofMode mode) {
  return mode == ProofMode::kFiatShamir ? "fiat-shamir" : "interactive-malleable";
}

std::string_view DomainTag(const SigmaStatement& statement) {
  return std::visit(
      Overloaded{
          [](const PdlStatement&) { return std::string_view("brandt-lab/pdl/v1"); },
          [](const EqdlStatement&) { return std::string_view("brandt-lab/eqdl/v1"); },
          [](const MultiEqdlStatement&) {
            return std::string_view("brandt-lab/multi-eqdl/v1");
          },
          [](const BidValidityStatement&) {
            return std::string_view("brandt-lab/bid-validity/v1");
          },
          [](const SumValidityStatement&) {
            return std::string_view("brandt-lab/sum-validity/v1");
          },
      },
      statement);
}

Bytes SerializeStatement(const GroupParams& gp, const SigmaStatement& statement) {
  ByteWriter out(gp);
  out.String(DomainTag(statement));
  out.Integer(gp.p(), gp.ElementWidth());
  out.Integer(gp.q(), gp.ElementWidth());
  out.Integer(gp.g().value, gp.ElementWidth());
  std::visit(Overloaded{
                 [&](const PdlStatement& s) { out.Element(s.g).Element(s.v); },
                 [&](const EqdlStatement& s) {
                   out.Element(s.g1).Element(s.g2).Element(s.v).Element(s.w);
                 },
                 [&](const MultiEqdlStatement& s) {
                   WriteList(out, s.bases);
                   WriteList(out, s.publics);
                 },
                 [&](const BidValidityStatement& s) {
                   out.Element(s.y).Element(s.g).Element(s.big_y).Element(s.alpha).Element(
                       s.beta);
                 },
                 [&](const SumValidityStatement& s) {
                   out.Element(s.y).Element(s.g).Element(s.big_y);
                   WriteList(out, s.alphas);
                   WriteList(out, s.betas);
                 },
             },
             statement);
  return out.Take();
}

void WriteProof(ByteWriter& out, const ProofRecord& proof) {
  out.String(proof.tag);
  out.String(proof.hash_name);
  WriteList(out, proof.transcript.commitments);
  out.ScalarField(proof.transcript.challenge);
  out.U32(static_cast<uint32_t>(proof.transcript.responses.size()));
  for (const auto& s : proof.transcript.responses) out.ScalarField(s);
}

ProofRecord ReadProof(ByteReader& in) {
  ProofRecord proof;
  proof.tag = in.String();
  proof.hash_name = in.String();
  const uint32_t nc = in.U32();
  if (nc > 1u << 20) throw LabError(ErrorCode::kMalformedPayload, "too many commitments");
  for (uint32_t i = 0; i < nc; ++i) proof.transcript.commitments.push_back(in.Element());
  proof.transcript.challenge = in.ScalarField();
  const uint32_t nr = in.U32();
  if (nr > 1u << 20) throw LabError(ErrorCode::kMalformedPayload, "too many responses");
  for (uint32_t i = 0; i < nr; ++i) proof.transcript.responses.push_back(in.ScalarField());
  return proof;
}

ProofRecord MakeRecord(const SigmaStatement& statement, Transcript transcript,
                       ProofMode mode) {
  return ProofRecord{std::string(DomainTag(statement)),
                     std::string(mode == ProofMode::kFiatShamir ? kHashName
                                                                : kInteractiveHashName),
                     std::move(transcript)};
}

Scalar FiatShamirChallenge(const GroupParams& gp, const SigmaStatement& statement,
                           std::span<const GroupElement> commitments) {
  ByteWriter out(gp);
  out.Append(SerializeStatement(gp, statement));
  WriteList(out, commitments);
  const Digest d = Sha256(out.bytes());
  return gp.ScalarOf(DecodeInteger(d));
}

ChallengeSource VerifierChallenges(const GroupParams& gp, Rng& rng) {
  return [gp, &rng](const SigmaStatement&, std::span<const GroupElement>) {
    return gp.RandomScalar(rng);
  };
}

ChallengeSource FiatShamirChallenges(const GroupParams& gp) {
  return [gp](const SigmaStatement& st, std::span<const GroupElement> commitments) {
    return FiatShamirChallenge(gp, st, commitments);
  };
}

ChallengeSource FixedChallenge(Scalar challenge) {
  return [challenge](const SigmaStatement&, std::span<const GroupElement>) {
    return challenge;
  };
}

Transcript RunProof(const SigmaStatement& statement, InteractiveProver& prover,
                    Rng& rng, const ChallengeSource& challenges) {
  Transcript t;
  t.commitments = prover.Commit(rng);
  t.challenge = challenges(statement, t.commitments);
  t.responses = prover.Respond(t.challenge);
  return t;
}

ProverSession::ProverSession(GroupParams params, std::vector<GroupElement> bases,
                             Scalar witness)
    : params_(std::move(params)), bases_(std::move(bases)), witness_(std::move(witness)) {}

ProverSession ProverSession::Pdl(const GroupParams& params, const Scalar& x) {
  return ProverSession(params, {params.g()}, x);
}

ProverSession ProverSession::Eqdl(const GroupParams& params, const GroupElement& g1,
                                  const GroupElement& g2, const Scalar& x) {
  return ProverSession(params, {g1, g2}, x);
}

std::vector<GroupElement> ProverSession::Commit(Rng& rng) {
  if (phase_ != Phase::kFresh) {
    throw LabError(ErrorCode::kAlreadyCommitted, "prover session already committed");
  }
  return CommitWithNonce(params_.RandomScalar(rng));
}

std::vector<GroupElement> ProverSession::CommitWithNonce(const Scalar& nonce) {
  if (phase_ != Phase::kFresh) {
    throw LabError(ErrorCode::kAlreadyCommitted, "prover session already committed");
  }
  nonce_ = params_.ScalarOf(nonce.value);
  phase_ = Phase::kCommitted;
  std::vector<GroupElement> out;
  out.reserve(bases_.size());
  for (const auto& b : bases_) out.push_back(params_.Exp(b, nonce_));
  return out;
}

Scalar ProverSession::RespondScalar(const Scalar& challenge) {
  if (phase_ != Phase::kCommitted) {
    throw LabError(ErrorCode::kNotCommitted,
                   phase_ == Phase::kFresh ? "respond called before commit"
                                           : "session already responded");
  }
  phase_ = Phase::kResponded;
  return params_.Add(nonce_, params_.Mul(params_.ScalarOf(challenge.value), witness_));
}

std::vector<Scalar> ProverSession::Respond(const Scalar& challenge) {
  return {RespondScalar(challenge)};
}

BidValidityProver::BidValidityProver(GroupParams params, BidValidityStatement statement,
                                     Scalar r, bool is_y)
    : params_(std::move(params)),
      statement_(std::move(statement)),
      r_(std::move(r)),
      real_branch_(is_y ? 1 : 0) {
  const GroupElement plain = is_y ? statement_.big_y : params_.One();
  const bool ok = statement_.beta == params_.ExpG(r_) &&
                  statement_.alpha == params_.Mul(plain, params_.Exp(statement_.y, r_));
  if (!ok) {
    throw LabError(ErrorCode::kWitnessMismatch,
                   "ciphertext does not encrypt the claimed plaintext under r");
  }
}

std::vector<GroupElement> BidValidityProver::Commit(Rng& rng) {
  if (phase_ != ProverSession::Phase::kFresh) {
    throw LabError(ErrorCode::kAlreadyCommitted, "prover session already committed");
  }
  phase_ = ProverSession::Phase::kCommitted;
  const auto& gp = params_;
  const GroupElement alpha_for[2] = {statement_.alpha,
                                     gp.Div(statement_.alpha, statement_.big_y)};
  nonce_ = gp.RandomScalar(rng);
  simulated_challenge_ = gp.RandomScalar(rng);
  simulated_response_ = gp.RandomScalar(rng);

  std::vector<GroupElement> out(4);
  const int real = real_branch_;
  const int sim = 1 - real_branch_;
  out[2 * real] = gp.Exp(statement_.y, nonce_);
  out[2 * real + 1] = gp.ExpG(nonce_);
  const Scalar neg_c = gp.Neg(simulated_challenge_);
  out[2 * sim] = gp.Mul(gp.Exp(statement_.y, simulated_response_),
                        gp.Exp(alpha_for[sim], neg_c));
  out[2 * sim + 1] = gp.Mul(gp.ExpG(simulated_response_), gp.Exp(statement_.beta, neg_c));
  return out;
}

std::vector<Scalar> BidValidityProver::Respond(const Scalar& challenge) {
  if (phase_ != ProverSession::Phase::kCommitted) {
    throw LabError(ErrorCode::kNotCommitted, "OR prover not in committed phase");
  }
  phase_ = ProverSession::Phase::kResponded;
  const auto& gp = params_;
  const Scalar real_c = gp.Sub(gp.ScalarOf(challenge.value), simulated_challenge_);
  const Scalar real_s = gp.Add(nonce_, gp.Mul(real_c, r_));
  std::vector<Scalar> out(4);
  out[real_branch_] = real_c;
  out[1 - real_branch_] = simulated_challenge_;
  out[2 + real_branch_] = real_s;
  out[2 + (1 - real_branch_)] = simulated_response_;
  return out;
}

bool VerifyPdl(const GroupParams& gp, const PdlStatement& st, const Transcript& t) {
  if (t.commitments.size() != 1 || t.responses.size() != 1) return false;
  if (!ScalarsReduced(gp, t) || !AllMembers(gp, t.commitments)) return false;
  return CheckRelation(gp, st.g, st.v, t.commitments[0], t.challenge, t.responses[0]);
}

bool VerifyEqdl(const GroupParams& gp, const EqdlStatement& st, const Transcript& t) {
  if (t.commitments.size() != 2 || t.responses.size() != 1) return false;
  if (!ScalarsReduced(gp, t) || !AllMembers(gp, t.commitments)) return false;
  return CheckRelation(gp, st.g1, st.v, t.commitments[0], t.challenge, t.responses[0]) &&
         CheckRelation(gp, st.g2, st.w, t.commitments[1], t.challenge, t.responses[0]);
}

bool VerifyMultiEqdl(const GroupParams& gp, const MultiEqdlStatement& st,
                     const Transcript& t) {
  if (st.bases.empty() || st.bases.size() != st.publics.size()) return false;
  if (t.commitments.size() != st.bases.size() || t.responses.size() != 1) return false;
  if (!ScalarsReduced(gp, t) || !AllMembers(gp, t.commitments)) return false;
  for (size_t i = 0; i < st.bases.size(); ++i) {
    if (!CheckRelation(gp, st.bases[i], st.publics[i], t.commitments[i], t.challenge,
                       t.responses[0])) {
      return false;
    }
  }
  return true;
}

bool VerifyBidValidity(const GroupParams& gp, const BidValidityStatement& st,
                       const Transcript& t) {
  if (t.commitments.size() != 4 || t.responses.size() != 4) return false;
  if (!ScalarsReduced(gp, t) || !AllMembers(gp, t.commitments)) return false;
  const Scalar& c0 = t.responses[0];
  const Scalar& c1 = t.responses[1];
  if (gp.Add(c0, c1) != t.challenge) return false;
  const GroupElement alpha_over_y = gp.Div(st.alpha, st.big_y);
  return CheckRelation(gp, st.y, st.alpha, t.commitments[0], c0, t.responses[2]) &&
         CheckRelation(gp, st.g, st.beta, t.commitments[1], c0, t.responses[2]) &&
         CheckRelation(gp, st.y, alpha_over_y, t.commitments[2], c1, t.responses[3]) &&
         CheckRelation(gp, st.g, st.beta, t.commitments[3], c1, t.responses[3]);
}

EqdlStatement SumValidityAsEqdl(const GroupParams& gp, const SumValidityStatement& st) {
  return EqdlStatement{st.y, st.g, gp.Div(gp.Product(st.alphas), st.big_y),
                       gp.Product(st.betas)};
}

bool VerifySumValidity(const GroupParams& gp, const SumValidityStatement& st,
                       const Transcript& t) {
  if (st.alphas.empty() || st.alphas.size() != st.betas.size()) return false;
  return VerifyEqdl(gp, SumValidityAsEqdl(gp, st), t);
}

bool Verify(const GroupParams& gp, const SigmaStatement& st, const Transcript& t) {
  return std::visit(
      Overloaded{
          [&](const PdlStatement& s) { return VerifyPdl(gp, s, t); },
          [&](const EqdlStatement& s) { return VerifyEqdl(gp, s, t); },
          [&](const MultiEqdlStatement& s) { return VerifyMultiEqdl(gp, s, t); },
          [&](const BidValidityStatement& s) { return VerifyBidValidity(gp, s, t); },
          [&](const SumValidityStatement& s) { return VerifySumValidity(gp, s, t); },
      },
      st);
}

bool VerifyProof(const GroupParams& gp, const SigmaStatement& st,
                 const ProofRecord& proof, ProofMode mode) {
  if (proof.tag != DomainTag(st)) return false;
  if (mode == ProofMode::kFiatShamir) {
    if (proof.hash_name != kHashName) return false;
    if (proof.transcript.challenge !=
        FiatShamirChallenge(gp, st, proof.transcript.commitments)) {
      return false;
    }
  }
  return Verify(gp, st, proof.transcript);
}

Transcript EqdlRun(const GroupParams& gp, const GroupElement& g1, const GroupElement& g2,
                   const GroupElement& v, const GroupElement& w, const Scalar& x,
                   Rng& rng, const ChallengeSource& challenges) {
  ProverSession session = ProverSession::Eqdl(gp, g1, g2, x);
  return RunProof(EqdlStatement{g1, g2, v, w}, session, rng, challenges);
}

Transcript ProveBidValidity(const GroupParams& gp, const Ciphertext& ct, const Scalar& r,
                            bool is_y, const GroupElement& y, const GroupElement& big_y,
                            Rng& rng, const ChallengeSource& challenges) {
  BidValidityStatement st{y, gp.g(), big_y, ct.alpha, ct.beta};
  BidValidityProver prover(gp, st, r, is_y);
  return RunProof(st, prover, rng, challenges);
}

Transcript ProveSumValidity(const GroupParams& gp, const SumValidityStatement& st,
                            const Scalar& r_sum, Rng& rng,
                            const ChallengeSource& challenges) {
  ProverSession session = ProverSession::Eqdl(gp, st.y, st.g, r_sum);
  return RunProof(st, session, rng, challenges);
}

std::optional<Scalar> ExtractWitness(const GroupParams& gp, const Transcript& a,
                                     const Transcript& b) {
  if (a.responses.size() != 1 || b.responses.size() != 1) return std::nullopt;
  if (a.commitments != b.commitments || a.challenge == b.challenge) return std::nullopt;
  const Scalar ds = gp.Sub(a.responses[0], b.responses[0]);
  const Scalar dc = gp.Sub(a.challenge, b.challenge);
  return gp.Mul(ds, gp.Inv(dc));
}

}  // namespace brandt
