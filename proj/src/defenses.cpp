#include "brandt/defenses.hpp"

#include "brandt/errors.hpp"
#include "brandt/outcome_kernels.hpp"

namespace brandt {
namespace {

Bytes TagInput(const Post& post) {
  Bytes out;
  auto u32 = [&out](uint32_t v) {
    for (int s = 24; s >= 0; s -= 8) out.push_back(static_cast<uint8_t>(v >> s));
  };
  auto field = [&](std::span<const uint8_t> data) {
    u32(static_cast<uint32_t>(data.size()));
    out.insert(out.end(), data.begin(), data.end());
  };
  const std::string round = RoundName(post.round);
  field({reinterpret_cast<const uint8_t*>(round.data()), round.size()});
  u32(static_cast<uint32_t>(post.author));
  field({reinterpret_cast<const uint8_t*>(post.kind.data()), post.kind.size()});
  field(post.payload);
  return out;
}

}  // namespace

Bytes AuthRegistry::Register(PartyId party, Rng& rng) {
  Bytes key = rng.Bytes(32);
  keys_[party] = key;
  return key;
}

Bytes AuthenticationTag(std::span<const uint8_t> key, const Post& post) {
  const Digest d = HmacSha256(key, TagInput(post));
  return Bytes(d.begin(), d.end());
}

Bytes AuthRegistry::Tag(PartyId author, const Post& post) const {
  auto it = keys_.find(author);
  if (it == keys_.end()) {
    throw LabError(ErrorCode::kUnknownAuthor, PartyName(author) + " is not registered",
                   author);
  }
  return AuthenticationTag(it->second, post);
}

bool AuthRegistry::VerifyPost(const Post& post) const {
  return Tag(post.author, post) == post.auth;
}

BaseCheck CheckExceptionalBase(const GroupParams& gp, const Grid<Ciphertext>& bases,
                               int i, int j) {
  return bases.at(i, j).alpha == gp.One() ? BaseCheck::kRestartRequired : BaseCheck::kOk;
}

std::vector<FlaggedCell> CheckNoiseProducts(const GroupParams& gp,
                                            const Grid<Ciphertext>& bases,
                                            const Grid<Ciphertext>& combined) {
  std::vector<FlaggedCell> flagged;
  for (int i = 0; i < bases.rows(); ++i) {
    for (int j = 0; j < bases.cols(); ++j) {
      if (IsStructurallyEmpty(i, j, bases.cols())) continue;
      const GroupElement& prod = combined.at(i, j).alpha;
      if (prod == gp.One()) {
        flagged.push_back({{i, j}, NoiseFlag::kZeroSum});
      } else if (prod == bases.at(i, j).alpha) {
        flagged.push_back({{i, j}, NoiseFlag::kNoiseFree});
      }
    }
  }
  return flagged;
}

const char* NoiseFlagName(NoiseFlag flag) {
  return flag == NoiseFlag::kZeroSum ? "zero-sum" : "noise-free";
}

MultiEqdlStatement SameKeyStatement(const Grid<GroupElement>& delta_products,
                                    const Grid<GroupElement>& phi) {
  return MultiEqdlStatement{delta_products.data(), phi.data()};
}

MultiEqdlStatement KeyConsistencyStatement(const GroupParams& gp,
                                           const GroupElement& y_share,
                                           const Grid<GroupElement>& delta_products,
                                           const Grid<GroupElement>& phi) {
  MultiEqdlStatement st;
  st.bases.push_back(gp.g());
  st.publics.push_back(y_share);
  st.bases.insert(st.bases.end(), delta_products.data().begin(),
                  delta_products.data().end());
  st.publics.insert(st.publics.end(), phi.data().begin(), phi.data().end());
  return st;
}

Transcript KeyConsistencyProve(const GroupParams& gp, const MultiEqdlStatement& st,
                               const Scalar& x, Rng& rng,
                               const ChallengeSource& challenges) {
  ProverSession session(gp, st.bases, x);
  return RunProof(st, session, rng, challenges);
}

bool KeyConsistencyVerify(const GroupParams& gp, const MultiEqdlStatement& st,
                          const ProofRecord& proof, ProofMode mode) {
  return VerifyProof(gp, st, proof, mode);
}

}  // namespace brandt
