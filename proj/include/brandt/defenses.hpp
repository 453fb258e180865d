#pragma once

#include <map>
#include <span>
#include <vector>

#include "brandt/board.hpp"
#include "brandt/elgamal.hpp"
#include "brandt/grid.hpp"
#include "brandt/sigma.hpp"

namespace brandt {

struct DefenseFlags {
  bool ni_proofs = false;            // Fiat-Shamir proofs everywhere
  bool authenticate = false;         // registry tags on every post
  bool noise_product_check = false;  // exceptional bases, zero and noise-free products
  bool key_consistency = false;      // decryption shares tied to the keygen share

  static DefenseFlags All() { return {true, true, true, true}; }
  friend bool operator==(const DefenseFlags&, const DefenseFlags&) = default;
};

// Per-party HMAC-SHA-256 keys handed out by a trusted registry. A tag binds
// (round, author, kind, payload).
class AuthRegistry {
 public:
  // Draws a fresh 32-byte key; re-registering replaces the old key.
  Bytes Register(PartyId party, Rng& rng);
  bool IsRegistered(PartyId party) const { return keys_.count(party) != 0; }

  // Throws LabError{UnknownAuthor} for unregistered authors.
  Bytes Tag(PartyId author, const Post& post) const;
  // Throws LabError{UnknownAuthor} when the claimed author is unregistered.
  bool VerifyPost(const Post& post) const;

 private:
  std::map<PartyId, Bytes> keys_;
};

Bytes AuthenticationTag(std::span<const uint8_t> key, const Post& post);

enum class BaseCheck { kOk, kRestartRequired };

// Restart is required when the alpha product of the cell base is 1.
BaseCheck CheckExceptionalBase(const GroupParams& params, const Grid<Ciphertext>& bases,
                               int i, int j);

enum class NoiseFlag {
  kZeroSum,    // prod gamma = 1: the randomizers cancel
  kNoiseFree,  // prod gamma = base alpha: the randomizers sum to one
};

struct FlaggedCell {
  Cell cell;
  NoiseFlag reason;
};

// Flags cells of the combined outcome whose gamma product is 1 or equals the
// bare alpha base. Structurally empty cells are skipped since every exponent
// of the identity is the identity.
std::vector<FlaggedCell> CheckNoiseProducts(const GroupParams& params,
                                            const Grid<Ciphertext>& bases,
                                            const Grid<Ciphertext>& combined);

const char* NoiseFlagName(NoiseFlag flag);

// Decryption-share statements over the combined delta cells. The weak form
// only shows one exponent across all cells; the key-consistency form adds
// (g, y_a) so the exponent must be the keygen share.
MultiEqdlStatement SameKeyStatement(const Grid<GroupElement>& delta_products,
                                    const Grid<GroupElement>& phi);
MultiEqdlStatement KeyConsistencyStatement(const GroupParams& params,
                                           const GroupElement& y_share,
                                           const Grid<GroupElement>& delta_products,
                                           const Grid<GroupElement>& phi);

Transcript KeyConsistencyProve(const GroupParams& params, const MultiEqdlStatement& st,
                               const Scalar& x, Rng& rng,
                               const ChallengeSource& challenges);
bool KeyConsistencyVerify(const GroupParams& params, const MultiEqdlStatement& st,
                          const ProofRecord& proof, ProofMode mode);

}  // namespace brandt
