#pragma once

#include <span>
#include <vector>

#include "brandt/group.hpp"

namespace brandt {

// One bidder's share of the n-of-n key: y = g^x.
struct KeyShare {
  Scalar x;
  GroupElement y;
};

struct PublicKeyAggregate {
  GroupElement y;
  std::vector<GroupElement> shares;
};

// ElGamal pair (alpha, beta) = (m * y^r, g^r).
struct Ciphertext {
  GroupElement alpha;
  GroupElement beta;

  friend bool operator==(const Ciphertext& a, const Ciphertext& b) {
    return a.alpha == b.alpha && a.beta == b.beta;
  }
};

// x drawn from [1, q); zero would make y the identity.
KeyShare GenKeyShare(const GroupParams& params, Rng& rng);
KeyShare KeyShareFromSecret(const GroupParams& params, const Scalar& x);

// Throws LabError{EmptyShareList} on an empty list.
PublicKeyAggregate AggregateKeys(const GroupParams& params,
                                 std::span<const GroupElement> shares);

Ciphertext Encrypt(const GroupParams& params, const GroupElement& m,
                   const GroupElement& y, const Scalar& r);

// Componentwise product; decrypts to the product of the plaintexts.
Ciphertext Multiply(const GroupParams& params, const Ciphertext& a,
                    const Ciphertext& b);

// beta_product^x for one share.
GroupElement PartialDecrypt(const GroupParams& params,
                            const GroupElement& beta_product,
                            const KeyShare& share);

// alpha_product / prod(partials). Throws LabError{EmptyPartials}.
GroupElement CombineDecrypt(const GroupParams& params,
                            const GroupElement& alpha_product,
                            std::span<const GroupElement> partials);

}  // namespace brandt
