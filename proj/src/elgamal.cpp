#include "brandt/elgamal.hpp"

#include "brandt/errors.hpp"

namespace brandt {

KeyShare GenKeyShare(const GroupParams& params, Rng& rng) {
  return KeyShareFromSecret(params, params.RandomNonzeroScalar(rng));
}

KeyShare KeyShareFromSecret(const GroupParams& params, const Scalar& x) {
  return KeyShare{x, params.ExpG(x)};
}

PublicKeyAggregate AggregateKeys(const GroupParams& params,
                                 std::span<const GroupElement> shares) {
  if (shares.empty()) {
    throw LabError(ErrorCode::kEmptyShareList, "no public key shares to aggregate");
  }
  return PublicKeyAggregate{params.Product(shares),
                            std::vector<GroupElement>(shares.begin(), shares.end())};
}

Ciphertext Encrypt(const GroupParams& params, const GroupElement& m,
                   const GroupElement& y, const Scalar& r) {
  return Ciphertext{params.Mul(m, params.Exp(y, r)), params.ExpG(r)};
}

Ciphertext Multiply(const GroupParams& params, const Ciphertext& a,
                    const Ciphertext& b) {
  return Ciphertext{params.Mul(a.alpha, b.alpha), params.Mul(a.beta, b.beta)};
}

GroupElement PartialDecrypt(const GroupParams& params,
                            const GroupElement& beta_product,
                            const KeyShare& share) {
  return params.Exp(beta_product, share.x);
}

GroupElement CombineDecrypt(const GroupParams& params,
                            const GroupElement& alpha_product,
                            std::span<const GroupElement> partials) {
  if (partials.empty()) {
    throw LabError(ErrorCode::kEmptyPartials, "no partial decryptions supplied");
  }
  return params.Div(alpha_product, params.Product(partials));
}

}  // namespace brandt
