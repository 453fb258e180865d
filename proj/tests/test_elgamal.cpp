#include "doctest.h"

#include <algorithm>

#include "brandt/elgamal.hpp"
#include "brandt/errors.hpp"

using namespace brandt;

namespace {

std::vector<GroupElement> SmallSubgroup(const GroupParams& gp) {
  std::vector<GroupElement> out;
  for (long v = 1; v < 23; ++v) {
    if (gp.IsMember(mpz_class(v))) out.push_back(GroupElement{v});
  }
  return out;
}

}  // namespace

TEST_CASE("key shares from known secrets") {
  const GroupParams gp = GroupParams::Small();
  CHECK(KeyShareFromSecret(gp, gp.ScalarOf(3)).y == GroupElement{8});
  CHECK(KeyShareFromSecret(gp, gp.ScalarOf(5)).y == GroupElement{9});
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const KeyShare k = GenKeyShare(gp, rng);
    CHECK(k.x.value != 0);
    CHECK(gp.Exp(k.y, Scalar{gp.q()}) == gp.One());
    CHECK(k.y == gp.ExpG(k.x));
  }
}

TEST_CASE("aggregate keys") {
  const GroupParams gp = GroupParams::Small();
  const std::vector<GroupElement> two{GroupElement{8}, GroupElement{9}};
  CHECK(AggregateKeys(gp, two).y == GroupElement{3});
  const std::vector<GroupElement> one{GroupElement{13}};
  CHECK(AggregateKeys(gp, one).y == GroupElement{13});
  const std::vector<GroupElement> cancel{GroupElement{8}, gp.Inv(GroupElement{8})};
  CHECK(AggregateKeys(gp, cancel).y == gp.One());
  CHECK_THROWS_AS(AggregateKeys(gp, std::vector<GroupElement>{}), LabError);

  std::vector<GroupElement> shares{GroupElement{2}, GroupElement{4}, GroupElement{6},
                                   GroupElement{9}};
  const GroupElement y = AggregateKeys(gp, shares).y;
  std::sort(shares.begin(), shares.end());
  do {
    CHECK(AggregateKeys(gp, shares).y == y);
  } while (std::next_permutation(shares.begin(), shares.end()));
}

TEST_CASE("encrypt and decrypt examples") {
  const GroupParams gp = GroupParams::Small();
  const Ciphertext ct = Encrypt(gp, GroupElement{4}, GroupElement{3}, gp.ScalarOf(2));
  CHECK(ct.alpha == GroupElement{13});
  CHECK(ct.beta == GroupElement{4});
  CHECK(Encrypt(gp, gp.One(), GroupElement{3}, gp.ScalarOf(0)) ==
        Ciphertext{gp.One(), gp.One()});

  CHECK(PartialDecrypt(gp, GroupElement{4}, KeyShareFromSecret(gp, gp.ScalarOf(3))) ==
        GroupElement{18});
  CHECK(PartialDecrypt(gp, GroupElement{4}, KeyShareFromSecret(gp, gp.ScalarOf(5))) ==
        GroupElement{12});
  CHECK(PartialDecrypt(gp, gp.One(), KeyShareFromSecret(gp, gp.ScalarOf(7))) == gp.One());

  const std::vector<GroupElement> partials{GroupElement{18}, GroupElement{12}};
  CHECK(CombineDecrypt(gp, GroupElement{13}, partials) == GroupElement{4});
  const std::vector<GroupElement> trivial{gp.One()};
  CHECK(CombineDecrypt(gp, GroupElement{6}, trivial) == GroupElement{6});
  CHECK_THROWS_AS(CombineDecrypt(gp, GroupElement{6}, std::vector<GroupElement>{}),
                  LabError);
}

TEST_CASE("round trip for every plaintext and up to four parties") {
  const GroupParams gp = GroupParams::Small();
  Rng rng(5);
  for (int n = 1; n <= 4; ++n) {
    std::vector<KeyShare> keys;
    std::vector<GroupElement> ys;
    for (int a = 0; a < n; ++a) {
      keys.push_back(GenKeyShare(gp, rng));
      ys.push_back(keys.back().y);
    }
    const GroupElement y = AggregateKeys(gp, ys).y;
    for (const GroupElement& m : SmallSubgroup(gp)) {
      for (long r = 0; r < 11; ++r) {
        const Ciphertext ct = Encrypt(gp, m, y, gp.ScalarOf(r));
        std::vector<GroupElement> partials;
        for (const auto& k : keys) partials.push_back(PartialDecrypt(gp, ct.beta, k));
        CHECK(CombineDecrypt(gp, ct.alpha, partials) == m);
      }
    }
  }
}

TEST_CASE("ciphertext product decrypts to the plaintext product") {
  const GroupParams gp = GroupParams::Small();
  const KeyShare key = KeyShareFromSecret(gp, gp.ScalarOf(6));
  const auto members = SmallSubgroup(gp);
  for (const auto& m1 : members) {
    for (const auto& m2 : members) {
      for (long r1 = 0; r1 < 11; r1 += 3) {
        for (long r2 = 0; r2 < 11; r2 += 4) {
          const Ciphertext c = Multiply(gp, Encrypt(gp, m1, key.y, gp.ScalarOf(r1)),
                                        Encrypt(gp, m2, key.y, gp.ScalarOf(r2)));
          CHECK(c == Encrypt(gp, gp.Mul(m1, m2), key.y, gp.ScalarOf(r1 + r2)));
          const std::vector<GroupElement> p{PartialDecrypt(gp, c.beta, key)};
          CHECK(CombineDecrypt(gp, c.alpha, p) == gp.Mul(m1, m2));
        }
      }
    }
  }
}
