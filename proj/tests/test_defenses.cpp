#include "doctest.h"

#include "brandt/auction.hpp"
#include "brandt/defenses.hpp"
#include "brandt/errors.hpp"
#include "brandt/outcome_kernels.hpp"

using namespace brandt;

namespace {

const GroupParams& Small() {
  static const GroupParams gp = GroupParams::Small();
  return gp;
}

GroupElement E(long v) { return GroupElement{v}; }

}  // namespace

TEST_CASE("authentication tags bind every post field") {
  AuthRegistry reg;
  Rng rng(1);
  const Bytes key = reg.Register(2, rng);
  CHECK(key.size() == 32);
  CHECK(reg.IsRegistered(2));
  CHECK_FALSE(reg.IsRegistered(3));

  Post post{Round::kBid, 2, "bid", {1, 2, 3}, {}};
  post.auth = AuthenticationTag(key, post);
  CHECK(post.auth == reg.Tag(2, post));
  CHECK(reg.VerifyPost(post));

  Post other = post;
  other.payload.push_back(4);
  CHECK_FALSE(reg.VerifyPost(other));
  other = post;
  other.kind = "bid2";
  CHECK_FALSE(reg.VerifyPost(other));
  other = post;
  other.round = Round::kOutcome;
  CHECK_FALSE(reg.VerifyPost(other));

  // Claiming another registered identity with one's own tag fails.
  reg.Register(1, rng);
  other = post;
  other.author = 1;
  CHECK_FALSE(reg.VerifyPost(other));

  other.author = 7;
  try {
    reg.VerifyPost(other);
    FAIL("expected UnknownAuthor");
  } catch (const LabError& e) {
    CHECK(e.code() == ErrorCode::kUnknownAuthor);
    CHECK(e.party() == 7);
  }
}

TEST_CASE("tag input is length-prefixed") {
  const Bytes key(32, 9);
  const Post a{Round::kBid, 1, "ab", {'c'}, {}};
  const Post b{Round::kBid, 1, "a", {'b', 'c'}, {}};
  CHECK(AuthenticationTag(key, a) != AuthenticationTag(key, b));
}

TEST_CASE("exceptional base check") {
  Grid<Ciphertext> bases(2, 2, Ciphertext{E(4), E(2)});
  bases.at(1, 0) = Ciphertext{E(1), E(8)};
  CHECK(CheckExceptionalBase(Small(), bases, 0, 0) == BaseCheck::kOk);
  CHECK(CheckExceptionalBase(Small(), bases, 1, 0) == BaseCheck::kRestartRequired);
}

TEST_CASE("noise product flags") {
  const GroupParams& gp = Small();
  // 2 x 2 bases, alpha = 4 everywhere.
  Grid<Ciphertext> bases(2, 2, Ciphertext{E(4), E(2)});
  Grid<Ciphertext> combined(2, 2, Ciphertext{gp.Exp(E(4), gp.ScalarOf(5)), E(1)});
  CHECK(CheckNoiseProducts(gp, bases, combined).empty());

  combined.at(0, 1).alpha = E(1);  // randomizers sum to zero
  combined.at(1, 0).alpha = E(4);  // randomizers sum to one
  const auto flagged = CheckNoiseProducts(gp, bases, combined);
  REQUIRE(flagged.size() == 2);
  CHECK(flagged[0].cell == Cell{0, 1});
  CHECK(flagged[0].reason == NoiseFlag::kZeroSum);
  CHECK(flagged[1].cell == Cell{1, 0});
  CHECK(flagged[1].reason == NoiseFlag::kNoiseFree);
  CHECK(std::string(NoiseFlagName(NoiseFlag::kZeroSum)) == "zero-sum");

  // k = 1: the first bidder's base is the empty product and never flagged.
  Grid<Ciphertext> b1(2, 1, Ciphertext{E(1), E(1)});
  b1.at(1, 0) = Ciphertext{E(4), E(2)};
  Grid<Ciphertext> c1(2, 1, Ciphertext{E(1), E(1)});
  c1.at(1, 0) = Ciphertext{E(3), E(9)};
  CHECK(CheckNoiseProducts(gp, b1, c1).empty());
}

TEST_CASE("key consistency binds the keygen share") {
  const GroupParams& gp = Small();
  Rng rng(3);
  const Scalar x = gp.ScalarOf(3);
  const Scalar wrong = gp.ScalarOf(4);
  Grid<GroupElement> deltas(2, 2);
  deltas.at(0, 0) = E(2);
  deltas.at(0, 1) = E(3);
  deltas.at(1, 0) = E(6);
  deltas.at(1, 1) = E(13);
  const GroupElement y_share = gp.ExpG(x);

  const Grid<GroupElement> phi_wrong = RaiseAll(gp, deltas, wrong);
  const Grid<GroupElement> phi_right = RaiseAll(gp, deltas, x);

  for (ProofMode mode : {ProofMode::kInteractiveMalleable, ProofMode::kFiatShamir}) {
    const ChallengeSource ch =
        mode == ProofMode::kFiatShamir ? FiatShamirChallenges(gp) : VerifierChallenges(gp, rng);

    const MultiEqdlStatement weak = SameKeyStatement(deltas, phi_wrong);
    CHECK(weak.bases.size() == 4);
    CHECK(KeyConsistencyVerify(
        gp, weak, MakeRecord(weak, KeyConsistencyProve(gp, weak, wrong, rng, ch), mode), mode));

    const MultiEqdlStatement strong = KeyConsistencyStatement(gp, y_share, deltas, phi_right);
    CHECK(strong.bases.front() == gp.g());
    CHECK(strong.publics.front() == y_share);
    CHECK(KeyConsistencyVerify(
        gp, strong, MakeRecord(strong, KeyConsistencyProve(gp, strong, x, rng, ch), mode),
        mode));

    // Proving the strong statement for the wrong exponent fails for every
    // challenge except c = 0.
    const MultiEqdlStatement bad = KeyConsistencyStatement(gp, y_share, deltas, phi_wrong);
    for (long c = 1; c < 11; ++c) {
      const Transcript t = KeyConsistencyProve(gp, bad, wrong, rng, FixedChallenge(gp.ScalarOf(c)));
      CHECK_FALSE(Verify(gp, bad, t));
    }
  }
}

TEST_CASE("restarts on exceptional bases keep the winner correct") {
  // At q = 11 a base alpha product of 1 turns up within a few seeds.
  AuctionConfig config = AuctionConfig::Make(3, 3);
  config.defenses.noise_product_check = true;
  const std::vector<int> prices{2, 3, 1};
  int restarted = 0;
  int rerandomized = 0;
  for (uint64_t seed = 1; seed <= 200; ++seed) {
    auto a = Auction::Honest(config, prices, seed);
    const AuctionResult r = a->Run();
    CHECK(r.status == ResultStatus::kWinner);
    CHECK(*r.winner == Cell{1, 2});
    CHECK(a->board().epochs() == a->restarts() + 1);
    if (a->restarts() > 0) ++restarted;
    if (a->rerandomizations() > 0) ++rerandomized;
  }
  CHECK(restarted > 0);
  CHECK(rerandomized > 0);
}

TEST_CASE("restart limit") {
  AuctionConfig config = AuctionConfig::Make(3, 3);
  config.defenses.noise_product_check = true;
  config.max_restarts = 0;
  const std::vector<int> prices{2, 3, 1};
  int limited = 0;
  for (uint64_t seed = 1; seed <= 100; ++seed) {
    auto a = Auction::Honest(config, prices, seed);
    try {
      a->Run();
    } catch (const LabError& e) {
      CHECK(e.code() == ErrorCode::kRestartLimit);
      ++limited;
    }
  }
  CHECK(limited > 0);
}

TEST_CASE("authenticated honest runs") {
  AuctionConfig config = AuctionConfig::Make(3, 2, GroupParams::Large(), DefenseFlags::All());
  const std::vector<int> prices{1, 2, 2};
  auto a = Auction::Honest(config, prices, 5);
  const AuctionResult r = a->Run();
  CHECK(*r.winner == Cell{1, 1});
  for (const Post& p : a->board().posts()) CHECK(p.auth.size() == 32);
  CHECK(a->BidderView(1)[1] == GroupElement{1});
}
