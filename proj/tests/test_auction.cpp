#include "doctest.h"

#include <set>

#include "brandt/auction.hpp"
#include "brandt/errors.hpp"
#include "brandt/outcome_kernels.hpp"
#include "brandt/recovery.hpp"

using namespace brandt;

namespace {

struct Failure {
  ErrorCode code;
  std::optional<int> party;
};

Failure FailureOf(auto&& f) {
  try {
    f();
  } catch (const LabError& e) {
    return {e.code(), e.party()};
  }
  FAIL("no LabError thrown");
  return {ErrorCode::kIoError, std::nullopt};
}

class FixedKeyBidder : public Bidder {
 public:
  FixedKeyBidder(int index, int price, long x) : Bidder(index, price), x_(x) {}
  void Setup(const AuctionConfig& config, Rng& rng) override {
    Bidder::Setup(config, rng);
    secrets_.key = KeyShareFromSecret(config.params, config.params.ScalarOf(x_));
  }

 private:
  long x_;
};

class TamperedKeyBidder : public Bidder {
 public:
  using Bidder::Bidder;
  std::vector<Post> Keygen(RoundContext& ctx) override {
    auto posts = Bidder::Keygen(ctx);
    const GroupParams& gp = ctx.config.params;
    KeygenMessage msg = DecodeKeygen(gp, posts[0].payload);
    auto& s = msg.proof.transcript.responses[0];
    s = gp.Add(s, gp.ScalarOf(1));
    posts[0].payload = Encode(gp, msg);
    return posts;
  }
};

// Posts the ciphertexts of bidder 1 with its own proofs.
class ReplayBidder : public Bidder {
 public:
  using Bidder::Bidder;
  std::vector<Post> Bid(RoundContext& ctx) override {
    auto posts = Bidder::Bid(ctx);
    const GroupParams& gp = ctx.config.params;
    BidMessage mine = DecodeBid(gp, posts[0].payload);
    for (const Post& p : ctx.board.Latest(Round::kBid)) {
      if (p.author == 1) mine.cts = DecodeBid(gp, p.payload).cts;
    }
    posts[0].payload = Encode(gp, mine);
    return posts;
  }
};

std::vector<std::vector<int>> AllConstellations(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> p(n, 1);
  while (true) {
    out.push_back(p);
    int i = n - 1;
    while (i >= 0 && p[i] == k) p[i--] = 1;
    if (i < 0) break;
    ++p[i];
  }
  return out;
}

// Cells whose randomizers sum to zero mod q after a finished run.
std::set<std::pair<int, int>> ZeroSumCells(const Auction& a) {
  const GroupParams& gp = a.params();
  std::set<std::pair<int, int>> out;
  for (int i = 0; i < a.config().n; ++i) {
    for (int j = 0; j < a.config().k; ++j) {
      Scalar sum{0};
      for (int b = 0; b < a.config().n; ++b) sum = gp.Add(sum, a.bidder(b).secrets().m.at(i, j));
      if (sum.value == 0) out.insert({i, j});
    }
  }
  return out;
}

}  // namespace

TEST_CASE("encode_bid examples") {
  const AuctionConfig c3 = AuctionConfig::Make(1, 3);
  CHECK(c3.big_y == GroupElement{4});
  const BidVector v = EncodeBid(2, c3);
  CHECK(v.entries == std::vector<GroupElement>{GroupElement{1}, GroupElement{4}, GroupElement{1}});
  CHECK(EncodeBid(1, AuctionConfig::Make(1, 1)).entries == std::vector<GroupElement>{GroupElement{4}});
  CHECK(FailureOf([&] { EncodeBid(4, c3); }).code == ErrorCode::kPriceOutOfRange);
  CHECK(FailureOf([&] { EncodeBid(0, c3); }).code == ErrorCode::kPriceOutOfRange);
}

TEST_CASE("config validation") {
  AuctionConfig c = AuctionConfig::Make(2, 2);
  c.Validate();
  c.big_y = GroupElement{1};
  CHECK(FailureOf([&] { c.Validate(); }).code == ErrorCode::kInvalidConfig);
  c = AuctionConfig::Make(0, 2);
  CHECK(FailureOf([&] { c.Validate(); }).code == ErrorCode::kInvalidConfig);
  c = AuctionConfig::Make(11, 2);
  CHECK(FailureOf([&] { c.Validate(); }).code == ErrorCode::kInvalidConfig);
  c = AuctionConfig::Make(2, 2);
  c.per_bidder_y = {GroupElement{4}};
  CHECK(FailureOf([&] { c.Validate(); }).code == ErrorCode::kInvalidConfig);
}

TEST_CASE("keygen aggregates the shares") {
  const AuctionConfig config = AuctionConfig::Make(2, 2);
  std::vector<std::unique_ptr<Bidder>> bidders;
  bidders.push_back(std::make_unique<FixedKeyBidder>(0, 1, 3));
  bidders.push_back(std::make_unique<FixedKeyBidder>(1, 2, 5));
  Auction a(config, std::move(bidders), 1);
  a.Begin();
  a.StepKeygen();
  CHECK(a.state().y_shares == std::vector<GroupElement>{GroupElement{8}, GroupElement{9}});
  CHECK(a.state().y == GroupElement{3});
  CHECK(a.proofs_verified() == 2);

  const std::vector<int> one{1};
  auto single = Auction::Honest(AuctionConfig::Make(1, 1), one, 4);
  single->Begin();
  single->StepKeygen();
  CHECK(single->state().y == single->state().y_shares[0]);
}

TEST_CASE("tampered keygen proof is rejected") {
  for (bool ni : {false, true}) {
    AuctionConfig config = AuctionConfig::Make(2, 2);
    config.defenses.ni_proofs = ni;
    std::vector<std::unique_ptr<Bidder>> bidders;
    bidders.push_back(std::make_unique<Bidder>(0, 1));
    bidders.push_back(std::make_unique<TamperedKeyBidder>(1, 2));
    Auction a(config, std::move(bidders), 2);
    a.Begin();
    const Failure f = FailureOf([&] { a.StepKeygen(); });
    CHECK(f.code == ErrorCode::kProofRejected);
    CHECK(f.party == 2);
  }
}

TEST_CASE("posted bids decrypt to 1 or Y") {
  for (const auto& gp : {GroupParams::Small(), GroupParams::Large()}) {
    const AuctionConfig config = AuctionConfig::Make(2, 2, gp);
    const std::vector<int> prices{1, 2};
    auto a = Auction::Honest(config, prices, 3);
    a->Begin();
    a->StepKeygen();
    a->StepBid();
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        const Ciphertext& ct = a->state().bids.at(i, j);
        std::vector<GroupElement> partials;
        for (int b = 0; b < 2; ++b) {
          partials.push_back(PartialDecrypt(gp, ct.beta, a->bidder(b).secrets().key));
        }
        const GroupElement m = CombineDecrypt(gp, ct.alpha, partials);
        CHECK(m == (j == prices[i] - 1 ? config.big_y : gp.One()));
      }
    }
    // 1 keygen proof each, k validity proofs and one sum proof each.
    CHECK(a->proofs_verified() == 2 + 2 * 3);
  }
}

TEST_CASE("replayed ciphertexts with someone else's proofs are rejected") {
  const AuctionConfig config = AuctionConfig::Make(2, 2);
  std::vector<std::unique_ptr<Bidder>> bidders;
  bidders.push_back(std::make_unique<Bidder>(0, 1));
  bidders.push_back(std::make_unique<ReplayBidder>(1, 1));
  Auction a(config, std::move(bidders), 5);
  a.Begin();
  a.StepKeygen();
  const Failure f = FailureOf([&] { a.StepBid(); });
  CHECK(f.code == ErrorCode::kProofRejected);
  CHECK(f.party == 2);
}

TEST_CASE("winner examples") {
  struct Case {
    int n, k;
    std::vector<int> prices;
    Cell winner;
  };
  for (const Case& c : {Case{2, 2, {1, 2}, {1, 1}}, Case{1, 1, {1}, {0, 0}},
                        Case{3, 3, {1, 2, 1}, {1, 1}}}) {
    for (uint64_t seed = 1;; ++seed) {
      auto a = Auction::Honest(AuctionConfig::Make(c.n, c.k), c.prices, seed);
      const AuctionResult r = a->Run();
      if (!ZeroSumCells(*a).empty()) continue;
      CHECK(r.status == ResultStatus::kWinner);
      REQUIRE(r.winner.has_value());
      CHECK(*r.winner == c.winner);
      break;
    }
  }
}

TEST_CASE("exhaustive honest runs for n, k <= 3") {
  for (const auto& gp : {GroupParams::Small(), GroupParams::Large()}) {
    for (int n = 1; n <= 3; ++n) {
      for (int k = 1; k <= 3; ++k) {
        const AuctionConfig config = AuctionConfig::Make(n, k, gp);
        for (const auto& prices : AllConstellations(n, k)) {
          const ExponentVector l =
              ApplyF(StructuredMatrix(n, k), BidVectorFromPrices(n, k, prices));
          for (uint64_t seed = 1; seed <= 50; ++seed) {
            auto a = Auction::Honest(config, prices, seed);
            const AuctionResult r = a->Run();
            // Exact oracle for the v = 1 cells: l = 0, or the randomizers cancel.
            const auto zero = ZeroSumCells(*a);
            std::vector<Cell> expected;
            for (int i = 0; i < n; ++i)
              for (int j = 0; j < k; ++j)
                if (l.At(i, j) == 0 || zero.count({i, j})) expected.push_back({i, j});
            CHECK(r.ones == expected);
            if (!zero.empty()) continue;
            CHECK(r.status == ResultStatus::kWinner);
            CHECK(*r.winner == ExpectedWinner(prices));
            break;
          }
        }
      }
    }
  }
}

TEST_CASE("decryption shares and bidder views") {
  const GroupParams gp = GroupParams::Small();
  const std::vector<int> prices{2, 3, 1};
  auto a = Auction::Honest(AuctionConfig::Make(3, 3, gp), prices, 9);
  const AuctionResult r = a->Run();
  const auto& st = a->state();
  Scalar x_sum{0};
  for (int b = 0; b < 3; ++b) x_sum = gp.Add(x_sum, a->bidder(b).secrets().key.x);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      GroupElement prod = gp.One();
      for (int b = 0; b < 3; ++b) prod = gp.Mul(prod, st.phi[b].at(i, j));
      CHECK(prod == gp.Exp(st.combined.at(i, j).beta, x_sum));
    }
  }
  for (int i = 0; i < 3; ++i) {
    const auto row = a->BidderView(i);
    for (int j = 0; j < 3; ++j) CHECK(row[j] == r.v.at(i, j));
  }

  const std::vector<int> one{1};
  auto single = Auction::Honest(AuctionConfig::Make(1, 1, gp), one, 2);
  single->Run();
  CHECK(single->state().phi[0].at(0, 0) ==
        gp.Exp(single->state().combined.at(0, 0).beta, single->bidder(0).secrets().key.x));
}

TEST_CASE("board transcripts are deterministic") {
  const std::vector<int> prices{3, 1, 3};
  for (bool ni : {false, true}) {
    AuctionConfig config = AuctionConfig::Make(3, 3, GroupParams::Large());
    config.defenses.ni_proofs = ni;
    auto a = Auction::Honest(config, prices, 77);
    auto b = Auction::Honest(config, prices, 77);
    auto c = Auction::Honest(config, prices, 78);
    a->Run();
    b->Run();
    c->Run();
    CHECK(a->board().ToJson().dump() == b->board().ToJson().dump());
    CHECK(a->board().ToJson().dump() != c->board().ToJson().dump());
  }
}

TEST_CASE("all honest proofs verify in both modes") {
  for (bool ni : {false, true}) {
    AuctionConfig config = AuctionConfig::Make(3, 2, GroupParams::Large());
    config.defenses.ni_proofs = ni;
    const std::vector<int> prices{2, 1, 1};
    auto a = Auction::Honest(config, prices, 13);
    const AuctionResult r = a->Run();
    CHECK(r.status == ResultStatus::kWinner);
    CHECK(*r.winner == Cell{0, 1});
    // keygen n, bid n(k+1), outcome n*n*k, decrypt n
    CHECK(a->proofs_verified() == 3 + 3 * 3 + 3 * 6 + 3);
  }
}

TEST_CASE("schedule must be a permutation") {
  const std::vector<int> prices{1, 1};
  auto a = Auction::Honest(AuctionConfig::Make(2, 1), prices, 1);
  CHECK(FailureOf([&] { a->set_schedule(Round::kBid, {0, 0}); }).code ==
        ErrorCode::kInvalidConfig);
  a->set_schedule(Round::kBid, {1, 0});
  a->Run();
  const auto bids = a->board().Snapshot(Round::kBid);
  CHECK(bids[0].author == 2);
}

TEST_CASE("expected winner tie-break") {
  CHECK(ExpectedWinner(std::vector<int>{2, 3, 3}) == Cell{1, 2});
  CHECK(ExpectedWinner(std::vector<int>{1, 1, 1}) == Cell{0, 0});
}
