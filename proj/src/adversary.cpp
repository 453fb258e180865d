#include "brandt/adversary.hpp"

#include <algorithm>

#include "brandt/outcome_kernels.hpp"

namespace brandt {
namespace {

Scalar LongScalar(const GroupParams& gp, long v) { return gp.ScalarOf(v); }

// Copies run state and any error into the report.
void Finish(AttackReport& report, const Auction& auction) {
  report.events = auction.events();
  report.proofs_verified = auction.proofs_verified();
  report.restarts = auction.restarts();
  report.rerandomizations = auction.rerandomizations();
  report.transcript = auction.board().ToJson();
}

void RecordError(AttackReport& report, const Auction& auction, const LabError& e) {
  report.error = e.code();
  report.error_party = e.party();
  report.error_round = RoundName(auction.current_round());
  report.error_message = e.what();
}

AttackReport NewReport(const std::string& scenario, const AuctionConfig& config,
                       std::span<const int> true_bids) {
  AttackReport r;
  r.scenario = scenario;
  r.n = config.n;
  r.k = config.k;
  r.true_bids.assign(true_bids.begin(), true_bids.end());
  r.expected_winner = ExpectedWinner(true_bids);
  return r;
}

void CheckBidCount(const AuctionConfig& config, std::span<const int> true_bids) {
  if (static_cast<int>(true_bids.size()) != config.n) {
    throw LabError(ErrorCode::kInvalidConfig, "need one bid per bidder");
  }
}

std::vector<std::unique_ptr<Bidder>> HonestBidders(std::span<const int> prices) {
  std::vector<std::unique_ptr<Bidder>> out;
  for (int b = 0; b < static_cast<int>(prices.size()); ++b) {
    out.push_back(std::make_unique<Bidder>(b, prices[b]));
  }
  return out;
}

}  // namespace

// ---- Proof malleability ----

GroupElement AffinePublic(const GroupParams& gp, const AffineClaim& claim,
                          const GroupElement& v) {
  const GroupElement fh = gp.ExpG(claim.h);
  return gp.Mul(gp.Exp(fh, LongScalar(gp, claim.a)), gp.Exp(v, LongScalar(gp, claim.b)));
}

GroupElement MitmRelay::Commitment(const GroupElement& z) const {
  return params_.Exp(z, LongScalar(params_, claim_.b));
}

Scalar MitmRelay::Response(const Scalar& c, const Scalar& s) const {
  const Scalar ah = params_.Mul(LongScalar(params_, claim_.a), claim_.h);
  return params_.Add(params_.Mul(c, ah), params_.Mul(LongScalar(params_, claim_.b), s));
}

Scalar PdlVerifier::Challenge(const GroupElement& commitment) {
  if (!transcript_.commitments.empty()) {
    throw LabError(ErrorCode::kAlreadyCommitted, "verifier already challenged");
  }
  transcript_.commitments = {commitment};
  transcript_.challenge = params_.RandomScalar(*rng_);
  return transcript_.challenge;
}

bool PdlVerifier::Accept(const Scalar& response) {
  if (transcript_.commitments.empty()) {
    throw LabError(ErrorCode::kNotCommitted, "no commitment received");
  }
  transcript_.responses = {response};
  return VerifyPdl(params_, statement_, transcript_);
}

MitmOutcome MitmAffinePdl(const GroupParams& gp, const AffineClaim& claim,
                          ProverSession& peggy, const GroupElement& v,
                          PdlVerifier& victor, ProofMode mode, Rng& rng) {
  if (mode == ProofMode::kFiatShamir) {
    throw LabError(ErrorCode::kModeMismatch,
                   "Fiat-Shamir proofs take no verifier challenge to relay");
  }
  const MitmRelay relay(gp, claim);
  MitmOutcome out;
  out.peggy.commitments = peggy.Commit(rng);
  const GroupElement y = relay.Commitment(out.peggy.commitments.at(0));
  const Scalar c = victor.Challenge(y);
  out.peggy.challenge = relay.Challenge(c);
  out.peggy.responses = {peggy.RespondScalar(out.peggy.challenge)};
  out.peggy_accepts = VerifyPdl(gp, PdlStatement{gp.g(), v}, out.peggy);
  out.victor_accepts = victor.Accept(relay.Response(c, out.peggy.responses[0]));
  out.victor = victor.transcript();
  return out;
}

ProofRecord TransformNiPdl(const GroupParams& gp, const AffineClaim& claim,
                           const GroupElement& v, const ProofRecord& proof) {
  const MitmRelay relay(gp, claim);
  const Transcript& t = proof.transcript;
  Transcript forged;
  forged.commitments = {relay.Commitment(t.commitments.at(0))};
  forged.challenge = t.challenge;
  forged.responses = {relay.Response(t.challenge, t.responses.at(0))};
  const PdlStatement st{gp.g(), AffinePublic(gp, claim, v)};
  return MakeRecord(st, std::move(forged), ProofMode::kFiatShamir);
}

ForgedEqdlProver::ForgedEqdlProver(GroupParams params,
                                   std::vector<std::unique_ptr<InteractiveProver>> others,
                                   Scalar t)
    : params_(std::move(params)), others_(std::move(others)), t_(std::move(t)) {}

std::vector<GroupElement> ForgedEqdlProver::Commit(Rng& rng) {
  GroupElement lambda = params_.One();
  GroupElement mu = params_.One();
  for (auto& o : others_) {
    const auto c = o->Commit(rng);
    lambda = params_.Mul(lambda, c.at(0));
    mu = params_.Mul(mu, c.at(1));
  }
  return {params_.Inv(lambda), params_.Inv(mu)};
}

std::vector<Scalar> ForgedEqdlProver::Respond(const Scalar& challenge) {
  Scalar r = params_.Mul(challenge, t_);
  for (auto& o : others_) r = params_.Sub(r, o->Respond(challenge).at(0));
  return {r};
}

Transcript ForgeOutcomeEqdl(Auction& auction, int mallory, Cell cell,
                            const EqdlStatement& statement, const Scalar& t, Rng& rng,
                            const ChallengeSource& challenges) {
  std::vector<std::unique_ptr<InteractiveProver>> sessions;
  for (int o = 0; o < auction.n(); ++o) {
    if (o != mallory) sessions.push_back(auction.RequestOutcomeProof(o, cell));
  }
  ForgedEqdlProver prover(auction.params(), std::move(sessions), t);
  return RunProof(statement, prover, rng, challenges);
}

std::vector<Scalar> ShiftedRelay::Respond(const Scalar& challenge) {
  std::vector<Scalar> r = inner_->Respond(challenge);
  if (r.size() == 4) {
    // OR layout [c0, c1, s0, s1].
    r[2] = params_.Add(r[2], params_.Mul(r[0], shift_));
    r[3] = params_.Add(r[3], params_.Mul(r[1], shift_));
  } else {
    for (auto& s : r) s = params_.Add(s, params_.Mul(challenge, shift_));
  }
  return r;
}

// ---- Noise removal ----

Grid<Ciphertext> NoiseRemovalShares(const GroupParams& gp, const Grid<Ciphertext>& bases,
                                    std::span<const Grid<Ciphertext>> others,
                                    const Scalar& t) {
  const Grid<Ciphertext> prod = MultiplyGrids(gp, others);
  Grid<Ciphertext> out(bases.rows(), bases.cols());
  for (int i = 0; i < bases.rows(); ++i) {
    for (int j = 0; j < bases.cols(); ++j) {
      const Ciphertext& b = bases.at(i, j);
      const Ciphertext& o = prod.size() ? prod.at(i, j) : Ciphertext{gp.One(), gp.One()};
      out.at(i, j) = {gp.Div(gp.Exp(b.alpha, t), o.alpha), gp.Div(gp.Exp(b.beta, t), o.beta)};
    }
  }
  return out;
}

std::vector<Post> NoiseRemovingBidder::Outcome(RoundContext& ctx) {
  const GroupParams& gp = ctx.config.params;
  const int n = ctx.config.n;
  std::vector<Grid<Ciphertext>> others;
  std::vector<OutcomeMessage> messages;
  for (const Post& post : ctx.board.Latest(Round::kOutcome)) {
    if (post.author == id() || post.author < 1 || post.author > n) continue;
    messages.push_back(DecodeOutcome(gp, post.payload));
    others.push_back(messages.back().shares);
  }
  if (static_cast<int>(others.size()) != n - 1) {
    throw LabError(ErrorCode::kMissingShares,
                   "noise removal needs every other outcome share first", id());
  }
  OutcomeMessage msg;
  msg.shares = n == 1 ? RaiseCells(gp, ctx.state.bases, Grid<Scalar>(n, ctx.config.k, t_))
                      : NoiseRemovalShares(gp, ctx.state.bases, others, t_);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < ctx.config.k; ++j) {
      const Ciphertext& b = ctx.state.bases.at(i, j);
      const Ciphertext& s = msg.shares.at(i, j);
      const EqdlStatement st{b.alpha, b.beta, s.alpha, s.beta};
      Transcript t;
      try {
        t = ForgeOutcomeEqdl(ctx.auction, index(), {i, j}, st, t_, ctx.rng, ctx.challenges);
      } catch (const LabError& e) {
        if (e.code() != ErrorCode::kModeMismatch) throw;
        // No sessions to relay. Splice the posted non-interactive proofs the
        // same way; their challenges differ from the hash of this statement.
        forgery_unavailable_ = true;
        const size_t cell = static_cast<size_t>(i) * ctx.config.k + j;
        GroupElement lambda = gp.One();
        GroupElement mu = gp.One();
        Scalar sum_r{0};
        for (const auto& m : messages) {
          const Transcript& o = m.proofs.at(cell).transcript;
          lambda = gp.Mul(lambda, o.commitments.at(0));
          mu = gp.Mul(mu, o.commitments.at(1));
          sum_r = gp.Add(sum_r, o.responses.at(0));
        }
        t.commitments = {gp.Inv(lambda), gp.Inv(mu)};
        t.challenge = ctx.challenges(st, t.commitments);
        t.responses = {gp.Sub(gp.Mul(t.challenge, t_), sum_r)};
      }
      msg.proofs.push_back(MakeRecord(st, std::move(t), ctx.config.proof_mode()));
    }
  }
  return {MakePost(ctx, Round::kOutcome, "outcome-share", Encode(gp, msg))};
}

std::vector<Post> ForceZeroBidder::Outcome(RoundContext& ctx) {
  if (!used_) {
    used_ = true;
    const GroupParams& gp = ctx.config.params;
    Scalar others{0};
    for (int o = 0; o < ctx.config.n; ++o) {
      if (o == index()) continue;
      others = gp.Add(others, ctx.auction.bidder(o).secrets().m.at(target_.bidder,
                                                                    target_.price));
    }
    secrets_.m.at(target_.bidder, target_.price) = gp.Neg(others);
  }
  return Bidder::Outcome(ctx);
}

std::vector<Post> WrongKeyBidder::Decrypt(RoundContext& ctx) {
  const Scalar x = ctx.config.params.Add(secrets_.key.x, offset_);
  return {MakePost(ctx, Round::kDecrypt, "decrypt-share",
                   Encode(ctx.config.params, BuildDecrypt(ctx, x)))};
}

// ---- Impersonation ----

Ciphertext ReencryptBidCopy(const GroupParams& gp, const Ciphertext& ct,
                            const GroupElement& y, const Scalar& x) {
  return {gp.Mul(ct.alpha, gp.Exp(y, x)), gp.Mul(ct.beta, gp.ExpG(x))};
}

Bytes CopyBidPayload(RoundContext& ctx, int target, bool rerandomize, Rng& rng) {
  const GroupParams& gp = ctx.config.params;
  const Post* source = nullptr;
  const std::vector<Post> bids = ctx.board.Latest(Round::kBid);
  for (const Post& p : bids) {
    if (p.author == target + 1) source = &p;
  }
  if (source == nullptr) {
    throw LabError(ErrorCode::kMissingShares, "target bid not on the board yet", target + 1);
  }
  if (!rerandomize) return source->payload;

  const BidMessage original = DecodeBid(gp, source->payload);
  const GroupElement& y = ctx.state.y;
  const GroupElement& big_y = ctx.config.YFor(target);
  const ProofMode mode = ctx.config.proof_mode();
  BidMessage copy;
  SumValidityStatement sum{y, gp.g(), big_y, {}, {}};
  Scalar total{0};
  for (int j = 0; j < static_cast<int>(original.cts.size()); ++j) {
    const Scalar x = gp.RandomScalar(rng);
    total = gp.Add(total, x);
    copy.cts.push_back(ReencryptBidCopy(gp, original.cts[j], y, x));
    const BidValidityStatement st{y, gp.g(), big_y, copy.cts[j].alpha, copy.cts[j].beta};
    ShiftedRelay relay(gp, ctx.auction.RequestBidProof(target, j), x);
    copy.validity.push_back(MakeRecord(st, RunProof(st, relay, rng, ctx.challenges), mode));
    sum.alphas.push_back(copy.cts[j].alpha);
    sum.betas.push_back(copy.cts[j].beta);
  }
  ShiftedRelay relay(gp, ctx.auction.RequestSumProof(target), total);
  copy.sum = MakeRecord(sum, RunProof(sum, relay, rng, ctx.challenges), mode);
  return Encode(gp, copy);
}

std::vector<Post> ImpersonationNetwork::Transmit(Post post, RoundContext& ctx) {
  if (post.round == Round::kBid && post.author != target_ + 1) {
    Post forged{Round::kBid, post.author, "bid", CopyBidPayload(ctx, target_, rerandomize_, rng_),
                {}};
    for (const Post& p : ctx.board.Latest(Round::kBid)) {
      if (p.author == target_ + 1) forged.auth = p.auth;
    }
    post = std::move(forged);
  }
  std::vector<Post> out;
  out.push_back(std::move(post));
  return out;
}

std::vector<Post> CopyingBidder::Bid(RoundContext& ctx) {
  return {MakePost(ctx, Round::kBid, "bid", CopyBidPayload(ctx, target_, rerandomize_, rng_))};
}

// ---- Attack runs ----

RecoveredBids SellerRecovery(const AuctionConfig& config, const Grid<GroupElement>& v,
                             const Scalar& t, ExponentVector* exponents) {
  const GroupParams& gp = config.params;
  ExponentVector l{config.n, config.k, std::vector<int64_t>(v.size())};
  std::vector<GroupElement> per_bidder;
  for (const auto& y : config.per_bidder_y) per_bidder.push_back(gp.Exp(y, t));
  const GroupElement base = gp.Exp(config.big_y, t);
  for (int i = 0; i < config.n; ++i) {
    for (int j = 0; j < config.k; ++j) {
      l.l[static_cast<size_t>(i) * config.k + j] =
          per_bidder.empty() ? ExponentFromPower(gp, v.at(i, j), base, config.n)
                             : ExponentFromSubsetProduct(gp, v.at(i, j), per_bidder);
    }
  }
  if (exponents) *exponents = l;
  return RecoverBids(l);
}

AttackReport FullPrivacyAttack(const AuctionConfig& config, std::span<const int> true_bids,
                               const FullAttackOptions& options) {
  CheckBidCount(config, true_bids);
  const GroupParams& gp = config.params;
  const int mallory = options.mallory < 0 ? config.n - 1 : options.mallory;
  Scalar t = gp.ScalarOf(1);
  if (options.random_exponent) {
    Rng rng(options.seed, kAdversaryStream);
    if (gp.q() <= 2) throw LabError(ErrorCode::kInvalidConfig, "group too small for t != 1");
    t = Scalar{rng.Below(gp.q() - 2) + 2};
  }
  auto bidders = HonestBidders(true_bids);
  bidders.at(mallory) = std::make_unique<NoiseRemovingBidder>(mallory, true_bids[mallory], t);
  Auction auction(config, std::move(bidders), options.seed);
  AttackReport report = NewReport("full-privacy-attack", config, true_bids);
  try {
    report.result = auction.Run();
    report.completed = true;
    ExponentVector l;
    report.recovered_bids = SellerRecovery(config, report.result->v, t, &l).Prices();
    report.exponents = l;
    report.success = report.recovered_bids == report.true_bids;
  } catch (const LabError& e) {
    RecordError(report, auction, e);
  }
  Finish(report, auction);
  return report;
}

AttackReport ForgedEqdlRun(const AuctionConfig& config, std::span<const int> true_bids,
                           uint64_t seed) {
  CheckBidCount(config, true_bids);
  auto bidders = HonestBidders(true_bids);
  const int mallory = config.n - 1;
  bidders.at(mallory) = std::make_unique<NoiseRemovingBidder>(
      mallory, true_bids[mallory], config.params.ScalarOf(1));
  Auction auction(config, std::move(bidders), seed);
  AttackReport report = NewReport("forged-eqdl", config, true_bids);
  try {
    auction.Begin();
    auction.StepKeygen();
    auction.StepBid();
    auction.StepOutcome();
    report.success = true;
  } catch (const LabError& e) {
    RecordError(report, auction, e);
  }
  Finish(report, auction);
  return report;
}

AttackReport ImpersonationAttack(const AuctionConfig& config, int target,
                                 std::span<const int> true_bids,
                                 const ImpersonationOptions& options) {
  CheckBidCount(config, true_bids);
  if (target < 0 || target >= config.n) {
    throw LabError(ErrorCode::kInvalidConfig, "target out of range");
  }
  auto bidders = HonestBidders(true_bids);
  if (options.colluding_bidders) {
    for (int b = 0; b < config.n; ++b) {
      if (b != target) {
        bidders[b] = std::make_unique<CopyingBidder>(b, true_bids[b], target,
                                                     options.rerandomize, options.seed);
      }
    }
  }
  Auction auction(config, std::move(bidders), options.seed);
  if (!options.colluding_bidders) {
    auction.set_network(
        std::make_unique<ImpersonationNetwork>(target, options.rerandomize, options.seed));
  }
  std::vector<int> order{target};
  for (int b = 0; b < config.n; ++b) {
    if (b != target) order.push_back(b);
  }
  auction.set_schedule(Round::kBid, order);
  AttackReport report = NewReport("impersonation", config, true_bids);
  try {
    report.result = auction.Run();
    report.completed = true;
    if (report.result->winner) {
      report.revealed_price = report.result->winner->price + 1;
      report.success = *report.revealed_price == true_bids[target];
    }
  } catch (const LabError& e) {
    RecordError(report, auction, e);
  }
  Finish(report, auction);
  return report;
}

AttackReport ForceZeroNoise(const AuctionConfig& config, std::span<const int> true_bids,
                            Cell cell, int colluder, uint64_t seed) {
  CheckBidCount(config, true_bids);
  if (cell.bidder < 0 || cell.bidder >= config.n || cell.price < 0 ||
      cell.price >= config.k || colluder < 0 || colluder >= config.n) {
    throw LabError(ErrorCode::kInvalidConfig, "cell or colluder out of range");
  }
  if (ExpectedWinner(true_bids) == cell) {
    throw LabError(ErrorCode::kInvalidConfig, "the target cell must be a losing cell");
  }
  auto bidders = HonestBidders(true_bids);
  bidders.at(colluder) = std::make_unique<ForceZeroBidder>(colluder, true_bids[colluder], cell);
  Auction auction(config, std::move(bidders), seed);
  AttackReport report = NewReport("exceptional-values", config, true_bids);
  try {
    report.result = auction.Run();
    report.completed = true;
    const auto& ones = report.result->ones;
    report.success = std::find(ones.begin(), ones.end(), cell) != ones.end();
  } catch (const LabError& e) {
    RecordError(report, auction, e);
  }
  Finish(report, auction);
  return report;
}

AttackReport WrongKeyDecrypt(const AuctionConfig& config, std::span<const int> true_bids,
                             int cheater, uint64_t seed, long offset) {
  CheckBidCount(config, true_bids);
  if (cheater < 0 || cheater >= config.n) {
    throw LabError(ErrorCode::kInvalidConfig, "cheater out of range");
  }
  auto bidders = HonestBidders(true_bids);
  bidders.at(cheater) = std::make_unique<WrongKeyBidder>(
      cheater, true_bids[cheater], config.params.ScalarOf(offset));
  Auction auction(config, std::move(bidders), seed);
  AttackReport report = NewReport("wrong-key", config, true_bids);
  try {
    report.result = auction.Run();
    report.completed = true;
    report.success = report.result->status == ResultStatus::kNoWinner;
  } catch (const LabError& e) {
    RecordError(report, auction, e);
  }
  Finish(report, auction);
  return report;
}

}  // namespace brandt
