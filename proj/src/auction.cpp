#include "brandt/auction.hpp"

#include <algorithm>

#include "brandt/errors.hpp"
#include "brandt/outcome_kernels.hpp"

namespace brandt {
namespace {

std::string BindingKey(const GroupParams& gp, const SigmaStatement& st,
                       std::span<const GroupElement> commitments) {
  ByteWriter out(gp);
  out.Append(SerializeStatement(gp, st));
  for (const auto& c : commitments) out.Element(c);
  const Digest d = Sha256(out.bytes());
  return ToHex(d);
}

std::string CellName(Cell c) {
  return "(" + std::to_string(c.bidder + 1) + "," + std::to_string(c.price + 1) + ")";
}

}  // namespace

AuctionConfig AuctionConfig::Make(int n, int k, GroupParams params,
                                  DefenseFlags defenses) {
  AuctionConfig c;
  c.n = n;
  c.k = k;
  c.big_y = params.Exp(params.g(), params.ScalarOf(2));
  c.params = std::move(params);
  c.defenses = defenses;
  return c;
}

const GroupElement& AuctionConfig::YFor(int bidder) const {
  return per_bidder_y.empty() ? big_y : per_bidder_y.at(bidder);
}

void AuctionConfig::Validate() const {
  if (n < 1 || k < 1) throw LabError(ErrorCode::kInvalidConfig, "n and k must be >= 1");
  if (mpz_class(n) >= params.q()) {
    throw LabError(ErrorCode::kInvalidConfig, "n must be below the group order");
  }
  auto check_y = [this](const GroupElement& y) {
    if (!params.IsMember(y) || y == params.One()) {
      throw LabError(ErrorCode::kInvalidConfig, "Y must be a subgroup element other than 1");
    }
  };
  check_y(big_y);
  if (!per_bidder_y.empty()) {
    if (static_cast<int>(per_bidder_y.size()) != n) {
      throw LabError(ErrorCode::kInvalidConfig, "need one Y per bidder");
    }
    for (const auto& y : per_bidder_y) check_y(y);
  }
  if (max_restarts < 0 || max_rerandomizations < 0) {
    throw LabError(ErrorCode::kInvalidConfig, "negative retry limit");
  }
}

BidVector EncodeBid(int price, const AuctionConfig& config, int bidder) {
  if (price < 1 || price > config.k) {
    throw LabError(ErrorCode::kPriceOutOfRange,
                   "price " + std::to_string(price) + " not in [1, " +
                       std::to_string(config.k) + "]",
                   bidder + 1);
  }
  BidVector v{std::vector<GroupElement>(config.k, config.params.One()), price};
  v.entries[price - 1] = config.YFor(bidder);
  return v;
}

const char* ResultStatusName(ResultStatus status) {
  switch (status) {
    case ResultStatus::kWinner: return "winner";
    case ResultStatus::kNoWinner: return "no-winner";
    case ResultStatus::kMultipleOnes: return "multiple-ones";
  }
  return "?";
}

Cell ExpectedWinner(std::span<const int> prices) {
  Cell best{0, prices[0] - 1};
  for (int i = 1; i < static_cast<int>(prices.size()); ++i) {
    if (prices[i] - 1 > best.price) best = {i, prices[i] - 1};
  }
  return best;
}

// ---- Bidder ----

void Bidder::Setup(const AuctionConfig& config, Rng& rng) {
  const GroupParams& gp = config.params;
  secrets_.key = GenKeyShare(gp, rng);
  secrets_.r.clear();
  for (int j = 0; j < config.k; ++j) secrets_.r.push_back(gp.RandomScalar(rng));
  secrets_.m = Grid<Scalar>(config.n, config.k);
  for (auto& m : secrets_.m.data()) m = gp.RandomNonzeroScalar(rng);
}

Post Bidder::MakePost(const RoundContext& ctx, Round round, std::string kind,
                      Bytes payload) const {
  Post post{round, id(), std::move(kind), std::move(payload), {}};
  if (ctx.config.defenses.authenticate && !auth_key_.empty()) {
    post.auth = AuthenticationTag(auth_key_, post);
  }
  return post;
}

std::vector<Post> Bidder::Keygen(RoundContext& ctx) {
  const GroupParams& gp = ctx.config.params;
  const PdlStatement st{gp.g(), secrets_.key.y};
  ProverSession session = ProverSession::Pdl(gp, secrets_.key.x);
  KeygenMessage msg{secrets_.key.y,
                    MakeRecord(st, RunProof(st, session, ctx.rng, ctx.challenges),
                               ctx.config.proof_mode())};
  return {MakePost(ctx, Round::kKeygen, "key-share", Encode(gp, msg))};
}

std::vector<Ciphertext> Bidder::BidCiphertexts(const AuctionConfig& config,
                                               const GroupElement& y) const {
  const BidVector bv = EncodeBid(price_, config, index_);
  std::vector<Ciphertext> cts;
  for (int j = 0; j < config.k; ++j) {
    cts.push_back(Encrypt(config.params, bv.entries[j], y, secrets_.r[j]));
  }
  return cts;
}

std::vector<Post> Bidder::Bid(RoundContext& ctx) {
  const AuctionConfig& config = ctx.config;
  const GroupParams& gp = config.params;
  const GroupElement& big_y = config.YFor(index_);
  BidMessage msg;
  msg.cts = BidCiphertexts(config, ctx.state.y);
  Scalar r_sum{0};
  for (int j = 0; j < config.k; ++j) {
    const bool is_y = j == price_ - 1;
    const BidValidityStatement st{ctx.state.y, gp.g(), big_y, msg.cts[j].alpha,
                                  msg.cts[j].beta};
    msg.validity.push_back(
        MakeRecord(st,
                   ProveBidValidity(gp, msg.cts[j], secrets_.r[j], is_y, ctx.state.y,
                                    big_y, ctx.rng, ctx.challenges),
                   config.proof_mode()));
    r_sum = gp.Add(r_sum, secrets_.r[j]);
  }
  SumValidityStatement sum{ctx.state.y, gp.g(), big_y, {}, {}};
  for (const auto& ct : msg.cts) {
    sum.alphas.push_back(ct.alpha);
    sum.betas.push_back(ct.beta);
  }
  msg.sum = MakeRecord(sum, ProveSumValidity(gp, sum, r_sum, ctx.rng, ctx.challenges),
                       config.proof_mode());
  return {MakePost(ctx, Round::kBid, "bid", Encode(gp, msg))};
}

OutcomeMessage Bidder::BuildOutcome(RoundContext& ctx) const {
  const GroupParams& gp = ctx.config.params;
  const Grid<Ciphertext>& bases = ctx.state.bases;
  OutcomeMessage msg;
  msg.shares = RaiseCells(gp, bases, secrets_.m);
  for (int i = 0; i < bases.rows(); ++i) {
    for (int j = 0; j < bases.cols(); ++j) {
      const Ciphertext& b = bases.at(i, j);
      const Ciphertext& s = msg.shares.at(i, j);
      const EqdlStatement st{b.alpha, b.beta, s.alpha, s.beta};
      msg.proofs.push_back(MakeRecord(
          st,
          EqdlRun(gp, b.alpha, b.beta, s.alpha, s.beta, secrets_.m.at(i, j), ctx.rng,
                  ctx.challenges),
          ctx.config.proof_mode()));
    }
  }
  return msg;
}

std::vector<Post> Bidder::Outcome(RoundContext& ctx) {
  return {MakePost(ctx, Round::kOutcome, "outcome-share",
                   Encode(ctx.config.params, BuildOutcome(ctx)))};
}

DecryptMessage Bidder::BuildDecrypt(RoundContext& ctx, const Scalar& x) const {
  const GroupParams& gp = ctx.config.params;
  const Grid<GroupElement> deltas = Betas(ctx.state.combined);
  DecryptMessage msg;
  msg.phi = RaiseAll(gp, deltas, x);
  const MultiEqdlStatement st =
      ctx.config.defenses.key_consistency
          ? KeyConsistencyStatement(gp, ctx.state.y_shares[index_], deltas, msg.phi)
          : SameKeyStatement(deltas, msg.phi);
  msg.proof = MakeRecord(st, KeyConsistencyProve(gp, st, x, ctx.rng, ctx.challenges),
                         ctx.config.proof_mode());
  return msg;
}

std::vector<Post> Bidder::Decrypt(RoundContext& ctx) {
  return {MakePost(ctx, Round::kDecrypt, "decrypt-share",
                   Encode(ctx.config.params, BuildDecrypt(ctx, secrets_.key.x)))};
}

void Bidder::Rerandomize(std::span<const Cell> cells, const AuctionConfig& config,
                         Rng& rng) {
  for (const Cell& c : cells) {
    secrets_.m.at(c.bidder, c.price) = config.params.RandomNonzeroScalar(rng);
  }
}

std::unique_ptr<InteractiveProver> Bidder::OpenOutcomeProof(const RoundContext& ctx,
                                                            Cell cell) {
  if (ctx.config.proof_mode() == ProofMode::kFiatShamir) {
    throw LabError(ErrorCode::kModeMismatch,
                   "no interactive sessions in Fiat-Shamir mode", id());
  }
  const Ciphertext& b = ctx.state.bases.at(cell.bidder, cell.price);
  return std::make_unique<ProverSession>(ProverSession::Eqdl(
      ctx.config.params, b.alpha, b.beta, secrets_.m.at(cell.bidder, cell.price)));
}

std::unique_ptr<InteractiveProver> Bidder::OpenBidProof(const RoundContext& ctx,
                                                        int price_index) {
  if (ctx.config.proof_mode() == ProofMode::kFiatShamir) {
    throw LabError(ErrorCode::kModeMismatch,
                   "no interactive sessions in Fiat-Shamir mode", id());
  }
  const GroupParams& gp = ctx.config.params;
  const Ciphertext ct = BidCiphertexts(ctx.config, ctx.state.y)[price_index];
  const BidValidityStatement st{ctx.state.y, gp.g(), ctx.config.YFor(index_), ct.alpha,
                                ct.beta};
  return std::make_unique<BidValidityProver>(gp, st, secrets_.r[price_index],
                                             price_index == price_ - 1);
}

std::unique_ptr<InteractiveProver> Bidder::OpenSumProof(const RoundContext& ctx) {
  if (ctx.config.proof_mode() == ProofMode::kFiatShamir) {
    throw LabError(ErrorCode::kModeMismatch,
                   "no interactive sessions in Fiat-Shamir mode", id());
  }
  const GroupParams& gp = ctx.config.params;
  Scalar r_sum{0};
  for (const auto& r : secrets_.r) r_sum = gp.Add(r_sum, r);
  return std::make_unique<ProverSession>(
      ProverSession::Eqdl(gp, ctx.state.y, gp.g(), r_sum));
}

std::vector<Post> Network::Transmit(Post post, RoundContext&) {
  std::vector<Post> out;
  out.push_back(std::move(post));
  return out;
}

// ---- Auction ----

Auction::Auction(AuctionConfig config, std::vector<std::unique_ptr<Bidder>> bidders,
                 uint64_t seed)
    : config_(std::move(config)),
      bidders_(std::move(bidders)),
      verifier_rng_(seed, kVerifierStream),
      registry_rng_(seed, kRegistryStream),
      network_(std::make_unique<Network>()) {
  config_.Validate();
  if (static_cast<int>(bidders_.size()) != config_.n) {
    throw LabError(ErrorCode::kInvalidConfig, "bidder count differs from n");
  }
  for (int b = 0; b < config_.n; ++b) {
    if (bidders_[b]->index() != b) {
      throw LabError(ErrorCode::kInvalidConfig, "bidder indices out of order");
    }
    EncodeBid(bidders_[b]->price(), config_, b);
    rngs_.emplace_back(seed, kBidderStream + b);
  }
  if (config_.proof_mode() == ProofMode::kFiatShamir) {
    challenges_ = FiatShamirChallenges(config_.params);
  } else {
    // The honest verifiers remember every challenge they hand out; an
    // interactive transcript is only accepted with a challenge they issued.
    challenges_ = [this](const SigmaStatement& st,
                         std::span<const GroupElement> commitments) {
      Scalar c = config_.params.RandomScalar(verifier_rng_);
      issued_[BindingKey(config_.params, st, commitments)].push_back(c);
      return c;
    };
  }
  if (config_.defenses.authenticate) {
    seller_key_ = registry_.Register(kSeller, registry_rng_);
    for (auto& b : bidders_) b->set_auth_key(registry_.Register(b->id(), registry_rng_));
  }
}

std::unique_ptr<Auction> Auction::Honest(const AuctionConfig& config,
                                         std::span<const int> prices, uint64_t seed) {
  if (static_cast<int>(prices.size()) != config.n) {
    throw LabError(ErrorCode::kInvalidConfig, "need one price per bidder");
  }
  std::vector<std::unique_ptr<Bidder>> bidders;
  for (int b = 0; b < config.n; ++b) bidders.push_back(std::make_unique<Bidder>(b, prices[b]));
  return std::make_unique<Auction>(config, std::move(bidders), seed);
}

void Auction::set_schedule(Round round, std::vector<int> order) {
  std::vector<int> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (int b = 0; b < config_.n; ++b) {
    if (static_cast<int>(sorted.size()) != config_.n || sorted[b] != b) {
      throw LabError(ErrorCode::kInvalidConfig, "schedule must permute the bidders");
    }
  }
  schedule_[round] = std::move(order);
}

std::vector<int> Auction::Order(Round round) const {
  if (auto it = schedule_.find(round); it != schedule_.end()) return it->second;
  std::vector<int> order;
  for (int b = 0; b < config_.n; ++b) {
    if (round != Round::kOutcome || !bidders_[b]->WaitsForOthers()) order.push_back(b);
  }
  if (round == Round::kOutcome) {
    for (int b = 0; b < config_.n; ++b) {
      if (bidders_[b]->WaitsForOthers()) order.push_back(b);
    }
  }
  return order;
}

RoundContext Auction::Context(int bidder) {
  return RoundContext{config_, board_, state_, rngs_.at(bidder), challenges_, *this};
}

void Auction::Deliver(Post post, int sender) {
  RoundContext ctx = Context(sender);
  for (auto& delivered : network_->Transmit(std::move(post), ctx)) {
    board_.Append(std::move(delivered));
  }
}

void Auction::Collect(Round round, std::vector<Post> (Bidder::*step)(RoundContext&)) {
  current_round_ = round;
  for (int b : Order(round)) {
    RoundContext ctx = Context(b);
    for (auto& post : (bidders_[b].get()->*step)(ctx)) Deliver(std::move(post), b);
  }
}

std::vector<Post> Auction::AcceptedPosts(Round round) const {
  std::vector<Post> latest = board_.Latest(round);
  std::vector<Post> by_bidder(config_.n);
  std::vector<bool> seen(config_.n, false);
  for (auto& post : latest) {
    if (post.author < 1 || post.author > config_.n) {
      throw LabError(ErrorCode::kUnknownAuthor,
                     "post from " + PartyName(post.author) + " in " + RoundName(round),
                     post.author);
    }
    if (config_.defenses.authenticate && !registry_.VerifyPost(post)) {
      throw LabError(ErrorCode::kAuthRejected,
                     std::string("bad tag on ") + RoundName(round) + " post of " +
                         PartyName(post.author),
                     post.author);
    }
    seen[post.author - 1] = true;
    by_bidder[post.author - 1] = std::move(post);
  }
  for (int b = 0; b < config_.n; ++b) {
    if (!seen[b]) {
      throw LabError(ErrorCode::kMissingShares,
                     PartyName(b + 1) + " posted nothing in " + RoundName(round), b + 1);
    }
  }
  return by_bidder;
}

void Auction::CheckProof(const SigmaStatement& st, const ProofRecord& proof,
                         PartyId party) {
  bool ok = VerifyProof(config_.params, st, proof, config_.proof_mode());
  if (ok && config_.proof_mode() == ProofMode::kInteractiveMalleable) {
    auto it = issued_.find(BindingKey(config_.params, st, proof.transcript.commitments));
    ok = it != issued_.end() &&
         std::find(it->second.begin(), it->second.end(), proof.transcript.challenge) !=
             it->second.end();
  }
  if (!ok) {
    throw LabError(ErrorCode::kProofRejected,
                   std::string(proof.tag) + " proof of " + PartyName(party) +
                       " rejected in " + RoundName(current_round_),
                   party);
  }
  ++proofs_verified_;
}

template <class F>
static auto DecodeFrom(const Post& post, F decode) {
  try {
    return decode();
  } catch (const LabError& e) {
    throw LabError(e.code(), std::string(e.what()) + " (from " + PartyName(post.author) + ")",
                   post.author);
  }
}

void Auction::Begin() {
  state_ = PublicState{};
  for (int b = 0; b < config_.n; ++b) bidders_[b]->Setup(config_, rngs_[b]);
}

void Auction::StepKeygen() {
  const GroupParams& gp = config_.params;
  Collect(Round::kKeygen, &Bidder::Keygen);
  state_.y_shares.clear();
  for (const Post& post : AcceptedPosts(Round::kKeygen)) {
    const KeygenMessage msg = DecodeFrom(post, [&] { return DecodeKeygen(gp, post.payload); });
    CheckProof(PdlStatement{gp.g(), msg.y}, msg.proof, post.author);
    state_.y_shares.push_back(msg.y);
  }
  state_.y = AggregateKeys(gp, state_.y_shares).y;
}

void Auction::StepBid() {
  const GroupParams& gp = config_.params;
  Collect(Round::kBid, &Bidder::Bid);
  state_.bids = Grid<Ciphertext>(config_.n, config_.k);
  for (const Post& post : AcceptedPosts(Round::kBid)) {
    const BidMessage msg = DecodeFrom(post, [&] { return DecodeBid(gp, post.payload); });
    const int a = post.author - 1;
    if (static_cast<int>(msg.cts.size()) != config_.k ||
        msg.validity.size() != msg.cts.size()) {
      throw LabError(ErrorCode::kProofRejected, "bid of wrong length", post.author);
    }
    const GroupElement& big_y = config_.YFor(a);
    SumValidityStatement sum{state_.y, gp.g(), big_y, {}, {}};
    for (int j = 0; j < config_.k; ++j) {
      const Ciphertext& ct = msg.cts[j];
      CheckProof(BidValidityStatement{state_.y, gp.g(), big_y, ct.alpha, ct.beta},
                 msg.validity[j], post.author);
      sum.alphas.push_back(ct.alpha);
      sum.betas.push_back(ct.beta);
      state_.bids.at(a, j) = ct;
    }
    CheckProof(sum, msg.sum, post.author);
  }
  state_.bases = OutcomeBases(gp, state_.bids);
}

bool Auction::BasesNeedRestart() {
  for (int i = 0; i < config_.n; ++i) {
    for (int j = 0; j < config_.k; ++j) {
      if (IsStructurallyEmpty(i, j, config_.k)) continue;
      if (CheckExceptionalBase(config_.params, state_.bases, i, j) ==
          BaseCheck::kRestartRequired) {
        events_.push_back("exceptional base at cell " + CellName({i, j}));
        return true;
      }
    }
  }
  return false;
}

void Auction::VerifyOutcomeRound() {
  const GroupParams& gp = config_.params;
  state_.outcome.clear();
  for (const Post& post : AcceptedPosts(Round::kOutcome)) {
    OutcomeMessage msg = DecodeFrom(post, [&] { return DecodeOutcome(gp, post.payload); });
    if (msg.shares.rows() != config_.n || msg.shares.cols() != config_.k ||
        msg.proofs.size() != msg.shares.size()) {
      throw LabError(ErrorCode::kProofRejected, "outcome share of wrong shape",
                     post.author);
    }
    for (int i = 0; i < config_.n; ++i) {
      for (int j = 0; j < config_.k; ++j) {
        const Ciphertext& b = state_.bases.at(i, j);
        const Ciphertext& s = msg.shares.at(i, j);
        CheckProof(EqdlStatement{b.alpha, b.beta, s.alpha, s.beta},
                   msg.proofs[static_cast<size_t>(i) * config_.k + j], post.author);
      }
    }
    state_.outcome.push_back(std::move(msg.shares));
  }
  state_.combined = MultiplyGrids(gp, state_.outcome);
}

void Auction::StepOutcome() {
  Collect(Round::kOutcome, &Bidder::Outcome);
  VerifyOutcomeRound();
  if (!config_.defenses.noise_product_check) return;
  for (int attempt = 0;; ++attempt) {
    const auto flagged = CheckNoiseProducts(config_.params, state_.bases, state_.combined);
    if (flagged.empty()) return;
    std::vector<Cell> cells;
    std::string listing;
    for (const auto& f : flagged) {
      cells.push_back(f.cell);
      listing += " " + CellName(f.cell) + ":" + NoiseFlagName(f.reason);
    }
    events_.push_back("flagged outcome cells" + listing);
    if (attempt == config_.max_rerandomizations) {
      throw LabError(ErrorCode::kNoiseRemovalDetected,
                     "outcome products stay exceptional after " +
                         std::to_string(attempt) + " re-randomizations:" + listing);
    }
    ++rerandomizations_;
    for (int b = 0; b < config_.n; ++b) bidders_[b]->Rerandomize(cells, config_, rngs_[b]);
    Collect(Round::kOutcome, &Bidder::Outcome);
    VerifyOutcomeRound();
  }
}

void Auction::StepDecrypt() {
  const GroupParams& gp = config_.params;
  Collect(Round::kDecrypt, &Bidder::Decrypt);
  const Grid<GroupElement> deltas = Betas(state_.combined);
  state_.phi.clear();
  for (const Post& post : AcceptedPosts(Round::kDecrypt)) {
    DecryptMessage msg = DecodeFrom(post, [&] { return DecodeDecrypt(gp, post.payload); });
    if (msg.phi.rows() != config_.n || msg.phi.cols() != config_.k) {
      throw LabError(ErrorCode::kProofRejected, "decryption share of wrong shape",
                     post.author);
    }
    const MultiEqdlStatement st =
        config_.defenses.key_consistency
            ? KeyConsistencyStatement(gp, state_.y_shares[post.author - 1], deltas,
                                      msg.phi)
            : SameKeyStatement(deltas, msg.phi);
    CheckProof(st, msg.proof, post.author);
    state_.phi.push_back(std::move(msg.phi));
  }

  // The seller hands every bidder the other shares of its own row.
  current_round_ = Round::kPublish;
  PublishMessage publish;
  for (int h = 0; h < config_.n; ++h) {
    for (int i = 0; i < config_.n; ++i) {
      if (i == h) continue;
      for (int j = 0; j < config_.k; ++j) {
        publish.shares.push_back({h, i, j, state_.phi[h].at(i, j)});
      }
    }
  }
  Post post{Round::kPublish, kSeller, "phi-publish", Encode(gp, publish), {}};
  if (config_.defenses.authenticate) post.auth = AuthenticationTag(seller_key_, post);
  board_.Append(std::move(post));
}

AuctionResult Auction::DetermineWinner() const {
  const GroupParams& gp = config_.params;
  AuctionResult result;
  result.v = DivideCells(gp, Alphas(state_.combined), MultiplyGrids(gp, state_.phi));
  for (int i = 0; i < config_.n; ++i) {
    for (int j = 0; j < config_.k; ++j) {
      if (result.v.at(i, j) == gp.One()) result.ones.push_back({i, j});
    }
  }
  if (result.ones.size() == 1) {
    result.status = ResultStatus::kWinner;
    result.winner = result.ones.front();
  } else {
    result.status = result.ones.empty() ? ResultStatus::kNoWinner : ResultStatus::kMultipleOnes;
  }
  return result;
}

std::vector<GroupElement> Auction::BidderView(int bidder) const {
  const GroupParams& gp = config_.params;
  const std::vector<Post> published = board_.Latest(Round::kPublish);
  if (published.empty()) {
    throw LabError(ErrorCode::kMissingShares, "seller has not published");
  }
  const Post& post = published.back();
  if (config_.defenses.authenticate && !registry_.VerifyPost(post)) {
    throw LabError(ErrorCode::kAuthRejected, "bad tag on seller publication", kSeller);
  }
  const PublishMessage msg = DecodePublish(gp, post.payload);
  const Grid<GroupElement> deltas = Betas(state_.combined);
  const Scalar& x = bidders_.at(bidder)->secrets().key.x;
  std::vector<GroupElement> denom(config_.k);
  for (int j = 0; j < config_.k; ++j) denom[j] = gp.Exp(deltas.at(bidder, j), x);
  for (const auto& s : msg.shares) {
    if (s.bidder == bidder) denom.at(s.price) = gp.Mul(denom.at(s.price), s.phi);
  }
  std::vector<GroupElement> row(config_.k);
  for (int j = 0; j < config_.k; ++j) {
    row[j] = gp.Div(state_.combined.at(bidder, j).alpha, denom[j]);
  }
  return row;
}

std::unique_ptr<InteractiveProver> Auction::RequestOutcomeProof(int from, Cell cell) {
  RoundContext ctx = Context(from);
  return bidders_.at(from)->OpenOutcomeProof(ctx, cell);
}

std::unique_ptr<InteractiveProver> Auction::RequestBidProof(int from, int price_index) {
  RoundContext ctx = Context(from);
  return bidders_.at(from)->OpenBidProof(ctx, price_index);
}

std::unique_ptr<InteractiveProver> Auction::RequestSumProof(int from) {
  RoundContext ctx = Context(from);
  return bidders_.at(from)->OpenSumProof(ctx);
}

void Auction::Restart(const std::string& reason) {
  if (restarts_ == config_.max_restarts) {
    throw LabError(ErrorCode::kRestartLimit,
                   "gave up after " + std::to_string(restarts_) + " restarts: " + reason);
  }
  ++restarts_;
  const std::vector<uint8_t> payload(reason.begin(), reason.end());
  Post post{Round::kRestart, kSeller, "restart", payload, {}};
  if (config_.defenses.authenticate) post.auth = AuthenticationTag(seller_key_, post);
  board_.Append(std::move(post));
}

AuctionResult Auction::Run() {
  for (;;) {
    Begin();
    StepKeygen();
    StepBid();
    if (config_.defenses.noise_product_check && BasesNeedRestart()) {
      Restart("exceptional outcome base");
      continue;
    }
    StepOutcome();
    StepDecrypt();
    current_round_ = Round::kPublish;
    return DetermineWinner();
  }
}

}  // namespace brandt
