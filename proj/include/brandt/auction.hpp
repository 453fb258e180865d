#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "brandt/board.hpp"
#include "brandt/defenses.hpp"
#include "brandt/elgamal.hpp"
#include "brandt/grid.hpp"
#include "brandt/messages.hpp"
#include "brandt/sigma.hpp"

namespace brandt {

// Rng streams. Bidder b (0-based) draws from kBidderStream + b.
inline constexpr uint64_t kBidderStream = 1;
inline constexpr uint64_t kVerifierStream = 1000;
inline constexpr uint64_t kRegistryStream = 2000;
inline constexpr uint64_t kAdversaryStream = 3000;

struct AuctionConfig {
  int n = 1;
  int k = 1;
  GroupParams params = GroupParams::Small();
  GroupElement big_y;                       // defaults to g^2 in Make
  std::vector<GroupElement> per_bidder_y;   // empty: one Y for everybody
  DefenseFlags defenses;
  int max_restarts = 32;
  int max_rerandomizations = 16;

  static AuctionConfig Make(int n, int k, GroupParams params = GroupParams::Small(),
                            DefenseFlags defenses = {});

  ProofMode proof_mode() const {
    return defenses.ni_proofs ? ProofMode::kFiatShamir : ProofMode::kInteractiveMalleable;
  }
  // Y used in the bid vector of bidder b (0-based).
  const GroupElement& YFor(int bidder) const;
  // Throws LabError{InvalidConfig}.
  void Validate() const;
};

struct BidVector {
  std::vector<GroupElement> entries;
  int price;  // 1-based
};

// Throws LabError{PriceOutOfRange} unless 1 <= price <= k.
BidVector EncodeBid(int price, const AuctionConfig& config, int bidder = 0);

// Everything the honest verifiers have accepted so far.
struct PublicState {
  std::vector<GroupElement> y_shares;
  GroupElement y;
  Grid<Ciphertext> bids;                   // n x k
  Grid<Ciphertext> bases;                  // per-cell alpha/beta products
  std::vector<Grid<Ciphertext>> outcome;   // per bidder, (gamma, delta)
  Grid<Ciphertext> combined;               // product over bidders
  std::vector<Grid<GroupElement>> phi;     // per bidder, as sent to the seller
};

struct BidderSecrets {
  KeyShare key;
  std::vector<Scalar> r;  // bid randomness, one per price
  Grid<Scalar> m;         // outcome randomizers, drawn from [1, q)
};

class Auction;

struct RoundContext {
  const AuctionConfig& config;
  const BulletinBoard& board;
  const PublicState& state;
  Rng& rng;
  const ChallengeSource& challenges;
  Auction& auction;
};

// An honest bidder. Attack strategies override single steps.
class Bidder {
 public:
  Bidder(int index, int price) : index_(index), price_(price) {}
  virtual ~Bidder() = default;

  int index() const { return index_; }
  PartyId id() const { return index_ + 1; }
  int price() const { return price_; }
  const BidderSecrets& secrets() const { return secrets_; }
  BidderSecrets& mutable_secrets() { return secrets_; }
  void set_auth_key(Bytes key) { auth_key_ = std::move(key); }

  // Posts in the outcome round only after everybody else.
  virtual bool WaitsForOthers() const { return false; }

  // Draws x, the r_j and the m_ij for a fresh epoch.
  virtual void Setup(const AuctionConfig& config, Rng& rng);
  virtual std::vector<Post> Keygen(RoundContext& ctx);
  virtual std::vector<Post> Bid(RoundContext& ctx);
  virtual std::vector<Post> Outcome(RoundContext& ctx);
  virtual std::vector<Post> Decrypt(RoundContext& ctx);
  virtual void Rerandomize(std::span<const Cell> cells, const AuctionConfig& config,
                           Rng& rng);

  // Interactive proof sessions on request of another party. Throw
  // LabError{ModeMismatch} in Fiat-Shamir mode.
  virtual std::unique_ptr<InteractiveProver> OpenOutcomeProof(const RoundContext& ctx,
                                                              Cell cell);
  virtual std::unique_ptr<InteractiveProver> OpenBidProof(const RoundContext& ctx,
                                                          int price_index);
  virtual std::unique_ptr<InteractiveProver> OpenSumProof(const RoundContext& ctx);

  std::vector<Ciphertext> BidCiphertexts(const AuctionConfig& config,
                                         const GroupElement& y) const;

 protected:
  Post MakePost(const RoundContext& ctx, Round round, std::string kind,
                Bytes payload) const;
  OutcomeMessage BuildOutcome(RoundContext& ctx) const;
  DecryptMessage BuildDecrypt(RoundContext& ctx, const Scalar& x) const;

  BidderSecrets secrets_;

 private:
  int index_;
  int price_;
  Bytes auth_key_;
};

// Delivery of posts to the board. The default network is honest; an
// attacker controlling the channel can drop, rewrite or add posts.
class Network {
 public:
  virtual ~Network() = default;
  virtual std::vector<Post> Transmit(Post post, RoundContext& ctx);
};

enum class ResultStatus { kWinner, kNoWinner, kMultipleOnes };

const char* ResultStatusName(ResultStatus status);

struct AuctionResult {
  Grid<GroupElement> v;
  ResultStatus status = ResultStatus::kNoWinner;
  std::vector<Cell> ones;     // every cell with v = 1, row-major
  std::optional<Cell> winner; // set iff status == kWinner (0-based)
};

// Highest price, lowest index among its bidders. Prices 1-based, result
// 0-based.
Cell ExpectedWinner(std::span<const int> prices);

class Auction {
 public:
  Auction(AuctionConfig config, std::vector<std::unique_ptr<Bidder>> bidders,
          uint64_t seed);
  Auction(const Auction&) = delete;
  Auction& operator=(const Auction&) = delete;

  // All bidders honest.
  static std::unique_ptr<Auction> Honest(const AuctionConfig& config,
                                         std::span<const int> prices, uint64_t seed);

  void set_network(std::unique_ptr<Network> network) { network_ = std::move(network); }
  void set_schedule(Round round, std::vector<int> order);

  // Individual protocol steps, each followed by the honest verifiers'
  // checks. Any rejection throws LabError naming the offending party.
  void Begin();
  void StepKeygen();
  void StepBid();
  // True when some cell base is exceptional; only consulted with the
  // noise_product_check defense.
  bool BasesNeedRestart();
  void StepOutcome();
  void StepDecrypt();
  AuctionResult DetermineWinner() const;

  // All steps, with restarts and re-randomization as the defenses demand.
  AuctionResult Run();

  // Row of v for `bidder` from the seller's publication and the bidder's
  // own share.
  std::vector<GroupElement> BidderView(int bidder) const;

  std::unique_ptr<InteractiveProver> RequestOutcomeProof(int from, Cell cell);
  std::unique_ptr<InteractiveProver> RequestBidProof(int from, int price_index);
  std::unique_ptr<InteractiveProver> RequestSumProof(int from);

  const AuctionConfig& config() const { return config_; }
  const GroupParams& params() const { return config_.params; }
  const BulletinBoard& board() const { return board_; }
  const PublicState& state() const { return state_; }
  int n() const { return config_.n; }
  Bidder& bidder(int index) { return *bidders_.at(index); }
  const Bidder& bidder(int index) const { return *bidders_.at(index); }
  Round current_round() const { return current_round_; }
  const std::vector<std::string>& events() const { return events_; }
  int restarts() const { return restarts_; }
  int rerandomizations() const { return rerandomizations_; }
  uint64_t proofs_verified() const { return proofs_verified_; }

 private:
  RoundContext Context(int bidder);
  std::vector<int> Order(Round round) const;
  void Collect(Round round, std::vector<Post> (Bidder::*step)(RoundContext&));
  void Deliver(Post post, int sender);
  std::vector<Post> AcceptedPosts(Round round) const;
  void CheckProof(const SigmaStatement& st, const ProofRecord& proof, PartyId party);
  void VerifyOutcomeRound();
  void Restart(const std::string& reason);

  AuctionConfig config_;
  std::vector<std::unique_ptr<Bidder>> bidders_;
  std::vector<Rng> rngs_;
  Rng verifier_rng_;
  Rng registry_rng_;
  AuthRegistry registry_;
  Bytes seller_key_;
  std::unique_ptr<Network> network_;
  std::map<Round, std::vector<int>> schedule_;
  ChallengeSource challenges_;
  std::map<std::string, std::vector<Scalar>> issued_;
  BulletinBoard board_;
  PublicState state_;
  Round current_round_ = Round::kKeygen;
  std::vector<std::string> events_;
  int restarts_ = 0;
  int rerandomizations_ = 0;
  uint64_t proofs_verified_ = 0;
};

}  // namespace brandt
