#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "brandt/encoding.hpp"
#include "json.hpp"

namespace brandt {

// Parties: 0 is the seller, bidders are 1..n.
using PartyId = int;
inline constexpr PartyId kSeller = 0;

std::string PartyName(PartyId id);
PartyId ParsePartyName(const std::string& name);

enum class Round { kKeygen, kBid, kOutcome, kDecrypt, kPublish, kRestart };

const char* RoundName(Round round);
Round ParseRoundName(const std::string& name);

struct Post {
  Round round;
  PartyId author;  // claimed, not proven unless authenticated
  std::string kind;
  Bytes payload;
  Bytes auth;      // empty when unauthenticated
};

// Append-only log. A kRestart post opens a new epoch; snapshots only see
// the current epoch. Posts are serialized through Append, the single
// writer interface.
class BulletinBoard {
 public:
  void Append(Post post);

  std::span<const Post> posts() const { return posts_; }
  size_t epoch_start() const { return epoch_start_; }
  int epochs() const { return epochs_; }

  // Posts of `round` in the current epoch, in posting order.
  std::vector<Post> Snapshot(Round round) const;
  // Latest post per author for `round` in the current epoch, by author.
  std::vector<Post> Latest(Round round) const;

  // [{round, author, kind, payload (hex), auth (hex)}, ...]
  nlohmann::ordered_json ToJson() const;
  static BulletinBoard FromJson(const nlohmann::json& j);

 private:
  std::vector<Post> posts_;
  size_t epoch_start_ = 0;
  int epochs_ = 1;
};

}  // namespace brandt
