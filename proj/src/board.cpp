#include "brandt/board.hpp"

#include <algorithm>
#include <map>

#include "brandt/errors.hpp"

namespace brandt {

std::string PartyName(PartyId id) {
  return id == kSeller ? "seller" : "bidder-" + std::to_string(id);
}

PartyId ParsePartyName(const std::string& name) {
  if (name == "seller") return kSeller;
  if (name.rfind("bidder-", 0) == 0) return std::stoi(name.substr(7));
  throw LabError(ErrorCode::kMalformedPayload, "unknown party name " + name);
}

const char* RoundName(Round round) {
  switch (round) {
    case Round::kKeygen: return "keygen";
    case Round::kBid: return "bid";
    case Round::kOutcome: return "outcome";
    case Round::kDecrypt: return "decrypt";
    case Round::kPublish: return "publish";
    case Round::kRestart: return "restart";
  }
  return "?";
}

Round ParseRoundName(const std::string& name) {
  for (Round r : {Round::kKeygen, Round::kBid, Round::kOutcome, Round::kDecrypt,
                  Round::kPublish, Round::kRestart}) {
    if (name == RoundName(r)) return r;
  }
  throw LabError(ErrorCode::kMalformedPayload, "unknown round " + name);
}

void BulletinBoard::Append(Post post) {
  const bool restart = post.round == Round::kRestart;
  posts_.push_back(std::move(post));
  if (restart) {
    epoch_start_ = posts_.size();
    ++epochs_;
  }
}

std::vector<Post> BulletinBoard::Snapshot(Round round) const {
  std::vector<Post> out;
  for (size_t i = epoch_start_; i < posts_.size(); ++i) {
    if (posts_[i].round == round) out.push_back(posts_[i]);
  }
  return out;
}

std::vector<Post> BulletinBoard::Latest(Round round) const {
  std::map<PartyId, Post> latest;
  for (auto& p : Snapshot(round)) latest.insert_or_assign(p.author, std::move(p));
  std::vector<Post> out;
  out.reserve(latest.size());
  for (auto& [id, p] : latest) out.push_back(std::move(p));
  return out;
}

nlohmann::ordered_json BulletinBoard::ToJson() const {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& p : posts_) {
    nlohmann::ordered_json j;
    j["round"] = RoundName(p.round);
    j["author"] = PartyName(p.author);
    j["kind"] = p.kind;
    j["payload"] = ToHex(p.payload);
    j["auth"] = ToHex(p.auth);
    out.push_back(std::move(j));
  }
  return out;
}

BulletinBoard BulletinBoard::FromJson(const nlohmann::json& j) {
  if (!j.is_array()) throw LabError(ErrorCode::kMalformedPayload, "transcript must be an array");
  BulletinBoard board;
  for (const auto& p : j) {
    board.Append(Post{ParseRoundName(p.at("round").get<std::string>()),
                      ParsePartyName(p.at("author").get<std::string>()),
                      p.at("kind").get<std::string>(),
                      FromHex(p.at("payload").get<std::string>()),
                      FromHex(p.at("auth").get<std::string>())});
  }
  return board;
}

}  // namespace brandt
