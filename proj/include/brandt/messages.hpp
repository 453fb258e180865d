#pragma once

#include <vector>

#include "brandt/elgamal.hpp"
#include "brandt/encoding.hpp"
#include "brandt/grid.hpp"
#include "brandt/sigma.hpp"

namespace brandt {

// Board payloads. Every decoder throws LabError{MalformedPayload} on bad
// bytes and checks subgroup membership of each element.

struct KeygenMessage {
  GroupElement y;
  ProofRecord proof;  // PDL of log_g(y)
};

struct BidMessage {
  std::vector<Ciphertext> cts;         // k entries
  std::vector<ProofRecord> validity;   // k OR proofs
  ProofRecord sum;                     // exactly one Y
};

// gamma in .alpha, delta in .beta of each cell.
struct OutcomeMessage {
  Grid<Ciphertext> shares;
  std::vector<ProofRecord> proofs;  // row-major, one EQDL per cell
};

struct DecryptMessage {
  Grid<GroupElement> phi;
  ProofRecord proof;
};

struct PublishedShare {
  int author;  // 0-based bidder
  int bidder;
  int price;
  GroupElement phi;
};

struct PublishMessage {
  std::vector<PublishedShare> shares;
};

Bytes Encode(const GroupParams& params, const KeygenMessage& msg);
Bytes Encode(const GroupParams& params, const BidMessage& msg);
Bytes Encode(const GroupParams& params, const OutcomeMessage& msg);
Bytes Encode(const GroupParams& params, const DecryptMessage& msg);
Bytes Encode(const GroupParams& params, const PublishMessage& msg);

KeygenMessage DecodeKeygen(const GroupParams& params, const Bytes& payload);
BidMessage DecodeBid(const GroupParams& params, const Bytes& payload);
OutcomeMessage DecodeOutcome(const GroupParams& params, const Bytes& payload);
DecryptMessage DecodeDecrypt(const GroupParams& params, const Bytes& payload);
PublishMessage DecodePublish(const GroupParams& params, const Bytes& payload);

}  // namespace brandt
