#include "brandt/messages.hpp"

#include "brandt/errors.hpp"

namespace brandt {
namespace {

constexpr uint32_t kMaxDimension = 1u << 16;

uint32_t ReadCount(ByteReader& in) {
  const uint32_t v = in.U32();
  if (v == 0 || v > kMaxDimension) {
    throw LabError(ErrorCode::kMalformedPayload, "dimension out of range");
  }
  return v;
}

void WriteGrid(ByteWriter& out, const Grid<GroupElement>& g) {
  out.U32(static_cast<uint32_t>(g.rows())).U32(static_cast<uint32_t>(g.cols()));
  for (const auto& x : g.data()) out.Element(x);
}

Grid<GroupElement> ReadGrid(ByteReader& in) {
  const int rows = static_cast<int>(ReadCount(in));
  const int cols = static_cast<int>(ReadCount(in));
  Grid<GroupElement> g(rows, cols);
  for (auto& x : g.data()) x = in.Element();
  return g;
}

}  // namespace

Bytes Encode(const GroupParams& gp, const KeygenMessage& msg) {
  ByteWriter out(gp);
  out.Element(msg.y);
  WriteProof(out, msg.proof);
  return out.Take();
}

Bytes Encode(const GroupParams& gp, const BidMessage& msg) {
  ByteWriter out(gp);
  out.U32(static_cast<uint32_t>(msg.cts.size()));
  for (const auto& ct : msg.cts) out.Element(ct.alpha).Element(ct.beta);
  out.U32(static_cast<uint32_t>(msg.validity.size()));
  for (const auto& p : msg.validity) WriteProof(out, p);
  WriteProof(out, msg.sum);
  return out.Take();
}

Bytes Encode(const GroupParams& gp, const OutcomeMessage& msg) {
  ByteWriter out(gp);
  out.U32(static_cast<uint32_t>(msg.shares.rows()))
      .U32(static_cast<uint32_t>(msg.shares.cols()));
  for (const auto& c : msg.shares.data()) out.Element(c.alpha).Element(c.beta);
  out.U32(static_cast<uint32_t>(msg.proofs.size()));
  for (const auto& p : msg.proofs) WriteProof(out, p);
  return out.Take();
}

Bytes Encode(const GroupParams& gp, const DecryptMessage& msg) {
  ByteWriter out(gp);
  WriteGrid(out, msg.phi);
  WriteProof(out, msg.proof);
  return out.Take();
}

Bytes Encode(const GroupParams& gp, const PublishMessage& msg) {
  ByteWriter out(gp);
  out.U32(static_cast<uint32_t>(msg.shares.size()));
  for (const auto& s : msg.shares) {
    out.U32(static_cast<uint32_t>(s.author))
        .U32(static_cast<uint32_t>(s.bidder))
        .U32(static_cast<uint32_t>(s.price))
        .Element(s.phi);
  }
  return out.Take();
}

KeygenMessage DecodeKeygen(const GroupParams& gp, const Bytes& payload) {
  ByteReader in(gp, payload);
  KeygenMessage msg;
  msg.y = in.Element();
  msg.proof = ReadProof(in);
  in.ExpectEnd();
  return msg;
}

BidMessage DecodeBid(const GroupParams& gp, const Bytes& payload) {
  ByteReader in(gp, payload);
  BidMessage msg;
  const uint32_t k = ReadCount(in);
  for (uint32_t j = 0; j < k; ++j) {
    Ciphertext ct;
    ct.alpha = in.Element();
    ct.beta = in.Element();
    msg.cts.push_back(ct);
  }
  const uint32_t proofs = ReadCount(in);
  for (uint32_t j = 0; j < proofs; ++j) msg.validity.push_back(ReadProof(in));
  msg.sum = ReadProof(in);
  in.ExpectEnd();
  return msg;
}

OutcomeMessage DecodeOutcome(const GroupParams& gp, const Bytes& payload) {
  ByteReader in(gp, payload);
  OutcomeMessage msg;
  const int rows = static_cast<int>(ReadCount(in));
  const int cols = static_cast<int>(ReadCount(in));
  msg.shares = Grid<Ciphertext>(rows, cols);
  for (auto& c : msg.shares.data()) {
    c.alpha = in.Element();
    c.beta = in.Element();
  }
  const uint32_t proofs = ReadCount(in);
  for (uint32_t i = 0; i < proofs; ++i) msg.proofs.push_back(ReadProof(in));
  in.ExpectEnd();
  return msg;
}

DecryptMessage DecodeDecrypt(const GroupParams& gp, const Bytes& payload) {
  ByteReader in(gp, payload);
  DecryptMessage msg;
  msg.phi = ReadGrid(in);
  msg.proof = ReadProof(in);
  in.ExpectEnd();
  return msg;
}

PublishMessage DecodePublish(const GroupParams& gp, const Bytes& payload) {
  ByteReader in(gp, payload);
  PublishMessage msg;
  const uint32_t count = in.U32();
  for (uint32_t s = 0; s < count; ++s) {
    PublishedShare share;
    share.author = static_cast<int>(in.U32());
    share.bidder = static_cast<int>(in.U32());
    share.price = static_cast<int>(in.U32());
    share.phi = in.Element();
    msg.shares.push_back(share);
  }
  in.ExpectEnd();
  return msg;
}

}  // namespace brandt
