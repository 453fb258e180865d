#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "brandt/group.hpp"

namespace brandt {

using Bytes = std::vector<uint8_t>;
using Digest = std::array<uint8_t, 32>;

inline constexpr std::string_view kHashName = "SHA-256";

Digest Sha256(std::span<const uint8_t> data);
Digest HmacSha256(std::span<const uint8_t> key, std::span<const uint8_t> data);

std::string ToHex(std::span<const uint8_t> data);
Bytes FromHex(std::string_view hex);

// Canonical encoding: big-endian u32 length prefixes in front of every field;
// group elements and scalars are left-padded to the fixed widths of the group.
class ByteWriter {
 public:
  explicit ByteWriter(const GroupParams& params) : params_(&params) {}

  ByteWriter& U32(uint32_t v);
  ByteWriter& Field(std::span<const uint8_t> data);
  ByteWriter& String(std::string_view s);
  ByteWriter& Element(const GroupElement& x);
  ByteWriter& ScalarField(const Scalar& s);
  ByteWriter& Integer(const mpz_class& v, size_t width);
  ByteWriter& Append(std::span<const uint8_t> raw);

  const Bytes& bytes() const { return out_; }
  Bytes Take() { return std::move(out_); }

 private:
  const GroupParams* params_;
  Bytes out_;
};

// Reader counterpart. Every malformed input throws LabError{MalformedPayload};
// decoded elements are checked for subgroup membership.
class ByteReader {
 public:
  ByteReader(const GroupParams& params, std::span<const uint8_t> data)
      : params_(&params), data_(data) {}

  uint32_t U32();
  Bytes Field();
  std::string String();
  GroupElement Element();
  Scalar ScalarField();
  bool AtEnd() const { return offset_ == data_.size(); }
  void ExpectEnd() const;

 private:
  std::span<const uint8_t> Take(size_t n);

  const GroupParams* params_;
  std::span<const uint8_t> data_;
  size_t offset_ = 0;
};

Bytes EncodeFixed(const mpz_class& v, size_t width);
mpz_class DecodeInteger(std::span<const uint8_t> data);

}  // namespace brandt
