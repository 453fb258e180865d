#include "brandt/encoding.hpp"

#include <openssl/evp.h>
#include <openssl/hmac.h>
#include <openssl/sha.h>

#include "brandt/errors.hpp"

namespace brandt {

Digest Sha256(std::span<const uint8_t> data) {
  Digest out{};
  SHA256(data.data(), data.size(), out.data());
  return out;
}

Digest HmacSha256(std::span<const uint8_t> key, std::span<const uint8_t> data) {
  Digest out{};
  unsigned int len = 0;
  HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()), data.data(),
       data.size(), out.data(), &len);
  return out;
}

std::string ToHex(std::span<const uint8_t> data) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(data.size() * 2);
  for (uint8_t b : data) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

Bytes FromHex(std::string_view hex) {
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  if (hex.size() % 2 != 0) {
    throw LabError(ErrorCode::kMalformedPayload, "odd-length hex string");
  }
  Bytes out(hex.size() / 2);
  for (size_t i = 0; i < out.size(); ++i) {
    const int hi = nibble(hex[2 * i]);
    const int lo = nibble(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) {
      throw LabError(ErrorCode::kMalformedPayload, "invalid hex digit");
    }
    out[i] = static_cast<uint8_t>((hi << 4) | lo);
  }
  return out;
}

Bytes EncodeFixed(const mpz_class& v, size_t width) {
  Bytes out(width, 0);
  size_t count = 0;
  Bytes raw((mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8 + 1);
  mpz_export(raw.data(), &count, 1, 1, 1, 0, v.get_mpz_t());
  if (count > width) {
    throw LabError(ErrorCode::kMalformedPayload, "integer wider than its field");
  }
  std::copy(raw.begin(), raw.begin() + static_cast<long>(count),
            out.begin() + static_cast<long>(width - count));
  return out;
}

mpz_class DecodeInteger(std::span<const uint8_t> data) {
  mpz_class v;
  if (!data.empty()) mpz_import(v.get_mpz_t(), data.size(), 1, 1, 1, 0, data.data());
  return v;
}

ByteWriter& ByteWriter::U32(uint32_t v) {
  out_.push_back(static_cast<uint8_t>(v >> 24));
  out_.push_back(static_cast<uint8_t>(v >> 16));
  out_.push_back(static_cast<uint8_t>(v >> 8));
  out_.push_back(static_cast<uint8_t>(v));
  return *this;
}

ByteWriter& ByteWriter::Field(std::span<const uint8_t> data) {
  U32(static_cast<uint32_t>(data.size()));
  out_.insert(out_.end(), data.begin(), data.end());
  return *this;
}

ByteWriter& ByteWriter::String(std::string_view s) {
  return Field(std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(s.data()), s.size()));
}

ByteWriter& ByteWriter::Integer(const mpz_class& v, size_t width) {
  return Field(EncodeFixed(v, width));
}

ByteWriter& ByteWriter::Element(const GroupElement& x) {
  return Integer(x.value, params_->ElementWidth());
}

ByteWriter& ByteWriter::ScalarField(const Scalar& s) {
  return Integer(s.value, params_->ScalarWidth());
}

ByteWriter& ByteWriter::Append(std::span<const uint8_t> raw) {
  out_.insert(out_.end(), raw.begin(), raw.end());
  return *this;
}

std::span<const uint8_t> ByteReader::Take(size_t n) {
  if (data_.size() - offset_ < n) {
    throw LabError(ErrorCode::kMalformedPayload, "truncated payload");
  }
  auto out = data_.subspan(offset_, n);
  offset_ += n;
  return out;
}

uint32_t ByteReader::U32() {
  auto b = Take(4);
  return (static_cast<uint32_t>(b[0]) << 24) | (static_cast<uint32_t>(b[1]) << 16) |
         (static_cast<uint32_t>(b[2]) << 8) | static_cast<uint32_t>(b[3]);
}

Bytes ByteReader::Field() {
  const uint32_t len = U32();
  auto b = Take(len);
  return Bytes(b.begin(), b.end());
}

std::string ByteReader::String() {
  Bytes b = Field();
  return std::string(b.begin(), b.end());
}

GroupElement ByteReader::Element() {
  Bytes b = Field();
  if (b.size() != params_->ElementWidth()) {
    throw LabError(ErrorCode::kMalformedPayload, "element field has wrong width");
  }
  mpz_class v = DecodeInteger(b);
  if (!params_->IsMember(v)) {
    throw LabError(ErrorCode::kMalformedPayload, "decoded value is not a group element");
  }
  return GroupElement{v};
}

Scalar ByteReader::ScalarField() {
  Bytes b = Field();
  if (b.size() != params_->ScalarWidth()) {
    throw LabError(ErrorCode::kMalformedPayload, "scalar field has wrong width");
  }
  mpz_class v = DecodeInteger(b);
  if (v >= params_->q()) {
    throw LabError(ErrorCode::kMalformedPayload, "scalar not reduced mod q");
  }
  return Scalar{v};
}

void ByteReader::ExpectEnd() const {
  if (!AtEnd()) throw LabError(ErrorCode::kMalformedPayload, "trailing bytes");
}

}  // namespace brandt
