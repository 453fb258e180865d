#include "brandt/group.hpp"

#include <array>

#include "brandt/errors.hpp"

namespace brandt {
namespace {

constexpr unsigned long kTrialDivisionLimit = 1ul << 20;
constexpr int kMillerRabinRounds = 48;

constexpr const char* kLargeP =
    "1a3679f4b99ceeb8ca0ee3dc85853e8b6294866582001027ec9892bc2df6ba45b";
constexpr const char* kLargeQ =
    "d1b3cfa5cce775c650771ee42c29f45b14a4332c1000813f64c495e16fb5d22d";

size_t ByteWidth(const mpz_class& v) {
  return (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8;
}

}  // namespace

Rng::Rng(uint64_t seed, uint64_t stream) {
  std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                    static_cast<uint32_t>(stream),
                    static_cast<uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

mpz_class Rng::Below(const mpz_class& bound) {
  const size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  const size_t words = (bits + 63) / 64;
  mpz_class mask = (mpz_class(1) << bits) - 1;
  for (;;) {
    mpz_class candidate = 0;
    for (size_t i = 0; i < words; ++i) {
      candidate <<= 64;
      static_assert(sizeof(unsigned long) == 8);
      candidate += static_cast<unsigned long>(engine_());
    }
    candidate &= mask;
    if (candidate < bound) return candidate;
  }
}

std::vector<uint8_t> Rng::Bytes(size_t count) {
  std::vector<uint8_t> out(count);
  for (size_t i = 0; i < count; i += 8) {
    uint64_t w = engine_();
    for (size_t b = 0; b < 8 && i + b < count; ++b) {
      out[i + b] = static_cast<uint8_t>(w >> (8 * b));
    }
  }
  return out;
}

bool IsProbablePrime(const mpz_class& n) {
  if (n < 2) return false;
  if (n < kTrialDivisionLimit) {
    const unsigned long v = n.get_ui();
    if (v < 4) return true;
    if (v % 2 == 0) return false;
    for (unsigned long d = 3; d * d <= v; d += 2) {
      if (v % d == 0) return false;
    }
    return true;
  }
  return mpz_probab_prime_p(n.get_mpz_t(), kMillerRabinRounds) != 0;
}

GroupParams::GroupParams(mpz_class p, mpz_class q, mpz_class g)
    : p_(std::move(p)),
      q_(std::move(q)),
      g_(std::move(g)),
      element_width_(ByteWidth(p_)),
      scalar_width_(ByteWidth(q_)) {}

GroupParams GroupParams::Validate(const mpz_class& p, const mpz_class& q,
                                  const mpz_class& g) {
  if (!IsProbablePrime(p)) {
    throw LabError(ErrorCode::kNotPrime, "p = " + p.get_str() + " is not prime");
  }
  if (!IsProbablePrime(q)) {
    throw LabError(ErrorCode::kNotPrime, "q = " + q.get_str() + " is not prime");
  }
  if (mpz_divisible_p(mpz_class(p - 1).get_mpz_t(), q.get_mpz_t()) == 0) {
    throw LabError(ErrorCode::kOrderMismatch, "q does not divide p - 1");
  }
  mpz_class reduced = g % p;
  if (reduced < 0) reduced += p;
  mpz_class check;
  mpz_powm(check.get_mpz_t(), reduced.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  if (reduced == 1 || reduced == 0 || check != 1) {
    throw LabError(ErrorCode::kBadGenerator,
                   "g = " + g.get_str() + " does not generate the order-q subgroup");
  }
  return GroupParams(p, q, reduced);
}

GroupParams GroupParams::Small() { return Validate(23, 11, 2); }

GroupParams GroupParams::Large() {
  return Validate(mpz_class(kLargeP, 16), mpz_class(kLargeQ, 16), 4);
}

bool GroupParams::IsMember(const mpz_class& v) const {
  if (v <= 0 || v >= p_) return false;
  mpz_class check;
  mpz_powm(check.get_mpz_t(), v.get_mpz_t(), q_.get_mpz_t(), p_.get_mpz_t());
  return check == 1;
}

GroupElement GroupParams::Element(const mpz_class& v) const {
  if (!IsMember(v)) {
    throw LabError(ErrorCode::kNotAMember,
                   v.get_str() + " is not in the order-q subgroup");
  }
  return GroupElement{v};
}

Scalar GroupParams::ScalarOf(const mpz_class& v) const {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), v.get_mpz_t(), q_.get_mpz_t());
  return Scalar{r};
}

GroupElement GroupParams::Mul(const GroupElement& a, const GroupElement& b) const {
  mpz_class r = a.value * b.value;
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), p_.get_mpz_t());
  return GroupElement{r};
}

GroupElement GroupParams::Div(const GroupElement& a, const GroupElement& b) const {
  return Mul(a, Inv(b));
}

GroupElement GroupParams::Inv(const GroupElement& x) const {
  mpz_class r;
  mpz_invert(r.get_mpz_t(), x.value.get_mpz_t(), p_.get_mpz_t());
  return GroupElement{r};
}

GroupElement GroupParams::Exp(const GroupElement& x, const Scalar& e) const {
  mpz_class r;
  mpz_powm(r.get_mpz_t(), x.value.get_mpz_t(), e.value.get_mpz_t(), p_.get_mpz_t());
  return GroupElement{r};
}

GroupElement GroupParams::Product(std::span<const GroupElement> xs) const {
  GroupElement acc = One();
  for (const auto& x : xs) acc = Mul(acc, x);
  return acc;
}

Scalar GroupParams::Add(const Scalar& a, const Scalar& b) const {
  return ScalarOf(a.value + b.value);
}

Scalar GroupParams::Sub(const Scalar& a, const Scalar& b) const {
  return ScalarOf(a.value - b.value);
}

Scalar GroupParams::Mul(const Scalar& a, const Scalar& b) const {
  return ScalarOf(a.value * b.value);
}

Scalar GroupParams::Neg(const Scalar& a) const { return ScalarOf(-a.value); }

Scalar GroupParams::Inv(const Scalar& a) const {
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), a.value.get_mpz_t(), q_.get_mpz_t()) == 0) {
    throw LabError(ErrorCode::kInvalidConfig, "scalar 0 has no inverse mod q");
  }
  return Scalar{r};
}

Scalar GroupParams::RandomScalar(Rng& rng) const { return Scalar{rng.Below(q_)}; }

Scalar GroupParams::RandomNonzeroScalar(Rng& rng) const {
  return Scalar{rng.Below(q_ - 1) + 1};
}

std::string GroupParams::Describe() const {
  return "p=" + p_.get_str() + " q=" + q_.get_str() + " g=" + g_.get_str();
}

}  // namespace brandt
