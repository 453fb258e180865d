#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace brandt {

// Exponent in Z_q. Always reduced into [0, q) by GroupParams.
struct Scalar {
  mpz_class value;

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.value == b.value;
  }
};

// Element of the order-q subgroup of Z_p^*.
struct GroupElement {
  mpz_class value;

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.value == b.value;
  }
  friend bool operator<(const GroupElement& a, const GroupElement& b) {
    return a.value < b.value;
  }
};

// Seedable deterministic generator. Independent streams are derived from
// (seed, stream) so every party gets a reproducible sequence.
class Rng {
 public:
  explicit Rng(uint64_t seed, uint64_t stream = 0);

  uint64_t Next() { return engine_(); }
  // Uniform in [0, bound), bound > 0, via rejection sampling.
  mpz_class Below(const mpz_class& bound);
  std::vector<uint8_t> Bytes(size_t count);

 private:
  std::mt19937_64 engine_;
};

bool IsProbablePrime(const mpz_class& n);

class GroupParams {
 public:
  // Checks primality of p and q, q | p-1, g != 1 and g^q = 1 (mod p).
  // Throws LabError{NotPrime, OrderMismatch, BadGenerator}.
  static GroupParams Validate(const mpz_class& p, const mpz_class& q,
                              const mpz_class& g);
  // p = 23, q = 11, g = 2: small enough for exhaustive checks.
  static GroupParams Small();
  // 257-bit safe prime p = 2q + 1 with g = 4.
  static GroupParams Large();

  const mpz_class& p() const { return p_; }
  const mpz_class& q() const { return q_; }
  GroupElement g() const { return GroupElement{g_}; }
  GroupElement One() const { return GroupElement{1}; }

  bool IsMember(const mpz_class& v) const;
  bool IsMember(const GroupElement& x) const { return IsMember(x.value); }
  // Throws LabError{NotAMember} when v is outside the subgroup.
  GroupElement Element(const mpz_class& v) const;
  Scalar ScalarOf(const mpz_class& v) const;
  Scalar ScalarOf(long v) const { return ScalarOf(mpz_class(v)); }

  GroupElement Mul(const GroupElement& a, const GroupElement& b) const;
  GroupElement Div(const GroupElement& a, const GroupElement& b) const;
  GroupElement Inv(const GroupElement& x) const;
  GroupElement Exp(const GroupElement& x, const Scalar& e) const;
  GroupElement ExpG(const Scalar& e) const { return Exp(g(), e); }
  GroupElement Product(std::span<const GroupElement> xs) const;

  Scalar Add(const Scalar& a, const Scalar& b) const;
  Scalar Sub(const Scalar& a, const Scalar& b) const;
  Scalar Mul(const Scalar& a, const Scalar& b) const;
  Scalar Neg(const Scalar& a) const;
  Scalar Inv(const Scalar& a) const;

  Scalar RandomScalar(Rng& rng) const;
  Scalar RandomNonzeroScalar(Rng& rng) const;

  // Fixed byte widths of the canonical encoding.
  size_t ElementWidth() const { return element_width_; }
  size_t ScalarWidth() const { return scalar_width_; }

  std::string Describe() const;

  friend bool operator==(const GroupParams& a, const GroupParams& b) {
    return a.p_ == b.p_ && a.q_ == b.q_ && a.g_ == b.g_;
  }

 private:
  GroupParams(mpz_class p, mpz_class q, mpz_class g);

  mpz_class p_;
  mpz_class q_;
  mpz_class g_;
  size_t element_width_;
  size_t scalar_width_;
};

}  // namespace brandt
