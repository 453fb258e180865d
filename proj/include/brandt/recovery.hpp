#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "brandt/group.hpp"
#include "json.hpp"

namespace brandt {

// The nk x nk 0/1 matrix mapping a stacked bid vector b (bidder-major,
// index i*k + j) to the per-cell counts of Y factors in the outcome bases.
// Blocks: U + L on the diagonal, U above it, U + I below it, where U is the
// strictly upper all-ones k x k matrix and L the strictly lower one.
class StructuredMatrix {
 public:
  StructuredMatrix(int n, int k);

  int n() const { return n_; }
  int k() const { return k_; }
  int size() const { return n_ * k_; }

  int At(int row, int col) const;
  // Row-major size() x size() materialization, for tests and the dense path.
  std::vector<int64_t> Dense() const;

 private:
  int n_;
  int k_;
};

// l_ij for every cell, 0 <= l_ij <= n. Row-major n x k.
struct ExponentVector {
  int n = 0;
  int k = 0;
  std::vector<int64_t> l;

  int64_t At(int i, int j) const { return l[static_cast<size_t>(i) * k + j]; }
  friend bool operator==(const ExponentVector&, const ExponentVector&) = default;
};

// Stacked 0/1 bid vector b (each k-block has exactly one 1).
struct RecoveredBids {
  int n = 0;
  int k = 0;
  std::vector<uint8_t> b;

  // 1-based price per bidder.
  std::vector<int> Prices() const;
  friend bool operator==(const RecoveredBids&, const RecoveredBids&) = default;
};

struct OpCounter {
  uint64_t additions = 0;
};

// Throws LabError{InvalidBidVector} for out-of-range prices.
std::vector<uint8_t> BidVectorFromPrices(int n, int k, std::span<const int> prices);
// Throws LabError{InvalidBidVector}.
void ValidateBidVector(int n, int k, std::span<const uint8_t> b);

// Dense serial product M * b: the reference path.
ExponentVector ApplyFDense(const StructuredMatrix& m, std::span<const uint8_t> b);
// O(nk) evaluation from the block structure, rows filled in parallel.
ExponentVector ApplyF(const StructuredMatrix& m, std::span<const uint8_t> b);

// Back-substitution in the order x_{1,k}, x_{2,k}, ..., x_{n,k}, x_{1,k-1}, ...
// using running column/bidder sums. Throws LabError{InconsistentExponents}
// if any intermediate value leaves {0, 1}, a block does not sum to one, or
// the result does not map back onto l.
RecoveredBids RecoverBids(const ExponentVector& l, OpCounter* counter = nullptr);

// The same recurrences with every sum re-evaluated from scratch. Serves as
// the independent reference and as the instrumented cost model of the
// textbook evaluation (about n^2 k^2 / 2 additions).
RecoveredBids RecoverBidsDirect(const ExponentVector& l, OpCounter* counter = nullptr);

// Additions performed by RecoverBids on an n x k input.
uint64_t CountOperations(int n, int k);

// l with v = base^l, searched over base^0 .. base^n.
// Throws LabError{NotAPower}.
int ExponentFromPower(const GroupParams& params, const GroupElement& v,
                      const GroupElement& base, int n);

// Per-bidder Y_h variant: v = prod_{h in S} Y_h for some subset S; returns |S|.
// Throws LabError{NotAPower}.
int ExponentFromSubsetProduct(const GroupParams& params, const GroupElement& v,
                              std::span<const GroupElement> per_bidder_y);

nlohmann::ordered_json ExponentVectorToJson(const ExponentVector& l);
ExponentVector ExponentVectorFromJson(const nlohmann::json& j);

}  // namespace brandt
