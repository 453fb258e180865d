#include "brandt/recovery.hpp"

#include <bit>
#include <map>
#include <string>

#include "brandt/errors.hpp"

namespace brandt {
namespace {

[[noreturn]] void Inconsistent(const std::string& what) {
  throw LabError(ErrorCode::kInconsistentExponents, what);
}

void CheckExponents(const ExponentVector& l) {
  if (l.n < 1 || l.k < 1 || l.l.size() != static_cast<size_t>(l.n) * l.k) {
    Inconsistent("exponent vector has wrong shape");
  }
  for (int64_t v : l.l) {
    if (v < 0 || v > l.n) Inconsistent("exponent outside [0, n]");
  }
}

void StoreChecked(RecoveredBids& out, int r, int t, int64_t value) {
  if (value != 0 && value != 1) {
    Inconsistent("x(" + std::to_string(r + 1) + "," + std::to_string(t + 1) +
                 ") = " + std::to_string(value));
  }
  out.b[static_cast<size_t>(r) * out.k + t] = static_cast<uint8_t>(value);
}

void CheckSolution(const ExponentVector& l, const RecoveredBids& x) {
  for (int i = 0; i < x.n; ++i) {
    int ones = 0;
    for (int j = 0; j < x.k; ++j) ones += x.b[static_cast<size_t>(i) * x.k + j];
    if (ones != 1) Inconsistent("bidder " + std::to_string(i + 1) + " block sums to " +
                                std::to_string(ones));
  }
  if (ApplyF(StructuredMatrix(l.n, l.k), x.b) != l) {
    Inconsistent("recovered bids do not reproduce the exponents");
  }
}

}  // namespace

StructuredMatrix::StructuredMatrix(int n, int k) : n_(n), k_(k) {
  if (n < 1 || k < 1) {
    throw LabError(ErrorCode::kInvalidConfig, "matrix needs n, k >= 1");
  }
}

int StructuredMatrix::At(int row, int col) const {
  const int i = row / k_, t = row % k_;
  const int h = col / k_, d = col % k_;
  int v = d > t ? 1 : 0;            // U in every block
  if (h == i && d < t) v += 1;      // L on the diagonal
  if (h < i && d == t) v += 1;      // I below the diagonal
  return v;
}

std::vector<int64_t> StructuredMatrix::Dense() const {
  const int s = size();
  std::vector<int64_t> out(static_cast<size_t>(s) * s);
  for (int r = 0; r < s; ++r) {
    for (int c = 0; c < s; ++c) out[static_cast<size_t>(r) * s + c] = At(r, c);
  }
  return out;
}

std::vector<int> RecoveredBids::Prices() const {
  std::vector<int> out(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j) {
      if (b[static_cast<size_t>(i) * k + j] == 1) out[i] = j + 1;
    }
  }
  return out;
}

std::vector<uint8_t> BidVectorFromPrices(int n, int k, std::span<const int> prices) {
  if (static_cast<int>(prices.size()) != n) {
    throw LabError(ErrorCode::kInvalidBidVector, "need one price per bidder");
  }
  std::vector<uint8_t> b(static_cast<size_t>(n) * k, 0);
  for (int i = 0; i < n; ++i) {
    if (prices[i] < 1 || prices[i] > k) {
      throw LabError(ErrorCode::kInvalidBidVector,
                     "price " + std::to_string(prices[i]) + " outside [1, k]");
    }
    b[static_cast<size_t>(i) * k + prices[i] - 1] = 1;
  }
  return b;
}

void ValidateBidVector(int n, int k, std::span<const uint8_t> b) {
  if (b.size() != static_cast<size_t>(n) * k) {
    throw LabError(ErrorCode::kInvalidBidVector, "bid vector has wrong length");
  }
  for (int i = 0; i < n; ++i) {
    int ones = 0;
    for (int j = 0; j < k; ++j) {
      const uint8_t v = b[static_cast<size_t>(i) * k + j];
      if (v > 1) throw LabError(ErrorCode::kInvalidBidVector, "entry outside {0, 1}");
      ones += v;
    }
    if (ones != 1) {
      throw LabError(ErrorCode::kInvalidBidVector,
                     "bidder " + std::to_string(i + 1) + " does not bid exactly once");
    }
  }
}

ExponentVector ApplyFDense(const StructuredMatrix& m, std::span<const uint8_t> b) {
  ValidateBidVector(m.n(), m.k(), b);
  const int s = m.size();
  const std::vector<int64_t> dense = m.Dense();
  ExponentVector out{m.n(), m.k(), std::vector<int64_t>(s, 0)};
  for (int r = 0; r < s; ++r) {
    int64_t acc = 0;
    for (int c = 0; c < s; ++c) acc += dense[static_cast<size_t>(r) * s + c] * b[c];
    out.l[r] = acc;
  }
  return out;
}

ExponentVector ApplyF(const StructuredMatrix& m, std::span<const uint8_t> b) {
  const int n = m.n(), k = m.k();
  ValidateBidVector(n, k, b);
  // higher[t] = sum_{d>t} sum_h b_hd ; column[t] = sum_h b_ht
  std::vector<int64_t> column(k, 0), higher(k, 0);
  for (int h = 0; h < n; ++h) {
    for (int d = 0; d < k; ++d) column[d] += b[static_cast<size_t>(h) * k + d];
  }
  for (int t = k - 2; t >= 0; --t) higher[t] = higher[t + 1] + column[t + 1];

  // earlier[i*k + t] = sum_{h<i} b_ht
  std::vector<int64_t> earlier(static_cast<size_t>(n) * k, 0);
  for (int i = 1; i < n; ++i) {
    for (int t = 0; t < k; ++t) {
      earlier[static_cast<size_t>(i) * k + t] =
          earlier[static_cast<size_t>(i - 1) * k + t] + b[static_cast<size_t>(i - 1) * k + t];
    }
  }

  ExponentVector out{n, k, std::vector<int64_t>(static_cast<size_t>(n) * k, 0)};
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    int64_t own_lower = 0;
    for (int t = 0; t < k; ++t) {
      const size_t idx = static_cast<size_t>(i) * k + t;
      out.l[idx] = higher[t] + own_lower + earlier[idx];
      own_lower += b[idx];
    }
  }
  return out;
}

RecoveredBids RecoverBids(const ExponentVector& l, OpCounter* counter) {
  CheckExponents(l);
  const int n = l.n, k = l.k;
  RecoveredBids x{n, k, std::vector<uint8_t>(static_cast<size_t>(n) * k, 0)};
  uint64_t ops = 0;

  // With a single bidder there are no other bids above or beside a cell.
  const bool others = n > 1;
  int64_t higher_total = 0;                  // sum_{j>t} sum_i x_ij
  std::vector<int64_t> own_higher(n, 0);     // sum_{j>t} x_rj
  for (int t = k - 1; t >= 0; --t) {
    int64_t column_prefix = 0;               // sum_{i<r} x_it
    int64_t last = 0;
    for (int r = 0; r < n; ++r) {
      int64_t value = 1 - l.At(r, t);
      ++ops;
      if (r > 0) {
        value += column_prefix;
        ++ops;
      }
      if (others && t < k - 1) {
        value += higher_total - own_higher[r];
        ops += 2;
      }
      StoreChecked(x, r, t, value);
      if (r < n - 1) {
        column_prefix += value;
        ++ops;
      }
      if (others && t > 0) {
        own_higher[r] += value;
        ++ops;
      }
      last = value;
    }
    if (others && t > 0) {
      higher_total += column_prefix + last;
      ops += 2;
    }
  }
  if (counter) counter->additions += ops;
  CheckSolution(l, x);
  return x;
}

RecoveredBids RecoverBidsDirect(const ExponentVector& l, OpCounter* counter) {
  CheckExponents(l);
  const int n = l.n, k = l.k;
  RecoveredBids x{n, k, std::vector<uint8_t>(static_cast<size_t>(n) * k, 0)};
  auto get = [&](int i, int j) -> int64_t { return x.b[static_cast<size_t>(i) * k + j]; };
  uint64_t ops = 0;
  for (int t = k - 1; t >= 0; --t) {
    for (int r = 0; r < n; ++r) {
      int64_t value = 1 - l.At(r, t);
      ++ops;
      for (int i = 0; i < r; ++i) {
        value += get(i, t);
        ++ops;
      }
      for (int j = t + 1; j < k; ++j) {
        for (int i = 0; i < n; ++i) {
          if (i == r) continue;
          value += get(i, j);
          ++ops;
        }
      }
      StoreChecked(x, r, t, value);
    }
  }
  if (counter) counter->additions += ops;
  CheckSolution(l, x);
  return x;
}

uint64_t CountOperations(int n, int k) {
  // The count depends only on the shape; everyone bidding the top price
  // is a valid worst-case input.
  std::vector<int> prices(n, k);
  ExponentVector l = ApplyF(StructuredMatrix(n, k), BidVectorFromPrices(n, k, prices));
  OpCounter counter;
  RecoverBids(l, &counter);
  return counter.additions;
}

int ExponentFromPower(const GroupParams& gp, const GroupElement& v,
                      const GroupElement& base, int n) {
  GroupElement power = gp.One();
  for (int l = 0; l <= n; ++l) {
    if (power == v) return l;
    power = gp.Mul(power, base);
  }
  throw LabError(ErrorCode::kNotAPower,
                 v.value.get_str() + " is not base^l for any 0 <= l <= " + std::to_string(n));
}

int ExponentFromSubsetProduct(const GroupParams& gp, const GroupElement& v,
                              std::span<const GroupElement> per_bidder_y) {
  const size_t n = per_bidder_y.size();
  if (n > 24) {
    throw LabError(ErrorCode::kInvalidConfig, "subset table limited to 24 bidders");
  }
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    GroupElement acc = gp.One();
    for (size_t h = 0; h < n; ++h) {
      if (mask & (1u << h)) acc = gp.Mul(acc, per_bidder_y[h]);
    }
    if (acc == v) return std::popcount(mask);
  }
  throw LabError(ErrorCode::kNotAPower, "value is not a product of distinct Y_h");
}

nlohmann::ordered_json ExponentVectorToJson(const ExponentVector& l) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (int i = 0; i < l.n; ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (int j = 0; j < l.k; ++j) row.push_back(l.At(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

ExponentVector ExponentVectorFromJson(const nlohmann::json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty()) {
    throw LabError(ErrorCode::kMalformedPayload, "exponent matrix must be a non-empty array of rows");
  }
  ExponentVector out;
  out.n = static_cast<int>(j.size());
  out.k = static_cast<int>(j[0].size());
  for (const auto& row : j) {
    if (!row.is_array() || static_cast<int>(row.size()) != out.k) {
      throw LabError(ErrorCode::kMalformedPayload, "ragged exponent matrix");
    }
    for (const auto& v : row) {
      if (!v.is_number_integer()) {
        throw LabError(ErrorCode::kMalformedPayload, "exponent entries must be integers");
      }
      out.l.push_back(v.get<int64_t>());
    }
  }
  return out;
}

}  // namespace brandt
