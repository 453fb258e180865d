#include "brandt/outcome_kernels.hpp"

#include <vector>

namespace brandt {
namespace {

Ciphertext Identity(const GroupParams& gp) { return Ciphertext{gp.One(), gp.One()}; }

}  // namespace

Ciphertext OutcomeBase(const GroupParams& gp, const Grid<Ciphertext>& bids, int i,
                       int j) {
  const int n = bids.rows();
  const int k = bids.cols();
  Ciphertext acc = Identity(gp);
  for (int h = 0; h < n; ++h) {
    for (int d = j + 1; d < k; ++d) acc = Multiply(gp, acc, bids.at(h, d));
  }
  for (int d = 0; d < j; ++d) acc = Multiply(gp, acc, bids.at(i, d));
  for (int h = 0; h < i; ++h) acc = Multiply(gp, acc, bids.at(h, j));
  return acc;
}

bool IsStructurallyEmpty(int i, int j, int k) { return k == 1 && i == 0 && j == 0; }

Grid<Ciphertext> OutcomeBasesReference(const GroupParams& gp,
                                       const Grid<Ciphertext>& bids) {
  Grid<Ciphertext> out(bids.rows(), bids.cols());
  for (int i = 0; i < bids.rows(); ++i) {
    for (int j = 0; j < bids.cols(); ++j) out.at(i, j) = OutcomeBase(gp, bids, i, j);
  }
  return out;
}

Grid<Ciphertext> OutcomeBases(const GroupParams& gp, const Grid<Ciphertext>& bids) {
  const int n = bids.rows();
  const int k = bids.cols();
  const Ciphertext one = Identity(gp);

  // column_products[d] = prod_h c_{hd}
  std::vector<Ciphertext> column_products(k, one);
#pragma omp parallel for schedule(static)
  for (int d = 0; d < k; ++d) {
    Ciphertext acc = one;
    for (int h = 0; h < n; ++h) acc = Multiply(gp, acc, bids.at(h, d));
    column_products[d] = acc;
  }
  // higher[j] = prod_{d>j} column_products[d]
  std::vector<Ciphertext> higher(k, one);
  for (int j = k - 2; j >= 0; --j) {
    higher[j] = Multiply(gp, higher[j + 1], column_products[j + 1]);
  }
  // lower_same_bidder(i, j) = prod_{d<j} c_{id}
  Grid<Ciphertext> lower(n, k, one);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    for (int j = 1; j < k; ++j) lower.at(i, j) = Multiply(gp, lower.at(i, j - 1), bids.at(i, j - 1));
  }
  // earlier_bidders(i, j) = prod_{h<i} c_{hj}
  Grid<Ciphertext> earlier(n, k, one);
#pragma omp parallel for schedule(static)
  for (int j = 0; j < k; ++j) {
    for (int i = 1; i < n; ++i) earlier.at(i, j) = Multiply(gp, earlier.at(i - 1, j), bids.at(i - 1, j));
  }

  Grid<Ciphertext> out(n, k);
#pragma omp parallel for collapse(2) schedule(static)
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j) {
      out.at(i, j) = Multiply(gp, Multiply(gp, higher[j], lower.at(i, j)), earlier.at(i, j));
    }
  }
  return out;
}

Grid<Ciphertext> RaiseCellsReference(const GroupParams& gp, const Grid<Ciphertext>& bases,
                                     const Grid<Scalar>& exponents) {
  Grid<Ciphertext> out(bases.rows(), bases.cols());
  for (int i = 0; i < bases.rows(); ++i) {
    for (int j = 0; j < bases.cols(); ++j) {
      const Scalar& m = exponents.at(i, j);
      out.at(i, j) = Ciphertext{gp.Exp(bases.at(i, j).alpha, m), gp.Exp(bases.at(i, j).beta, m)};
    }
  }
  return out;
}

Grid<Ciphertext> RaiseCells(const GroupParams& gp, const Grid<Ciphertext>& bases,
                            const Grid<Scalar>& exponents) {
  Grid<Ciphertext> out(bases.rows(), bases.cols());
  const long cells = static_cast<long>(bases.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (long c = 0; c < cells; ++c) {
    const Ciphertext& base = bases.data()[c];
    const Scalar& m = exponents.data()[c];
    out.data()[c] = Ciphertext{gp.Exp(base.alpha, m), gp.Exp(base.beta, m)};
  }
  return out;
}

Grid<Ciphertext> MultiplyGrids(const GroupParams& gp,
                               std::span<const Grid<Ciphertext>> grids) {
  if (grids.empty()) return {};
  Grid<Ciphertext> out(grids[0].rows(), grids[0].cols(), Identity(gp));
  const long cells = static_cast<long>(out.size());
#pragma omp parallel for schedule(static)
  for (long c = 0; c < cells; ++c) {
    Ciphertext acc = Identity(gp);
    for (const auto& g : grids) acc = Multiply(gp, acc, g.data()[c]);
    out.data()[c] = acc;
  }
  return out;
}

Grid<GroupElement> MultiplyGrids(const GroupParams& gp,
                                 std::span<const Grid<GroupElement>> grids) {
  if (grids.empty()) return {};
  Grid<GroupElement> out(grids[0].rows(), grids[0].cols(), gp.One());
  const long cells = static_cast<long>(out.size());
#pragma omp parallel for schedule(static)
  for (long c = 0; c < cells; ++c) {
    GroupElement acc = gp.One();
    for (const auto& g : grids) acc = gp.Mul(acc, g.data()[c]);
    out.data()[c] = acc;
  }
  return out;
}

Grid<GroupElement> RaiseAll(const GroupParams& gp, const Grid<GroupElement>& xs,
                            const Scalar& x) {
  Grid<GroupElement> out(xs.rows(), xs.cols());
  const long cells = static_cast<long>(xs.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (long c = 0; c < cells; ++c) out.data()[c] = gp.Exp(xs.data()[c], x);
  return out;
}

Grid<GroupElement> DivideCells(const GroupParams& gp, const Grid<GroupElement>& numerators,
                               const Grid<GroupElement>& denominators) {
  Grid<GroupElement> out(numerators.rows(), numerators.cols());
  const long cells = static_cast<long>(numerators.size());
#pragma omp parallel for schedule(static)
  for (long c = 0; c < cells; ++c) {
    out.data()[c] = gp.Div(numerators.data()[c], denominators.data()[c]);
  }
  return out;
}

Grid<GroupElement> Alphas(const Grid<Ciphertext>& cts) {
  Grid<GroupElement> out(cts.rows(), cts.cols());
  for (size_t c = 0; c < cts.size(); ++c) out.data()[c] = cts.data()[c].alpha;
  return out;
}

Grid<GroupElement> Betas(const Grid<Ciphertext>& cts) {
  Grid<GroupElement> out(cts.rows(), cts.cols());
  for (size_t c = 0; c < cts.size(); ++c) out.data()[c] = cts.data()[c].beta;
  return out;
}

}  // namespace brandt
