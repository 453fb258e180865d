#pragma once

#include <span>

#include "brandt/elgamal.hpp"
#include "brandt/grid.hpp"

namespace brandt {

// Outcome-computation kernels over the n x k cell grid. Each parallel kernel
// has a serial *Reference twin that evaluates the defining formula directly;
// tests require both to agree bit-for-bit.

// Encrypted base of cell (i, j):
//   (prod_h prod_{d>j} c_{hd}) * (prod_{d<j} c_{id}) * (prod_{h<i} c_{hj})
// evaluated literally. An empty product is the identity ciphertext (1, 1).
Ciphertext OutcomeBase(const GroupParams& params, const Grid<Ciphertext>& bids, int i,
                       int j);

Grid<Ciphertext> OutcomeBasesReference(const GroupParams& params,
                                       const Grid<Ciphertext>& bids);
// Same values from prefix/suffix products, cells filled in parallel.
Grid<Ciphertext> OutcomeBases(const GroupParams& params, const Grid<Ciphertext>& bids);

// True when the base of (i, j) has no factors at all (k = 1, i = 0).
bool IsStructurallyEmpty(int i, int j, int k);

// (alpha^m, beta^m) per cell: gamma and delta of one outcome share.
Grid<Ciphertext> RaiseCellsReference(const GroupParams& params,
                                     const Grid<Ciphertext>& bases,
                                     const Grid<Scalar>& exponents);
Grid<Ciphertext> RaiseCells(const GroupParams& params, const Grid<Ciphertext>& bases,
                            const Grid<Scalar>& exponents);

// Componentwise product of several share grids.
Grid<Ciphertext> MultiplyGrids(const GroupParams& params,
                               std::span<const Grid<Ciphertext>> grids);
Grid<GroupElement> MultiplyGrids(const GroupParams& params,
                                 std::span<const Grid<GroupElement>> grids);

// phi cells: every element raised to the same key share x.
Grid<GroupElement> RaiseAll(const GroupParams& params, const Grid<GroupElement>& xs,
                            const Scalar& x);

// v_ij = numerators_ij / denominators_ij.
Grid<GroupElement> DivideCells(const GroupParams& params,
                               const Grid<GroupElement>& numerators,
                               const Grid<GroupElement>& denominators);

Grid<GroupElement> Alphas(const Grid<Ciphertext>& cts);
Grid<GroupElement> Betas(const Grid<Ciphertext>& cts);

}  // namespace brandt
