#pragma once

#include <vector>

#include "torfac/lattice.hpp"

namespace torfac::detail {

// Column-style Hermite reduction of the k x n matrix whose rows are the
// given vectors: V = [L | 0] * W with W unimodular and L lower triangular
// with positive diagonal. Requires the rows to be independent.
struct ColumnHermite {
  std::vector<IntVec> lower;   // k x k
  std::vector<IntVec> basis;   // n x n, rows of W
};

ColumnHermite column_hermite(const std::vector<IntVec>& rows, std::size_t ambient);

// Rank and reduced row echelon form over Q.
struct Echelon {
  std::vector<RatVec> rows;           // nonzero rows only
  std::vector<std::size_t> pivots;    // pivot column of each row
};

Echelon rref(std::vector<RatVec> m);

}  // namespace torfac::detail
