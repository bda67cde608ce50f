#include "internal/normal_form.hpp"

#include <utility>

#include "torfac/errors.hpp"

namespace torfac::detail {

namespace {

// Applies a 2x2 unimodular column operation on columns p, q of `v` together
// with the inverse row operation on `w`, keeping v * w invariant.
void column_gcd_step(std::vector<IntVec>& v, std::vector<IntVec>& w, std::size_t row, std::size_t p,
                     std::size_t q) {
  const Int x = v[row][p];
  const Int y = v[row][q];
  Int g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  const Int xg = x / g;
  const Int yg = y / g;
  for (auto& r : v) {
    const Int a = r[p];
    const Int b = r[q];
    r[p] = s * a + t * b;
    r[q] = -yg * a + xg * b;
  }
  const std::size_t n = w.size();
  for (std::size_t j = 0; j < n; ++j) {
    const Int a = w[p][j];
    const Int b = w[q][j];
    w[p][j] = xg * a + yg * b;
    w[q][j] = -t * a + s * b;
  }
}

}  // namespace

ColumnHermite column_hermite(const std::vector<IntVec>& rows, std::size_t ambient) {
  const std::size_t k = rows.size();
  std::vector<IntVec> v = rows;
  std::vector<IntVec> w(ambient, IntVec(ambient, 0));
  for (std::size_t i = 0; i < ambient; ++i) w[i][i] = 1;

  for (std::size_t i = 0; i < k; ++i) {
    // bring a nonzero entry to column i
    std::size_t piv = ambient;
    for (std::size_t j = i; j < ambient; ++j) {
      if (v[i][j] != 0) {
        piv = j;
        break;
      }
    }
    if (piv == ambient) fail(ErrorKind::DependentInput, "vectors are linearly dependent");
    if (piv != i) {
      for (auto& r : v) std::swap(r[i], r[piv]);
      std::swap(w[i], w[piv]);
    }
    for (std::size_t j = i + 1; j < ambient; ++j) {
      if (v[i][j] != 0) column_gcd_step(v, w, i, i, j);
    }
    if (v[i][i] < 0) {
      for (auto& r : v) r[i] = -r[i];
      for (auto& x : w[i]) x = -x;
    }
  }

  ColumnHermite out;
  out.lower.assign(k, IntVec(k, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) out.lower[i][j] = v[i][j];
  out.basis = std::move(w);
  return out;
}

Echelon rref(std::vector<RatVec> m) {
  Echelon e;
  if (m.empty()) return e;
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[r], m[piv]);
    const Rat inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rat f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    e.pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  e.rows = std::move(m);
  return e;
}

}  // namespace torfac::detail
