#pragma once

// Brute-force reference computations used to cross-check the library.
// Nothing here calls into torfac's own linear algebra.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

inline Int det(std::vector<IntVec> m) {
  // Bareiss fraction-free elimination.
  const std::size_t n = m.size();
  if (n == 0) return 1;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

inline void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// gcd of the k x k minors of the k x n matrix with rows `v`.
inline Int gcd_of_maximal_minors(const std::vector<IntVec>& v) {
  const std::size_t k = v.size();
  const std::size_t n = k ? v[0].size() : 0;
  Int g = 0;
  for_each_subset(n, k, [&](const std::vector<std::size_t>& cols) {
    std::vector<IntVec> m(k, IntVec(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) m[i][j] = v[i][cols[j]];
    g = gcd(g, det(m));
  });
  return abs(g);
}

// Coefficients a with sum a_i v_i = x, via Cramer's rule on a nonsingular
// k x k row selection, then checked on all coordinates.
inline std::optional<RatVec> solve(const std::vector<IntVec>& v, const RatVec& x) {
  const std::size_t k = v.size();
  const std::size_t n = x.size();
  std::optional<RatVec> result;
  bool done = false;
  for_each_subset(n, k, [&](const std::vector<std::size_t>& rows) {
    if (done) return;
    std::vector<IntVec> m(k, IntVec(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) m[i][j] = v[j][rows[i]];
    const Int d = det(m);
    if (d == 0) return;
    done = true;
    // scale x to integers for Cramer
    Int l = 1;
    for (const auto& q : x) l = lcm(l, Int(q.get_den()));
    RatVec a(k);
    for (std::size_t j = 0; j < k; ++j) {
      auto mj = m;
      for (std::size_t i = 0; i < k; ++i) mj[i][j] = Int(x[rows[i]] * l);
      a[j] = Rat(det(mj), d * l);
      a[j].canonicalize();
    }
    for (std::size_t c = 0; c < n; ++c) {
      Rat s = 0;
      for (std::size_t j = 0; j < k; ++j) s += a[j] * v[j][c];
      if (s != x[c]) return;
    }
    result = a;
  });
  return result;
}

// Lattice points sum a_i v_i with a_i in (0,1) (open) or [0,1) (half-open),
// found by scanning every integer point of the bounding box. Coefficients
// come from the adjugate of a nonsingular k x k row selection, in int64.
inline std::vector<IntVec> scan_parallelepiped(const std::vector<IntVec>& v, bool open) {
  const std::size_t k = v.size();
  const std::size_t n = v[0].size();
  std::vector<std::size_t> rows;
  Int d = 0;
  for_each_subset(n, k, [&](const std::vector<std::size_t>& sel) {
    if (d != 0) return;
    std::vector<IntVec> m(k, IntVec(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) m[i][j] = v[j][sel[i]];
    d = det(m);
    if (d != 0) rows = sel;
  });
  // adj[j][i]: d * a_j = sum_i adj[j][i] * x[rows[i]]
  std::vector<std::vector<std::int64_t>> adj(k, std::vector<std::int64_t>(k));
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<IntVec> m(k, IntVec(k));
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c) m[r][c] = v[c][rows[r]];
      for (std::size_t r = 0; r < k; ++r) m[r][j] = (r == i) ? 1 : 0;
      adj[j][i] = det(m).get_si();
    }
  }
  const std::int64_t dd = d.get_si();
  std::vector<std::vector<std::int64_t>> vv(k, std::vector<std::int64_t>(n));
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t c = 0; c < n; ++c) vv[j][c] = v[j][c].get_si();

  std::vector<std::int64_t> lo(n, 0), hi(n, 0);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t c = 0; c < n; ++c) (vv[j][c] < 0 ? lo[c] : hi[c]) += vv[j][c];
  std::vector<IntVec> out;
  std::vector<std::int64_t> p = lo;
  std::vector<std::int64_t> da(k);
  while (true) {
    bool ok = true;
    for (std::size_t j = 0; j < k && ok; ++j) {
      std::int64_t s = 0;
      for (std::size_t i = 0; i < k; ++i) s += adj[j][i] * p[rows[i]];
      da[j] = s;
      // need 0 <= s/dd < 1 (strict lower bound when open)
      const std::int64_t sd = dd > 0 ? s : -s;
      const std::int64_t ad = dd > 0 ? dd : -dd;
      if (sd < 0 || sd >= ad || (open && sd == 0)) ok = false;
    }
    for (std::size_t c = 0; c < n && ok; ++c) {
      std::int64_t s = 0;
      for (std::size_t j = 0; j < k; ++j) s += da[j] * vv[j][c];
      if (s != p[c] * dd) ok = false;
    }
    if (ok) {
      IntVec q(n);
      for (std::size_t c = 0; c < n; ++c) q[c] = static_cast<long>(p[c]);
      out.push_back(q);
    }
    std::size_t c = 0;
    while (c < n) {
      if (p[c] < hi[c]) {
        ++p[c];
        break;
      }
      p[c] = lo[c];
      ++c;
    }
    if (c == n) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline Int random_int(std::mt19937_64& rng, int lo, int hi) {
  return Int(std::uniform_int_distribution<int>(lo, hi)(rng));
}

inline IntVec random_vec(std::mt19937_64& rng, std::size_t n, int bound) {
  IntVec v(n);
  for (auto& x : v) x = random_int(rng, -bound, bound);
  return v;
}

inline std::size_t matrix_rank(const std::vector<IntVec>& v) {
  const std::size_t k = v.size();
  const std::size_t n = k ? v[0].size() : 0;
  for (std::size_t r = std::min(k, n); r > 0; --r) {
    bool found = false;
    for_each_subset(k, r, [&](const std::vector<std::size_t>& rows) {
      if (found) return;
      for_each_subset(n, r, [&](const std::vector<std::size_t>& cols) {
        if (found) return;
        std::vector<IntVec> m(r, IntVec(r));
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < r; ++j) m[i][j] = v[rows[i]][cols[j]];
        if (det(m) != 0) found = true;
      });
    });
    if (found) return r;
  }
  return 0;
}

inline std::vector<IntVec> random_independent(std::mt19937_64& rng, std::size_t k, std::size_t n, int bound) {
  while (true) {
    std::vector<IntVec> v;
    for (std::size_t i = 0; i < k; ++i) v.push_back(random_vec(rng, n, bound));
    if (matrix_rank(v) == k) return v;
  }
}

}  // namespace oracle
