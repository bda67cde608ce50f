#include "torfac/lattice.hpp"

#include <algorithm>

#include "internal/normal_form.hpp"
#include "torfac/errors.hpp"

namespace torfac {

bool is_zero(const IntVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

Primitive primitive(const IntVec& v) {
  Int g = 0;
  for (const auto& x : v) g = gcd(g, x);
  if (g == 0) fail(ErrorKind::ZeroVector, "cannot normalize the zero vector");
  Primitive p;
  p.scale = g;
  p.vec.reserve(v.size());
  for (const auto& x : v) p.vec.push_back(x / g);
  return p;
}

IntVec primitive_on_ray(const RatVec& x) {
  Int l = 1;
  for (const auto& q : x) l = lcm(l, Int(q.get_den()));
  IntVec v;
  v.reserve(x.size());
  for (const auto& q : x) v.push_back(Int(q.get_num()) * (l / Int(q.get_den())));
  return primitive(v).vec;
}

RatVec to_rat(const IntVec& v) { return RatVec(v.begin(), v.end()); }

Int dot(const IntVec& a, const IntVec& b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

IntVec add(const IntVec& a, const IntVec& b) {
  IntVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

IntVec scale(const IntVec& a, const Int& s) {
  IntVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] * s;
  return c;
}

std::string to_string(const IntVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s + ")";
}

bool lex_less(const IntVec& a, const IntVec& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

namespace {

std::vector<RatVec> as_columns(const std::vector<IntVec>& vectors, std::size_t ambient) {
  // matrix with the vectors as columns: ambient rows, vectors.size() cols
  std::vector<RatVec> m(ambient, RatVec(vectors.size()));
  for (std::size_t j = 0; j < vectors.size(); ++j)
    for (std::size_t i = 0; i < ambient; ++i) m[i][j] = vectors[j][i];
  return m;
}

std::size_t ambient_of(const std::vector<IntVec>& vectors) {
  return vectors.empty() ? 0 : vectors.front().size();
}

}  // namespace

std::size_t rank_of(const std::vector<IntVec>& vectors) {
  if (vectors.empty()) return 0;
  std::vector<RatVec> rows;
  rows.reserve(vectors.size());
  for (const auto& v : vectors) rows.push_back(to_rat(v));
  return detail::rref(std::move(rows)).rows.size();
}

bool is_independent(const std::vector<IntVec>& vectors) { return rank_of(vectors) == vectors.size(); }

Int lattice_index(const std::vector<IntVec>& vectors) {
  if (vectors.empty()) return 1;
  const auto h = detail::column_hermite(vectors, ambient_of(vectors));
  Int det = 1;
  for (std::size_t i = 0; i < h.lower.size(); ++i) det *= h.lower[i][i];
  return det;
}

std::vector<RatVec> rational_kernel(const std::vector<IntVec>& vectors) {
  const std::size_t k = vectors.size();
  if (k == 0) return {};
  const auto e = detail::rref(as_columns(vectors, ambient_of(vectors)));
  std::vector<bool> is_pivot(k, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<RatVec> basis;
  for (std::size_t free = 0; free < k; ++free) {
    if (is_pivot[free]) continue;
    RatVec x(k, 0);
    x[free] = 1;
    for (std::size_t r = 0; r < e.rows.size(); ++r) x[e.pivots[r]] = -e.rows[r][free];
    basis.push_back(std::move(x));
  }
  return basis;
}

std::optional<RatVec> coordinates_in(const std::vector<IntVec>& basis, const RatVec& x) {
  const std::size_t k = basis.size();
  const std::size_t n = x.size();
  std::vector<RatVec> m = as_columns(basis, n);
  for (std::size_t i = 0; i < n; ++i) m[i].push_back(x[i]);
  if (k == 0) {
    for (const auto& q : x)
      if (q != 0) return std::nullopt;
    return RatVec{};
  }
  const auto e = detail::rref(std::move(m));
  if (!e.pivots.empty() && e.pivots.back() == k) return std::nullopt;
  if (e.pivots.size() != k) fail(ErrorKind::DependentInput, "basis vectors are linearly dependent");
  RatVec coords(k);
  for (std::size_t r = 0; r < k; ++r) coords[e.pivots[r]] = e.rows[r][k];
  return coords;
}

std::optional<RatVec> coordinates_in(const std::vector<IntVec>& basis, const IntVec& x) {
  return coordinates_in(basis, to_rat(x));
}

std::vector<IntVec> saturation_completion(const std::vector<IntVec>& vectors, std::size_t ambient) {
  std::vector<IntVec> independent;
  for (const auto& v : vectors) {
    independent.push_back(v);
    if (!is_independent(independent)) independent.pop_back();
  }
  if (independent.empty()) {
    std::vector<IntVec> id(ambient, IntVec(ambient, 0));
    for (std::size_t i = 0; i < ambient; ++i) id[i][i] = 1;
    return id;
  }
  return detail::column_hermite(independent, ambient).basis;
}

std::vector<IntVec> enumerate_parallelepiped(const std::vector<IntVec>& vectors,
                                             const ParallelepipedLimits& limits) {
  if (vectors.empty()) return {};
  const std::size_t n = ambient_of(vectors);
  if (n > limits.max_ambient_rank)
    fail(ErrorKind::CapExceeded, "ambient rank " + std::to_string(n) + " exceeds the enumeration cap");
  const auto h = detail::column_hermite(vectors, n);
  const std::size_t k = vectors.size();

  Int count = 1;
  for (std::size_t i = 0; i < k; ++i) count *= h.lower[i][i];
  if (count > Int(static_cast<unsigned long>(limits.max_points)))
    fail(ErrorKind::CapExceeded, "parallelepiped has " + count.get_str() + " points");

  // The box 0 <= y_j < L_jj is a full set of representatives of Z^k modulo
  // the row lattice of L. Each representative yields one point of the
  // half-open parallelepiped via the fractional parts of y L^{-1}.
  std::vector<IntVec> points;
  IntVec y(k, 0);
  while (true) {
    RatVec a(k);
    for (std::size_t jj = k; jj-- > 0;) {
      Rat s = y[jj];
      for (std::size_t i = jj + 1; i < k; ++i) s -= a[i] * h.lower[i][jj];
      a[jj] = s / h.lower[jj][jj];
    }
    bool interior = true;
    RatVec frac(k);
    for (std::size_t i = 0; i < k; ++i) {
      Int fl;
      mpz_fdiv_q(fl.get_mpz_t(), a[i].get_num_mpz_t(), a[i].get_den_mpz_t());
      frac[i] = a[i] - fl;
      if (frac[i] == 0) interior = false;
    }
    if (interior) {
      RatVec x(n, 0);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t c = 0; c < n; ++c) x[c] += frac[i] * vectors[i][c];
      IntVec p(n);
      for (std::size_t c = 0; c < n; ++c) p[c] = x[c].get_num();
      points.push_back(std::move(p));
    }
    std::size_t pos = 0;
    while (pos < k) {
      ++y[pos];
      if (y[pos] < h.lower[pos][pos]) break;
      y[pos] = 0;
      ++pos;
    }
    if (pos == k) break;
  }
  std::sort(points.begin(), points.end(), lex_less);
  return points;
}

}  // namespace torfac
