#include "torfac/toroidal.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "torfac/errors.hpp"

namespace torfac {

namespace {

std::size_t ambient_of(const std::vector<IntVec>& sigma) {
  if (sigma.empty()) fail(ErrorKind::InvalidInput, "empty cone");
  for (const auto& u : sigma)
    if (u.size() != sigma.front().size()) fail(ErrorKind::InvalidInput, "cone generators of different lengths");
  return sigma.front().size();
}

IntVec integral(const RatVec& q) {
  IntVec out;
  for (const auto& x : q) {
    if (x.get_den() != 1) fail(ErrorKind::InternalInvariant, "expected integer coordinates");
    out.push_back(x.get_num());
  }
  return out;
}

bool dominates(const IntVec& big, const IntVec& small, std::size_t m) {
  for (std::size_t i = 0; i < m; ++i)
    if (big[i] < small[i]) return false;
  return true;
}

// x with a·x = target (a nonzero), built from iterated extended gcd.
IntVec bezout(const IntVec& a, Int& g) {
  IntVec x(a.size(), 0);
  g = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    if (g == 0) {
      g = abs(a[i]);
      x[i] = sgn(a[i]);
      continue;
    }
    Int s, t, d;
    mpz_gcdext(d.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g.get_mpz_t(), a[i].get_mpz_t());
    for (auto& y : x) y *= s;
    x[i] = t;
    g = d;
  }
  return x;
}

// Every nonnegative vector of length k with entries <= cap and coordinate
// sum <= budget.
void for_each_bounded(std::size_t k, const Int& cap, const Int& budget, const std::function<void(const IntVec&)>& f) {
  IntVec e(k, 0);
  std::function<void(std::size_t, Int)> rec = [&](std::size_t i, Int left) {
    if (i == k) {
      f(e);
      return;
    }
    for (Int v = 0; v <= cap && v <= left; ++v) {
      e[i] = v;
      rec(i + 1, left - v);
    }
    e[i] = 0;
  };
  rec(0, budget);
}

Int max_abs(const IntVec& v) {
  Int m = 0;
  for (const auto& x : v) m = std::max(m, Int(abs(x)));
  return m;
}

}  // namespace

std::vector<IntVec> chart_basis(const std::vector<IntVec>& sigma) {
  const std::size_t n = ambient_of(sigma);
  if (!is_independent(sigma)) fail(ErrorKind::NonSimplicialCone, "cone generators are dependent");
  if (lattice_index(sigma) != 1) fail(ErrorKind::InvalidInput, "cone is not smooth");
  auto rows = saturation_completion(sigma, n);
  std::vector<IntVec> basis = sigma;
  basis.insert(basis.end(), rows.begin() + static_cast<std::ptrdiff_t>(sigma.size()), rows.end());
  return basis;
}

IntVec chart_coordinates(const std::vector<IntVec>& sigma, const IntVec& x) {
  auto c = coordinates_in(chart_basis(sigma), x);
  if (!c) fail(ErrorKind::InternalInvariant, "chart basis does not span");
  return integral(*c);
}

MonomialIdeal minimalize(MonomialIdeal ideal) {
  auto& g = ideal.generators;
  std::sort(g.begin(), g.end(), lex_less);
  g.erase(std::unique(g.begin(), g.end()), g.end());
  const std::size_t m = ideal.poly_count;
  std::vector<IntVec> kept;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
      if (i == j || !dominates(g[i], g[j], m)) continue;
      // equal polynomial parts: keep the earlier (lex smaller) one
      const bool equal = dominates(g[j], g[i], m);
      redundant = !equal || j < i;
    }
    if (!redundant) kept.push_back(g[i]);
  }
  g = std::move(kept);
  return ideal;
}

MonomialIdeal weight_ideal_generators(const std::vector<IntVec>& sigma, const IntVec& a, const Int& alpha) {
  const std::size_t n = ambient_of(sigma);
  if (a.size() != n) fail(ErrorKind::InvalidInput, "weight vector has the wrong length");
  if (is_zero(a)) fail(ErrorKind::InvalidInput, "weight vector is zero");
  if (primitive(a).scale != 1) fail(ErrorKind::InvalidInput, "weight vector is not primitive");
  const auto basis = chart_basis(sigma);
  if (cone_contains(sigma, to_rat(a)) || cone_contains(sigma, to_rat(scale(a, -1))))
    fail(ErrorKind::AInsideCone, "a = " + to_string(a) + " lies in the cone or its negative");
  const std::size_t k = sigma.size();
  const IntVec w = integral(*coordinates_in(basis, a));  // <m_i, a> for the dual basis
  const IntVec wp(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
  const IntVec wt(w.begin() + static_cast<std::ptrdiff_t>(k), w.end());

  MonomialIdeal out;
  out.chart_rank = n;
  out.poly_count = k;
  Int g;
  const IntVec x = bezout(wt, g);
  if (g == 0) {
    // e·wp = alpha: along a greedy ordering of the units of a minimal
    // solution the partial sums are distinct and stay in a window of width
    // |alpha| + 2 max|w|, which bounds the coordinate sum
    const Int budget = abs(alpha) + 2 * max_abs(wp);
    for_each_bounded(k, budget, budget, [&](const IntVec& e) {
      if (dot(e, wp) != alpha) return;
      IntVec m = e;
      m.resize(n, 0);
      out.generators.push_back(std::move(m));
    });
  } else {
    // units absorb any multiple of g; subtracting g from a coordinate keeps
    // the congruence, so minimal exponents stay below g
    for_each_bounded(k, g - 1, Int(k) * (g - 1), [&](const IntVec& e) {
      const Int rest = alpha - dot(e, wp);
      if (rest % g != 0) return;
      IntVec m = e;
      const IntVec t = scale(x, rest / g);
      m.insert(m.end(), t.begin(), t.end());
      out.generators.push_back(std::move(m));
    });
  }
  out = minimalize(std::move(out));
  if (out.generators.empty()) fail(ErrorKind::InternalInvariant, "weight ideal came out empty");
  return out;
}

MonomialIdeal product_ideal(const std::vector<MonomialIdeal>& ideals) {
  if (ideals.empty()) fail(ErrorKind::InvalidInput, "empty product");
  MonomialIdeal acc = ideals.front();
  for (std::size_t i = 1; i < ideals.size(); ++i) {
    const auto& f = ideals[i];
    if (f.chart_rank != acc.chart_rank || f.poly_count != acc.poly_count)
      fail(ErrorKind::ChartMismatch, "factors live on different charts");
    MonomialIdeal next;
    next.chart_rank = acc.chart_rank;
    next.poly_count = acc.poly_count;
    for (const auto& p : acc.generators)
      for (const auto& q : f.generators) next.generators.push_back(add(p, q));
    acc = minimalize(std::move(next));
  }
  return minimalize(std::move(acc));
}

Int valuation(const std::vector<IntVec>& sigma, const MonomialIdeal& ideal, const IntVec& u) {
  if (ideal.generators.empty()) fail(ErrorKind::ZeroIdeal, "ideal has no generators");
  const IntVec y = chart_coordinates(sigma, u);
  Int best = dot(ideal.generators.front(), y);
  for (const auto& m : ideal.generators) best = std::min(best, Int(dot(m, y)));
  return best;
}

NewtonSubdivision newton_subdivision(const std::vector<IntVec>& sigma, const MonomialIdeal& ideal) {
  if (ideal.generators.empty()) fail(ErrorKind::ZeroIdeal, "ideal has no generators");
  const std::size_t n = ambient_of(sigma);
  const std::size_t k = sigma.size();
  if (ideal.chart_rank != n || ideal.poly_count != k) fail(ErrorKind::ChartMismatch, "ideal is not on this chart");
  chart_basis(sigma);  // smoothness check
  const auto gens = minimalize(ideal).generators;

  // work in R^k with y = coordinates along the rays of σ
  auto poly = [&](const IntVec& m) { return IntVec(m.begin(), m.begin() + static_cast<std::ptrdiff_t>(k)); };
  auto to_n = [&](const IntVec& y) {
    IntVec x(n, 0);
    for (std::size_t j = 0; j < k; ++j) x = add(x, scale(sigma[j], y[j]));
    return primitive(x).vec;
  };

  NewtonSubdivision out;
  out.base_cone = sigma;
  std::set<IntVec> all_rays;
  for (const auto& m : gens) {
    // C_m: y >= 0 and (m' - m)·y >= 0 for every other generator m'
    std::vector<IntVec> normals;
    for (std::size_t j = 0; j < k; ++j) {
      IntVec e(k, 0);
      e[j] = 1;
      normals.push_back(e);
    }
    for (const auto& mo : gens)
      if (mo != m) normals.push_back(add(poly(mo), scale(poly(m), -1)));
    auto feasible = [&](const IntVec& y) {
      return std::all_of(normals.begin(), normals.end(), [&](const IntVec& r) { return dot(r, y) >= 0; });
    };
    std::set<IntVec> rays;
    if (k == 1) {
      rays.insert(IntVec{1});
    } else {
      // extreme rays: kernels of k-1 independent tight constraints
      std::vector<std::size_t> pick;
      std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (pick.size() == k - 1) {
          std::vector<IntVec> cols(k, IntVec(k - 1));
          for (std::size_t r = 0; r < k - 1; ++r)
            for (std::size_t c = 0; c < k; ++c) cols[c][r] = normals[pick[r]][c];
          auto ker = rational_kernel(cols);
          if (ker.size() != 1) return;
          IntVec y = primitive_on_ray(ker.front());
          for (int s : {1, -1}) {
            IntVec ys = scale(y, s);
            if (feasible(ys)) rays.insert(ys);
          }
          return;
        }
        for (std::size_t i = start; i < normals.size(); ++i) {
          pick.push_back(i);
          rec(i + 1);
          pick.pop_back();
        }
      };
      rec(0);
    }
    std::vector<IntVec> ys(rays.begin(), rays.end());
    if (ys.empty() || rank_of(ys) != k) continue;  // lower-dimensional: not a cell
    NewtonCell cell;
    cell.active = m;
    for (const auto& y : ys) {
      cell.rays.push_back(to_n(y));
      if (dot(poly(m), y) > 0) all_rays.insert(cell.rays.back());
    }
    std::sort(cell.rays.begin(), cell.rays.end(), lex_less);
    out.cells.push_back(std::move(cell));
  }
  std::sort(out.cells.begin(), out.cells.end(), [](const NewtonCell& a, const NewtonCell& b) {
    return std::lexicographical_compare(a.rays.begin(), a.rays.end(), b.rays.begin(), b.rays.end(), lex_less);
  });
  // the valuation of a ray is the same from every cell containing it
  out.exceptional_rays.assign(all_rays.begin(), all_rays.end());
  std::sort(out.exceptional_rays.begin(), out.exceptional_rays.end(), lex_less);
  return out;
}

std::vector<ToroidalCheck> check_toroidal_action(const std::vector<std::vector<IntVec>>& cones, const IntVec& a,
                                                 const std::vector<IntVec>& divisor_rays) {
  std::vector<ToroidalCheck> out;
  for (const auto& cone : cones) {
    const std::size_t n = ambient_of(cone);
    for (std::size_t i = 0; i < cone.size(); ++i) {
      const IntVec e = primitive(cone[i]).vec;
      if (std::find(divisor_rays.begin(), divisor_rays.end(), e) != divisor_rays.end()) continue;
      std::vector<IntVec> others;
      for (std::size_t j = 0; j < cone.size(); ++j)
        if (j != i) others.push_back(cone[j]);
      // a functional φ with φ(e) = 1 killing `vs` exists iff e is primitive
      // in N modulo the saturation of span(vs)
      auto splits_off = [&](const std::vector<IntVec>& vs) {
        const std::size_t r = rank_of(vs);
        const auto rows = saturation_completion(vs, n);
        auto c = coordinates_in(rows, e);
        if (!c) return false;
        Int g = 0;
        for (std::size_t j = r; j < n; ++j) g = gcd(g, integral({(*c)[j]}).front());
        return g == 1;
      };
      ToroidalCheck chk;
      chk.cone = cone;
      chk.ray = e;
      chk.splits = splits_off(others);
      auto with_a = others;
      if (!is_zero(a)) with_a.push_back(a);
      chk.a_in_complement = chk.splits && splits_off(with_a);
      out.push_back(std::move(chk));
    }
  }
  return out;
}

std::vector<ToroidalCheck> check_toroidal_action(const Fan& fan, const IntVec& a, const std::vector<IntVec>& divisor_rays) {
  std::vector<std::vector<IntVec>> cones;
  for (const auto& c : fan.maximal_cones()) cones.push_back(fan.generators(c));
  return check_toroidal_action(cones, a, divisor_rays);
}

}  // namespace torfac
