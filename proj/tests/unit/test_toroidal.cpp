#include <doctest.h>

#include <random>

#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "torfac/errors.hpp"
#include "torfac/toroidal.hpp"

using namespace torfac;

namespace {

IntVec iv(std::initializer_list<long> xs) {
  IntVec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

std::vector<IntVec> orthant(std::size_t n) {
  std::vector<IntVec> s;
  for (std::size_t i = 0; i < n; ++i) s.push_back(gen::unit(n, i));
  return s;
}

template <class T>
std::vector<T> sorted(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<IntVec> sorted(std::initializer_list<IntVec> v) { return sorted(std::vector<IntVec>(v)); }

// brute force: all m in [0, box]^n with a·m = alpha, then the minimal ones
std::vector<IntVec> brute_weight_ideal(const IntVec& a, long alpha, long box) {
  const std::size_t n = a.size();
  std::vector<IntVec> sols;
  IntVec m(n, 0);
  while (true) {
    if (dot(m, a) == alpha) sols.push_back(m);
    std::size_t i = 0;
    while (i < n && m[i] == box) m[i++] = 0;
    if (i == n) break;
    m[i] += 1;
  }
  std::vector<IntVec> minimal;
  for (const auto& s : sols) {
    bool dominated = false;
    for (const auto& t : sols) {
      if (t == s) continue;
      bool le = true;
      for (std::size_t i = 0; i < n; ++i)
        if (t[i] > s[i]) le = false;
      if (le) dominated = true;
    }
    if (!dominated) minimal.push_back(s);
  }
  return sorted(minimal);
}

// x in cone(rays) iff x lies in a simplicial cone on some independent subset
bool in_cell(const std::vector<IntVec>& rays, const IntVec& x, std::size_t k) {
  bool found = false;
  oracle::for_each_subset(rays.size(), k, [&](const std::vector<std::size_t>& idx) {
    if (found) return;
    std::vector<IntVec> sub;
    for (auto i : idx) sub.push_back(rays[i]);
    if (!is_independent(sub)) return;
    if (cone_contains(sub, to_rat(x))) found = true;
  });
  return found;
}

}  // namespace

TEST_SUITE("toroidal") {
  TEST_CASE("weight ideals for a = (2,1,-1)") {
    const auto s = orthant(3);
    const IntVec a = iv({2, 1, -1});
    CHECK(weight_ideal_generators(s, a, 2).generators == sorted({iv({1, 0, 0}), iv({0, 2, 0})}));
    CHECK(weight_ideal_generators(s, a, -1).generators == std::vector<IntVec>{iv({0, 0, 1})});
    CHECK(weight_ideal_generators(s, a, 1).generators == sorted({iv({0, 1, 0}), iv({1, 0, 1})}));
  }

  TEST_CASE("a inside the cone is rejected") {
    CHECK_THROWS_WITH_AS(weight_ideal_generators(orthant(2), iv({1, 1}), 1), doctest::Contains("AInsideCone"), Error);
    CHECK_THROWS_WITH_AS(weight_ideal_generators(orthant(2), iv({-1, 0}), 1), doctest::Contains("AInsideCone"), Error);
  }

  TEST_CASE("weight ideals agree with brute force") {
    std::mt19937_64 rng(13);
    int checked = 0;
    while (checked < 150) {
      const std::size_t n = 2 + gen::pick(rng, 3);
      IntVec a = oracle::random_vec(rng, n, 3);
      if (is_zero(a) || primitive(a).scale != 1) continue;
      bool pos = false, neg = false;
      for (const auto& x : a) {
        if (x > 0) pos = true;
        if (x < 0) neg = true;
      }
      if (!pos || !neg) continue;
      const long alpha = static_cast<long>(gen::pick(rng, 9)) - 4;
      auto got = weight_ideal_generators(orthant(n), a, alpha);
      // |alpha| + 2 max|a_i| bounds the coordinate sum of a minimal
      // solution; scan twice that box (once at rank 4, to keep it quick)
      long amax = 0;
      for (const auto& x : a) amax = std::max(amax, std::abs(x.get_si()));
      const long bound = std::abs(alpha) + 2 * amax;
      const long box = n == 4 ? bound : 2 * bound;
      CHECK(got.generators == brute_weight_ideal(a, alpha, box));
      for (const auto& m : got.generators) CHECK(dot(m, a) == alpha);
      ++checked;
    }
  }

  TEST_CASE("charts with invertible coordinates") {
    // σ = <e1> in Z^2, a = (1,2): z2 is a unit of weight 2
    const std::vector<IntVec> s{iv({1, 0})};
    auto odd = weight_ideal_generators(s, iv({1, 2}), 3);
    REQUIRE(odd.generators.size() == 1);
    CHECK(odd.generators[0][0] == 1);
    CHECK(dot(odd.generators[0], iv({1, 2})) == 3);
    auto even = weight_ideal_generators(s, iv({1, 2}), 4);
    REQUIRE(even.generators.size() == 1);
    CHECK(even.generators[0][0] == 0);
    // the chart basis starts with the cone's rays
    const std::vector<IntVec> t{iv({1, 1, 0}), iv({0, 1, 1})};
    auto b = chart_basis(t);
    CHECK(b[0] == t[0]);
    CHECK(b[1] == t[1]);
    CHECK(oracle::det(b) * oracle::det(b) == 1);
  }

  TEST_CASE("products") {
    const auto s = orthant(3);
    MonomialIdeal x{3, 3, {iv({1, 0, 0})}}, z{3, 3, {iv({0, 0, 1})}}, unit{3, 3, {iv({0, 0, 0})}};
    CHECK(product_ideal({x, z}).generators == std::vector<IntVec>{iv({1, 0, 1})});
    auto i2 = weight_ideal_generators(s, iv({2, 1, -1}), 2);
    CHECK(product_ideal({i2, unit}).generators == i2.generators);
    MonomialIdeal other{3, 2, {iv({0, 0, 0})}};
    CHECK_THROWS_WITH_AS(product_ideal({x, other}), doctest::Contains("ChartMismatch"), Error);
  }

  TEST_CASE("the (2,1,-1) subdivision") {
    const auto s = orthant(3);
    const IntVec a = iv({2, 1, -1});
    std::vector<MonomialIdeal> f;
    for (long al : {-1, 1, 2}) f.push_back(weight_ideal_generators(s, a, al));
    auto ia = product_ideal(f);
    CHECK(ia.generators == sorted({iv({1, 1, 1}), iv({2, 0, 2}), iv({0, 3, 1})}));
    auto ns = newton_subdivision(s, ia);
    const IntVec v1 = iv({1, 0, 0}), v2 = iv({0, 1, 0}), v3 = iv({0, 0, 1});
    std::vector<std::vector<IntVec>> cells;
    for (const auto& c : ns.cells) cells.push_back(sorted(c.rays));
    std::vector<std::vector<IntVec>> expected{
        sorted({v1, add(scale(v1, 2), v2), v3}),
        sorted({add(v1, v2), v3, add(scale(v1, 2), v2), add(v2, v3)}),
        sorted({add(v1, v2), add(v2, v3), v2}),
    };
    CHECK(sorted(cells) == sorted(expected));
    CHECK(sorted(ns.exceptional_rays) == sorted({v3, add(v1, v2), add(scale(v1, 2), v2), add(v2, v3)}));
  }

  TEST_CASE("principal ideal gives one cell") {
    const auto s = orthant(3);
    MonomialIdeal p{3, 3, {iv({2, 0, 1})}};
    auto ns = newton_subdivision(s, p);
    REQUIRE(ns.cells.size() == 1);
    CHECK(sorted(ns.cells[0].rays) == sorted(s));
    CHECK(ns.exceptional_rays == sorted({iv({0, 0, 1}), iv({1, 0, 0})}));
    CHECK_THROWS_WITH_AS(newton_subdivision(s, MonomialIdeal{3, 3, {}}), doctest::Contains("ZeroIdeal"), Error);
  }

  TEST_CASE("newton cells tile the cone and carry the minimum") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 40; ++t) {
      const std::size_t n = 2 + gen::pick(rng, 2);
      const auto s = orthant(n);
      MonomialIdeal id{n, n, {}};
      const std::size_t g = 1 + gen::pick(rng, 4);
      for (std::size_t i = 0; i < g; ++i) id.generators.push_back(oracle::random_vec(rng, n, 3));
      for (auto& m : id.generators)
        for (auto& x : m) x = abs(x);
      auto ns = newton_subdivision(s, id);
      for (int p = 0; p < 100; ++p) {
        IntVec x(n);
        for (auto& c : x) c = static_cast<long>(gen::pick(rng, 12));
        if (is_zero(x)) continue;
        Int best = dot(id.generators.front(), x);
        for (const auto& m : id.generators) best = std::min(best, Int(dot(m, x)));
        std::size_t containing = 0;
        for (const auto& c : ns.cells) {
          if (!in_cell(c.rays, x, n)) continue;
          ++containing;
          CHECK(dot(c.active, x) == best);
        }
        CHECK(containing >= 1);
        std::size_t minimizers = 0;
        for (const auto& m : minimalize(id).generators)
          if (dot(m, x) == best) ++minimizers;
        if (minimizers == 1) CHECK(containing == 1);
      }
    }
  }

  TEST_CASE("valuations add under products") {
    std::mt19937_64 rng(19);
    for (int t = 0; t < 60; ++t) {
      const auto s = orthant(3);
      IntVec a = oracle::random_vec(rng, 3, 3);
      if (is_zero(a) || primitive(a).scale != 1 || cone_contains(s, to_rat(a)) ||
          cone_contains(s, to_rat(scale(a, -1))))
        continue;
      std::vector<MonomialIdeal> f;
      std::vector<long> alphas;
      long sum = 0;
      for (int i = 0; i < 2; ++i) {
        long al = static_cast<long>(gen::pick(rng, 7)) - 3;
        alphas.push_back(al);
        sum += al;
      }
      alphas.push_back(-sum);  // weights add up to zero
      for (long al : alphas) f.push_back(weight_ideal_generators(s, a, al));
      auto prod = product_ideal(f);
      for (const auto& m : prod.generators) CHECK(dot(m, a) == 0);
      for (int p = 0; p < 10; ++p) {
        IntVec u(3);
        for (auto& c : u) c = static_cast<long>(gen::pick(rng, 6));
        if (is_zero(u)) continue;
        Int total = 0;
        for (const auto& fi : f) total += valuation(s, fi, u);
        CHECK(valuation(s, prod, u) == total);
      }
    }
  }

  TEST_CASE("toroidal action checks") {
    const std::vector<IntVec> plane{iv({1, 0}), iv({0, 1})};
    auto vac = check_toroidal_action({plane}, iv({3, 5}), plane);
    CHECK(vac.empty());
    auto r = check_toroidal_action({plane}, iv({1, 0}), {iv({1, 0})});
    REQUIRE(r.size() == 1);
    CHECK(r[0].ray == iv({0, 1}));
    CHECK(r[0].pass());
    auto bad = check_toroidal_action({plane}, iv({1, 1}), {iv({1, 0})});
    REQUIRE(bad.size() == 1);
    CHECK(bad[0].splits);
    CHECK_FALSE(bad[0].pass());

    const IntVec v1 = iv({1, 0, 0}), v2 = iv({0, 1, 0}), v3 = iv({0, 0, 1});
    const std::vector<IntVec> s1{v1, add(scale(v1, 2), v2), v3}, s3{add(v1, v2), add(v2, v3), v2};
    const std::vector<IntVec> divisor{v3, add(v1, v2), add(scale(v1, 2), v2), add(v2, v3)};
    auto cells = check_toroidal_action({s1, s3}, iv({2, 1, -1}), divisor);
    REQUIRE(cells.size() == 2);
    for (const auto& c : cells) CHECK(c.pass());
  }
}
