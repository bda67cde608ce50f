#include <doctest.h>

#include <random>

#include "support/generators.hpp"
#include "torfac/errors.hpp"
#include "torfac/fan.hpp"

using namespace torfac;

namespace {

IntVec iv(std::initializer_list<long> xs) {
  IntVec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

Fan plane() { return make_fan(2, {iv({1, 0}), iv({0, 1})}, {{0, 1}}, false); }

ConeKey key(std::initializer_list<IntVec> rays) {
  ConeKey k(rays);
  std::sort(k.begin(), k.end(), lex_less);
  return k;
}

std::vector<ConeKey> keys(std::initializer_list<ConeKey> ks) {
  std::vector<ConeKey> v(ks);
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_SUITE("fan") {
  TEST_CASE("construction examples and errors") {
    Fan a2 = plane();
    CHECK(a2.maximal_cones().size() == 1);
    Fan e1 = make_fan(3, {iv({1, 0, 0}), iv({0, 1, 0}), iv({1, 1, 1})}, {{0, 1, 2}}, true, ValidateLevel::Full);
    CHECK(e1.is_cobordism());
    CHECK_THROWS_WITH_AS(make_fan(3, {iv({0, 0, 1})}, {{0}}, true), doctest::Contains("VerticalRay"), Error);
    CHECK_THROWS_WITH_AS(make_fan(2, {iv({1, 0}), iv({2, 0})}, {{0, 1}}, false),
                         doctest::Contains("NonSimplicialCone"), Error);
    CHECK_THROWS_WITH_AS(make_fan(3, {iv({1, 0, 1}), iv({-1, 0, 1})}, {{0, 1}}, true),
                         doctest::Contains("NotPiStrictlyConvex"), Error);
    // two overlapping cones
    CHECK_THROWS_WITH_AS(make_fan(2, {iv({1, 0}), iv({0, 1}), iv({1, 1}), iv({1, 2})}, {{0, 1}, {2, 3}}, false,
                                  ValidateLevel::Full),
                         doctest::Contains("NotFaceToFace"), Error);
    CHECK_THROWS_AS(make_fan(2, {iv({1, 0})}, {{0, 1}}, false), Error);
  }

  TEST_CASE("rays are primitivized, duplicates merged, contained cones dropped") {
    Fan f = make_fan(2, {iv({2, 0}), iv({0, 3}), iv({1, 0})}, {{0, 1}, {2, 1}, {2}}, false);
    CHECK(f.rays().size() == 2);
    CHECK(f.ray(0) == iv({1, 0}));
    CHECK(f.maximal_cones().size() == 1);
  }

  TEST_CASE("multiplicity examples") {
    Fan a2 = plane();
    CHECK(multiplicity(a2, {0, 1}) == 1);
    CHECK(is_smooth(a2, {0, 1}));
    Fan b = make_fan(2, {iv({1, 0}), iv({1, 2})}, {{0, 1}}, false);
    CHECK(multiplicity(b, {0, 1}) == 2);
    CHECK_FALSE(is_smooth(b, {0, 1}));
    Fan c = make_fan(3, {iv({1, 1, 0}), iv({1, 0, 1}), iv({0, 1, 1})}, {{0, 1, 2}}, false);
    CHECK(multiplicity(c, {0, 1, 2}) == 2);
  }

  TEST_CASE("stars") {
    Fan a2 = plane();
    auto os = open_star(a2, {0});
    CHECK(os == std::vector<Cone>{{0}, {0, 1}});
    auto cs = closed_star(a2, {0});
    CHECK(all_cones(cs) == std::vector<Cone>{{0}, {0, 1}, {1}});
    CHECK(open_star(a2, {0, 1}) == std::vector<Cone>{{0, 1}});
    Fan bl = star_subdivide(a2, iv({1, 1}));
    const RayId mid = *bl.find_ray(iv({1, 1}));
    CHECK(open_star(bl, {mid}).size() == 3);
    Fan two = make_fan(2, {iv({1, 0}), iv({0, 1}), iv({-1, 0})}, {{0, 1}, {1, 2}}, false);
    CHECK_THROWS_WITH_AS(open_star(two, {0, 2}), doctest::Contains("NotAFace"), Error);
  }

  TEST_CASE("star subdivision examples") {
    Fan a2 = plane();
    Fan bl = star_subdivide(a2, iv({1, 1}));
    CHECK(canonical_form(bl) == keys({key({iv({1, 0}), iv({1, 1})}), key({iv({0, 1}), iv({1, 1})})}));
    CHECK(same_fan(star_subdivide(bl, iv({1, 1})), bl));
    CHECK(same_fan(star_subdivide(a2, iv({2, 0})), a2));
    CHECK_THROWS_WITH_AS(star_subdivide(a2, iv({-1, 1})), doctest::Contains("OutsideSupport"), Error);

    Fan e1 = make_fan(3, {iv({1, 0, 0}), iv({0, 1, 0}), iv({1, 1, 1})}, {{0, 1, 2}}, true);
    Fan s = star_subdivide(e1, iv({2, 2, 1}));
    const IntVec p = iv({2, 2, 1});
    CHECK(canonical_form(s) == keys({key({p, iv({1, 0, 0}), iv({0, 1, 0})}), key({p, iv({1, 0, 0}), iv({1, 1, 1})}),
                                     key({p, iv({0, 1, 0}), iv({1, 1, 1})})}));
  }

  TEST_CASE("subdividing on a face only splits cones through that face") {
    Fan two = make_fan(2, {iv({1, 0}), iv({0, 1}), iv({-1, 0})}, {{0, 1}, {1, 2}}, false);
    Fan s = star_subdivide(two, iv({1, 1}));
    CHECK(s.maximal_cones().size() == 3);
    CHECK(std::find(s.maximal_cones().begin(), s.maximal_cones().end(), Cone{1, 2}) != s.maximal_cones().end());
  }

  TEST_CASE("smooth resolution examples") {
    Fan a2 = plane();
    CHECK(same_fan(smooth_resolve(a2), a2));
    Fan b = make_fan(2, {iv({1, 0}), iv({1, 2})}, {{0, 1}}, false);
    Fan r = smooth_resolve(b);
    CHECK(canonical_form(r) == keys({key({iv({1, 0}), iv({1, 1})}), key({iv({1, 1}), iv({1, 2})})}));
    Fan c = make_fan(3, {iv({1, 1, 0}), iv({1, 0, 1}), iv({0, 1, 1})}, {{0, 1, 2}}, false);
    Fan rc = smooth_resolve(c);
    for (const auto& m : rc.maximal_cones()) CHECK(is_smooth(rc, m));
  }

  TEST_CASE("random subdivisions preserve support and face-to-face") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 30; ++trial) {
      Fan f = gen::random_cobordism_fan(rng, 2 + trial % 2);
      REQUIRE(is_face_to_face(f));
      IntVec p = gen::random_interior_point(rng, f, 1);
      Fan g = star_subdivide(f, p);
      CHECK(is_face_to_face(g));
      for (int s = 0; s < 200; ++s) {
        RatVec x = gen::random_sample_point(rng, f);
        CHECK(support_contains(f, x) == support_contains(g, x));
      }
      // cones away from the new ray are kept verbatim
      for (const auto& c : f.maximal_cones()) {
        if (cone_contains(f.generators(c), to_rat(p))) continue;
        CHECK(std::find(g.maximal_cones().begin(), g.maximal_cones().end(), c) != g.maximal_cones().end());
      }
    }
  }

  TEST_CASE("smooth resolution of random simplicial fans") {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 25; ++trial) {
      const std::size_t n = 2 + trial % 2;
      std::vector<IntVec> gens;
      do {
        gens.clear();
        for (std::size_t i = 0; i < n; ++i) {
          IntVec v = oracle::random_vec(rng, n, 3);
          if (!is_zero(v)) gens.push_back(primitive(v).vec);
        }
      } while (gens.size() < n || !is_independent(gens));
      Cone c;
      for (std::size_t i = 0; i < n; ++i) c.push_back(i);
      Fan f = Fan::assemble(n, false, gens, {c});
      Fan r = smooth_resolve(f);
      for (const auto& m : r.maximal_cones()) CHECK(is_smooth(r, m));
      CHECK(is_face_to_face(r));
      for (int s = 0; s < 100; ++s) {
        RatVec x = gen::random_sample_point(rng, f);
        CHECK(support_contains(f, x) == support_contains(r, x));
      }
    }
  }
}
