#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace torfac {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

struct Primitive {
  IntVec vec;
  Int scale;  // always positive
};

/// Divides v by the gcd of its entries. Throws ZeroVector on v = 0.
Primitive primitive(const IntVec& v);

/// Index of Z<v_1..v_k> inside the saturated lattice N ∩ span(v_1..v_k),
/// i.e. the gcd of all maximal minors. Throws DependentInput.
Int lattice_index(const std::vector<IntVec>& vectors);

/// Basis of the rational kernel of e_i -> v_i, in reduced-echelon order.
std::vector<RatVec> rational_kernel(const std::vector<IntVec>& vectors);

struct ParallelepipedLimits {
  std::size_t max_ambient_rank = 8;
  std::size_t max_points = 1'000'000;
};

/// Lattice points sum a_i v_i with every a_i strictly in (0,1), sorted
/// lexicographically. Throws DependentInput or CapExceeded.
std::vector<IntVec> enumerate_parallelepiped(const std::vector<IntVec>& vectors,
                                             const ParallelepipedLimits& limits = {});

// ---- helpers shared by the other modules ----

std::size_t rank_of(const std::vector<IntVec>& vectors);
bool is_independent(const std::vector<IntVec>& vectors);
bool is_zero(const IntVec& v);

/// Coefficients of x in the independent family `basis`, or nullopt if x is
/// not in its span.
std::optional<RatVec> coordinates_in(const std::vector<IntVec>& basis, const RatVec& x);
std::optional<RatVec> coordinates_in(const std::vector<IntVec>& basis, const IntVec& x);

/// Basis of the saturated lattice N ∩ span(vectors) followed by vectors that
/// complete it to a basis of Z^n. Returns the full n x n unimodular matrix as
/// rows; the first rank_of(vectors) rows span the saturation.
std::vector<IntVec> saturation_completion(const std::vector<IntVec>& vectors, std::size_t ambient);

/// Clears denominators and returns the primitive integer vector on the ray
/// Q_{>0} x. Throws ZeroVector.
IntVec primitive_on_ray(const RatVec& x);

RatVec to_rat(const IntVec& v);
Int dot(const IntVec& a, const IntVec& b);
IntVec add(const IntVec& a, const IntVec& b);
IntVec scale(const IntVec& a, const Int& s);
std::string to_string(const IntVec& v);

/// Lexicographic comparison on coordinate lists (shorter prefix first).
bool lex_less(const IntVec& a, const IntVec& b);

}  // namespace torfac
