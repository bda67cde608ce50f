#pragma once

#include <cstddef>
#include <vector>

#include "torfac/fan.hpp"
#include "torfac/lattice.hpp"

namespace torfac {

// Monomial ideals on the chart U_σ of a smooth cone σ = <u_1..u_k> in N of
// rank n. The chart basis is u_1..u_k completed to a basis of N; exponents
// are coordinates in the dual basis, so the first k are polynomial
// variables and the remaining n - k are invertible.

struct MonomialIdeal {
  std::size_t chart_rank = 0;
  std::size_t poly_count = 0;
  std::vector<IntVec> generators;  // lex sorted, minimal on the polynomial part
};

/// Basis of N starting with the rays of σ (in the given order).
std::vector<IntVec> chart_basis(const std::vector<IntVec>& sigma);

/// Coordinates of x ∈ N in the chart basis.
IntVec chart_coordinates(const std::vector<IntVec>& sigma, const IntVec& x);

/// Drops generators divisible by another one; among generators with equal
/// polynomial part (they differ by a unit) keeps the lex smallest.
MonomialIdeal minimalize(MonomialIdeal ideal);

/// Minimal generators of {m ∈ σ̌ ∩ M : <m, a> = alpha} on the chart of σ.
/// Throws AInsideCone when a ∈ σ ∪ -σ, NonSimplicialCone/InvalidInput when
/// σ is not smooth.
MonomialIdeal weight_ideal_generators(const std::vector<IntVec>& sigma, const IntVec& a, const Int& alpha);

/// Generators are the sums of one generator per factor. Throws ChartMismatch.
MonomialIdeal product_ideal(const std::vector<MonomialIdeal>& ideals);

/// min over generators of <m, u> for u ∈ σ (N coordinates).
Int valuation(const std::vector<IntVec>& sigma, const MonomialIdeal& ideal, const IntVec& u);

struct NewtonCell {
  std::vector<IntVec> rays;  // primitive, lex sorted, in N
  IntVec active;             // the generator attaining the minimum on the cell
};

struct NewtonSubdivision {
  std::vector<IntVec> base_cone;
  std::vector<NewtonCell> cells;        // sorted by ray list
  std::vector<IntVec> exceptional_rays; // lex sorted
};

/// Domains of linearity of x ↦ min_m <m, x> on σ. Throws ZeroIdeal.
NewtonSubdivision newton_subdivision(const std::vector<IntVec>& sigma, const MonomialIdeal& ideal);

struct ToroidalCheck {
  std::vector<IntVec> cone;
  IntVec ray;
  bool splits = false;           // N = N' ⊕ Ze with N' containing the other rays
  bool a_in_complement = false;  // such an N' can be chosen to contain a
  bool pass() const { return splits && a_in_complement; }
};

/// One entry per (cone, ray) with the ray outside the divisor. Cones are
/// generator lists and need not be simplicial.
std::vector<ToroidalCheck> check_toroidal_action(const std::vector<std::vector<IntVec>>& cones, const IntVec& a,
                                                 const std::vector<IntVec>& divisor_rays);
std::vector<ToroidalCheck> check_toroidal_action(const Fan& fan, const IntVec& a,
                                                 const std::vector<IntVec>& divisor_rays);

}  // namespace torfac
