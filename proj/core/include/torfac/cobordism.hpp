#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <vector>

#include "torfac/fan.hpp"

namespace torfac {

// Everything here works in N+ = N ⊕ Z with ν = (0,...,0,1) and π the
// projection forgetting the last coordinate.

/// ρ = c·(v, w) with v primitive in N and c > 0.
struct RayPiData {
  IntVec v;
  Rat w;
  Int c;
};

RayPiData ray_pi_data(const IntVec& ray);
std::vector<RayPiData> pi_data(const Fan& fan, const Cone& cone);

IntVec project(const IntVec& x);

/// The normalized relation sum r_i v_i = 0 of a π-dependent cone
/// (max |r_i| = 1, sum r_i w_i > 0). Index sets hold positions in the
/// cone's generator list.
struct DependenceData {
  RatVec r;
  std::vector<RayPiData> ray_pi;
  Rat weight_sum;  // sum r_i w_i
  std::vector<std::size_t> i_one, i_minus_one, i_plus, i_minus;
};

bool is_pi_independent(const std::vector<IntVec>& generators);
bool is_pi_independent(const Fan& fan, const Cone& cone);

DependenceData dependence_relation(const std::vector<IntVec>& generators);
DependenceData dependence_relation(const Fan& fan, const Cone& cone);

Cone circuit_of(const Fan& fan, const Cone& cone);
bool is_circuit(const Fan& fan, const Cone& cone);

struct PiProfile {
  Int mult;
  int b = 0;
  std::size_t k = 0;
  std::size_t r = 0;

  friend bool operator==(const PiProfile&, const PiProfile&) = default;
  friend std::strong_ordering operator<=>(const PiProfile& a, const PiProfile& b) {
    if (a.mult != b.mult) return a.mult < b.mult ? std::strong_ordering::less : std::strong_ordering::greater;
    if (auto c = a.b <=> b.b; c != 0) return c;
    if (auto c = a.k <=> b.k; c != 0) return c;
    return a.r <=> b.r;
  }
};

struct FanProfile {
  PiProfile g;
  std::size_t s = 0;

  friend bool operator==(const FanProfile&, const FanProfile&) = default;
  friend std::strong_ordering operator<=>(const FanProfile& a, const FanProfile& b) {
    if (auto c = a.g <=> b.g; c != 0) return c;
    return a.s <=> b.s;
  }
};

Int pi_multiplicity(const std::vector<IntVec>& generators);
Int pi_multiplicity(const Fan& fan, const Cone& cone);
PiProfile pi_profile(const std::vector<IntVec>& generators);
PiProfile pi_profile(const Fan& fan, const Cone& cone);
FanProfile fan_profile(const Fan& fan);

/// Every π-independent cone (faces included) has π-multiplicity 1.
bool is_pi_nonsingular(const Fan& fan);

/// Generators of τ all carry coefficients of one sign in η's relation.
/// Vacuously true when η is π-independent.
bool is_codefinite(const Fan& fan, const Cone& tau, const Cone& eta);

/// Coordinates of ν in the cone's generators, if ν lies in their span.
std::optional<RatVec> nu_coordinates(const std::vector<IntVec>& generators);

struct Boundaries {
  std::vector<Cone> lower;
  std::vector<Cone> upper;
};

/// Maximal π-independent faces of the lower and upper boundary.
Boundaries boundaries(const Fan& fan);

/// γ ⊆ η: does the upward (resp. downward) flow leave η + span(γ)?
bool is_upper_in(const Fan& fan, const Cone& gamma, const Cone& eta);
bool is_lower_in(const Fan& fan, const Cone& gamma, const Cone& eta);

enum class Sign { Plus, Minus };

struct SignedSubdivision {
  Fan fan;
  IntVec ray;   // ρ±, primitive, in the relative interior of the circuit
  IntVec v;     // v± = sum of v_i over I±
  Int e;        // v± = e · primitive(v±)
};

/// Primitive lattice ray in relint(σ) above Q>0·v± (midpoint of the two
/// extremal rays of the fiber cone).
IntVec signed_center(const std::vector<IntVec>& circuit_generators, Sign sign);

SignedSubdivision pos_neg_star_subdivide(const Fan& fan, const Cone& circuit, Sign sign);

/// Primitive ray of span(τ) lying over v ∈ relint π(τ), τ π-independent.
IntVec lift_to_face(const std::vector<IntVec>& tau_generators, const IntVec& v);

}  // namespace torfac
