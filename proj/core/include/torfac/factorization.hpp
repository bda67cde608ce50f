#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "torfac/cobordism.hpp"
#include "torfac/desing.hpp"

namespace torfac {

struct BoundaryFans {
  Fan lower;
  Fan upper;
};

/// π of the maximal lower and upper boundary faces, as fans in N.
/// Throws ProjectionNotAFan when projected faces overlap.
BoundaryFans boundary_fans(const Fan& cobfan);

/// Projects π-independent cones of a cobordism fan to a fan in N.
Fan project_cones(const Fan& cobfan, const std::vector<Cone>& cones);

/// Circuits of the π-dependent maximal cones, in canonical order, with the
/// precedence edges. An edge (i, j) means circuits[i] ≺₁ circuits[j]: some
/// cone γ flows up into the star of circuits[i] and down into the star of
/// circuits[j]. The relation only counts cones γ that the flow actually
/// crosses, so stars touching along a side ray do not precede each other.
struct Precedence {
  std::vector<Cone> circuits;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // sorted, unique
};

Precedence precedence(const Fan& cobfan);

/// Vertices 0..m-1 in topological order (smallest index first among the
/// available ones), or nullopt if the digraph has a cycle.
std::optional<std::vector<std::size_t>> topological_order(std::size_t m,
                                                          const std::vector<std::pair<std::size_t, std::size_t>>& edges);

/// Rational weight a(σ) per circuit, keyed by the circuit's rays.
struct WeightCertificate {
  std::vector<std::pair<ConeKey, Rat>> weights;
};

/// Topological order of the precedence digraph; canonical order breaks ties.
/// With a certificate, the order is by weight (ties canonical) after checking
/// σ ≺₁ σ' ⇒ a(σ) < a(σ'); a violation or a missing circuit throws
/// BadCertificate. A cycle throws NotFiltrable.
std::vector<Cone> circuit_order(const Fan& cobfan, const std::optional<WeightCertificate>& certificate = {});

struct FactorizationStep {
  Cone circuit;          // ray ids of the cobordism fan the step was taken in
  std::vector<IntVec> circuit_rays;
  IntVec v;
  Fan lower_fan;
  Fan upper_fan;
  Fan middle_fan;        // star_subdivide(lower_fan, v)
  Cone lower_center;     // ids into lower_fan
  Cone upper_center;     // ids into upper_fan
  // the center is a single ray: that side is an isomorphism after subdivision
  bool lower_noop = false;
  bool upper_noop = false;
  // checks recorded while building the step
  bool middle_agrees = false;  // star_subdivide(upper_fan, v) == middle_fan
  bool sum_identity = false;   // v = sum of either center's primitive rays
  bool centers_smooth = false;

  bool degenerate() const { return lower_noop && upper_noop; }
};

struct ElementaryResult {
  FactorizationStep step;
  Fan remaining;
};

/// One elementary cobordism at a ≺-minimal circuit σ. The remaining fan keeps
/// the maximal cones outside the star of σ together with the upper boundary
/// faces of that star, so its lower boundary projects to the step's upper fan.
/// Throws NotPiNonsingular, NotACircuit, NotMinimal.
ElementaryResult elementary_step(const Fan& cobfan, const Cone& sigma);

struct FactorizeOptions {
  std::optional<WeightCertificate> certificate;
  DesingOptions desing;
};

struct FactorizationReport {
  bool desingularized = false;
  std::size_t desing_outer_iterations = 0;
  Fan lower;  // π(∂₋) of the (desingularized) input
  Fan upper;  // π(∂₊) of the (desingularized) input
  bool chain_consistent = false;
  bool all_middle_agree = false;
  bool all_sums_hold = false;
  bool all_centers_smooth = false;
};

struct Factorization {
  Fan working_fan;  // the π-nonsingular fan that was factored
  std::vector<FactorizationStep> steps;
  FactorizationReport report;
};

Factorization factorize(const Fan& cobfan, const FactorizeOptions& options = {});

/// "blowdown along V(c) / blowup along V(c')", c the lower center and c' the
/// upper one, with a note when one side is a plain blowup of the other.
std::string describe(const FactorizationStep& step);

/// Cobordism fan in N ⊕ Z whose upper boundary projects to Σ and whose lower
/// boundary projects to the star subdivision of Σ at the sum of c's rays.
/// Throws NotSmoothCenter unless c is a smooth cone of Σ.
Fan cobordism_of_blowup(const Fan& sigma, const Cone& c);

struct WeightActionReport {
  std::vector<Int> weights;  // negatives first, stable otherwise
  std::size_t alpha = 0;     // number of negative weights
  Fan cobordism;             // the orthant with ν sent to the weight vector
  Fan lower_quotient_fan;
  Fan upper_quotient_fan;
  // reported only when 2 <= alpha <= n
  std::optional<std::vector<Int>> fiber_weights_minus;
  std::optional<std::vector<Int>> fiber_weights_plus;
};

/// Throws BadWeights: fewer than two weights, a zero weight, gcd != 1, or a
/// missing sign.
WeightActionReport from_weights(const std::vector<Int>& a);

}  // namespace torfac
