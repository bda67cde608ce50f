#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "torfac/cobordism.hpp"

namespace torfac {

enum class StepKind { FundamentalA, FundamentalB, Repair, ParSubdivision };

/// "prop-fondamentale-A", "prop-fondamentale-B", "prop-finale", "par-subdivision".
std::string_view to_string(StepKind kind);

struct TraceEntry {
  StepKind kind;
  IntVec center_ray;
  FanProfile profile_after;
  std::size_t outer_iteration;
};

struct DesingTrace {
  std::vector<TraceEntry> entries;
};

struct DesingOptions {
  std::size_t max_iterations = 10'000;
  // wall-clock budget for test harnesses; checked once per outer iteration
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct DesingResult {
  Fan fan;
  DesingTrace trace;
  std::size_t outer_iterations = 0;
  /// Maximal π-nonsingular input cones that are no longer cones of the
  /// output (the non-interference property failing).
  std::vector<ConeKey> split_nonsingular_cones;
};

DesingResult pi_desingularize(const Fan& fan, const DesingOptions& options = {});

enum class Branch { Fundamental, Direct };

struct Selection {
  Cone eta;
  std::optional<Cone> sigma;  // circuit of eta, if eta is π-dependent
  Branch branch = Branch::Direct;
  // Filled for the direct branch only.
  Cone gamma;
  Cone tau;
  IntVec v;
  IntVec rho;
};

Selection step1_select(const Fan& fan);

enum class FundamentalCase { A, B };

struct FundamentalStep {
  Fan fan;
  FundamentalCase kind = FundamentalCase::A;
  Sign sign = Sign::Plus;
  IntVec ray;
  std::optional<Cone> kappa;        // case B: the cone keeping the profile
  std::optional<Cone> gamma_prime;  // case B: its old codimension-1 face
  std::optional<RayId> dropped;     // case B: the circuit ray missing from kappa
};

/// Sign the case table suggests trying first for the circuit.
Sign preferred_sign(const DependenceData& d);

FundamentalStep prop_fondamentale_step(const Fan& fan, const Cone& sigma);

using TraceSink = std::function<void(StepKind, const IntVec&, const Fan&)>;

/// Signed subdivisions along circuits through τ until τ is codefinite in
/// every maximal cone containing it. τ itself is never subdivided.
Fan make_codefinite(const Fan& fan, const Cone& tau, const TraceSink& sink = {},
                    std::size_t max_steps = 10'000);

/// Minimal-dimension π-singular face of γ (canonical tie-break), or nullopt.
std::optional<Cone> minimal_singular_face(const Fan& fan, const Cone& gamma);

}  // namespace torfac
