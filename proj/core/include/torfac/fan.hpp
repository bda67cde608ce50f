#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "torfac/lattice.hpp"

namespace torfac {

using RayId = std::size_t;

/// A simplicial cone, as sorted indices into its fan's ray table.
using Cone = std::vector<RayId>;

enum class ValidateLevel { Light, Full };

/// A simplicial fan stored by its maximal cones. The ray table may only
/// grow: operations that add rays append them, so ray ids stay stable
/// across subdivisions of the same fan.
class Fan {
 public:
  Fan() = default;

  /// Assembles a fan from already-primitive rays and sorted cones. Drops
  /// duplicate cones and cones whose ray set sits inside another one. No
  /// geometric checks; use make_fan for untrusted data.
  static Fan assemble(std::size_t ambient_rank, bool cobordism, std::vector<IntVec> rays,
                      std::vector<Cone> cones);

  std::size_t ambient_rank() const { return rank_; }
  bool is_cobordism() const { return cobordism_; }
  const std::vector<IntVec>& rays() const { return *rays_; }
  const IntVec& ray(RayId id) const { return (*rays_)[id]; }
  const std::vector<Cone>& maximal_cones() const { return *cones_; }

  std::vector<IntVec> generators(const Cone& cone) const;
  std::optional<RayId> find_ray(const IntVec& primitive_ray) const;

  /// Ray id of `primitive_ray`, appending it to the table if absent.
  RayId intern_ray(const IntVec& primitive_ray);

 private:
  std::size_t rank_ = 0;
  bool cobordism_ = false;
  // immutable and shared between copies
  std::shared_ptr<const std::vector<IntVec>> rays_ = std::make_shared<const std::vector<IntVec>>();
  std::shared_ptr<const std::vector<Cone>> cones_ = std::make_shared<const std::vector<Cone>>();
};

/// Validating constructor. Rays are primitivized and duplicates merged
/// (first occurrence wins); cone indices refer to the input list.
Fan make_fan(std::size_t ambient_rank, const std::vector<IntVec>& rays,
             const std::vector<std::vector<std::size_t>>& maximal_cones, bool is_cobordism,
             ValidateLevel level = ValidateLevel::Light);

Int multiplicity(const Fan& fan, const Cone& cone);
bool is_smooth(const Fan& fan, const Cone& cone);

/// Sorted, duplicate-free cone from arbitrary ray ids.
Cone make_cone(std::vector<RayId> ids);

/// Nonempty faces of a cone (all nonempty subsets), smallest first.
std::vector<Cone> faces_of(const Cone& cone);

/// Every nonempty cone of the fan (faces of maximal cones), deduplicated.
std::vector<Cone> all_cones(const Fan& fan);

bool is_subset(const Cone& small, const Cone& big);
bool is_face(const Fan& fan, const Cone& cone);
Cone without(const Cone& cone, RayId id);

std::vector<Cone> open_star(const Fan& fan, const Cone& sigma);
Fan closed_star(const Fan& fan, const Cone& sigma);

/// Maximal cones of the fan that contain sigma.
std::vector<Cone> maximal_cones_containing(const Fan& fan, const Cone& sigma);

Fan star_subdivide(const Fan& fan, const IntVec& rho);
/// Same result as star_subdivide when rho lies in the relative interior of
/// the cone `face` of the fan; only the cones containing `face` are split.
/// Skips the membership solves, so the caller vouches for the position.
Fan star_subdivide_face(const Fan& fan, const Cone& face, const IntVec& rho);
Fan smooth_resolve(const Fan& fan);

/// Exact membership of x in the cone spanned by `generators` (independent).
bool cone_contains(const std::vector<IntVec>& generators, const RatVec& x);
bool support_contains(const Fan& fan, const RatVec& x);

/// True iff the two simplicial cones meet along their common face.
bool meet_in_common_face(const Fan& fan, const Cone& a, const Cone& b);
bool is_face_to_face(const Fan& fan);

/// Cone described by its sorted ray coordinates; independent of ray ids.
using ConeKey = std::vector<IntVec>;
ConeKey cone_key(const Fan& fan, const Cone& cone);

/// Sorted list of maximal-cone keys; two fans are equal iff these agree.
std::vector<ConeKey> canonical_form(const Fan& fan);
bool same_fan(const Fan& a, const Fan& b);

/// Cones sorted by key (deterministic tie-breaking order).
std::vector<Cone> canonical_order(const Fan& fan, std::vector<Cone> cones);

/// Copy of the fan with unused rays dropped and rays renumbered in order
/// of first appearance in the canonical cone list.
Fan compact(const Fan& fan);

}  // namespace torfac
