#include "torfac/fan.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <set>

#include "internal/exact_lp.hpp"
#include "torfac/errors.hpp"

namespace torfac {

Cone make_cone(std::vector<RayId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

bool is_subset(const Cone& small, const Cone& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

Cone without(const Cone& cone, RayId id) {
  Cone out;
  out.reserve(cone.size());
  for (RayId r : cone)
    if (r != id) out.push_back(r);
  return out;
}

Fan Fan::assemble(std::size_t ambient_rank, bool cobordism, std::vector<IntVec> rays, std::vector<Cone> cones) {
  Fan f;
  f.rank_ = ambient_rank;
  f.cobordism_ = cobordism;
  f.rays_ = std::make_shared<const std::vector<IntVec>>(std::move(rays));
  for (auto& c : cones)
    if (!std::is_sorted(c.begin(), c.end())) c = make_cone(std::move(c));
  if (!std::is_sorted(cones.begin(), cones.end())) std::sort(cones.begin(), cones.end());
  cones.erase(std::unique(cones.begin(), cones.end()), cones.end());
  std::size_t widest = 0;
  for (const auto& c : cones) widest = std::max(widest, c.size());
  // only cones narrower than the widest can be redundant
  std::vector<bool> redundant(cones.size(), false);
  for (std::size_t i = 0; i < cones.size(); ++i) {
    if (cones[i].size() == widest) continue;
    for (const auto& k : cones) {
      if (k.size() > cones[i].size() && is_subset(cones[i], k)) {
        redundant[i] = true;
        break;
      }
    }
  }
  std::vector<Cone> kept;
  kept.reserve(cones.size());
  for (std::size_t i = 0; i < cones.size(); ++i)
    if (!redundant[i]) kept.push_back(std::move(cones[i]));
  f.cones_ = std::make_shared<const std::vector<Cone>>(std::move(kept));
  return f;
}

std::vector<IntVec> Fan::generators(const Cone& cone) const {
  std::vector<IntVec> g;
  g.reserve(cone.size());
  for (RayId id : cone) g.push_back((*rays_)[id]);
  return g;
}

std::optional<RayId> Fan::find_ray(const IntVec& primitive_ray) const {
  const auto& rays = *rays_;
  for (RayId i = 0; i < rays.size(); ++i)
    if (rays[i] == primitive_ray) return i;
  return std::nullopt;
}

RayId Fan::intern_ray(const IntVec& primitive_ray) {
  if (auto id = find_ray(primitive_ray)) return *id;
  auto grown = std::make_shared<std::vector<IntVec>>(*rays_);
  grown->push_back(primitive_ray);
  rays_ = std::move(grown);
  return rays_->size() - 1;
}

namespace {

IntVec projection(const IntVec& v) { return IntVec(v.begin(), v.end() - 1); }

RatVec nu(std::size_t rank, int sign) {
  RatVec x(rank, 0);
  x[rank - 1] = sign;
  return x;
}

}  // namespace

bool cone_contains(const std::vector<IntVec>& generators, const RatVec& x) {
  auto c = coordinates_in(generators, x);
  if (!c) return false;
  return std::all_of(c->begin(), c->end(), [](const Rat& q) { return q >= 0; });
}

bool support_contains(const Fan& fan, const RatVec& x) {
  for (const auto& c : fan.maximal_cones())
    if (cone_contains(fan.generators(c), x)) return true;
  return false;
}

bool meet_in_common_face(const Fan& fan, const Cone& a, const Cone& b) {
  Cone common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  if (common.size() == a.size() || common.size() == b.size()) return true;
  // Look for x in a ∩ b whose a-coordinates are not supported on the
  // common rays: lambda, mu >= 0, sum lambda_i a_i - sum mu_j b_j = 0,
  // and the lambda mass outside the common face equals 1.
  const std::size_t n = fan.ambient_rank();
  const std::size_t cols = a.size() + b.size();
  std::vector<RatVec> rows(n + 1, RatVec(cols, 0));
  RatVec rhs(n + 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& g = fan.ray(a[i]);
    for (std::size_t c = 0; c < n; ++c) rows[c][i] = g[c];
    if (!std::binary_search(common.begin(), common.end(), a[i])) rows[n][i] = 1;
  }
  for (std::size_t j = 0; j < b.size(); ++j) {
    const auto& g = fan.ray(b[j]);
    for (std::size_t c = 0; c < n; ++c) rows[c][a.size() + j] = -g[c];
  }
  rhs[n] = 1;
  return !detail::find_nonnegative_solution(rows, rhs).has_value();
}

bool is_face_to_face(const Fan& fan) {
  const auto& cs = fan.maximal_cones();
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = i + 1; j < cs.size(); ++j)
      if (!meet_in_common_face(fan, cs[i], cs[j])) return false;
  return true;
}

Fan make_fan(std::size_t ambient_rank, const std::vector<IntVec>& rays,
             const std::vector<std::vector<std::size_t>>& maximal_cones, bool is_cobordism, ValidateLevel level) {
  if (ambient_rank == 0) fail(ErrorKind::InvalidInput, "ambient rank must be positive");
  if (is_cobordism && ambient_rank < 2) fail(ErrorKind::InvalidInput, "a cobordism fan needs ambient rank >= 2");
  std::vector<IntVec> table;
  std::vector<RayId> remap(rays.size());
  for (std::size_t i = 0; i < rays.size(); ++i) {
    if (rays[i].size() != ambient_rank)
      fail(ErrorKind::InvalidInput, "ray " + std::to_string(i) + " has the wrong length");
    if (is_zero(rays[i])) fail(ErrorKind::InvalidInput, "ray " + std::to_string(i) + " is zero");
    IntVec p = primitive(rays[i]).vec;
    if (is_cobordism && is_zero(projection(p)))
      fail(ErrorKind::VerticalRay, "ray " + to_string(rays[i]) + " projects to zero");
    auto it = std::find(table.begin(), table.end(), p);
    if (it == table.end()) {
      remap[i] = table.size();
      table.push_back(std::move(p));
    } else {
      remap[i] = static_cast<RayId>(it - table.begin());
    }
  }
  std::vector<Cone> cones;
  for (const auto& raw : maximal_cones) {
    if (raw.empty()) fail(ErrorKind::InvalidInput, "empty cone");
    std::vector<RayId> ids;
    for (auto i : raw) {
      if (i >= rays.size()) fail(ErrorKind::InvalidInput, "ray index " + std::to_string(i) + " out of range");
      ids.push_back(remap[i]);
    }
    Cone c = make_cone(ids);
    std::vector<IntVec> gens;
    for (auto id : c) gens.push_back(table[id]);
    if (c.size() != raw.size() || !is_independent(gens))
      fail(ErrorKind::NonSimplicialCone, "cone generators are not linearly independent");
    if (is_cobordism) {
      if (cone_contains(gens, nu(ambient_rank, 1)) || cone_contains(gens, nu(ambient_rank, -1)))
        fail(ErrorKind::NotPiStrictlyConvex, "cone contains the vertical direction");
    }
    cones.push_back(std::move(c));
  }
  Fan f = Fan::assemble(ambient_rank, is_cobordism, std::move(table), std::move(cones));
  if (level == ValidateLevel::Full && !is_face_to_face(f))
    fail(ErrorKind::NotFaceToFace, "two cones do not meet along a common face");
  return f;
}

Int multiplicity(const Fan& fan, const Cone& cone) { return lattice_index(fan.generators(cone)); }

bool is_smooth(const Fan& fan, const Cone& cone) { return multiplicity(fan, cone) == 1; }

std::vector<Cone> faces_of(const Cone& cone) {
  std::vector<Cone> out;
  const std::size_t k = cone.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
    Cone f;
    for (std::size_t i = 0; i < k; ++i)
      if (mask & (std::size_t{1} << i)) f.push_back(cone[i]);
    out.push_back(std::move(f));
  }
  std::stable_sort(out.begin(), out.end(), [](const Cone& a, const Cone& b) { return a.size() < b.size(); });
  return out;
}

std::vector<Cone> all_cones(const Fan& fan) {
  std::set<Cone> seen;
  for (const auto& c : fan.maximal_cones())
    for (auto& f : faces_of(c)) seen.insert(std::move(f));
  return {seen.begin(), seen.end()};
}

bool is_face(const Fan& fan, const Cone& cone) {
  for (const auto& c : fan.maximal_cones())
    if (is_subset(cone, c)) return true;
  return false;
}

std::vector<Cone> maximal_cones_containing(const Fan& fan, const Cone& sigma) {
  std::vector<Cone> out;
  for (const auto& c : fan.maximal_cones())
    if (is_subset(sigma, c)) out.push_back(c);
  return out;
}

std::vector<Cone> open_star(const Fan& fan, const Cone& sigma) {
  if (!is_face(fan, sigma)) fail(ErrorKind::NotAFace, "cone is not a face of the fan");
  std::set<Cone> out;
  for (const auto& c : maximal_cones_containing(fan, sigma))
    for (auto& f : faces_of(c))
      if (is_subset(sigma, f)) out.insert(std::move(f));
  return {out.begin(), out.end()};
}

Fan closed_star(const Fan& fan, const Cone& sigma) {
  if (!is_face(fan, sigma)) fail(ErrorKind::NotAFace, "cone is not a face of the fan");
  return Fan::assemble(fan.ambient_rank(), fan.is_cobordism(), fan.rays(), maximal_cones_containing(fan, sigma));
}

Fan star_subdivide(const Fan& fan, const IntVec& rho) {
  const IntVec p = primitive(rho).vec;
  if (fan.find_ray(p)) {
    const RayId id = *fan.find_ray(p);
    for (const auto& c : fan.maximal_cones())
      if (std::binary_search(c.begin(), c.end(), id)) return fan;
  }
  std::vector<IntVec> rays = fan.rays();
  RayId new_id = rays.size();
  if (auto existing = fan.find_ray(p)) {
    new_id = *existing;  // listed in the table but unused by any cone
  } else {
    rays.push_back(p);
  }
  const RatVec x = to_rat(p);
  bool found = false;
  std::vector<Cone> cones;
  for (const auto& tau : fan.maximal_cones()) {
    auto coords = coordinates_in(fan.generators(tau), x);
    const bool inside = coords && std::all_of(coords->begin(), coords->end(), [](const Rat& q) { return q >= 0; });
    if (!inside) {
      cones.push_back(tau);
      continue;
    }
    found = true;
    for (std::size_t i = 0; i < tau.size(); ++i) {
      if ((*coords)[i] == 0) continue;
      Cone c = without(tau, tau[i]);
      c.push_back(new_id);
      cones.push_back(make_cone(std::move(c)));
    }
  }
  if (!found) fail(ErrorKind::OutsideSupport, "subdivision ray " + to_string(p) + " lies outside the support");
  return Fan::assemble(fan.ambient_rank(), fan.is_cobordism(), std::move(rays), std::move(cones));
}

Fan star_subdivide_face(const Fan& fan, const Cone& face, const IntVec& rho) {
  if (!is_face(fan, face)) fail(ErrorKind::NotAFace, "subdivision face is not a cone of the fan");
  const IntVec p = primitive(rho).vec;
  std::vector<IntVec> rays = fan.rays();
  RayId new_id = rays.size();
  if (auto existing = fan.find_ray(p)) {
    if (face.size() == 1 && face.front() == *existing) return fan;
    new_id = *existing;
  } else {
    rays.push_back(p);
  }
  std::vector<Cone> kept, pieces;
  kept.reserve(fan.maximal_cones().size());
  for (const auto& eta : fan.maximal_cones()) {
    if (!is_subset(face, eta)) {
      kept.push_back(eta);
      continue;
    }
    for (auto id : face) {
      Cone c = without(eta, id);
      c.push_back(new_id);
      pieces.push_back(make_cone(std::move(c)));
    }
  }
  std::sort(pieces.begin(), pieces.end());
  std::vector<Cone> cones;
  cones.reserve(kept.size() + pieces.size());
  std::merge(std::make_move_iterator(kept.begin()), std::make_move_iterator(kept.end()),
             std::make_move_iterator(pieces.begin()), std::make_move_iterator(pieces.end()), std::back_inserter(cones));
  return Fan::assemble(fan.ambient_rank(), fan.is_cobordism(), std::move(rays), std::move(cones));
}

ConeKey cone_key(const Fan& fan, const Cone& cone) {
  ConeKey k = fan.generators(cone);
  std::sort(k.begin(), k.end(), lex_less);
  return k;
}

std::vector<ConeKey> canonical_form(const Fan& fan) {
  std::vector<ConeKey> keys;
  for (const auto& c : fan.maximal_cones()) keys.push_back(cone_key(fan, c));
  std::sort(keys.begin(), keys.end());
  return keys;
}

bool same_fan(const Fan& a, const Fan& b) {
  return a.ambient_rank() == b.ambient_rank() && canonical_form(a) == canonical_form(b);
}

std::vector<Cone> canonical_order(const Fan& fan, std::vector<Cone> cones) {
  std::vector<std::pair<ConeKey, Cone>> keyed;
  for (auto& c : cones) keyed.emplace_back(cone_key(fan, c), std::move(c));
  std::sort(keyed.begin(), keyed.end());
  std::vector<Cone> out;
  for (auto& kc : keyed) out.push_back(std::move(kc.second));
  return out;
}

Fan compact(const Fan& fan) {
  std::vector<bool> used(fan.rays().size(), false);
  for (const auto& c : fan.maximal_cones())
    for (auto id : c) used[id] = true;
  std::vector<RayId> remap(fan.rays().size());
  std::vector<IntVec> rays;
  for (RayId i = 0; i < fan.rays().size(); ++i) {
    if (!used[i]) continue;
    remap[i] = rays.size();
    rays.push_back(fan.ray(i));
  }
  std::vector<Cone> cones;
  for (const auto& c : fan.maximal_cones()) {
    Cone n;
    for (auto id : c) n.push_back(remap[id]);
    cones.push_back(std::move(n));
  }
  return Fan::assemble(fan.ambient_rank(), fan.is_cobordism(), std::move(rays), std::move(cones));
}

Fan smooth_resolve(const Fan& fan) {
  Fan current = fan;
  while (true) {
    std::vector<Cone> singular;
    std::size_t best_dim = 0;
    for (const auto& c : all_cones(current)) {
      if (best_dim && c.size() > best_dim) continue;
      if (is_smooth(current, c)) continue;
      if (!best_dim || c.size() < best_dim) {
        singular.clear();
        best_dim = c.size();
      }
      singular.push_back(c);
    }
    if (singular.empty()) return current;
    const Cone tau = canonical_order(current, singular).front();
    const auto points = enumerate_parallelepiped(current.generators(tau));
    if (points.empty()) fail(ErrorKind::InternalInvariant, "minimal singular cone has no interior lattice point");
    current = star_subdivide(current, points.front());
  }
}

}  // namespace torfac
