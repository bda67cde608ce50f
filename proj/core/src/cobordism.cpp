#include "torfac/cobordism.hpp"

#include <algorithm>
#include <set>

#include "torfac/errors.hpp"

namespace torfac {

IntVec project(const IntVec& x) { return IntVec(x.begin(), x.end() - 1); }

RayPiData ray_pi_data(const IntVec& ray) {
  IntVec p = project(ray);
  if (is_zero(p)) fail(ErrorKind::VerticalRay, "ray " + to_string(ray) + " projects to zero");
  auto prim = primitive(p);
  RayPiData d;
  d.v = std::move(prim.vec);
  d.c = prim.scale;
  d.w = Rat(ray.back(), d.c);
  d.w.canonicalize();
  return d;
}

std::vector<RayPiData> pi_data(const Fan& fan, const Cone& cone) {
  std::vector<RayPiData> out;
  for (auto id : cone) out.push_back(ray_pi_data(fan.ray(id)));
  return out;
}

namespace {

std::vector<IntVec> projected_primitive(const std::vector<IntVec>& gens) {
  std::vector<IntVec> out;
  for (const auto& g : gens) out.push_back(ray_pi_data(g).v);
  return out;
}

std::vector<IntVec> drop(const std::vector<IntVec>& gens, std::size_t i) {
  std::vector<IntVec> out;
  for (std::size_t j = 0; j < gens.size(); ++j)
    if (j != i) out.push_back(gens[j]);
  return out;
}

}  // namespace

bool is_pi_independent(const std::vector<IntVec>& generators) {
  std::vector<IntVec> p;
  for (const auto& g : generators) p.push_back(project(g));
  return is_independent(p);
}

bool is_pi_independent(const Fan& fan, const Cone& cone) { return is_pi_independent(fan.generators(cone)); }

DependenceData dependence_relation(const std::vector<IntVec>& generators) {
  DependenceData d;
  for (const auto& g : generators) d.ray_pi.push_back(ray_pi_data(g));
  std::vector<IntVec> vs;
  for (const auto& p : d.ray_pi) vs.push_back(p.v);
  auto ker = rational_kernel(vs);
  if (ker.empty()) fail(ErrorKind::PiIndependent, "cone is pi-independent");
  if (ker.size() > 1) fail(ErrorKind::InternalInvariant, "simplicial cone with a kernel of dimension > 1");
  RatVec r = std::move(ker.front());
  Rat m = 0;
  for (const auto& q : r) m = std::max(m, Rat(abs(q)));
  for (auto& q : r) q /= m;
  Rat s = 0;
  for (std::size_t i = 0; i < r.size(); ++i) s += r[i] * d.ray_pi[i].w;
  if (s == 0) fail(ErrorKind::InternalInvariant, "dependence relation with zero weight sum");
  if (s < 0) {
    for (auto& q : r) q = -q;
    s = -s;
  }
  d.r = std::move(r);
  d.weight_sum = s;
  for (std::size_t i = 0; i < d.r.size(); ++i) {
    if (d.r[i] > 0) d.i_plus.push_back(i);
    if (d.r[i] < 0) d.i_minus.push_back(i);
    if (d.r[i] == 1) d.i_one.push_back(i);
    if (d.r[i] == -1) d.i_minus_one.push_back(i);
  }
  return d;
}

DependenceData dependence_relation(const Fan& fan, const Cone& cone) {
  return dependence_relation(fan.generators(cone));
}

Cone circuit_of(const Fan& fan, const Cone& cone) {
  auto d = dependence_relation(fan, cone);
  Cone c;
  for (std::size_t i = 0; i < cone.size(); ++i)
    if (d.r[i] != 0) c.push_back(cone[i]);
  return c;
}

bool is_circuit(const Fan& fan, const Cone& cone) {
  if (is_pi_independent(fan, cone)) return false;
  auto d = dependence_relation(fan, cone);
  return std::none_of(d.r.begin(), d.r.end(), [](const Rat& q) { return q == 0; });
}

Int pi_multiplicity(const std::vector<IntVec>& generators) {
  if (is_pi_independent(generators)) return lattice_index(projected_primitive(generators));
  auto d = dependence_relation(generators);
  Int best = 0;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (d.r[i] == 0) continue;
    best = std::max(best, lattice_index(projected_primitive(drop(generators, i))));
  }
  return best;
}

Int pi_multiplicity(const Fan& fan, const Cone& cone) { return pi_multiplicity(fan.generators(cone)); }

PiProfile pi_profile(const std::vector<IntVec>& generators) {
  PiProfile p;
  if (is_pi_independent(generators)) {
    p.mult = lattice_index(projected_primitive(generators));
    return p;
  }
  auto d = dependence_relation(generators);
  p.mult = 0;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (d.r[i] == 0) continue;
    p.mult = std::max(p.mult, lattice_index(projected_primitive(drop(generators, i))));
  }
  const std::size_t ones = d.i_one.size() + d.i_minus_one.size();
  if (ones >= 2) {
    p.b = 1;
    p.k = d.i_plus.size() + d.i_minus.size();
    p.r = ones;
  }
  return p;
}

PiProfile pi_profile(const Fan& fan, const Cone& cone) { return pi_profile(fan.generators(cone)); }

FanProfile fan_profile(const Fan& fan) {
  if (fan.maximal_cones().empty()) fail(ErrorKind::InvalidInput, "profile of an empty fan");
  FanProfile fp;
  bool first = true;
  for (const auto& c : fan.maximal_cones()) {
    PiProfile p = pi_profile(fan, c);
    if (first || p > fp.g) {
      fp.g = p;
      fp.s = 1;
      first = false;
    } else if (p == fp.g) {
      ++fp.s;
    }
  }
  return fp;
}

bool is_pi_nonsingular(const Fan& fan) {
  for (const auto& c : fan.maximal_cones())
    if (pi_multiplicity(fan, c) != 1) return false;
  return true;
}

bool is_codefinite(const Fan& fan, const Cone& tau, const Cone& eta) {
  if (!is_subset(tau, eta)) fail(ErrorKind::NotAFace, "tau is not a face of eta");
  if (is_pi_independent(fan, eta)) return true;
  auto d = dependence_relation(fan, eta);
  bool nonneg = true, nonpos = true;
  for (std::size_t i = 0; i < eta.size(); ++i) {
    if (!std::binary_search(tau.begin(), tau.end(), eta[i])) continue;
    if (d.r[i] < 0) nonneg = false;
    if (d.r[i] > 0) nonpos = false;
  }
  return nonneg || nonpos;
}

std::optional<RatVec> nu_coordinates(const std::vector<IntVec>& generators) {
  RatVec nu(generators.front().size(), 0);
  nu.back() = 1;
  return coordinates_in(generators, nu);
}

namespace {

// Does sign·ν lie in η + span(γ)?
bool flow_stays(const Fan& fan, const Cone& gamma, const Cone& eta, int sign) {
  auto c = nu_coordinates(fan.generators(eta));
  if (!c) return false;
  for (std::size_t i = 0; i < eta.size(); ++i) {
    if (std::binary_search(gamma.begin(), gamma.end(), eta[i])) continue;
    if (sign * (*c)[i] < 0) return false;
  }
  return true;
}

std::vector<Cone> maximal_only(std::vector<Cone> cones) {
  std::vector<Cone> out;
  for (const auto& c : cones) {
    bool dominated = false;
    for (const auto& d : cones)
      if (d != c && is_subset(c, d)) dominated = true;
    if (!dominated) out.push_back(c);
  }
  return out;
}

}  // namespace

bool is_upper_in(const Fan& fan, const Cone& gamma, const Cone& eta) { return !flow_stays(fan, gamma, eta, -1); }

bool is_lower_in(const Fan& fan, const Cone& gamma, const Cone& eta) { return !flow_stays(fan, gamma, eta, 1); }

Boundaries boundaries(const Fan& fan) {
  std::vector<Cone> upper, lower;
  for (const auto& gamma : all_cones(fan)) {
    if (!is_pi_independent(fan, gamma)) continue;
    bool up = true, down = true;
    for (const auto& eta : maximal_cones_containing(fan, gamma)) {
      if (up && !is_upper_in(fan, gamma, eta)) up = false;
      if (down && !is_lower_in(fan, gamma, eta)) down = false;
      if (!up && !down) break;
    }
    if (up) upper.push_back(gamma);
    if (down) lower.push_back(gamma);
  }
  Boundaries b;
  b.upper = maximal_only(std::move(upper));
  b.lower = maximal_only(std::move(lower));
  return b;
}

IntVec signed_center(const std::vector<IntVec>& gens, Sign sign) {
  auto d = dependence_relation(gens);
  const auto& idx = (sign == Sign::Plus) ? d.i_plus : d.i_minus;
  const std::size_t n = gens.front().size();
  // x0 = sum over I± of ρ_i / c_i lies over v±
  RatVec x0(n, 0);
  for (auto i : idx)
    for (std::size_t c = 0; c < n; ++c) x0[c] += Rat(gens[i][c]) / d.ray_pi[i].c;
  // coordinates of x0 + sν are λ0 + s·κ with κ the coordinates of ν
  auto kappa = nu_coordinates(gens);
  if (!kappa) fail(ErrorKind::InternalInvariant, "circuit does not contain the vertical direction in its span");
  std::optional<Rat> lo, hi;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const Rat& k = (*kappa)[i];
    if (k == 0) fail(ErrorKind::NotACircuit, "relation has a zero coefficient");
    const Rat lambda0 = std::binary_search(idx.begin(), idx.end(), i) ? Rat(1) / d.ray_pi[i].c : Rat(0);
    const Rat bound = -lambda0 / k;
    if (k > 0) {
      if (!lo || bound > *lo) lo = bound;
    } else {
      if (!hi || bound < *hi) hi = bound;
    }
  }
  if (!lo || !hi || *lo >= *hi) fail(ErrorKind::InternalInvariant, "degenerate fiber cone over the center vector");
  RatVec a = x0, b = x0;
  a.back() += *lo;
  b.back() += *hi;
  return primitive(add(primitive_on_ray(a), primitive_on_ray(b))).vec;
}

SignedSubdivision pos_neg_star_subdivide(const Fan& fan, const Cone& circuit, Sign sign) {
  if (!is_circuit(fan, circuit)) fail(ErrorKind::NotACircuit, "cone is not a circuit");
  const auto gens = fan.generators(circuit);
  auto d = dependence_relation(gens);
  const auto& idx = (sign == Sign::Plus) ? d.i_plus : d.i_minus;
  SignedSubdivision out;
  out.v = IntVec(fan.ambient_rank() - 1, 0);
  for (auto i : idx) out.v = add(out.v, d.ray_pi[i].v);
  out.e = primitive(out.v).scale;
  out.ray = signed_center(gens, sign);
  out.fan = star_subdivide_face(fan, circuit, out.ray);
  return out;
}

IntVec lift_to_face(const std::vector<IntVec>& tau, const IntVec& v) {
  std::vector<IntVec> vs;
  std::vector<RayPiData> pd;
  for (const auto& g : tau) {
    pd.push_back(ray_pi_data(g));
    vs.push_back(pd.back().v);
  }
  auto a = coordinates_in(vs, v);
  if (!a) fail(ErrorKind::InternalInvariant, "point is not in the span of the projected face");
  const std::size_t n = tau.front().size();
  RatVec x(n, 0);
  for (std::size_t i = 0; i < tau.size(); ++i)
    for (std::size_t c = 0; c < n; ++c) x[c] += (*a)[i] / pd[i].c * tau[i][c];
  return primitive_on_ray(x);
}

}  // namespace torfac
