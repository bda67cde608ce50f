#include "torfac/factorization.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "torfac/errors.hpp"

namespace torfac {

namespace {

ConeKey projected_key(const Fan& cobfan, const Cone& cone) {
  ConeKey k;
  for (auto id : cone) k.push_back(ray_pi_data(cobfan.ray(id)).v);
  std::sort(k.begin(), k.end(), lex_less);
  return k;
}

// Fan in N from sorted ray-coordinate keys, without geometric validation.
Fan fan_from_keys(std::size_t rank, const std::vector<ConeKey>& keys) {
  std::vector<IntVec> rays;
  std::map<IntVec, std::size_t> index;
  std::vector<std::vector<std::size_t>> cones;
  for (const auto& k : keys) {
    std::vector<std::size_t> c;
    for (const auto& r : k) {
      auto [it, fresh] = index.emplace(r, rays.size());
      if (fresh) rays.push_back(r);
      c.push_back(it->second);
    }
    cones.push_back(std::move(c));
  }
  return make_fan(rank, rays, cones, false);
}

bool has_key(const Fan& fan, const ConeKey& key) {
  Cone c;
  for (const auto& r : key) {
    auto id = fan.find_ray(r);
    if (!id) return false;
    c.push_back(*id);
  }
  return is_face(fan, make_cone(std::move(c)));
}

Cone ids_of(const Fan& fan, const std::vector<IntVec>& rays) {
  Cone c;
  for (const auto& r : rays) {
    auto id = fan.find_ray(r);
    if (!id) fail(ErrorKind::InternalInvariant, "center ray " + to_string(r) + " missing from its fan");
    c.push_back(*id);
  }
  return make_cone(std::move(c));
}

std::vector<Cone> circuits_of(const Fan& fan) {
  std::set<Cone> seen;
  for (const auto& eta : fan.maximal_cones())
    if (!is_pi_independent(fan, eta)) seen.insert(circuit_of(fan, eta));
  return canonical_order(fan, std::vector<Cone>(seen.begin(), seen.end()));
}

std::string keys_text(const std::vector<IntVec>& rays) {
  std::string s = "<";
  for (std::size_t i = 0; i < rays.size(); ++i) s += (i ? "," : "") + to_string(rays[i]);
  return s + ">";
}

}  // namespace

Fan project_cones(const Fan& cobfan, const std::vector<Cone>& cones) {
  const std::size_t n = cobfan.ambient_rank() - 1;
  std::set<ConeKey> keys;
  for (const auto& c : cones) {
    if (!is_pi_independent(cobfan, c))
      fail(ErrorKind::InvalidInput, "cannot project the pi-dependent cone " + keys_text(cobfan.generators(c)));
    if (!keys.insert(projected_key(cobfan, c)).second)
      fail(ErrorKind::ProjectionNotAFan, "two boundary faces project onto the same cone");
  }
  if (keys.empty()) return Fan::assemble(n, false, {}, {});
  Fan f = fan_from_keys(n, std::vector<ConeKey>(keys.begin(), keys.end()));
  if (f.maximal_cones().size() != keys.size())
    fail(ErrorKind::ProjectionNotAFan, "a projected boundary face lies inside another one");
  if (!is_face_to_face(f)) fail(ErrorKind::ProjectionNotAFan, "projected boundary faces overlap");
  return f;
}

BoundaryFans boundary_fans(const Fan& cobfan) {
  if (!cobfan.is_cobordism()) fail(ErrorKind::InvalidInput, "boundary of a fan that is not a cobordism fan");
  auto b = boundaries(cobfan);
  return {project_cones(cobfan, b.lower), project_cones(cobfan, b.upper)};
}

Precedence precedence(const Fan& cobfan) {
  Precedence p;
  p.circuits = circuits_of(cobfan);
  std::map<Cone, std::size_t> index;
  for (std::size_t i = 0; i < p.circuits.size(); ++i) index[p.circuits[i]] = i;
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& gamma : all_cones(cobfan)) {
    if (!is_pi_independent(cobfan, gamma)) continue;
    std::optional<std::size_t> above, below;
    for (const auto& eta : maximal_cones_containing(cobfan, gamma)) {
      if (is_pi_independent(cobfan, eta)) continue;
      // x + εν stays in η exactly when γ is not a lower face of η
      if (!is_lower_in(cobfan, gamma, eta)) above = index.at(circuit_of(cobfan, eta));
      if (!is_upper_in(cobfan, gamma, eta)) below = index.at(circuit_of(cobfan, eta));
    }
    if (above && below && *above != *below) edges.emplace(*above, *below);
  }
  p.edges.assign(edges.begin(), edges.end());
  return p;
}

std::optional<std::vector<std::size_t>> topological_order(std::size_t m,
                                                          const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  // Kahn's algorithm, smallest index first
  std::vector<std::size_t> indegree(m, 0);
  std::vector<std::vector<std::size_t>> succ(m);
  for (auto [i, j] : edges) {
    succ[i].push_back(j);
    ++indegree[j];
  }
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t i = 0; i < m; ++i)
    if (indegree[i] == 0) ready.push(i);
  std::vector<std::size_t> out;
  while (!ready.empty()) {
    const std::size_t i = ready.top();
    ready.pop();
    out.push_back(i);
    for (auto j : succ[i])
      if (--indegree[j] == 0) ready.push(j);
  }
  if (out.size() != m) return std::nullopt;
  return out;
}

namespace {

// Vertices left over by Kahn's algorithm: on a cycle or downstream of one.
std::vector<std::size_t> cycle_members(std::size_t m, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::size_t> indegree(m, 0);
  std::vector<std::vector<std::size_t>> succ(m);
  for (auto [i, j] : edges) {
    succ[i].push_back(j);
    ++indegree[j];
  }
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < m; ++i)
    if (indegree[i] == 0) stack.push_back(i);
  while (!stack.empty()) {
    auto i = stack.back();
    stack.pop_back();
    for (auto j : succ[i])
      if (--indegree[j] == 0) stack.push_back(j);
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < m; ++i)
    if (indegree[i] > 0) out.push_back(i);
  return out;
}

}  // namespace

std::vector<Cone> circuit_order(const Fan& cobfan, const std::optional<WeightCertificate>& certificate) {
  const Precedence p = precedence(cobfan);
  const std::size_t m = p.circuits.size();
  if (certificate) {
    std::map<ConeKey, Rat> w(certificate->weights.begin(), certificate->weights.end());
    std::vector<Rat> a(m);
    for (std::size_t i = 0; i < m; ++i) {
      auto it = w.find(cone_key(cobfan, p.circuits[i]));
      if (it == w.end())
        fail(ErrorKind::BadCertificate, "no weight for circuit " + keys_text(cone_key(cobfan, p.circuits[i])));
      a[i] = it->second;
    }
    for (auto [i, j] : p.edges)
      if (!(a[i] < a[j]))
        fail(ErrorKind::BadCertificate, "weights do not increase from " + keys_text(cone_key(cobfan, p.circuits[i])) +
                                            " to " + keys_text(cone_key(cobfan, p.circuits[j])));
    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t x, std::size_t y) { return a[x] < a[y]; });
    std::vector<Cone> out;
    for (auto i : perm) out.push_back(p.circuits[i]);
    return out;
  }
  auto order = topological_order(m, p.edges);
  if (!order) {
    std::string names;
    for (auto i : cycle_members(m, p.edges)) names += " " + keys_text(cone_key(cobfan, p.circuits[i]));
    fail(ErrorKind::NotFiltrable, "precedence cycle through" + names);
  }
  std::vector<Cone> out;
  for (auto i : *order) out.push_back(p.circuits[i]);
  return out;
}

ElementaryResult elementary_step(const Fan& cobfan, const Cone& sigma) {
  if (!cobfan.is_cobordism()) fail(ErrorKind::InvalidInput, "elementary step on a fan that is not a cobordism fan");
  if (!is_pi_nonsingular(cobfan)) fail(ErrorKind::NotPiNonsingular, "cobordism fan is not pi-nonsingular");
  const Precedence p = precedence(cobfan);
  auto pos = std::find(p.circuits.begin(), p.circuits.end(), sigma);
  if (pos == p.circuits.end()) fail(ErrorKind::NotACircuit, "not a circuit of a maximal cone of the fan");
  const std::size_t si = static_cast<std::size_t>(pos - p.circuits.begin());
  for (auto [i, j] : p.edges)
    if (j == si)
      fail(ErrorKind::NotMinimal,
           "circuit " + keys_text(cone_key(cobfan, p.circuits[i])) + " has to come first");

  const std::size_t n = cobfan.ambient_rank() - 1;
  const auto star = maximal_cones_containing(cobfan, sigma);
  std::vector<Cone> outside;
  for (const auto& c : cobfan.maximal_cones())
    if (!is_subset(sigma, c)) outside.push_back(c);
  const Boundaries local = boundaries(Fan::assemble(cobfan.ambient_rank(), true, cobfan.rays(), star));

  ElementaryResult res;
  FactorizationStep& st = res.step;
  st.circuit = sigma;
  st.circuit_rays = cobfan.generators(sigma);
  const auto d = dependence_relation(st.circuit_rays);
  std::vector<IntVec> lower_rays, upper_rays;
  for (auto i : d.i_plus) lower_rays.push_back(d.ray_pi[i].v);
  for (auto i : d.i_minus) upper_rays.push_back(d.ray_pi[i].v);
  st.v = IntVec(n, 0);
  for (const auto& r : lower_rays) st.v = add(st.v, r);
  IntVec other(n, 0);
  for (const auto& r : upper_rays) other = add(other, r);
  st.sum_identity = other == st.v;

  st.lower_fan = boundary_fans(cobfan).lower;
  std::set<ConeKey> drop;
  for (const auto& g : local.lower) {
    ConeKey k = projected_key(cobfan, g);
    if (!has_key(st.lower_fan, k))
      fail(ErrorKind::InternalInvariant, "lower boundary of the star is not on the lower boundary");
    drop.insert(std::move(k));
  }
  std::vector<ConeKey> keys;
  for (const auto& c : st.lower_fan.maximal_cones()) {
    ConeKey k = cone_key(st.lower_fan, c);
    if (!drop.count(k)) keys.push_back(std::move(k));
  }
  for (const auto& g : local.upper) keys.push_back(projected_key(cobfan, g));
  st.upper_fan = fan_from_keys(n, keys);

  st.lower_center = ids_of(st.lower_fan, lower_rays);
  st.upper_center = ids_of(st.upper_fan, upper_rays);
  st.lower_noop = st.lower_center.size() == 1;
  st.upper_noop = st.upper_center.size() == 1;
  st.centers_smooth = is_face(st.lower_fan, st.lower_center) && is_face(st.upper_fan, st.upper_center) &&
                      is_smooth(st.lower_fan, st.lower_center) && is_smooth(st.upper_fan, st.upper_center);
  st.middle_fan = star_subdivide(st.lower_fan, st.v);
  st.middle_agrees = same_fan(st.middle_fan, star_subdivide(st.upper_fan, st.v));

  std::vector<Cone> kept = outside;
  kept.insert(kept.end(), local.upper.begin(), local.upper.end());
  for (auto& c : kept) c = make_cone(std::move(c));
  std::sort(kept.begin(), kept.end());
  res.remaining = Fan::assemble(cobfan.ambient_rank(), true, cobfan.rays(), std::move(kept));
  return res;
}

Factorization factorize(const Fan& cobfan, const FactorizeOptions& options) {
  Factorization out;
  out.working_fan = cobfan;
  if (!is_pi_nonsingular(cobfan)) {
    auto r = pi_desingularize(cobfan, options.desing);
    out.working_fan = r.fan;
    out.report.desingularized = true;
    out.report.desing_outer_iterations = r.outer_iterations;
  }
  // ordering first: a cycle is reported as such even when the boundaries
  // do not project to fans
  const auto order = circuit_order(out.working_fan, options.certificate);
  const auto ends = boundary_fans(out.working_fan);
  out.report.lower = ends.lower;
  out.report.upper = ends.upper;

  // order was computed on the working fan; ray ids survive the updates
  Fan current = out.working_fan;
  bool chain = true;
  for (const auto& sigma : order) {
    auto r = elementary_step(current, sigma);
    const Fan& expected = out.steps.empty() ? ends.lower : out.steps.back().upper_fan;
    if (!same_fan(r.step.lower_fan, expected)) chain = false;
    out.steps.push_back(std::move(r.step));
    current = std::move(r.remaining);
  }
  const Fan& last = out.steps.empty() ? ends.lower : out.steps.back().upper_fan;
  if (!same_fan(last, ends.upper)) chain = false;
  out.report.chain_consistent = chain;
  out.report.all_middle_agree = std::all_of(out.steps.begin(), out.steps.end(), [](const auto& s) { return s.middle_agrees; });
  out.report.all_sums_hold = std::all_of(out.steps.begin(), out.steps.end(), [](const auto& s) { return s.sum_identity; });
  out.report.all_centers_smooth =
      std::all_of(out.steps.begin(), out.steps.end(), [](const auto& s) { return s.centers_smooth; });
  return out;
}

std::string describe(const FactorizationStep& step) {
  const auto lo = cone_key(step.lower_fan, step.lower_center);
  const auto up = cone_key(step.upper_fan, step.upper_center);
  std::ostringstream os;
  os << "blowdown along V(" << keys_text(lo) << ")" << (step.lower_noop ? " [no-op]" : "") << " / blowup along V("
     << keys_text(up) << ")" << (step.upper_noop ? " [no-op]" : "");
  // one side trivial: the other fan is a plain blowup
  auto center_name = [](const Fan& f, const std::vector<IntVec>& c) {
    if (c.size() == f.ambient_rank() && f.maximal_cones().size() == 1) return std::string("origin");
    return "V(" + keys_text(c) + ")";
  };
  if (step.lower_noop && !step.upper_noop)
    os << " (lower is the blowup of " << center_name(step.upper_fan, up) << ")";
  else if (step.upper_noop && !step.lower_noop)
    os << " (upper is the blowup of " << center_name(step.lower_fan, lo) << ")";
  return os.str();
}

Fan cobordism_of_blowup(const Fan& sigma, const Cone& c) {
  if (sigma.is_cobordism()) fail(ErrorKind::InvalidInput, "expected a fan in N, got a cobordism fan");
  if (c.empty() || !is_face(sigma, c)) fail(ErrorKind::NotSmoothCenter, "center is not a cone of the fan");
  if (!is_smooth(sigma, c)) fail(ErrorKind::NotSmoothCenter, "center cone is not smooth");
  const std::size_t n = sigma.ambient_rank();
  std::vector<IntVec> rays;
  for (const auto& r : sigma.rays()) {
    IntVec x = r;
    x.push_back(0);
    rays.push_back(std::move(x));
  }
  const RayId nu = rays.size();
  IntVec up(n + 1, 0);
  up[n] = 1;
  rays.push_back(up);
  std::vector<Cone> cones;
  for (const auto& m : sigma.maximal_cones()) {
    Cone lifted = m;
    lifted.push_back(nu);
    cones.push_back(std::move(lifted));
  }
  std::sort(cones.begin(), cones.end());
  // not flagged as a cobordism: it contains ν until the last step
  Fan cyl = Fan::assemble(n + 1, false, rays, cones);
  IntVec rho(n + 1, 0);
  for (auto id : c) rho = add(rho, rays[id]);
  rho[n] = 1;
  Cone face = c;
  face.push_back(nu);
  Fan sub = star_subdivide_face(cyl, face, rho);
  // dropping ν from every cone keeps the faces that are not deleted
  std::vector<Cone> kept;
  for (const auto& m : sub.maximal_cones())
    kept.push_back(std::binary_search(m.begin(), m.end(), nu) ? without(m, nu) : m);
  std::sort(kept.begin(), kept.end());
  Fan raw = Fan::assemble(n + 1, true, sub.rays(), std::move(kept));
  return compact(raw);
}

WeightActionReport from_weights(const std::vector<Int>& a) {
  if (a.size() < 2) fail(ErrorKind::BadWeights, "need at least two weights");
  Int g = 0;
  bool pos = false, neg = false;
  for (const auto& x : a) {
    if (x == 0) fail(ErrorKind::BadWeights, "zero weight");
    g = gcd(g, x);
    if (x > 0) pos = true;
    if (x < 0) neg = true;
  }
  if (g != 1) fail(ErrorKind::BadWeights, "weights are not coprime");
  if (!pos || !neg) fail(ErrorKind::BadWeights, "weights need both signs");

  WeightActionReport rep;
  for (const auto& x : a)
    if (x < 0) rep.weights.push_back(x);
  rep.alpha = rep.weights.size();
  for (const auto& x : a)
    if (x > 0) rep.weights.push_back(x);
  const std::size_t amb = rep.weights.size();
  const std::size_t n = amb - 1;

  // basis of Z^{n+1} ending with the weight vector; rays are the coordinates
  // of the standard basis in it, so the weight vector becomes ν
  IntVec w(rep.weights.begin(), rep.weights.end());
  auto rows = saturation_completion({w}, amb);
  if (rows.front() != w) rows.front() = scale(rows.front(), -1);
  if (rows.front() != w) fail(ErrorKind::InternalInvariant, "completion does not start with the weight vector");
  std::vector<IntVec> basis(rows.begin() + 1, rows.end());
  basis.push_back(w);
  std::vector<IntVec> rays;
  for (std::size_t i = 0; i < amb; ++i) {
    IntVec e(amb, 0);
    e[i] = 1;
    auto co = coordinates_in(basis, e);
    if (!co) fail(ErrorKind::InternalInvariant, "completion is not a basis");
    IntVec r;
    for (const auto& q : *co) {
      if (q.get_den() != 1) fail(ErrorKind::InternalInvariant, "completion is not unimodular");
      r.push_back(q.get_num());
    }
    rays.push_back(std::move(r));
  }
  std::vector<std::size_t> all(amb);
  std::iota(all.begin(), all.end(), 0);
  rep.cobordism = make_fan(amb, rays, {all}, true);
  auto ends = boundary_fans(rep.cobordism);
  rep.lower_quotient_fan = ends.lower;
  rep.upper_quotient_fan = ends.upper;
  if (rep.alpha >= 2 && rep.alpha <= n) {
    std::vector<Int> minus, plus;
    for (std::size_t i = 0; i < rep.alpha; ++i) minus.push_back(-rep.weights[i]);
    for (std::size_t i = rep.alpha; i < amb; ++i) plus.push_back(rep.weights[i]);
    rep.fiber_weights_minus = std::move(minus);
    rep.fiber_weights_plus = std::move(plus);
  }
  return rep;
}

}  // namespace torfac
