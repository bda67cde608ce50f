#include "torfac/desing.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <set>
#include <unordered_map>

#include "torfac/errors.hpp"

namespace torfac {

std::string_view to_string(StepKind kind) {
  switch (kind) {
    case StepKind::FundamentalA: return "prop-fondamentale-A";
    case StepKind::FundamentalB: return "prop-fondamentale-B";
    case StepKind::Repair: return "prop-finale";
    case StepKind::ParSubdivision: return "par-subdivision";
  }
  return "unknown";
}

namespace {

std::vector<IntVec> projected(const Fan& fan, const Cone& cone) {
  std::vector<IntVec> vs;
  for (auto id : cone) vs.push_back(ray_pi_data(fan.ray(id)).v);
  return vs;
}

struct ConeHash {
  std::size_t operator()(const Cone& c) const {
    std::size_t h = c.size();
    for (auto id : c) h = h * 1000003u ^ id;
    return h;
  }
};

// Ray ids do not change while a fan is refined (the table only grows), so
// everything computed from a cone's rays can be memoized by id set for one
// run.
class Cache {
 public:
  bool independent(const Fan& fan, const Cone& c) {
    auto it = independent_.find(c);
    if (it == independent_.end()) it = independent_.emplace(c, is_pi_independent(fan, c)).first;
    return it->second;
  }

  const DependenceData& dependence(const Fan& fan, const Cone& c) {
    auto it = dependence_.find(c);
    if (it == dependence_.end()) it = dependence_.emplace(c, dependence_relation(fan, c)).first;
    return it->second;
  }

  // lattice index of the primitive projections of a π-independent cone
  const Int& index(const Fan& fan, const Cone& c) {
    auto it = index_.find(c);
    if (it == index_.end()) it = index_.emplace(c, lattice_index(projected(fan, c))).first;
    return it->second;
  }

  const PiProfile& profile(const Fan& fan, const Cone& c) {
    auto it = profile_.find(c);
    if (it != profile_.end()) return it->second;
    PiProfile p;
    if (independent(fan, c)) {
      p.mult = index(fan, c);
    } else {
      const DependenceData& d = dependence(fan, c);
      p.mult = 0;
      for (std::size_t i = 0; i < c.size(); ++i)
        if (d.r[i] != 0) p.mult = std::max(p.mult, index(fan, without(c, c[i])));
      const std::size_t ones = d.i_one.size() + d.i_minus_one.size();
      if (ones >= 2) {
        p.b = 1;
        p.k = d.i_plus.size() + d.i_minus.size();
        p.r = ones;
      }
    }
    return profile_.emplace(c, p).first->second;
  }

  // Consecutive fans of a run share most of their cones, so the profile
  // counts are updated from the difference of the sorted cone lists.
  FanProfile fan_profile(const Fan& fan) {
    const auto& prev = tracked_.maximal_cones();
    const auto& next = fan.maximal_cones();
    auto a = prev.begin(), b = next.begin();
    while (a != prev.end() || b != next.end()) {
      if (b == next.end() || (a != prev.end() && *a < *b)) {
        auto it = counts_.find(profile_.at(*a++));
        if (--it->second == 0) counts_.erase(it);
      } else if (a == prev.end() || *b < *a) {
        ++counts_[profile(fan, *b++)];
      } else {
        ++a;
        ++b;
      }
    }
    tracked_ = fan;
    if (counts_.empty()) fail(ErrorKind::InvalidInput, "profile of an empty fan");
    return {counts_.rbegin()->first, counts_.rbegin()->second};
  }

  bool codefinite(const Fan& fan, const Cone& tau, const Cone& eta) {
    if (independent(fan, eta)) return true;
    const DependenceData& d = dependence(fan, eta);
    bool nonneg = true, nonpos = true;
    for (std::size_t i = 0; i < eta.size(); ++i) {
      if (!std::binary_search(tau.begin(), tau.end(), eta[i])) continue;
      if (d.r[i] < 0) nonneg = false;
      if (d.r[i] > 0) nonpos = false;
    }
    return nonneg || nonpos;
  }

  Cone circuit(const Fan& fan, const Cone& eta) {
    const DependenceData& d = dependence(fan, eta);
    Cone c;
    for (std::size_t i = 0; i < eta.size(); ++i)
      if (d.r[i] != 0) c.push_back(eta[i]);
    return c;
  }

 private:
  std::unordered_map<Cone, bool, ConeHash> independent_;
  std::unordered_map<Cone, DependenceData, ConeHash> dependence_;
  std::unordered_map<Cone, Int, ConeHash> index_;
  std::unordered_map<Cone, PiProfile, ConeHash> profile_;
  Fan tracked_;
  std::map<PiProfile, std::size_t> counts_;
};

std::optional<Cone> minimal_singular_face(Cache& cache, const Fan& fan, const Cone& gamma) {
  std::vector<Cone> best;
  std::size_t best_dim = 0;
  for (const auto& f : faces_of(gamma)) {
    if (best_dim && f.size() > best_dim) break;
    if (!cache.independent(fan, f)) continue;
    if (cache.index(fan, f) == 1) continue;
    best_dim = f.size();
    best.push_back(f);
  }
  if (best.empty()) return std::nullopt;
  return canonical_order(fan, best).front();
}

// τ, v and ρ for a codimension-1 face γ chosen in step 1.
void choose_center(Cache& cache, const Fan& fan, Selection& sel) {
  auto tau = minimal_singular_face(cache, fan, sel.gamma);
  if (!tau) fail(ErrorKind::InternalInvariant, "selected face has no pi-singular face");
  sel.tau = *tau;
  auto par = enumerate_parallelepiped(projected(fan, sel.tau));
  if (par.empty()) fail(ErrorKind::InternalInvariant, "minimal pi-singular face with empty parallelepiped");
  // The pieces of an independent cone through τ get multiplicity mult·a_i,
  // so prefer the point whose largest coordinate a_i is smallest.
  const auto basis = projected(fan, sel.tau);
  Rat best_max = 2;
  for (const auto& p : par) {
    const RatVec a = *coordinates_in(basis, p);
    const Rat m = *std::max_element(a.begin(), a.end());
    if (m < best_max) {
      best_max = m;
      sel.v = p;
    }
  }
  sel.rho = lift_to_face(fan.generators(sel.tau), sel.v);
}

// Codimension-1 face of a π-dependent cone of maximal π-multiplicity.
Cone max_multiplicity_facet(Cache& cache, const Fan& fan, const Cone& eta) {
  const DependenceData& d = cache.dependence(fan, eta);
  Int best = 0;
  std::vector<Cone> candidates;
  for (std::size_t i = 0; i < eta.size(); ++i) {
    if (d.r[i] == 0) continue;
    Cone g = without(eta, eta[i]);
    const Int& m = cache.index(fan, g);
    if (m > best) {
      best = m;
      candidates.clear();
    }
    if (m == best) candidates.push_back(g);
  }
  return canonical_order(fan, candidates).front();
}

Selection step1_select(Cache& cache, const Fan& fan) {
  const FanProfile fp = cache.fan_profile(fan);
  if (fp.g.mult == 1) fail(ErrorKind::AlreadyNonsingular, "fan is already pi-nonsingular");
  std::vector<Cone> attaining;
  for (const auto& c : fan.maximal_cones())
    if (cache.profile(fan, c) == fp.g) attaining.push_back(c);
  Selection sel;
  sel.eta = canonical_order(fan, attaining).front();
  if (cache.independent(fan, sel.eta)) {
    sel.gamma = sel.eta;
    choose_center(cache, fan, sel);
    return sel;
  }
  sel.sigma = cache.circuit(fan, sel.eta);
  if (sel.sigma->size() > 2) {
    sel.branch = Branch::Fundamental;
    return sel;
  }
  sel.gamma = max_multiplicity_facet(cache, fan, sel.eta);
  choose_center(cache, fan, sel);
  return sel;
}

std::optional<FundamentalStep> classify(Cache& cache, const Fan& fan, const Cone& sigma, Sign sign) {
  auto sub = pos_neg_star_subdivide(fan, sigma, sign);
  const PiProfile before = cache.profile(fan, sigma);
  const Int mult = before.mult;
  const RayId rho = *sub.fan.find_ray(sub.ray);
  std::vector<std::size_t> equal;
  for (std::size_t a = 0; a < sigma.size(); ++a) {
    Cone piece = without(sigma, sigma[a]);
    piece.push_back(rho);
    // not cached: the other sign would reuse the same id for its new ray
    const PiProfile p = pi_profile(sub.fan, make_cone(piece));
    if (p > before) return std::nullopt;
    if (p == before) equal.push_back(a);
  }
  FundamentalStep out;
  out.sign = sign;
  out.ray = sub.ray;
  if (equal.empty()) {
    out.kind = FundamentalCase::A;
    out.fan = std::move(sub.fan);
    return out;
  }
  if (equal.size() != 1) return std::nullopt;
  const RayId dropped = sigma[equal.front()];
  Cone gamma_prime = without(sigma, dropped);
  if (!cache.independent(fan, gamma_prime) || cache.index(fan, gamma_prime) != mult) return std::nullopt;
  Cone kappa = gamma_prime;
  kappa.push_back(rho);
  out.kind = FundamentalCase::B;
  out.kappa = make_cone(kappa);
  out.gamma_prime = gamma_prime;
  out.dropped = dropped;
  out.fan = std::move(sub.fan);
  return out;
}

FundamentalStep fundamental_step(Cache& cache, const Fan& fan, const Cone& sigma) {
  if (cache.independent(fan, sigma) || cache.circuit(fan, sigma).size() != sigma.size())
    fail(ErrorKind::NotACircuit, "cone is not a circuit");
  if (sigma.size() <= 2) fail(ErrorKind::DimensionTooSmall, "circuit of dimension <= 2");
  const Sign first = preferred_sign(cache.dependence(fan, sigma));
  const Sign second = first == Sign::Plus ? Sign::Minus : Sign::Plus;
  for (Sign s : {first, second})
    if (auto r = classify(cache, fan, sigma, s)) return std::move(*r);
  fail(ErrorKind::InternalInvariant, "neither signed subdivision of the circuit falls in case A or B");
}

Fan make_codefinite(Cache& cache, const Fan& fan, const Cone& tau, const TraceSink& sink, std::size_t max_steps) {
  Fan current = fan;
  FanProfile prev = cache.fan_profile(current);
  for (std::size_t step = 0;; ++step) {
    std::vector<Cone> containing = maximal_cones_containing(current, tau);
    if (containing.empty()) fail(ErrorKind::InternalInvariant, "repair step subdivided the face itself");
    std::vector<Cone> offending;
    for (auto& eta : containing)
      if (!cache.codefinite(current, tau, eta)) offending.push_back(std::move(eta));
    if (offending.empty()) return current;
    if (step >= max_steps) fail(ErrorKind::IterationCapExceeded, "codefinite repair did not finish");
    const Cone eta = canonical_order(current, std::move(offending)).front();
    const Cone sigma = cache.circuit(current, eta);
    if (sigma.size() <= 2) fail(ErrorKind::InternalInvariant, "non-codefinite face along a circuit of dimension <= 2");
    IntVec center;
    if (cache.profile(current, sigma).mult == 1) {
      auto s = pos_neg_star_subdivide(current, sigma, Sign::Plus);
      current = std::move(s.fan);
      center = s.ray;
    } else {
      auto s = fundamental_step(cache, current, sigma);
      current = std::move(s.fan);
      center = s.ray;
    }
    const FanProfile now = cache.fan_profile(current);
    if (now > prev) fail(ErrorKind::InternalInvariant, "codefinite repair increased the fan profile");
    prev = now;
    if (sink) sink(StepKind::Repair, center, current);
  }
}

}  // namespace

std::optional<Cone> minimal_singular_face(const Fan& fan, const Cone& gamma) {
  Cache cache;
  return minimal_singular_face(cache, fan, gamma);
}

Selection step1_select(const Fan& fan) {
  Cache cache;
  return step1_select(cache, fan);
}

Sign preferred_sign(const DependenceData& d) {
  const std::size_t i1 = d.i_one.size(), im1 = d.i_minus_one.size();
  const std::size_t ip = d.i_plus.size(), im = d.i_minus.size();
  if (i1 + im1 == 1) return i1 == 1 ? Sign::Plus : Sign::Minus;
  if (i1 >= 1 && !(im1 == 1 && im == 1)) return Sign::Plus;
  if (im1 >= 1 && !(i1 == 1 && ip == 1)) return Sign::Minus;
  return Sign::Plus;
}

FundamentalStep prop_fondamentale_step(const Fan& fan, const Cone& sigma) {
  Cache cache;
  return fundamental_step(cache, fan, sigma);
}

Fan make_codefinite(const Fan& fan, const Cone& tau, const TraceSink& sink, std::size_t max_steps) {
  if (!is_face(fan, tau)) fail(ErrorKind::NotAFace, "tau is not a face of the fan");
  Cache cache;
  return make_codefinite(cache, fan, tau, sink, max_steps);
}

DesingResult pi_desingularize(const Fan& input, const DesingOptions& options) {
  if (!input.is_cobordism()) fail(ErrorKind::InvalidInput, "pi-desingularization needs a cobordism fan");
  DesingResult result;
  Fan current = input;
  Cache cache;
  FanProfile prev = cache.fan_profile(current);
  std::size_t outer = 0;

  auto record = [&](StepKind kind, const IntVec& ray, const Fan& f) {
    result.trace.entries.push_back({kind, ray, cache.fan_profile(f), outer});
  };

  while (prev.g.mult != 1) {
    if (options.deadline && std::chrono::steady_clock::now() > *options.deadline)
      fail(ErrorKind::IterationCapExceeded, "pi-desingularization ran past its deadline");
    if (++outer > options.max_iterations)
      fail(ErrorKind::IterationCapExceeded, "pi-desingularization exceeded " + std::to_string(options.max_iterations) +
                                                " outer iterations");
    Selection sel = step1_select(cache, current);
    bool finished = false;
    if (sel.branch == Branch::Fundamental) {
      auto fs = fundamental_step(cache, current, *sel.sigma);
      current = std::move(fs.fan);
      record(fs.kind == FundamentalCase::A ? StepKind::FundamentalA : StepKind::FundamentalB, fs.ray, current);
      if (fs.kind == FundamentalCase::A) {
        finished = true;
      } else {
        sel.gamma = without(sel.eta, *fs.dropped);
        if (!minimal_singular_face(cache, current, sel.gamma)) {
          // the surviving face is already π-nonsingular; fall back to the
          // cone that replaced η and its maximal facet
          Cone host = sel.gamma;
          host.push_back(*current.find_ray(fs.ray));
          host = make_cone(host);
          sel.gamma = cache.independent(current, host) ? host : max_multiplicity_facet(cache, current, host);
        }
        choose_center(cache, current, sel);
      }
    }
    if (!finished) {
      current = make_codefinite(cache, current, sel.tau, record, options.max_iterations);
      current = star_subdivide_face(current, sel.tau, sel.rho);
      record(StepKind::ParSubdivision, sel.rho, current);
    }
    const FanProfile now = cache.fan_profile(current);
    if (!(now < prev)) fail(ErrorKind::InternalInvariant, "fan profile did not decrease in an outer iteration");
    prev = now;
  }

  result.outer_iterations = outer;
  std::set<ConeKey> out_cones;
  for (const auto& c : all_cones(current)) out_cones.insert(cone_key(current, c));
  for (const auto& c : input.maximal_cones()) {
    if (pi_multiplicity(input, c) != 1) continue;
    ConeKey k = cone_key(input, c);
    if (!out_cones.count(k)) result.split_nonsingular_cones.push_back(k);
  }
  result.fan = std::move(current);
  return result;
}

}  // namespace torfac
