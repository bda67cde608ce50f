#include "torfac/io.hpp"

#include <algorithm>
#include <cstdint>

#include "torfac/errors.hpp"

namespace torfac::io {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorKind::InvalidInput, what); }

const json& field(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) bad(std::string("missing field \"") + name + "\"");
  return *it;
}

std::size_t size_from_json(const json& j, const char* what) {
  Int x = int_from_json(j);
  if (x < 0 || !x.fits_ulong_p()) bad(std::string(what) + " must be a nonnegative integer");
  return x.get_ui();
}

json keys_json(const std::vector<IntVec>& rays) {
  json a = json::array();
  for (const auto& r : rays) a.push_back(vec_json(r));
  return a;
}

json sizes_json(const std::vector<Int>& xs) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(int_json(x));
  return a;
}

}  // namespace

json int_json(const Int& x) {
  if (x.fits_slong_p()) return json(static_cast<std::int64_t>(x.get_si()));
  return json(x.get_str());
}

Int int_from_json(const json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Int(std::to_string(j.get<std::uint64_t>()));
    return Int(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) bad("empty integer string");
    for (std::size_t k = i; k < s.size(); ++k)
      if (s[k] < '0' || s[k] > '9') bad("not a decimal integer: \"" + s + "\"");
    return Int(s[0] == '+' ? s.substr(1) : s, 10);
  }
  bad("expected an integer, got " + j.dump());
}

json vec_json(const IntVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(int_json(x));
  return a;
}

IntVec vec_from_json(const json& j) {
  if (!j.is_array()) bad("expected an integer array, got " + j.dump());
  IntVec v;
  for (const auto& x : j) v.push_back(int_from_json(x));
  return v;
}

json rat_json(const Rat& x) {
  if (x.get_den() == 1) return int_json(x.get_num());
  return json(x.get_str());
}

Rat rat_from_json(const json& j) {
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    auto slash = s.find('/');
    if (slash != std::string::npos) {
      Int num = int_from_json(json(s.substr(0, slash)));
      Int den = int_from_json(json(s.substr(slash + 1)));
      if (den == 0) bad("zero denominator in \"" + s + "\"");
      Rat q(num, den);
      q.canonicalize();
      return q;
    }
  }
  return Rat(int_from_json(j));
}

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
}

namespace {

bool has_object(const json& j) {
  if (j.is_object()) return true;
  if (j.is_array())
    for (const auto& x : j)
      if (has_object(x)) return true;
  return false;
}

// like dump(2), but short object-free arrays stay on one line
void write(const json& j, int indent, std::string& out) {
  const std::string pad(indent + 2, ' ');
  if (j.is_object() && !j.empty()) {
    out += "{\n";
    bool first = true;
    for (const auto& [k, v] : j.items()) {
      out += (first ? "" : ",\n") + pad + json(k).dump() + ": ";
      write(v, indent + 2, out);
      first = false;
    }
    out += "\n" + std::string(indent, ' ') + "}";
  } else if (j.is_array() && !j.empty()) {
    if (!has_object(j)) {
      std::string flat = j.dump();
      if (flat.size() + indent <= 100) {
        // "[1,2]" -> "[1, 2]"
        std::string spaced;
        bool in_string = false;
        for (char ch : flat) {
          spaced += ch;
          if (ch == '"') in_string = !in_string;
          if (ch == ',' && !in_string) spaced += ' ';
        }
        out += spaced;
        return;
      }
    }
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out += (i ? ",\n" : "") + pad;
      write(j[i], indent + 2, out);
    }
    out += "\n" + std::string(indent, ' ') + "]";
  } else {
    out += j.dump();
  }
}

}  // namespace

std::string dump(const json& j) {
  std::string out;
  write(j, 0, out);
  return out + "\n";
}

json fan_body(const Fan& fan) {
  const Fan c = compact(fan);
  json cones = json::array();
  for (const auto& m : canonical_order(c, c.maximal_cones())) cones.push_back(m);
  return json{{"ambient_rank", c.ambient_rank()},
              {"cobordism", c.is_cobordism()},
              {"rays", keys_json(c.rays())},
              {"maximal_cones", std::move(cones)}};
}

json fan_json(const Fan& fan) {
  json j = fan_body(fan);
  j["format"] = kFormat;
  return j;
}

Fan fan_from_json(const json& j, ValidateLevel level) {
  if (!j.is_object()) bad("a fan must be a JSON object");
  if (auto it = j.find("format"); it != j.end() && *it != kFormat) bad("unsupported format " + it->dump());
  const std::size_t rank = size_from_json(field(j, "ambient_rank"), "ambient_rank");
  if (rank == 0) bad("ambient_rank must be positive");
  const json& cob = field(j, "cobordism");
  if (!cob.is_boolean()) bad("\"cobordism\" must be a boolean");
  const json& rj = field(j, "rays");
  const json& cj = field(j, "maximal_cones");
  if (!rj.is_array() || !cj.is_array()) bad("\"rays\" and \"maximal_cones\" must be arrays");
  std::vector<IntVec> rays;
  for (const auto& r : rj) {
    rays.push_back(vec_from_json(r));
    if (rays.back().size() != rank) bad("ray " + r.dump() + " does not have " + std::to_string(rank) + " entries");
  }
  std::vector<std::vector<std::size_t>> cones;
  for (const auto& c : cj) {
    if (!c.is_array()) bad("a maximal cone must be an array of ray indices");
    std::vector<std::size_t> idx;
    for (const auto& i : c) {
      idx.push_back(size_from_json(i, "ray index"));
      if (idx.back() >= rays.size()) bad("ray index " + i.dump() + " out of range");
    }
    cones.push_back(std::move(idx));
  }
  return make_fan(rank, rays, cones, cob.get<bool>(), level);
}

json trace_entry_json(const TraceEntry& e) {
  return json{{"kind", std::string(to_string(e.kind))},
              {"center_ray", vec_json(e.center_ray)},
              {"outer_iteration", e.outer_iteration},
              {"profile_after",
               {{"mult", int_json(e.profile_after.g.mult)},
                {"b", e.profile_after.g.b},
                {"k", e.profile_after.g.k},
                {"r", e.profile_after.g.r},
                {"s", e.profile_after.s}}}};
}

std::string trace_jsonl(const DesingTrace& trace) {
  std::string out;
  for (const auto& e : trace.entries) out += trace_entry_json(e).dump() + "\n";
  return out;
}

json step_json(const FactorizationStep& step) {
  return json{{"circuit", keys_json(step.circuit_rays)},
              {"v", vec_json(step.v)},
              {"lower_fan", fan_body(step.lower_fan)},
              {"upper_fan", fan_body(step.upper_fan)},
              {"middle_fan", fan_body(step.middle_fan)},
              {"lower_center", keys_json(cone_key(step.lower_fan, step.lower_center))},
              {"upper_center", keys_json(cone_key(step.upper_fan, step.upper_center))},
              {"lower_noop", step.lower_noop},
              {"upper_noop", step.upper_noop},
              {"degenerate", step.degenerate()},
              {"checks",
               {{"middle_agrees", step.middle_agrees},
                {"sum_identity", step.sum_identity},
                {"centers_smooth", step.centers_smooth}}},
              {"summary", describe(step)}};
}

json factorization_json(const Factorization& f) {
  json steps = json::array(), summary = json::array();
  for (const auto& s : f.steps) {
    steps.push_back(step_json(s));
    summary.push_back(describe(s));
  }
  const auto& r = f.report;
  return json{{"format", kFormat},
              {"working_fan", fan_body(f.working_fan)},
              {"lower", fan_body(r.lower)},
              {"upper", fan_body(r.upper)},
              {"steps", std::move(steps)},
              {"summary", std::move(summary)},
              {"report",
               {{"desingularized", r.desingularized},
                {"desing_outer_iterations", r.desing_outer_iterations},
                {"chain_consistent", r.chain_consistent},
                {"all_middle_agree", r.all_middle_agree},
                {"all_sums_hold", r.all_sums_hold},
                {"all_centers_smooth", r.all_centers_smooth}}}};
}

WeightCertificate certificate_from_json(const json& j) {
  if (!j.is_object()) bad("a certificate must be a JSON object");
  if (auto it = j.find("format"); it != j.end() && *it != kFormat) bad("unsupported format " + it->dump());
  const json& w = field(j, "weights");
  if (!w.is_array()) bad("\"weights\" must be an array");
  WeightCertificate c;
  for (const auto& e : w) {
    if (!e.is_object()) bad("certificate entries are objects");
    const json& cj = field(e, "circuit");
    if (!cj.is_array()) bad("\"circuit\" must be a list of rays");
    ConeKey key;
    for (const auto& r : cj) key.push_back(primitive(vec_from_json(r)).vec);
    std::sort(key.begin(), key.end());
    c.weights.emplace_back(std::move(key), rat_from_json(field(e, "a")));
  }
  return c;
}

json boundaries_json(const BoundaryFans& b) {
  return json{{"format", kFormat}, {"lower", fan_body(b.lower)}, {"upper", fan_body(b.upper)}};
}

json weight_report_json(const WeightActionReport& r) {
  auto opt = [](const std::optional<std::vector<Int>>& x) { return x ? sizes_json(*x) : json(nullptr); };
  return json{{"format", kFormat},
              {"weights", sizes_json(r.weights)},
              {"alpha", r.alpha},
              {"cobordism", fan_body(r.cobordism)},
              {"lower_quotient_fan", fan_body(r.lower_quotient_fan)},
              {"upper_quotient_fan", fan_body(r.upper_quotient_fan)},
              {"fiber_weights_minus", opt(r.fiber_weights_minus)},
              {"fiber_weights_plus", opt(r.fiber_weights_plus)}};
}

json ideal_json(const MonomialIdeal& ideal) {
  return json{{"format", kFormat},
              {"chart_rank", ideal.chart_rank},
              {"poly_count", ideal.poly_count},
              {"generators", keys_json(ideal.generators)}};
}

MonomialIdeal ideal_from_json(const json& j) {
  if (!j.is_object()) bad("an ideal must be a JSON object");
  if (auto it = j.find("format"); it != j.end() && *it != kFormat) bad("unsupported format " + it->dump());
  MonomialIdeal id;
  id.poly_count = size_from_json(field(j, "poly_count"), "poly_count");
  const json& g = field(j, "generators");
  if (!g.is_array()) bad("\"generators\" must be an array");
  for (const auto& m : g) id.generators.push_back(vec_from_json(m));
  if (auto it = j.find("chart_rank"); it != j.end())
    id.chart_rank = size_from_json(*it, "chart_rank");
  else if (!id.generators.empty())
    id.chart_rank = id.generators.front().size();
  else
    bad("an empty ideal needs \"chart_rank\"");
  for (const auto& m : id.generators)
    if (m.size() != id.chart_rank) bad("generator " + to_string(m) + " has the wrong length");
  if (id.poly_count > id.chart_rank) bad("poly_count exceeds chart_rank");
  return id;
}

json newton_json(const NewtonSubdivision& ns) {
  json cells = json::array();
  for (const auto& c : ns.cells) cells.push_back(json{{"rays", keys_json(c.rays)}, {"active", vec_json(c.active)}});
  return json{{"format", kFormat},
              {"base_cone", keys_json(ns.base_cone)},
              {"cells", std::move(cells)},
              {"exceptional_rays", keys_json(ns.exceptional_rays)}};
}

}  // namespace torfac::io
