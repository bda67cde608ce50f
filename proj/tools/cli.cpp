#include "cli.hpp"

#include <unistd.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "torfac/errors.hpp"
#include "torfac/io.hpp"

namespace torfac::cli {

namespace {

using io::json;

struct Failure {
  int code;
  std::string message;
};

// check failures exit with the internal status
[[noreturn]] void check_failed(const std::string& what) { throw Failure{kInternal, "check failed: " + what}; }

std::string read_input(const std::string& path, std::istream& in) {
  std::ostringstream ss;
  if (path == "-") {
    ss << in.rdbuf();
    return ss.str();
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) fail(ErrorKind::InvalidInput, "cannot read " + path);
  ss << f.rdbuf();
  return ss.str();
}

// Collects everything a command wants to write; nothing is written until
// the command has succeeded.
class Outputs {
 public:
  void add(std::string path, std::string content) { files_.emplace_back(std::move(path), std::move(content)); }

  void commit(std::ostream& out) const {
    for (const auto& [path, content] : files_) {
      if (path.empty() || path == "-") {
        out << content;
        continue;
      }
      namespace fs = std::filesystem;
      const fs::path target(path);
      fs::path tmp = target;
      tmp += ".tmp." + std::to_string(::getpid());
      {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw Failure{kInvalidInput, "cannot write " + path};
        f << content;
        f.flush();
        if (!f) throw Failure{kInvalidInput, "cannot write " + path};
      }
      std::error_code ec;
      fs::rename(tmp, target, ec);
      if (ec) {
        fs::remove(tmp, ec);
        throw Failure{kInvalidInput, "cannot write " + path};
      }
    }
  }

 private:
  std::vector<std::pair<std::string, std::string>> files_;
};

Int parse_int(const std::string& s) {
  return io::int_from_json(json(s));
}

std::vector<Int> parse_int_list(const std::string& s) {
  std::vector<Int> xs;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) xs.push_back(parse_int(item));
  if (xs.empty()) fail(ErrorKind::InvalidInput, "empty integer list");
  return xs;
}

ValidateLevel parse_level(const std::string& s) { return s == "full" ? ValidateLevel::Full : ValidateLevel::Light; }

Fan read_fan(const std::string& path, std::istream& in, ValidateLevel level) {
  return io::fan_from_json(io::parse(read_input(path, in)), level);
}

Fan read_cobordism(const std::string& path, std::istream& in, ValidateLevel level) {
  Fan f = read_fan(path, in, level);
  if (!f.is_cobordism()) fail(ErrorKind::InvalidInput, "expected a cobordism fan (\"cobordism\": true)");
  return f;
}

std::vector<IntVec> orthant(std::size_t n) {
  std::vector<IntVec> s;
  for (std::size_t i = 0; i < n; ++i) {
    IntVec e(n, 0);
    e[i] = 1;
    s.push_back(std::move(e));
  }
  return s;
}

Fan affine_space(std::size_t n) {
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  return make_fan(n, orthant(n), {all}, false);
}

json profile_json(const FanProfile& p) {
  return json{{"mult", io::int_json(p.g.mult)}, {"b", p.g.b}, {"k", p.g.k}, {"r", p.g.r}, {"s", p.s}};
}

// strict decrease between the ends of consecutive outer iterations
bool trace_monotone(const FanProfile& start, const DesingTrace& trace) {
  std::optional<FanProfile> last = start;
  const auto& e = trace.entries;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i + 1 < e.size() && e[i + 1].outer_iteration == e[i].outer_iteration) continue;
    if (!(e[i].profile_after < *last)) return false;
    last = e[i].profile_after;
  }
  return true;
}

std::string verify_factorization(const Factorization& f) {
  const auto& steps = f.steps;
  const Fan* prev = &f.report.lower;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& s = steps[i];
    const std::string at = "step " + std::to_string(i) + ": ";
    if (!same_fan(s.lower_fan, *prev)) return at + "lower fan does not continue the chain";
    prev = &s.upper_fan;
    const Fan a = star_subdivide(s.lower_fan, s.v), b = star_subdivide(s.upper_fan, s.v);
    if (!same_fan(a, b)) return at + "the two star subdivisions at v differ";
    if (!same_fan(a, s.middle_fan)) return at + "middle fan is not the star subdivision at v";
    for (const auto* side : {&s.lower_fan, &s.upper_fan}) {
      const Cone& c = side == &s.lower_fan ? s.lower_center : s.upper_center;
      if (!is_face(*side, c) || !is_smooth(*side, c)) return at + "center is not a smooth cone";
      IntVec sum(s.v.size(), 0);
      for (const auto& r : side->generators(c)) sum = add(sum, r);
      if (sum != s.v) return at + "v is not the sum of the center rays";
    }
  }
  if (!same_fan(*prev, f.report.upper)) return "the chain does not end at the upper boundary";
  return {};
}

// self-test material: weighted actions and blowups of affine space
std::vector<Int> random_weights(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> len(2, 4), val(-3, 3);
  while (true) {
    std::vector<Int> a(len(rng));
    Int g = 0;
    bool pos = false, neg = false, zero = false;
    for (auto& x : a) {
      x = val(rng);
      g = gcd(g, x);
      pos |= x > 0;
      neg |= x < 0;
      zero |= x == 0;
    }
    if (pos && neg && !zero && g == 1) return a;
  }
}

struct Command {
  std::string input = "-";
  std::string output = "-";
  std::string trace;
  std::string level = "light";
  std::string certificate;
  std::string cone;
  std::string weights;
  std::string alpha;
  std::string alphas;
  std::size_t max_iterations = DesingOptions{}.max_iterations;
  std::size_t count = 20;
  bool check = false;
  bool verify = false;
};

void add_level(CLI::App* app, Command& c) {
  app->add_option("--validate-level", c.level, "input validation")->check(CLI::IsMember({"light", "full"}));
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Toric cobordisms: pi-desingularization, weak factorization, weight ideals", "torfac"};
  app.require_subcommand(1);
  Command c;

  auto* validate = app.add_subcommand("validate", "check a fan file and report its invariants");
  auto* pidesing = app.add_subcommand("pidesing", "pi-desingularize a cobordism fan");
  auto* bounds = app.add_subcommand("boundaries", "lower and upper boundary fans of a cobordism fan");
  auto* factor = app.add_subcommand("factor", "factor a cobordism fan into blowups and blowdowns");
  auto* cob = app.add_subcommand("cobordism", "build cobordism fans");
  auto* blowup = cob->add_subcommand("blowup", "cobordism of the blowup of a fan along a smooth cone");
  auto* weights = cob->add_subcommand("weights", "cobordism of a one-parameter weighted action");
  auto* ideal = app.add_subcommand("ideal", "weight ideals on the orthant chart");
  auto* iweight = ideal->add_subcommand("weight", "minimal generators of a weight ideal");
  auto* isub = ideal->add_subcommand("subdivide", "Newton subdivision of a product of weight ideals");
  auto* selftest = app.add_subcommand("selftest", "randomized round trips (seed from TORFAC_SEED)");
  cob->require_subcommand(1);
  ideal->require_subcommand(1);

  for (auto* s : {validate, pidesing, bounds, factor, blowup}) {
    s->add_option("input", c.input, "fan JSON file, - for stdin");
    add_level(s, c);
  }
  for (auto* s : {validate, pidesing, bounds, factor, blowup, weights, iweight, isub, selftest})
    s->add_option("-o,--output", c.output, "output file, - for stdout");
  pidesing->add_option("--trace", c.trace, "JSON-lines trace file");
  pidesing->add_flag("--check", c.check, "re-verify the output before exiting");
  for (auto* s : {pidesing, factor}) s->add_option("--max-iterations", c.max_iterations, "outer iteration cap");
  factor->add_option("--order-certificate", c.certificate, "weights a(sigma) per circuit");
  factor->add_flag("--verify", c.verify, "re-check every step");
  blowup->add_option("--cone", c.cone, "comma separated ray indices of the center")->required();
  weights->add_option("--weights", c.weights, "comma separated weights")->required();
  for (auto* s : {iweight, isub}) s->add_option("--weights", c.weights, "comma separated weights")->required();
  iweight->add_option("--alpha", c.alpha, "weight of the ideal")->required();
  isub->add_option("--alphas", c.alphas, "comma separated weights of the factors")->required();
  selftest->add_option("--count", c.count, "number of random cases");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }

  const ValidateLevel level = parse_level(c.level);
  Outputs outputs;
  try {
    json result;
    if (validate->parsed()) {
      Fan f = read_fan(c.input, in, level);
      bool smooth = true;
      for (const auto& m : f.maximal_cones()) smooth = smooth && is_smooth(f, m);
      result = json{{"format", io::kFormat},
                    {"valid", true},
                    {"validate_level", c.level},
                    {"ambient_rank", f.ambient_rank()},
                    {"cobordism", f.is_cobordism()},
                    {"rays", compact(f).rays().size()},
                    {"maximal_cones", f.maximal_cones().size()},
                    {"smooth", smooth}};
      if (f.is_cobordism()) {
        result["pi_nonsingular"] = is_pi_nonsingular(f);
        result["profile"] = profile_json(fan_profile(f));
        result["circuits"] = precedence(f).circuits.size();
      }
    } else if (pidesing->parsed()) {
      Fan f = read_cobordism(c.input, in, level);
      DesingOptions opt;
      opt.max_iterations = c.max_iterations;
      auto r = pi_desingularize(f, opt);
      if (c.check) {
        if (!is_pi_nonsingular(r.fan)) check_failed("output is not pi-nonsingular");
        if (!trace_monotone(fan_profile(f), r.trace)) check_failed("fan profile is not strictly decreasing");
      }
      result = io::fan_json(r.fan);
      if (!c.trace.empty()) outputs.add(c.trace, io::trace_jsonl(r.trace));
    } else if (bounds->parsed()) {
      result = io::boundaries_json(boundary_fans(read_cobordism(c.input, in, level)));
    } else if (factor->parsed()) {
      Fan f = read_cobordism(c.input, in, level);
      FactorizeOptions opt;
      opt.desing.max_iterations = c.max_iterations;
      if (!c.certificate.empty()) opt.certificate = io::certificate_from_json(io::parse(read_input(c.certificate, in)));
      auto fz = factorize(f, opt);
      if (c.verify) {
        if (auto why = verify_factorization(fz); !why.empty()) check_failed(why);
        const auto& rep = fz.report;
        if (!rep.chain_consistent || !rep.all_middle_agree || !rep.all_sums_hold || !rep.all_centers_smooth)
          check_failed("factorization report flags a failed invariant");
      }
      result = io::factorization_json(fz);
      for (std::size_t i = 0; i < fz.steps.size(); ++i) err << "step " << i + 1 << ": " << describe(fz.steps[i]) << "\n";
      if (fz.steps.empty()) err << "no elementary cobordisms\n";
    } else if (blowup->parsed()) {
      const json doc = io::parse(read_input(c.input, in));
      Fan f = io::fan_from_json(doc, level);
      if (f.is_cobordism()) fail(ErrorKind::InvalidInput, "expected a fan in N, got a cobordism fan");
      Cone center;
      const auto& raw = doc.at("rays");
      for (const auto& i : parse_int_list(c.cone)) {
        if (i < 0 || i >= static_cast<long>(raw.size())) fail(ErrorKind::InvalidInput, "ray index out of range");
        center.push_back(*f.find_ray(primitive(io::vec_from_json(raw[i.get_ui()])).vec));
      }
      result = io::fan_json(cobordism_of_blowup(f, make_cone(center)));
    } else if (weights->parsed()) {
      result = io::weight_report_json(from_weights(parse_int_list(c.weights)));
    } else if (iweight->parsed()) {
      const auto a = parse_int_list(c.weights);
      const Int alpha = parse_int(c.alpha);
      result = io::ideal_json(weight_ideal_generators(orthant(a.size()), a, alpha));
      result["weights"] = io::vec_json(a);
      result["alpha"] = io::int_json(alpha);
    } else if (isub->parsed()) {
      const auto a = parse_int_list(c.weights);
      const auto alphas = parse_int_list(c.alphas);
      const auto sigma = orthant(a.size());
      std::vector<MonomialIdeal> factors;
      json fj = json::array();
      for (const auto& al : alphas) {
        factors.push_back(weight_ideal_generators(sigma, a, al));
        json g = io::ideal_json(factors.back());
        g.erase("format");
        g["alpha"] = io::int_json(al);
        fj.push_back(std::move(g));
      }
      const auto prod = product_ideal(factors);
      const auto ns = newton_subdivision(sigma, prod);
      std::vector<std::vector<IntVec>> cells;
      for (const auto& cell : ns.cells) cells.push_back(cell.rays);
      json checks = json::array();
      for (const auto& t : check_toroidal_action(cells, a, ns.exceptional_rays)) {
        json cone = json::array();
        for (const auto& r : t.cone) cone.push_back(io::vec_json(r));
        checks.push_back(json{{"cone", std::move(cone)},
                              {"ray", io::vec_json(t.ray)},
                              {"splits", t.splits},
                              {"a_in_complement", t.a_in_complement},
                              {"pass", t.pass()}});
      }
      json sub = io::newton_json(ns);
      sub.erase("format");
      json pj = io::ideal_json(prod);
      pj.erase("format");
      result = json{{"format", io::kFormat},
                    {"weights", io::vec_json(a)},
                    {"factors", std::move(fj)},
                    {"product", std::move(pj)},
                    {"subdivision", std::move(sub)},
                    {"toroidal_checks", std::move(checks)}};
    } else if (selftest->parsed()) {
      std::uint64_t seed = 1;
      if (const char* s = std::getenv("TORFAC_SEED")) seed = std::strtoull(s, nullptr, 10);
      std::mt19937_64 rng(seed);
      json failures = json::array();
      for (std::size_t t = 0; t < c.count; ++t) {
        std::string label;
        try {
          if (t % 2 == 0) {
            const auto a = random_weights(rng);
            label = "weights " + to_string(IntVec(a.begin(), a.end()));
            auto fz = factorize(from_weights(a).cobordism);
            if (!verify_factorization(fz).empty() || !fz.report.chain_consistent) failures.push_back(label);
          } else {
            const std::size_t n = 2 + rng() % 2;
            const Fan aff = affine_space(n);
            Cone center;
            for (RayId i = 0; i < n; ++i)
              if (rng() % 2) center.push_back(i);
            if (center.size() < 2) center = {0, 1};
            label = "blowup of A^" + std::to_string(n) + " along " + std::to_string(center.size()) + " rays";
            auto fz = factorize(cobordism_of_blowup(aff, center));
            if (fz.steps.size() != 1 || fz.steps[0].degenerate() || !verify_factorization(fz).empty())
              failures.push_back(label);
          }
        } catch (const Error& e) {
          failures.push_back(label + ": " + e.what());
        }
      }
      result = json{{"format", io::kFormat}, {"seed", seed}, {"cases", c.count}, {"failures", failures}};
      if (!failures.empty()) {
        outputs.add(c.output, io::dump(result));
        outputs.commit(out);
        return kInternal;
      }
    }
    outputs.add(c.output, io::dump(result));
    outputs.commit(out);
    return kOk;
  } catch (const Failure& f) {
    err << "torfac: " << f.message << "\n";
    return f.code;
  } catch (const Error& e) {
    err << "torfac: " << e.what() << "\n";
    if (e.kind() == ErrorKind::NotFiltrable) return kNotFiltrable;
    return e.is_internal() ? kInternal : kInvalidInput;
  } catch (const std::exception& e) {
    err << "torfac: internal error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace torfac::cli
