#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "torfac/io.hpp"

namespace fs = std::filesystem;
using torfac::io::json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args, const std::string& in = "") {
  args.insert(args.begin(), "torfac");
  std::istringstream is(in);
  std::ostringstream os, es;
  const int code = torfac::cli::run(args, is, os, es);
  return {code, os.str(), es.str()};
}

std::string data(const std::string& name) { return std::string(TORFAC_TEST_DATA) + "/" + name; }

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("torfac_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("pidesing of the multiplicity two cone writes three rays and a trace") {
    TempDir d;
    auto r = run({"pidesing", data("e2.json"), "-o", d / "out.json", "--trace", d / "t.jsonl", "--check"});
    CHECK(r.code == 0);
    const json out = json::parse(slurp(d / "out.json"));
    CHECK(out["format"] == 1);
    CHECK(out["rays"].size() == 3);
    CHECK_FALSE(slurp(d / "t.jsonl").empty());
  }

  TEST_CASE("pidesing of a pi-nonsingular fan leaves the trace empty") {
    TempDir d;
    auto r = run({"pidesing", data("e1.json"), "-o", d / "out.json", "--trace", d / "t.jsonl"});
    CHECK(r.code == 0);
    CHECK(slurp(d / "t.jsonl").empty());
  }

  TEST_CASE("malformed input exits 2 and writes nothing") {
    TempDir d;
    auto r = run({"pidesing", data("malformed.json"), "-o", d / "out.json"});
    CHECK(r.code == 2);
    CHECK_FALSE(fs::exists(d / "out.json"));
    CHECK(run({"validate", "-"}, "{\"format\": 1, \"rays\": ").code == 2);
  }

  TEST_CASE("unknown options exit 2") { CHECK(run({"factor", "--no-such-flag", data("e1.json")}).code == 2); }

  TEST_CASE("factor of the blowup of a point gives one step") {
    auto r = run({"factor", data("e1.json"), "--verify"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    REQUIRE(j["steps"].size() == 1);
    CHECK(j["steps"][0]["summary"].get<std::string>().find("blowup of origin") != std::string::npos);
    CHECK(r.err.find("step 1:") != std::string::npos);
  }

  TEST_CASE("a precedence cycle exits 3 without output") {
    TempDir d;
    auto r = run({"factor", data("cycle.json"), "-o", d / "f.json"});
    CHECK(r.code == 3);
    CHECK(r.err.find("NotFiltrable") != std::string::npos);
    CHECK_FALSE(fs::exists(d / "f.json"));
  }

  TEST_CASE("blowup cobordism piped into factor has a ray-pair center") {
    auto b = run({"cobordism", "blowup", data("a3.json"), "--cone", "0,1"});
    REQUIRE(b.code == 0);
    auto r = run({"factor", "-", "--verify"}, b.out);
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    REQUIRE(j["steps"].size() == 1);
    const json& s = j["steps"][0];
    const std::size_t lo = s["lower_center"].size(), up = s["upper_center"].size();
    CHECK(std::max(lo, up) == 2);
    CHECK(std::min(lo, up) == 1);
  }

  TEST_CASE("ideal weight generators") {
    auto r = run({"ideal", "weight", "--weights", "2,1,-1", "--alpha", "2"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    std::set<std::vector<long>> gens;
    for (const auto& g : j["generators"]) gens.insert(g.get<std::vector<long>>());
    CHECK(gens == std::set<std::vector<long>>{{1, 0, 0}, {0, 2, 0}});
  }

  TEST_CASE("ideal weight with a in the cone exits 2") {
    CHECK(run({"ideal", "weight", "--weights", "1,1", "--alpha", "1"}).code == 2);
  }

  TEST_CASE("ideal subdivide gives three cells") {
    auto r = run({"ideal", "subdivide", "--weights", "2,1,-1", "--alphas", "-1,1,2"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["subdivision"]["cells"].size() == 3);
  }

  TEST_CASE("repeated runs are byte identical") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"factor", data("e1.json")},
             {"pidesing", data("e2.json")},
             {"boundaries", data("e1.json")},
             {"cobordism", "weights", "--weights", "2,1,-1"},
         }) {
      auto a = run(args), b = run(args);
      CHECK(a.code == 0);
      CHECK(a.out == b.out);
    }
  }
}

TEST_SUITE("io") {
  TEST_CASE("large integers travel as strings") {
    const torfac::Int big("123456789012345678901234567890");
    const json j = torfac::io::int_json(big);
    CHECK(j.is_string());
    CHECK(torfac::io::int_from_json(j) == big);
    CHECK(torfac::io::int_json(torfac::Int(-7)).is_number_integer());
    CHECK(torfac::io::int_from_json(json("-7")) == -7);
  }

  TEST_CASE("rationals round trip") {
    const torfac::Rat q(-3, 4);
    CHECK(torfac::io::rat_json(q) == "-3/4");
    CHECK(torfac::io::rat_from_json(torfac::io::rat_json(q)) == q);
    CHECK(torfac::io::rat_json(torfac::Rat(5)) == 5);
  }

  TEST_CASE("fan documents round trip") {
    const json j = torfac::io::parse(slurp(data("e1.json")));
    const auto f = torfac::io::fan_from_json(j);
    CHECK(torfac::io::fan_json(torfac::io::fan_from_json(torfac::io::fan_json(f))) == torfac::io::fan_json(f));
  }
}
