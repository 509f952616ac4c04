#include <catch_amalgamated.hpp>

#include <sstream>

#include "lab.hpp"

using namespace cotangent;
using io::Json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = lab::run_lab(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(COTANGENT_DATA_DIR) + "/" + name; }

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST_CASE("omega prints fibers, presentations and the unit") {
  Run set = invoke({"omega", "--context", "set", data("X.json")});
  CHECK(set.code == 0);
  CHECK(first_line(set.out) == "fiber a: Z, fiber b: Z");

  Run nat = invoke({"omega", "--context", "monoid", data("nat.json"), "--bound", "8"});
  CHECK(nat.code == 0);
  CHECK(first_line(nat.out) ==
        "fiber 0: 0, fiber 1: Z, fiber 2: Z, fiber 3: Z, fiber 4: Z, fiber 5: Z, fiber 6: Z, fiber 7: Z, fiber 8: Z");
  CHECK(nat.out.find("transition 7 -> 8: [[1]]") != std::string::npos);

  Run cusp = invoke({"omega", "--context", "ring", data("cusp.alg")});
  CHECK(cusp.code == 0);
  CHECK(first_line(cusp.out) == "gens dx,dy; rel -3x^2*dx + 2y*dy");
  CHECK(cusp.out.find("unit: x -> dx, y -> dy") != std::string::npos);
}

TEST_CASE("check verdicts and exit codes") {
  Run seq = invoke({"check", "first-sequence", "--context", "set", data("f.json")});
  CHECK(seq.code == 0);
  CHECK(first_line(seq.out) == "EXACT");

  Run loc = invoke({"check", "epi", "--context", "ring", data("loc.hom")});
  CHECK(loc.code == 0);
  CHECK(first_line(loc.out) == "EPI (iso)");

  CHECK(first_line(invoke({"check", "first-sequence", "--context", "monoid", data("z4_to_z2.json")}).out) == "EXACT");
  CHECK(first_line(invoke({"check", "first-sequence", "--context", "ring", data("proj.hom")}).out) == "EXACT");
  CHECK(first_line(invoke({"check", "base-change", "--context", "ring", data("qx.alg"), data("gauss.alg")}).out) ==
        "ISO");
  CHECK(first_line(invoke({"check", "base-change", "--context", "set", data("X.json"), data("Z.json")}).out) == "ISO");
  CHECK(first_line(invoke({"check", "nat-omega", "--bound", "8"}).out).rfind("OK:", 0) == 0);

  Run ens = invoke({"check", "ens", "--context", "set", "--exhaustive", "5"});
  CHECK(ens.code == 0);
  CHECK(first_line(ens.out) == "OK: 5705 maps verified (|X|, |Y| <= 5)");

  // a non-epimorphism is a precondition error, not a theorem failure
  Run notepi = invoke({"check", "epi", "--context", "ring", data("cusp.hom")});
  CHECK(notepi.code == 2);
  CHECK(notepi.out.empty());
  CHECK(notepi.err.rfind("precondition failed:", 0) == 0);
  CHECK(invoke({"check", "epi", "--context", "set", data("g.json")}).code == 2);

  // a failing verdict maps to 1
  lab::RunConfig cfg;
  cfg.theorem = "first-sequence";
  std::ostringstream sink;
  CHECK(lab::detail::emit(cfg, {false, "NOT EXACT (not_epi, generator 0)", Json::object()}, sink) == 1);
}

TEST_CASE("usage and parse errors exit with 2") {
  Run bad = invoke({"omega", "--context", "ring", data("bad.alg")});
  CHECK(bad.code == 2);
  CHECK(bad.err == "parse error: line 3, column 11: unexpected '$'\n");
  CHECK(invoke({"omega", "--context", "lie", data("X.json")}).code == 2);
  CHECK(invoke({"omega", data("X.json")}).code == 2);
  CHECK(invoke({"check", "epi", "--context", "ring"}).code == 2);
  CHECK(invoke({"check", "frobenius", "--context", "ring", data("loc.hom")}).code == 2);
  CHECK(invoke({"omega", "--context", "set", data("does-not-exist.json")}).code == 2);
  CHECK(invoke({"omega", "--context", "monoid", data("z2.json"), "--bound", "3"}).code == 2);
  CHECK(invoke({"check", "ens", "--exhaustive", "9"}).code == 2);
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"--help"}).code == 0);

  // a JSON syntax error is located in the file
  Run json = invoke({"omega", "--context", "set", data("broken.json")});
  CHECK(json.code == 2);
  CHECK(json.err.find("line 2, column") != std::string::npos);
  // a hom that is not well defined is an input error
  Run hom = invoke({"check", "first-sequence", "--context", "monoid", data("not_a_hom.json")});
  CHECK(hom.code == 2);
  CHECK(hom.err.rfind("invalid input:", 0) == 0);
}

TEST_CASE("printed JSON re-parses to the computed value") {
  Run set = invoke({"omega", "--context", "set", "--format", "json", data("X.json")});
  REQUIRE(set.code == 0);
  sets::SetBeckModule sm = io::set_module_from_json(Json::parse(set.out).at("omega"));
  auto expected = sets::omega(sets::FinSet({"a", "b"})).omega;
  CHECK(sm.base == expected.base);
  CHECK(sm.fibers == expected.fibers);

  Run mon = invoke({"omega", "--context", "monoid", "--format", "json", data("z2.json")});
  REQUIRE(mon.code == 0);
  CHECK(io::monoid_module_from_json(Json::parse(mon.out).at("omega")) ==
        monoids::omega(monoids::FinCommMonoid::cyclic_group(2)).omega);

  Run nat = invoke({"omega", "--context", "monoid", "--format", "json", data("nat.json")});
  REQUIRE(nat.code == 0);
  monoids::NatOmega back = io::nat_omega_from_json(Json::parse(nat.out));
  monoids::NatOmega om = monoids::omega_nat_truncated(8);
  CHECK(back.fibers == om.fibers);
  CHECK(back.unit == om.unit);
  for (std::size_t n = 0; n < 8; ++n) CHECK(back.transitions[n].matrix() == om.transitions[n].matrix());
  CHECK(io::nat_omega_to_json(back) == Json::parse(nat.out));

  Run cusp = invoke({"omega", "--context", "ring", "--format", "json", data("cusp.alg")});
  REQUIRE(cusp.code == 0);
  ring::FPModule rm = io::ring_module_from_json(Json::parse(cusp.out).at("omega"));
  CHECK(rm == ring::kaehler(io::parse_algebra(io::read_file(data("cusp.alg")))).omega);
  CHECK(io::ring_module_to_json(rm) == Json::parse(cusp.out).at("omega"));

  Run chk = invoke({"check", "epi", "--context", "ring", "--format", "json", data("loc.hom")});
  Json v = Json::parse(chk.out);
  CHECK(v.at("verdict") == "EPI (iso)");
  CHECK(v.at("pass") == true);
  CHECK(v.at("iso") == true);
}

TEST_CASE("suite reports are sorted, filtered and seed-deterministic") {
  auto profile = [](const Json& report) {
    std::vector<std::pair<int, bool>> p;
    for (const auto& c : report.at("criteria")) p.emplace_back(c.at("id").get<int>(), c.at("pass").get<bool>());
    return p;
  };
  Run a = invoke({"suite", "--only", "abgrp", "--seed", "7"});
  Run b = invoke({"suite", "--only", "abgrp", "--seed", "7"});
  REQUIRE(a.code == 0);
  Json ja = Json::parse(a.out), jb = Json::parse(b.out);
  CHECK(ja.at("seed") == 7);
  CHECK(profile(ja) == profile(jb));
  CHECK(ja.at("criteria")[0].at("detail") == jb.at("criteria")[0].at("detail"));
  CHECK(profile(ja) == std::vector<std::pair<int, bool>>{{7, true}});

  Run m = invoke({"suite", "--only", "monoid"});
  REQUIRE(m.code == 0);
  CHECK(profile(Json::parse(m.out)) == std::vector<std::pair<int, bool>>{{2, true}, {3, true}, {6, true}});
  CHECK(invoke({"suite", "--only", "lie"}).code == 2);
}
