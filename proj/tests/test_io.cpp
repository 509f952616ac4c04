#include <catch_amalgamated.hpp>

#include "cotangent/io/algebra_text.hpp"
#include "cotangent/io/json.hpp"
#include "cotangent/ring_context.hpp"
#include "support/random.hpp"

using namespace cotangent;
using namespace cotangent::io;

namespace {

// Print, parse, print again: both texts and values must agree.
template <class T, class To, class From>
void round_trip(const T& value, To to, From from) {
  Json once = to(value);
  T back = from(Json::parse(once.dump()));
  CHECK(back == value);
  CHECK(to(back) == once);
}

}  // namespace

TEST_CASE("groups and homomorphisms round-trip") {
  for (int i = 0; i < 100; ++i) round_trip(testgen::random_group(4, 3, 9), group_to_json, group_from_json);
  FGAbGroup big(1, IntMatrix(1, 1, {Integer("123456789012345678901234567890")}));
  Json j = group_to_json(big);
  CHECK(j["relations"][0][0].is_string());
  CHECK(group_from_json(j) == big);

  FGAbGroup z6 = FGAbGroup::cyclic(6), z3 = FGAbGroup::cyclic(3);
  AbHom h(z6, z3, IntMatrix(1, 1, {Integer(2)}));
  AbHom back = hom_from_json(Json::parse(hom_to_json(h).dump()));
  CHECK(back.matrix() == h.matrix());
  CHECK(back.source() == z6);
}

TEST_CASE("malformed group descriptors are rejected") {
  CHECK_THROWS_AS(group_from_json(Json::parse(R"({"relations": []})")), InvalidObject);
  CHECK_THROWS_AS(group_from_json(Json::parse(R"({"ngens": 2, "relations": [[1]]})")), InvalidObject);
  CHECK_THROWS_AS(group_from_json(Json::parse(R"({"ngens": -1})")), InvalidObject);
  CHECK_THROWS_AS(group_from_json(Json::parse(R"({"ngens": 1, "relations": [["x"]]})")), InvalidObject);
  CHECK(group_from_json(Json::parse(R"({"ngens": 1})")) == FGAbGroup::free(1));
}

TEST_CASE("sets, maps and set modules round-trip") {
  sets::FinSet x({"a", "b", "c"});
  round_trip(x, set_to_json, set_from_json);
  CHECK(set_from_json(Json::parse(R"(["a","b","c"])")) == x);
  sets::SetMap f(x, sets::FinSet({"u", "v"}), {1, 0, 1});
  round_trip(f, map_to_json, map_from_json);
  CHECK(map_from_json(Json::parse(R"({"map": {"source": ["a"], "target": ["u","v"], "images": [1]}})"))(0) == 1);
  CHECK_THROWS_AS(map_from_json(Json::parse(R"({"map": {"source": ["a"], "target": ["u"], "images": ["w"]}})")),
                  InvalidObject);
  CHECK_THROWS_AS(set_from_json(Json::parse(R"({"set": ["a","a"]})")), InvalidObject);

  sets::SetBeckModule m(x, {FGAbGroup::cyclic(2), FGAbGroup::free(1), FGAbGroup::zero()});
  Json j = set_module_to_json(m);
  sets::SetBeckModule back = set_module_from_json(Json::parse(j.dump()));
  CHECK(back.base == m.base);
  CHECK(back.fibers == m.fibers);
}

TEST_CASE("monoids, homomorphisms and monoid modules round-trip") {
  for (const auto& [name, m] : monoids::catalog()) round_trip(m, monoid_to_json, monoid_from_json);
  auto nat = monoid_descriptor_from_json(Json::parse(R"({"nat": {"bound": 8}})"));
  REQUIRE(std::holds_alternative<NatDescriptor>(nat));
  CHECK(std::get<NatDescriptor>(nat).bound == 8);
  CHECK_THROWS_AS(monoid_from_json(Json::parse(R"({"elements": ["1","a"], "table": [["1","a"],["1","a"]], "unit": "1"})")),
                  InvalidObject);

  auto z2 = monoids::FinCommMonoid::cyclic_group(2);
  auto z4 = monoids::FinCommMonoid::cyclic_group(4);
  monoids::MonoidHom f(z4, z2, {0, 1, 0, 1});
  round_trip(f, monoid_hom_to_json, monoid_hom_from_json);
  CHECK_THROWS_AS(monoid_hom_from_json(Json::parse(monoid_hom_to_json(f).dump()).patch(Json::parse(
                      R"([{"op": "replace", "path": "/hom/images/0", "value": "g"}])"))),
                  NotAHomomorphism);

  for (const auto& [name, m] : monoids::catalog()) {
    monoids::MonBeckModule om = monoids::omega(m).omega;
    CHECK(monoid_module_from_json(Json::parse(monoid_module_to_json(om).dump())) == om);
  }
  // A transition table violating h_x h_y = h_xy is rejected on input.
  Json bad = monoid_module_to_json(monoids::omega(z2).omega);
  bad["fibers"] = Json::array({group_to_json(FGAbGroup::free(1)), group_to_json(FGAbGroup::free(1))});
  bad["transitions"] = Json::parse("[[[[1]], [[1]]], [[[1]], [[2]]]]");
  CHECK_THROWS_AS(monoid_module_from_json(bad), InvalidModule);
}

TEST_CASE("algebras, modules and algebra homs round-trip through JSON") {
  using namespace cotangent::ring;
  Field q = Field::rationals();
  std::vector<FPAlgebra> algebras{FPAlgebra::parse(q, {"x", "y"}, {"y^2 - x^3"}),
                                  FPAlgebra::parse(Field::prime(7), {"x"}, {"x^3 - 2"}),
                                  FPAlgebra::parse(q, {"x", "y"}, {"x^2 - 1", "x*y - 1"}, MonomialOrder::lex),
                                  FPAlgebra::polynomial(q, {"t"})};
  for (const auto& a : algebras) {
    round_trip(a, algebra_to_json, algebra_from_json);
    FPModule om = kaehler(a).omega;
    CHECK(ring_module_from_json(Json::parse(ring_module_to_json(om).dump())) == om);
  }
  for (const auto& f : hom_catalog()) round_trip(f, algebra_hom_to_json, algebra_hom_from_json);
  CHECK_THROWS_AS(algebra_from_json(Json::parse(R"({"field": "F9", "vars": ["x"]})")), InvalidObject);
  CHECK_THROWS_AS(algebra_from_json(Json::parse(R"({"field": "Q", "vars": ["a","b","c","d","e","f","g"]})")),
                  SizeLimit);
}

TEST_CASE("algebra text files") {
  using namespace cotangent::ring;
  FPAlgebra cusp = parse_algebra("# the cusp\nfield Q\nvars x, y\nrel y^2 - x^3\n");
  CHECK(cusp.describe() == "Q[x,y]/(-x^3 + y^2)");
  CHECK(parse_algebra(format_algebra(cusp)) == cusp);
  FPAlgebra lex = parse_algebra("field F5\nvars x y\norder lex\nrel x^2 + 1\nrel x*y - 3\n");
  CHECK(parse_algebra(format_algebra(lex)) == lex);
  CHECK(parse_algebra("field Q\n") == FPAlgebra::polynomial(Field::rationals(), {}));

  AlgebraHom loc = parse_algebra_hom(
      "[source]\nfield Q\nvars x\n[target]\nfield Q\nvars x, y\nrel x*y - 1\n[map]\nx = x\n");
  CHECK(loc.target().describe() == "Q[x,y]/(x*y - 1)");
  CHECK(parse_algebra_hom(format_algebra_hom(loc)) == loc);
  for (const auto& f : hom_catalog()) CHECK(parse_algebra_hom(format_algebra_hom(f)) == f);
}

TEST_CASE("text parse errors carry line and column") {
  auto error_at = [](const std::string& text, bool hom = false) -> std::pair<std::size_t, std::size_t> {
    try {
      if (hom) {
        parse_algebra_hom(text);
      } else {
        parse_algebra(text);
      }
    } catch (const ParseError& e) {
      return {e.line(), e.column()};
    }
    return {0, 0};
  };
  CHECK(error_at("field Q\nvars x, y\nrel y^2 - $\n") == std::pair<std::size_t, std::size_t>{3, 11});
  CHECK(error_at("field Q\nvars x\n  rel x + q\n") == std::pair<std::size_t, std::size_t>{3, 11});
  CHECK(error_at("field Q\nvarz x\n") == std::pair<std::size_t, std::size_t>{2, 1});
  CHECK(error_at("field Q9\n") == std::pair<std::size_t, std::size_t>{1, 7});
  CHECK(error_at("vars x\n") == std::pair<std::size_t, std::size_t>{1, 1});
  CHECK(error_at("field Q\nvars x, y!\n") == std::pair<std::size_t, std::size_t>{2, 10});
  CHECK(error_at("[source]\nfield Q\nvars x\n[target]\nfield Q\nvars t\n[map]\nx = t +\n", true) ==
        std::pair<std::size_t, std::size_t>{8, 8});
  CHECK(error_at("[source]\nfield Q\nvars x\n[target]\nfield Q\nvars t\n[map]\ny = t\n", true) ==
        std::pair<std::size_t, std::size_t>{8, 1});
  CHECK(error_at("field Q\n[map]\n", true) == std::pair<std::size_t, std::size_t>{1, 1});
  // a map that is not a homomorphism is a different error
  CHECK_THROWS_AS(
      parse_algebra_hom("[source]\nfield Q\nvars x\nrel x^2\n[target]\nfield Q\nvars t\n[map]\nx = t\n"),
      NotAHomomorphism);
}
