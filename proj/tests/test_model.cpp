#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "fpr/model.hpp"

using namespace fpr;

namespace {

GroupSpec classical(Family f, unsigned n, unsigned q, int eps = 0) {
  GroupSpec g;
  g.family = f;
  g.n = n;
  g.q = q;
  g.eps = eps;
  return g;
}

bool mentions(const std::vector<std::string>& v, const std::string& s) {
  return std::any_of(v.begin(), v.end(), [&](const std::string& x) { return x.find(s) != std::string::npos; });
}

}  // namespace

TEST_CASE("validation examples") {
  CHECK(validate(classical(Family::Unitary, 4, 2), ActionSpec::parse("P2")).empty());
  CHECK(mentions(validate(classical(Family::Linear, 2, 5), ActionSpec::parse("P2")), "m <= n/2"));
  CHECK(mentions(validate(classical(Family::OrthogonalEven, 7, 2, 1)), "n >= 8 even"));
  CHECK(mentions(validate(classical(Family::Linear, 4, 6)), "prime power"));

  GroupSpec s8;
  s8.n = 8;
  CHECK(validate(s8, ActionSpec::parse("subsets:3")).empty());
  CHECK(mentions(validate(s8, ActionSpec::parse("subsets:4")), "l < n/2"));
  CHECK(validate(s8, ActionSpec::parse("partitions")).empty());
  CHECK(mentions(validate(classical(Family::Unitary, 4, 2), ActionSpec::parse("N2")), "m < n/2"));
  CHECK(validate(classical(Family::Symplectic, 6, 2), ActionSpec::parse("Oeps:-")).empty());
  CHECK(!validate(classical(Family::Symplectic, 6, 3), ActionSpec::parse("Oeps:-")).empty());
}

TEST_CASE("element spec validation") {
  GroupSpec sp = classical(Family::Symplectic, 6, 2);
  CHECK(validate(ElementSpec::transvection(6, 2), sp).empty());
  CHECK(validate(ElementSpec::irreducible(6, 2, 3), sp).empty());
  CHECK(mentions(validate(ElementSpec::transvection(6, 3), sp), "unipotent"));
  CHECK(mentions(validate(ElementSpec::transvection(4, 2), sp), "sum to n"));
  ElementSpec bad = ElementSpec::transvection(6, 2);
  bad.order = 4;
  CHECK(mentions(validate(bad, sp), "prime"));
}

TEST_CASE("action parsing") {
  CHECK(ActionSpec::parse("N2:+").eta == 1);
  CHECK(ActionSpec::parse("N1:-").eta == -1);
  CHECK(ActionSpec::parse("Oeps:-").kind == ActionKind::OEpsilon);
  CHECK(ActionSpec::parse("subsets:2").m == 2);
  CHECK(ActionSpec::parse("catalog:S5prim").name == "S5prim");
  CHECK_THROWS_AS(ActionSpec::parse("X3"), BadSpec);
  CHECK_THROWS_AS(ActionSpec::parse("subsets:two"), BadSpec);
  for (const char* s : {"subsets:2", "partitions", "P1", "P3", "N2:+", "N1:-", "N1ns", "Oeps:+", "natural", "catalog:x"})
    CHECK(ActionSpec::parse(s).label() == s);
}

TEST_CASE("json round trips") {
  GroupSpec g = classical(Family::OrthogonalEven, 8, 3, -1);
  g.extension = "SO";
  GroupSpec g2 = group_from_json(to_json(g));
  CHECK(g2.label() == g.label());
  CHECK(g2.eps == -1);

  GroupSpec prod;
  prod.family = Family::Product;
  prod.k = 2;
  prod.component = std::make_shared<GroupSpec>(classical(Family::Linear, 2, 8));
  CHECK(group_from_json(to_json(prod)).label() == prod.label());

  for (const char* s : {"subsets:3", "N2:-", "Oeps:+", "catalog:S2wrS3"}) {
    ActionSpec a = ActionSpec::parse(s);
    CHECK(action_from_json(to_json(a)).label() == a.label());
  }

  ElementSpec e = ElementSpec::neg_reflection(7);
  e.eigenspace_type = -1;
  ElementSpec e2 = element_from_json(to_json(e));
  CHECK(e2.label() == e.label());
  CHECK(e2.dim() == 7);
  CHECK(element_from_json(to_json(ElementSpec::outer_element("graph_aut", 2))).outer == "graph_aut");

  CHECK_THROWS_AS(group_from_json(Json::parse(R"({"family":"Nope"})")), BadSpec);
  CHECK_THROWS_AS(group_from_json(Json::parse(R"({"n":3})")), BadSpec);
}

TEST_CASE("params and exception records") {
  Params p{{"n", 6}, {"q", 2}};
  CHECK(p.get("n") == 6);
  CHECK_THROWS_AS(p.get("k"), BadSpec);
  ExceptionRecord r;
  r.id = "demo";
  r.check = [](const Params& x) -> std::optional<std::string> {
    if (x.get("q") != 2) return "q = 2";
    return std::nullopt;
  };
  r.value = [](const Params& x) { return BigRational(1, x.get("n")); };
  CHECK(r.eval(p) == BigRational(1, 6));
  CHECK_THROWS_AS(r.eval(Params{{"n", 6}, {"q", 3}}), ConditionViolated);
}

TEST_CASE("labels") {
  CHECK(ElementSpec::transvection(6, 2).label() == "(J2,J1^4)");
  CHECK(classical(Family::Symplectic, 6, 2).label() == "Sp6(2)");
  CHECK(ElementSpec::transvection(6, 2).unipotent());
  CHECK(!ElementSpec::irreducible(6, 2, 3).unipotent());
}
