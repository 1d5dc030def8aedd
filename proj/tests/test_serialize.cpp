#include "support.hpp"

#include <doctest.h>

using namespace tropcount;

TEST_CASE("fan round trip") {
  for (const char* name : {"p1", "p2", "p1xp1", "p3"}) {
    const Fan fan = named_fan(name);
    const Json j = to_json(fan);
    CHECK(j["schema"] == kSchema);
    const Fan back = fan_from_json(j);
    CHECK(back.rank() == fan.rank());
    CHECK(unimodular_equivalence(fan, back).has_value());
    CHECK(dump(to_json(back)) == dump(j));
  }
  CHECK_THROWS_AS(fan_from_json(Json::parse(R"({"rank": 2, "rays": [[1, 0], [0, 1]], "cones": [[0, 7]]})")), Error);
}

TEST_CASE("curve round trip") {
  const TropicalCurve c = TropicalCurve::create(
      3, {{0, 1, Rational(3, 2)}, {1, 2, std::nullopt}}, {{0, 1}, {0, 2}, {1, 3}, {2, 4}, {2, 5}});
  const Json j = to_json(c);
  CHECK(j["edges"][0][2] == "3/2");
  CHECK(j["edges"][1][2] == "inf");
  CHECK(curve_from_json(j) == c);
}

TEST_CASE("discrete data accepts both contact spellings") {
  const Fan p2 = named_fan("p2");
  const auto gamma = DiscreteData::create(p2, projective_contacts(2, 1), {4, 5});
  const auto back = gamma_from_json(p2, to_json(gamma));
  CHECK(back.trivial_legs() == gamma.trivial_legs());
  CHECK(back.contact_legs().size() == 3);
  const auto plain = gamma_from_json(p2, Json::parse(R"({"contacts": [[1, 0], [0, 1], [-1, -1]], "trivial": 2})"));
  CHECK(plain.m() == 2);
  CHECK(plain.degree_vector() == gamma.degree_vector());
}

TEST_CASE("map round trip") {
  std::mt19937_64 rng(8);
  const Fan p2 = named_fan("p2");
  int done = 0;
  for (int trial = 0; trial < 200 && done < 10; ++trial) {
    auto rm = gen::random_generic_map(p2, projective_contacts(2, 2), 2, rng);
    if (!rm) continue;
    ++done;
    const Json j = to_json(p2, rm->subdivided);
    const Fan fan = fan_from_json(j["fan"]);
    const TropicalStableMap back = map_from_json(fan, j);
    CHECK(back.positions == rm->subdivided.positions);
    CHECK(back.lengths == rm->subdivided.lengths);
    CHECK(validate(fan, back).valid());
    CHECK(dump(to_json(fan, back)) == dump(j));
  }
  CHECK(done == 10);
}

TEST_CASE("complex round trip") {
  const Fan p2 = named_fan("p2");
  const auto cx = assemble_complex(DiscreteData::create(p2, projective_contacts(2, 1), {}));
  const Json j = to_json(cx);
  CHECK(j["f_vector"] == Json::array({1, 6, 6}));
  const ConeComplex back = complex_from_json(j);
  CHECK(back.keys == cx.keys);
  CHECK(back.f_vector() == cx.f_vector());
  CHECK(dump(to_json(back)) == dump(j));
  const Json e = to_json(gkm_embedding(cx));
  CHECK(e["ambient_rank"] == 2);
  CHECK(e["rays"].size() == 6);
}

TEST_CASE("count round trip") {
  const Fan p2 = named_fan("p2");
  const auto gamma = DiscreteData::create(p2, projective_contacts(2, 2), {7, 8, 9, 10, 11});
  const auto problem = CountProblem::create(gamma, generate_constraints(gamma, {}, 3));
  const CountResult r = count(problem);
  const Json j = to_json(problem, r);
  CHECK(j["total"] == 1);
  const CountDocument doc = count_from_json(j);
  CHECK(doc.result.total == r.total);
  CHECK(doc.result.contributions.size() == r.contributions.size());
  CHECK(dump(to_json(doc.problem, doc.result)) == dump(j));
}

TEST_CASE("validation report") {
  const Json j = to_json(ValidationReport{});
  CHECK(j["valid"] == true);
}
