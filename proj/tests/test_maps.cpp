#include "support.hpp"

#include <doctest.h>

using namespace tropcount;

namespace {

RatVector rv(std::initializer_list<long> xs) {
  RatVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

// Single vertex at `p` with the three unit contacts of a line in P2.
TropicalStableMap tripod(const Fan& fan, RatVector p) {
  TropicalStableMap f;
  f.type.vertex_count = 1;
  const auto contacts = projective_contacts(2, 1);
  for (const auto& c : contacts) f.type.legs.push_back({0, c.label, c.contact, -1});
  f.positions = {std::move(p)};
  assign_cones(fan, f);
  return f;
}

IntVector negate(IntVector v) {
  for (auto& x : v) x = -x;
  return v;
}

bool only(const ValidationReport& r, Condition c) {
  return !r.valid() && std::all_of(r.violations.begin(), r.violations.end(), [&](const Violation& v) { return v.condition == c; });
}

}  // namespace

TEST_CASE("discrete data") {
  const Fan p2 = named_fan("p2");
  const auto g = DiscreteData::create(p2, projective_contacts(2, 1), {});
  CHECK(torically_transverse(g));
  CHECK(g.degree_vector() == IntVector{1, 1, 1});
  CHECK(g.expected_dimension() == 2);
  CHECK_FALSE(torically_transverse(DiscreteData::create(p2, {{1, {1, 1}}, {2, {-1, -1}}}, {})));
  CHECK(torically_transverse(DiscreteData::create(p2, {}, {1, 2, 3})));
  CHECK_THROWS_AS(DiscreteData::create(p2, {{1, {1, 0}}}, {3}), Error);
  CHECK(projective_contacts(2, 3).size() == 9);
  CHECK(p1xp1_contacts(1, 2).size() == 6);
}

TEST_CASE("tripod validation and single mutations") {
  const Fan p2 = named_fan("p2");
  const auto f = tripod(p2, rv({0, 0}));
  CHECK(validate(p2, f).valid());

  auto heavy = f;
  heavy.type.legs[2].contact = {-2, -2};
  CHECK(only(validate(p2, heavy), Condition::Balancing));

  auto moved = f;
  moved.positions[0] = rv({1, 1});
  CHECK(validate(p2, moved).has(Condition::PositionInCone));

  auto toy = subdivide(p2, tripod(p2, rv({2, 1})));
  REQUIRE(validate(p2, toy).valid());
  auto negative = toy;
  negative.lengths[0] = Rational(-1);
  CHECK(validate(p2, negative).has(Condition::PositiveLength));
}

TEST_CASE("a 2-valent vertex inside a maximal cone is unstable") {
  const Fan p2 = named_fan("p2");
  auto toy = subdivide(p2, tripod(p2, rv({2, 1})));
  // Split the bounded edge at its midpoint, which lies inside a maximal cone.
  TropicalStableMap f = toy;
  const auto e = f.type.edges[0];
  const int mid = f.type.vertex_count++;
  RatVector m(2);
  for (int i = 0; i < 2; ++i) m[static_cast<std::size_t>(i)] = (toy.positions[static_cast<std::size_t>(e.tail)][static_cast<std::size_t>(i)] + toy.positions[static_cast<std::size_t>(e.head)][static_cast<std::size_t>(i)]) / 2;
  f.positions.push_back(m);
  f.type.edges[0] = {e.tail, mid, e.contact, -1};
  f.type.edges.push_back({e.head, mid, negate(e.contact), -1});
  f.lengths[0] = *toy.lengths[0] / 2;
  f.lengths.emplace_back(*toy.lengths[0] / 2);
  assign_cones(p2, f);
  CHECK(p2.dimension(f.type.vertex_cones[static_cast<std::size_t>(mid)]) == 2);
  CHECK(only(validate(p2, f), Condition::Stability));
}

TEST_CASE("edge equations and carriers are checked") {
  const Fan p2 = named_fan("p2");
  auto toy = subdivide(p2, tripod(p2, rv({2, 1})));
  auto stretched = toy;
  stretched.lengths[0] = Rational(2);
  CHECK(validate(p2, stretched).has(Condition::EdgeEquation));
  const auto unsplit = tripod(p2, rv({2, 1}));
  CHECK(validate(p2, unsplit).has(Condition::EdgeInCone));
}

TEST_CASE("minimal subdivision of the toy map") {
  const Fan p2 = named_fan("p2");
  const auto s = subdivide(p2, tripod(p2, rv({2, 1})));
  REQUIRE(s.type.vertex_count == 2);
  CHECK(s.positions[0] == rv({2, 1}));
  CHECK(s.positions[1] == rv({1, 0}));
  REQUIRE(s.lengths.size() == 1);
  CHECK(*s.lengths[0] == 1);
  CHECK(subdivide(p2, s).positions == s.positions);
  const auto origin = tripod(p2, rv({0, 0}));
  CHECK(subdivide(p2, origin).type == origin.type);
}

TEST_CASE("tropical evaluation") {
  const Fan p2 = named_fan("p2");
  TropicalStableMap f;
  f.type.vertex_count = 1;
  f.type.legs = {{0, 1, {1, 0}, -1}, {0, 2, {0, 1}, -1}, {0, 3, {-1, -1}, -1}, {0, 4, {0, 0}, -1}};
  f.positions = {rv({3, 5})};
  assign_cones(p2, f);
  const auto e4 = ev_trop(p2, f, 4);
  CHECK(e4.stratum_cone == 0);
  CHECK(e4.coset == rv({3, 5}));
  f.positions = {rv({1, 1})};
  assign_cones(p2, f);
  const auto e3 = ev_trop(p2, f, 3);
  CHECK(e3.stratum_cone == *p2.ray_cone({-1, -1}));
  CHECK(e3.coset == rv({0}));
  CHECK_THROWS_AS(ev_trop(p2, f, 9), Error);
}

TEST_CASE("random maps: balancing, subdivision and evaluation properties") {
  std::mt19937_64 rng(31);
  int checked = 0;
  for (int trial = 0; trial < 400 && checked < 60; ++trial) {
    const Fan fan = named_fan(trial % 2 ? "p2" : "p1xp1");
    auto rm = gen::random_generic_map(fan, gen::random_contacts(fan, rng), static_cast<int>(rng() % 3), rng);
    if (!rm) continue;
    ++checked;
    const auto& s = rm->subdivided;
    IntVector total(static_cast<std::size_t>(fan.rank()), Integer(0));
    for (const auto& l : s.type.legs)
      for (std::size_t i = 0; i < total.size(); ++i) total[i] += l.contact[i];
    CHECK(is_zero(std::span<const Integer>(total)));
    for (std::size_t e = 0; e < s.type.edges.size(); ++e) {
      const auto& te = s.type.edges[e];
      for (std::size_t i = 0; i < total.size(); ++i)
        CHECK(s.positions[static_cast<std::size_t>(te.head)][i] - s.positions[static_cast<std::size_t>(te.tail)][i] ==
              *s.lengths[e] * te.contact[i]);
    }
    CHECK(subdivide(fan, s).positions == s.positions);
    const auto a = stabilize(s.curve()), b = stabilize(rm->map.curve());
    const int legs = rm->gamma.leg_count();
    for (int i = 1; i <= legs; ++i)
      for (int j = i + 1; j <= legs; ++j) CHECK(a.leg_distance(i, j) == b.leg_distance(i, j));
    // Translation equivariance of a trivial leg, when the shifted map is still valid.
    for (int label : rm->gamma.trivial_legs()) {
      auto shifted = s;
      RatVector t(static_cast<std::size_t>(fan.rank()), Rational(1, 3));
      for (auto& p : shifted.positions)
        for (std::size_t i = 0; i < p.size(); ++i) p[i] += t[i];
      assign_cones(fan, shifted);
      if (!validate(fan, shifted).valid()) continue;
      const auto e0 = ev_trop(fan, s, label), e1 = ev_trop(fan, shifted, label);
      for (std::size_t i = 0; i < t.size(); ++i) CHECK(e1.coset[i] == e0.coset[i] + t[i]);
    }
  }
  CHECK(checked == 60);
}

TEST_CASE("canonical forms ignore vertex numbering") {
  std::mt19937_64 rng(32);
  const Fan fan = named_fan("p2");
  int checked = 0;
  for (int trial = 0; trial < 500 && checked < 20; ++trial) {
    auto rm = gen::random_generic_map(fan, projective_contacts(2, 2), 1, rng);
    if (!rm) continue;
    ++checked;
    const auto& t = rm->subdivided.type;
    std::vector<int> perm(static_cast<std::size_t>(t.vertex_count));
    for (int i = 0; i < t.vertex_count; ++i) perm[static_cast<std::size_t>(i)] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    CombinatorialType u = t;
    for (int v = 0; v < t.vertex_count; ++v) u.vertex_cones[static_cast<std::size_t>(perm[static_cast<std::size_t>(v)])] = t.vertex_cones[static_cast<std::size_t>(v)];
    for (auto& e : u.edges) {
      e.tail = perm[static_cast<std::size_t>(e.tail)];
      e.head = perm[static_cast<std::size_t>(e.head)];
      if (e.tail > e.head) {
        std::swap(e.tail, e.head);
        e.contact = negate(e.contact);
      }
    }
    for (auto& l : u.legs) l.vertex = perm[static_cast<std::size_t>(l.vertex)];
    auto key = [](int label) { return std::to_string(label); };
    CHECK(canonical_form(u, key) == canonical_form(t, key));
    CHECK(canonicalize(u) == canonicalize(t));
  }
  CHECK(checked == 20);
}
