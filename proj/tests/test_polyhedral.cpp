#include "support.hpp"

#include <doctest.h>

using namespace tropcount;

namespace {

RatVector rv(std::initializer_list<long> xs) {
  RatVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

int ray_cone(const Fan& fan, IntVector ray) { return *fan.ray_cone(ray); }

}  // namespace

TEST_CASE("projective fans") {
  const Fan p1 = fan_projective_space(1);
  CHECK(p1.rays().size() == 2);
  CHECK(p1.maximal_cones().size() == 2);
  const Fan p2 = fan_projective_space(2);
  CHECK(p2.rays().size() == 3);
  CHECK(p2.cone_count() == 7);
  for (int c : p2.maximal_cones()) {
    CHECK(p2.dimension(c) == 2);
    CHECK(abs(oracle::cofactor_det(p2.ray_matrix(c))) == 1);
  }
  CHECK_THROWS_AS(fan_projective_space(0), Error);
  CHECK(fan_projective_space(3).maximal_cones().size() == 4);
}

TEST_CASE("fan products") {
  const Fan q = named_fan("p1xp1");
  CHECK(q.rank() == 2);
  CHECK(q.rays().size() == 4);
  CHECK(q.maximal_cones().size() == 4);
  const Fan p2 = named_fan("p2");
  CHECK(fan_product(p2, point_fan()).cone_count() == p2.cone_count());
  const Fan p2p1 = fan_product(p2, named_fan("p1"));
  CHECK(p2p1.maximal_cones().size() == 6);
  for (int c : p2p1.maximal_cones()) CHECK(p2p1.dimension(c) == 3);
}

TEST_CASE("fan construction rejects bad input") {
  CHECK_THROWS_AS(Fan::create(2, {{2, 0}, {0, 1}}, {{0, 1}}), Error);
  CHECK_THROWS_AS(Fan::create(2, {{1, 0}, {0, 1}, {1, 1}}, {{0, 1, 2}}), Error);
  CHECK_THROWS_AS(Fan::create(2, {{1, 0}, {1, 0}}, {}), Error);
  CHECK_THROWS_AS(named_fan("q7"), Error);
}

TEST_CASE("point location") {
  const Fan p2 = named_fan("p2");
  CHECK(p2.locate(rv({0, 0})) == 0);
  const int u1 = ray_cone(p2, {1, 0}), u2 = ray_cone(p2, {0, 1});
  CHECK(p2.locate(rv({2, 0})) == u1);
  const int c12 = *p2.join(u1, u2);
  CHECK(p2.locate(rv({1, 1})) == c12);
  CHECK(p2.meet(c12, u1) == u1);
  CHECK(p2.is_face(u1, c12));
  CHECK(p2.facets(c12).size() == 2);
}

TEST_CASE("location partitions random points") {
  std::mt19937_64 rng(21);
  for (const Fan& fan : {named_fan("p2"), named_fan("p1xp1"), named_fan("p3")}) {
    for (int trial = 0; trial < 300; ++trial) {
      RatVector p;
      for (int i = 0; i < fan.rank(); ++i) p.push_back(gen::random_rational(rng, 5, 3));
      int hits = 0;
      for (std::size_t c = 0; c < fan.cone_count(); ++c) hits += fan.contains_relint(static_cast<int>(c), p);
      CHECK(hits == 1);
      CHECK(fan.contains_relint(fan.locate(p), p));
    }
  }
}

TEST_CASE("quotient projections") {
  const auto id = quotient_projection(2, IntMatrix(2, 0));
  CHECK(id.projection == IntMatrix::identity(2));
  const auto diag = quotient_projection(2, IntMatrix{{1}, {1}});
  REQUIRE(diag.projection.rows() == 1);
  const Integer a = diag.projection(0, 0), b = diag.projection(0, 1);
  CHECK(a == -b);
  CHECK(abs(a) == 1);
  CHECK(quotient_projection(2, IntMatrix{{1, 0}, {0, 1}}).projection.rows() == 0);
  CHECK_THROWS_AS(quotient_projection(2, IntMatrix{{1, 2}, {1, 2}}), Error);
  // Saturation: span{(2,2)} has the same projection kernel as span{(1,1)}.
  const auto sat = quotient_projection(2, IntMatrix{{2}, {2}});
  CHECK((sat.projection * IntMatrix{{1}, {1}}).is_zero());
}

TEST_CASE("random quotient projections are surjective with the right kernel") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    const IntMatrix l = gen::random_matrix(rng, 4, 1 + rng() % 2, 4);
    if (oracle::rational_rank(l) != l.cols()) continue;
    const auto q = quotient_projection(4, l);
    CHECK((q.projection * l).is_zero());
    CHECK(q.projection.rows() == 4 - l.cols());
    CHECK(oracle::maximal_minor_gcd(q.projection.transpose()) == 1);
  }
}

TEST_CASE("extended points") {
  const Fan p2 = named_fan("p2");
  const auto a = extended_point(p2, rv({1, 1}), {-1, -1});
  CHECK(a.stratum_cone == ray_cone(p2, {-1, -1}));
  CHECK(a.coset == rv({0}));
  const auto b = extended_point(p2, rv({0, 0}), {1, 0});
  CHECK(b.stratum_cone == ray_cone(p2, {1, 0}));
  CHECK(b.coset == rv({0}));
  const auto c = extended_point(p2, rv({0, 5}), {1, 0});
  CHECK(abs(c.coset[0]) == 5);
  // Translating the base along the stratum does not move the point.
  CHECK(extended_point(p2, rv({7, 5}), {1, 0}) == c);
  CHECK_THROWS_AS(extended_point(p2, rv({0, 0}), {0, 0}), Error);
}

TEST_CASE("unimodular equivalence") {
  const Fan p2 = named_fan("p2");
  const Fan other = Fan::create(2, {{1, 0}, {1, 1}, {-2, -1}}, {{0, 1}, {1, 2}, {0, 2}});
  const auto g = unimodular_equivalence(p2, other);
  REQUIRE(g);
  CHECK(abs(oracle::cofactor_det(*g)) == 1);
  CHECK_FALSE(unimodular_equivalence(p2, named_fan("p1xp1")));
}
