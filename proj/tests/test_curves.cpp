#include "support.hpp"

#include <doctest.h>

using namespace tropcount;

TEST_CASE("curve construction checks the tree property") {
  CHECK_NOTHROW(TropicalCurve::create(1, {}, {{0, 1}, {0, 2}, {0, 3}}));
  CHECK_THROWS_AS(TropicalCurve::create(2, {}, {{0, 1}}), Error);
  CHECK_THROWS_AS(TropicalCurve::create(2, {{0, 1, Rational(0)}}, {{0, 1}}), Error);
  CHECK_THROWS_AS(TropicalCurve::create(1, {}, {{0, 1}, {0, 3}}), Error);
  CHECK_THROWS_AS(TropicalCurve::create(3, {{0, 1, Rational(1)}, {1, 0, Rational(1)}}, {{2, 1}}), Error);
}

TEST_CASE("smoothness") {
  CHECK(is_smooth(TropicalCurve::create(1, {}, {{0, 1}, {0, 2}, {0, 3}})));
  CHECK_FALSE(is_smooth(TropicalCurve::create(2, {{0, 1, std::nullopt}}, {{0, 1}, {0, 2}, {1, 3}, {1, 4}})));
  CHECK(is_smooth(TropicalCurve::create(3, {{0, 1, Rational(1)}, {1, 2, Rational(2)}}, {{0, 1}, {2, 2}})));
}

TEST_CASE("stabilization merges 2-valent chains") {
  const auto path = TropicalCurve::create(3, {{0, 1, Rational(1)}, {1, 2, Rational(2)}},
                                          {{0, 1}, {0, 2}, {2, 3}, {2, 4}});
  const auto s = stabilize(path);
  REQUIRE(s.edges().size() == 1);
  CHECK(*s.edges()[0].length == 3);
  const auto chain = TropicalCurve::create(
      5, {{0, 1, Rational(1)}, {1, 2, Rational(1)}, {2, 3, Rational(1)}, {3, 4, Rational(1)}},
      {{0, 1}, {0, 2}, {4, 3}, {4, 4}});
  REQUIRE(stabilize(chain).edges().size() == 1);
  CHECK(*stabilize(chain).edges()[0].length == 4);
  CHECK(stabilize(stabilize(chain)) == stabilize(chain));
  const auto tri = TropicalCurve::create(1, {}, {{0, 1}, {0, 2}, {0, 3}});
  CHECK(stabilize(tri) == tri);
}

TEST_CASE("stabilization keeps leg distances") {
  const auto c = TropicalCurve::create(4, {{0, 1, Rational(1, 2)}, {1, 2, Rational(3)}, {2, 3, Rational(2)}},
                                       {{0, 1}, {0, 2}, {2, 3}, {3, 4}, {3, 5}});
  const auto s = stabilize(c);
  for (int i = 1; i <= 5; ++i)
    for (int j = i + 1; j <= 5; ++j) CHECK(s.leg_distance(i, j) == c.leg_distance(i, j));
  CHECK(c.leg_distance(1, 4) == Rational(11, 2));
}

TEST_CASE("overvalence") {
  CHECK(overvalence(TropicalCurve::create(1, {}, {{0, 1}, {0, 2}, {0, 3}})) == 0);
  CHECK(overvalence(TropicalCurve::create(1, {}, {{0, 1}, {0, 2}, {0, 3}, {0, 4}})) == 1);
  // Degrees (5, 3, 3).
  const auto c = TropicalCurve::create(3, {{0, 1, Rational(1)}, {0, 2, Rational(1)}},
                                       {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {1, 5}, {2, 6}, {2, 7}});
  CHECK(overvalence(c) == 2);
  // ov = (L - 3) - #edges of the stabilization.
  CHECK(overvalence(c) == (7 - 3) - static_cast<int>(stabilize(c).edges().size()));
}

TEST_CASE("paths") {
  const auto c = TropicalCurve::create(3, {{0, 1, Rational(1)}, {1, 2, Rational(2)}},
                                       {{0, 1}, {0, 2}, {2, 3}, {2, 4}});
  CHECK(c.path(0, 2).size() == 2);
  CHECK(c.path(1, 1).empty());
  CHECK(c.leg_vertex(3) == 2);
  CHECK_THROWS_AS(c.leg_vertex(9), Error);
  CHECK(c.valences() == std::vector<int>{3, 2, 3});
}
