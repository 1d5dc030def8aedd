#include "support.hpp"

#include <doctest.h>

using namespace tropcount;

namespace {

CountResult plane_count(int d, std::uint64_t seed, int threads = 1) {
  const Fan p2 = named_fan("p2");
  std::vector<int> trivial;
  for (int k = 0; k < 3 * d - 1; ++k) trivial.push_back(3 * d + 1 + k);
  return count_resampling(DiscreteData::create(p2, projective_contacts(2, d), trivial), {}, seed, 5, threads);
}

DiscreteData with_points(const Fan& fan, std::vector<ContactLeg> contacts, int m) {
  std::vector<int> trivial;
  const int n = static_cast<int>(contacts.size());
  for (int k = 0; k < m; ++k) trivial.push_back(n + 1 + k);
  return DiscreteData::create(fan, std::move(contacts), trivial);
}

}  // namespace

TEST_CASE("recursion oracle matches the table") {
  for (int d = 1; d <= 6; ++d) CHECK(kontsevich_oracle(d) == oracle::kontsevich_table(d));
}

TEST_CASE("plane curves of low degree") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    CHECK(plane_count(1, seed).total == 1);
    const CountResult r = plane_count(2, seed);
    CHECK(r.total == 1);
    Integer sum = 0;
    for (const auto& c : r.contributions) sum += c.multiplicity;
    CHECK(sum == r.total);
  }
}

TEST_CASE("contributions are rigid, valid and pass through the points") {
  const Fan p2 = named_fan("p2");
  const auto gamma = with_points(p2, projective_contacts(2, 2), 5);
  const auto problem = CountProblem::create(gamma, generate_constraints(gamma, {}, 7));
  const CountResult r = count(problem);
  CHECK(r.total == 1);
  for (const auto& c : r.contributions) {
    CHECK(validate(p2, c.subdivided).valid());
    const ModuliCone cone = moduli_cone(p2, c.subdivided.type);
    CHECK(contains(p2, cone, c.subdivided) == Membership::Interior);
    CHECK(oracle::rational_rank(evaluation_matrix(c.type, problem)) == evaluation_matrix(c.type, problem).cols());
    for (std::size_t i = 0; i < problem.constraints().constraints.size(); ++i) {
      const ExtendedPoint e = ev_trop(p2, c.map, gamma.trivial_legs()[i]);
      CHECK(e.coset == problem.constraints().constraints[i].translation);
    }
  }
}

TEST_CASE("Mikhalkin multiplicity equals the lattice index") {
  const Fan p2 = named_fan("p2");
  for (int d = 1; d <= 2; ++d) {
    const auto gamma = with_points(p2, projective_contacts(2, d), 3 * d - 1);
    const auto problem = CountProblem::create(gamma, generate_constraints(gamma, {}, 11));
    for (const auto& type : enumerate_rigid_types(problem))
      CHECK(mikhalkin_multiplicity(type, problem) == multiplicity(type, problem));
  }
}

TEST_CASE("curves on P1 x P1 match the linear system") {
  const Fan q = named_fan("p1xp1");
  for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 1}}) {
    const int m = 2 * a + 2 * b - 1;
    const auto r = count_resampling(with_points(q, p1xp1_contacts(a, b), m), {}, 3, 5);
    // Rational curves of bidegree (1, b) are all the smooth members, so the count
    // is one exactly when the points cut the system down to a single curve.
    std::vector<std::pair<Rational, Rational>> pts;
    std::mt19937_64 rng(5);
    for (int k = 0; k < m; ++k) pts.push_back({gen::random_rational(rng, 50, 7), gen::random_rational(rng, 50, 7)});
    CHECK(oracle::bilinear_system_dimension(a, b, pts) == 0);
    CHECK(r.total == 1);
  }
}

TEST_CASE("lines in P3 meeting four lines") {
  const Fan p3 = named_fan("p3");
  const auto gamma = with_points(p3, projective_contacts(3, 1), 4);
  std::vector<IntMatrix> lines;
  for (IntVector dir : {IntVector{1, 0, 0}, IntVector{0, 1, 0}, IntVector{0, 0, 1}, IntVector{1, 1, 1}})
    lines.push_back(IntMatrix::from_columns({dir}, 3));
  for (std::uint64_t seed : {1u, 2u}) CHECK(count_resampling(gamma, lines, seed, 5).total == 2);

  const auto through_points = with_points(p3, projective_contacts(3, 1), 2);
  CHECK(count_resampling(through_points, {}, 1, 5).total == 1);
}

TEST_CASE("count is deterministic in the seed and thread count") {
  const auto a = plane_count(2, 4, 1), b = plane_count(2, 4, 3);
  CHECK(a.total == b.total);
  REQUIRE(a.contributions.size() == b.contributions.size());
  for (std::size_t i = 0; i < a.contributions.size(); ++i) {
    CHECK(a.contributions[i].key == b.contributions[i].key);
    CHECK(a.contributions[i].map.positions == b.contributions[i].map.positions);
  }
}

TEST_CASE("problem errors") {
  const Fan p2 = named_fan("p2");
  const auto no_points = DiscreteData::create(p2, projective_contacts(2, 1), {});
  CHECK_THROWS_AS(CountProblem::create(no_points, ConstraintConfig{}), Error);
  const auto too_few = with_points(p2, projective_contacts(2, 2), 3);
  try {
    CountProblem::create(too_few, generate_constraints(too_few, {}, 1));
    FAIL("expected CodimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CodimensionMismatch);
  }
}
