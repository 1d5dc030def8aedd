// Acceptance checks: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace tropcount;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "failed: ";
      else detail << "; ";
      detail << what;
      pass = false;
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& name, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = Clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  const double s = seconds_since(t0);
  std::printf("%s criterion %2d: %s [%.2f s] %s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), s, o.detail.str().c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

RatVector rv(std::initializer_list<long> xs) {
  RatVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

DiscreteData with_points(const Fan& fan, std::vector<ContactLeg> contacts, int m) {
  std::vector<int> trivial;
  const int n = static_cast<int>(contacts.size());
  for (int k = 0; k < m; ++k) trivial.push_back(n + 1 + k);
  return DiscreteData::create(fan, std::move(contacts), trivial);
}

struct PlaneRun {
  CountProblem problem;
  CountResult result;
  std::string json;
};

PlaneRun plane_run(int d, std::uint64_t seed, int threads) {
  const auto gamma = with_points(named_fan("p2"), projective_contacts(2, d), 3 * d - 1);
  CountResult r = count_resampling(gamma, {}, seed, 5, threads);
  CountProblem problem = CountProblem::create(gamma, generate_constraints(gamma, {}, r.seed));
  std::string json = dump(to_json(problem, r));
  return {std::move(problem), std::move(r), std::move(json)};
}

TropicalStableMap tripod(const Fan& fan, RatVector p) {
  TropicalStableMap f;
  f.type.vertex_count = 1;
  for (const auto& c : projective_contacts(2, 1)) f.type.legs.push_back({0, c.label, c.contact, -1});
  f.positions = {std::move(p)};
  assign_cones(fan, f);
  return f;
}

bool only(const ValidationReport& r, Condition c) {
  if (r.valid()) return false;
  for (const auto& v : r.violations)
    if (v.condition != c) return false;
  return true;
}

}  // namespace

int main() {
  const Fan p2 = named_fan("p2");
  const Fan q = named_fan("p1xp1");
  std::map<int, std::vector<PlaneRun>> plane;  // criterion 3 runs, reused by 6 and 10

  criterion(1, "toy complex has f-vector (1, 6, 6)", [&](Outcome& o) {
    const auto t0 = Clock::now();
    const auto cx = assemble_complex(DiscreteData::create(p2, projective_contacts(2, 1), {}));
    const double s = seconds_since(t0);
    o.require(cx.f_vector() == std::vector<int>{1, 6, 6}, "f-vector");
    o.require(s < 1.0, "runtime >= 1 s");
  });

  criterion(2, "toy complex embeds as the hexagon fan", [&](Outcome& o) {
    const auto t0 = Clock::now();
    const auto cx = assemble_complex(DiscreteData::create(p2, projective_contacts(2, 1), {}));
    const EmbeddedFan e = gkm_embedding(cx);
    const Fan hexagon = Fan::create(2, {{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}},
                                    {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
    const bool equivalent = unimodular_equivalence(e.as_fan(), hexagon).has_value();
    const double s = seconds_since(t0);
    o.require(e.ambient_rank == 2, "ambient rank");
    o.require(equivalent, "not unimodularly equivalent");
    o.require(s < 1.0, "runtime >= 1 s");
  });

  criterion(3, "plane counts equal the recursion for d = 1, 2, 3 over 3 seeds", [&](Outcome& o) {
    for (int d = 1; d <= 3; ++d) {
      const Integer expected = oracle::kontsevich_table(d);
      for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto t0 = Clock::now();
        plane[d].push_back(plane_run(d, seed, 1));
        const double s = seconds_since(t0);
        const auto& r = plane[d].back().result;
        o.detail << "d=" << d << " seed=" << seed << ": " << r.total.get_str() << " in " << s << " s; ";
        o.require(r.total == expected, "d=" + std::to_string(d) + " total");
        o.require(s < (d <= 2 ? 10.0 : 600.0), "d=" + std::to_string(d) + " runtime");
      }
    }
  });

  criterion(4, "P1 x P1 bidegree (1, 1) through 3 points", [&](Outcome& o) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const auto t0 = Clock::now();
      const auto gamma = with_points(q, p1xp1_contacts(1, 1), 3);
      const CountResult r = count_resampling(gamma, {}, seed, 5);
      const auto config = generate_constraints(gamma, {}, r.seed);
      std::vector<std::pair<Rational, Rational>> pts;
      for (const auto& c : config.constraints) pts.push_back({c.translation[0], c.translation[1]});
      const int expected = oracle::bilinear_system_dimension(1, 1, pts) == 0 ? 1 : 0;
      o.require(r.total == expected, "seed " + std::to_string(seed));
      o.require(seconds_since(t0) < 10.0, "runtime");
    }
  });

  criterion(5, "moduli cone dimension on 100 random trivalent types", [&](Outcome& o) {
    std::mt19937_64 rng(2024);
    int checked = 0, attempts = 0;
    while (checked < 100 && attempts < 20000) {
      ++attempts;
      const Fan& fan = attempts % 2 ? p2 : q;
      auto rm = gen::random_generic_map(fan, gen::random_contacts(fan, rng), static_cast<int>(rng() % 4), rng);
      if (!rm) continue;
      ++checked;
      const int dim = moduli_cone(fan, rm->subdivided.type).dimension;
      const int expected = fan.rank() - 3 + rm->gamma.n() + rm->gamma.m();
      o.require(dim == expected, "type " + std::to_string(checked));
    }
    o.require(checked == 100, "generated only " + std::to_string(checked) + " types");
  });

  criterion(6, "Mikhalkin multiplicity equals the lattice index", [&](Outcome& o) {
    int compared = 0;
    for (const auto& [d, runs] : plane)
      for (const auto& run : runs)
        for (const auto& c : run.result.contributions) {
          ++compared;
          o.require(mikhalkin_multiplicity(c.type, run.problem) == c.multiplicity, c.key);
        }
    o.require(compared > 0, "no contributions");
    o.detail << compared << " contributions";
  });

  criterion(7, "faces of 20 random types", [&](Outcome& o) {
    std::mt19937_64 rng(77);
    int checked = 0, faces = 0, attempts = 0;
    while (checked < 20 && attempts < 5000) {
      ++attempts;
      const Fan& fan = attempts % 2 ? p2 : q;
      auto rm = gen::random_generic_map(fan, gen::random_contacts(fan, rng), static_cast<int>(rng() % 3), rng);
      if (!rm) continue;
      ++checked;
      const ModuliCone parent = moduli_cone(fan, rm->subdivided.type);
      for (const auto& face : face_types(fan, rm->subdivided.type)) {
        ++faces;
        const ModuliCone c = moduli_cone(fan, face.type);
        o.require(c.dimension == parent.dimension - 1, "face dimension");
        const auto x = relative_interior_point(fan, c);
        o.require(x.has_value() && contains(fan, parent, face.inclusion.apply(*x)) == Membership::Boundary,
                  "face interior not on the parent boundary");
      }
    }
    o.require(checked == 20, "generated only " + std::to_string(checked) + " types");
    o.detail << faces << " faces";
  });

  criterion(8, "SNF, lattice index and kernel saturation on 1000 instances each", [&](Outcome& o) {
    std::mt19937_64 rng(8);
    int bad_snf = 0, bad_index = 0, bad_kernel = 0;
    for (int i = 0; i < 1000; ++i) {
      const auto rows = 1 + rng() % 5, cols = 1 + rng() % 5;
      const IntMatrix a = gen::random_matrix(rng, rows, cols, 9);
      const auto s = smith_normal_form(a);
      bool ok = s.left * a * s.right == s.diag && abs(oracle::cofactor_det(s.left)) == 1 &&
                abs(oracle::cofactor_det(s.right)) == 1;
      const IntVector diag = s.diagonal();
      for (std::size_t k = 0; k < diag.size(); ++k) {
        ok = ok && sgn(diag[k]) >= 0;
        if (k + 1 < diag.size() && sgn(diag[k + 1]) != 0) ok = ok && sgn(diag[k]) != 0 && diag[k + 1] % diag[k] == 0;
      }
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
          if (r != c) ok = ok && sgn(s.diag(r, c)) == 0;
      ok = ok && s.rank() == oracle::rational_rank(a);
      if (!ok) ++bad_snf;
    }
    for (int i = 0; i < 1000; ++i) {
      const auto n = 1 + rng() % 5;
      IntMatrix a = gen::random_matrix(rng, n, n, 9);
      const Integer det = oracle::cofactor_det(a);
      if (sgn(det) == 0) {
        --i;
        continue;
      }
      if (lattice_index(a) != abs(det)) ++bad_index;
    }
    for (int i = 0; i < 1000; ++i) {
      const auto rows = 1 + rng() % 4, cols = 1 + rng() % 6;
      const IntMatrix a = gen::random_matrix(rng, rows, cols, 6);
      const IntMatrix k = integer_kernel(a);
      bool ok = k.cols() == cols - oracle::rational_rank(a) && k.rows() == cols;
      if (ok && k.cols() > 0) {
        const IntMatrix ak = a * k;
        for (std::size_t r = 0; r < ak.rows(); ++r)
          for (std::size_t c = 0; c < ak.cols(); ++c) ok = ok && sgn(ak(r, c)) == 0;
        ok = ok && oracle::rational_rank(k) == k.cols() && oracle::maximal_minor_gcd(k) == 1;
      }
      if (!ok) ++bad_kernel;
    }
    o.require(bad_snf == 0, std::to_string(bad_snf) + " SNF failures");
    o.require(bad_index == 0, std::to_string(bad_index) + " lattice index failures");
    o.require(bad_kernel == 0, std::to_string(bad_kernel) + " kernel failures");
  });

  criterion(9, "tripod validates and each single mutation names its condition", [&](Outcome& o) {
    const auto f = tripod(p2, rv({0, 0}));
    o.require(validate(p2, f).valid(), "tripod rejected");

    auto heavy = f;
    heavy.type.legs[2].contact = {-2, -2};
    o.require(only(validate(p2, heavy), Condition::Balancing), "weight change");

    auto moved = f;
    moved.positions[0] = rv({1, 1});
    o.require(validate(p2, moved).has(Condition::PositionInCone), "position outside its cone");

    const auto toy = subdivide(p2, tripod(p2, rv({2, 1})));
    o.require(validate(p2, toy).valid(), "subdivided toy map rejected");
    auto negative = toy;
    negative.lengths[0] = Rational(-1);
    o.require(validate(p2, negative).has(Condition::PositiveLength), "length sign");

    // A 2-valent vertex in the interior of a maximal cone: a contracted twice marked component.
    auto split = toy;
    const auto e = split.type.edges[0];
    const int mid = split.type.vertex_count++;
    RatVector m(2);
    for (std::size_t i = 0; i < 2; ++i)
      m[i] = (toy.positions[static_cast<std::size_t>(e.tail)][i] + toy.positions[static_cast<std::size_t>(e.head)][i]) / 2;
    split.positions.push_back(m);
    IntVector back = e.contact;
    for (auto& x : back) x = -x;
    split.type.edges[0] = {e.tail, mid, e.contact, -1};
    split.type.edges.push_back({e.head, mid, back, -1});
    split.lengths[0] = *toy.lengths[0] / 2;
    split.lengths.emplace_back(*toy.lengths[0] / 2);
    assign_cones(p2, split);
    o.require(only(validate(p2, split), Condition::Stability), "unstable divalent vertex");
  });

  criterion(10, "count output is byte-identical across threads and repeated runs", [&](Outcome& o) {
    const auto& single = plane[3].front();
    const PlaneRun threaded = plane_run(3, 1, 4);
    o.require(threaded.json == single.json, "d=3 seed 1: 1 vs 4 threads");
    for (int d = 1; d <= 2; ++d) {
      const PlaneRun again = plane_run(d, 1, 1), wide = plane_run(d, 1, 3);
      o.require(again.json == plane[d].front().json, "d=" + std::to_string(d) + " repeated run");
      o.require(wide.json == plane[d].front().json, "d=" + std::to_string(d) + " 3 threads");
    }
  });

  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
