#pragma once

// Independent oracles and random generators shared by the unit tests and the
// acceptance binary. The oracles use only textbook algorithms over GMP.

#include "tropcount/serialize.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

namespace oracle {

using namespace tropcount;

/// Determinant by cofactor expansion along the first row.
inline Integer cofactor_det(const std::vector<std::vector<Integer>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  Integer det = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (sgn(m[0][j]) == 0) continue;
    std::vector<std::vector<Integer>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Integer> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(std::move(row));
    }
    const Integer c = m[0][j] * cofactor_det(minor);
    det += j % 2 ? Integer(-c) : c;
  }
  return det;
}

inline Integer cofactor_det(const IntMatrix& a) {
  std::vector<std::vector<Integer>> m(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) m[i] = a.row(i);
  return cofactor_det(m);
}

/// Rank by Gaussian elimination over Q.
inline std::size_t rational_rank(std::vector<std::vector<Rational>> m) {
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && sgn(m[p][c]) == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      const Rational f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

inline std::size_t rational_rank(const IntMatrix& a) {
  std::vector<std::vector<Rational>> m(a.rows(), std::vector<Rational>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = a(i, j);
  return rational_rank(m);
}

inline void choose(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                   std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    choose(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

/// gcd of the maximal minors of a matrix with at least as many rows as columns.
/// Equals 1 exactly when the columns span a saturated sublattice.
inline Integer maximal_minor_gcd(const IntMatrix& a) {
  std::vector<std::vector<std::size_t>> subsets;
  std::vector<std::size_t> cur;
  choose(a.rows(), a.cols(), 0, cur, subsets);
  Integer g = 0;
  for (const auto& rows : subsets) {
    std::vector<std::vector<Integer>> m;
    for (std::size_t i : rows) m.push_back(a.row(i));
    Integer d = cofactor_det(m);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
  }
  return g;
}

/// Rational plane curves of degree d through 3d - 1 general points, from the literature.
inline Integer kontsevich_table(int d) {
  static const char* values[] = {"1", "1", "12", "620", "87304", "26312976", "14616808192"};
  return Integer(values[d - 1]);
}

/// Curves of bidegree (a, b) on P1 x P1 through the given points are the nonzero
/// forms sum c_ij x^i y^j (i <= a, j <= b) vanishing there, up to scaling.
/// Returns the projective dimension of that linear system (0: exactly one curve).
inline int bilinear_system_dimension(int a, int b, const std::vector<std::pair<Rational, Rational>>& points) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& [x, y] : points) {
    std::vector<Rational> row;
    for (int i = 0; i <= a; ++i)
      for (int j = 0; j <= b; ++j) {
        Rational v = 1;
        for (int k = 0; k < i; ++k) v *= x;
        for (int k = 0; k < j; ++k) v *= y;
        row.push_back(v);
      }
    rows.push_back(std::move(row));
  }
  const int monomials = (a + 1) * (b + 1);
  return monomials - static_cast<int>(rational_rank(rows)) - 1;
}

/// Number of phylogenetic trees on n labeled leaves (all vertices of valence >= 3),
/// from the known table (n = 0 .. 7).
inline int stable_tree_count(int n) {
  static const int values[] = {0, 1, 1, 1, 4, 26, 236, 2752};
  return values[n];
}

inline int double_factorial(int n) { return n <= 1 ? 1 : n * double_factorial(n - 2); }

}  // namespace oracle

namespace gen {

using namespace tropcount;

inline Integer uniform(std::mt19937_64& rng, long lo, long hi) {
  return Integer(lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1)));
}

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long bound) {
  IntMatrix a(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a(i, j) = uniform(rng, -bound, bound);
  return a;
}

inline Rational random_rational(std::mt19937_64& rng, long num, long den) {
  Rational q(uniform(rng, -num, num), uniform(rng, 1, den));
  q.canonicalize();
  return q;
}

struct RandomMap {
  DiscreteData gamma;
  TropicalStableMap map;         // trivalent, cones assigned
  TropicalStableMap subdivided;  // valid
};

/// A random trivalent map with the given contacts and m trivial legs, or nullopt
/// when the draw is not generic: every trivalent vertex must lie in a
/// full-dimensional cone and every wall crossing in a cone of codimension one.
inline std::optional<RandomMap> random_generic_map(const Fan& fan, std::vector<ContactLeg> contacts, int m,
                                                   std::mt19937_64& rng, std::string* why = nullptr) {
  const int n = static_cast<int>(contacts.size());
  const int legs = n + m;
  if (legs < 3) return std::nullopt;
  std::vector<int> trivial;
  for (int k = 0; k < m; ++k) trivial.push_back(n + 1 + k);
  DiscreteData gamma = DiscreteData::create(fan, contacts, trivial);
  const auto r = static_cast<std::size_t>(fan.rank());

  // Random insertion tree: leaf node l - 1 for label l, internal nodes from `legs`.
  std::vector<int> order(static_cast<std::size_t>(legs));
  for (int i = 0; i < legs; ++i) order[static_cast<std::size_t>(i)] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::pair<int, int>> edges;
  int nodes = legs + 1;
  for (int i = 0; i < 3; ++i) edges.push_back({order[static_cast<std::size_t>(i)], legs});
  for (int i = 3; i < legs; ++i) {
    const auto e = rng() % edges.size();
    const int w = nodes++;
    auto [a, b] = edges[e];
    edges[e] = {a, w};
    edges.push_back({w, b});
    edges.push_back({order[static_cast<std::size_t>(i)], w});
  }

  // Subtree contact sums, rooted at the first internal node.
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(nodes));
  for (std::size_t e = 0; e < edges.size(); ++e) {
    adj[static_cast<std::size_t>(edges[e].first)].push_back({edges[e].second, static_cast<int>(e)});
    adj[static_cast<std::size_t>(edges[e].second)].push_back({edges[e].first, static_cast<int>(e)});
  }
  std::vector<int> bfs{legs}, parent(static_cast<std::size_t>(nodes), -1);
  parent[static_cast<std::size_t>(legs)] = legs;
  for (std::size_t k = 0; k < bfs.size(); ++k)
    for (auto [w, e] : adj[static_cast<std::size_t>(bfs[k])])
      if (parent[static_cast<std::size_t>(w)] < 0) {
        parent[static_cast<std::size_t>(w)] = bfs[k];
        bfs.push_back(w);
      }
  std::vector<IntVector> sum(static_cast<std::size_t>(nodes), IntVector(r, Integer(0)));
  for (std::size_t k = bfs.size(); k-- > 0;) {
    const int u = bfs[k];
    if (u < legs) sum[static_cast<std::size_t>(u)] = gamma.contact(u + 1);
    if (u != legs)
      for (std::size_t i = 0; i < r; ++i) sum[static_cast<std::size_t>(parent[static_cast<std::size_t>(u)])][i] += sum[static_cast<std::size_t>(u)][i];
  }

  TropicalStableMap f;
  f.type.vertex_count = nodes - legs;
  f.positions.assign(static_cast<std::size_t>(f.type.vertex_count), RatVector(r));
  for (std::size_t i = 0; i < r; ++i) f.positions[0][i] = random_rational(rng, 40, 7);
  for (int u : bfs) {
    if (u == legs) continue;
    const int p = parent[static_cast<std::size_t>(u)];
    const IntVector& c = sum[static_cast<std::size_t>(u)];
    if (u < legs) {
      f.type.legs.push_back({p - legs, u + 1, gamma.contact(u + 1), -1});
      continue;
    }
    // Balancing at u: the edge from p to u points along the subtree sum of u.
    IntVector dir = c;
    Rational len(uniform(rng, 1, 30), uniform(rng, 1, 4));
    len.canonicalize();
    for (std::size_t i = 0; i < r; ++i)
      f.positions[static_cast<std::size_t>(u - legs)][i] = f.positions[static_cast<std::size_t>(p - legs)][i] + len * dir[i];
    int tail = p - legs, head = u - legs;
    if (tail > head) {
      std::swap(tail, head);
      for (auto& x : dir) x = -x;
    }
    f.type.edges.push_back({tail, head, dir, -1});
    f.lengths.emplace_back(len);
  }
  std::sort(f.type.legs.begin(), f.type.legs.end(), [](const TypeLeg& a, const TypeLeg& b) { return a.label < b.label; });
  assign_cones(fan, f);
  for (int c : f.type.vertex_cones)
    if (fan.dimension(c) != fan.rank()) {
      if (why) *why = "vertex on a wall";
      return std::nullopt;
    }
  RandomMap out{gamma, f, subdivide(fan, f)};
  const auto& sub = out.subdivided;
  for (int v = f.type.vertex_count; v < sub.type.vertex_count; ++v)
    if (fan.dimension(sub.type.vertex_cones[static_cast<std::size_t>(v)]) != fan.rank() - 1) {
      if (why) *why = "crossing through a small cone";
      return std::nullopt;
    }
  if (const auto report = validate(fan, sub); !report.valid()) {
    if (why) *why = report.summary();
    return std::nullopt;
  }
  return out;
}

/// Random contact data: a projective degree on P2 or a bidegree on P1 x P1.
inline std::vector<ContactLeg> random_contacts(const Fan& fan, std::mt19937_64& rng) {
  if (fan.name() == "p2") return projective_contacts(2, 1 + static_cast<int>(rng() % 2));
  return p1xp1_contacts(1 + static_cast<int>(rng() % 2), 1 + static_cast<int>(rng() % 2));
}

}  // namespace gen
