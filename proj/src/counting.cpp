#include "tropcount/counting.hpp"

#include "tropcount/linear_program.hpp"

#include <algorithm>
#include <cmath>
#include <atomic>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <thread>

namespace tropcount {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

bool zero(const IntVector& v) { return is_zero(std::span<const Integer>(v)); }

}  // namespace

// ---------------------------------------------------------------------------
// constraints

ConstraintConfig generate_constraints(const DiscreteData& gamma, const std::vector<IntMatrix>& subspaces,
                                      std::uint64_t seed, int height_bound) {
  if (height_bound < 1) throw Error(ErrorKind::InvalidArgument, "height bound must be positive");
  const auto m = idx(gamma.m());
  if (!subspaces.empty() && subspaces.size() != m)
    throw Error(ErrorKind::InvalidArgument, "expected one subspace per trivial leg");
  const int rank = gamma.fan().rank();
  int codim = 0;
  for (std::size_t i = 0; i < m; ++i) codim += rank - (subspaces.empty() ? 0 : static_cast<int>(subspaces[i].cols()));
  if (codim != gamma.expected_dimension())
    throw Error(ErrorKind::CodimensionMismatch, "constraints have codimension " + std::to_string(codim) +
                                                    " but the moduli space has dimension " +
                                                    std::to_string(gamma.expected_dimension()));
  std::mt19937_64 rng(seed);
  const auto h = static_cast<std::uint64_t>(height_bound);
  ConstraintConfig config;
  config.seed = seed;
  config.height_bound = height_bound;
  for (std::size_t i = 0; i < m; ++i) {
    SubspaceConstraint c;
    c.basis = subspaces.empty() ? IntMatrix(idx(rank), 0) : subspaces[i];
    for (int k = 0; k < rank; ++k) {
      const auto num = static_cast<long>(rng() % (2 * h + 1)) - static_cast<long>(h);
      const auto den = static_cast<long>(rng() % h) + 1;
      Rational q(num, den);
      q.canonicalize();
      c.translation.push_back(q);
    }
    config.constraints.push_back(std::move(c));
  }
  return config;
}

CountProblem CountProblem::create(DiscreteData gamma, ConstraintConfig constraints) {
  if (gamma.m() < 1) throw Error(ErrorKind::InvalidArgument, "at least one trivial leg is required");
  if (!torically_transverse(gamma)) throw Error(ErrorKind::InvalidArgument, "discrete data is not torically transverse");
  if (constraints.constraints.size() != idx(gamma.m()))
    throw Error(ErrorKind::InvalidArgument, "expected one constraint per trivial leg");
  CountProblem p;
  const int rank = gamma.fan().rank();
  for (const auto& c : constraints.constraints) {
    if (static_cast<int>(c.basis.rows()) != rank || static_cast<int>(c.translation.size()) != rank)
      throw Error(ErrorKind::ShapeMismatch, "constraint has the wrong dimension");
    IntMatrix q = quotient_projection(rank, c.basis).projection;
    p.codimension_ += static_cast<int>(q.rows());
    p.targets_.push_back(q.apply(c.translation));
    p.projections_.push_back(std::move(q));
  }
  if (p.codimension_ != gamma.expected_dimension())
    throw Error(ErrorKind::CodimensionMismatch, "constraints have codimension " + std::to_string(p.codimension_) +
                                                    " but the moduli space has dimension " +
                                                    std::to_string(gamma.expected_dimension()));
  p.gamma_ = std::move(gamma);
  p.constraints_ = std::move(constraints);
  return p;
}

bool CountProblem::point_constraints() const {
  return std::all_of(constraints_.constraints.begin(), constraints_.constraints.end(),
                     [](const SubspaceConstraint& c) { return c.basis.cols() == 0; });
}

// ---------------------------------------------------------------------------
// search over trees

namespace {

// Exact rank of a small integer matrix by fraction-free elimination in 128-bit
// arithmetic, falling back to GMP when the Hadamard bound is too large.
std::size_t small_rank(const std::vector<long long>& a, std::size_t rows, std::size_t cols) {
  double log_bound = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    double norm = 0;
    for (std::size_t j = 0; j < cols; ++j) norm += static_cast<double>(a[i * cols + j]) * static_cast<double>(a[i * cols + j]);
    if (norm > 1) log_bound += 0.5 * std::log2(norm);
  }
  if (log_bound > 60) {
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = static_cast<long>(a[i * cols + j]);
    return rank(m);
  }
  std::vector<__int128> m(a.begin(), a.end());
  __int128 prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p * cols + c] == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m[p * cols + j], m[r * cols + j]);
    const __int128 pivot = m[r * cols + c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      const __int128 f = m[i * cols + c];
      for (std::size_t j = c + 1; j < cols; ++j) m[i * cols + j] = (pivot * m[i * cols + j] - f * m[r * cols + j]) / prev;
      m[i * cols + c] = 0;
    }
    prev = pivot;
    ++r;
  }
  return r;
}

long long to_small(const Integer& x) {
  if (!x.fits_slong_p() || abs(x) > 1000000) throw Error(ErrorKind::InvalidArgument, "contact orders are too large to count with");
  return x.get_si();
}

// A tree whose leaves are the legs: leaf node of label l is l - 1, internal
// nodes follow. Trivial legs are inserted one at a time.
struct Partial {
  int nodes = 0;
  std::vector<std::pair<int, int>> edges;
};

class Search {
 public:
  Search(const CountProblem& problem, bool geometric) : problem_(problem), geometric_(geometric) {
    const auto& gamma = problem.gamma();
    legs_ = gamma.leg_count();
    rank_ = problem.fan().rank();
    for (int l = 1; l <= legs_; ++l) {
      contact_.push_back(gamma.contact(l));
      std::vector<long long> c;
      for (const auto& x : contact_.back()) c.push_back(to_small(x));
      small_contact_.push_back(std::move(c));
    }
    trivial_ = gamma.trivial_legs();
    std::sort(trivial_.begin(), trivial_.end());
    for (const auto& c : gamma.contact_legs()) contact_labels_.push_back(c.label);
    std::sort(contact_labels_.begin(), contact_labels_.end());
    for (std::size_t i = 0; i < trivial_.size(); ++i) {
      const IntMatrix& q = problem.projection(i);
      std::vector<long long> flat;
      for (std::size_t k = 0; k < q.rows(); ++k)
        for (std::size_t j = 0; j < q.cols(); ++j) flat.push_back(to_small(q(k, j)));
      projection_.push_back(std::move(flat));
      projection_rows_.push_back(q.rows());
    }
  }

  struct Leaf {
    Partial tree;
    RatVector solution;  // root position, then bounded lengths in edge order
  };

  /// Starting trees before any trivial leg is inserted, and the index of the first trivial leg to insert.
  std::pair<std::vector<Partial>, std::size_t> seeds() const {
    const auto n = contact_labels_.size();
    if (n >= 3) return {contact_trees(), 0};
    if (n == 2) {
      Partial p;
      p.nodes = legs_;
      p.edges.push_back({contact_labels_[0] - 1, contact_labels_[1] - 1});
      return {{p}, 0};
    }
    if (n == 0 && trivial_.size() >= 3) {
      Partial p;
      p.nodes = legs_ + 1;
      for (std::size_t i = 0; i < 3; ++i) p.edges.push_back({trivial_[i] - 1, legs_});
      return {{p}, 3};
    }
    return {{}, 0};
  }

  /// Depth-first insertion of the remaining trivial legs below one seed.
  void run(const Partial& seed, std::size_t first, std::vector<Leaf>& out, std::size_t& nodes) const {
    if (!local_rigidity(seed)) return;
    insert(seed, first, out, nodes);
  }

  CombinatorialType to_type(const Partial& p) const {
    const Shape s = shape(p);
    const auto r = idx(rank_);
    CombinatorialType t;
    t.vertex_count = p.nodes - legs_;
    for (std::size_t e = 0; e < p.edges.size(); ++e) {
      auto [a, b] = p.edges[e];
      if (a < legs_ && b < legs_) continue;
      if (a < legs_ || b < legs_) {
        const int leaf = a < legs_ ? a : b;
        const int vertex = a < legs_ ? b : a;
        t.legs.push_back({vertex - legs_, leaf + 1, contact_[idx(leaf)], -1});
        continue;
      }
      int u = a - legs_, w = b - legs_;
      IntVector c(r);
      for (std::size_t i = 0; i < r; ++i) c[i] = static_cast<long>(s.contact[e * r + i]);
      if (u > w) {
        std::swap(u, w);
        for (auto& x : c) x = -x;
      }
      t.edges.push_back({u, w, c, -1});
    }
    std::sort(t.legs.begin(), t.legs.end(), [](const TypeLeg& x, const TypeLeg& y) { return x.label < y.label; });
    return t;
  }

  std::string class_key(const CombinatorialType& t) const {
    return canonical_form(t, [this](int label) {
      return problem_.gamma().is_trivial(label) ? "t" + std::to_string(label) : "c" + to_string(contact_[idx(label - 1)]);
    });
  }

  /// The solved map in the numbering of to_type.
  TropicalStableMap solved_map(const Partial& p, const RatVector& x) const {
    const Shape s = shape(p);
    const auto r = idx(rank_);
    TropicalStableMap f;
    f.type = to_type(p);
    for (int v = 0; v < f.type.vertex_count; ++v) {
      RatVector pos(r, Rational(0));
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < s.variables; ++j) {
          const long long c = s.position[(idx(v) * r + i) * s.variables + j];
          if (c != 0) pos[i] += Rational(static_cast<long>(c)) * x[j];
        }
      f.positions.push_back(std::move(pos));
    }
    // Bounded edges appear in the type in the same relative order as in the tree.
    for (std::size_t k = 0; k + r < s.variables; ++k) f.lengths.emplace_back(x[r + k]);
    return f;
  }

 private:
  struct Shape {
    std::size_t variables = 0;
    std::vector<int> bounded_index;     // per edge, -1 unless both ends are internal
    std::vector<long long> contact;     // per edge, oriented first -> second
    std::vector<long long> position;    // per internal vertex: rank x variables
    std::vector<int> leaf_neighbor;     // per leaf node
  };

  Shape shape(const Partial& p) const {
    Shape s;
    const auto r = idx(rank_);
    const auto nodes = idx(p.nodes);
    std::vector<std::vector<std::pair<int, std::size_t>>> adj(nodes);
    s.bounded_index.assign(p.edges.size(), -1);
    int bounded = 0;
    for (std::size_t e = 0; e < p.edges.size(); ++e) {
      auto [a, b] = p.edges[e];
      adj[idx(a)].push_back({b, e});
      adj[idx(b)].push_back({a, e});
      if (a >= legs_ && b >= legs_) s.bounded_index[e] = bounded++;
    }
    s.leaf_neighbor.assign(idx(legs_), -1);
    for (int l = 0; l < legs_; ++l)
      if (!adj[idx(l)].empty()) s.leaf_neighbor[idx(l)] = adj[idx(l)].front().first;
    s.variables = r + idx(bounded);
    s.contact.assign(p.edges.size() * r, 0);
    if (p.nodes <= legs_) {
      // A single edge between two leaves.
      for (std::size_t e = 0; e < p.edges.size(); ++e)
        for (std::size_t i = 0; i < r; ++i) s.contact[e * r + i] = small_contact_[idx(p.edges[e].second)][i];
      return s;
    }
    // Breadth-first order from the first internal node.
    const int root = legs_;
    std::vector<int> order{root}, parent(nodes, -1);
    parent[idx(root)] = root;
    for (std::size_t k = 0; k < order.size(); ++k)
      for (auto [w, e] : adj[idx(order[k])])
        if (parent[idx(w)] < 0) {
          parent[idx(w)] = order[k];
          order.push_back(w);
        }
    std::vector<long long> sum(nodes * r, 0);
    for (std::size_t k = order.size(); k-- > 0;) {
      const int u = order[k];
      if (u < legs_)
        for (std::size_t i = 0; i < r; ++i) sum[idx(u) * r + i] = small_contact_[idx(u)][i];
      if (u != root)
        for (std::size_t i = 0; i < r; ++i) sum[idx(parent[idx(u)]) * r + i] += sum[idx(u) * r + i];
    }
    for (std::size_t e = 0; e < p.edges.size(); ++e) {
      auto [a, b] = p.edges[e];
      for (std::size_t i = 0; i < r; ++i)
        s.contact[e * r + i] = parent[idx(b)] == a && b != root ? sum[idx(b) * r + i] : sum[idx(root) * r + i] - sum[idx(a) * r + i];
    }
    const std::size_t block = r * s.variables;
    s.position.assign(idx(p.nodes - legs_) * block, 0);
    for (std::size_t i = 0; i < r; ++i) s.position[i * s.variables + i] = 1;
    for (int u : order) {
      if (u < legs_ || u == root) continue;
      const int w = parent[idx(u)];
      std::size_t e = 0;
      for (auto [x, f] : adj[idx(u)])
        if (x == w) e = f;
      const std::size_t to = idx(u - legs_) * block, from = idx(w - legs_) * block;
      std::copy(s.position.begin() + static_cast<std::ptrdiff_t>(from),
                s.position.begin() + static_cast<std::ptrdiff_t>(from + block),
                s.position.begin() + static_cast<std::ptrdiff_t>(to));
      const long long sign = p.edges[e].first == w ? 1 : -1;
      for (std::size_t i = 0; i < r; ++i)
        s.position[to + i * s.variables + r + idx(s.bounded_index[e])] += sign * s.contact[e * r + i];
    }
    return s;
  }

  // A vertex whose edges are all non-contracted and parallel can slide along
  // their common line, so no tree containing it is rigid.
  bool local_rigidity(const Partial& p) const {
    if (rank_ < 2 || p.nodes <= legs_) return true;
    const Shape s = shape(p);
    const auto r = idx(rank_);
    std::vector<std::vector<long long>> dirs(idx(p.nodes));
    std::vector<bool> contracted(idx(p.nodes), false);
    for (std::size_t e = 0; e < p.edges.size(); ++e) {
      std::vector<long long> c(s.contact.begin() + static_cast<std::ptrdiff_t>(e * r),
                               s.contact.begin() + static_cast<std::ptrdiff_t>(e * r + r));
      const bool z = std::all_of(c.begin(), c.end(), [](long long x) { return x == 0; });
      for (int v : {p.edges[e].first, p.edges[e].second}) {
        if (z) contracted[idx(v)] = true;
        dirs[idx(v)].insert(dirs[idx(v)].end(), c.begin(), c.end());
      }
    }
    for (int v = legs_; v < p.nodes; ++v)
      if (!contracted[idx(v)] && small_rank(dirs[idx(v)], dirs[idx(v)].size() / r, r) <= 1) return false;
    return true;
  }

  struct Evaluation {
    std::vector<long long> rows;
    std::size_t row_count = 0;
    RatVector rhs;
    std::size_t variables = 0;
  };

  Evaluation evaluation(const Partial& p, std::size_t inserted) const {
    const Shape s = shape(p);
    const auto r = idx(rank_);
    Evaluation ev;
    ev.variables = s.variables;
    for (std::size_t i = 0; i < inserted; ++i) {
      const int vertex = s.leaf_neighbor[idx(trivial_[i] - 1)];
      const long long* pos = s.position.data() + idx(vertex - legs_) * r * s.variables;
      for (std::size_t k = 0; k < projection_rows_[i]; ++k) {
        for (std::size_t j = 0; j < s.variables; ++j) {
          long long v = 0;
          for (std::size_t a = 0; a < r; ++a) v += projection_[i][k * r + a] * pos[a * s.variables + j];
          ev.rows.push_back(v);
        }
        ev.rhs.push_back(problem_.target(i)[k]);
        ++ev.row_count;
      }
    }
    return ev;
  }

  RatVector row(const Evaluation& ev, std::size_t i) const {
    RatVector out(ev.variables);
    for (std::size_t j = 0; j < ev.variables; ++j) out[j] = static_cast<long>(ev.rows[i * ev.variables + j]);
    return out;
  }

  bool feasible(const Evaluation& ev) const {
    LinearConstraints lp;
    lp.variables = ev.variables;
    for (std::size_t i = 0; i < ev.row_count; ++i) lp.add_equation(row(ev, i), ev.rhs[i]);
    for (std::size_t j = idx(rank_); j < ev.variables; ++j) {
      RatVector ge(ev.variables);
      ge[j] = 1;
      lp.add_inequality(std::move(ge), 0);
    }
    return feasible_point(lp).has_value();
  }

  void insert(const Partial& p, std::size_t k, std::vector<Leaf>& out, std::size_t& nodes) const {
    ++nodes;
    if (k == trivial_.size()) {
      const Evaluation ev = evaluation(p, k);
      if (ev.row_count != ev.variables || small_rank(ev.rows, ev.row_count, ev.variables) != ev.variables) return;
      RatVector x;
      if (geometric_) {
        IntMatrix a(ev.row_count, ev.variables);
        for (std::size_t i = 0; i < ev.row_count; ++i)
          for (std::size_t j = 0; j < ev.variables; ++j) a(i, j) = static_cast<long>(ev.rows[i * ev.variables + j]);
        auto sol = solve_rational(a, ev.rhs);
        if (!sol || !sol->unique) return;
        x = sol->x;
        for (std::size_t j = idx(rank_); j < x.size(); ++j)
          if (sgn(x[j]) < 0) return;
      }
      out.push_back({p, x});
      return;
    }
    const int leaf = trivial_[k] - 1;
    for (std::size_t e = 0; e < p.edges.size(); ++e) {
      Partial q = p;
      const int w = q.nodes++;
      auto [a, b] = q.edges[e];
      q.edges[e] = {a, w};
      q.edges.push_back({w, b});
      q.edges.push_back({leaf, w});
      const Evaluation ev = evaluation(q, k + 1);
      if (ev.row_count > ev.variables || small_rank(ev.rows, ev.row_count, ev.variables) != ev.row_count) continue;
      if (geometric_ && !feasible(ev)) continue;
      insert(q, k + 1, out, nodes);
    }
  }

  std::vector<Partial> contact_trees() const {
    // Insert contact legs one at a time, keeping one tree per class of trees
    // that differ only by permuting legs of equal contact order.
    const auto& labels = contact_labels_;
    Partial tripod;
    tripod.nodes = legs_ + 1;
    for (std::size_t i = 0; i < 3; ++i) tripod.edges.push_back({labels[i] - 1, legs_});
    std::vector<Partial> level{tripod};
    for (std::size_t k = 3; k < labels.size(); ++k) {
      std::map<std::string, Partial> next;
      for (const auto& t : level)
        for (std::size_t e = 0; e < t.edges.size(); ++e) {
          Partial q = t;
          const int w = q.nodes++;
          auto [a, b] = q.edges[e];
          q.edges[e] = {a, w};
          q.edges.push_back({w, b});
          q.edges.push_back({labels[k] - 1, w});
          next.emplace(partial_key(q), std::move(q));
        }
      level.clear();
      for (auto& [key, t] : next) level.push_back(std::move(t));
    }
    return level;
  }

  std::string partial_key(const Partial& p) const {
    CombinatorialType t;
    t.vertex_count = p.nodes - legs_;
    for (auto [a, b] : p.edges) {
      if (a < legs_ || b < legs_) {
        const int leaf = a < legs_ ? a : b;
        const int vertex = a < legs_ ? b : a;
        t.legs.push_back({vertex - legs_, leaf + 1, contact_[idx(leaf)], -1});
      } else {
        t.edges.push_back({std::min(a, b) - legs_, std::max(a, b) - legs_, {}, -1});
      }
    }
    return canonical_form(t, [this](int label) { return "c" + to_string(contact_[idx(label - 1)]); });
  }

  const CountProblem& problem_;
  bool geometric_;
  int legs_ = 0;
  int rank_ = 0;
  std::vector<IntVector> contact_;  // by label - 1
  std::vector<std::vector<long long>> small_contact_;
  std::vector<int> trivial_;
  std::vector<int> contact_labels_;
  std::vector<std::vector<long long>> projection_;
  std::vector<std::size_t> projection_rows_;
};

}  // namespace

std::vector<CombinatorialType> enumerate_rigid_types(const CountProblem& problem) {
  Search search(problem, false);
  auto [seeds, first] = search.seeds();
  std::map<std::string, CombinatorialType> found;
  std::size_t nodes = 0;
  for (const auto& seed : seeds) {
    std::vector<Search::Leaf> leaves;
    search.run(seed, first, leaves, nodes);
    for (const auto& leaf : leaves) {
      CombinatorialType t = canonicalize(search.to_type(leaf.tree));
      found.emplace(search.class_key(t), std::move(t));
    }
  }
  std::vector<CombinatorialType> out;
  for (auto& [key, t] : found) out.push_back(std::move(t));
  return out;
}

IntMatrix evaluation_matrix(const CombinatorialType& type, const CountProblem& problem) {
  const ModuliCone cone = moduli_cone(problem.fan(), type);
  const auto r = idx(problem.fan().rank());
  std::vector<int> trivial = problem.gamma().trivial_legs();
  std::sort(trivial.begin(), trivial.end());
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < trivial.size(); ++i) {
    const int v = type.leg(trivial[i]).vertex;
    const IntMatrix& q = problem.projection(i);
    for (std::size_t k = 0; k < q.rows(); ++k) {
      IntVector row(cone.ambient_dim, Integer(0));
      for (std::size_t j = 0; j < r; ++j) row[cone.position_offset(v) + j] = q(k, j);
      rows.push_back(std::move(row));
    }
  }
  return IntMatrix::from_rows(rows, cone.ambient_dim) * cone.span_basis;
}

Integer multiplicity(const CombinatorialType& type, const CountProblem& problem) {
  const IntMatrix ev = evaluation_matrix(type, problem);
  if (ev.rows() != ev.cols() || rank(ev) != ev.rows())
    throw Error(ErrorKind::Singular, "evaluation map of the type is not an isomorphism over Q");
  return lattice_index(ev);
}

Integer mikhalkin_multiplicity(const CombinatorialType& type, const CountProblem& problem) {
  if (problem.fan().rank() != 2 || !problem.point_constraints())
    throw Error(ErrorKind::NotPlanarPointProblem, "vertex multiplicities need a plane target and point constraints");
  // Outgoing contact orders at every vertex, ignoring trivial legs and contracted edges.
  std::vector<std::vector<IntVector>> out(idx(type.vertex_count));
  for (const auto& e : type.edges) {
    if (zero(e.contact)) continue;
    out[idx(e.tail)].push_back(e.contact);
    IntVector back = e.contact;
    for (auto& x : back) x = -x;
    out[idx(e.head)].push_back(std::move(back));
  }
  for (const auto& l : type.legs)
    if (!zero(l.contact)) out[idx(l.vertex)].push_back(l.contact);
  Integer product = 1;
  for (const auto& dirs : out) {
    if (dirs.size() == 2) continue;  // a trivial leg sits on a straight edge
    if (dirs.size() != 3)
      throw Error(ErrorKind::NotPlanarPointProblem, "plane curve is not trivalent");
    product *= abs(dirs[0][0] * dirs[1][1] - dirs[0][1] * dirs[1][0]);
  }
  return product;
}

// ---------------------------------------------------------------------------
// counting

namespace {

struct Outcome {
  std::vector<Contribution> contributions;
  std::size_t nodes = 0;
  std::optional<std::string> nongeneric;
};

Contribution solve_leaf(const CountProblem& problem, const Search& search, const Search::Leaf& leaf,
                        std::optional<std::string>& nongeneric) {
  const Fan& fan = problem.fan();
  TropicalStableMap f = search.solved_map(leaf.tree, leaf.solution);
  for (std::size_t e = 0; e < f.lengths.size(); ++e)
    if (sgn(*f.lengths[e]) == 0) nongeneric = "a solution has an edge of length zero";
  Relabeling relabel;
  CombinatorialType type = canonicalize(f.type, &relabel);
  f = apply_relabeling(f, type, relabel);
  assign_cones(fan, f);
  for (int v = 0; v < f.type.vertex_count; ++v)
    if (fan.dimension(f.type.vertex_cones[idx(v)]) != fan.rank())
      nongeneric = "a vertex of a solution lies on a wall of the fan";

  Contribution c;
  c.key = search.class_key(type);
  c.type = type;
  c.multiplicity = multiplicity(type, problem);
  c.map = f;
  if (nongeneric) return c;
  c.subdivided = subdivide(fan, f);
  const ValidationReport report = validate(fan, c.subdivided);
  if (!report.valid()) throw Error(ErrorKind::InvalidType, "solved map fails validation: " + report.summary());
  return c;
}

}  // namespace

CountResult count(const CountProblem& problem, int threads) {
  Search search(problem, true);
  auto [seeds, first] = search.seeds();
  std::vector<Outcome> outcomes(seeds.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < seeds.size(); i = next++) {
      try {
        std::vector<Search::Leaf> leaves;
        search.run(seeds[i], first, leaves, outcomes[i].nodes);
        for (const auto& leaf : leaves)
          outcomes[i].contributions.push_back(solve_leaf(problem, search, leaf, outcomes[i].nongeneric));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int count = std::max(1, std::min<int>(threads, static_cast<int>(seeds.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < count; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  CountResult result;
  result.seed = problem.constraints().seed;
  result.total = 0;
  std::map<std::string, Contribution> unique;
  for (auto& o : outcomes) {
    if (o.nongeneric) throw Error(ErrorKind::NonGeneric, *o.nongeneric);
    result.nodes_visited += o.nodes;
    for (auto& c : o.contributions) unique.emplace(c.key, std::move(c));
  }
  for (auto& [key, c] : unique) {
    result.total += c.multiplicity;
    result.contributions.push_back(std::move(c));
  }
  return result;
}

CountResult count_resampling(const DiscreteData& gamma, const std::vector<IntMatrix>& subspaces, std::uint64_t seed,
                             int retries, int threads, int height_bound) {
  int rejected = 0;
  for (int attempt = 0;; ++attempt) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(attempt);
    CountProblem problem = CountProblem::create(gamma, generate_constraints(gamma, subspaces, s, height_bound));
    try {
      CountResult r = count(problem, threads);
      r.rejected_nongeneric = rejected;
      return r;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NonGeneric || attempt >= retries) throw;
      ++rejected;
    }
  }
}

Integer kontsevich_oracle(int d) {
  if (d < 1) throw Error(ErrorKind::InvalidArgument, "degree must be positive");
  std::vector<Integer> n(idx(d) + 1, Integer(0));
  n[1] = 1;
  auto binom = [](long a, long b) {
    Integer out;
    if (b < 0 || b > a) return Integer(0);
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
    return out;
  };
  for (long k = 2; k <= d; ++k) {
    Integer sum = 0;
    for (long d1 = 1; d1 < k; ++d1) {
      const long d2 = k - d1;
      sum += n[idx(static_cast<int>(d1))] * n[idx(static_cast<int>(d2))] * d1 * d1 * d2 *
             (d2 * binom(3 * k - 4, 3 * d1 - 2) - d1 * binom(3 * k - 4, 3 * d1 - 1));
    }
    n[idx(static_cast<int>(k))] = sum;
  }
  return n[idx(d)];
}

}  // namespace tropcount
