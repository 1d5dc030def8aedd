#include "tropcount/moduli.hpp"

#include "tropcount/linear_program.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <thread>

namespace tropcount {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

bool assigned(const CombinatorialType& t) { return !t.vertex_cones.empty(); }

RatVector ambient_column(const IntMatrix& m, std::size_t j) {
  RatVector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) out[i] = m(i, j);
  return out;
}

IntVector negate(const IntVector& v) {
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// moduli cones

RatVector ModuliCone::coordinates(const TropicalStableMap& f) const {
  RatVector x(ambient_dim);
  for (int v = 0; v < type.vertex_count; ++v)
    for (int i = 0; i < rank; ++i) x[position_offset(v) + idx(i)] = f.positions.at(idx(v)).at(idx(i));
  for (std::size_t e = 0; e < type.edges.size(); ++e) x[length_offset(e)] = f.length(e);
  return x;
}

TropicalStableMap ModuliCone::map_at(const RatVector& point) const {
  if (point.size() != ambient_dim) throw Error(ErrorKind::ShapeMismatch, "point has the wrong number of coordinates");
  TropicalStableMap f;
  f.type = type;
  for (int v = 0; v < type.vertex_count; ++v)
    f.positions.emplace_back(point.begin() + static_cast<std::ptrdiff_t>(position_offset(v)),
                             point.begin() + static_cast<std::ptrdiff_t>(position_offset(v) + idx(rank)));
  for (std::size_t e = 0; e < type.edges.size(); ++e) f.lengths.emplace_back(point[length_offset(e)]);
  return f;
}

ModuliCone moduli_cone(const Fan& fan, const CombinatorialType& type) {
  if (assigned(type)) {
    type.check(fan);
  } else {
    try {
      type.shape({});
    } catch (const Error& e) {
      throw Error(ErrorKind::InvalidType, e.what());
    }
  }
  ModuliCone cone;
  cone.type = type;
  cone.rank = fan.rank();
  const auto r = idx(fan.rank());
  cone.ambient_dim = r * idx(type.vertex_count) + type.edges.size();

  std::vector<IntVector> rows;
  for (std::size_t e = 0; e < type.edges.size(); ++e) {
    const auto& edge = type.edges[e];
    for (std::size_t i = 0; i < r; ++i) {
      IntVector row(cone.ambient_dim, Integer(0));
      row[cone.position_offset(edge.head) + i] = 1;
      row[cone.position_offset(edge.tail) + i] = -1;
      row[cone.length_offset(e)] = -edge.contact[i];
      rows.push_back(std::move(row));
    }
  }
  if (assigned(type)) {
    for (int v = 0; v < type.vertex_count; ++v) {
      const IntMatrix& q = fan.quotient_rows(type.vertex_cones[idx(v)]);
      for (std::size_t k = 0; k < q.rows(); ++k) {
        IntVector row(cone.ambient_dim, Integer(0));
        for (std::size_t i = 0; i < r; ++i) row[cone.position_offset(v) + i] = q(k, i);
        rows.push_back(std::move(row));
      }
    }
  }
  cone.constraint_matrix = IntMatrix::from_rows(rows, cone.ambient_dim);
  cone.span_basis = integer_kernel(cone.constraint_matrix);
  cone.dimension = static_cast<int>(cone.span_basis.cols());
  return cone;
}

std::string_view to_string(Membership m) {
  switch (m) {
    case Membership::Interior: return "interior";
    case Membership::Boundary: return "boundary";
    case Membership::Outside: return "outside";
  }
  return "unknown";
}

Membership contains(const Fan& fan, const ModuliCone& cone, const RatVector& point) {
  if (point.size() != cone.ambient_dim) throw Error(ErrorKind::ShapeMismatch, "point has the wrong number of coordinates");
  if (!is_zero(std::span<const Rational>(cone.constraint_matrix.apply(point)))) return Membership::Outside;
  bool tight = false;
  if (assigned(cone.type)) {
    for (int v = 0; v < cone.type.vertex_count; ++v) {
      const RatVector p(point.begin() + static_cast<std::ptrdiff_t>(cone.position_offset(v)),
                        point.begin() + static_cast<std::ptrdiff_t>(cone.position_offset(v) + idx(cone.rank)));
      const int sigma = cone.type.vertex_cones[idx(v)];
      if (!fan.contains_closed(sigma, p)) return Membership::Outside;
      if (!fan.contains_relint(sigma, p)) tight = true;
    }
  }
  for (std::size_t e = 0; e < cone.type.edges.size(); ++e) {
    const int s = sgn(point[cone.length_offset(e)]);
    if (s < 0) return Membership::Outside;
    if (s == 0) tight = true;
  }
  return tight ? Membership::Boundary : Membership::Interior;
}

Membership contains(const Fan& fan, const ModuliCone& cone, const TropicalStableMap& f) {
  const auto& a = cone.type;
  const auto& b = f.type;
  bool same = a.vertex_count == b.vertex_count && a.edges.size() == b.edges.size() && a.legs.size() == b.legs.size() &&
              f.positions.size() == idx(a.vertex_count) && f.lengths.size() == a.edges.size();
  for (std::size_t e = 0; same && e < a.edges.size(); ++e)
    same = a.edges[e].tail == b.edges[e].tail && a.edges[e].head == b.edges[e].head;
  for (std::size_t l = 0; same && l < a.legs.size(); ++l)
    same = a.legs[l].vertex == b.legs[l].vertex && a.legs[l].label == b.legs[l].label;
  for (std::size_t e = 0; same && e < f.lengths.size(); ++e) same = f.lengths[e].has_value();
  if (!same) throw Error(ErrorKind::ShapeMismatch, "map graph does not match the type of the cone");
  return contains(fan, cone, cone.coordinates(f));
}

std::optional<RatVector> relative_interior_point(const Fan& fan, const ModuliCone& cone) {
  // Variables: ambient coordinates, then ray coefficients of every vertex.
  const auto& t = cone.type;
  std::size_t n = cone.ambient_dim;
  std::vector<std::size_t> coeff_offset(idx(t.vertex_count), n);
  if (assigned(t))
    for (int v = 0; v < t.vertex_count; ++v) {
      coeff_offset[idx(v)] = n;
      n += idx(fan.dimension(t.vertex_cones[idx(v)]));
    }
  LinearConstraints lp;
  lp.variables = n;
  for (std::size_t i = 0; i < cone.constraint_matrix.rows(); ++i) {
    RatVector row(n);
    for (std::size_t j = 0; j < cone.ambient_dim; ++j) row[j] = cone.constraint_matrix(i, j);
    lp.add_equation(std::move(row), 0);
  }
  if (assigned(t))
    for (int v = 0; v < t.vertex_count; ++v) {
      const RaySet& rays = fan.cone(t.vertex_cones[idx(v)]);
      for (int i = 0; i < fan.rank(); ++i) {
        RatVector row(n);
        row[cone.position_offset(v) + idx(i)] = 1;
        for (std::size_t k = 0; k < rays.size(); ++k)
          row[coeff_offset[idx(v)] + k] = -fan.rays()[idx(rays[k])][idx(i)];
        lp.add_equation(std::move(row), 0);
      }
      for (std::size_t k = 0; k < rays.size(); ++k) {
        RatVector row(n);
        row[coeff_offset[idx(v)] + k] = 1;
        lp.add_inequality(std::move(row), 1);
      }
    }
  for (std::size_t e = 0; e < t.edges.size(); ++e) {
    RatVector row(n);
    row[cone.length_offset(e)] = 1;
    lp.add_inequality(std::move(row), 1);
  }
  auto x = feasible_point(lp);
  if (!x) return std::nullopt;
  x->resize(cone.ambient_dim);
  return x;
}

// ---------------------------------------------------------------------------
// faces

namespace {

// Recomputes the carriers of every edge and leg at `v`; false when some
// segment no longer fits in a single cone.
bool recompute_carriers(const Fan& fan, CombinatorialType& t, int v) {
  for (auto& e : t.edges) {
    if (e.tail != v && e.head != v) continue;
    auto c = fan.join(t.vertex_cones[idx(e.tail)], t.vertex_cones[idx(e.head)]);
    if (!c) return false;
    e.carrier = *c;
  }
  for (auto& l : t.legs) {
    if (l.vertex != v) continue;
    auto c = leg_carrier(fan, t.vertex_cones[idx(v)], l.contact);
    if (!c) return false;
    l.carrier = *c;
  }
  return true;
}

bool acceptable_face(const Fan& fan, const CombinatorialType& face, int parent_dimension) {
  if (!face.invariant_violations(fan).empty()) return false;
  if (!stability_violations(fan, face).empty()) return false;
  const ModuliCone cone = moduli_cone(fan, face);
  if (cone.dimension != parent_dimension - 1) return false;
  return relative_interior_point(fan, cone).has_value();
}

}  // namespace

std::vector<FaceType> face_types(const Fan& fan, const CombinatorialType& type) {
  const ModuliCone parent = moduli_cone(fan, type);
  std::vector<FaceType> out;
  if (!assigned(type)) return out;
  const auto r = idx(fan.rank());

  // (F1) contract one internal edge; the merged vertex lands in the common face.
  for (std::size_t e = 0; e < type.edges.size(); ++e) {
    const int keep = type.edges[e].tail;
    const int gone = type.edges[e].head;
    auto renumber = [&](int v) { return v == gone ? keep : v > gone ? v - 1 : v; };
    CombinatorialType face;
    face.vertex_count = type.vertex_count - 1;
    for (int v = 0; v < type.vertex_count; ++v)
      if (v != gone) face.vertex_cones.push_back(type.vertex_cones[idx(v)]);
    face.vertex_cones[idx(keep)] = fan.meet(type.vertex_cones[idx(keep)], type.vertex_cones[idx(gone)]);
    std::vector<std::size_t> edge_source;
    for (std::size_t i = 0; i < type.edges.size(); ++i) {
      if (i == e) continue;
      TypeEdge edge = type.edges[i];
      edge.tail = renumber(edge.tail);
      edge.head = renumber(edge.head);
      if (edge.tail > edge.head) {
        std::swap(edge.tail, edge.head);
        edge.contact = negate(edge.contact);
      }
      face.edges.push_back(edge);
      edge_source.push_back(i);
    }
    for (auto leg : type.legs) {
      leg.vertex = renumber(leg.vertex);
      face.legs.push_back(leg);
    }
    if (!recompute_carriers(fan, face, keep)) continue;
    if (!acceptable_face(fan, face, parent.dimension)) continue;

    FaceType ft;
    ft.type = std::move(face);
    ft.kind = FaceType::Kind::Contraction;
    ft.index = static_cast<int>(e);
    const std::size_t face_ambient = r * idx(ft.type.vertex_count) + ft.type.edges.size();
    ft.inclusion = IntMatrix(parent.ambient_dim, face_ambient);
    for (int v = 0; v < type.vertex_count; ++v)
      for (std::size_t i = 0; i < r; ++i) ft.inclusion(parent.position_offset(v) + i, r * idx(renumber(v)) + i) = 1;
    for (std::size_t k = 0; k < edge_source.size(); ++k)
      ft.inclusion(parent.length_offset(edge_source[k]), r * idx(ft.type.vertex_count) + k) = 1;
    out.push_back(std::move(ft));
  }

  // (F2) move one vertex into a facet of its cone.
  for (int v = 0; v < type.vertex_count; ++v) {
    for (int facet : fan.facets(type.vertex_cones[idx(v)])) {
      CombinatorialType face = type;
      face.vertex_cones[idx(v)] = facet;
      if (!recompute_carriers(fan, face, v)) continue;
      if (!acceptable_face(fan, face, parent.dimension)) continue;
      FaceType ft;
      ft.type = std::move(face);
      ft.kind = FaceType::Kind::Specialization;
      ft.index = v;
      ft.inclusion = IntMatrix::identity(parent.ambient_dim);
      out.push_back(std::move(ft));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// the cone complex

std::vector<int> ConeComplex::f_vector() const {
  std::vector<int> f;
  for (const auto& c : cones) {
    if (f.size() <= idx(c.dimension)) f.resize(idx(c.dimension) + 1, 0);
    ++f[idx(c.dimension)];
  }
  return f;
}

std::optional<std::size_t> ConeComplex::find(const CombinatorialType& type) const {
  const std::string key = canonical_form(type, [](int label) { return std::to_string(label); });
  for (std::size_t i = 0; i < keys.size(); ++i)
    if (keys[i] == key) return i;
  return std::nullopt;
}

std::vector<std::size_t> ConeComplex::facets(std::size_t cone) const {
  std::vector<std::size_t> out;
  for (const auto& m : face_maps)
    if (m.cone == cone) out.push_back(m.face);
  return out;
}

std::vector<std::size_t> ConeComplex::cofacets(std::size_t cone) const {
  std::vector<std::size_t> out;
  for (const auto& m : face_maps)
    if (m.face == cone) out.push_back(m.cone);
  return out;
}

namespace {

struct Node {
  std::vector<std::pair<int, int>> edges;  // internal vertices and leaves share one index space
  int nodes = 0;
};

// Trivalent trees with leaves 0..legs-1 and internal nodes from `legs` upward.
std::vector<Node> trivalent_nodes(int legs) {
  std::vector<Node> level;
  Node tripod;
  tripod.nodes = legs + 1;
  const int center = legs;
  tripod.edges = {{0, center}, {1, center}, {2, center}};
  level.push_back(tripod);
  for (int leaf = 3; leaf < legs; ++leaf) {
    std::vector<Node> next;
    for (const auto& t : level)
      for (std::size_t e = 0; e < t.edges.size(); ++e) {
        Node u = t;
        const int w = u.nodes++;
        auto [a, b] = u.edges[e];
        u.edges[e] = {a, w};
        u.edges.push_back({w, b});
        u.edges.push_back({leaf, w});
        next.push_back(std::move(u));
      }
    level = std::move(next);
  }
  return level;
}

LabeledTree to_labeled(const Node& t, int legs) {
  LabeledTree out;
  out.vertex_count = t.nodes - legs;
  out.leg_vertex.assign(idx(legs), -1);
  for (auto [a, b] : t.edges) {
    if (a < legs) out.leg_vertex[idx(a)] = b - legs;
    else if (b < legs) out.leg_vertex[idx(b)] = a - legs;
    else out.edges.push_back({std::min(a, b) - legs, std::max(a, b) - legs});
  }
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

CombinatorialType bare_type(const LabeledTree& t) {
  CombinatorialType type;
  type.vertex_count = t.vertex_count;
  type.vertex_cones.assign(idx(t.vertex_count), 0);
  for (auto [a, b] : t.edges) type.edges.push_back({a, b, {}, 0});
  for (std::size_t l = 0; l < t.leg_vertex.size(); ++l)
    type.legs.push_back({t.leg_vertex[l], static_cast<int>(l) + 1, {}, 0});
  return type;
}

std::string tree_key(const LabeledTree& t) {
  return canonical_form(bare_type(t), [](int label) { return std::to_string(label); });
}

LabeledTree contract(const LabeledTree& t, const std::vector<std::size_t>& edges) {
  std::vector<int> parent(idx(t.vertex_count));
  for (int v = 0; v < t.vertex_count; ++v) parent[idx(v)] = v;
  std::function<int(int)> find = [&](int x) { return parent[idx(x)] == x ? x : parent[idx(x)] = find(parent[idx(x)]); };
  for (std::size_t e : edges) parent[idx(find(t.edges[e].first))] = find(t.edges[e].second);
  std::map<int, int> number;
  for (int v = 0; v < t.vertex_count; ++v) number.emplace(find(v), 0);
  int next = 0;
  for (auto& [root, n] : number) n = next++;
  LabeledTree out;
  out.vertex_count = next;
  for (std::size_t e = 0; e < t.edges.size(); ++e) {
    if (std::find(edges.begin(), edges.end(), e) != edges.end()) continue;
    int a = number[find(t.edges[e].first)], b = number[find(t.edges[e].second)];
    out.edges.push_back({std::min(a, b), std::max(a, b)});
  }
  std::sort(out.edges.begin(), out.edges.end());
  for (int v : t.leg_vertex) out.leg_vertex.push_back(number[find(v)]);
  return out;
}

}  // namespace

std::vector<LabeledTree> trivalent_trees(int legs) {
  if (legs < 3) return {};
  std::vector<LabeledTree> out;
  for (const auto& t : trivalent_nodes(legs)) out.push_back(to_labeled(t, legs));
  return out;
}

std::vector<LabeledTree> stable_trees(int legs) {
  if (legs < 1) return {};
  if (legs < 3) {
    LabeledTree t;
    t.vertex_count = 1;
    t.leg_vertex.assign(idx(legs), 0);
    return {t};
  }
  std::map<std::string, LabeledTree> found;
  for (const auto& t : trivalent_trees(legs)) {
    const std::size_t e = t.edges.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << e); ++mask) {
      std::vector<std::size_t> chosen;
      for (std::size_t i = 0; i < e; ++i)
        if (mask >> i & 1) chosen.push_back(i);
      LabeledTree c = contract(t, chosen);
      found.emplace(tree_key(c), std::move(c));
    }
  }
  std::vector<LabeledTree> out;
  for (auto& [key, t] : found) out.push_back(std::move(t));
  return out;
}

namespace {

struct TreeParametrization {
  std::vector<IntMatrix> position;  // per vertex: rank x parameters
  std::vector<IntVector> edge_contact;
  std::size_t parameters = 0;
};

// Positions as linear functions of (root position, edge lengths), root = vertex 0.
TreeParametrization parametrize(const LabeledTree& t, const DiscreteData& gamma) {
  const auto r = idx(gamma.fan().rank());
  TreeParametrization p;
  p.parameters = r + t.edges.size();
  const auto n = idx(t.vertex_count);
  std::vector<std::vector<std::pair<int, std::size_t>>> adj(n);
  for (std::size_t e = 0; e < t.edges.size(); ++e) {
    adj[idx(t.edges[e].first)].push_back({t.edges[e].second, e});
    adj[idx(t.edges[e].second)].push_back({t.edges[e].first, e});
  }
  // Contact of edge a -> b: total contact of the legs behind b.
  std::function<IntVector(int, int)> behind = [&](int u, int from) {
    IntVector sum(r, Integer(0));
    for (std::size_t l = 0; l < t.leg_vertex.size(); ++l)
      if (t.leg_vertex[l] == u) {
        const IntVector c = gamma.contact(static_cast<int>(l) + 1);
        for (std::size_t i = 0; i < r; ++i) sum[i] += c[i];
      }
    for (auto [w, e] : adj[idx(u)]) {
      if (w == from) continue;
      const IntVector c = behind(w, u);
      for (std::size_t i = 0; i < r; ++i) sum[i] += c[i];
    }
    return sum;
  };
  p.edge_contact.resize(t.edges.size());
  for (std::size_t e = 0; e < t.edges.size(); ++e) p.edge_contact[e] = behind(t.edges[e].second, t.edges[e].first);

  p.position.assign(n, IntMatrix(r, p.parameters));
  for (std::size_t i = 0; i < r; ++i) p.position[0](i, i) = 1;
  std::vector<bool> seen(n, false);
  std::vector<int> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (auto [w, e] : adj[idx(u)]) {
      if (seen[idx(w)]) continue;
      seen[idx(w)] = true;
      IntMatrix m = p.position[idx(u)];
      const int s = t.edges[e].first == u ? 1 : -1;
      for (std::size_t i = 0; i < r; ++i) m(i, r + e) += s * p.edge_contact[e][i];
      p.position[idx(w)] = m;
      stack.push_back(w);
    }
  }
  return p;
}

IntVector normalize_functional(IntVector f) {
  if (is_zero(std::span<const Integer>(f))) return f;
  f = primitive_part(f);
  for (const auto& x : f)
    if (sgn(x) != 0) {
      if (sgn(x) < 0)
        for (auto& y : f) y = -y;
      break;
    }
  return f;
}

// Linear functionals on the parameter space whose sign vector determines the subdivided type.
std::vector<IntVector> wall_functionals(const LabeledTree& t, const DiscreteData& gamma, const TreeParametrization& p) {
  const Fan& fan = gamma.fan();
  std::set<IntVector> out;
  auto add = [&](IntVector f) {
    f = normalize_functional(std::move(f));
    if (!is_zero(std::span<const Integer>(f))) out.insert(std::move(f));
  };
  auto det_with = [&](const IntMatrix& pos, const IntVector& c) {
    // det(pos, c) = pos_x c_y - pos_y c_x
    IntVector f(p.parameters);
    for (std::size_t j = 0; j < p.parameters; ++j) f[j] = pos(0, j) * c[1] - pos(1, j) * c[0];
    return f;
  };
  if (fan.rank() == 1) {
    for (const auto& pos : p.position) add(pos.row(0));
  } else if (fan.rank() == 2) {
    for (const auto& pos : p.position)
      for (const auto& ray : fan.rays()) add(negate(det_with(pos, ray)));
    for (std::size_t e = 0; e < t.edges.size(); ++e)
      if (!is_zero(std::span<const Integer>(p.edge_contact[e]))) add(det_with(p.position[idx(t.edges[e].first)], p.edge_contact[e]));
    for (std::size_t l = 0; l < t.leg_vertex.size(); ++l) {
      const IntVector c = gamma.contact(static_cast<int>(l) + 1);
      if (!is_zero(std::span<const Integer>(c))) add(det_with(p.position[idx(t.leg_vertex[l])], c));
    }
  }
  return {out.begin(), out.end()};
}

struct Cell {
  std::vector<int> signs;
  RatVector witness;
};

std::vector<Cell> arrangement_cells(std::size_t parameters, std::size_t rank, const std::vector<IntVector>& walls) {
  auto base = [&]() {
    LinearConstraints lp;
    lp.variables = parameters;
    for (std::size_t j = rank; j < parameters; ++j) {
      RatVector row(parameters);
      row[j] = 1;
      lp.add_inequality(std::move(row), 1);
    }
    return lp;
  };
  auto add_sign = [&](LinearConstraints& lp, const IntVector& f, int s) {
    RatVector row = to_rational(f);
    if (s == 0) {
      lp.add_equation(std::move(row), 0);
      return;
    }
    if (s < 0)
      for (auto& x : row) x = -x;
    lp.add_inequality(std::move(row), 1);
  };
  std::vector<Cell> cells;
  {
    auto x = feasible_point(base());
    if (!x) return {};
    cells.push_back({{}, *x});
  }
  for (std::size_t h = 0; h < walls.size(); ++h) {
    std::vector<Cell> next;
    for (const auto& cell : cells) {
      for (int s : {-1, 0, 1}) {
        Cell c{cell.signs, {}};
        c.signs.push_back(s);
        LinearConstraints lp = base();
        for (std::size_t k = 0; k <= h; ++k) add_sign(lp, walls[k], c.signs[k]);
        auto x = feasible_point(lp);
        if (!x) continue;
        c.witness = *x;
        next.push_back(std::move(c));
      }
    }
    cells = std::move(next);
  }
  return cells;
}

std::vector<std::pair<std::string, CombinatorialType>> tree_types(const LabeledTree& t, const DiscreteData& gamma) {
  const Fan& fan = gamma.fan();
  const auto r = idx(fan.rank());
  const TreeParametrization p = parametrize(t, gamma);
  std::vector<std::pair<std::string, CombinatorialType>> out;
  for (const Cell& cell : arrangement_cells(p.parameters, r, wall_functionals(t, gamma, p))) {
    TropicalStableMap f;
    f.type.vertex_count = t.vertex_count;
    for (const auto& pos : p.position) f.positions.push_back(pos.apply(cell.witness));
    for (std::size_t e = 0; e < t.edges.size(); ++e) {
      f.type.edges.push_back({t.edges[e].first, t.edges[e].second, p.edge_contact[e], 0});
      f.lengths.emplace_back(cell.witness[r + e]);
    }
    for (std::size_t l = 0; l < t.leg_vertex.size(); ++l) {
      const int label = static_cast<int>(l) + 1;
      f.type.legs.push_back({t.leg_vertex[l], label, gamma.contact(label), 0});
    }
    assign_cones(fan, f);
    const TropicalStableMap g = subdivide(fan, f);
    const ValidationReport report = validate(fan, g);
    if (!report.valid()) throw Error(ErrorKind::InvalidType, "assembled map is invalid: " + report.summary());
    CombinatorialType type = canonicalize(g.type);
    std::string key = canonical_form(type, [](int label) { return std::to_string(label); });
    out.emplace_back(std::move(key), std::move(type));
  }
  return out;
}

}  // namespace

ConeComplex assemble_complex(const DiscreteData& gamma, int threads) {
  const Fan& fan = gamma.fan();
  if (fan.rank() > 2) throw Error(ErrorKind::UnsupportedRank, "cone complexes are assembled only for fans of rank at most 2");
  if (!torically_transverse(gamma)) throw Error(ErrorKind::InvalidArgument, "discrete data is not torically transverse");

  const std::vector<LabeledTree> trees = stable_trees(gamma.leg_count());
  std::vector<std::vector<std::pair<std::string, CombinatorialType>>> per_tree(trees.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < trees.size(); i = next++) {
      try {
        per_tree[i] = tree_types(trees[i], gamma);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int count = std::max(1, std::min<int>(threads, static_cast<int>(trees.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < count; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  std::map<std::string, CombinatorialType> types;
  for (auto& list : per_tree)
    for (auto& [key, type] : list) types.emplace(std::move(key), std::move(type));

  ConeComplex complex;
  complex.fan = fan;
  complex.gamma = gamma;
  std::vector<std::pair<std::string, ModuliCone>> cones;
  for (auto& [key, type] : types) cones.emplace_back(key, moduli_cone(fan, type));
  std::stable_sort(cones.begin(), cones.end(),
                   [](const auto& a, const auto& b) { return a.second.dimension < b.second.dimension; });
  for (auto& [key, cone] : cones) {
    complex.keys.push_back(key);
    complex.cones.push_back(std::move(cone));
  }

  for (std::size_t i = 0; i < complex.cones.size(); ++i) {
    const ModuliCone& parent = complex.cones[i];
    for (const FaceType& face : face_types(fan, parent.type)) {
      Relabeling relabel;
      const CombinatorialType canonical = canonicalize(face.type, &relabel);
      const auto j = complex.find(canonical);
      if (!j) continue;
      const ModuliCone& small = complex.cones[*j];
      if (small.type != canonical) continue;
      // Inclusion in the ambient coordinates of the stored face type.
      const auto r = idx(fan.rank());
      IntMatrix ambient(parent.ambient_dim, small.ambient_dim);
      for (int v = 0; v < face.type.vertex_count; ++v)
        for (std::size_t k = 0; k < r; ++k)
          for (std::size_t row = 0; row < parent.ambient_dim; ++row)
            ambient(row, small.position_offset(relabel.vertex[idx(v)]) + k) = face.inclusion(row, r * idx(v) + k);
      for (std::size_t e = 0; e < face.type.edges.size(); ++e)
        for (std::size_t row = 0; row < parent.ambient_dim; ++row)
          ambient(row, small.length_offset(idx(relabel.edge[e]))) =
              face.inclusion(row, r * idx(face.type.vertex_count) + e);
      const IntMatrix image = ambient * small.span_basis;
      IntMatrix m(parent.span_basis.cols(), small.span_basis.cols());
      bool integral = true;
      for (std::size_t c = 0; c < image.cols() && integral; ++c) {
        auto sol = solve_rational(parent.span_basis, ambient_column(image, c));
        if (!sol || !sol->unique) {
          integral = false;
          break;
        }
        for (std::size_t k = 0; k < sol->x.size(); ++k) {
          if (sol->x[k].get_den() != 1) integral = false;
          else m(k, c) = sol->x[k].get_num();
        }
      }
      if (!integral) throw Error(ErrorKind::InvalidType, "face inclusion is not integral");
      bool duplicate = false;
      for (const auto& fm : complex.face_maps)
        if (fm.face == *j && fm.cone == i) duplicate = true;
      if (!duplicate) complex.face_maps.push_back({*j, i, std::move(m)});
    }
  }
  complex.assembled = true;
  return complex;
}

// ---------------------------------------------------------------------------
// embedding

namespace {

std::size_t binomial2(std::size_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

// Columns span the image of Z^L -> Z^C(L,2), e_i -> sum of the pairs containing i.
IntMatrix translation_image(int legs) {
  const auto l = idx(legs);
  IntMatrix t(binomial2(l), l);
  std::size_t row = 0;
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = i + 1; j < l; ++j, ++row) {
      t(row, i) = 1;
      t(row, j) = 1;
    }
  if (t.rows() == 0) return IntMatrix(0, 0);
  return hermite_rows(t.transpose()).transpose();
}

}  // namespace

int embedding_rank(int fan_rank, int legs) {
  const IntMatrix t = translation_image(legs);
  return fan_rank + static_cast<int>(binomial2(idx(legs))) - static_cast<int>(t.cols());
}

Fan EmbeddedFan::as_fan() const {
  std::vector<RaySet> sets;
  for (const auto& c : cones)
    if (!c.empty()) sets.push_back(c);
  return Fan::create(ambient_rank, rays, sets, "embedded");
}

namespace {

// The vertex carrying a leg after erasing the 2-valent wall crossings: walk from
// the leg's vertex through such vertices until a vertex that stays in the curve.
int stable_attachment(const Fan& fan, const CombinatorialType& t, int label) {
  const auto val = t.valences();
  auto wall = [&](int v) {
    std::vector<int> carriers;
    for (const auto& e : t.edges)
      if (e.tail == v || e.head == v) carriers.push_back(e.carrier);
    for (const auto& l : t.legs)
      if (l.vertex == v) carriers.push_back(is_zero(std::span<const Integer>(l.contact)) ? t.vertex_cones[idx(v)] : l.carrier);
    const int sv = t.vertex_cones[idx(v)];
    return carriers.size() == 2 && carriers[0] != carriers[1] &&
           std::all_of(carriers.begin(), carriers.end(), [&](int c) { return c != sv && fan.is_face(sv, c); });
  };
  int v = t.leg(label).vertex, prev = -1;
  while (val[idx(v)] == 2 && wall(v)) {
    int next = -1;
    for (const auto& e : t.edges) {
      const int other = e.tail == v ? e.head : e.head == v ? e.tail : -1;
      if (other >= 0 && other != prev) next = other;
    }
    if (next < 0) break;
    prev = v;
    v = next;
  }
  return v;
}

}  // namespace

EmbeddedFan gkm_embedding(const ConeComplex& complex, std::optional<int> root_label) {
  if (!complex.assembled) throw Error(ErrorKind::NotAssembled, "the cone complex has not been assembled");
  const Fan& fan = complex.fan;
  const int legs = complex.gamma.leg_count();
  const int root = root_label.value_or(1);
  if (root < 1 || root > legs) throw Error(ErrorKind::UnknownLabel, "no leg labeled " + std::to_string(root));
  const auto r = idx(fan.rank());
  const auto pairs = binomial2(idx(legs));
  const IntMatrix projection = pairs == 0 ? IntMatrix(0, 0) : quotient_projection(static_cast<int>(pairs), translation_image(legs)).projection;

  EmbeddedFan out;
  out.ambient_rank = static_cast<int>(r + projection.rows());
  for (const auto& cone : complex.cones) {
    const auto& t = cone.type;
    IntMatrix a(idx(out.ambient_rank), cone.ambient_dim);
    const TropicalCurve shape = t.shape({});
    const int rv = stable_attachment(fan, t, root);
    for (std::size_t i = 0; i < r; ++i) a(i, cone.position_offset(rv) + i) = 1;
    if (projection.rows() > 0) {
      IntMatrix dist(pairs, cone.ambient_dim);
      std::size_t row = 0;
      for (int i = 1; i <= legs; ++i)
        for (int j = i + 1; j <= legs; ++j, ++row)
          for (int e : shape.path(stable_attachment(fan, t, i), stable_attachment(fan, t, j))) dist(row, cone.length_offset(idx(e))) = 1;
      const IntMatrix q = projection * dist;
      for (std::size_t i = 0; i < q.rows(); ++i)
        for (std::size_t j = 0; j < q.cols(); ++j) a(r + i, j) = q(i, j);
    }
    out.lattice_maps.push_back(a * cone.span_basis);
    out.ambient_maps.push_back(std::move(a));
  }

  // Rays: images of the one-dimensional cones, oriented into the cone.
  std::vector<std::set<int>> below(complex.cones.size());
  std::map<IntVector, int> ray_index;
  for (std::size_t c = 0; c < complex.cones.size(); ++c) {
    const ModuliCone& cone = complex.cones[c];
    if (cone.dimension == 1) {
      auto x = relative_interior_point(fan, cone);
      if (!x) continue;
      IntVector generator = cone.span_basis.column(0);
      // x is a positive multiple of +-generator.
      Rational y;
      for (std::size_t i = 0; i < generator.size(); ++i)
        if (sgn(generator[i]) != 0) {
          y = (*x)[i] / generator[i];
          break;
        }
      if (sgn(y) < 0) generator = negate(generator);
      IntVector image = primitive_part(out.ambient_maps[c].apply(generator));
      auto [it, inserted] = ray_index.emplace(image, static_cast<int>(out.rays.size()));
      if (inserted) out.rays.push_back(image);
      below[c].insert(it->second);
    } else if (cone.dimension > 1) {
      for (std::size_t f : complex.facets(c)) below[c].insert(below[f].begin(), below[f].end());
    }
  }
  for (std::size_t c = 0; c < complex.cones.size(); ++c) {
    out.cones.emplace_back(below[c].begin(), below[c].end());
    std::vector<IntVector> gens;
    for (int i : out.cones.back()) gens.push_back(out.rays[idx(i)]);
    out.cone_images.push_back(std::move(gens));
  }
  return out;
}

}  // namespace tropcount
