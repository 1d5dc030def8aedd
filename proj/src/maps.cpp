#include "tropcount/maps.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace tropcount {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

IntVector zero_vector(int rank) { return IntVector(idx(rank), Integer(0)); }

IntVector negate(const IntVector& v) {
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
  return out;
}

RatVector axpy(const RatVector& p, const Rational& t, const IntVector& c) {
  RatVector out = p;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (sgn(c[i]) != 0) out[i] += t * c[i];
  return out;
}

std::string vertex_name(int v) { return "vertex " + std::to_string(v); }
std::string edge_name(std::size_t e) { return "edge " + std::to_string(e); }
std::string leg_name(int label) { return "leg " + std::to_string(label); }

}  // namespace

// ---------------------------------------------------------------------------
// DiscreteData

DiscreteData DiscreteData::create(Fan fan, std::vector<ContactLeg> contact_legs, std::vector<int> trivial_legs) {
  std::vector<int> labels = trivial_legs;
  for (const auto& c : contact_legs) {
    if (static_cast<int>(c.contact.size()) != fan.rank())
      throw Error(ErrorKind::InvalidArgument, "contact order " + to_string(c.contact) + " has wrong length");
    if (is_zero(std::span<const Integer>(c.contact)))
      throw Error(ErrorKind::InvalidArgument, "contact legs need a nonzero contact order");
    try {
      fan.locate(c.contact);
    } catch (const Error&) {
      throw Error(ErrorKind::DirectionOutsideFan, "contact order " + to_string(c.contact) + " lies in no cone");
    }
    labels.push_back(c.label);
  }
  std::sort(labels.begin(), labels.end());
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] != static_cast<int>(i) + 1)
      throw Error(ErrorKind::InvalidArgument, "leg labels must partition 1..n+m");
  DiscreteData d;
  d.fan_ = std::move(fan);
  d.contact_legs_ = std::move(contact_legs);
  d.trivial_legs_ = std::move(trivial_legs);
  return d;
}

IntVector DiscreteData::contact(int label) const {
  for (const auto& c : contact_legs_)
    if (c.label == label) return c.contact;
  for (int t : trivial_legs_)
    if (t == label) return zero_vector(fan_.rank());
  throw Error(ErrorKind::UnknownLabel, "no leg labeled " + std::to_string(label));
}

bool DiscreteData::is_trivial(int label) const {
  return std::find(trivial_legs_.begin(), trivial_legs_.end(), label) != trivial_legs_.end();
}

std::optional<IntVector> DiscreteData::degree_vector() const {
  if (!torically_transverse(*this)) return std::nullopt;
  IntVector degree(fan_.rays().size(), Integer(0));
  for (const auto& c : contact_legs_) {
    const IntVector u = primitive_part(c.contact);
    const Integer w = gcd(c.contact);
    for (std::size_t r = 0; r < fan_.rays().size(); ++r)
      if (fan_.rays()[r] == u) degree[r] += w;
  }
  return degree;
}

int DiscreteData::expected_dimension() const { return fan_.rank() - 3 + n() + m(); }

bool torically_transverse(const DiscreteData& gamma) {
  for (const auto& c : gamma.contact_legs())
    if (!gamma.fan().ray_cone(primitive_part(c.contact))) return false;
  return true;
}

std::vector<ContactLeg> projective_contacts(int r, int degree) {
  if (r < 1 || degree < 0) throw Error(ErrorKind::InvalidArgument, "bad projective contact data");
  const Fan fan = fan_projective_space(r);
  std::vector<ContactLeg> legs;
  int label = 1;
  for (const auto& ray : fan.rays())
    for (int k = 0; k < degree; ++k) legs.push_back({label++, ray});
  return legs;
}

std::vector<ContactLeg> p1xp1_contacts(int a, int b) {
  if (a < 0 || b < 0) throw Error(ErrorKind::InvalidArgument, "bad bidegree");
  std::vector<ContactLeg> legs;
  int label = 1;
  auto add = [&](long x, long y, int count) {
    for (int k = 0; k < count; ++k) legs.push_back({label++, IntVector{Integer(x), Integer(y)}});
  };
  // Curves of bidegree (a, b) meet the horizontal divisors b times and the vertical ones a times.
  add(1, 0, b);
  add(-1, 0, b);
  add(0, 1, a);
  add(0, -1, a);
  return legs;
}

// ---------------------------------------------------------------------------
// CombinatorialType

IntVector CombinatorialType::outgoing(int vertex) const {
  IntVector sum;
  auto add = [&](const IntVector& c, int s) {
    if (sum.empty()) sum.assign(c.size(), Integer(0));
    for (std::size_t i = 0; i < c.size(); ++i) sum[i] += s * c[i];
  };
  for (const auto& e : edges) {
    if (e.tail == vertex) add(e.contact, 1);
    if (e.head == vertex) add(e.contact, -1);
  }
  for (const auto& l : legs)
    if (l.vertex == vertex) add(l.contact, 1);
  return sum;
}

std::vector<int> CombinatorialType::valences() const {
  std::vector<int> val(idx(vertex_count), 0);
  for (const auto& e : edges) {
    ++val[idx(e.tail)];
    ++val[idx(e.head)];
  }
  for (const auto& l : legs) ++val[idx(l.vertex)];
  return val;
}

const TypeLeg& CombinatorialType::leg(int label) const {
  for (const auto& l : legs)
    if (l.label == label) return l;
  throw Error(ErrorKind::UnknownLabel, "no leg labeled " + std::to_string(label));
}

TropicalCurve CombinatorialType::shape(const std::vector<std::optional<Rational>>& lengths) const {
  std::vector<CurveEdge> ce;
  for (std::size_t i = 0; i < edges.size(); ++i)
    ce.push_back({edges[i].tail, edges[i].head, i < lengths.size() ? lengths[i] : std::optional<Rational>(1)});
  std::vector<CurveLeg> cl;
  for (const auto& l : legs) cl.push_back({l.vertex, l.label});
  return TropicalCurve::create(vertex_count, std::move(ce), std::move(cl));
}

std::vector<std::string> CombinatorialType::invariant_violations(const Fan& fan) const {
  std::vector<std::string> out;
  const int cones = static_cast<int>(fan.cone_count());
  if (static_cast<int>(vertex_cones.size()) != vertex_count) {
    out.push_back("vertex cone list has wrong length");
    return out;
  }
  for (int c : vertex_cones)
    if (c < 0 || c >= cones) out.push_back("vertex cone index out of range");
  try {
    shape({});
  } catch (const Error& e) {
    out.push_back(e.what());
    return out;
  }
  if (!out.empty()) return out;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    if (e.tail >= e.head) out.push_back(edge_name(i) + " violates the tail < head convention");
    if (static_cast<int>(e.contact.size()) != fan.rank()) {
      out.push_back(edge_name(i) + " contact has wrong length");
      continue;
    }
    if (e.carrier < 0 || e.carrier >= cones) {
      out.push_back(edge_name(i) + " carrier out of range");
      continue;
    }
    if (!fan.is_face(vertex_cones[idx(e.tail)], e.carrier) || !fan.is_face(vertex_cones[idx(e.head)], e.carrier))
      out.push_back(edge_name(i) + ": endpoint cones are not faces of the carrier");
    if (!fan.coefficients(e.carrier, to_rational(e.contact)))
      out.push_back(edge_name(i) + ": contact order leaves the span of the carrier");
  }
  for (const auto& l : legs) {
    if (static_cast<int>(l.contact.size()) != fan.rank()) {
      out.push_back(leg_name(l.label) + " contact has wrong length");
      continue;
    }
    if (l.carrier < 0 || l.carrier >= cones) {
      out.push_back(leg_name(l.label) + " carrier out of range");
      continue;
    }
    if (!fan.is_face(vertex_cones[idx(l.vertex)], l.carrier) || !fan.contains_closed(l.carrier, to_rational(l.contact)))
      out.push_back(leg_name(l.label) + ": carrier does not contain the leg");
  }
  for (int v = 0; v < vertex_count; ++v) {
    const IntVector s = outgoing(v);
    if (!s.empty() && !is_zero(std::span<const Integer>(s)))
      out.push_back(vertex_name(v) + " is not balanced: " + to_string(s));
  }
  return out;
}

void CombinatorialType::check(const Fan& fan) const {
  auto v = invariant_violations(fan);
  if (!v.empty()) throw Error(ErrorKind::InvalidType, v.front());
}

TropicalCurve TropicalStableMap::curve() const { return type.shape(lengths); }

Rational TropicalStableMap::length(std::size_t edge) const {
  if (!lengths.at(edge)) throw Error(ErrorKind::InvalidArgument, "edge " + std::to_string(edge) + " has infinite length");
  return *lengths[edge];
}

// ---------------------------------------------------------------------------
// validation

std::string_view to_string(Condition c) {
  switch (c) {
    case Condition::Tree: return "tree";
    case Condition::Smoothness: return "smoothness";
    case Condition::PositiveLength: return "positive-length";
    case Condition::PositionInCone: return "position-in-cone";
    case Condition::EdgeEquation: return "edge-equation";
    case Condition::EdgeInCone: return "edge-in-single-cone";
    case Condition::Balancing: return "balancing";
    case Condition::Stability: return "stability";
  }
  return "unknown";
}

bool ValidationReport::has(Condition c) const {
  return std::any_of(violations.begin(), violations.end(), [c](const Violation& v) { return v.condition == c; });
}

std::string ValidationReport::summary() const {
  if (valid()) return "valid";
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    const auto& v = violations[i];
    os << (i ? "; " : "") << to_string(v.condition) << " @ " << v.location << ": " << v.detail;
  }
  return os.str();
}

std::vector<Violation> stability_violations(const Fan& fan, const CombinatorialType& t) {
  std::vector<Violation> out;
  const auto val = t.valences();
  // A curve with fewer than three legs has no stable model; one vertex off the walls is allowed.
  bool exempt = t.legs.size() < 3;
  for (int v = 0; v < t.vertex_count; ++v) {
    if (val[idx(v)] >= 3) continue;
    std::vector<int> carriers;
    for (const auto& e : t.edges)
      if (e.tail == v || e.head == v) carriers.push_back(e.carrier);
    for (const auto& l : t.legs)
      if (l.vertex == v) carriers.push_back(is_zero(std::span<const Integer>(l.contact)) ? t.vertex_cones[idx(v)] : l.carrier);
    const int sv = t.vertex_cones[idx(v)];
    const bool wall = carriers.size() == 2 && carriers[0] != carriers[1] &&
                      std::all_of(carriers.begin(), carriers.end(), [&](int c) {
                        return c >= 0 && c < static_cast<int>(fan.cone_count()) && c != sv && fan.is_face(sv, c);
                      });
    if (!wall && exempt) {
      exempt = false;
      continue;
    }
    if (!wall)
      out.push_back({Condition::Stability, vertex_name(v),
                     std::to_string(val[idx(v)]) + "-valent vertex that is not the unique wall crossing of its edges"});
  }
  return out;
}

ValidationReport validate(const Fan& fan, const TropicalStableMap& f) {
  ValidationReport report;
  auto fail = [&](Condition c, std::string where, std::string what) {
    report.violations.push_back({c, std::move(where), std::move(what)});
  };
  const auto& t = f.type;
  const int rank = fan.rank();

  // Tree and shape.
  bool shape_ok = static_cast<int>(f.positions.size()) == t.vertex_count &&
                  f.lengths.size() == t.edges.size() && static_cast<int>(t.vertex_cones.size()) == t.vertex_count;
  if (!shape_ok) {
    fail(Condition::Tree, "map", "positions, lengths and vertex cones do not match the graph");
    return report;
  }
  try {
    t.shape({});
  } catch (const Error& e) {
    fail(Condition::Tree, "graph", e.what());
    return report;
  }
  for (const auto& p : f.positions)
    if (static_cast<int>(p.size()) != rank) {
      fail(Condition::Tree, "map", "position of wrong dimension");
      return report;
    }
  for (const auto& e : t.edges)
    if (static_cast<int>(e.contact.size()) != rank) {
      fail(Condition::Tree, "map", "edge contact of wrong dimension");
      return report;
    }
  for (const auto& l : t.legs)
    if (static_cast<int>(l.contact.size()) != rank) {
      fail(Condition::Tree, "map", "leg contact of wrong dimension");
      return report;
    }
  for (int c : t.vertex_cones)
    if (c < 0 || c >= static_cast<int>(fan.cone_count())) {
      fail(Condition::Tree, "map", "cone index out of range");
      return report;
    }

  // Smoothness and lengths.
  for (std::size_t i = 0; i < f.lengths.size(); ++i) {
    if (!f.lengths[i]) fail(Condition::Smoothness, edge_name(i), "internal edge of infinite length");
    else if (sgn(*f.lengths[i]) <= 0) fail(Condition::PositiveLength, edge_name(i), "length " + format_rational(*f.lengths[i]) + " is not positive");
  }

  // Vertex positions.
  for (int v = 0; v < t.vertex_count; ++v)
    if (!fan.contains_closed(t.vertex_cones[idx(v)], f.positions[idx(v)]))
      fail(Condition::PositionInCone, vertex_name(v), to_string(f.positions[idx(v)]) + " is outside its cone");

  // Edge equations.
  for (std::size_t i = 0; i < t.edges.size(); ++i) {
    if (!f.lengths[i]) continue;
    const auto& e = t.edges[i];
    const RatVector expected = axpy(f.positions[idx(e.tail)], *f.lengths[i], e.contact);
    if (expected != f.positions[idx(e.head)])
      fail(Condition::EdgeEquation, edge_name(i), "head - tail != length * contact");
  }

  // Every edge and leg inside one closed cone. Simplicial cones are convex, so
  // checking both ends of a segment suffices.
  for (std::size_t i = 0; i < t.edges.size(); ++i) {
    const auto& e = t.edges[i];
    if (e.carrier < 0 || e.carrier >= static_cast<int>(fan.cone_count())) {
      fail(Condition::EdgeInCone, edge_name(i), "carrier index out of range");
      continue;
    }
    if (!fan.contains_closed(e.carrier, f.positions[idx(e.tail)]) || !fan.contains_closed(e.carrier, f.positions[idx(e.head)]))
      fail(Condition::EdgeInCone, edge_name(i), "segment leaves its carrier cone");
  }
  for (const auto& l : t.legs) {
    if (l.carrier < 0 || l.carrier >= static_cast<int>(fan.cone_count())) {
      fail(Condition::EdgeInCone, leg_name(l.label), "carrier index out of range");
      continue;
    }
    if (!fan.contains_closed(l.carrier, f.positions[idx(l.vertex)]) || !fan.contains_closed(l.carrier, to_rational(l.contact)))
      fail(Condition::EdgeInCone, leg_name(l.label), "ray leaves its carrier cone");
  }

  // Balancing.
  for (int v = 0; v < t.vertex_count; ++v) {
    const IntVector s = t.outgoing(v);
    if (!s.empty() && !is_zero(std::span<const Integer>(s)))
      fail(Condition::Balancing, vertex_name(v), "outgoing contact orders sum to " + to_string(s));
  }

  for (auto& v : stability_violations(fan, t)) report.violations.push_back(std::move(v));
  return report;
}

// ---------------------------------------------------------------------------
// cones along edges

std::optional<int> leg_carrier(const Fan& fan, int vertex_cone, const IntVector& contact) {
  if (is_zero(std::span<const Integer>(contact))) return vertex_cone;
  int direction_cone;
  try {
    direction_cone = fan.locate(contact);
  } catch (const Error&) {
    return std::nullopt;
  }
  return fan.join(vertex_cone, direction_cone);
}

namespace {

// Parameters t in (0, t_max) where the segment p + t c changes carrier,
// together with the carrier of every piece.
struct Crossing {
  std::vector<Rational> breaks;
  std::vector<int> carriers;  // breaks.size() + 1 pieces
};

Crossing crossings(const Fan& fan, const RatVector& p, const IntVector& c, const std::optional<Rational>& t_max) {
  std::set<Rational> candidates;
  if (!is_zero(std::span<const Integer>(c))) {
    for (int cone : fan.maximal_cones()) {
      const IntMatrix rm = fan.ray_matrix(cone);
      // Solve the ray coefficients of p and c in the cone's span.
      auto lp = solve_rational(rm, p);
      auto lc = solve_rational(rm, to_rational(c));
      if (!lp || !lc) continue;
      for (std::size_t i = 0; i < lp->x.size(); ++i) {
        if (sgn(lc->x[i]) == 0) continue;
        Rational t = -lp->x[i] / lc->x[i];
        if (sgn(t) > 0 && (!t_max || t < *t_max)) candidates.insert(t);
      }
    }
  }
  std::vector<Rational> pts(candidates.begin(), candidates.end());
  Crossing out;
  auto piece_carrier = [&](const Rational& a, const std::optional<Rational>& b) {
    Rational mid = b ? Rational((a + *b) / 2) : Rational(a + 1);
    try {
      return fan.locate(axpy(p, mid, c));
    } catch (const Error&) {
      throw Error(ErrorKind::InfiniteCrossing, "segment leaves the support of the fan");
    }
  };
  Rational prev = 0;
  std::vector<int> raw;
  std::vector<Rational> raw_breaks;
  for (const auto& t : pts) {
    raw.push_back(piece_carrier(prev, t));
    raw_breaks.push_back(t);
    prev = t;
  }
  raw.push_back(piece_carrier(prev, t_max));
  out.carriers.push_back(raw[0]);
  for (std::size_t i = 0; i < raw_breaks.size(); ++i) {
    if (raw[i + 1] != out.carriers.back()) {
      out.breaks.push_back(raw_breaks[i]);
      out.carriers.push_back(raw[i + 1]);
    }
  }
  return out;
}

}  // namespace

void assign_cones(const Fan& fan, TropicalStableMap& f) {
  auto& t = f.type;
  t.vertex_cones.resize(idx(t.vertex_count));
  for (int v = 0; v < t.vertex_count; ++v) t.vertex_cones[idx(v)] = fan.locate(f.positions[idx(v)]);
  for (std::size_t i = 0; i < t.edges.size(); ++i) {
    auto& e = t.edges[i];
    const RatVector& a = f.positions[idx(e.tail)];
    const RatVector& b = f.positions[idx(e.head)];
    RatVector mid(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) mid[k] = (a[k] + b[k]) / 2;
    e.carrier = fan.locate(mid);
  }
  for (auto& l : t.legs) {
    const RatVector far = axpy(f.positions[idx(l.vertex)], Rational(1), l.contact);
    l.carrier = is_zero(std::span<const Integer>(l.contact)) ? t.vertex_cones[idx(l.vertex)] : fan.locate(far);
  }
}

TropicalStableMap subdivide(const Fan& fan, const TropicalStableMap& f) {
  const auto& t = f.type;
  TropicalStableMap out;
  out.type.vertex_count = t.vertex_count;
  out.type.vertex_cones = t.vertex_cones;
  out.positions = f.positions;
  auto new_vertex = [&](const RatVector& pos) {
    out.positions.push_back(pos);
    out.type.vertex_cones.push_back(fan.locate(pos));
    return out.type.vertex_count++;
  };
  auto add_edge = [&](int a, int b, const IntVector& c, const Rational& len, int carrier) {
    if (a < b) out.type.edges.push_back({a, b, c, carrier});
    else out.type.edges.push_back({b, a, negate(c), carrier});
    out.lengths.emplace_back(len);
  };

  for (std::size_t i = 0; i < t.edges.size(); ++i) {
    const auto& e = t.edges[i];
    const Rational len = f.length(i);
    const Crossing cr = crossings(fan, f.positions[idx(e.tail)], e.contact, len);
    int from = e.tail;
    Rational at = 0;
    for (std::size_t k = 0; k < cr.breaks.size(); ++k) {
      const int w = new_vertex(axpy(f.positions[idx(e.tail)], cr.breaks[k], e.contact));
      add_edge(from, w, e.contact, cr.breaks[k] - at, cr.carriers[k]);
      from = w;
      at = cr.breaks[k];
    }
    add_edge(from, e.head, e.contact, len - at, cr.carriers.back());
  }
  for (const auto& l : t.legs) {
    if (is_zero(std::span<const Integer>(l.contact))) {
      out.type.legs.push_back(l);
      continue;
    }
    const Crossing cr = crossings(fan, f.positions[idx(l.vertex)], l.contact, std::nullopt);
    int from = l.vertex;
    Rational at = 0;
    for (std::size_t k = 0; k < cr.breaks.size(); ++k) {
      const int w = new_vertex(axpy(f.positions[idx(l.vertex)], cr.breaks[k], l.contact));
      add_edge(from, w, l.contact, cr.breaks[k] - at, cr.carriers[k]);
      from = w;
      at = cr.breaks[k];
    }
    out.type.legs.push_back({from, l.label, l.contact, cr.carriers.back()});
  }
  return out;
}

ExtendedPoint ev_trop(const Fan& fan, const TropicalStableMap& f, int label) {
  const TypeLeg& l = f.type.leg(label);
  const RatVector& pos = f.positions.at(idx(l.vertex));
  if (is_zero(std::span<const Integer>(l.contact))) return ExtendedPoint{0, pos};
  return extended_point(fan, pos, l.contact);
}

// ---------------------------------------------------------------------------
// canonical forms

namespace {

struct Adjacency {
  // (neighbor, edge index)
  std::vector<std::vector<std::pair<int, int>>> next;
  std::vector<std::vector<int>> legs;  // leg indices per vertex
};

Adjacency adjacency(const CombinatorialType& t) {
  Adjacency adj;
  adj.next.resize(idx(t.vertex_count));
  adj.legs.resize(idx(t.vertex_count));
  for (std::size_t i = 0; i < t.edges.size(); ++i) {
    adj.next[idx(t.edges[i].tail)].push_back({t.edges[i].head, static_cast<int>(i)});
    adj.next[idx(t.edges[i].head)].push_back({t.edges[i].tail, static_cast<int>(i)});
  }
  for (std::size_t i = 0; i < t.legs.size(); ++i) adj.legs[idx(t.legs[i].vertex)].push_back(static_cast<int>(i));
  return adj;
}

std::string vec_key(const IntVector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s;
}

struct Encoded {
  std::string text;
  std::vector<int> order;
};

Encoded encode(const CombinatorialType& t, const Adjacency& adj, int u, int parent,
               const std::function<std::string(int)>& label_key) {
  std::vector<std::string> legs;
  for (int li : adj.legs[idx(u)]) {
    const auto& l = t.legs[idx(li)];
    legs.push_back("L" + label_key(l.label) + ":" + vec_key(l.contact) + ":" + std::to_string(l.carrier));
  }
  std::sort(legs.begin(), legs.end());
  std::vector<Encoded> children;
  for (auto [w, ei] : adj.next[idx(u)]) {
    if (w == parent) continue;
    const auto& e = t.edges[idx(ei)];
    const IntVector out = e.tail == u ? e.contact : negate(e.contact);
    Encoded sub = encode(t, adj, w, u, label_key);
    sub.text = "E" + vec_key(out) + ":" + std::to_string(e.carrier) + sub.text;
    children.push_back(std::move(sub));
  }
  std::sort(children.begin(), children.end(), [](const Encoded& a, const Encoded& b) { return a.text < b.text; });
  Encoded result;
  result.text = "(" + (t.vertex_cones.empty() ? std::string("*") : std::to_string(t.vertex_cones[idx(u)]));
  for (const auto& l : legs) result.text += l;
  result.order.push_back(u);
  for (auto& c : children) {
    result.text += c.text;
    result.order.insert(result.order.end(), c.order.begin(), c.order.end());
  }
  result.text += ")";
  return result;
}

}  // namespace

std::string canonical_form(const CombinatorialType& type, const std::function<std::string(int)>& label_key,
                           std::vector<int>* order) {
  const Adjacency adj = adjacency(type);
  Encoded best;
  bool first = true;
  for (int u = 0; u < type.vertex_count; ++u) {
    Encoded e = encode(type, adj, u, -1, label_key);
    if (first || e.text < best.text) {
      best = std::move(e);
      first = false;
    }
  }
  if (order) *order = best.order;
  return best.text;
}

CombinatorialType canonicalize(const CombinatorialType& type, Relabeling* relabel) {
  std::vector<int> order;
  canonical_form(type, [](int label) { return std::to_string(label); }, &order);
  Relabeling r;
  r.vertex.assign(idx(type.vertex_count), -1);
  for (std::size_t i = 0; i < order.size(); ++i) r.vertex[idx(order[i])] = static_cast<int>(i);

  CombinatorialType out;
  out.vertex_count = type.vertex_count;
  if (!type.vertex_cones.empty()) {
    out.vertex_cones.resize(idx(type.vertex_count));
    for (int v = 0; v < type.vertex_count; ++v) out.vertex_cones[idx(r.vertex[idx(v)])] = type.vertex_cones[idx(v)];
  }

  std::vector<std::pair<TypeEdge, int>> edges;  // new edge, old index
  r.edge_sign.assign(type.edges.size(), 1);
  for (std::size_t i = 0; i < type.edges.size(); ++i) {
    TypeEdge e = type.edges[i];
    e.tail = r.vertex[idx(e.tail)];
    e.head = r.vertex[idx(e.head)];
    if (e.tail > e.head) {
      std::swap(e.tail, e.head);
      e.contact = negate(e.contact);
      r.edge_sign[i] = -1;
    }
    edges.push_back({e, static_cast<int>(i)});
  }
  std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) {
    return std::tie(a.first.tail, a.first.head) < std::tie(b.first.tail, b.first.head);
  });
  r.edge.assign(type.edges.size(), -1);
  for (std::size_t k = 0; k < edges.size(); ++k) {
    out.edges.push_back(edges[k].first);
    r.edge[idx(edges[k].second)] = static_cast<int>(k);
  }
  out.legs = type.legs;
  for (auto& l : out.legs) l.vertex = r.vertex[idx(l.vertex)];
  std::sort(out.legs.begin(), out.legs.end(), [](const TypeLeg& a, const TypeLeg& b) { return a.label < b.label; });
  if (relabel) *relabel = std::move(r);
  return out;
}

TropicalStableMap apply_relabeling(const TropicalStableMap& f, const CombinatorialType& new_type,
                                   const Relabeling& relabel) {
  TropicalStableMap out;
  out.type = new_type;
  out.positions.resize(f.positions.size());
  for (std::size_t v = 0; v < f.positions.size(); ++v) out.positions[idx(relabel.vertex[v])] = f.positions[v];
  out.lengths.resize(f.lengths.size());
  for (std::size_t e = 0; e < f.lengths.size(); ++e) out.lengths[idx(relabel.edge[e])] = f.lengths[e];
  return out;
}

}  // namespace tropcount
