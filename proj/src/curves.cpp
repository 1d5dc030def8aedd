#include "tropcount/curves.hpp"

#include <algorithm>
#include <numeric>

namespace tropcount {

TropicalCurve TropicalCurve::create(int vertices, std::vector<CurveEdge> edges, std::vector<CurveLeg> legs) {
  if (vertices < 1) throw Error(ErrorKind::InvalidArgument, "a curve needs at least one vertex");
  if (static_cast<int>(edges.size()) != vertices - 1)
    throw Error(ErrorKind::InvalidArgument, "not a tree: " + std::to_string(edges.size()) + " internal edges on " +
                                                std::to_string(vertices) + " vertices");
  std::vector<int> parent(static_cast<std::size_t>(vertices));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  for (const auto& e : edges) {
    if (e.a < 0 || e.b < 0 || e.a >= vertices || e.b >= vertices || e.a == e.b)
      throw Error(ErrorKind::InvalidArgument, "bad edge endpoints");
    if (e.length && sgn(*e.length) <= 0) throw Error(ErrorKind::InvalidArgument, "internal lengths must be positive");
    const int ra = find(e.a), rb = find(e.b);
    if (ra == rb) throw Error(ErrorKind::InvalidArgument, "not a tree: cycle");
    parent[static_cast<std::size_t>(ra)] = rb;
  }
  std::vector<int> labels;
  for (const auto& l : legs) {
    if (l.vertex < 0 || l.vertex >= vertices) throw Error(ErrorKind::InvalidArgument, "leg on unknown vertex");
    labels.push_back(l.label);
  }
  std::sort(labels.begin(), labels.end());
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] != static_cast<int>(i) + 1)
      throw Error(ErrorKind::InvalidArgument, "leg labels must be exactly 1..n+m");
  TropicalCurve c;
  c.vertices_ = vertices;
  c.edges_ = std::move(edges);
  c.legs_ = std::move(legs);
  return c;
}

std::vector<int> TropicalCurve::valences() const {
  std::vector<int> val(static_cast<std::size_t>(vertices_), 0);
  for (const auto& e : edges_) {
    ++val[static_cast<std::size_t>(e.a)];
    ++val[static_cast<std::size_t>(e.b)];
  }
  for (const auto& l : legs_) ++val[static_cast<std::size_t>(l.vertex)];
  return val;
}

int TropicalCurve::leg_vertex(int label) const {
  for (const auto& l : legs_)
    if (l.label == label) return l.vertex;
  throw Error(ErrorKind::UnknownLabel, "no leg labeled " + std::to_string(label));
}

std::vector<int> TropicalCurve::path(int from, int to) const {
  // Depth-first search from `from`, recording the edge used to reach each vertex.
  std::vector<int> via(static_cast<std::size_t>(vertices_), -1);
  std::vector<int> prev(static_cast<std::size_t>(vertices_), -1);
  std::vector<bool> seen(static_cast<std::size_t>(vertices_), false);
  std::vector<int> stack{from};
  seen[static_cast<std::size_t>(from)] = true;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const auto& e = edges_[i];
      const int w = e.a == u ? e.b : e.b == u ? e.a : -1;
      if (w < 0 || seen[static_cast<std::size_t>(w)]) continue;
      seen[static_cast<std::size_t>(w)] = true;
      via[static_cast<std::size_t>(w)] = static_cast<int>(i);
      prev[static_cast<std::size_t>(w)] = u;
      stack.push_back(w);
    }
  }
  std::vector<int> out;
  for (int v = to; v != from; v = prev[static_cast<std::size_t>(v)]) out.push_back(via[static_cast<std::size_t>(v)]);
  std::reverse(out.begin(), out.end());
  return out;
}

Rational TropicalCurve::leg_distance(int label_i, int label_j) const {
  Rational d = 0;
  for (int e : path(leg_vertex(label_i), leg_vertex(label_j))) {
    const auto& len = edges_[static_cast<std::size_t>(e)].length;
    if (len) d += *len;
  }
  return d;
}

bool is_smooth(const TropicalCurve& curve) {
  return std::all_of(curve.edges().begin(), curve.edges().end(), [](const CurveEdge& e) { return e.length.has_value(); });
}

TropicalCurve stabilize(const TropicalCurve& curve) {
  int n = curve.vertex_count();
  std::vector<CurveEdge> edges = curve.edges();
  std::vector<CurveLeg> legs = curve.legs();
  std::vector<bool> alive(static_cast<std::size_t>(n), true);
  int remaining = n;

  for (bool changed = true; changed && remaining > 1;) {
    changed = false;
    for (int v = 0; v < n && remaining > 1; ++v) {
      if (!alive[static_cast<std::size_t>(v)]) continue;
      std::vector<std::size_t> incident;
      for (std::size_t i = 0; i < edges.size(); ++i)
        if (edges[i].a == v || edges[i].b == v) incident.push_back(i);
      int leg_count = 0;
      for (const auto& l : legs) leg_count += l.vertex == v;
      if (incident.size() + static_cast<std::size_t>(leg_count) != 2) continue;

      if (incident.size() == 2) {
        auto& e1 = edges[incident[0]];
        const auto& e2 = edges[incident[1]];
        const int a = e1.a == v ? e1.b : e1.a;
        const int b = e2.a == v ? e2.b : e2.a;
        std::optional<Rational> len;
        if (e1.length && e2.length) len = *e1.length + *e2.length;
        e1 = CurveEdge{std::min(a, b), std::max(a, b), len};
        edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(incident[1]));
      } else if (incident.size() == 1) {
        const auto& e = edges[incident[0]];
        const int a = e.a == v ? e.b : e.a;
        for (auto& l : legs)
          if (l.vertex == v) l.vertex = a;
        edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(incident[0]));
      } else {
        continue;
      }
      alive[static_cast<std::size_t>(v)] = false;
      --remaining;
      changed = true;
    }
  }

  std::vector<int> renumber(static_cast<std::size_t>(n), -1);
  int next = 0;
  for (int v = 0; v < n; ++v)
    if (alive[static_cast<std::size_t>(v)]) renumber[static_cast<std::size_t>(v)] = next++;
  for (auto& e : edges) {
    e.a = renumber[static_cast<std::size_t>(e.a)];
    e.b = renumber[static_cast<std::size_t>(e.b)];
    if (e.a > e.b) std::swap(e.a, e.b);
  }
  for (auto& l : legs) l.vertex = renumber[static_cast<std::size_t>(l.vertex)];
  return TropicalCurve::create(next, std::move(edges), std::move(legs));
}

int overvalence(const TropicalCurve& curve) {
  int ov = 0;
  for (int val : stabilize(curve).valences()) ov += std::max(0, val - 3);
  return ov;
}

}  // namespace tropcount
