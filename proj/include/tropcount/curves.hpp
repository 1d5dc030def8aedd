#pragma once

// Abstract marked rational tropical curves: metric trees with labeled legs.

#include "tropcount/exactmath.hpp"

#include <optional>
#include <vector>

namespace tropcount {

struct CurveEdge {
  int a = 0;
  int b = 0;
  std::optional<Rational> length;  // nullopt: infinite length

  friend bool operator==(const CurveEdge&, const CurveEdge&) = default;
};

struct CurveLeg {
  int vertex = 0;
  int label = 0;

  friend bool operator==(const CurveLeg&, const CurveLeg&) = default;
};

class TropicalCurve {
 public:
  TropicalCurve() = default;

  /// Checks the tree property, positive finite lengths and that the leg
  /// labels are exactly 1..#legs.
  static TropicalCurve create(int vertices, std::vector<CurveEdge> edges, std::vector<CurveLeg> legs);

  int vertex_count() const noexcept { return vertices_; }
  const std::vector<CurveEdge>& edges() const noexcept { return edges_; }
  const std::vector<CurveLeg>& legs() const noexcept { return legs_; }

  /// Internal edges plus legs at each vertex.
  std::vector<int> valences() const;
  int leg_vertex(int label) const;
  /// Internal edge indices along the unique path between two vertices.
  std::vector<int> path(int from, int to) const;
  /// Sum of the finite internal lengths between the vertices of two legs.
  Rational leg_distance(int label_i, int label_j) const;

  friend bool operator==(const TropicalCurve&, const TropicalCurve&) = default;

 private:
  int vertices_ = 0;
  std::vector<CurveEdge> edges_;
  std::vector<CurveLeg> legs_;
};

bool is_smooth(const TropicalCurve& curve);

/// Straightens every 2-valent vertex, adding the lengths of the merged edges.
TropicalCurve stabilize(const TropicalCurve& curve);

/// Sum of (valence - 3) over the vertices of the stabilization.
int overvalence(const TropicalCurve& curve);

}  // namespace tropcount
