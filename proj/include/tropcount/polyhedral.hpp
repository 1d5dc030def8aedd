#pragma once

// Complete simplicial fans, exact point location, products, the stratification
// of the compactified fan by quotients N / span(sigma), and quotient projections.

#include "tropcount/exactmath.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tropcount {

using RaySet = std::vector<int>;  // sorted ray indices

/// A simplicial fan in Z^rank. Cones are stored closed under faces and sorted
/// by (dimension, ray set); index 0 is always the zero cone.
class Fan {
 public:
  Fan() = default;

  /// Validates primitivity and simpliciality and adds all faces of the given cones.
  static Fan create(int rank, std::vector<IntVector> rays, const std::vector<RaySet>& cones,
                    std::string name = {});

  int rank() const noexcept { return rank_; }
  const std::string& name() const noexcept { return name_; }
  const std::vector<IntVector>& rays() const noexcept { return rays_; }
  const std::vector<RaySet>& cones() const noexcept { return cones_; }
  std::size_t cone_count() const noexcept { return cones_.size(); }
  const RaySet& cone(int index) const { return cones_.at(static_cast<std::size_t>(index)); }
  int dimension(int index) const { return static_cast<int>(cone(index).size()); }

  std::vector<int> maximal_cones() const;
  std::optional<int> find_cone(const RaySet& rays) const;
  std::optional<int> ray_cone(const IntVector& primitive_ray) const;

  /// Smallest cone having both as faces, if any.
  std::optional<int> join(int a, int b) const;
  /// Common face.
  int meet(int a, int b) const;
  bool is_face(int face, int of) const;
  /// Cones obtained from `index` by dropping exactly one ray.
  std::vector<int> facets(int index) const;

  IntMatrix ray_matrix(int index) const;
  /// Coefficients on the cone's rays if the point lies in the span of the cone.
  std::optional<RatVector> coefficients(int index, const RatVector& point) const;
  bool contains_closed(int index, const RatVector& point) const;
  bool contains_relint(int index, const RatVector& point) const;

  /// Cone whose relative interior contains the point. Throws NotComplete.
  int locate(const RatVector& point) const;
  int locate(const IntVector& point) const;

  /// Index of the cone's row in the quotient-projection cache.
  const IntMatrix& quotient_rows(int index) const { return quotients_.at(static_cast<std::size_t>(index)); }

 private:
  int rank_ = 0;
  std::string name_;
  std::vector<IntVector> rays_;
  std::vector<RaySet> cones_;
  std::map<RaySet, int> index_;
  // Full-dimensional maximal cones with their inverse ray matrices (row-major, rank x rank).
  std::vector<std::pair<int, std::vector<Rational>>> full_cones_;
  std::vector<IntMatrix> quotients_;
};

Fan point_fan();
Fan fan_projective_space(int r);
Fan fan_product(const Fan& f, const Fan& g);
/// Named constructors: p1, p2, p3, ..., p1xp1.
Fan named_fan(const std::string& name);

int locate(const Fan& fan, const RatVector& point);

struct QuotientProjection {
  IntMatrix subspace_basis;  // rank x dim L, saturated
  IntMatrix projection;      // (rank - dim L) x rank, surjective, kernel = span of subspace_basis
};

/// Projection Z^rank -> Z^(rank - dim L) whose kernel is the saturation of L.
QuotientProjection quotient_projection(int rank, const IntMatrix& l_basis);
QuotientProjection quotient_projection(const Fan& fan, const IntMatrix& l_basis);

/// A point of the compactified fan: a cone and a coset of N / span(cone).
struct ExtendedPoint {
  int stratum_cone = 0;
  RatVector coset;

  friend bool operator==(const ExtendedPoint&, const ExtendedPoint&) = default;
};

/// The limit of base + t * direction as t -> infinity.
ExtendedPoint extended_point(const Fan& fan, const RatVector& base, const IntVector& direction);

/// A matrix in GL(rank, Z) carrying the rays and cones of `a` onto those of `b`.
std::optional<IntMatrix> unimodular_equivalence(const Fan& a, const Fan& b);

std::string to_string(const IntVector& v);
std::string to_string(const RatVector& v);

}  // namespace tropcount
