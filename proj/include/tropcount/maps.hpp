#pragma once

// Tropical stable maps to a fan: discrete data, combinatorial types, concrete
// maps, validation, minimal subdivision and tropical evaluation.

#include "tropcount/curves.hpp"
#include "tropcount/polyhedral.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace tropcount {

struct ContactLeg {
  int label = 0;
  IntVector contact;
};

/// The discrete data of a moduli problem: target fan, n legs with nonzero
/// contact order and m legs with trivial contact order.
class DiscreteData {
 public:
  DiscreteData() = default;
  static DiscreteData create(Fan fan, std::vector<ContactLeg> contact_legs, std::vector<int> trivial_legs);

  const Fan& fan() const noexcept { return fan_; }
  const std::vector<ContactLeg>& contact_legs() const noexcept { return contact_legs_; }
  const std::vector<int>& trivial_legs() const noexcept { return trivial_legs_; }
  int n() const noexcept { return static_cast<int>(contact_legs_.size()); }
  int m() const noexcept { return static_cast<int>(trivial_legs_.size()); }
  int leg_count() const noexcept { return n() + m(); }

  /// Contact order of a leg; zero for trivial legs.
  IntVector contact(int label) const;
  bool is_trivial(int label) const;

  /// Total weight along each ray; defined only for torically transverse data.
  std::optional<IntVector> degree_vector() const;

  /// Expected dimension of the open moduli space: dim X - 3 + n + m.
  int expected_dimension() const;

 private:
  Fan fan_;
  std::vector<ContactLeg> contact_legs_;
  std::vector<int> trivial_legs_;
};

bool torically_transverse(const DiscreteData& gamma);

/// Degree-d curves in P^r meeting each toric boundary divisor in d unit contacts.
std::vector<ContactLeg> projective_contacts(int r, int degree);
/// Bidegree (a, b) curves in P1 x P1 with unit contacts.
std::vector<ContactLeg> p1xp1_contacts(int a, int b);

struct TypeEdge {
  int tail = 0;
  int head = 0;
  IntVector contact;  // oriented tail -> head
  int carrier = 0;

  friend bool operator==(const TypeEdge&, const TypeEdge&) = default;
};

struct TypeLeg {
  int vertex = 0;
  int label = 0;
  IntVector contact;  // outgoing
  int carrier = 0;

  friend bool operator==(const TypeLeg&, const TypeLeg&) = default;
};

/// The combinatorial type of a map: tree, cone of every vertex, contact
/// order and carrier cone of every edge and leg.
struct CombinatorialType {
  int vertex_count = 0;
  std::vector<int> vertex_cones;
  std::vector<TypeEdge> edges;
  std::vector<TypeLeg> legs;

  /// Balancing, carrier compatibility and orientation convention; empty when valid.
  std::vector<std::string> invariant_violations(const Fan& fan) const;
  void check(const Fan& fan) const;

  TropicalCurve shape(const std::vector<std::optional<Rational>>& lengths) const;
  /// Sum of outgoing contact orders at a vertex.
  IntVector outgoing(int vertex) const;
  std::vector<int> valences() const;
  const TypeLeg& leg(int label) const;

  friend bool operator==(const CombinatorialType&, const CombinatorialType&) = default;
};

struct TropicalStableMap {
  CombinatorialType type;
  std::vector<RatVector> positions;
  std::vector<std::optional<Rational>> lengths;  // nullopt: infinite internal edge

  /// The metric source curve.
  TropicalCurve curve() const;
  Rational length(std::size_t edge) const;
};

enum class Condition {
  Tree,
  Smoothness,
  PositiveLength,
  PositionInCone,
  EdgeEquation,
  EdgeInCone,
  Balancing,
  Stability,
};

std::string_view to_string(Condition c);

struct Violation {
  Condition condition;
  std::string location;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool valid() const noexcept { return violations.empty(); }
  bool has(Condition c) const;
  std::string summary() const;
};

ValidationReport validate(const Fan& fan, const TropicalStableMap& f);

/// Vertices of valence below three that are not wall crossings.
std::vector<Violation> stability_violations(const Fan& fan, const CombinatorialType& type);

/// Carrier cone of a ray p + t c, t > 0 small; nullopt when no single cone works.
std::optional<int> leg_carrier(const Fan& fan, int vertex_cone, const IntVector& contact);

/// Fills vertex cones from positions and carriers from the actual edge segments.
void assign_cones(const Fan& fan, TropicalStableMap& f);

/// Inserts 2-valent vertices exactly where edges and legs cross cone walls.
TropicalStableMap subdivide(const Fan& fan, const TropicalStableMap& f);

ExtendedPoint ev_trop(const Fan& fan, const TropicalStableMap& f, int label);

/// Canonical serialization of a type up to renumbering of vertices, with leg
/// labels passed through `label_key`. `order` receives the canonical vertex order.
std::string canonical_form(const CombinatorialType& type, const std::function<std::string(int)>& label_key,
                           std::vector<int>* order = nullptr);

struct Relabeling {
  std::vector<int> vertex;     // old vertex -> new vertex
  std::vector<int> edge;       // old edge -> new edge
  std::vector<int> edge_sign;  // +1 if orientation kept, -1 if flipped
};

/// Renumbers vertices in canonical order and restores the orientation convention.
CombinatorialType canonicalize(const CombinatorialType& type, Relabeling* relabel = nullptr);

/// Relabels a map's vertices and edges according to `relabel`.
TropicalStableMap apply_relabeling(const TropicalStableMap& f, const CombinatorialType& new_type,
                                   const Relabeling& relabel);

}  // namespace tropcount
