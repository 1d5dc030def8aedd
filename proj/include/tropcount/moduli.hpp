#pragma once

// Moduli cones of combinatorial types, their faces, the assembled cone complex
// for targets of rank at most two, and its embedding as a fan.

#include "tropcount/maps.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tropcount {

/// The cone of all maps of a fixed type inside prod(sigma_v) x R>=0^E.
/// Coordinates: rank entries per vertex, then one length per internal edge.
/// A type with empty vertex_cones is unassigned: its vertices range over all of N.
struct ModuliCone {
  CombinatorialType type;
  int rank = 0;
  std::size_t ambient_dim = 0;
  IntMatrix constraint_matrix;
  IntMatrix span_basis;
  int dimension = 0;

  std::size_t position_offset(int vertex) const { return static_cast<std::size_t>(rank) * static_cast<std::size_t>(vertex); }
  std::size_t length_offset(std::size_t edge) const {
    return static_cast<std::size_t>(rank) * static_cast<std::size_t>(type.vertex_count) + edge;
  }

  RatVector coordinates(const TropicalStableMap& f) const;
  TropicalStableMap map_at(const RatVector& point) const;
};

ModuliCone moduli_cone(const Fan& fan, const CombinatorialType& type);

enum class Membership { Interior, Boundary, Outside };

std::string_view to_string(Membership m);

Membership contains(const Fan& fan, const ModuliCone& cone, const RatVector& point);
Membership contains(const Fan& fan, const ModuliCone& cone, const TropicalStableMap& f);

/// A point of the relative interior, or nullopt when the relative interior is empty.
std::optional<RatVector> relative_interior_point(const Fan& fan, const ModuliCone& cone);

struct FaceType {
  enum class Kind { Contraction, Specialization };
  CombinatorialType type;
  Kind kind = Kind::Contraction;
  int index = 0;        // contracted edge or specialized vertex of the parent
  IntMatrix inclusion;  // parent ambient x face ambient
};

/// Codimension-one faces from single edge contractions and single vertex-cone
/// specializations; candidates of the wrong dimension or with empty interior are dropped.
std::vector<FaceType> face_types(const Fan& fan, const CombinatorialType& type);

struct FaceMap {
  std::size_t face = 0;
  std::size_t cone = 0;
  IntMatrix inclusion;  // cone span coordinates x face span coordinates
};

struct ConeComplex {
  Fan fan;
  DiscreteData gamma;
  std::vector<ModuliCone> cones;   // sorted by (dimension, key)
  std::vector<std::string> keys;   // canonical forms
  std::vector<FaceMap> face_maps;
  bool assembled = false;

  std::vector<int> f_vector() const;
  std::optional<std::size_t> find(const CombinatorialType& type) const;
  /// Indices of cones having `cone` as a codimension-one face, and vice versa.
  std::vector<std::size_t> facets(std::size_t cone) const;
  std::vector<std::size_t> cofacets(std::size_t cone) const;
};

/// Stable leaf-labeled trees with `legs` legs: every vertex has valence at least 3,
/// except the single vertex of a tree with fewer than three legs.
struct LabeledTree {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;  // a < b
  std::vector<int> leg_vertex;             // leg_vertex[label - 1]
};

std::vector<LabeledTree> stable_trees(int legs);
std::vector<LabeledTree> trivalent_trees(int legs);

/// Builds every type with data gamma by decomposing the parameter space of each
/// stable tree into the regions where the subdivided type is constant.
ConeComplex assemble_complex(const DiscreteData& gamma, int threads = 1);

struct EmbeddedFan {
  int ambient_rank = 0;
  std::vector<std::vector<IntVector>> cone_images;  // per complex cone
  std::vector<IntMatrix> lattice_maps;             // per complex cone: k x dim
  std::vector<IntMatrix> ambient_maps;             // per complex cone: k x ambient
  std::vector<IntVector> rays;                     // images of the 1-dimensional cones
  std::vector<RaySet> cones;                       // per complex cone, indices into rays

  /// The image as a fan; throws when the images are not simplicial.
  Fan as_fan() const;
};

/// Sends a map to the position of the root leg's vertex together with the leg
/// distances modulo the leg translations. Root defaults to the lowest label.
EmbeddedFan gkm_embedding(const ConeComplex& complex, std::optional<int> root_label = std::nullopt);

/// Ambient rank of the embedding: dim + C(L,2) minus the rank of the translation lattice.
int embedding_rank(int fan_rank, int legs);

}  // namespace tropcount
