#pragma once

// Counting rational curves through generic constraints: rigid types, their
// evaluation lattices, lattice-index multiplicities and the total degree.

#include "tropcount/moduli.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tropcount {

/// Constraint for one trivial leg: the leg must pass through translation + span(basis).
struct SubspaceConstraint {
  IntMatrix basis;  // rank x dim L; no columns for a point
  RatVector translation;
};

struct ConstraintConfig {
  std::vector<SubspaceConstraint> constraints;  // one per trivial leg, in label order
  std::uint64_t seed = 0;
  int height_bound = 1000;
};

/// Draws the translations from a pseudorandom stream; same seed, same config.
/// An empty `subspaces` list means point constraints everywhere.
ConstraintConfig generate_constraints(const DiscreteData& gamma, const std::vector<IntMatrix>& subspaces,
                                      std::uint64_t seed, int height_bound = 1000);

class CountProblem {
 public:
  CountProblem() = default;
  /// Checks m >= 1, transversality and that the constraint codimension equals the moduli dimension.
  static CountProblem create(DiscreteData gamma, ConstraintConfig constraints);

  const Fan& fan() const noexcept { return gamma_.fan(); }
  const DiscreteData& gamma() const noexcept { return gamma_; }
  const ConstraintConfig& constraints() const noexcept { return constraints_; }
  /// Projection N -> N / L_i and the projected translation for the i-th trivial leg.
  const IntMatrix& projection(std::size_t i) const { return projections_.at(i); }
  const RatVector& target(std::size_t i) const { return targets_.at(i); }
  int codimension() const noexcept { return codimension_; }
  bool point_constraints() const;

 private:
  DiscreteData gamma_;
  ConstraintConfig constraints_;
  std::vector<IntMatrix> projections_;
  std::vector<RatVector> targets_;
  int codimension_ = 0;
};

/// Rigid stabilized types: trivalent trees over all legs whose evaluation map is
/// square and injective. Vertex cones are left unassigned. Legs with equal
/// contact order are interchangeable, so each curve shape appears once.
std::vector<CombinatorialType> enumerate_rigid_types(const CountProblem& problem);

/// The evaluation map on the span lattice of moduli_cone(type).
IntMatrix evaluation_matrix(const CombinatorialType& type, const CountProblem& problem);

/// Lattice index of the evaluation matrix; throws Singular.
Integer multiplicity(const CombinatorialType& type, const CountProblem& problem);

/// Product of |det| over the trivalent vertices of the plane curve after forgetting
/// the trivial legs; throws NotPlanarPointProblem.
Integer mikhalkin_multiplicity(const CombinatorialType& type, const CountProblem& problem);

struct Contribution {
  std::string key;          // canonical form, equal-contact legs interchangeable
  CombinatorialType type;   // stabilized
  TropicalStableMap map;    // solved, cones assigned
  TropicalStableMap subdivided;
  Integer multiplicity;
};

struct CountResult {
  Integer total;
  std::vector<Contribution> contributions;  // sorted by key
  std::uint64_t seed = 0;
  int rejected_nongeneric = 0;
  std::size_t nodes_visited = 0;
};

/// Solves every rigid type against the constraints. Throws NonGeneric when some
/// solution lies on the boundary of its cone.
CountResult count(const CountProblem& problem, int threads = 1);

/// Retries with seeds seed, seed + 1, ... while the constraints are not generic.
CountResult count_resampling(const DiscreteData& gamma, const std::vector<IntMatrix>& subspaces, std::uint64_t seed,
                             int retries, int threads = 1, int height_bound = 1000);

/// Rational plane curves of degree d through 3d - 1 points, by the recursion on d.
Integer kontsevich_oracle(int d);

}  // namespace tropcount
