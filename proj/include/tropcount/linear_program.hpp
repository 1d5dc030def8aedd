#pragma once

// Exact feasibility for small rational polyhedra
//   { x in Q^n : eq_rows * x = eq_rhs, ge_rows * x >= ge_rhs }.

#include "tropcount/exactmath.hpp"

#include <optional>
#include <vector>

namespace tropcount {

struct LinearConstraints {
  std::size_t variables = 0;
  std::vector<RatVector> eq_rows;
  RatVector eq_rhs;
  std::vector<RatVector> ge_rows;
  RatVector ge_rhs;

  void add_equation(RatVector row, Rational rhs);
  void add_inequality(RatVector row, Rational rhs);
};

/// Returns a point of the polyhedron, or nullopt when it is empty.
std::optional<RatVector> feasible_point(const LinearConstraints& system);

/// Affine parametrization x = base + directions * y of the solutions of eq_rows.
struct AffineSolutionSpace {
  RatVector base;
  std::vector<RatVector> directions;  // each of length `variables`
};

std::optional<AffineSolutionSpace> solve_affine(std::size_t variables,
                                                const std::vector<RatVector>& rows,
                                                const RatVector& rhs);

}  // namespace tropcount
