#include "tropcount/linear_program.hpp"

#include <algorithm>

namespace tropcount {

void LinearConstraints::add_equation(RatVector row, Rational rhs) {
  if (row.size() != variables) throw Error(ErrorKind::InvalidArgument, "equation length mismatch");
  eq_rows.push_back(std::move(row));
  eq_rhs.push_back(std::move(rhs));
}

void LinearConstraints::add_inequality(RatVector row, Rational rhs) {
  if (row.size() != variables) throw Error(ErrorKind::InvalidArgument, "inequality length mismatch");
  ge_rows.push_back(std::move(row));
  ge_rhs.push_back(std::move(rhs));
}

std::optional<AffineSolutionSpace> solve_affine(std::size_t variables,
                                                const std::vector<RatVector>& rows,
                                                const RatVector& rhs) {
  const std::size_t m = rows.size();
  const std::size_t n = variables;
  std::vector<RatVector> aug(m, RatVector(n + 1));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = rows[i][j];
    aug[i][n] = rhs[i];
  }
  std::vector<std::size_t> pivot_col;
  std::vector<bool> is_pivot(n, false);
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t p = r;
    while (p < m && sgn(aug[p][c]) == 0) ++p;
    if (p == m) continue;
    std::swap(aug[r], aug[p]);
    const Rational inv = 1 / aug[r][c];
    for (std::size_t j = c; j <= n; ++j) aug[r][j] *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || sgn(aug[i][c]) == 0) continue;
      const Rational f = aug[i][c];
      for (std::size_t j = c; j <= n; ++j)
        if (sgn(aug[r][j]) != 0) aug[i][j] -= f * aug[r][j];
    }
    pivot_col.push_back(c);
    is_pivot[c] = true;
    ++r;
  }
  for (std::size_t i = r; i < m; ++i)
    if (sgn(aug[i][n]) != 0) return std::nullopt;

  AffineSolutionSpace space;
  space.base.assign(n, Rational(0));
  for (std::size_t i = 0; i < r; ++i) space.base[pivot_col[i]] = aug[i][n];
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    RatVector dir(n, Rational(0));
    dir[f] = 1;
    for (std::size_t i = 0; i < r; ++i) dir[pivot_col[i]] = -aug[i][f];
    space.directions.push_back(std::move(dir));
  }
  return space;
}

namespace {

// Phase-one simplex over Q with Bland's rule: is { y free : g y >= h } nonempty?
std::optional<RatVector> feasible_free(const std::vector<RatVector>& g, const RatVector& h,
                                       std::size_t dims) {
  const std::size_t m = g.size();
  if (m == 0) return RatVector(dims, Rational(0));
  if (dims == 0) {
    for (std::size_t i = 0; i < m; ++i)
      if (sgn(h[i]) > 0) return std::nullopt;
    return RatVector{};
  }
  // Columns: y+ (dims), y- (dims), surplus s (m), artificials for rows with h > 0.
  // Row i: g_i y - s_i = h_i. If h_i <= 0 negate to -g_i y + s_i = -h_i >= 0 with s_i basic.
  std::vector<std::size_t> art_row;
  for (std::size_t i = 0; i < m; ++i)
    if (sgn(h[i]) > 0) art_row.push_back(i);
  const std::size_t n_art = art_row.size();
  const std::size_t n_cols = 2 * dims + m + n_art;
  std::vector<RatVector> t(m, RatVector(n_cols + 1));
  std::vector<std::size_t> basis(m);
  std::size_t a = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const bool positive = sgn(h[i]) > 0;
    const int s = positive ? 1 : -1;
    for (std::size_t j = 0; j < dims; ++j) {
      if (sgn(g[i][j]) == 0) continue;
      t[i][j] = s * g[i][j];
      t[i][dims + j] = -s * g[i][j];
    }
    t[i][2 * dims + i] = -s;
    t[i][n_cols] = s * h[i];
    if (positive) {
      t[i][2 * dims + m + a] = 1;
      basis[i] = 2 * dims + m + a;
      ++a;
    } else {
      basis[i] = 2 * dims + i;
    }
  }
  if (n_art > 0) {
    // Objective: minimize sum of artificials. Reduced costs = -(sum of artificial rows).
    RatVector cost(n_cols + 1, Rational(0));
    for (std::size_t r : art_row)
      for (std::size_t j = 0; j <= n_cols; ++j)
        if (sgn(t[r][j]) != 0) cost[j] -= t[r][j];
    for (std::size_t k = 0; k < n_art; ++k) cost[2 * dims + m + k] = 0;

    for (;;) {
      std::size_t enter = n_cols;
      for (std::size_t j = 0; j < n_cols; ++j)
        if (sgn(cost[j]) < 0) { enter = j; break; }
      if (enter == n_cols) break;
      std::size_t leave = m;
      Rational best;
      for (std::size_t i = 0; i < m; ++i) {
        if (sgn(t[i][enter]) <= 0) continue;
        Rational ratio = t[i][n_cols] / t[i][enter];
        if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m) break;  // unbounded cannot happen for phase one
      const Rational inv = 1 / t[leave][enter];
      for (std::size_t j = 0; j <= n_cols; ++j)
        if (sgn(t[leave][j]) != 0) t[leave][j] *= inv;
      for (std::size_t i = 0; i < m; ++i) {
        if (i == leave || sgn(t[i][enter]) == 0) continue;
        const Rational f = t[i][enter];
        for (std::size_t j = 0; j <= n_cols; ++j)
          if (sgn(t[leave][j]) != 0) t[i][j] -= f * t[leave][j];
      }
      if (sgn(cost[enter]) != 0) {
        const Rational f = cost[enter];
        for (std::size_t j = 0; j <= n_cols; ++j)
          if (sgn(t[leave][j]) != 0) cost[j] -= f * t[leave][j];
      }
      basis[leave] = enter;
    }
    if (sgn(cost[n_cols]) != 0) return std::nullopt;
  }
  RatVector y(dims, Rational(0));
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t b = basis[i];
    if (b < dims) y[b] += t[i][n_cols];
    else if (b < 2 * dims) y[b - dims] -= t[i][n_cols];
  }
  return y;
}

}  // namespace

std::optional<RatVector> feasible_point(const LinearConstraints& system) {
  const std::size_t n = system.variables;
  auto space = solve_affine(n, system.eq_rows, system.eq_rhs);
  if (!space) return std::nullopt;
  const std::size_t dims = space->directions.size();

  std::vector<RatVector> g;
  RatVector h;
  for (std::size_t i = 0; i < system.ge_rows.size(); ++i) {
    const auto& row = system.ge_rows[i];
    Rational offset = 0;
    RatVector reduced(dims, Rational(0));
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(row[j]) == 0) continue;
      offset += row[j] * space->base[j];
      for (std::size_t k = 0; k < dims; ++k)
        if (sgn(space->directions[k][j]) != 0) reduced[k] += row[j] * space->directions[k][j];
    }
    Rational rhs = system.ge_rhs[i] - offset;
    if (is_zero(std::span<const Rational>(reduced))) {
      if (sgn(rhs) > 0) return std::nullopt;
      continue;
    }
    g.push_back(std::move(reduced));
    h.push_back(std::move(rhs));
  }
  auto y = feasible_free(g, h, dims);
  if (!y) return std::nullopt;
  RatVector x = space->base;
  for (std::size_t k = 0; k < dims; ++k)
    if (sgn((*y)[k]) != 0)
      for (std::size_t j = 0; j < n; ++j) x[j] += (*y)[k] * space->directions[k][j];
  return x;
}

}  // namespace tropcount
