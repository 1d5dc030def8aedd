#pragma once

// Exact integer and rational linear algebra over GMP: Smith normal form,
// saturated integer kernels, lattice indices and rational solving.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tropcount {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

enum class ErrorKind {
  InvalidArgument,
  Parse,
  RankDeficient,
  NotComplete,
  NonSimplicial,
  DependentGenerators,
  DirectionOutsideFan,
  InfiniteCrossing,
  UnknownLabel,
  InvalidType,
  ShapeMismatch,
  UnsupportedRank,
  NotAssembled,
  CodimensionMismatch,
  Singular,
  NotPlanarPointProblem,
  NonGeneric,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);
  static IntMatrix from_columns(const std::vector<IntVector>& columns, std::size_t rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  IntVector row(std::size_t i) const;
  IntVector column(std::size_t j) const;
  std::vector<IntVector> columns() const;

  IntMatrix transpose() const;
  IntMatrix select_columns(std::span<const std::size_t> cols) const;
  IntMatrix select_rows(std::span<const std::size_t> rows) const;
  /// Stack `below` under this matrix; column counts must agree.
  IntMatrix vstack(const IntMatrix& below) const;
  IntMatrix hstack(const IntMatrix& right) const;

  IntVector apply(const IntVector& x) const;
  RatVector apply(const RatVector& x) const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

  bool is_zero() const;
  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> entries_;
};

struct SmithDecomposition {
  IntMatrix left;
  IntMatrix diag;
  IntMatrix right;

  std::size_t rank() const;
  IntVector diagonal() const;
};

/// left * a * right == diag with unimodular left/right and the usual
/// divisibility chain on the (nonnegative) diagonal.
SmithDecomposition smith_normal_form(const IntMatrix& a);

/// Index of a(Z^cols) in Z^rows. Throws RankDeficient unless a has full row rank.
Integer lattice_index(const IntMatrix& a);

/// Columns form a basis of {x in Z^cols : a x = 0}, in column Hermite form.
IntMatrix integer_kernel(const IntMatrix& a);

/// Row Hermite normal form of the row lattice; zero rows are dropped.
IntMatrix hermite_rows(const IntMatrix& a);

std::size_t rank(const IntMatrix& a);
Integer determinant(const IntMatrix& a);

struct RationalSolution {
  RatVector x;
  bool unique = false;
};

std::optional<RationalSolution> solve_rational(const IntMatrix& a, const RatVector& b);

Integer gcd(std::span<const Integer> v);
bool is_primitive(std::span<const Integer> v);
IntVector primitive_part(const IntVector& v);
bool is_zero(std::span<const Integer> v);
bool is_zero(std::span<const Rational> v);

std::string format_rational(const Rational& q);
Rational parse_rational(std::string_view text);
RatVector to_rational(const IntVector& v);

}  // namespace tropcount
