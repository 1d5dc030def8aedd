#include "tropcount/exactmath.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <utility>

namespace tropcount {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::NotComplete: return "NotComplete";
    case ErrorKind::NonSimplicial: return "NonSimplicial";
    case ErrorKind::DependentGenerators: return "DependentGenerators";
    case ErrorKind::DirectionOutsideFan: return "DirectionOutsideFan";
    case ErrorKind::InfiniteCrossing: return "InfiniteCrossing";
    case ErrorKind::UnknownLabel: return "UnknownLabel";
    case ErrorKind::InvalidType: return "InvalidType";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::UnsupportedRank: return "UnsupportedRank";
    case ErrorKind::NotAssembled: return "NotAssembled";
    case ErrorKind::CodimensionMismatch: return "CodimensionMismatch";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::NotPlanarPointProblem: return "NotPlanarPointProblem";
    case ErrorKind::NonGeneric: return "NonGeneric";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorKind::InvalidArgument, "ragged matrix literal");
    for (long v : r) entries_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error(ErrorKind::InvalidArgument, "row length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector>& columns, std::size_t rows) {
  IntMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) throw Error(ErrorKind::InvalidArgument, "column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

IntVector IntMatrix::row(std::size_t i) const {
  return IntVector(entries_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

IntVector IntMatrix::column(std::size_t j) const {
  IntVector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

std::vector<IntVector> IntMatrix::columns() const {
  std::vector<IntVector> out;
  out.reserve(cols_);
  for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::select_columns(std::span<const std::size_t> cols) const {
  IntMatrix m(rows_, cols.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = (*this)(i, cols[j]);
  return m;
}

IntMatrix IntMatrix::select_rows(std::span<const std::size_t> rows) const {
  IntMatrix m(rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(rows[i], j);
  return m;
}

IntMatrix IntMatrix::vstack(const IntMatrix& below) const {
  if (rows_ == 0) return below;
  if (below.rows_ == 0) return *this;
  if (below.cols_ != cols_) throw Error(ErrorKind::InvalidArgument, "vstack column mismatch");
  IntMatrix m(rows_ + below.rows_, cols_);
  std::copy(entries_.begin(), entries_.end(), m.entries_.begin());
  std::copy(below.entries_.begin(), below.entries_.end(),
            m.entries_.begin() + static_cast<std::ptrdiff_t>(entries_.size()));
  return m;
}

IntMatrix IntMatrix::hstack(const IntMatrix& right) const {
  if (right.rows_ != rows_) throw Error(ErrorKind::InvalidArgument, "hstack row mismatch");
  IntMatrix m(rows_, cols_ + right.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < right.cols_; ++j) m(i, cols_ + j) = right(i, j);
  }
  return m;
}

IntVector IntMatrix::apply(const IntVector& x) const {
  if (x.size() != cols_) throw Error(ErrorKind::InvalidArgument, "apply: dimension mismatch");
  IntVector y(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (sgn((*this)(i, j)) != 0) y[i] += (*this)(i, j) * x[j];
  return y;
}

RatVector IntMatrix::apply(const RatVector& x) const {
  if (x.size() != cols_) throw Error(ErrorKind::InvalidArgument, "apply: dimension mismatch");
  RatVector y(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (sgn((*this)(i, j)) != 0) y[i] += Rational((*this)(i, j)) * x[j];
  return y;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorKind::InvalidArgument, "matrix product dimension mismatch");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
}

bool IntMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Integer& v) { return sgn(v) == 0; });
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j).get_str();
    os << ']';
  }
  os << ']';
  return os.str();
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

int cmpabs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row[dst] += factor * row[src]
void add_row(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& factor) {
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (sgn(m(src, j)) != 0) m(dst, j) += factor * m(src, j);
}

void add_col(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& factor) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (sgn(m(i, src)) != 0) m(i, dst) += factor * m(i, src);
}

void negate_row(IntMatrix& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

}  // namespace

std::size_t SmithDecomposition::rank() const {
  std::size_t r = 0;
  for (std::size_t i = 0; i < std::min(diag.rows(), diag.cols()); ++i)
    if (sgn(diag(i, i)) != 0) ++r;
  return r;
}

IntVector SmithDecomposition::diagonal() const {
  IntVector d;
  for (std::size_t i = 0; i < std::min(diag.rows(), diag.cols()); ++i) d.push_back(diag(i, i));
  return d;
}

SmithDecomposition smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  IntMatrix d = a;
  IntMatrix u = IntMatrix::identity(m);
  IntMatrix v = IntMatrix::identity(n);

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    std::size_t pi = m, pj = n;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (sgn(d(i, j)) != 0 && (pi == m || cmpabs(d(i, j), d(pi, pj)) < 0)) {
          pi = i;
          pj = j;
        }
    if (pi == m) break;
    swap_rows(d, t, pi);
    swap_rows(u, t, pi);
    swap_cols(d, t, pj);
    swap_cols(v, t, pj);

    for (;;) {
      bool clean = true;
      Integer q;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (sgn(d(i, t)) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), d(i, t).get_mpz_t(), d(t, t).get_mpz_t());
        Integer f = -q;
        add_row(d, i, t, f);
        add_row(u, i, t, f);
        if (sgn(d(i, t)) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (sgn(d(t, j)) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), d(t, j).get_mpz_t(), d(t, t).get_mpz_t());
        Integer f = -q;
        add_col(d, j, t, f);
        add_col(v, j, t, f);
        if (sgn(d(t, j)) != 0) clean = false;
      }
      if (!clean) {
        // A remainder smaller than the pivot survived; promote it.
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < m; ++i)
          if (sgn(d(i, t)) != 0 && cmpabs(d(i, t), d(bi, bj)) < 0) { bi = i; bj = t; }
        for (std::size_t j = t + 1; j < n; ++j)
          if (sgn(d(t, j)) != 0 && cmpabs(d(t, j), d(bi, bj)) < 0) { bi = t; bj = j; }
        swap_rows(d, t, bi);
        swap_rows(u, t, bi);
        swap_cols(d, t, bj);
        swap_cols(v, t, bj);
        continue;
      }
      // Row and column are clear; enforce divisibility of the trailing block.
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
            add_row(d, t, i, Integer(1));
            add_row(u, t, i, Integer(1));
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (sgn(d(t, t)) < 0) {
      negate_row(d, t);
      negate_row(u, t);
    }
  }
  return {std::move(u), std::move(d), std::move(v)};
}

Integer lattice_index(const IntMatrix& a) {
  const auto snf = smith_normal_form(a);
  if (snf.rank() < a.rows())
    throw Error(ErrorKind::RankDeficient,
                "rank " + std::to_string(snf.rank()) + " < " + std::to_string(a.rows()) + " rows");
  Integer index = 1;
  for (std::size_t i = 0; i < a.rows(); ++i) index *= snf.diag(i, i);
  return index;
}

IntMatrix hermite_rows(const IntMatrix& a) {
  IntMatrix h = a;
  const std::size_t m = h.rows();
  const std::size_t n = h.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    // Euclid down the column until only row r is nonzero.
    for (;;) {
      std::size_t best = m;
      for (std::size_t i = r; i < m; ++i)
        if (sgn(h(i, c)) != 0 && (best == m || cmpabs(h(i, c), h(best, c)) < 0)) best = i;
      if (best == m) break;
      swap_rows(h, r, best);
      bool done = true;
      Integer q;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (sgn(h(i, c)) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), h(r, c).get_mpz_t());
        add_row(h, i, r, Integer(-q));
        if (sgn(h(i, c)) != 0) done = false;
      }
      if (done) break;
    }
    if (sgn(h(r, c)) == 0) continue;
    if (sgn(h(r, c)) < 0) negate_row(h, r);
    Integer q;
    for (std::size_t i = 0; i < r; ++i) {
      mpz_fdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), h(r, c).get_mpz_t());
      if (sgn(q) != 0) add_row(h, i, r, Integer(-q));
    }
    ++r;
  }
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < r; ++i) keep.push_back(i);
  return h.select_rows(keep);
}

IntMatrix integer_kernel(const IntMatrix& a) {
  const auto snf = smith_normal_form(a);
  const std::size_t r = snf.rank();
  std::vector<std::size_t> cols;
  for (std::size_t j = r; j < a.cols(); ++j) cols.push_back(j);
  if (cols.empty()) return IntMatrix(a.cols(), 0);
  IntMatrix raw = snf.right.select_columns(cols);
  return hermite_rows(raw.transpose()).transpose();
}

std::size_t rank(const IntMatrix& a) {
  // Fraction-free elimination.
  IntMatrix m = a;
  std::size_t r = 0;
  Integer prev = 1;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
    if (p == m.rows()) continue;
    swap_rows(m, r, p);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      for (std::size_t j = c + 1; j < m.cols(); ++j) {
        m(i, j) = m(r, c) * m(i, j) - m(i, c) * m(r, j);
        mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), prev.get_mpz_t());
      }
      m(i, c) = 0;
    }
    prev = m(r, c);
    ++r;
  }
  return r;
}

Integer determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::InvalidArgument, "determinant of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(m(k, k)) == 0) {
      std::size_t p = k + 1;
      while (p < n && sgn(m(p, k)) == 0) ++p;
      if (p == n) return 0;
      swap_rows(m, k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = m(k, k) * m(i, j) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

std::optional<RationalSolution> solve_rational(const IntMatrix& a, const RatVector& b) {
  if (b.size() != a.rows()) throw Error(ErrorKind::InvalidArgument, "solve_rational: rhs length mismatch");
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  std::vector<RatVector> aug(m, RatVector(n + 1));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = a(i, j);
    aug[i][n] = b[i];
  }
  std::vector<std::size_t> pivots;
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
    pivots.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < m; ++i)
    if (sgn(aug[i][n]) != 0) return std::nullopt;
  RationalSolution sol;
  sol.x.assign(n, Rational(0));
  for (std::size_t i = 0; i < r; ++i) sol.x[pivots[i]] = aug[i][n];
  sol.unique = (r == n);
  return sol;
}

// ---------------------------------------------------------------------------
// vectors and formatting

Integer gcd(std::span<const Integer> v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

bool is_primitive(std::span<const Integer> v) { return gcd(v) == 1; }

IntVector primitive_part(const IntVector& v) {
  const Integer g = gcd(v);
  if (g == 0) return v;
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) mpz_divexact(out[i].get_mpz_t(), v[i].get_mpz_t(), g.get_mpz_t());
  return out;
}

bool is_zero(std::span<const Integer> v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return sgn(x) == 0; });
}

bool is_zero(std::span<const Rational> v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

std::string format_rational(const Rational& value) {
  Rational q = value;
  q.canonicalize();
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  auto valid_int = [](std::string_view t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    return std::all_of(t.begin() + static_cast<std::ptrdiff_t>(i), t.end(),
                       [](unsigned char c) { return std::isdigit(c); });
  };
  const auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den)) throw Error(ErrorKind::Parse, "bad rational '" + s + "'");
  if (num[0] == '+') num.erase(0, 1);
  if (den[0] == '+') den.erase(0, 1);
  Integer p(num), q(den);
  if (q == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + s + "'");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

RatVector to_rational(const IntVector& v) {
  RatVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(x);
  return out;
}

}  // namespace tropcount
