#include "tropcount/polyhedral.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace tropcount {

namespace {

void add_faces(const RaySet& cone, std::set<RaySet>& out) {
  if (!out.insert(cone).second) return;
  for (std::size_t i = 0; i < cone.size(); ++i) {
    RaySet face = cone;
    face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
    add_faces(face, out);
  }
}

bool cone_order(const RaySet& a, const RaySet& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

std::vector<Rational> rational_inverse(const IntMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<Rational> inv(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    RatVector e(n, Rational(0));
    e[j] = 1;
    auto sol = solve_rational(m, e);
    for (std::size_t i = 0; i < n; ++i) inv[i * n + j] = sol->x[i];
  }
  return inv;
}

}  // namespace

Fan Fan::create(int rank, std::vector<IntVector> rays, const std::vector<RaySet>& cones,
                std::string name) {
  if (rank < 0) throw Error(ErrorKind::InvalidArgument, "negative fan rank");
  Fan fan;
  fan.rank_ = rank;
  fan.name_ = std::move(name);
  for (const auto& r : rays) {
    if (static_cast<int>(r.size()) != rank)
      throw Error(ErrorKind::InvalidArgument, "ray " + to_string(r) + " has wrong length");
    if (!is_primitive(r)) throw Error(ErrorKind::InvalidArgument, "ray " + to_string(r) + " is not primitive");
  }
  {
    std::set<IntVector> distinct(rays.begin(), rays.end());
    if (distinct.size() != rays.size()) throw Error(ErrorKind::InvalidArgument, "duplicate rays");
  }
  fan.rays_ = std::move(rays);

  std::set<RaySet> all;
  all.insert(RaySet{});
  for (RaySet c : cones) {
    std::sort(c.begin(), c.end());
    if (std::adjacent_find(c.begin(), c.end()) != c.end())
      throw Error(ErrorKind::InvalidArgument, "cone repeats a ray");
    for (int r : c)
      if (r < 0 || r >= static_cast<int>(fan.rays_.size()))
        throw Error(ErrorKind::InvalidArgument, "cone references unknown ray " + std::to_string(r));
    add_faces(c, all);
  }
  fan.cones_.assign(all.begin(), all.end());
  std::sort(fan.cones_.begin(), fan.cones_.end(), cone_order);
  for (std::size_t i = 0; i < fan.cones_.size(); ++i) fan.index_[fan.cones_[i]] = static_cast<int>(i);

  for (std::size_t i = 0; i < fan.cones_.size(); ++i) {
    const IntMatrix rm = fan.ray_matrix(static_cast<int>(i));
    if (tropcount::rank(rm) != fan.cones_[i].size())
      throw Error(ErrorKind::NonSimplicial, "cone with rays " + to_string(IntVector(fan.cones_[i].begin(), fan.cones_[i].end())) +
                                                " is not simplicial");
  }
  for (int c : fan.maximal_cones())
    if (fan.dimension(c) == rank && rank > 0) fan.full_cones_.emplace_back(c, rational_inverse(fan.ray_matrix(c)));
  fan.quotients_.reserve(fan.cones_.size());
  for (std::size_t i = 0; i < fan.cones_.size(); ++i)
    fan.quotients_.push_back(quotient_projection(rank, fan.ray_matrix(static_cast<int>(i))).projection);
  return fan;
}

std::vector<int> Fan::maximal_cones() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < cones_.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j < cones_.size() && maximal; ++j)
      if (cones_[j].size() > cones_[i].size() &&
          std::includes(cones_[j].begin(), cones_[j].end(), cones_[i].begin(), cones_[i].end()))
        maximal = false;
    if (maximal) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::optional<int> Fan::find_cone(const RaySet& rays) const {
  RaySet key = rays;
  std::sort(key.begin(), key.end());
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Fan::ray_cone(const IntVector& primitive_ray) const {
  for (std::size_t i = 0; i < rays_.size(); ++i)
    if (rays_[i] == primitive_ray) return find_cone(RaySet{static_cast<int>(i)});
  return std::nullopt;
}

std::optional<int> Fan::join(int a, int b) const {
  RaySet u;
  std::set_union(cone(a).begin(), cone(a).end(), cone(b).begin(), cone(b).end(), std::back_inserter(u));
  return find_cone(u);
}

int Fan::meet(int a, int b) const {
  RaySet u;
  std::set_intersection(cone(a).begin(), cone(a).end(), cone(b).begin(), cone(b).end(), std::back_inserter(u));
  return *find_cone(u);
}

bool Fan::is_face(int face, int of) const {
  return std::includes(cone(of).begin(), cone(of).end(), cone(face).begin(), cone(face).end());
}

std::vector<int> Fan::facets(int index) const {
  std::vector<int> out;
  const RaySet& c = cone(index);
  for (std::size_t i = 0; i < c.size(); ++i) {
    RaySet f = c;
    f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
    out.push_back(*find_cone(f));
  }
  return out;
}

IntMatrix Fan::ray_matrix(int index) const {
  const RaySet& c = cone(index);
  IntMatrix m(static_cast<std::size_t>(rank_), c.size());
  for (std::size_t j = 0; j < c.size(); ++j)
    for (int i = 0; i < rank_; ++i) m(static_cast<std::size_t>(i), j) = rays_[static_cast<std::size_t>(c[j])][static_cast<std::size_t>(i)];
  return m;
}

std::optional<RatVector> Fan::coefficients(int index, const RatVector& point) const {
  if (static_cast<int>(point.size()) != rank_) throw Error(ErrorKind::InvalidArgument, "point has wrong dimension");
  auto sol = solve_rational(ray_matrix(index), point);
  if (!sol) return std::nullopt;
  return sol->x;
}

bool Fan::contains_closed(int index, const RatVector& point) const {
  auto lambda = coefficients(index, point);
  if (!lambda) return false;
  return std::all_of(lambda->begin(), lambda->end(), [](const Rational& x) { return sgn(x) >= 0; });
}

bool Fan::contains_relint(int index, const RatVector& point) const {
  auto lambda = coefficients(index, point);
  if (!lambda) return false;
  return std::all_of(lambda->begin(), lambda->end(), [](const Rational& x) { return sgn(x) > 0; });
}

int Fan::locate(const RatVector& point) const {
  if (static_cast<int>(point.size()) != rank_) throw Error(ErrorKind::InvalidArgument, "point has wrong dimension");
  if (is_zero(std::span<const Rational>(point))) return 0;
  const std::size_t n = static_cast<std::size_t>(rank_);
  for (const auto& [c, inv] : full_cones_) {
    const RaySet& rs = cone(c);
    RaySet support;
    bool inside = true;
    for (std::size_t i = 0; i < n && inside; ++i) {
      Rational li = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (sgn(point[j]) != 0 && sgn(inv[i * n + j]) != 0) li += inv[i * n + j] * point[j];
      if (sgn(li) < 0) inside = false;
      else if (sgn(li) > 0) support.push_back(rs[i]);
    }
    if (inside) return *find_cone(support);
  }
  // Lower-dimensional maximal cones of incomplete fans.
  for (std::size_t c = 1; c < cones_.size(); ++c)
    if (contains_relint(static_cast<int>(c), point)) return static_cast<int>(c);
  throw Error(ErrorKind::NotComplete, "no cone of fan '" + name_ + "' contains " + to_string(point));
}

int Fan::locate(const IntVector& point) const { return locate(to_rational(point)); }

int locate(const Fan& fan, const RatVector& point) { return fan.locate(point); }

// ---------------------------------------------------------------------------

Fan point_fan() { return Fan::create(0, {}, {}, "point"); }

Fan fan_projective_space(int r) {
  if (r < 1) throw Error(ErrorKind::InvalidArgument, "projective space needs dimension >= 1");
  std::vector<IntVector> rays;
  for (int i = 0; i < r; ++i) {
    IntVector e(static_cast<std::size_t>(r), Integer(0));
    e[static_cast<std::size_t>(i)] = 1;
    rays.push_back(e);
  }
  rays.emplace_back(static_cast<std::size_t>(r), Integer(-1));
  std::vector<RaySet> cones;
  for (int skip = 0; skip <= r; ++skip) {
    RaySet c;
    for (int i = 0; i <= r; ++i)
      if (i != skip) c.push_back(i);
    cones.push_back(c);
  }
  return Fan::create(r, std::move(rays), cones, "p" + std::to_string(r));
}

Fan fan_product(const Fan& f, const Fan& g) {
  const int rank = f.rank() + g.rank();
  std::vector<IntVector> rays;
  for (const auto& r : f.rays()) {
    IntVector v = r;
    v.resize(static_cast<std::size_t>(rank), Integer(0));
    rays.push_back(v);
  }
  for (const auto& r : g.rays()) {
    IntVector v(static_cast<std::size_t>(f.rank()), Integer(0));
    v.insert(v.end(), r.begin(), r.end());
    rays.push_back(v);
  }
  const int offset = static_cast<int>(f.rays().size());
  std::vector<RaySet> cones;
  for (int a : f.maximal_cones())
    for (int b : g.maximal_cones()) {
      RaySet c = f.cone(a);
      for (int r : g.cone(b)) c.push_back(r + offset);
      cones.push_back(c);
    }
  std::string name = f.name() == "point" ? g.name() : g.name() == "point" ? f.name() : f.name() + "x" + g.name();
  return Fan::create(rank, std::move(rays), cones, name);
}

Fan named_fan(const std::string& name) {
  if (name == "p1xp1") return fan_product(fan_projective_space(1), fan_projective_space(1));
  if (name == "point") return point_fan();
  if (name.size() >= 2 && name[0] == 'p' &&
      std::all_of(name.begin() + 1, name.end(), [](unsigned char c) { return std::isdigit(c); })) {
    return fan_projective_space(std::stoi(name.substr(1)));
  }
  throw Error(ErrorKind::InvalidArgument, "unknown fan name '" + name + "'");
}

// ---------------------------------------------------------------------------

QuotientProjection quotient_projection(int rank, const IntMatrix& l_basis) {
  const std::size_t n = static_cast<std::size_t>(rank);
  if (l_basis.cols() > 0 && l_basis.rows() != n)
    throw Error(ErrorKind::InvalidArgument, "subspace basis has wrong ambient dimension");
  const std::size_t dim = l_basis.cols();
  QuotientProjection q;
  if (dim == 0) {
    q.subspace_basis = IntMatrix(n, 0);
    q.projection = IntMatrix::identity(n);
    return q;
  }
  const auto snf = smith_normal_form(l_basis);
  if (snf.rank() != dim) throw Error(ErrorKind::DependentGenerators, "subspace generators are dependent");
  std::vector<std::size_t> rows;
  for (std::size_t i = dim; i < n; ++i) rows.push_back(i);
  IntMatrix p = snf.left.select_rows(rows);
  // Canonical target basis: row Hermite form of the projection rows.
  if (p.rows() > 0) p = hermite_rows(p);
  else p = IntMatrix(0, n);
  q.projection = p;
  q.subspace_basis = p.rows() > 0 ? integer_kernel(p) : IntMatrix::identity(n);
  return q;
}

QuotientProjection quotient_projection(const Fan& fan, const IntMatrix& l_basis) {
  return quotient_projection(fan.rank(), l_basis);
}

ExtendedPoint extended_point(const Fan& fan, const RatVector& base, const IntVector& direction) {
  if (static_cast<int>(direction.size()) != fan.rank() || static_cast<int>(base.size()) != fan.rank())
    throw Error(ErrorKind::InvalidArgument, "extended_point: dimension mismatch");
  if (is_zero(std::span<const Integer>(direction)))
    throw Error(ErrorKind::InvalidArgument, "extended_point: zero direction");
  int stratum;
  try {
    stratum = fan.locate(direction);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotComplete) throw;
    throw Error(ErrorKind::DirectionOutsideFan, "direction " + to_string(direction) + " lies in no cone");
  }
  return ExtendedPoint{stratum, fan.quotient_rows(stratum).apply(base)};
}

std::optional<IntMatrix> unimodular_equivalence(const Fan& a, const Fan& b) {
  if (a.rank() != b.rank() || a.rays().size() != b.rays().size() || a.cone_count() != b.cone_count())
    return std::nullopt;
  const auto r = static_cast<std::size_t>(a.rank());
  if (r == 0) return IntMatrix(0, 0);
  std::optional<int> base;
  for (int c : a.maximal_cones())
    if (a.dimension(c) == a.rank()) base = c;
  if (!base) return std::nullopt;
  const IntMatrix rt = a.ray_matrix(*base).transpose();

  std::map<IntVector, int> b_rays;
  for (std::size_t i = 0; i < b.rays().size(); ++i) b_rays[b.rays()[i]] = static_cast<int>(i);
  std::set<RaySet> b_cones(b.cones().begin(), b.cones().end());

  for (int d : b.maximal_cones()) {
    if (b.dimension(d) != a.rank()) continue;
    RaySet target = b.cone(d);
    do {
      // A * R = S, solved row by row through R^T A^T = S^T.
      IntMatrix m(r, r);
      bool integral = true;
      for (std::size_t i = 0; i < r && integral; ++i) {
        RatVector rhs(r);
        for (std::size_t j = 0; j < r; ++j) rhs[j] = b.rays()[static_cast<std::size_t>(target[j])][i];
        auto sol = solve_rational(rt, rhs);
        if (!sol || !sol->unique) return std::nullopt;
        for (std::size_t j = 0; j < r; ++j) {
          if (sol->x[j].get_den() != 1) {
            integral = false;
            break;
          }
          m(i, j) = sol->x[j].get_num();
        }
      }
      if (!integral || abs(determinant(m)) != 1) continue;
      std::vector<int> image;
      for (const auto& ray : a.rays()) {
        auto it = b_rays.find(m.apply(ray));
        if (it == b_rays.end()) break;
        image.push_back(it->second);
      }
      if (image.size() != a.rays().size()) continue;
      bool cones_match = true;
      for (const auto& cone : a.cones()) {
        RaySet mapped;
        for (int i : cone) mapped.push_back(image[static_cast<std::size_t>(i)]);
        std::sort(mapped.begin(), mapped.end());
        if (!b_cones.count(mapped)) {
          cones_match = false;
          break;
        }
      }
      if (cones_match) return m;
    } while (std::next_permutation(target.begin(), target.end()));
  }
  return std::nullopt;
}

std::string to_string(const IntVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
  os << ')';
  return os.str();
}

std::string to_string(const RatVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << format_rational(v[i]);
  os << ')';
  return os.str();
}

}  // namespace tropcount
