#include "tropcount/serialize.hpp"

#include <algorithm>
#include <map>

namespace tropcount {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorKind::Parse, what); }

Json integer(const Integer& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

Integer read_integer(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) {
    Integer x;
    if (x.set_str(j.get<std::string>(), 10) != 0) parse_error("bad integer '" + j.get<std::string>() + "'");
    return x;
  }
  parse_error("expected an integer");
}

Json rational(const Rational& q) { return format_rational(q); }

Rational read_rational(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  parse_error("expected a rational string");
}

Json vec(const IntVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(integer(x));
  return a;
}

IntVector read_vec(const Json& j) {
  if (!j.is_array()) parse_error("expected an integer vector");
  IntVector v;
  for (const auto& x : j) v.push_back(read_integer(x));
  return v;
}

Json ratvec(const RatVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(rational(x));
  return a;
}

RatVector read_ratvec(const Json& j) {
  if (!j.is_array()) parse_error("expected a rational vector");
  RatVector v;
  for (const auto& x : j) v.push_back(read_rational(x));
  return v;
}

Json matrix(const IntMatrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(vec(m.row(i)));
  return a;
}

IntMatrix read_matrix(const Json& j, std::size_t cols) {
  std::vector<IntVector> rows;
  for (const auto& r : j) rows.push_back(read_vec(r));
  if (!rows.empty()) cols = rows.front().size();
  for (const auto& r : rows)
    if (r.size() != cols) parse_error("ragged matrix");
  return IntMatrix::from_rows(rows, cols);
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_error(std::string("missing field '") + key + "'");
  return j.at(key);
}

void check_schema(const Json& j) {
  if (j.contains("schema") && j.at("schema") != kSchema)
    parse_error("unsupported schema " + j.at("schema").dump());
}

// Cones inside types are written as their ray vectors, independent of ray numbering.
Json cone(const Fan& fan, int index) {
  if (index < 0) return nullptr;
  std::vector<IntVector> rays;
  for (int r : fan.cone(index)) rays.push_back(fan.rays()[idx(r)]);
  std::sort(rays.begin(), rays.end());
  Json a = Json::array();
  for (const auto& r : rays) a.push_back(vec(r));
  return a;
}

int read_cone(const Fan& fan, const Json& j) {
  if (j.is_null()) return -1;
  RaySet set;
  for (const auto& r : j) {
    const IntVector v = read_vec(r);
    const auto& rays = fan.rays();
    auto it = std::find(rays.begin(), rays.end(), v);
    if (it == rays.end()) parse_error("ray " + to_string(v) + " is not in the fan");
    set.push_back(static_cast<int>(it - rays.begin()));
  }
  std::sort(set.begin(), set.end());
  auto c = fan.find_cone(set);
  if (!c) parse_error("rays " + j.dump() + " do not span a cone of the fan");
  return *c;
}

Json constraint(const SubspaceConstraint& c) {
  Json j;
  j["basis"] = matrix(c.basis.transpose());
  j["translation"] = ratvec(c.translation);
  return j;
}

SubspaceConstraint read_constraint(const Json& j, int rank) {
  SubspaceConstraint c;
  c.basis = read_matrix(field(j, "basis"), idx(rank)).transpose();
  if (c.basis.cols() == 0) c.basis = IntMatrix(idx(rank), 0);
  c.translation = read_ratvec(field(j, "translation"));
  return c;
}

}  // namespace

Json to_json(const Fan& fan) {
  std::vector<std::size_t> order(fan.rays().size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fan.rays()[a] < fan.rays()[b]; });
  std::vector<int> renumber(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) renumber[order[k]] = static_cast<int>(k);

  Json j;
  j["schema"] = kSchema;
  j["name"] = fan.name();
  j["rank"] = fan.rank();
  Json rays = Json::array();
  for (std::size_t k : order) rays.push_back(vec(fan.rays()[k]));
  j["rays"] = rays;
  std::vector<RaySet> cones;
  for (int c : fan.maximal_cones()) {
    RaySet s;
    for (int r : fan.cone(c)) s.push_back(renumber[idx(r)]);
    std::sort(s.begin(), s.end());
    cones.push_back(s);
  }
  std::sort(cones.begin(), cones.end());
  j["cones"] = cones;
  return j;
}

Fan fan_from_json(const Json& j) {
  check_schema(j);
  const int rank = field(j, "rank").get<int>();
  std::vector<IntVector> rays;
  for (const auto& r : field(j, "rays")) rays.push_back(read_vec(r));
  std::vector<RaySet> cones;
  for (const auto& c : field(j, "cones")) cones.push_back(c.get<RaySet>());
  return Fan::create(rank, std::move(rays), cones, j.value("name", std::string()));
}

Json to_json(const TropicalCurve& curve) {
  Json j;
  j["schema"] = kSchema;
  j["vertices"] = curve.vertex_count();
  Json edges = Json::array();
  for (const auto& e : curve.edges()) edges.push_back(Json::array({e.a, e.b, e.length ? rational(*e.length) : Json("inf")}));
  j["edges"] = edges;
  Json legs = Json::array();
  for (const auto& l : curve.legs()) legs.push_back(Json::array({l.vertex, l.label}));
  j["legs"] = legs;
  return j;
}

TropicalCurve curve_from_json(const Json& j) {
  check_schema(j);
  std::vector<CurveEdge> edges;
  for (const auto& e : field(j, "edges")) {
    if (!e.is_array() || e.size() != 3) parse_error("curve edge must be [v1, v2, length]");
    CurveEdge ce{e[0].get<int>(), e[1].get<int>(), std::nullopt};
    if (!(e[2].is_string() && e[2].get<std::string>() == "inf")) ce.length = read_rational(e[2]);
    edges.push_back(ce);
  }
  std::vector<CurveLeg> legs;
  for (const auto& l : field(j, "legs")) {
    if (!l.is_array() || l.size() != 2) parse_error("curve leg must be [vertex, label]");
    legs.push_back({l[0].get<int>(), l[1].get<int>()});
  }
  return TropicalCurve::create(field(j, "vertices").get<int>(), std::move(edges), std::move(legs));
}

Json to_json(const DiscreteData& gamma) {
  Json j;
  Json contacts = Json::array();
  for (const auto& c : gamma.contact_legs()) contacts.push_back({{"label", c.label}, {"contact", vec(c.contact)}});
  j["contacts"] = contacts;
  j["trivial"] = gamma.trivial_legs();
  return j;
}

DiscreteData gamma_from_json(const Fan& fan, const Json& j) {
  check_schema(j);
  std::vector<ContactLeg> contacts;
  int label = 1;
  for (const auto& c : field(j, "contacts")) {
    if (c.is_object()) contacts.push_back({field(c, "label").get<int>(), read_vec(field(c, "contact"))});
    else contacts.push_back({label, read_vec(c)});
    label = std::max(label, contacts.back().label) + 1;
  }
  std::vector<int> trivial;
  if (j.contains("trivial")) {
    const auto& t = j.at("trivial");
    if (t.is_number_integer()) {
      for (int k = 0; k < t.get<int>(); ++k) trivial.push_back(label + k);
    } else {
      trivial = t.get<std::vector<int>>();
    }
  }
  return DiscreteData::create(fan, std::move(contacts), std::move(trivial));
}

Json to_json(const Fan& fan, const CombinatorialType& type) {
  Json j;
  j["vertices"] = type.vertex_count;
  if (!type.vertex_cones.empty()) {
    Json cones = Json::array();
    for (int c : type.vertex_cones) cones.push_back(cone(fan, c));
    j["vertex_cones"] = cones;
  }
  Json edges = Json::array();
  for (const auto& e : type.edges)
    edges.push_back({{"tail", e.tail}, {"head", e.head}, {"contact", vec(e.contact)}, {"carrier", cone(fan, e.carrier)}});
  j["edges"] = edges;
  Json legs = Json::array();
  for (const auto& l : type.legs)
    legs.push_back({{"vertex", l.vertex}, {"label", l.label}, {"contact", vec(l.contact)}, {"carrier", cone(fan, l.carrier)}});
  j["legs"] = legs;
  return j;
}

CombinatorialType type_from_json(const Fan& fan, const Json& j) {
  CombinatorialType t;
  t.vertex_count = field(j, "vertices").get<int>();
  if (j.contains("vertex_cones"))
    for (const auto& c : j.at("vertex_cones")) t.vertex_cones.push_back(read_cone(fan, c));
  for (const auto& e : field(j, "edges"))
    t.edges.push_back({field(e, "tail").get<int>(), field(e, "head").get<int>(), read_vec(field(e, "contact")),
                       e.contains("carrier") ? read_cone(fan, e.at("carrier")) : -1});
  for (const auto& l : field(j, "legs"))
    t.legs.push_back({field(l, "vertex").get<int>(), field(l, "label").get<int>(), read_vec(field(l, "contact")),
                      l.contains("carrier") ? read_cone(fan, l.at("carrier")) : -1});
  return t;
}

namespace {

Json map_body(const Fan& fan, const TropicalStableMap& f) {
  Json j;
  j["type"] = to_json(fan, f.type);
  Json positions = Json::array();
  for (const auto& p : f.positions) positions.push_back(ratvec(p));
  j["positions"] = positions;
  Json lengths = Json::array();
  for (const auto& l : f.lengths) lengths.push_back(l ? rational(*l) : Json("inf"));
  j["lengths"] = lengths;
  return j;
}

}  // namespace

Json to_json(const Fan& fan, const TropicalStableMap& f) {
  Json j;
  j["schema"] = kSchema;
  j["fan"] = to_json(fan);
  j.update(map_body(fan, f));
  return j;
}

TropicalStableMap map_from_json(const Fan& fan, const Json& j) {
  check_schema(j);
  TropicalStableMap f;
  f.type = type_from_json(fan, field(j, "type"));
  for (const auto& p : field(j, "positions")) f.positions.push_back(read_ratvec(p));
  for (const auto& l : field(j, "lengths")) {
    if (l.is_string() && l.get<std::string>() == "inf") f.lengths.emplace_back(std::nullopt);
    else f.lengths.emplace_back(read_rational(l));
  }
  return f;
}

Json to_json(const ConeComplex& complex) {
  Json j;
  j["schema"] = kSchema;
  j["fan"] = to_json(complex.fan);
  j["gamma"] = to_json(complex.gamma);
  j["f_vector"] = complex.f_vector();
  Json cones = Json::array();
  for (std::size_t i = 0; i < complex.cones.size(); ++i) {
    const auto& c = complex.cones[i];
    cones.push_back({{"key", complex.keys[i]},
                     {"type", to_json(complex.fan, c.type)},
                     {"dimension", c.dimension},
                     {"span_basis", matrix(c.span_basis.transpose())}});
  }
  j["cones"] = cones;
  Json faces = Json::array();
  for (const auto& fm : complex.face_maps)
    faces.push_back({{"face", fm.face}, {"cone", fm.cone}, {"inclusion", matrix(fm.inclusion)}});
  j["faces"] = faces;
  return j;
}

ConeComplex complex_from_json(const Json& j) {
  check_schema(j);
  ConeComplex cx;
  cx.fan = fan_from_json(field(j, "fan"));
  cx.gamma = gamma_from_json(cx.fan, field(j, "gamma"));
  for (const auto& c : field(j, "cones")) {
    ModuliCone mc = moduli_cone(cx.fan, type_from_json(cx.fan, field(c, "type")));
    if (mc.dimension != field(c, "dimension").get<int>())
      parse_error("cone " + field(c, "key").get<std::string>() + " has the wrong dimension");
    cx.cones.push_back(std::move(mc));
    cx.keys.push_back(field(c, "key").get<std::string>());
  }
  for (const auto& f : field(j, "faces")) {
    FaceMap fm;
    fm.face = field(f, "face").get<std::size_t>();
    fm.cone = field(f, "cone").get<std::size_t>();
    if (fm.face >= cx.cones.size() || fm.cone >= cx.cones.size()) parse_error("face map references an unknown cone");
    fm.inclusion = read_matrix(field(f, "inclusion"), idx(cx.cones[fm.face].dimension));
    cx.face_maps.push_back(std::move(fm));
  }
  cx.assembled = true;
  return cx;
}

Json to_json(const EmbeddedFan& embedded) {
  Json j;
  j["schema"] = kSchema;
  j["ambient_rank"] = embedded.ambient_rank;
  Json rays = Json::array();
  for (const auto& r : embedded.rays) rays.push_back(vec(r));
  j["rays"] = rays;
  j["cones"] = embedded.cones;
  Json maps = Json::array();
  for (const auto& m : embedded.lattice_maps) maps.push_back(matrix(m));
  j["lattice_maps"] = maps;
  return j;
}

Json to_json(const CountProblem& problem, const CountResult& result) {
  const Fan& fan = problem.fan();
  Json j;
  j["schema"] = kSchema;
  j["fan"] = to_json(fan);
  j["gamma"] = to_json(problem.gamma());
  j["seed"] = result.seed;
  j["height_bound"] = problem.constraints().height_bound;
  Json constraints = Json::array();
  for (const auto& c : problem.constraints().constraints) constraints.push_back(constraint(c));
  j["constraints"] = constraints;
  j["total"] = integer(result.total);
  j["types"] = result.contributions.size();
  j["rejected_nongeneric"] = result.rejected_nongeneric;
  j["nodes_visited"] = result.nodes_visited;
  Json contributions = Json::array();
  for (const auto& c : result.contributions)
    contributions.push_back({{"key", c.key},
                             {"multiplicity", integer(c.multiplicity)},
                             {"type", to_json(fan, c.type)},
                             {"map", map_body(fan, c.map)},
                             {"subdivided", map_body(fan, c.subdivided)}});
  j["contributions"] = contributions;
  return j;
}

CountDocument count_from_json(const Json& j) {
  check_schema(j);
  CountDocument doc;
  Fan fan = fan_from_json(field(j, "fan"));
  DiscreteData gamma = gamma_from_json(fan, field(j, "gamma"));
  ConstraintConfig config;
  config.seed = field(j, "seed").get<std::uint64_t>();
  config.height_bound = j.value("height_bound", 1000);
  for (const auto& c : field(j, "constraints")) config.constraints.push_back(read_constraint(c, fan.rank()));
  doc.problem = CountProblem::create(gamma, config);
  doc.result.seed = config.seed;
  doc.result.total = read_integer(field(j, "total"));
  doc.result.rejected_nongeneric = field(j, "rejected_nongeneric").get<int>();
  doc.result.nodes_visited = field(j, "nodes_visited").get<std::size_t>();
  for (const auto& c : field(j, "contributions")) {
    Contribution k;
    k.key = field(c, "key").get<std::string>();
    k.multiplicity = read_integer(field(c, "multiplicity"));
    k.type = type_from_json(fan, field(c, "type"));
    k.map = map_from_json(fan, field(c, "map"));
    k.subdivided = map_from_json(fan, field(c, "subdivided"));
    doc.result.contributions.push_back(std::move(k));
  }
  if (field(j, "types").get<std::size_t>() != doc.result.contributions.size()) parse_error("type count mismatch");
  return doc;
}

Json to_json(const ValidationReport& report) {
  Json j;
  j["schema"] = kSchema;
  j["valid"] = report.valid();
  Json violations = Json::array();
  for (const auto& v : report.violations)
    violations.push_back({{"condition", std::string(to_string(v.condition))}, {"location", v.location}, {"detail", v.detail}});
  j["violations"] = violations;
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace tropcount
