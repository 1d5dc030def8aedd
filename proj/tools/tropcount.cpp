// Command-line front end: fan inspection, map validation, complex assembly,
// embeddings and curve counts.

#include "tropcount/serialize.hpp"
#include "tropcount/svg.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace tropcount;

namespace {

constexpr int kValidationFailed = 2;
constexpr int kNonGeneric = 3;
constexpr int kUsage = 64;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Parse, path + ": " + e.what());
  }
}

Fan load_fan(const std::string& spec) {
  if (spec.find('/') == std::string::npos && spec.find(".json") == std::string::npos) return named_fan(spec);
  return fan_from_json(read_json_file(spec));
}

int parse_int(const std::string& s) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError("expected an integer, got '" + s + "'");
}

// Shorthands: pR-degree:d, pR-degree:d-transverse, p1xp1-bidegree:a,b; otherwise inline JSON or a path.
std::vector<ContactLeg> load_contacts(const Fan& fan, const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon != std::string::npos && spec.front() != '{' && spec.front() != '[') {
    const std::string kind = spec.substr(0, colon);
    std::string arg = spec.substr(colon + 1);
    if (arg.size() > 11 && arg.ends_with("-transverse")) arg.resize(arg.size() - 11);
    if (kind == "p1xp1-bidegree") {
      const auto parts = split(arg, ',');
      if (parts.size() != 2) throw UsageError("bidegree needs two entries");
      return p1xp1_contacts(parse_int(parts[0]), parse_int(parts[1]));
    }
    if (kind.size() > 8 && kind.front() == 'p' && kind.ends_with("-degree")) {
      const int r = parse_int(kind.substr(1, kind.size() - 8));
      if (r != fan.rank()) throw UsageError("contact shorthand " + kind + " does not match a fan of rank " + std::to_string(fan.rank()));
      return projective_contacts(r, parse_int(arg));
    }
    throw UsageError("unknown contact shorthand '" + spec + "'");
  }
  const Json j = spec.front() == '{' || spec.front() == '[' ? Json::parse(spec) : read_json_file(spec);
  const Json wrapped = j.is_array() ? Json{{"contacts", j}} : j;
  return gamma_from_json(fan, wrapped).contact_legs();
}

// The fan named by a contact shorthand, used when --fan is omitted.
std::string implied_fan(const std::string& contacts) {
  if (contacts.starts_with("p1xp1-bidegree:")) return "p1xp1";
  const auto dash = contacts.find("-degree:");
  if (contacts.starts_with("p") && dash != std::string::npos) return contacts.substr(0, dash);
  return "p2";
}

DiscreteData load_gamma(const Fan& fan, const std::string& contacts, int trivial) {
  auto legs = load_contacts(fan, contacts);
  int next = 1;
  for (const auto& l : legs) next = std::max(next, l.label + 1);
  std::vector<int> labels;
  for (int k = 0; k < trivial; ++k) labels.push_back(next + k);
  return DiscreteData::create(fan, std::move(legs), std::move(labels));
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw UsageError("cannot write " + out);
  f << text;
}

int default_threads() {
  if (const char* env = std::getenv("TROPCOUNT_THREADS")) {
    try {
      return std::max(1, std::stoi(env));
    } catch (const std::exception&) {
    }
  }
  return 1;
}

// "b1|b2;t": basis columns separated by '|', entries by ','; translation optional.
struct SubspaceArg {
  IntMatrix basis;
  std::optional<RatVector> translation;
};

SubspaceArg parse_subspace(const std::string& text, int rank) {
  const auto parts = split(text, ';');
  if (parts.empty() || parts.size() > 2) throw UsageError("subspace must look like 'basis;translation'");
  SubspaceArg s;
  std::vector<IntVector> columns;
  for (const auto& col : split(parts[0], '|')) {
    if (col.empty()) continue;
    IntVector v;
    for (const auto& x : split(col, ',')) v.emplace_back(parse_int(x));
    if (static_cast<int>(v.size()) != rank) throw UsageError("subspace vector has the wrong length");
    columns.push_back(std::move(v));
  }
  s.basis = IntMatrix::from_columns(columns, static_cast<std::size_t>(rank));
  if (parts.size() == 2 && !parts[1].empty()) {
    RatVector t;
    for (const auto& x : split(parts[1], ',')) t.push_back(parse_rational(x));
    if (static_cast<int>(t.size()) != rank) throw UsageError("translation has the wrong length");
    s.translation = std::move(t);
  }
  return s;
}

struct CountOptions {
  std::string fan = "p2";
  std::string contacts;
  int points = -1;
  std::vector<std::string> subspaces;
  std::uint64_t seed = 0;
  int threads = 1;
  int retries = 5;
  int height = 1000;
  std::string out;
};

int run_count(const CountOptions& o) {
  const Fan fan = load_fan(o.fan);
  const int rank = fan.rank();
  std::vector<SubspaceArg> subspaces;
  for (const auto& s : o.subspaces) subspaces.push_back(parse_subspace(s, rank));
  int points = o.points;
  if (points < 0) {
    // Enough points to cut the remaining dimension down to zero.
    const int n = static_cast<int>(load_contacts(fan, o.contacts).size());
    int remaining = rank - 3 + n;
    for (const auto& s : subspaces) remaining += 1 - (rank - static_cast<int>(s.basis.cols()));
    if (rank < 2 || remaining < 0 || remaining % (rank - 1) != 0)
      throw UsageError("cannot infer --points; pass it explicitly");
    points = remaining / (rank - 1);
  }
  const DiscreteData gamma = load_gamma(fan, o.contacts, points + static_cast<int>(subspaces.size()));
  std::vector<IntMatrix> bases(static_cast<std::size_t>(points), IntMatrix(static_cast<std::size_t>(rank), 0));
  bool random = points > 0;
  for (const auto& s : subspaces) {
    bases.push_back(s.basis);
    random = random || !s.translation;
  }
  int rejected = 0;
  for (int attempt = 0;; ++attempt) {
    ConstraintConfig config = generate_constraints(gamma, bases, o.seed + static_cast<std::uint64_t>(attempt), o.height);
    for (std::size_t i = 0; i < subspaces.size(); ++i)
      if (subspaces[i].translation) config.constraints[static_cast<std::size_t>(points) + i].translation = *subspaces[i].translation;
    const CountProblem problem = CountProblem::create(gamma, config);
    try {
      CountResult result = count(problem, o.threads);
      result.rejected_nongeneric = rejected;
      emit(dump(to_json(problem, result)), o.out);
      std::ostringstream summary;
      summary << "degree = " << result.total.get_str() << " (types: " << result.contributions.size()
              << ", seed: " << result.seed << ")\n";
      (o.out.empty() ? std::cerr : std::cout) << summary.str();
      return 0;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NonGeneric) throw;
      ++rejected;
      std::cerr << "seed " << config.seed << ": " << e.what() << '\n';
      if (!random || attempt >= o.retries) {
        std::cerr << "constraints stayed non-generic after " << rejected << " attempt(s)\n";
        return kNonGeneric;
      }
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tropcount: tropical stable maps to toric fans and their counts"};
  app.require_subcommand(1);

  std::string out;
  std::string fan_spec = "p2";
  std::string contacts;
  int points = 0;
  int threads = default_threads();

  auto* fan_cmd = app.add_subcommand("fan", "Print a fan as JSON");
  fan_cmd->add_option("fan", fan_spec, "Named fan (p1, p2, p3, p1xp1) or JSON path")->required();
  fan_cmd->add_option("--out", out, "Output path");

  std::string map_path;
  auto* validate_cmd = app.add_subcommand("validate", "Check a map against every stable-map condition");
  validate_cmd->add_option("map", map_path, "Map JSON")->required()->check(CLI::ExistingFile);
  std::string validate_fan;
  validate_cmd->add_option("--fan", validate_fan, "Override the fan stored in the map document");
  validate_cmd->add_option("--out", out, "Output path");

  std::string svg;
  auto* complex_cmd = app.add_subcommand("complex", "Assemble the cone complex of all types");
  auto* complex_fan = complex_cmd->add_option("--fan", fan_spec, "Named fan or JSON path (default: implied by --contacts)");
  complex_cmd->add_option("--contacts", contacts, "Contact shorthand, inline JSON or JSON path")->required();
  complex_cmd->add_option("--points", points, "Number of trivial legs")->check(CLI::NonNegativeNumber);
  complex_cmd->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  complex_cmd->add_option("--svg", svg, "Write the embedded fan as SVG (rank-2 embeddings)");
  complex_cmd->add_option("--out", out, "Output path");

  int root = 0;
  auto* embed_cmd = app.add_subcommand("embed", "Embed the cone complex as a fan");
  auto* embed_fan = embed_cmd->add_option("--fan", fan_spec, "Named fan or JSON path (default: implied by --contacts)");
  embed_cmd->add_option("--contacts", contacts, "Contact shorthand, inline JSON or JSON path")->required();
  embed_cmd->add_option("--points", points, "Number of trivial legs")->check(CLI::NonNegativeNumber);
  embed_cmd->add_option("--root", root, "Root leg label (default: lowest)");
  embed_cmd->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  embed_cmd->add_option("--svg", svg, "Write the embedded fan as SVG (rank-2 embeddings)");
  embed_cmd->add_option("--out", out, "Output path");

  CountOptions co;
  co.threads = threads;
  auto* count_cmd = app.add_subcommand("count", "Count rational curves through generic constraints");
  auto* count_fan = count_cmd->add_option("--fan", co.fan, "Named fan or JSON path (default: implied by --contacts)");
  count_cmd->add_option("--contacts", co.contacts, "Contact shorthand, inline JSON or JSON path")->required();
  count_cmd->add_option("--points", co.points, "Number of point constraints (default: as many as needed)")
      ->check(CLI::NonNegativeNumber);
  count_cmd->add_option("--subspace", co.subspaces, "Affine constraint 'b1|b2;t' (repeatable; t optional)");
  count_cmd->add_option("--seed", co.seed, "Seed for the constraint translations");
  count_cmd->add_option("--threads", co.threads, "Worker threads (default: TROPCOUNT_THREADS or 1)")
      ->check(CLI::PositiveNumber);
  count_cmd->add_option("--retries", co.retries, "Fresh seeds to try when constraints are not generic")
      ->check(CLI::NonNegativeNumber);
  count_cmd->add_option("--height", co.height, "Height bound for random translations")->check(CLI::PositiveNumber);
  count_cmd->add_option("--out", co.out, "Output path; the summary then goes to standard output");

  std::string oracle_name;
  int oracle_arg = 0;
  auto* oracle_cmd = app.add_subcommand("oracle", "Reference values from closed recursions");
  oracle_cmd->add_option("name", oracle_name, "Oracle name")->required()->check(CLI::IsMember({"kontsevich"}));
  oracle_cmd->add_option("degree", oracle_arg, "Degree")->required()->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    if (*fan_cmd) {
      emit(dump(to_json(load_fan(fan_spec))), out);
    } else if (*validate_cmd) {
      const Json doc = read_json_file(map_path);
      const Fan fan = validate_fan.empty() ? fan_from_json(doc.at("fan")) : load_fan(validate_fan);
      const ValidationReport report = validate(fan, map_from_json(fan, doc));
      emit(dump(to_json(report)), out);
      if (!report.valid()) {
        std::cerr << report.summary() << '\n';
        return kValidationFailed;
      }
    } else if (*complex_cmd || *embed_cmd) {
      if (complex_fan->count() == 0 && embed_fan->count() == 0) fan_spec = implied_fan(contacts);
      const Fan fan = load_fan(fan_spec);
      const ConeComplex cx = assemble_complex(load_gamma(fan, contacts, points), threads);
      const bool want_embedding = *embed_cmd || !svg.empty();
      std::optional<EmbeddedFan> embedded;
      if (want_embedding) embedded = gkm_embedding(cx, root > 0 ? std::optional<int>(root) : std::nullopt);
      emit(dump(*embed_cmd ? to_json(*embedded) : to_json(cx)), out);
      if (!svg.empty()) {
        std::ofstream f(svg);
        if (!f) throw UsageError("cannot write " + svg);
        f << fan_svg(embedded->as_fan(), "embedded moduli fan");
      }
    } else if (*count_cmd) {
      if (count_fan->count() == 0) co.fan = implied_fan(co.contacts);
      return run_count(co);
    } else if (*oracle_cmd) {
      std::cout << kontsevich_oracle(oracle_arg).get_str() << '\n';
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::Parse ? kUsage : 1;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return 0;
}
