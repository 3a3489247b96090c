#include "algebroid/cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "algebroid/calculus.hpp"
#include "algebroid/catalog.hpp"
#include "algebroid/classes.hpp"
#include "algebroid/connections.hpp"
#include "algebroid/error.hpp"
#include "algebroid/random.hpp"
#include "algebroid/transport.hpp"

namespace algebroid::cli {

namespace {

constexpr std::string_view kSchema = "algebroidlab/1";
constexpr double kDefaultTol = 1e-10;
constexpr double kRankCutoff = 1e-9;
constexpr double kModularTol = 1e-8;
constexpr double kClosednessTol = 1e-7;
constexpr double kTransportTol = 1e-8;
constexpr double kPruneTol = 1e-12;

const std::vector<std::string> kCommands = {"validate", "rank",      "isotropy", "linearize", "differential",
                                            "curvature", "torsion",  "transport", "holonomy", "classes",
                                            "modular",   "export"};

struct Options {
  std::string command;
  std::string spec;
  std::string point;
  std::uint64_t seed = 0;
  std::size_t samples = 50;
  std::optional<double> tol;
  std::size_t k = 1;
  std::string path;
  std::size_t steps = 1000;
  std::string catalog;
};

/// Input whose failure to load is reported as an input error.
struct Loaded {
  nlohmann::json doc;
  std::string digest;
};

Loaded load_json(const std::string& file, std::string_view what) {
  if (file.empty()) throw Error(ErrorKind::InvalidInput, std::string(what) + " file is required");
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open " + std::string(what) + " file '" + file + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  Loaded out;
  out.digest = sha256_hex(text);
  try {
    out.doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::InvalidInput, "malformed JSON in '" + file + "': " + e.what());
  }
  return out;
}

std::size_t index_field(const nlohmann::json& entry, const char* key, std::size_t bound) {
  if (!entry.contains(key) || !entry[key].is_number_integer())
    throw Error(ErrorKind::InvalidInput, std::string("bracket entry needs an integer '") + key + "'");
  const auto v = entry[key].get<long long>();
  if (v < 1 || static_cast<std::size_t>(v) > bound)
    throw Error(ErrorKind::InvalidInput, std::string("bracket index '") + key + "' = " + std::to_string(v) +
                                             " is outside 1.." + std::to_string(bound));
  return static_cast<std::size_t>(v - 1);
}

ScalarField expression_field(const Chart& chart, const nlohmann::json& v) {
  if (v.is_string()) return parse_field(chart, v.get<std::string>());
  if (v.is_number()) return ScalarField::constant(chart.dimension(), v.get<double>());
  throw Error(ErrorKind::InvalidInput, "expected an expression string, got " + v.dump());
}

StructureConstants named_algebra(const nlohmann::json& params) {
  const std::string name = params.value("algebra", "");
  if (name == "so3") return catalog::so3();
  if (name == "sl2") return catalog::sl2();
  if (name == "aff1") return catalog::aff1();
  if (name == "heisenberg") return catalog::heisenberg();
  if (name == "abelian") return catalog::abelian(params.value("n", std::size_t{1}));
  throw Error(ErrorKind::InvalidInput, "unknown Lie algebra '" + name + "'");
}

LieAlgebroid from_kind(const std::string& kind, const nlohmann::json& params) {
  if (kind == "tangent") return catalog::tangent(params.value("dimension", std::size_t{1}));
  if (kind == "lie_algebra") return catalog::lie_algebra(named_algebra(params), params.value("algebra", ""));
  if (kind == "lie_poisson") return catalog::lie_poisson(named_algebra(params), "lie_poisson_" + params.value("algebra", std::string()));
  if (kind == "transformation") {
    const std::string action = params.value("action", "");
    if (action == "so3_rotations") return catalog::transformation(catalog::so3_rotations(), action);
    if (action == "scaling") return catalog::transformation(catalog::scaling_action(), action);
    if (action == "coadjoint") return catalog::transformation(catalog::coadjoint_action(named_algebra(params)), action);
    throw Error(ErrorKind::InvalidInput, "unknown action '" + action + "'");
  }
  if (kind == "regular_foliation") return catalog::regular_foliation();
  if (kind == "heisenberg_bundle") return catalog::heisenberg_bundle();
  if (kind == "catalog") {
    const std::string name = params.value("name", "");
    for (const auto& e : catalog::examples())
      if (e.name == name) return e.algebroid;
    throw Error(ErrorKind::InvalidInput, "unknown catalog entry '" + name + "'");
  }
  throw Error(ErrorKind::InvalidInput, "unknown kind '" + kind + "'");
}

Point parse_point(const std::string& text, std::size_t m) {
  Point p;
  if (!text.empty()) {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        p.push_back(std::stod(item, &used));
        if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw Error(ErrorKind::InvalidInput, "bad coordinate '" + item + "' in --point");
      }
    }
  }
  if (p.size() != m)
    throw Error(ErrorKind::DimensionMismatch,
                "--point has " + std::to_string(p.size()) + " coordinates, the chart has " + std::to_string(m));
  return p;
}

Json vector_json(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json matrix_json(const Eigen::MatrixXd& M) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) out.push_back(vector_json(M.row(i).transpose()));
  return out;
}

Json columns_json(const Eigen::MatrixXd& M) {
  Json out = Json::array();
  for (Eigen::Index j = 0; j < M.cols(); ++j) out.push_back(vector_json(M.col(j)));
  return out;
}

Json field_matrix_json(const FieldMatrix& M, const Chart& chart) {
  Json out = Json::array();
  for (std::size_t i = 0; i < M.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < M.cols(); ++j) row.push_back(M(i, j).to_string(chart));
    out.push_back(row);
  }
  return out;
}

Json constants_json(const StructureConstants& g) {
  Json out = Json::array();
  const std::size_t n = g.dimension();
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = s + 1; t < n; ++t)
      for (std::size_t u = 0; u < n; ++u)
        if (std::abs(g(s, t, u)) > kPruneTol) out.push_back({{"s", s + 1}, {"t", t + 1}, {"u", u + 1}, {"value", g(s, t, u)}});
  return out;
}

Json one_based(const std::vector<std::size_t>& idx) {
  Json out = Json::array();
  for (auto i : idx) out.push_back(i + 1);
  return out;
}

Json scalar_form_json(const AForm& form, const Chart& chart) {
  Json out = Json::array();
  for (std::size_t pos = 0; pos < form.tuples().size(); ++pos) {
    const ScalarField v = form.component_at(pos)(0, 0).pruned(kPruneTol);
    if (v.is_zero()) continue;
    out.push_back({{"indices", one_based(form.tuples()[pos])}, {"value", v.to_string(chart)}});
  }
  return out;
}

Json report(const Options& o, const std::string& digest) {
  Json r;
  r["schema"] = kSchema;
  r["command"] = o.command;
  r["input_digest"] = digest;
  r["results"] = Json::object();
  r["residuals"] = Json::object();
  r["tolerances"] = Json::object();
  r["seed"] = o.seed;
  return r;
}

AForm random_form(const LieAlgebroid& A, std::size_t k, CounterRng& rng) {
  AForm f(A, k);
  for (const auto& I : f.tuples()) f.set_scalar(I, random_polynomial(rng, A.dimension(), 2));
  return f;
}

int cmd_validate(const LieAlgebroid& A, const Options& o, Json& r) {
  const double tol = o.tol.value_or(kDefaultTol);
  const ValidationReport v = validate(A, sample_points(o.seed, o.samples, A.dimension()), tol);
  r["results"] = {{"pass", v.pass},
                  {"dimension", A.dimension()},
                  {"rank", A.rank()},
                  {"samples", o.samples},
                  {"checks", {{"anchor", v.anchor_pass}, {"jacobi", v.jacobi_pass}, {"antisymmetry", v.antisymmetry_pass}}}};
  r["residuals"] = {{"anchor", v.anchor_residual}, {"jacobi", v.jacobi_residual}, {"antisymmetry", v.antisymmetry_residual}};
  r["tolerances"] = {{"residual", tol}};
  return v.pass ? 0 : 2;
}

int cmd_rank(const LieAlgebroid& A, const Options& o, Json& r) {
  const Point p = parse_point(o.point, A.dimension());
  const Eigen::MatrixXd b = A.anchor_at(p);
  Eigen::VectorXd sv;
  if (b.size() > 0) sv = Eigen::JacobiSVD<Eigen::MatrixXd>(b).singularValues();
  r["results"] = {{"point", p}, {"rank", anchor_rank_at(A, p)}, {"singular_values", vector_json(sv)}};
  r["tolerances"] = {{"relative_cutoff", kRankCutoff}};
  return 0;
}

int cmd_isotropy(const LieAlgebroid& A, const Options& o, Json& r) {
  const Point p = parse_point(o.point, A.dimension());
  const IsotropyResult iso = isotropy_at(A, p);
  r["results"] = {{"point", p},
                  {"dimension", iso.basis.cols()},
                  {"basis", columns_json(iso.basis)},
                  {"structure_constants", constants_json(iso.constants)}};
  r["residuals"] = {{"closure", iso.closure_residual}};
  r["tolerances"] = {{"closure", 1e-9}};
  return 0;
}

int cmd_linearize(const LieAlgebroid& A, const Options& o, Json& r) {
  const Point p = parse_point(o.point, A.dimension());
  const Linearization lin = linearize_at(A, p);
  Json actions = Json::array();
  for (const auto& M : lin.action_matrices) actions.push_back(matrix_json(M));
  r["results"] = {{"point", p},
                  {"isotropy_basis", columns_json(lin.isotropy_basis)},
                  {"isotropy_constants", constants_json(lin.data.algebra)},
                  {"normal_basis", columns_json(lin.normal_basis)},
                  {"normal_coordinates", one_based(lin.normal_coordinates)},
                  {"action_matrices", actions}};
  return 0;
}

int cmd_differential(const LieAlgebroid& A, const Options& o, Json& r) {
  const double tol = o.tol.value_or(kDefaultTol);
  const std::size_t rk = A.rank(), m = A.dimension();
  const auto pts = sample_points(o.seed, o.samples, m);
  CounterRng rng(o.seed, 2);
  double dd = 0.0, leibniz = 0.0, chain = 0.0;
  Json degrees = Json::array();
  for (std::size_t k = 0; k <= rk; ++k) {
    const AForm Q = random_form(A, k, rng);
    if (k + 2 <= rk) {
      dd = std::max(dd, d_A(A, d_A(A, Q)).max_abs_at(pts));
      degrees.push_back(k);
    }
    for (std::size_t l = 0; k + l + 1 <= rk; ++l) {
      const AForm R = random_form(A, l, rng);
      AForm lhs = d_A(A, wedge(Q, R));
      AForm rhs = wedge(d_A(A, Q), R);
      if (k % 2 == 0) rhs += wedge(Q, d_A(A, R));
      else rhs -= wedge(Q, d_A(A, R));
      leibniz = std::max(leibniz, (lhs - rhs).max_abs_at(pts));
    }
  }
  for (std::size_t k = 0; m > 0 && k + 1 <= std::min(rk, m); ++k) {
    const LieAlgebroid T = catalog::tangent(m);
    AForm w(T, k);
    for (const auto& I : w.tuples()) w.set_scalar(I, random_polynomial(rng, m, 2));
    const AForm lhs = d_A(A, anchor_pullback(A, w));
    const AForm rhs = anchor_pullback(A, d_A(T, w));
    chain = std::max(chain, (lhs - rhs).max_abs_at(pts));
  }
  const bool pass = dd <= tol && leibniz <= tol && chain <= tol;
  r["results"] = {{"pass", pass}, {"rank", rk}, {"samples", o.samples}, {"d_squared_degrees", degrees}};
  r["residuals"] = {{"d_squared", dd}, {"leibniz", leibniz}, {"chain_map", chain}};
  r["tolerances"] = {{"residual", tol}};
  return pass ? 0 : 2;
}

int cmd_curvature(const LieAlgebroid& A, const Options& o, Json& r) {
  const AConnection conn = compatible_connection(A).on_A;
  const AForm R = curvature(conn);
  const auto pts = sample_points(o.seed, o.samples, A.dimension());
  const std::size_t rk = A.rank();
  Json comps = Json::array();
  double op = 0.0;
  for (std::size_t s = 0; s < rk; ++s)
    for (std::size_t t = s + 1; t < rk; ++t) {
      const FieldMatrix M = R.component({s, t}).pruned(kPruneTol);
      if (!M.is_zero()) comps.push_back({{"s", s + 1}, {"t", t + 1}, {"matrix", field_matrix_json(M, A.chart())}});
      const Section a = Section::basis(A, s), b = Section::basis(A, t);
      for (std::size_t u = 0; u < rk; ++u) {
        FiberSection v(rk, ScalarField(A.dimension()));
        v[u] = ScalarField::constant(A.dimension(), 1.0);
        const FiberSection w = curvature_operational(conn, a, b, v);
        for (std::size_t i = 0; i < rk; ++i)
          for (const auto& p : pts) op = std::max(op, std::abs(w[i].evaluate(p) - R.component({s, t})(i, u).evaluate(p)));
      }
    }
  r["results"] = {{"connection", "compatible"}, {"bundle", "A"}, {"flat", comps.empty()}, {"components", comps}};
  r["residuals"] = {{"operational", op}};
  r["tolerances"] = {{"operational", 1e-9}};
  return 0;
}

int cmd_torsion(const LieAlgebroid& A, const Options& o, Json& r) {
  const AConnection conn = compatible_connection(A).on_A;
  const TensorSection T = torsion(conn);
  const auto pts = sample_points(o.seed, o.samples, A.dimension());
  const std::size_t rk = A.rank();
  Json comps = Json::array();
  double op = 0.0;
  for (std::size_t s = 0; s < rk; ++s)
    for (std::size_t t = s + 1; t < rk; ++t) {
      const Section a = Section::basis(A, s), b = Section::basis(A, t);
      const Section ts = torsion_operational(conn, a, b);
      for (std::size_t u = 0; u < rk; ++u) {
        const std::size_t idx[] = {s, t, u};
        const ScalarField v = T.at(idx).pruned(kPruneTol);
        if (!v.is_zero())
          comps.push_back({{"s", s + 1}, {"t", t + 1}, {"u", u + 1}, {"value", v.to_string(A.chart())}});
        for (const auto& p : pts) op = std::max(op, std::abs(ts[u].evaluate(p) - T.at(idx).evaluate(p)));
      }
    }
  r["results"] = {{"connection", "compatible"}, {"bundle", "A"}, {"torsion_free", comps.empty()}, {"components", comps}};
  r["residuals"] = {{"operational", op}};
  r["tolerances"] = {{"operational", 1e-9}};
  return 0;
}

AConnection named_connection(const LieAlgebroid& A, const std::string& name) {
  if (name == "compatible") return compatible_connection(A).on_A;
  if (name == "basic") return basic_connection(A);
  if (name == "flat") return flat_metric_connection(A);
  throw Error(ErrorKind::InvalidInput, "unknown connection '" + name + "'");
}

APath path_from_spec(const LieAlgebroid& A, const nlohmann::json& doc) {
  const Chart time(std::vector<std::string>{"t"});
  auto polys = [&](const char* key) {
    std::vector<ScalarField> out;
    for (const auto& e : doc.at(key)) out.push_back(expression_field(time, e));
    return out;
  };
  if (doc.contains("base")) {
    const std::vector<ScalarField> base = polys("base");
    if (base.size() != A.dimension())
      throw Error(ErrorKind::DimensionMismatch, "base path has " + std::to_string(base.size()) + " coordinates");
    return lift_base_path(A, polynomial_base_path(base));
  }
  if (!doc.contains("coefficients")) throw Error(ErrorKind::InvalidInput, "path needs 'coefficients' or 'base'");
  const std::vector<ScalarField> coeffs = polys("coefficients");
  if (coeffs.size() != A.rank())
    throw Error(ErrorKind::DimensionMismatch, "path has " + std::to_string(coeffs.size()) + " coefficients, rank is " +
                                                  std::to_string(A.rank()));
  Eigen::VectorXd start = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(A.dimension()));
  if (doc.contains("start")) {
    const auto s = doc.at("start").get<std::vector<double>>();
    if (s.size() != A.dimension()) throw Error(ErrorKind::DimensionMismatch, "path start has the wrong dimension");
    for (std::size_t i = 0; i < s.size(); ++i) start(static_cast<Eigen::Index>(i)) = s[i];
  }
  CurveFn a = [coeffs](double t) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(coeffs.size()));
    const double tt[] = {t};
    for (std::size_t s = 0; s < coeffs.size(); ++s) v(static_cast<Eigen::Index>(s)) = coeffs[s].evaluate(tt);
    return v;
  };
  return path_from_coefficients(A, a, start);
}

int cmd_transport(const LieAlgebroid& A, const Options& o, Json& r, bool loop) {
  const Loaded path = load_json(o.path, "path");
  const std::string conn_name = path.doc.value("connection", "compatible");
  const AConnection conn = named_connection(A, conn_name);
  const APath p = path_from_spec(A, path.doc);
  const double tol = o.tol.value_or(kTransportTol);
  const TransportResult res =
      loop ? holonomy_matrix(conn, p, o.steps, tol)
           : parallel_transport(conn, p, Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(conn.fiber()),
                                                                   static_cast<Eigen::Index>(conn.fiber())),
                                o.steps, tol);
  r["path_digest"] = path.digest;
  r["results"] = {{"connection", conn_name},
                  {"bundle", std::string(to_string(conn.bundle()))},
                  {"steps", res.steps},
                  {"start_point", vector_json(p.position(0.0))},
                  {"end_point", vector_json(p.position(1.0))},
                  {loop ? "holonomy" : "transport", matrix_json(res.value)}};
  r["residuals"] = {{"error_estimate", res.error_estimate}, {"tangency", p.residual}};
  r["tolerances"] = {{"transport", tol}, {"tangency", kPathTolerance}};
  return 0;
}

int cmd_classes(const LieAlgebroid& A, const Options& o, Json& r) {
  const CocycleSection c = secondary_class(A, o.k);
  r["results"] = {{"k", o.k},
                  {"degree", 2 * o.k - 1},
                  {"connections", c.connections},
                  {"components", scalar_form_json(c.form, A.chart())}};
  r["residuals"] = {{"closedness", c.closedness_residual}};
  r["tolerances"] = {{"closedness", kClosednessTol}};
  return 0;
}

int cmd_modular(const LieAlgebroid& A, const Options& o, Json& r) {
  const double tol = o.tol.value_or(kModularTol);
  const ModularTheoremReport rep = modular_theorem_check(A, sample_points(o.seed, o.samples, A.dimension()));
  Json theta = Json::array(), m1 = Json::array();
  bool unimodular = true;
  for (std::size_t s = 0; s < A.rank(); ++s) {
    const ScalarField th = rep.theta.scalar({s}).pruned(kPruneTol);
    unimodular = unimodular && th.is_zero();
    theta.push_back(th.to_string(A.chart()));
    m1.push_back((rep.m1.scalar({s}) * (2.0 * std::numbers::pi)).pruned(kPruneTol).to_string(A.chart()));
  }
  const bool pass = rep.max_deviation <= tol;
  r["results"] = {{"theta", theta}, {"m1_times_2pi", m1}, {"unimodular", unimodular}, {"pass", pass}};
  r["residuals"] = {{"deviation", rep.max_deviation}};
  r["tolerances"] = {{"deviation", tol}};
  return pass ? 0 : 2;
}

Json error_document(std::string_view kind, const std::string& message) {
  Json e;
  e["error"] = {{"kind", kind}, {"message", message}};
  return e;
}

int dispatch(const Options& o, std::ostream& out) {
  if (o.command == "export" && !o.catalog.empty()) {
    out << spec_from_algebroid(from_kind("catalog", {{"name", o.catalog}})).dump(2) << "\n";
    return 0;
  }
  const Loaded spec = load_json(o.spec, "spec");
  const LieAlgebroid A = algebroid_from_spec(spec.doc);
  if (o.command == "export") {
    out << spec_from_algebroid(A).dump(2) << "\n";
    return 0;
  }
  Json r = report(o, spec.digest);
  int code = 0;
  if (o.command == "validate") code = cmd_validate(A, o, r);
  else if (o.command == "rank") code = cmd_rank(A, o, r);
  else if (o.command == "isotropy") code = cmd_isotropy(A, o, r);
  else if (o.command == "linearize") code = cmd_linearize(A, o, r);
  else if (o.command == "differential") code = cmd_differential(A, o, r);
  else if (o.command == "curvature") code = cmd_curvature(A, o, r);
  else if (o.command == "torsion") code = cmd_torsion(A, o, r);
  else if (o.command == "transport") code = cmd_transport(A, o, r, false);
  else if (o.command == "holonomy") code = cmd_transport(A, o, r, true);
  else if (o.command == "classes") code = cmd_classes(A, o, r);
  else if (o.command == "modular") code = cmd_modular(A, o, r);
  out << r.dump(2) << "\n";
  return code;
}

}  // namespace

LieAlgebroid algebroid_from_spec(const nlohmann::json& doc) {
  if (!doc.is_object()) throw Error(ErrorKind::InvalidInput, "spec must be a JSON object");
  try {
    if (doc.contains("kind")) return from_kind(doc.at("kind").get<std::string>(), doc.value("params", nlohmann::json::object()));
    for (const char* key : {"dimension", "rank"})
      if (!doc.contains(key) || !doc[key].is_number_integer() || doc[key].get<long long>() < 0)
        throw Error(ErrorKind::InvalidInput, std::string("spec needs a non-negative integer '") + key + "'");
    const auto m = doc["dimension"].get<std::size_t>();
    const auto rk = doc["rank"].get<std::size_t>();
    const Chart chart(m);
    FieldMatrix anchor(rk, m, m);
    if (m > 0 || doc.contains("anchor")) {
      const auto& rows = doc.at("anchor");
      if (!rows.is_array() || rows.size() != rk)
        throw Error(ErrorKind::ShapeMismatch, "anchor must have " + std::to_string(rk) + " rows");
      for (std::size_t s = 0; s < rk; ++s) {
        if (!rows[s].is_array() || rows[s].size() != m)
          throw Error(ErrorKind::ShapeMismatch, "anchor row " + std::to_string(s + 1) + " must have " +
                                                    std::to_string(m) + " entries");
        for (std::size_t i = 0; i < m; ++i) anchor(s, i) = expression_field(chart, rows[s][i]);
      }
    }
    BracketTensor c(rk, m);
    std::vector<bool> seen(rk * rk * rk, false);
    for (const auto& e : doc.value("bracket", nlohmann::json::array())) {
      const std::size_t s = index_field(e, "s", rk), t = index_field(e, "t", rk), u = index_field(e, "u", rk);
      if (!e.contains("value")) throw Error(ErrorKind::InvalidInput, "bracket entry needs a 'value'");
      const ScalarField v = expression_field(chart, e["value"]);
      if (s == t) {
        if (!v.is_zero())
          throw Error(ErrorKind::AntisymmetryViolation, "bracket entry with s = t = " + std::to_string(s + 1));
        continue;
      }
      const std::size_t other = (t * rk + s) * rk + u;
      if (seen[other] && !(c(t, s, u) == -v))
        throw Error(ErrorKind::AntisymmetryViolation, "entries (" + std::to_string(s + 1) + "," + std::to_string(t + 1) +
                                                          ") and (" + std::to_string(t + 1) + "," +
                                                          std::to_string(s + 1) + ") disagree");
      seen[(s * rk + t) * rk + u] = true;
      c(s, t, u) = v;
      c(t, s, u) = -v;
    }
    std::string name = "spec";
    if (doc.contains("metadata") && doc["metadata"].is_object()) name = doc["metadata"].value("name", name);
    return build_algebroid(chart, rk, std::move(anchor), std::move(c), name);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("bad spec: ") + e.what());
  }
}

Json spec_from_algebroid(const LieAlgebroid& A) {
  const std::size_t rk = A.rank(), m = A.dimension();
  Json doc;
  doc["dimension"] = m;
  doc["rank"] = rk;
  Json anchor = Json::array();
  for (std::size_t s = 0; s < rk; ++s) {
    Json row = Json::array();
    for (std::size_t i = 0; i < m; ++i) row.push_back(A.b(s, i).to_string(A.chart()));
    anchor.push_back(row);
  }
  doc["anchor"] = anchor;
  Json bracket = Json::array();
  for (std::size_t s = 0; s < rk; ++s)
    for (std::size_t t = s + 1; t < rk; ++t)
      for (std::size_t u = 0; u < rk; ++u)
        if (!A.c(s, t, u).is_zero())
          bracket.push_back({{"s", s + 1}, {"t", t + 1}, {"u", u + 1}, {"value", A.c(s, t, u).to_string(A.chart())}});
  doc["bracket"] = bracket;
  doc["metadata"] = {{"name", A.name()}};
  return doc;
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorKind::InvalidInput, "SHA-256 failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return os.str();
}

int run(const std::vector<std::string>& args, std::ostream& out) {
  Options o;
  CLI::App app{"Lie algebroid computations on a single chart", "algebroidlab"};
  app.add_option("command", o.command, "Subcommand")->required()->check(CLI::IsMember(kCommands));
  app.add_option("--spec", o.spec, "Algebroid spec JSON file");
  app.add_option("--point", o.point, "Point as comma-separated coordinates");
  app.add_option("--seed", o.seed, "Seed for sample points and random data");
  app.add_option("--samples", o.samples, "Number of sample points");
  app.add_option("--tol", o.tol, "Tolerance override");
  app.add_option("--k", o.k, "Order of the secondary class (odd)");
  app.add_option("--path", o.path, "A-path spec JSON file");
  app.add_option("--steps", o.steps, "Initial RK4 step count")->check(CLI::PositiveNumber);
  app.add_option("--catalog", o.catalog, "Catalog entry to export");
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    out << error_document("InvalidInput", e.what()).dump(2) << "\n";
    return 1;
  }
  try {
    return dispatch(o, out);
  } catch (const Error& e) {
    out << error_document(to_string(e.kind()), e.message()).dump(2) << "\n";
    return 1;
  }
}

}  // namespace algebroid::cli
