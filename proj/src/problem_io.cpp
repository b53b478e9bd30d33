#include "dirpareto/problem_io.hpp"

#include <fstream>
#include <sstream>

#include "dirpareto/expression.hpp"

namespace dirpareto::cli {

namespace {

Vector vector_from(const Json& j, const std::string& what) {
  if (!j.is_array()) throw Error(ErrorCode::kParse, what + ": expected an array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw Error(ErrorCode::kParse, what + ": expected a number");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

std::vector<Vector> rows_from(const Json& j, const std::string& what) {
  if (!j.is_array()) throw Error(ErrorCode::kParse, what + ": expected a list of vectors");
  std::vector<Vector> out;
  for (const auto& r : j) out.push_back(vector_from(r, what));
  for (const auto& r : out) {
    if (r.size() != out.front().size()) {
      throw Error(ErrorCode::kDimensionMismatch, what + ": rows differ in length");
    }
  }
  return out;
}

Json rows_json(const std::vector<Vector>& rows) {
  Json a = Json::array();
  for (const auto& r : rows) a.push_back(vector_json(r));
  return a;
}

std::vector<std::string> strings_from(const Json& j, const std::string& what) {
  if (!j.is_array()) throw Error(ErrorCode::kParse, what + ": expected a list of strings");
  std::vector<std::string> out;
  for (const auto& s : j) {
    if (!s.is_string()) throw Error(ErrorCode::kParse, what + ": expected a string");
    out.push_back(s.get<std::string>());
  }
  return out;
}

std::vector<double> doubles_from(const Json& j, const std::string& what) {
  const Vector v = vector_from(j, what);
  return {v.data(), v.data() + v.size()};
}

Json direction_json(const DirectionSpec& d) {
  Json j = Json::object();
  j[d.kind == DirectionSpec::Kind::kFinite ? "finite" : "cone_section"] = rows_json(d.vectors);
  return j;
}

DirectionSpec direction_from(const Json& j, const std::string& what) {
  if (!j.is_object() || j.size() != 1) {
    throw Error(ErrorCode::kParse, what + ": expected {\"finite\": [...]} or {\"cone_section\": [...]}");
  }
  DirectionSpec d;
  if (j.contains("finite")) {
    d.kind = DirectionSpec::Kind::kFinite;
    d.vectors = rows_from(j["finite"], what);
  } else if (j.contains("cone_section")) {
    d.kind = DirectionSpec::Kind::kConeSection;
    d.vectors = rows_from(j["cone_section"], what);
  } else {
    throw Error(ErrorCode::kParse, what + ": unknown direction set kind");
  }
  return d;
}

const char* norm_name(mintime::Norm n) { return n == mintime::Norm::kL2 ? "l2" : "linf"; }

mintime::Norm norm_from(const std::string& s) {
  if (s == "l2") return mintime::Norm::kL2;
  if (s == "linf") return mintime::Norm::kLinf;
  throw Error(ErrorCode::kParse, "norm must be l2 or linf, got '" + s + "'");
}

mintime::Target target_from(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kParse, "target: expected an object");
  mintime::Target t;
  if (j.contains("point")) {
    t.variant = mintime::Point{vector_from(j["point"], "target point")};
  } else if (j.contains("points")) {
    t.variant = mintime::FinitePoints{rows_from(j["points"], "target points")};
  } else if (j.contains("polyhedron")) {
    const auto& p = j["polyhedron"];
    t.variant = mintime::Polyhedron{rows_from(p.at("rows"), "target rows"),
                                    doubles_from(p.at("offsets"), "target offsets")};
  } else {
    throw Error(ErrorCode::kParse, "target: expected point, points or polyhedron");
  }
  t.validate();
  return t;
}

}  // namespace

Json vector_json(const Vector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Json target_to_json(const mintime::Target& t) {
  Json j = Json::object();
  if (const auto* p = std::get_if<mintime::Point>(&t.variant)) {
    j["point"] = vector_json(p->x);
  } else if (const auto* f = std::get_if<mintime::FinitePoints>(&t.variant)) {
    j["points"] = rows_json(f->points);
  } else {
    const auto& h = std::get<mintime::Polyhedron>(t.variant);
    j["polyhedron"] = {{"rows", rows_json(h.rows)}, {"offsets", h.offsets}};
  }
  return j;
}

Json set_to_json(const SetSpec& s) {
  Json j = Json::object();
  switch (s.kind) {
    case SetSpec::Kind::kWholeSpace:
      j["kind"] = "whole_space";
      j["dim"] = s.dim;
      break;
    case SetSpec::Kind::kPolyhedron:
      j["kind"] = "polyhedron";
      j["rows"] = rows_json(s.rows);
      j["offsets"] = s.offsets;
      break;
    case SetSpec::Kind::kPolygon:
      if (s.curve) {
        j["kind"] = "curve";
        j["x"] = s.curve->x_expr;
        j["y"] = s.curve->y_expr;
        j["t0"] = s.curve->t0;
        j["t1"] = s.curve->t1;
        j["segments"] = s.curve->segments;
      } else {
        j["kind"] = "polygon";
        j["vertices"] = rows_json(s.vertices);
      }
      j["boundary_tol"] = s.boundary_tol;
      break;
    case SetSpec::Kind::kImplicit:
      j["kind"] = "implicit";
      j["dim"] = s.dim;
      j["expr"] = s.expr_text;
      j["tol"] = s.tol;
      break;
    case SetSpec::Kind::kBall:
      j["kind"] = "ball";
      j["center"] = vector_json(s.center);
      j["radius"] = s.radius;
      break;
    case SetSpec::Kind::kUnion:
    case SetSpec::Kind::kIntersection: {
      j["kind"] = s.kind == SetSpec::Kind::kUnion ? "union" : "intersection";
      Json parts = Json::array();
      for (const auto& p : s.parts) parts.push_back(set_to_json(p));
      j["parts"] = parts;
      break;
    }
  }
  return j;
}

SetSpec set_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw Error(ErrorCode::kParse, "set: expected an object with a \"kind\"");
  }
  const auto kind = j["kind"].get<std::string>();
  const double btol = j.value("boundary_tol", 0.0);
  if (kind == "whole_space") return SetSpec::whole_space(j.at("dim").get<std::size_t>());
  if (kind == "polyhedron") {
    return SetSpec::polyhedron(rows_from(j.at("rows"), "set rows"),
                               doubles_from(j.at("offsets"), "set offsets"));
  }
  if (kind == "polygon") return SetSpec::polygon(rows_from(j.at("vertices"), "polygon"), btol);
  if (kind == "curve") {
    ParametricCurve c;
    c.x_expr = j.at("x").get<std::string>();
    c.y_expr = j.at("y").get<std::string>();
    c.t0 = j.at("t0").get<double>();
    c.t1 = j.at("t1").get<double>();
    c.segments = j.value("segments", 4096);
    return SetSpec::curve_polygon(c, btol);
  }
  if (kind == "implicit") {
    return SetSpec::implicit(j.at("dim").get<std::size_t>(), j.at("expr").get<std::string>(),
                             j.value("tol", 0.0));
  }
  if (kind == "ball") {
    return SetSpec::ball(vector_from(j.at("center"), "ball center"), j.at("radius").get<double>());
  }
  if (kind == "union" || kind == "intersection") {
    std::vector<SetSpec> parts;
    for (const auto& p : j.at("parts")) parts.push_back(set_from_json(p));
    return kind == "union" ? SetSpec::set_union(std::move(parts))
                           : SetSpec::set_intersection(std::move(parts));
  }
  throw Error(ErrorCode::kParse, "set: unknown kind '" + kind + "'");
}

geometry::DirectionSet DirectionSpec::build(std::size_t dim) const {
  if (kind == Kind::kFinite) return geometry::normalize_directions(dim, vectors);
  return geometry::DirectionSet::section(geometry::HalfspaceCone(dim, vectors));
}

MapPtr ProblemFile::objective_map() const {
  if (!objective) throw Error(ErrorCode::kInvalidArgument, "problem has no objective");
  MapPtr f;
  if (!objective->builtin.empty()) {
    f = make_builtin(objective->builtin, objective->params);
  } else if (!objective->expressions.empty()) {
    f = make_expression_map("expression", dim, objective->expressions);
  } else {
    throw Error(ErrorCode::kInvalidArgument, "objective needs a builtin or expressions");
  }
  require_dim(dim, f->input_dim(), "objective input");
  return f;
}

std::size_t ProblemFile::output_dim() const {
  if (objective) return objective_map()->output_dim();
  if (K && !K->empty()) return static_cast<std::size_t>(K->front().size());
  throw Error(ErrorCode::kInvalidArgument, "cannot determine the output dimension");
}

geometry::HalfspaceCone ProblemFile::ordering_cone() const {
  const std::size_t m = output_dim();
  if (!K) return geometry::HalfspaceCone::orthant(m);
  return geometry::HalfspaceCone(m, *K);
}

geometry::DirectionSet ProblemFile::directions_L() const {
  if (!L) throw Error(ErrorCode::kInvalidArgument, "problem has no direction set L");
  return L->build(dim);
}

certify::Constraint ProblemFile::build_constraint() const {
  switch (constraint.kind) {
    case ConstraintSpec::Kind::kNone: return std::monostate{};
    case ConstraintSpec::Kind::kSet: return *constraint.set;
    case ConstraintSpec::Kind::kIneqEq: {
      certify::IneqEq c;
      for (std::size_t i = 0; i < constraint.mu.size(); ++i) {
        c.mu.push_back(make_expression_map("mu" + std::to_string(i), dim, {constraint.mu[i]}));
      }
      for (std::size_t i = 0; i < constraint.nu.size(); ++i) {
        c.nu.push_back(make_expression_map("nu" + std::to_string(i), dim, {constraint.nu[i]}));
      }
      return c;
    }
  }
  return std::monostate{};
}

certify::Problem ProblemFile::to_problem() const {
  certify::Problem p{objective_map(), ordering_cone(), directions_L(), build_constraint(), point,
                     grid};
  p.validate();
  return p;
}

Json to_json(const ProblemFile& p) {
  Json j = Json::object();
  j["schema_version"] = kSchemaVersion;
  if (!p.description.empty()) j["description"] = p.description;
  j["dim"] = p.dim;
  if (p.objective) {
    Json o = Json::object();
    if (!p.objective->builtin.empty()) {
      o["builtin"] = p.objective->builtin;
      if (!p.objective->params.empty()) o["params"] = p.objective->params;
    } else {
      o["expressions"] = p.objective->expressions;
    }
    j["objective"] = o;
  }
  if (p.K) j["K"] = rows_json(*p.K);
  if (p.L) j["L"] = direction_json(*p.L);
  if (p.C) j["C"] = direction_json(*p.C);
  switch (p.constraint.kind) {
    case ConstraintSpec::Kind::kNone: break;
    case ConstraintSpec::Kind::kSet: j["constraint"] = {{"set", set_to_json(*p.constraint.set)}}; break;
    case ConstraintSpec::Kind::kIneqEq:
      j["constraint"] = {{"mu", p.constraint.mu}, {"nu", p.constraint.nu}};
      break;
  }
  if (p.set) j["set"] = set_to_json(*p.set);
  if (p.point.size() > 0) j["point"] = vector_json(p.point);
  j["grid"] = {{"radius", p.grid.radius},
               {"levels", p.grid.levels},
               {"rays", p.grid.rays_per_level},
               {"seed", p.grid.seed}};
  j["weak"] = p.weak;
  j["norm"] = norm_name(p.norm);
  j["tol"] = p.tol;
  if (!p.g.empty()) j["g"] = p.g;
  if (p.Q) j["Q"] = rows_json(*p.Q);
  if (!p.directions.empty()) j["directions"] = rows_json(p.directions);
  if (p.e) j["e"] = vector_json(*p.e);
  if (p.y) j["y"] = vector_json(*p.y);
  if (p.ell) j["ell"] = *p.ell;
  if (p.target) j["target"] = target_to_json(*p.target);
  if (p.eps_schedule) j["eps_schedule"] = *p.eps_schedule;
  if (p.r_schedule) j["r_schedule"] = *p.r_schedule;
  return j;
}

ProblemFile from_json(const Json& j) {
  try {
    if (!j.is_object()) throw Error(ErrorCode::kParse, "problem file must be a JSON object");
    const int version = j.value("schema_version", 0);
    if (version != kSchemaVersion) {
      throw Error(ErrorCode::kParse,
                  "unsupported schema_version " + std::to_string(version) + " (expected 1)");
    }
    ProblemFile p;
    p.description = j.value("description", std::string());
    p.dim = j.at("dim").get<std::size_t>();
    if (p.dim == 0) throw Error(ErrorCode::kInvalidArgument, "dim must be positive");
    if (j.contains("objective")) {
      const auto& o = j["objective"];
      ObjectiveSpec spec;
      if (o.contains("builtin")) {
        spec.builtin = o["builtin"].get<std::string>();
        if (o.contains("params")) spec.params = doubles_from(o["params"], "objective params");
      } else if (o.contains("expressions")) {
        spec.expressions = strings_from(o["expressions"], "objective expressions");
        if (spec.expressions.empty()) throw Error(ErrorCode::kParse, "objective: no expressions");
      } else {
        throw Error(ErrorCode::kParse, "objective: expected builtin or expressions");
      }
      p.objective = spec;
    }
    if (j.contains("K")) p.K = rows_from(j["K"], "K");
    if (j.contains("L")) p.L = direction_from(j["L"], "L");
    if (j.contains("C")) p.C = direction_from(j["C"], "C");
    if (j.contains("constraint") && !j["constraint"].is_null()) {
      const auto& c = j["constraint"];
      if (c.contains("set")) {
        p.constraint.kind = ConstraintSpec::Kind::kSet;
        p.constraint.set = set_from_json(c["set"]);
      } else {
        p.constraint.kind = ConstraintSpec::Kind::kIneqEq;
        if (c.contains("mu")) p.constraint.mu = strings_from(c["mu"], "constraint mu");
        if (c.contains("nu")) p.constraint.nu = strings_from(c["nu"], "constraint nu");
      }
    }
    if (j.contains("set")) p.set = set_from_json(j["set"]);
    if (j.contains("point")) p.point = vector_from(j["point"], "point");
    if (j.contains("grid")) {
      const auto& g = j["grid"];
      p.grid.radius = g.value("radius", p.grid.radius);
      p.grid.levels = g.value("levels", p.grid.levels);
      p.grid.rays_per_level = g.value("rays", p.grid.rays_per_level);
      p.grid.seed = g.value("seed", p.grid.seed);
      p.grid.validate();
    }
    p.weak = j.value("weak", false);
    p.norm = norm_from(j.value("norm", std::string("l2")));
    p.tol = j.value("tol", p.tol);
    if (j.contains("g")) p.g = strings_from(j["g"], "g");
    if (j.contains("Q")) p.Q = rows_from(j["Q"], "Q");
    if (j.contains("directions")) p.directions = rows_from(j["directions"], "directions");
    if (j.contains("e")) p.e = vector_from(j["e"], "e");
    if (j.contains("y")) p.y = vector_from(j["y"], "y");
    if (j.contains("ell")) p.ell = j["ell"].get<double>();
    if (j.contains("target")) p.target = target_from(j["target"]);
    if (j.contains("eps_schedule")) p.eps_schedule = doubles_from(j["eps_schedule"], "eps_schedule");
    if (j.contains("r_schedule")) p.r_schedule = doubles_from(j["r_schedule"], "r_schedule");

    if (p.point.size() > 0) require_dim(p.dim, static_cast<std::size_t>(p.point.size()), "point");
    if (p.L) {
      for (const auto& v : p.L->vectors) require_dim(p.dim, static_cast<std::size_t>(v.size()), "L");
    }
    if (p.set) require_dim(p.dim, p.set->dim, "set");
    if (p.constraint.set) require_dim(p.dim, p.constraint.set->dim, "constraint set");
    for (const auto& u : p.directions) require_dim(p.dim, static_cast<std::size_t>(u.size()), "directions");
    return p;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::kParse, std::string("problem file: ") + ex.what());
  }
}

ProblemFile parse_problem(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& ex) {
    throw Error(ErrorCode::kParse, std::string("invalid JSON: ") + ex.what());
  }
  return from_json(j);
}

ProblemFile load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open problem file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

}  // namespace dirpareto::cli
