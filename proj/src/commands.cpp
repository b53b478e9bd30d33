#include "dirpareto/commands.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "dirpareto/certify.hpp"
#include "dirpareto/gallery.hpp"
#include "dirpareto/mintime.hpp"
#include "dirpareto/multipliers.hpp"
#include "dirpareto/scalarize.hpp"
#include "dirpareto/tangent.hpp"

namespace dirpareto::cli {

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json number_or_inf(double x) {
  if (std::isfinite(x)) return x;
  return x > 0 ? "inf" : "-inf";
}

Json optional_vector(const std::optional<Vector>& v) {
  return v ? vector_json(*v) : Json(nullptr);
}

Json grid_json(const GridSpec& g) {
  return {{"radius", g.radius}, {"levels", g.levels}, {"rays", g.rays_per_level}, {"seed", g.seed}};
}

Json base_report(const std::string& command, const ProblemFile& p) {
  Json r = Json::object();
  r["schema_version"] = kSchemaVersion;
  r["command"] = command;
  r["verdict"] = nullptr;
  r["problem"] = to_json(p);
  return r;
}

CommandResult finish(Json report, std::string verdict, bool positive) {
  CommandResult res;
  report["verdict"] = verdict;
  res.verdict = std::move(verdict);
  res.exit_code = positive ? kExitOk : kExitNegative;
  res.report = std::move(report);
  return res;
}

const Vector& require_point(const ProblemFile& p) {
  if (p.point.size() == 0) throw Error(ErrorCode::kInvalidArgument, "problem has no point");
  return p.point;
}

const SetSpec& require_set(const ProblemFile& p) {
  if (!p.set) throw Error(ErrorCode::kInvalidArgument, "problem has no set");
  return *p.set;
}

geometry::HalfspaceCone set_cone(const ProblemFile& p) {
  if (p.K) return geometry::HalfspaceCone(p.dim, *p.K);
  return geometry::HalfspaceCone::orthant(p.dim);
}

// Minimal SVG scatter of a 2-D sample around a center.
class Svg {
 public:
  Svg(const Vector& center, double radius) : center_(center), radius_(radius > 0 ? radius : 1.0) {}

  void dot(const Vector& x, const char* color, double r = 1.5) {
    body_ << "<circle cx=\"" << fmt(sx(x[0])) << "\" cy=\"" << fmt(sy(x[1])) << "\" r=\""
          << fmt(r) << "\" fill=\"" << color << "\"/>\n";
  }

  void segment(const Vector& a, const Vector& b, const char* color) {
    body_ << "<line x1=\"" << fmt(sx(a[0])) << "\" y1=\"" << fmt(sy(a[1])) << "\" x2=\""
          << fmt(sx(b[0])) << "\" y2=\"" << fmt(sy(b[1])) << "\" stroke=\"" << color
          << "\" stroke-width=\"0.8\"/>\n";
  }

  std::string str(const std::string& title) const {
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"400\" "
           "viewBox=\"0 0 400 400\">\n<title>"
        << title << "</title>\n<rect width=\"400\" height=\"400\" fill=\"white\"/>\n"
        << body_.str() << "</svg>\n";
    return out.str();
  }

 private:
  static std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
  }
  double sx(double x) const { return 200.0 + 180.0 * (x - center_[0]) / radius_; }
  double sy(double y) const { return 200.0 - 180.0 * (y - center_[1]) / radius_; }

  Vector center_;
  double radius_;
  std::ostringstream body_;
};

Json cert_json(const certify::CertReport& rep) {
  Json j = Json::object();
  j["weak"] = rep.weak;
  j["samples"] = rep.samples;
  j["evaluated"] = rep.evaluated;
  j["no_feasible_sample"] = rep.no_feasible_sample;
  j["grid"] = grid_json(rep.grid);
  if (rep.counter_x) {
    j["counterexample"] = {{"x", vector_json(*rep.counter_x)},
                           {"difference", vector_json(*rep.counter_diff)}};
  } else {
    j["counterexample"] = nullptr;
  }
  j["note"] = "certified_on_grid is evidence on a finite sample, not a proof";
  return j;
}

std::string cert_csv(const certify::CertReport& rep) {
  std::ostringstream out;
  out << "level,ray";
  const auto n = rep.points.empty() ? 0 : rep.points.front().x.size();
  for (Eigen::Index i = 0; i < n; ++i) out << ",x" << i;
  out << ",feasible,violation,difference\n";
  for (const auto& sp : rep.points) {
    out << sp.level << ',' << sp.ray;
    for (Eigen::Index i = 0; i < sp.x.size(); ++i) out << ',' << num(sp.x[i]);
    out << ',' << sp.feasible << ',' << sp.violation << ',';
    for (Eigen::Index i = 0; i < sp.diff.size(); ++i) out << (i ? ";" : "") << num(sp.diff[i]);
    out << '\n';
  }
  return out.str();
}

std::string cert_svg(const certify::CertReport& rep, const Vector& xbar, const std::string& title) {
  if (xbar.size() != 2) return {};
  Svg svg(xbar, rep.grid.radius);
  for (const auto& sp : rep.points) {
    if (!sp.feasible) {
      svg.dot(sp.x, "#dddddd", 1.0);
    } else {
      svg.dot(sp.x, sp.violation ? "#d62728" : "#1f77b4");
    }
  }
  svg.dot(xbar, "black", 3.0);
  return svg.str(title);
}

CommandResult cmd_certify(const ProblemFile& p) {
  const auto problem = p.to_problem();
  const auto rep = certify::certify_directional_min(problem, p.weak);
  Json r = base_report("certify", p);
  r["result"] = cert_json(rep);
  auto res = finish(std::move(r), certify::to_string(rep.verdict),
                    rep.verdict == certify::Verdict::kCertifiedOnGrid);
  res.csv = cert_csv(rep);
  res.svg = cert_svg(rep, problem.xbar, "certify");
  return res;
}

CommandResult cmd_certify_set(const ProblemFile& p) {
  const auto& M = require_set(p);
  const auto rep = certify::certify_set_min(M, require_point(p), set_cone(p), p.directions_L(),
                                            p.weak, p.grid);
  Json r = base_report("certify-set", p);
  r["result"] = cert_json(rep);
  auto res = finish(std::move(r), certify::to_string(rep.verdict),
                    rep.verdict == certify::Verdict::kCertifiedOnGrid);
  res.csv = cert_csv(rep);
  res.svg = cert_svg(rep, p.point, "certify-set");
  return res;
}

CommandResult cmd_first_order(const ProblemFile& p) {
  if (p.directions.empty()) throw Error(ErrorCode::kInvalidArgument, "first-order needs directions");
  const auto rep = certify::check_first_order_necessary(p.to_problem(), p.directions);
  Json dirs = Json::array();
  for (const auto& d : rep.directions) {
    dirs.push_back({{"u", vector_json(d.u)}, {"image", vector_json(d.image)}, {"violated", d.violated}});
  }
  Json r = base_report("first-order", p);
  r["result"] = {{"directions", dirs}};
  return finish(std::move(r), rep.holds ? "necessary_condition_holds" : "necessary_condition_violated",
                rep.holds);
}

CommandResult cmd_tangent(const ProblemFile& p) {
  const auto& A = require_set(p);
  if (p.directions.size() != 1) {
    throw Error(ErrorCode::kInvalidArgument, "tangent needs exactly one direction u");
  }
  const Vector& u = p.directions.front();
  const Vector& xbar = require_point(p);
  const auto L = p.directions_L();
  Json r = base_report("tangent", p);
  if (A.kind == SetSpec::Kind::kPolyhedron) {
    const auto cone = tangent::tangent_polyhedral(tangent::PolyhedralSet(A.rows, A.offsets), xbar, L);
    const bool member = cone.contains(u);
    r["result"] = {{"exact", true}, {"method", "active-constraint cone intersected with cone L"}};
    return finish(std::move(r), member ? "member" : "nonmember", member);
  }
  tangent::TSchedule schedule;
  schedule.radius = p.grid.radius;
  const auto v = tangent::tangent_membership_sampled(A, xbar, L, u, schedule);
  Json ev = Json::array();
  std::ostringstream csv;
  csv << "k,t_k,eps_k,perturbations,hit,t,u0,u1\n";
  for (const auto& e : v.evidence) {
    Json item = {{"k", e.k}, {"t_k", e.t_k}, {"eps_k", e.eps_k}, {"perturbations", e.perturbations},
                 {"hit", e.hit}};
    if (e.hit) {
      item["t"] = e.t;
      item["u_k"] = vector_json(e.u_k);
    }
    ev.push_back(item);
    csv << e.k << ',' << num(e.t_k) << ',' << num(e.eps_k) << ',' << e.perturbations << ','
        << e.hit << ',' << (e.hit ? num(e.t) : "");
    for (Eigen::Index i = 0; i < 2 && i < u.size(); ++i) {
      csv << ',' << (e.hit ? num(e.u_k[i]) : "");
    }
    csv << '\n';
  }
  r["result"] = {{"exact", false},
                 {"reason", v.reason},
                 {"schedule",
                  {{"radius", schedule.radius},
                   {"levels", schedule.levels},
                   {"max_perturbations", schedule.max_perturbations},
                   {"confirm_levels", schedule.confirm_levels},
                   {"t_k", "radius * 2^-k"},
                   {"eps_k", "|u| * 2^(-k/2)"}}},
                 {"evidence", ev},
                 {"note", "nonmember requires empty sampled neighbourhoods at consecutive levels"}};
  auto res = finish(std::move(r), tangent::to_string(v.status),
                    v.status == tangent::TangentStatus::kMember);
  res.csv = csv.str();
  if (xbar.size() == 2) {
    Svg svg(xbar, schedule.radius);
    for (const auto& e : v.evidence) {
      if (e.hit) svg.dot(Vector(xbar + e.t * e.u_k), "#1f77b4", 2.0);
    }
    svg.segment(xbar, Vector(xbar + schedule.radius * u / u.norm()), "#d62728");
    svg.dot(xbar, "black", 3.0);
    res.svg = svg.str("tangent");
  }
  return res;
}

CommandResult cmd_tangent_sufficiency(const ProblemFile& p) {
  const auto rep = certify::tangent_sufficiency_sets(require_set(p), require_point(p), set_cone(p),
                                                     p.directions_L(), p.weak);
  Json r = base_report("tangent-sufficiency", p);
  r["result"] = {{"exact", rep.exact}, {"violating_direction", optional_vector(rep.violating_direction)}};
  return finish(std::move(r), certify::to_string(rep.status),
                rep.status == certify::SufficiencyStatus::kCertified);
}

Vector default_e(const geometry::HalfspaceCone& K) {
  // Normalized sum of lattice directions interior to K.
  Vector e = Vector::Zero(static_cast<Eigen::Index>(K.dim()));
  for (const auto& v : geometry::sphere_lattice(K.dim(), 720)) {
    if (geometry::contains(K, v, true)) e += v;
  }
  if (e.norm() == 0.0) throw Error(ErrorCode::kInvalidArgument, "K has empty interior; give e");
  return e / e.norm();
}

const char* kHypotheses =
    "a 'none' answer refutes minimality only under the stated hypotheses (convex cone L, "
    "subregular constraints, separation)";

CommandResult cmd_kkt(const ProblemFile& p) {
  const auto problem = p.to_problem();
  const Vector e = p.e ? *p.e : default_e(problem.K);
  const auto cert = multipliers::kkt_multipliers(problem, e);
  Json r = base_report("kkt", p);
  if (!cert) {
    r["result"] = {{"multipliers", nullptr}, {"hypotheses", kHypotheses}};
    return finish(std::move(r), "none", false);
  }
  r["result"] = {{"ystar", vector_json(cert->ystar)},
                 {"w", vector_json(cert->w)},
                 {"lambda", vector_json(cert->lambda)},
                 {"tau", vector_json(cert->tau)},
                 {"normalization", cert->normalization},
                 {"e", vector_json(cert->e)},
                 {"residual_in_Lpolar", vector_json(cert->residual_in_Lpolar)},
                 {"valid", multipliers::kkt_certificate_valid(problem, *cert, p.tol)},
                 {"tol", p.tol},
                 {"hypotheses", kHypotheses}};
  return finish(std::move(r), "multipliers_found", true);
}

CommandResult cmd_fritz_john(const ProblemFile& p) {
  const auto problem = p.to_problem();
  MapPtr g;
  std::optional<geometry::HalfspaceCone> Q;
  if (!p.g.empty()) {
    g = make_expression_map("g", p.dim, p.g);
    if (!p.Q) throw Error(ErrorCode::kInvalidArgument, "g needs its cone Q");
    Q = geometry::HalfspaceCone(g->output_dim(), *p.Q);
  }
  const auto cert = multipliers::fritz_john(problem, g, Q);
  Json r = base_report("fritz-john", p);
  if (!cert) {
    r["result"] = {{"multipliers", nullptr}, {"hypotheses", kHypotheses}};
    return finish(std::move(r), "none", false);
  }
  r["result"] = {{"ystar", vector_json(cert->ystar)},
                 {"zstar", vector_json(cert->zstar)},
                 {"w", vector_json(cert->w)},
                 {"s", vector_json(cert->s)},
                 {"normalization", "sum_eq_1"},
                 {"stationarity", vector_json(cert->stationarity)},
                 {"hypotheses", kHypotheses}};
  return finish(std::move(r), "multipliers_found", true);
}

CommandResult cmd_gerstewitz(const ProblemFile& p) {
  if (!p.K || !p.e || !p.y) throw Error(ErrorCode::kInvalidArgument, "gerstewitz needs K, e and y");
  const scalarize::ScalarizationContext ctx(
      geometry::HalfspaceCone(static_cast<std::size_t>(p.y->size()), *p.K), *p.e);
  const double value = scalarize::gerstewitz_value(ctx, *p.y);
  const auto sub = scalarize::gerstewitz_subdiff(ctx, *p.y);
  Json r = base_report("gerstewitz", p);
  r["result"] = {{"value", value},
                 {"subgradient", vector_json(sub.witness)},
                 {"weights", vector_json(sub.weights)}};
  return finish(std::move(r), "value_computed", true);
}

CommandResult cmd_mintime(const ProblemFile& p) {
  if (!p.target) throw Error(ErrorCode::kInvalidArgument, "mintime needs a target");
  const auto res = mintime::minimal_time(p.directions_L(), require_point(p), *p.target, p.norm);
  Json r = base_report("mintime", p);
  r["result"] = {{"value", number_or_inf(res.value)},
                 {"approximate", res.approximate},
                 {"norm", p.norm == mintime::Norm::kL2 ? "l2" : "linf"},
                 {"displacement", optional_vector(res.displacement)}};
  const bool finite = std::isfinite(res.value);
  return finish(std::move(r), finite ? "finite" : "infinite", finite);
}

CommandResult cmd_openness(const ProblemFile& p) {
  if (!p.C) throw Error(ErrorCode::kInvalidArgument, "openness needs target directions C");
  const auto f = p.objective_map();
  const auto C = p.C->build(f->output_dim());
  const auto rep = certify::openness_falsifier(
      *f, require_point(p), p.directions_L(), C,
      p.eps_schedule ? *p.eps_schedule : certify::default_eps_schedule(),
      p.r_schedule ? *p.r_schedule : certify::default_r_schedule(), p.grid.rays_per_level);
  Json targets = Json::array();
  for (const auto& t : rep.targets) {
    targets.push_back({{"r", t.r}, {"y", vector_json(t.y)}, {"distance", t.distance}});
  }
  Json r = base_report("openness", p);
  r["result"] = {{"eps", rep.eps}, {"eta", rep.eta}, {"targets", targets}};
  return finish(std::move(r), rep.witness ? "not_open_witness" : "inconclusive", rep.witness);
}

CommandResult cmd_penalized(const ProblemFile& p) {
  const auto f = p.objective_map();
  std::optional<tangent::PolyhedralSet> A;
  if (p.constraint.kind == ConstraintSpec::Kind::kSet) {
    const auto& s = *p.constraint.set;
    if (s.kind != SetSpec::Kind::kPolyhedron) {
      throw Error(ErrorCode::kInvalidArgument, "penalized needs a polyhedral constraint set");
    }
    A.emplace(s.rows, s.offsets);
  } else if (p.constraint.kind == ConstraintSpec::Kind::kIneqEq) {
    throw Error(ErrorCode::kInvalidArgument, "penalized needs a polyhedral constraint set");
  }
  std::optional<multipliers::VectorMode> vm;
  std::optional<geometry::HalfspaceCone> K;
  if (p.e) vm = multipliers::VectorMode{*p.e, p.ell.value_or(1.0)};
  if (p.K) K = geometry::HalfspaceCone(f->output_dim(), *p.K);
  const auto res = multipliers::stationarity_penalized(*f, A ? &*A : nullptr, require_point(p),
                                                       p.directions_L(), vm, K);
  Json r = base_report("penalized", p);
  r["result"] = {{"mode", vm ? "vector" : "scalar"},
                 {"eta", vector_json(res.eta)},
                 {"ystar", vector_json(res.ystar)},
                 {"xstar", vector_json(res.xstar)},
                 {"polar_part", vector_json(res.polar_part)},
                 {"norm", res.norm},
                 {"hypotheses", kHypotheses}};
  return finish(std::move(r), res.holds ? "stationarity_holds" : "none", res.holds);
}

}  // namespace

void RunOptions::apply(ProblemFile& p) const {
  if (radius) p.grid.radius = *radius;
  if (levels) p.grid.levels = *levels;
  if (rays) p.grid.rays_per_level = *rays;
  if (seed) p.grid.seed = *seed;
  if (norm) p.norm = *norm;
  if (tol) p.tol = *tol;
  if (weak) p.weak = true;
  p.grid.validate();
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {
      "certify",    "certify-set", "first-order", "tangent",  "tangent-sufficiency", "kkt",
      "fritz-john", "gerstewitz",  "mintime",     "openness", "penalized"};
  return names;
}

CommandResult run_command(const std::string& command, ProblemFile problem,
                          const RunOptions& options) {
  options.apply(problem);
  if (command == "certify") return cmd_certify(problem);
  if (command == "certify-set") return cmd_certify_set(problem);
  if (command == "first-order") return cmd_first_order(problem);
  if (command == "tangent") return cmd_tangent(problem);
  if (command == "tangent-sufficiency") return cmd_tangent_sufficiency(problem);
  if (command == "kkt") return cmd_kkt(problem);
  if (command == "fritz-john") return cmd_fritz_john(problem);
  if (command == "gerstewitz") return cmd_gerstewitz(problem);
  if (command == "mintime") return cmd_mintime(problem);
  if (command == "openness") return cmd_openness(problem);
  if (command == "penalized") return cmd_penalized(problem);
  throw Error(ErrorCode::kInvalidArgument, "unknown command '" + command + "'");
}

CommandResult run_example(const std::string& name, const RunOptions& options) {
  const auto ex = gallery_example(name);
  Json runs = Json::array();
  bool reproduced = true;
  CommandResult primary;
  for (std::size_t i = 0; i < ex.runs.size(); ++i) {
    const auto& run = ex.runs[i];
    auto res = run_command(run.command, run.problem, options);
    const bool match = res.verdict == run.expected;
    reproduced = reproduced && match;
    runs.push_back({{"label", run.label},
                    {"command", run.command},
                    {"expected", run.expected},
                    {"verdict", res.verdict},
                    {"matches", match},
                    {"report", res.report}});
    if (i == 0) primary = std::move(res);
  }
  Json r = Json::object();
  r["schema_version"] = kSchemaVersion;
  r["command"] = "examples run";
  r["example"] = ex.name;
  r["summary"] = ex.summary;
  r["verdict"] = primary.verdict;
  r["reproduced"] = reproduced;
  r["runs"] = runs;
  primary.report = std::move(r);
  return primary;
}

CommandResult list_examples() {
  Json items = Json::array();
  for (const auto& n : gallery_names()) {
    const auto ex = gallery_example(n);
    Json runs = Json::array();
    for (const auto& run : ex.runs) {
      runs.push_back({{"label", run.label}, {"command", run.command}, {"expected", run.expected}});
    }
    items.push_back({{"name", ex.name}, {"summary", ex.summary}, {"runs", runs}});
  }
  CommandResult res;
  res.exit_code = kExitOk;
  res.verdict = "listed";
  res.report = {{"schema_version", kSchemaVersion},
                {"command", "examples list"},
                {"verdict", "listed"},
                {"examples", items}};
  return res;
}

CommandResult error_result(const std::string& command, const std::string& message, int code) {
  CommandResult res;
  res.exit_code = kExitError;
  res.verdict = "error";
  res.report = {{"schema_version", kSchemaVersion},
                {"command", command},
                {"verdict", "error"},
                {"error", {{"code", code}, {"message", message}}}};
  return res;
}

std::string dump_report(const Json& report) { return report.dump(2) + "\n"; }

}  // namespace dirpareto::cli
