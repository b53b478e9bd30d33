#include "dirpareto/gallery.hpp"

#include <cmath>
#include <numbers>

namespace dirpareto::cli {

namespace {

Vector v2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

Vector v1(double a) {
  Vector v(1);
  v << a;
  return v;
}

ProblemFile base(const std::string& builtin, std::size_t dim) {
  ProblemFile p;
  p.dim = dim;
  p.objective = ObjectiveSpec{builtin, {}, {}};
  p.point = Vector::Zero(static_cast<Eigen::Index>(dim));
  return p;
}

DirectionSpec finite(std::vector<Vector> v) {
  return {DirectionSpec::Kind::kFinite, std::move(v)};
}

DirectionSpec full_circle() { return {DirectionSpec::Kind::kConeSection, {}}; }

GalleryRun run(std::string label, std::string command, ProblemFile p, std::string expected) {
  p.description = label;
  return {std::move(label), std::move(command), std::move(p), std::move(expected)};
}

GalleryExample saddle_x2_y2() {
  auto a = base("saddle-x2-y2", 2);
  a.L = finite({v2(1, 0), v2(-1, 0)});
  auto b = base("saddle-x2-y2", 2);
  b.L = full_circle();
  return {"saddle-x2-y2",
          "f(x,y) = x^2 - y^2 at (0,0): directional minimum wrt {(±1,0)}, not a local minimum",
          {run("L = {(1,0), (-1,0)}", "certify", a, "certified_on_grid"),
           run("L = unit circle", "certify", b, "refuted")}};
}

GalleryExample saddle_x2_y3() {
  auto a = base("saddle-x2-y3", 2);
  a.L = finite({v2(1, 0), v2(-1, 0)});
  auto b = base("saddle-x2-y3", 2);
  b.L = finite({v2(0, -1)});
  return {"saddle-x2-y3",
          "f(x,y) = x^2 - y^3 at (0,0): directional minimum wrt {(±1,0)} and wrt {(0,-1)}",
          {run("L = {(1,0), (-1,0)}", "certify", a, "certified_on_grid"),
           run("L = {(0,-1)}", "certify", b, "certified_on_grid")}};
}

GalleryExample oscillating(const std::string& name, const std::string& summary) {
  auto a = base(name, 1);
  a.L = finite({v1(1)});
  auto b = base(name, 1);
  b.L = finite({v1(-1)});
  return {name, summary,
          {run("L = {+1}", "certify", a, "refuted"), run("L = {-1}", "certify", b, "refuted")}};
}

GalleryExample arctan_sector() {
  auto a = base("arctan-sector", 2);
  const double lo = std::numbers::pi / 6.0;
  const double hi = std::numbers::pi / 3.0;
  a.objective->params = {lo, hi};
  a.L = finite(arc_directions(lo, hi, 128));
  return {"arctan-sector",
          "sector function with θ1 = π/6, θ2 = π/3: directional minimum wrt the arc [θ1, θ2]",
          {run("L = 128-point arc [π/6, π/3]", "certify", a, "certified_on_grid")}};
}

GalleryExample vector_2x_x() {
  const std::vector<Vector> K = {v2(0, 1), v2(1, -1)};
  auto a = base("vector-2x-x", 1);
  a.K = K;
  a.L = finite({v1(1)});
  auto b = base("vector-2x-x", 1);
  b.K = K;
  b.L = finite({v1(-1), v1(1)});
  return {"vector-2x-x",
          "f(x) = (2x, x), K = cone conv{(1,0),(1,1)}: directional minimum wrt {+1}, not a local "
          "Pareto minimum",
          {run("L = {+1}", "certify", a, "certified_on_grid"),
           run("L = {-1, +1}", "certify", b, "refuted")}};
}

GalleryExample vector_pair_saddle() {
  auto a = base("vector-pair-saddle", 2);
  a.L = finite({v2(1, 0)});
  return {"vector-pair-saddle",
          "f(x,y) = (x^2 - y^2, x^2 - y^3), K = R^2_+: directional minimum wrt {(1,0)}",
          {run("L = {(1,0)}", "certify", a, "certified_on_grid")}};
}

GalleryExample cardioid_tangent() {
  ProblemFile a;
  a.dim = 2;
  a.set = cardioid_region();
  a.point = Vector::Zero(2);
  a.directions = {v2(-1, 0)};
  ProblemFile b = a;
  a.L = finite({v2(-1, 0)});
  b.L = full_circle();
  return {"cardioid-tangent",
          "cardioid region at the cusp: (-1,0) is not in T_B^L for L = {(-1,0)} but is in T_B",
          {run("T_B^L, L = {(-1,0)}, u = (-1,0)", "tangent", a, "nonmember"),
           run("T_B, u = (-1,0)", "tangent", b, "member")}};
}

GalleryExample set_curve_halfplane() {
  ProblemFile a;
  a.dim = 2;
  a.set = curve_halfplane_set();
  a.point = Vector::Zero(2);
  ProblemFile b = a;
  a.L = finite(curve_halfplane_arc());
  b.L = full_circle();
  return {"set-curve-halfplane",
          "M = H ∪ (γ ∩ -H), K = R^2_+: directional Pareto minimum wrt the arc (π, 1.25π), not a "
          "local Pareto minimum",
          {run("L = 64-point arc (π, 1.25π)", "certify-set", a, "certified_on_grid"),
           run("L = unit circle", "certify-set", b, "refuted")}};
}

}  // namespace

const std::vector<std::string>& gallery_names() {
  static const std::vector<std::string> names = {
      "saddle-x2-y2",       "saddle-x2-y3",     "sin-inv-x",
      "x3-sin-inv-x",       "arctan-sector",    "vector-2x-x",
      "vector-pair-saddle", "cardioid-tangent", "set-curve-halfplane"};
  return names;
}

GalleryExample gallery_example(const std::string& name) {
  if (name == "saddle-x2-y2") return saddle_x2_y2();
  if (name == "saddle-x2-y3") return saddle_x2_y3();
  if (name == "sin-inv-x") {
    return oscillating(name, "f(x) = sin(1/x), f(0) = 0: not a directional minimum wrt {+1} or {-1}");
  }
  if (name == "x3-sin-inv-x") {
    return oscillating(name,
                       "f(x) = x^3 sin(1/x), f(0) = 0: f'(0) = 0 but not a directional minimum");
  }
  if (name == "arctan-sector") return arctan_sector();
  if (name == "vector-2x-x") return vector_2x_x();
  if (name == "vector-pair-saddle") return vector_pair_saddle();
  if (name == "cardioid-tangent") return cardioid_tangent();
  if (name == "set-curve-halfplane") return set_curve_halfplane();
  throw Error(ErrorCode::kInvalidArgument, "unknown example '" + name + "'");
}

SetSpec cardioid_region() {
  return SetSpec::implicit(2, "x0^2 + x1^2 - 2*(sqrt(x0^2 + x1^2) + x0)", 0.0);
}

SetSpec curve_halfplane_set() {
  ParametricCurve c;
  c.x_expr = "2 + 2*cos(t)*(1 - sin(t))";
  c.y_expr = "sin(t)*(1 - cos(t))";
  c.t0 = 0.0;
  c.t1 = 2.0 * std::numbers::pi;
  c.segments = 4096;
  SetSpec H = SetSpec::polyhedron({v2(1, 1)}, {0.0});
  SetSpec negH = SetSpec::polyhedron({v2(-1, -1)}, {0.0});
  return SetSpec::set_union({H, SetSpec::set_intersection({SetSpec::curve_polygon(c), negH})});
}

std::vector<Vector> curve_halfplane_arc() {
  std::vector<Vector> out;
  for (int j = 0; j < 64; ++j) {
    const double t = std::numbers::pi + 0.25 * std::numbers::pi * (j + 0.5) / 64.0;
    out.push_back(v2(std::cos(t), std::sin(t)));
  }
  return out;
}

std::vector<Vector> arc_directions(double theta1, double theta2, int count) {
  std::vector<Vector> out;
  for (int j = 0; j < count; ++j) {
    const double t = count == 1 ? theta1 : theta1 + (theta2 - theta1) * j / (count - 1);
    out.push_back(v2(std::cos(t), std::sin(t)));
  }
  return out;
}

}  // namespace dirpareto::cli
