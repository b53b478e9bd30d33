#include "dirpareto/sets.hpp"

#include <algorithm>
#include <cmath>

namespace dirpareto {

void GridSpec::validate() const {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorCode::kInvalidArgument, "grid radius must be positive");
  }
  if (levels <= 0 || rays_per_level <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "grid levels and rays must be positive");
  }
}

SetSpec SetSpec::whole_space(std::size_t dim) {
  if (dim == 0) throw Error(ErrorCode::kInvalidArgument, "set dimension must be positive");
  SetSpec s;
  s.kind = Kind::kWholeSpace;
  s.dim = dim;
  return s;
}

SetSpec SetSpec::polyhedron(std::vector<Vector> rows, std::vector<double> offsets) {
  if (rows.empty()) throw Error(ErrorCode::kInvalidArgument, "polyhedron needs at least one row");
  if (rows.size() != offsets.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "polyhedron rows and offsets differ in count");
  }
  SetSpec s;
  s.kind = Kind::kPolyhedron;
  s.dim = static_cast<std::size_t>(rows.front().size());
  for (const auto& r : rows) {
    require_dim(s.dim, static_cast<std::size_t>(r.size()), "polyhedron row");
    if (!r.allFinite()) throw Error(ErrorCode::kInvalidArgument, "polyhedron rows must be finite");
  }
  s.rows = std::move(rows);
  s.offsets = std::move(offsets);
  return s;
}

SetSpec SetSpec::polygon(std::vector<Vector> vertices, double boundary_tol) {
  if (vertices.size() < 3) throw Error(ErrorCode::kInvalidArgument, "polygon needs 3 vertices");
  for (const auto& v : vertices) require_dim(2, static_cast<std::size_t>(v.size()), "polygon");
  SetSpec s;
  s.kind = Kind::kPolygon;
  s.dim = 2;
  s.vertices = std::move(vertices);
  s.boundary_tol = boundary_tol;
  return s;
}

SetSpec SetSpec::curve_polygon(const ParametricCurve& c, double boundary_tol) {
  if (c.segments < 3 || !(c.t1 > c.t0)) {
    throw Error(ErrorCode::kInvalidArgument, "parametric curve needs t1 > t0 and >= 3 segments");
  }
  const std::vector<std::string> names = {"t"};
  const cli::Expression ex = cli::parse_expression(c.x_expr, names);
  const cli::Expression ey = cli::parse_expression(c.y_expr, names);
  std::vector<Vector> vs;
  vs.reserve(static_cast<std::size_t>(c.segments));
  for (int k = 0; k < c.segments; ++k) {
    Vector t(1);
    t[0] = c.t0 + (c.t1 - c.t0) * static_cast<double>(k) / static_cast<double>(c.segments);
    Vector p(2);
    p << ex.evaluate(t), ey.evaluate(t);
    vs.push_back(p);
  }
  SetSpec s = polygon(std::move(vs), boundary_tol);
  s.curve = c;
  return s;
}

SetSpec SetSpec::implicit(std::size_t dim, const std::string& text, double tol) {
  if (dim == 0) throw Error(ErrorCode::kInvalidArgument, "set dimension must be positive");
  SetSpec s;
  s.kind = Kind::kImplicit;
  s.dim = dim;
  s.expr_text = text;
  s.expr = cli::parse_expression(text);
  if (s.expr.num_vars() > dim) {
    throw Error(ErrorCode::kDimensionMismatch, "implicit set references too many variables");
  }
  s.tol = tol;
  return s;
}

SetSpec SetSpec::ball(Vector center, double radius) {
  if (!(radius >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "ball radius must be >= 0");
  SetSpec s;
  s.kind = Kind::kBall;
  s.dim = static_cast<std::size_t>(center.size());
  s.center = std::move(center);
  s.radius = radius;
  return s;
}

namespace {

SetSpec combine(SetSpec::Kind kind, std::vector<SetSpec> parts) {
  if (parts.empty()) throw Error(ErrorCode::kInvalidArgument, "set combination needs parts");
  SetSpec s;
  s.kind = kind;
  s.dim = parts.front().dim;
  for (const auto& p : parts) require_dim(s.dim, p.dim, "set part");
  s.parts = std::move(parts);
  return s;
}

}  // namespace

SetSpec SetSpec::set_union(std::vector<SetSpec> parts) {
  return combine(Kind::kUnion, std::move(parts));
}

SetSpec SetSpec::set_intersection(std::vector<SetSpec> parts) {
  return combine(Kind::kIntersection, std::move(parts));
}

double segment_distance(const Vector& p, const Vector& a, const Vector& b) {
  const Vector ab = b - a;
  const double len2 = ab.squaredNorm();
  double t = len2 > 0.0 ? (p - a).dot(ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

bool point_in_polygon(const std::vector<Vector>& vs, const Vector& p) {
  bool inside = false;
  const std::size_t n = vs.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const double xi = vs[i][0], yi = vs[i][1];
    const double xj = vs[j][0], yj = vs[j][1];
    if ((yi > p[1]) != (yj > p[1])) {
      const double xcross = (xj - xi) * (p[1] - yi) / (yj - yi) + xi;
      if (p[0] < xcross) inside = !inside;
    }
  }
  return inside;
}

bool contains(const SetSpec& s, const Vector& x) {
  require_dim(s.dim, static_cast<std::size_t>(x.size()), "set membership");
  switch (s.kind) {
    case SetSpec::Kind::kWholeSpace:
      return true;
    case SetSpec::Kind::kPolyhedron:
      for (std::size_t i = 0; i < s.rows.size(); ++i) {
        if (s.rows[i].dot(x) < s.offsets[i] - kMembershipTol) return false;
      }
      return true;
    case SetSpec::Kind::kPolygon: {
      if (point_in_polygon(s.vertices, x)) return true;
      if (s.boundary_tol <= 0.0) return false;
      const std::size_t n = s.vertices.size();
      for (std::size_t i = 0; i < n; ++i) {
        if (segment_distance(x, s.vertices[i], s.vertices[(i + 1) % n]) <= s.boundary_tol) {
          return true;
        }
      }
      return false;
    }
    case SetSpec::Kind::kImplicit:
      return s.expr.evaluate(x) <= s.tol;
    case SetSpec::Kind::kBall:
      return (x - s.center).norm() <= s.radius + kMembershipTol;
    case SetSpec::Kind::kUnion:
      for (const auto& p : s.parts) {
        if (contains(p, x)) return true;
      }
      return false;
    case SetSpec::Kind::kIntersection:
      for (const auto& p : s.parts) {
        if (!contains(p, x)) return false;
      }
      return true;
  }
  return false;
}

}  // namespace dirpareto
