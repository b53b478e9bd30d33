#ifndef DIRPARETO_SETS_HPP
#define DIRPARETO_SETS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dirpareto/core.hpp"
#include "dirpareto/expression.hpp"

namespace dirpareto {

struct GridSpec {
  double radius = 0.5;
  int levels = 21;
  int rays_per_level = 64;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Closed plane curve (x(t), y(t)), t in [t0, t1], kept so a polygon can be
/// rebuilt and serialized.
struct ParametricCurve {
  std::string x_expr;
  std::string y_expr;
  double t0 = 0.0;
  double t1 = 0.0;
  int segments = 4096;
};

/// Membership oracle for a closed set in R^dim.
struct SetSpec {
  enum class Kind { kWholeSpace, kPolyhedron, kPolygon, kImplicit, kBall, kUnion, kIntersection };

  Kind kind = Kind::kWholeSpace;
  std::size_t dim = 0;

  std::vector<Vector> rows;     // polyhedron: rows[i] . x >= offsets[i]
  std::vector<double> offsets;

  std::vector<Vector> vertices;  // polygon, 2-D, even-odd rule
  double boundary_tol = 0.0;     // polygon: points this close to an edge count as inside
  std::optional<ParametricCurve> curve;

  std::string expr_text;  // implicit: expr(x) <= tol
  cli::Expression expr;
  double tol = 0.0;

  Vector center;  // ball (Euclidean)
  double radius = 0.0;

  std::vector<SetSpec> parts;

  static SetSpec whole_space(std::size_t dim);
  static SetSpec polyhedron(std::vector<Vector> rows, std::vector<double> offsets);
  static SetSpec polygon(std::vector<Vector> vertices, double boundary_tol = 0.0);
  static SetSpec curve_polygon(const ParametricCurve& c, double boundary_tol = 0.0);
  static SetSpec implicit(std::size_t dim, const std::string& text, double tol = 0.0);
  static SetSpec ball(Vector center, double radius);
  static SetSpec set_union(std::vector<SetSpec> parts);
  static SetSpec set_intersection(std::vector<SetSpec> parts);
};

/// Throws Error(kDomain) when an implicit expression is undefined at x.
bool contains(const SetSpec& s, const Vector& x);

/// Euclidean distance from p to the segment [a, b] in the plane.
double segment_distance(const Vector& p, const Vector& a, const Vector& b);

/// Even-odd point-in-polygon without any boundary tolerance.
bool point_in_polygon(const std::vector<Vector>& vertices, const Vector& p);

}  // namespace dirpareto

#endif  // DIRPARETO_SETS_HPP
