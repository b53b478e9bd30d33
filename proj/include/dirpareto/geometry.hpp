#ifndef DIRPARETO_GEOMETRY_HPP
#define DIRPARETO_GEOMETRY_HPP

#include <cstdint>
#include <variant>
#include <vector>

#include "dirpareto/core.hpp"

namespace dirpareto::geometry {

/// Polyhedral cone {y : a_i . y >= 0 for every row a_i}.
///
/// An empty row list denotes the whole space; every other cone needs nonzero
/// rows of the declared dimension.
class HalfspaceCone {
 public:
  HalfspaceCone(std::size_t dim, std::vector<Vector> rows);

  static HalfspaceCone whole_space(std::size_t dim);
  static HalfspaceCone orthant(std::size_t dim);

  std::size_t dim() const { return dim_; }
  const std::vector<Vector>& rows() const { return rows_; }
  bool is_whole_space() const { return rows_.empty(); }

  HalfspaceCone intersect(const HalfspaceCone& other) const;

 private:
  std::size_t dim_;
  std::vector<Vector> rows_;
};

/// Convex cone generated by finitely many vectors; no generators gives {0}.
class GeneratorCone {
 public:
  GeneratorCone(std::size_t dim, std::vector<Vector> generators);

  std::size_t dim() const { return dim_; }
  const std::vector<Vector>& generators() const { return generators_; }

 private:
  std::size_t dim_;
  std::vector<Vector> generators_;
};

struct FiniteDirections {
  std::vector<Vector> directions;
};

struct ConeSection {
  HalfspaceCone cone;
};

/// Closed set of unit directions L: a finite list or the unit-sphere section
/// of a polyhedral cone.
class DirectionSet {
 public:
  static DirectionSet finite(std::size_t dim, std::vector<Vector> directions);
  static DirectionSet section(HalfspaceCone cone);
  static DirectionSet full_sphere(std::size_t dim);

  std::size_t dim() const { return dim_; }
  bool is_finite() const { return std::holds_alternative<FiniteDirections>(variant_); }
  const std::vector<Vector>& directions() const;  // finite only
  const HalfspaceCone& cone() const;              // section only
  const std::variant<FiniteDirections, ConeSection>& variant() const { return variant_; }

 private:
  DirectionSet(std::size_t dim, std::variant<FiniteDirections, ConeSection> v)
      : dim_(dim), variant_(std::move(v)) {}

  std::size_t dim_;
  std::variant<FiniteDirections, ConeSection> variant_;
};

/// cone L = {t l : t >= 0, l in L} for a finite L. This is a union of rays,
/// which is not convex in general.
class RayCone {
 public:
  RayCone(std::size_t dim, std::vector<Vector> rays) : dim_(dim), rays_(std::move(rays)) {}
  std::size_t dim() const { return dim_; }
  const std::vector<Vector>& rays() const { return rays_; }

 private:
  std::size_t dim_;
  std::vector<Vector> rays_;
};

using ConicHull = std::variant<RayCone, HalfspaceCone>;

bool contains(const HalfspaceCone& cone, const Vector& v, bool strict = false,
              double tol = kMembershipTol);
/// LP membership v = sum c_j g_j with c >= 0. Strict queries are rejected.
bool contains(const GeneratorCone& cone, const Vector& v, bool strict = false,
              double tol = kMembershipTol);
bool contains(const RayCone& cone, const Vector& v, double tol = kMembershipTol);
bool contains(const ConicHull& cone, const Vector& v, double tol = kMembershipTol);

/// {x* : x*.g <= 0 for every generator g}, stored as rows -g.
HalfspaceCone negative_polar(const GeneratorCone& c);

struct DualGenerators {
  GeneratorCone cone;
  bool full_dimensional = false;  // int c found on the sampling lattice
};

/// Generators of the positive dual c+ of an H-rep cone (its rows).
DualGenerators dual_generators(const HalfspaceCone& c);

ConicHull conic_hull(const DirectionSet& L);

/// Convex conic hull of a finite direction set.
GeneratorCone convex_generators(const DirectionSet& L);

DirectionSet normalize_directions(std::size_t dim, const std::vector<Vector>& vs);

/// True when the cone contains a nonzero point.
bool is_nontrivial(const HalfspaceCone& c);

/// Deterministic quasi-uniform unit vectors: equispaced angles in 2-D, a
/// Fibonacci lattice in 3-D, seeded Gaussian directions above that.
std::vector<Vector> sphere_lattice(std::size_t dim, std::size_t count, std::uint64_t seed = 0);

/// `count` lattice directions inside the cone of L (the list itself when L is
/// finite).
std::vector<Vector> ray_lattice(const DirectionSet& L, std::size_t count, std::uint64_t seed = 0);

}  // namespace dirpareto::geometry

#endif  // DIRPARETO_GEOMETRY_HPP
