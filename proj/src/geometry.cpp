#include "dirpareto/geometry.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "dirpareto/lp.hpp"

namespace dirpareto::geometry {

HalfspaceCone::HalfspaceCone(std::size_t dim, std::vector<Vector> rows)
    : dim_(dim), rows_(std::move(rows)) {
  if (dim_ == 0) throw Error(ErrorCode::kInvalidArgument, "cone dimension must be positive");
  for (const auto& r : rows_) {
    require_dim(dim_, static_cast<std::size_t>(r.size()), "cone row");
    if (!r.allFinite()) throw Error(ErrorCode::kInvalidArgument, "cone row must be finite");
    if (r.norm() == 0.0) throw Error(ErrorCode::kInvalidArgument, "cone row must be nonzero");
  }
}

HalfspaceCone HalfspaceCone::whole_space(std::size_t dim) { return HalfspaceCone(dim, {}); }

HalfspaceCone HalfspaceCone::orthant(std::size_t dim) {
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < dim; ++i) {
    rows.push_back(Vector::Unit(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(i)));
  }
  return HalfspaceCone(dim, std::move(rows));
}

HalfspaceCone HalfspaceCone::intersect(const HalfspaceCone& other) const {
  require_dim(dim_, other.dim_, "cone intersection");
  std::vector<Vector> rows = rows_;
  rows.insert(rows.end(), other.rows_.begin(), other.rows_.end());
  return HalfspaceCone(dim_, std::move(rows));
}

GeneratorCone::GeneratorCone(std::size_t dim, std::vector<Vector> generators)
    : dim_(dim), generators_(std::move(generators)) {
  if (dim_ == 0) throw Error(ErrorCode::kInvalidArgument, "cone dimension must be positive");
  for (const auto& g : generators_) {
    require_dim(dim_, static_cast<std::size_t>(g.size()), "cone generator");
    if (!g.allFinite() || g.norm() == 0.0) {
      throw Error(ErrorCode::kInvalidArgument, "cone generators must be finite and nonzero");
    }
  }
}

DirectionSet DirectionSet::finite(std::size_t dim, std::vector<Vector> directions) {
  if (directions.empty()) throw Error(ErrorCode::kInvalidArgument, "direction set is empty");
  for (const auto& d : directions) {
    require_dim(dim, static_cast<std::size_t>(d.size()), "direction");
    if (!d.allFinite() || std::abs(d.norm() - 1.0) > 1e-12) {
      throw Error(ErrorCode::kInvalidArgument, "directions must be unit vectors");
    }
  }
  return DirectionSet(dim, FiniteDirections{std::move(directions)});
}

DirectionSet DirectionSet::section(HalfspaceCone cone) {
  if (!is_nontrivial(cone)) {
    throw Error(ErrorCode::kInvalidArgument, "cone section of the trivial cone {0}");
  }
  const std::size_t dim = cone.dim();
  return DirectionSet(dim, ConeSection{std::move(cone)});
}

DirectionSet DirectionSet::full_sphere(std::size_t dim) {
  return section(HalfspaceCone::whole_space(dim));
}

const std::vector<Vector>& DirectionSet::directions() const {
  if (!is_finite()) throw Error(ErrorCode::kInvalidArgument, "direction set is a cone section");
  return std::get<FiniteDirections>(variant_).directions;
}

const HalfspaceCone& DirectionSet::cone() const {
  if (is_finite()) throw Error(ErrorCode::kInvalidArgument, "direction set is finite");
  return std::get<ConeSection>(variant_).cone;
}

bool contains(const HalfspaceCone& cone, const Vector& v, bool strict, double tol) {
  require_dim(cone.dim(), static_cast<std::size_t>(v.size()), "cone membership");
  for (const auto& r : cone.rows()) {
    const double s = r.dot(v);
    if (strict ? !(s > tol) : s < -tol) return false;
  }
  return true;
}

bool contains(const GeneratorCone& cone, const Vector& v, bool strict, double tol) {
  if (strict) {
    throw Error(ErrorCode::kInvalidArgument,
                "strict-interior membership is defined only for H-rep cones");
  }
  require_dim(cone.dim(), static_cast<std::size_t>(v.size()), "cone membership");
  const auto& gens = cone.generators();
  if (gens.empty()) return v.norm() <= tol;
  multipliers::LPProblem lp(gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j) lp.set_nonnegative(j);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    Vector row(static_cast<Eigen::Index>(gens.size()));
    for (std::size_t j = 0; j < gens.size(); ++j) row[static_cast<Eigen::Index>(j)] = gens[j][i];
    lp.add_eq(row, v[i]);
  }
  return multipliers::lp_feasible(lp).has_value();
}

bool contains(const RayCone& cone, const Vector& v, double tol) {
  require_dim(cone.dim(), static_cast<std::size_t>(v.size()), "cone membership");
  const double nv = v.norm();
  if (nv <= tol) return true;
  for (const auto& ray : cone.rays()) {
    const double t = v.dot(ray);
    if (t < -tol) continue;
    if ((v - t * ray).norm() <= tol * (1.0 + nv)) return true;
  }
  return false;
}

bool contains(const ConicHull& cone, const Vector& v, double tol) {
  if (const auto* rays = std::get_if<RayCone>(&cone)) return contains(*rays, v, tol);
  return contains(std::get<HalfspaceCone>(cone), v, false, tol);
}

HalfspaceCone negative_polar(const GeneratorCone& c) {
  std::vector<Vector> rows;
  rows.reserve(c.generators().size());
  for (const auto& g : c.generators()) rows.push_back(-g);
  return HalfspaceCone(c.dim(), std::move(rows));
}

DualGenerators dual_generators(const HalfspaceCone& c) {
  bool interior = c.is_whole_space();
  if (!interior) {
    for (const auto& v : sphere_lattice(c.dim(), 512)) {
      if (contains(c, v, true)) {
        interior = true;
        break;
      }
    }
  }
  return {GeneratorCone(c.dim(), c.rows()), interior};
}

ConicHull conic_hull(const DirectionSet& L) {
  if (L.is_finite()) return RayCone(L.dim(), L.directions());
  return L.cone();
}

GeneratorCone convex_generators(const DirectionSet& L) {
  return GeneratorCone(L.dim(), L.directions());
}

DirectionSet normalize_directions(std::size_t dim, const std::vector<Vector>& vs) {
  std::vector<Vector> out;
  for (const auto& v : vs) {
    require_dim(dim, static_cast<std::size_t>(v.size()), "direction");
    const double n = v.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
      throw Error(ErrorCode::kInvalidArgument, "cannot normalize a zero or non-finite vector");
    }
    Vector u = v / n;
    bool duplicate = false;
    for (const auto& w : out) {
      if ((w - u).cwiseAbs().maxCoeff() <= 1e-12) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) out.push_back(std::move(u));
  }
  return DirectionSet::finite(dim, std::move(out));
}

bool is_nontrivial(const HalfspaceCone& c) {
  if (c.is_whole_space()) return true;
  const auto n = static_cast<Eigen::Index>(c.dim());
  for (Eigen::Index i = 0; i < n; ++i) {
    for (double sign : {1.0, -1.0}) {
      multipliers::LPProblem lp(c.dim());
      for (const auto& r : c.rows()) lp.add_geq(r, 0.0);
      lp.add_eq(sign * Vector::Unit(n, i), 1.0);
      if (multipliers::lp_feasible(lp)) return true;
    }
  }
  return false;
}

std::vector<Vector> sphere_lattice(std::size_t dim, std::size_t count, std::uint64_t seed) {
  std::vector<Vector> out;
  const auto n = static_cast<Eigen::Index>(dim);
  if (dim == 1) {
    out.push_back(Vector::Constant(1, 1.0));
    out.push_back(Vector::Constant(1, -1.0));
    return out;
  }
  out.reserve(count);
  if (dim == 2) {
    for (std::size_t k = 0; k < count; ++k) {
      const double a = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
      Vector v(2);
      v << std::cos(a), std::sin(a);
      out.push_back(v);
    }
  } else if (dim == 3) {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (std::size_t k = 0; k < count; ++k) {
      const double z = 1.0 - (2.0 * static_cast<double>(k) + 1.0) / static_cast<double>(count);
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = golden * static_cast<double>(k);
      Vector v(3);
      v << r * std::cos(phi), r * std::sin(phi), z;
      out.push_back(v);
    }
  } else {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    while (out.size() < count) {
      Vector v(n);
      for (Eigen::Index i = 0; i < n; ++i) v[i] = gauss(rng);
      const double nv = v.norm();
      if (nv > 1e-12) out.push_back(v / nv);
    }
  }
  return out;
}

std::vector<Vector> ray_lattice(const DirectionSet& L, std::size_t count, std::uint64_t seed) {
  if (L.is_finite()) return L.directions();
  if (count == 0) throw Error(ErrorCode::kInvalidArgument, "ray count must be positive");
  const HalfspaceCone& cone = L.cone();
  std::vector<Vector> inside;
  for (std::size_t m = count; m <= count * 4096; m *= 2) {
    inside.clear();
    for (auto& v : sphere_lattice(L.dim(), m, seed)) {
      if (contains(cone, v)) inside.push_back(std::move(v));
    }
    if (inside.size() >= count || L.dim() == 1) break;
  }
  if (inside.empty()) {
    throw Error(ErrorCode::kNumerical, "no lattice direction falls inside the cone section");
  }
  if (inside.size() <= count) return inside;
  std::vector<Vector> picked;
  picked.reserve(count);
  for (std::size_t i = 0; i < count; ++i) picked.push_back(inside[i * inside.size() / count]);
  return picked;
}

}  // namespace dirpareto::geometry
