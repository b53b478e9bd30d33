#include "dirpareto/mintime.hpp"

#include <algorithm>
#include <cmath>

#include "dirpareto/lp.hpp"

namespace dirpareto::mintime {

std::size_t Target::dim() const {
  if (const auto* p = std::get_if<Point>(&variant)) return static_cast<std::size_t>(p->x.size());
  if (const auto* f = std::get_if<FinitePoints>(&variant)) {
    return f->points.empty() ? 0 : static_cast<std::size_t>(f->points.front().size());
  }
  const auto& h = std::get<Polyhedron>(variant);
  return h.rows.empty() ? 0 : static_cast<std::size_t>(h.rows.front().size());
}

void Target::validate() const {
  if (const auto* f = std::get_if<FinitePoints>(&variant)) {
    if (f->points.empty()) throw Error(ErrorCode::kInvalidArgument, "empty target");
    for (const auto& p : f->points) require_dim(dim(), static_cast<std::size_t>(p.size()), "target");
  } else if (const auto* h = std::get_if<Polyhedron>(&variant)) {
    if (h->rows.empty()) throw Error(ErrorCode::kInvalidArgument, "empty target polyhedron");
    if (h->rows.size() != h->offsets.size()) {
      throw Error(ErrorCode::kDimensionMismatch, "target rows and offsets differ in count");
    }
    for (const auto& r : h->rows) require_dim(dim(), static_cast<std::size_t>(r.size()), "target");
  }
}

double norm_of(const Vector& v, Norm norm) {
  return norm == Norm::kL2 ? v.norm() : v.lpNorm<Eigen::Infinity>();
}

namespace {

bool in_cone(const geometry::DirectionSet& L, const Vector& d) {
  return geometry::contains(geometry::conic_hull(L), d);
}

// Smallest t >= 0 with x + t l in the polyhedron, or +inf.
double ray_entry(const Polyhedron& h, const Vector& x, const Vector& l) {
  double lo = 0.0;
  double hi = kInfinity;
  for (std::size_t i = 0; i < h.rows.size(); ++i) {
    const double s = h.rows[i].dot(l);
    const double r = h.offsets[i] - h.rows[i].dot(x);
    const double scale = 1.0 + std::abs(r);
    if (std::abs(s) <= 1e-14) {
      if (r > kMembershipTol * scale) return kInfinity;
    } else if (s > 0.0) {
      lo = std::max(lo, r / s);
    } else {
      hi = std::min(hi, r / s);
    }
  }
  return lo <= hi + 1e-12 * (1.0 + std::abs(lo)) ? lo : kInfinity;
}

MinTimeResult over_rays(const std::vector<Vector>& rays, const Polyhedron& h, const Vector& x,
                        Norm norm) {
  MinTimeResult best;
  for (const auto& l : rays) {
    const double t = ray_entry(h, x, l);
    if (!std::isfinite(t)) continue;
    const Vector d = t * l;
    const double value = norm_of(d, norm);
    if (value < best.value) {
      best.value = value;
      best.displacement = d;
    }
  }
  return best;
}

MinTimeResult section_linf(const geometry::HalfspaceCone& cone, const Polyhedron& h,
                           const Vector& x) {
  const auto n = x.size();
  // Variables: d (n, free), t.
  multipliers::LPProblem lp(static_cast<std::size_t>(n + 1));
  auto row = [&](const Vector& dpart, double tcoef) {
    Vector r(n + 1);
    r.head(n) = dpart;
    r[n] = tcoef;
    return r;
  };
  for (const auto& c : cone.rows()) lp.add_geq(row(c, 0.0), 0.0);
  for (Eigen::Index k = 0; k < n; ++k) {
    lp.add_geq(row(-Vector::Unit(n, k), 1.0), 0.0);
    lp.add_geq(row(Vector::Unit(n, k), 1.0), 0.0);
  }
  for (std::size_t i = 0; i < h.rows.size(); ++i) {
    lp.add_geq(row(h.rows[i], 0.0), h.offsets[i] - h.rows[i].dot(x));
  }
  lp.minimize = Vector::Unit(n + 1, n);
  const auto sol = multipliers::solve_lp(lp);
  MinTimeResult out;
  if (sol.status != multipliers::LPStatus::kFeasible) return out;
  out.displacement = sol.point.head(n);
  out.value = std::max(0.0, sol.objective);
  return out;
}

}  // namespace

MinTimeResult minimal_time(const geometry::DirectionSet& L, const Vector& x, const Target& target,
                           Norm norm) {
  target.validate();
  require_dim(L.dim(), static_cast<std::size_t>(x.size()), "minimal-time start point");
  require_dim(L.dim(), target.dim(), "minimal-time target");

  auto points = [&](const std::vector<Vector>& us) {
    MinTimeResult best;
    for (const auto& u : us) {
      const Vector d = u - x;
      if (!in_cone(L, d)) continue;
      const double value = norm_of(d, norm);
      if (value < best.value) {
        best.value = value;
        best.displacement = d;
      }
    }
    return best;
  };

  if (const auto* p = std::get_if<Point>(&target.variant)) return points({p->x});
  if (const auto* f = std::get_if<FinitePoints>(&target.variant)) return points(f->points);

  const auto& h = std::get<Polyhedron>(target.variant);
  if (L.is_finite()) return over_rays(L.directions(), h, x, norm);
  if (norm == Norm::kLinf) return section_linf(L.cone(), h, x);
  const std::size_t count = L.dim() == 2 ? 4096 : 8192;
  MinTimeResult r = over_rays(geometry::ray_lattice(L, count), h, x, norm);
  r.approximate = true;
  return r;
}

std::vector<Vector> grid_points(const Vector& xbar, const geometry::DirectionSet& L,
                                const GridSpec& grid) {
  grid.validate();
  require_dim(L.dim(), static_cast<std::size_t>(xbar.size()), "grid center");
  const auto rays = geometry::ray_lattice(L, static_cast<std::size_t>(grid.rays_per_level), grid.seed);
  std::vector<Vector> out;
  out.reserve(rays.size() * static_cast<std::size_t>(grid.levels));
  for (int k = 0; k < grid.levels; ++k) {
    const double t = std::ldexp(grid.radius, -k);
    for (const auto& l : rays) out.push_back(xbar + t * l);
  }
  return out;
}

namespace {

void consider(RatioEstimate& est, double num, double den, const Vector& x, const Vector& fx) {
  if (!(den > 0.0) || !std::isfinite(den)) return;
  ++est.samples_used;
  const double ratio = std::isfinite(num) ? num / den : kInfinity;
  if (!std::isfinite(ratio)) est.infinite = true;
  if (est.samples_used == 1 || ratio > est.supremum_ratio) {
    est.supremum_ratio = ratio;
    est.witness_x = x;
    est.witness_value = fx;
  }
}

void finish(RatioEstimate& est) {
  if (est.samples_used == 0) {
    est.no_admissible_point = true;
    est.supremum_ratio = 0.0;
  }
}

}  // namespace

RatioEstimate calmness_ratio(const SmoothMap& f, const Vector& xbar,
                             const geometry::DirectionSet& L, const geometry::DirectionSet& M,
                             const GridSpec& grid, Norm norm) {
  require_dim(f.input_dim(), L.dim(), "calmness input directions");
  require_dim(f.output_dim(), M.dim(), "calmness output directions");
  const Vector fbar = f.value(xbar);
  RatioEstimate est;
  for (const auto& x : grid_points(xbar, L, grid)) {
    const Vector fx = f.value(x);
    if (!fx.allFinite()) throw Error(ErrorCode::kNumerical, "non-finite objective value");
    const double den = minimal_time(L, xbar, Target{Point{x}}, norm).value;
    const double num = minimal_time(M, fx, Target{Point{fbar}}, norm).value;
    consider(est, num, den, x, fx);
  }
  finish(est);
  return est;
}

RatioEstimate subregularity_ratio(const SmoothMap& f, const Vector& ybar,
                                  const std::vector<Vector>& preimage,
                                  const geometry::DirectionSet& L,
                                  const geometry::DirectionSet& M,
                                  const std::vector<Vector>& samples, Norm norm) {
  require_dim(f.input_dim(), L.dim(), "subregularity input directions");
  require_dim(f.output_dim(), M.dim(), "subregularity output directions");
  const Target pre{FinitePoints{preimage}};
  RatioEstimate est;
  for (const auto& x : samples) {
    const Vector fx = f.value(x);
    const double num = minimal_time(L, x, pre, norm).value;
    const double den = minimal_time(M, ybar, Target{Point{fx}}, norm).value;
    consider(est, num, den, x, fx);
  }
  finish(est);
  return est;
}

}  // namespace dirpareto::mintime
