#include "dirpareto/tangent.hpp"

#include <algorithm>
#include <cmath>

#include "dirpareto/lp.hpp"

namespace dirpareto::tangent {

PolyhedralSet::PolyhedralSet(std::vector<Vector> rows, std::vector<double> offsets)
    : rows_(std::move(rows)), offsets_(std::move(offsets)) {
  if (rows_.empty()) throw Error(ErrorCode::kInvalidArgument, "polyhedron needs at least one row");
  if (rows_.size() != offsets_.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "polyhedron rows and offsets differ in count");
  }
  dim_ = static_cast<std::size_t>(rows_.front().size());
  multipliers::LPProblem lp(dim_);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    require_dim(dim_, static_cast<std::size_t>(rows_[i].size()), "polyhedron row");
    lp.add_geq(rows_[i], offsets_[i]);
  }
  auto w = multipliers::lp_feasible(lp);
  if (!w) throw Error(ErrorCode::kInvalidArgument, "polyhedron is empty");
  witness_ = *w;
}

bool PolyhedralSet::contains(const Vector& x, double tol) const {
  require_dim(dim_, static_cast<std::size_t>(x.size()), "polyhedron membership");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].dot(x) < offsets_[i] - tol) return false;
  }
  return true;
}

std::vector<std::size_t> PolyhedralSet::active(const Vector& x, double tol) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (std::abs(rows_[i].dot(x) - offsets_[i]) <= tol) out.push_back(i);
  }
  return out;
}

SetSpec PolyhedralSet::to_set() const { return SetSpec::polyhedron(rows_, offsets_); }

bool TangentCone::contains(const Vector& u, double tol) const {
  if (rays) return geometry::contains(geometry::RayCone(cone.dim(), *rays), u, tol);
  return geometry::contains(cone, u, false, tol);
}

geometry::HalfspaceCone tangent_polyhedral(const PolyhedralSet& A, const Vector& xbar) {
  if (!A.contains(xbar)) throw Error(ErrorCode::kInvalidArgument, "x̄ is not in the polyhedron");
  std::vector<Vector> rows;
  for (std::size_t i : A.active(xbar)) {
    if (A.rows()[i].norm() > 0.0) rows.push_back(A.rows()[i]);
  }
  return geometry::HalfspaceCone(A.dim(), std::move(rows));
}

TangentCone tangent_polyhedral(const PolyhedralSet& A, const Vector& xbar,
                               const geometry::DirectionSet& L) {
  require_dim(A.dim(), L.dim(), "tangent directions");
  geometry::HalfspaceCone active = tangent_polyhedral(A, xbar);
  if (!L.is_finite()) return {active.intersect(L.cone()), std::nullopt};
  std::vector<Vector> rays;
  for (const auto& l : L.directions()) {
    if (geometry::contains(active, l)) rays.push_back(l);
  }
  return {std::move(active), std::move(rays)};
}

double TSchedule::t(int k) const { return std::ldexp(radius, -k); }

double TSchedule::eps(int k, double unorm) const { return unorm * std::exp2(-0.5 * k); }

const char* to_string(TangentStatus s) {
  switch (s) {
    case TangentStatus::kMember: return "member";
    case TangentStatus::kNonmember: return "nonmember";
    case TangentStatus::kInconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::vector<Vector> perturbation_lattice(const geometry::DirectionSet& L, const Vector& u,
                                         double eps, int limit) {
  std::vector<Vector> out;
  const auto n = static_cast<std::size_t>(u.size());
  if (L.is_finite()) {
    const auto& dirs = L.directions();
    const int per_ray = std::max(1, limit / static_cast<int>(dirs.size()));
    for (const auto& l : dirs) {
      const double p = l.dot(u);
      const double q2 = std::max(0.0, u.squaredNorm() - p * p);
      if (q2 > eps * eps) continue;
      const double w = std::sqrt(eps * eps - q2);
      const double lo = std::max(0.0, p - w);
      const double hi = p + w;
      if (hi < 0.0) continue;
      out.push_back(std::clamp(p, lo, hi) * l);
      for (int j = 0; j + 1 < per_ray; ++j) {
        const double s = per_ray > 2 ? lo + (hi - lo) * j / (per_ray - 2) : 0.5 * (lo + hi);
        out.push_back(s * l);
      }
    }
    return out;
  }
  const std::size_t nd = n == 1 ? 2 : (n == 2 ? 40 : 100);
  const int nr = std::max(1, (limit - 1) / static_cast<int>(nd));
  const auto dirs = geometry::sphere_lattice(n, nd);
  const auto& cone = L.cone();
  if (geometry::contains(cone, u)) out.push_back(u);
  for (int j = nr; j >= 1; --j) {
    const double rho = eps * static_cast<double>(j) / nr;
    for (const auto& w : dirs) {
      Vector v = u + rho * w;
      if (geometry::contains(cone, v)) out.push_back(std::move(v));
    }
  }
  return out;
}

TangentVerdict tangent_membership_sampled(const SetSpec& A, const Vector& xbar,
                                          const geometry::DirectionSet& L, const Vector& u,
                                          const TSchedule& schedule) {
  require_dim(A.dim, static_cast<std::size_t>(xbar.size()), "tangent base point");
  require_dim(L.dim(), static_cast<std::size_t>(u.size()), "tangent direction");
  if (!(schedule.radius > 0.0) || schedule.levels <= 0 || schedule.confirm_levels <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "invalid tangent schedule");
  }
  if (!contains(A, xbar)) throw Error(ErrorCode::kInvalidArgument, "x̄ is not in the set");

  TangentVerdict verdict;
  const double unorm = u.norm();
  if (unorm == 0.0) {
    verdict.status = TangentStatus::kMember;
    verdict.reason = "zero direction";
    return verdict;
  }
  if (!geometry::contains(geometry::conic_hull(L), u)) {
    verdict.status = TangentStatus::kNonmember;
    verdict.reason = "direction outside cone L";
    return verdict;
  }

  bool all_hit = true;
  int miss_run = 0;
  int best_run = 0;
  for (int k = 0; k < schedule.levels; ++k) {
    LevelEvidence ev;
    ev.k = k;
    ev.t_k = schedule.t(k);
    ev.eps_k = schedule.eps(k, unorm);
    const auto perturb = perturbation_lattice(L, u, ev.eps_k, schedule.max_perturbations);
    ev.perturbations = static_cast<int>(perturb.size());

    // Steps inside (t_{k+1}, t_k] for a hit.
    for (int j = 0; j < 4 && !ev.hit; ++j) {
      const double t = ev.t_k * std::exp2(-0.25 * j);
      for (const auto& v : perturb) {
        if (contains(A, Vector(xbar + t * v))) {
          ev.hit = true;
          ev.t = t;
          ev.u_k = v;
          break;
        }
      }
    }
    // A miss must hold for every sampled t <= t_k.
    bool miss = !ev.hit;
    if (miss) {
      const int deepest = 2 * (schedule.levels - k) + 8;
      for (int j = 4; j <= deepest && miss; ++j) {
        const double t = ev.t_k * std::exp2(-0.25 * j);
        for (const auto& v : perturb) {
          if (contains(A, Vector(xbar + t * v))) {
            miss = false;
            break;
          }
        }
      }
    }
    all_hit = all_hit && ev.hit;
    miss_run = miss ? miss_run + 1 : 0;
    best_run = std::max(best_run, miss_run);
    verdict.evidence.push_back(std::move(ev));
  }

  if (all_hit) {
    verdict.status = TangentStatus::kMember;
    verdict.reason = "feasible perturbation found at every level";
  } else if (best_run >= schedule.confirm_levels) {
    verdict.status = TangentStatus::kNonmember;
    verdict.reason = "sampled neighbourhood empty at " + std::to_string(best_run) +
                     " consecutive levels";
  } else {
    verdict.status = TangentStatus::kInconclusive;
    verdict.reason = "some levels missed without a confirmed margin";
  }
  return verdict;
}

std::optional<Vector> derivative_image(const SmoothMap& f, const Vector& xbar, const Vector& u,
                                       const geometry::DirectionSet* L) {
  require_dim(f.input_dim(), static_cast<std::size_t>(u.size()), "derivative direction");
  if (L && !geometry::contains(geometry::conic_hull(*L), u)) return std::nullopt;
  return f.jacobian(xbar) * u;
}

}  // namespace dirpareto::tangent
