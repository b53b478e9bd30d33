#include "dirpareto/certify.hpp"

#include <cmath>

#include "dirpareto/lp.hpp"
#include "dirpareto/mintime.hpp"

namespace dirpareto::certify {

namespace {

double scalar_value(const SmoothMap& g, const Vector& x) {
  if (g.output_dim() != 1) throw Error(ErrorCode::kDimensionMismatch, "constraint must be scalar");
  return g.value(x)[0];
}

}  // namespace

void Problem::validate() const {
  if (!f) throw Error(ErrorCode::kInvalidArgument, "problem has no objective");
  require_dim(f->output_dim(), K.dim(), "ordering cone K");
  require_dim(f->input_dim(), L.dim(), "direction set L");
  require_dim(f->input_dim(), static_cast<std::size_t>(xbar.size()), "point x̄");
  if (K.is_whole_space() || !geometry::is_nontrivial(K)) {
    throw Error(ErrorCode::kInvalidArgument, "K must be a proper cone");
  }
  grid.validate();
  if (const auto* s = std::get_if<SetSpec>(&constraint)) {
    require_dim(f->input_dim(), s->dim, "constraint set");
  } else if (const auto* c = std::get_if<IneqEq>(&constraint)) {
    for (const auto& g : c->mu) require_dim(f->input_dim(), g->input_dim(), "inequality constraint");
    for (const auto& g : c->nu) require_dim(f->input_dim(), g->input_dim(), "equality constraint");
  }
  if (!feasible(xbar)) throw Error(ErrorCode::kInvalidArgument, "x̄ is not feasible");
}

bool Problem::feasible(const Vector& x) const {
  if (const auto* s = std::get_if<SetSpec>(&constraint)) return contains(*s, x);
  if (const auto* c = std::get_if<IneqEq>(&constraint)) {
    for (const auto& g : c->mu) {
      if (scalar_value(*g, x) > kConstraintTol) return false;
    }
    for (const auto& g : c->nu) {
      if (std::abs(scalar_value(*g, x)) > kConstraintTol) return false;
    }
  }
  return true;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kCertifiedOnGrid: return "certified_on_grid";
    case Verdict::kRefuted: return "refuted";
  }
  return "refuted";
}

const char* to_string(SufficiencyStatus s) {
  switch (s) {
    case SufficiencyStatus::kCertified: return "certified";
    case SufficiencyStatus::kViolated: return "condition_violated";
    case SufficiencyStatus::kNotRefuted: return "condition_not_refuted";
  }
  return "condition_not_refuted";
}

bool violates(const geometry::HalfspaceCone& K, const Vector& d, bool weak) {
  const Vector neg = -d;
  if (weak) return geometry::contains(K, neg, true);
  return geometry::contains(K, neg) && !geometry::contains(K, d);
}

namespace {

template <typename Diff, typename Feasible>
CertReport run_grid(const Vector& xbar, const geometry::DirectionSet& L, const GridSpec& grid,
                    const geometry::HalfspaceCone& K, bool weak, Diff diff, Feasible feasible) {
  grid.validate();
  const auto rays = geometry::ray_lattice(L, static_cast<std::size_t>(grid.rays_per_level),
                                          grid.seed);
  CertReport rep;
  rep.weak = weak;
  rep.grid = grid;
  for (int k = 0; k < grid.levels; ++k) {
    const double t = std::ldexp(grid.radius, -k);
    for (std::size_t j = 0; j < rays.size(); ++j) {
      SamplePoint sp;
      sp.x = xbar + t * rays[j];
      sp.level = k;
      sp.ray = static_cast<int>(j);
      ++rep.evaluated;
      sp.feasible = feasible(sp.x);
      if (sp.feasible) {
        ++rep.samples;
        sp.diff = diff(sp.x);
        if (!sp.diff.allFinite()) throw Error(ErrorCode::kNumerical, "non-finite objective value");
        sp.violation = violates(K, sp.diff, weak);
        if (sp.violation && !rep.counter_x) {
          rep.counter_x = sp.x;
          rep.counter_diff = sp.diff;
        }
      }
      rep.points.push_back(std::move(sp));
    }
  }
  rep.verdict = rep.counter_x ? Verdict::kRefuted : Verdict::kCertifiedOnGrid;
  rep.no_feasible_sample = rep.samples == 0;
  return rep;
}

}  // namespace

CertReport certify_directional_min(const Problem& p, bool weak) {
  p.validate();
  const Vector fbar = p.f->value(p.xbar);
  return run_grid(
      p.xbar, p.L, p.grid, p.K, weak, [&](const Vector& x) { return Vector(p.f->value(x) - fbar); },
      [&](const Vector& x) { return p.feasible(x); });
}

CertReport certify_set_min(const SetSpec& M, const Vector& xbar, const geometry::HalfspaceCone& K,
                           const geometry::DirectionSet& L, bool weak, const GridSpec& grid) {
  require_dim(M.dim, static_cast<std::size_t>(xbar.size()), "point x̄");
  require_dim(M.dim, L.dim(), "direction set L");
  require_dim(M.dim, K.dim(), "ordering cone K");
  if (!contains(M, xbar)) throw Error(ErrorCode::kInvalidArgument, "x̄ is not in M");
  return run_grid(
      xbar, L, grid, K, weak, [&](const Vector& x) { return Vector(x - xbar); },
      [&](const Vector& x) { return contains(M, x); });
}

FirstOrderReport check_first_order_necessary(const Problem& p, const std::vector<Vector>& dirs) {
  p.validate();
  const Matrix J = p.f->jacobian(p.xbar);
  std::optional<tangent::TangentCone> poly_cone;
  if (const auto* s = std::get_if<SetSpec>(&p.constraint)) {
    if (s->kind == SetSpec::Kind::kPolyhedron) {
      poly_cone = tangent::tangent_polyhedral(tangent::PolyhedralSet(s->rows, s->offsets), p.xbar,
                                              p.L);
    }
  }
  FirstOrderReport rep;
  for (const auto& u : dirs) {
    require_dim(p.L.dim(), static_cast<std::size_t>(u.size()), "first-order direction");
    bool admissible = geometry::contains(geometry::conic_hull(p.L), u);
    if (admissible) {
      if (poly_cone) {
        admissible = poly_cone->contains(u);
      } else if (const auto* s = std::get_if<SetSpec>(&p.constraint)) {
        admissible = tangent::tangent_membership_sampled(*s, p.xbar, p.L, u).status ==
                     tangent::TangentStatus::kMember;
      } else if (const auto* c = std::get_if<IneqEq>(&p.constraint)) {
        const double tol = 1e-7 * (1.0 + u.norm());
        for (const auto& g : c->mu) {
          if (std::abs(scalar_value(*g, p.xbar)) <= kConstraintTol &&
              (g->jacobian(p.xbar) * u)[0] > tol) {
            admissible = false;
          }
        }
        for (const auto& g : c->nu) {
          if (std::abs((g->jacobian(p.xbar) * u)[0]) > tol) admissible = false;
        }
      }
    }
    if (!admissible) {
      throw Error(ErrorCode::kInvalidArgument, "direction is not tangent-admissible");
    }
    DirectionCheck dc;
    dc.u = u;
    dc.image = J * u;
    dc.violated = geometry::contains(p.K, Vector(-dc.image), true);
    rep.holds = rep.holds && !dc.violated;
    rep.directions.push_back(std::move(dc));
  }
  return rep;
}

namespace {

// Variables (v, k) with u = v + k, v in the active cone of M, k in K.
multipliers::LPProblem sum_cone_lp(const geometry::HalfspaceCone& active,
                                   const geometry::HalfspaceCone& K) {
  const auto n = static_cast<Eigen::Index>(K.dim());
  multipliers::LPProblem lp(static_cast<std::size_t>(2 * n));
  for (const auto& a : active.rows()) {
    Vector r = Vector::Zero(2 * n);
    r.head(n) = a;
    lp.add_geq(r, 0.0);
  }
  for (const auto& q : K.rows()) {
    Vector r = Vector::Zero(2 * n);
    r.tail(n) = q;
    lp.add_geq(r, 0.0);
  }
  return lp;
}

Vector on_sum(const Vector& c) {
  Vector r(2 * c.size());
  r << c, c;
  return r;
}

SufficiencyReport exact_sufficiency(const tangent::PolyhedralSet& M, const Vector& xbar,
                                    const geometry::HalfspaceCone& K,
                                    const geometry::DirectionSet& L, bool weak) {
  const auto active = tangent::tangent_polyhedral(M, xbar);
  const auto n = static_cast<Eigen::Index>(K.dim());
  SufficiencyReport rep;
  rep.exact = true;
  rep.status = SufficiencyStatus::kCertified;

  if (L.is_finite()) {
    for (const auto& l : L.directions()) {
      auto lp = sum_cone_lp(active, K);
      for (Eigen::Index i = 0; i < n; ++i) lp.add_eq(on_sum(Vector::Unit(n, i)), l[i]);
      if (!multipliers::lp_feasible(lp)) continue;
      if (violates(K, l, weak)) {
        rep.status = SufficiencyStatus::kViolated;
        rep.violating_direction = l;
        return rep;
      }
    }
    return rep;
  }

  auto base = sum_cone_lp(active, K);
  for (const auto& c : L.cone().rows()) base.add_geq(on_sum(c), 0.0);
  auto report = [&](const multipliers::LPProblem& lp) {
    auto w = multipliers::lp_feasible(lp);
    if (!w) return false;
    const Vector u = w->head(n) + w->tail(n);
    rep.status = SufficiencyStatus::kViolated;
    rep.violating_direction = u / u.norm();
    return true;
  };
  if (weak) {
    auto lp = base;
    for (const auto& q : K.rows()) lp.add_geq(on_sum(-q), 1.0);
    report(lp);
    return rep;
  }
  for (const auto& qi : K.rows()) {
    auto lp = base;
    for (const auto& q : K.rows()) lp.add_geq(on_sum(-q), 0.0);
    lp.add_geq(on_sum(-qi), 1.0);
    if (report(lp)) return rep;
  }
  return rep;
}

}  // namespace

SufficiencyReport tangent_sufficiency_sets(const SetSpec& M, const Vector& xbar,
                                           const geometry::HalfspaceCone& K,
                                           const geometry::DirectionSet& L, bool weak,
                                           const SetSpec* sum_oracle) {
  require_dim(M.dim, static_cast<std::size_t>(xbar.size()), "point x̄");
  require_dim(M.dim, L.dim(), "direction set L");
  require_dim(M.dim, K.dim(), "ordering cone K");
  if (!contains(M, xbar)) throw Error(ErrorCode::kInvalidArgument, "x̄ is not in M");
  if (M.kind == SetSpec::Kind::kPolyhedron) {
    return exact_sufficiency(tangent::PolyhedralSet(M.rows, M.offsets), xbar, K, L, weak);
  }
  if (!sum_oracle) {
    throw Error(ErrorCode::kInvalidArgument,
                "non-polyhedral M needs a membership oracle for M + K");
  }
  SufficiencyReport rep;
  for (const auto& u : geometry::ray_lattice(L, 64)) {
    if (!violates(K, u, weak)) continue;
    const auto v = tangent::tangent_membership_sampled(*sum_oracle, xbar, L, u);
    if (v.status == tangent::TangentStatus::kMember) {
      rep.status = SufficiencyStatus::kViolated;
      rep.violating_direction = u;
      return rep;
    }
  }
  return rep;
}

std::vector<double> default_eps_schedule() { return {0.5, 0.25, 0.1}; }

std::vector<double> default_r_schedule() {
  std::vector<double> r;
  for (int k = 0; k < 16; ++k) r.push_back(std::ldexp(0.5, -k));
  return r;
}

OpennessReport openness_falsifier(const SmoothMap& f, const Vector& xbar,
                                  const geometry::DirectionSet& L, const geometry::DirectionSet& C,
                                  const std::vector<double>& eps_schedule,
                                  const std::vector<double>& r_schedule, int rays) {
  require_dim(f.input_dim(), L.dim(), "direction set L");
  require_dim(f.output_dim(), C.dim(), "target directions C");
  if (!C.is_finite()) throw Error(ErrorCode::kInvalidArgument, "C must be a finite direction set");
  if (eps_schedule.empty() || r_schedule.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty openness schedule");
  }
  const Vector ybar = f.value(xbar);
  const auto dirs = geometry::ray_lattice(L, static_cast<std::size_t>(rays));
  OpennessReport rep;
  for (double eps : eps_schedule) {
    std::vector<Vector> values{ybar};
    for (const auto& l : dirs) {
      for (int j = 0; j <= 160; ++j) values.push_back(f.value(xbar + eps * std::exp2(-0.25 * j) * l));
    }
    std::vector<OpennessTarget> found;
    for (double r : r_schedule) {
      bool unreachable = false;
      for (double s : {r, 0.5 * r, 0.25 * r}) {
        for (const auto& c : C.directions()) {
          const Vector y = ybar - s * c;
          double best = mintime::kInfinity;
          for (const auto& v : values) best = std::min(best, (v - y).norm());
          if (best > rep.eta * s) {
            found.push_back({r, y, best});
            unreachable = true;
            break;
          }
        }
        if (unreachable) break;
      }
      if (!unreachable) break;
    }
    if (found.size() == r_schedule.size()) {
      rep.witness = true;
      rep.eps = eps;
      rep.targets = std::move(found);
      return rep;
    }
  }
  return rep;
}

std::vector<Vector> find_K_minus_negK(const geometry::HalfspaceCone& K, std::size_t count) {
  std::vector<Vector> out;
  for (const auto& v : geometry::sphere_lattice(K.dim(), std::max<std::size_t>(count * 8, 64))) {
    if (geometry::contains(K, v) && !geometry::contains(K, Vector(-v))) out.push_back(v);
    if (out.size() >= count) break;
  }
  return out;
}

}  // namespace dirpareto::certify
