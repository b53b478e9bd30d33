#include "dirpareto/multipliers.hpp"

#include <cmath>
#include <random>

namespace dirpareto::multipliers {

namespace {

// Linear program assembled from named variable blocks.
class Builder {
 public:
  std::size_t block(std::size_t size, bool nonneg) {
    const std::size_t start = n_;
    n_ += size;
    nonneg_.insert(nonneg_.end(), size, nonneg);
    return start;
  }

  std::size_t size() const { return n_; }

  Vector zeros() const { return Vector::Zero(static_cast<Eigen::Index>(n_)); }

  void geq(Vector c, double d) { geq_.push_back({std::move(c), d}); }
  void eq(Vector c, double d) { eq_.push_back({std::move(c), d}); }

  LPProblem build() const {
    LPProblem lp(n_);
    lp.at_least = geq_;
    lp.equal = eq_;
    for (std::size_t j = 0; j < n_; ++j) {
      if (nonneg_[j]) lp.set_nonnegative(j);
    }
    return lp;
  }

 private:
  std::size_t n_ = 0;
  std::vector<bool> nonneg_;
  std::vector<LinearConstraint> geq_;
  std::vector<LinearConstraint> eq_;
};

// G = coef * z (coef is dim x size(builder), columns per LP variable) must be
// nonnegative on cone L up to kStationarityTol. Cone sections use Farkas:
// G = Σ ρ_r c_r, ρ >= 0, each coordinate within kStationarityTol.
void require_nonneg_on_cone(Builder& b, const Matrix& coef, const geometry::DirectionSet& L) {
  const auto n = coef.rows();
  if (L.is_finite()) {
    for (const auto& l : L.directions()) {
      Vector row = b.zeros();
      row.head(coef.cols()) = coef.transpose() * l;
      b.geq(row, -kStationarityTol);
    }
    return;
  }
  const auto& rows = L.cone().rows();
  const std::size_t rho = b.block(rows.size(), true);
  for (Eigen::Index d = 0; d < n; ++d) {
    Vector row = b.zeros();
    row.head(coef.cols()) = coef.row(d).transpose();
    for (std::size_t r = 0; r < rows.size(); ++r) {
      row[static_cast<Eigen::Index>(rho + r)] = -rows[r][d];
    }
    b.geq(row, -kStationarityTol);
    b.geq(-row, -kStationarityTol);
  }
}

struct ConstraintMaps {
  std::vector<MapPtr> mu;
  std::vector<MapPtr> nu;
};

ConstraintMaps constraint_maps(const certify::Problem& p) {
  ConstraintMaps out;
  if (const auto* c = std::get_if<certify::IneqEq>(&p.constraint)) {
    out.mu = c->mu;
    out.nu = c->nu;
  } else if (const auto* s = std::get_if<SetSpec>(&p.constraint)) {
    if (s->kind != SetSpec::Kind::kPolyhedron) {
      throw Error(ErrorCode::kInvalidArgument,
                  "multiplier search needs inequality/equality constraints or a polyhedron");
    }
    for (std::size_t i = 0; i < s->rows.size(); ++i) {
      Matrix a = -s->rows[i].transpose();
      out.mu.push_back(make_linear(a, Vector::Constant(1, s->offsets[i])));
    }
  }
  return out;
}

Matrix stacked_gradients(const std::vector<MapPtr>& maps, const Vector& x) {
  Matrix g(x.size(), static_cast<Eigen::Index>(maps.size()));
  for (std::size_t i = 0; i < maps.size(); ++i) {
    g.col(static_cast<Eigen::Index>(i)) = maps[i]->jacobian(x).row(0).transpose();
  }
  return g;
}

Vector segment(const Vector& v, std::size_t start, std::size_t len) {
  return v.segment(static_cast<Eigen::Index>(start), static_cast<Eigen::Index>(len));
}

}  // namespace

std::optional<FritzJohnCert> fritz_john(const certify::Problem& p, MapPtr g,
                                        std::optional<geometry::HalfspaceCone> Q) {
  p.validate();
  if (g && !Q) throw Error(ErrorCode::kInvalidArgument, "constraint map g needs its cone Q");
  if (!g) {
    const auto maps = constraint_maps(p);
    const std::size_t m = maps.mu.size();
    const std::size_t q = m + maps.nu.size();
    if (q > 0) {
      std::vector<MapPtr> parts = maps.mu;
      parts.insert(parts.end(), maps.nu.begin(), maps.nu.end());
      g = stack_maps("g", parts);
      std::vector<Vector> rows;
      const auto qi = static_cast<Eigen::Index>(q);
      for (std::size_t i = 0; i < q; ++i) {
        rows.push_back(Vector::Unit(qi, static_cast<Eigen::Index>(i)));
        if (i >= m) rows.push_back(-Vector::Unit(qi, static_cast<Eigen::Index>(i)));
      }
      Q = geometry::HalfspaceCone(q, rows);
    }
  }

  const Matrix Jf = p.f->jacobian(p.xbar);
  const auto& krows = p.K.rows();
  Matrix Jg;
  Vector gbar;
  std::vector<Vector> qrows;
  if (g) {
    require_dim(p.f->input_dim(), g->input_dim(), "constraint map");
    require_dim(g->output_dim(), Q->dim(), "constraint cone Q");
    Jg = g->jacobian(p.xbar);
    gbar = g->value(p.xbar);
    qrows = Q->rows();
  }

  Builder b;
  const std::size_t w0 = b.block(krows.size(), true);
  const std::size_t s0 = b.block(qrows.size(), true);
  const std::size_t base = b.size();
  const auto n = Jf.cols();
  Matrix coef(n, static_cast<Eigen::Index>(base));
  for (std::size_t i = 0; i < krows.size(); ++i) {
    coef.col(static_cast<Eigen::Index>(w0 + i)) = Jf.transpose() * krows[i];
  }
  for (std::size_t j = 0; j < qrows.size(); ++j) {
    coef.col(static_cast<Eigen::Index>(s0 + j)) = Jg.transpose() * qrows[j];
  }
  require_nonneg_on_cone(b, coef, p.L);
  Vector norm = b.zeros();
  norm.head(static_cast<Eigen::Index>(base)).setOnes();
  b.eq(norm, 1.0);
  for (std::size_t j = 0; j < qrows.size(); ++j) {
    if (qrows[j].dot(gbar) < -kConstraintTol) {
      Vector row = b.zeros();
      row[static_cast<Eigen::Index>(s0 + j)] = 1.0;
      b.eq(row, 0.0);
    }
  }

  auto sol = lp_feasible(b.build());
  if (!sol) return std::nullopt;
  FritzJohnCert cert;
  cert.w = segment(*sol, w0, krows.size());
  cert.s = segment(*sol, s0, qrows.size());
  cert.ystar = Vector::Zero(static_cast<Eigen::Index>(p.K.dim()));
  for (std::size_t i = 0; i < krows.size(); ++i) cert.ystar += cert.w[static_cast<Eigen::Index>(i)] * krows[i];
  if (g) {
    cert.zstar = Vector::Zero(static_cast<Eigen::Index>(Q->dim()));
    for (std::size_t j = 0; j < qrows.size(); ++j) cert.zstar += cert.s[static_cast<Eigen::Index>(j)] * qrows[j];
  }
  cert.stationarity = coef * sol->head(static_cast<Eigen::Index>(base));
  return cert;
}

std::optional<MultiplierCert> kkt_multipliers(const certify::Problem& p, const Vector& e) {
  p.validate();
  require_dim(p.K.dim(), static_cast<std::size_t>(e.size()), "interior direction e");
  if (!geometry::contains(p.K, e, true)) {
    throw Error(ErrorCode::kInvalidArgument, "e must lie in the interior of K");
  }
  const auto maps = constraint_maps(p);
  const Matrix Jf = p.f->jacobian(p.xbar);
  const auto& krows = p.K.rows();
  const auto n = Jf.cols();

  Builder b;
  const std::size_t w0 = b.block(krows.size(), true);
  const std::size_t l0 = b.block(maps.mu.size(), true);
  const std::size_t t0 = b.block(maps.nu.size(), false);
  const std::size_t base = b.size();
  Matrix coef(n, static_cast<Eigen::Index>(base));
  for (std::size_t i = 0; i < krows.size(); ++i) {
    coef.col(static_cast<Eigen::Index>(w0 + i)) = Jf.transpose() * krows[i];
  }
  if (!maps.mu.empty()) coef.middleCols(static_cast<Eigen::Index>(l0), static_cast<Eigen::Index>(maps.mu.size())) = stacked_gradients(maps.mu, p.xbar);
  if (!maps.nu.empty()) coef.middleCols(static_cast<Eigen::Index>(t0), static_cast<Eigen::Index>(maps.nu.size())) = stacked_gradients(maps.nu, p.xbar);
  require_nonneg_on_cone(b, coef, p.L);

  Vector norm = b.zeros();
  for (std::size_t i = 0; i < krows.size(); ++i) norm[static_cast<Eigen::Index>(w0 + i)] = krows[i].dot(e);
  b.eq(norm, 1.0);
  for (std::size_t i = 0; i < maps.mu.size(); ++i) {
    if (maps.mu[i]->value(p.xbar)[0] < -kConstraintTol) {
      Vector row = b.zeros();
      row[static_cast<Eigen::Index>(l0 + i)] = 1.0;
      b.eq(row, 0.0);
    }
  }

  auto sol = lp_feasible(b.build());
  if (!sol) return std::nullopt;
  MultiplierCert cert;
  cert.e = e;
  cert.w = segment(*sol, w0, krows.size());
  cert.lambda = segment(*sol, l0, maps.mu.size());
  cert.tau = segment(*sol, t0, maps.nu.size());
  cert.ystar = Vector::Zero(static_cast<Eigen::Index>(p.K.dim()));
  for (std::size_t i = 0; i < krows.size(); ++i) cert.ystar += cert.w[static_cast<Eigen::Index>(i)] * krows[i];
  cert.residual_in_Lpolar = -(coef * sol->head(static_cast<Eigen::Index>(base)));
  return cert;
}

bool kkt_certificate_valid(const certify::Problem& p, const MultiplierCert& cert, double tol) {
  const auto maps = constraint_maps(p);
  if (static_cast<std::size_t>(cert.lambda.size()) != maps.mu.size() ||
      static_cast<std::size_t>(cert.tau.size()) != maps.nu.size() ||
      static_cast<std::size_t>(cert.ystar.size()) != p.K.dim()) {
    return false;
  }
  if (std::abs(cert.ystar.dot(cert.e) - 1.0) > tol) return false;
  // y* in K+ : generated by the rows of K.
  if (!geometry::contains(geometry::dual_generators(p.K).cone, cert.ystar)) return false;
  Vector G = p.f->jacobian(p.xbar).transpose() * cert.ystar;
  for (std::size_t i = 0; i < maps.mu.size(); ++i) {
    const double lam = cert.lambda[static_cast<Eigen::Index>(i)];
    if (lam < -tol) return false;
    if (std::abs(lam * maps.mu[i]->value(p.xbar)[0]) > tol) return false;
    G += lam * maps.mu[i]->jacobian(p.xbar).row(0).transpose();
  }
  for (std::size_t j = 0; j < maps.nu.size(); ++j) {
    G += cert.tau[static_cast<Eigen::Index>(j)] * maps.nu[j]->jacobian(p.xbar).row(0).transpose();
  }
  if ((G + cert.residual_in_Lpolar).lpNorm<Eigen::Infinity>() > tol * (1.0 + G.norm())) {
    return false;
  }
  const Vector& r = cert.residual_in_Lpolar;
  if (p.L.is_finite()) {
    for (const auto& l : p.L.directions()) {
      if (r.dot(l) > tol) return false;
    }
    return true;
  }
  const auto& rows = p.L.cone().rows();
  if (rows.empty()) return r.lpNorm<Eigen::Infinity>() <= tol;
  return geometry::contains(geometry::GeneratorCone(p.L.dim(), rows), Vector(-r));
}

const char* to_string(SufficiencyVerdict v) {
  switch (v) {
    case SufficiencyVerdict::kGloballyWeaklyCertified:
      return "globally_weakly_certified_conditional_on_convexity";
    case SufficiencyVerdict::kAssertionRefuted: return "convexity_assertion_refuted";
    case SufficiencyVerdict::kNotAsserted: return "convexity_not_asserted";
  }
  return "convexity_not_asserted";
}

namespace {

template <typename Check>
bool spot_pairs(const Vector& xbar, double half_width, int pairs, std::uint64_t seed, Check check) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-half_width, half_width);
  for (int i = 0; i < pairs; ++i) {
    Vector a = xbar;
    Vector c = xbar;
    for (Eigen::Index k = 0; k < xbar.size(); ++k) {
      a[k] += u(rng);
      c[k] += u(rng);
    }
    if (!check(a, c, Vector(0.5 * (a + c)))) return false;
  }
  return true;
}

}  // namespace

bool spot_check_K_convex(const SmoothMap& f, const geometry::HalfspaceCone& K, const Vector& xbar,
                         double half_width, int pairs, std::uint64_t seed) {
  return spot_pairs(xbar, half_width, pairs, seed, [&](const Vector& a, const Vector& c, const Vector& m) {
    const Vector fa = f.value(a);
    const Vector fc = f.value(c);
    const Vector gap = 0.5 * (fa + fc) - f.value(m);
    const double scale = 1.0 + fa.norm() + fc.norm();
    return geometry::contains(K, gap, false, 1e-9 * scale);
  });
}

bool spot_check_affine(const SmoothMap& f, const Vector& xbar, double half_width, int pairs,
                       std::uint64_t seed) {
  return spot_pairs(xbar, half_width, pairs, seed, [&](const Vector& a, const Vector& c, const Vector& m) {
    const Vector fa = f.value(a);
    const Vector fc = f.value(c);
    const Vector gap = 0.5 * (fa + fc) - f.value(m);
    return gap.lpNorm<Eigen::Infinity>() <= 1e-9 * (1.0 + fa.norm() + fc.norm());
  });
}

bool cone_is_convex(const geometry::DirectionSet& L) {
  if (!L.is_finite()) return true;
  const auto& d = L.directions();
  const geometry::RayCone rays(L.dim(), d);
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      if (!geometry::contains(rays, Vector(d[i] + d[j]))) return false;
    }
  }
  return true;
}

SufficiencyResult sufficiency_certificate(const certify::Problem& p, const MultiplierCert& cert,
                                          const ConvexityAssertion& assertion, int pairs) {
  p.validate();
  if (!kkt_certificate_valid(p, cert)) {
    throw Error(ErrorCode::kInvalidArgument, "invalid multiplier certificate");
  }
  SufficiencyResult res;
  if (!(assertion.f_K_convex && assertion.mu_convex && assertion.nu_affine && assertion.L_convex)) {
    res.verdict = SufficiencyVerdict::kNotAsserted;
    return res;
  }
  const double hw = 1.0;
  const std::uint64_t seed = p.grid.seed;
  res.pairs_checked = pairs;
  if (!spot_check_K_convex(*p.f, p.K, p.xbar, hw, pairs, seed)) {
    res.failures.push_back("f is not K-convex");
  }
  const auto maps = constraint_maps(p);
  const auto halfline = geometry::HalfspaceCone::orthant(1);
  for (std::size_t i = 0; i < maps.mu.size(); ++i) {
    if (!spot_check_K_convex(*maps.mu[i], halfline, p.xbar, hw, pairs, seed + 1 + i)) {
      res.failures.push_back("mu" + std::to_string(i) + " is not convex");
    }
  }
  for (std::size_t j = 0; j < maps.nu.size(); ++j) {
    if (!spot_check_affine(*maps.nu[j], p.xbar, hw, pairs, seed + 101 + j)) {
      res.failures.push_back("nu" + std::to_string(j) + " is not affine");
    }
  }
  if (!cone_is_convex(p.L)) res.failures.push_back("cone L is not convex");
  res.verdict = res.failures.empty() ? SufficiencyVerdict::kGloballyWeaklyCertified
                                     : SufficiencyVerdict::kAssertionRefuted;
  return res;
}

PenalizedResult stationarity_penalized(const SmoothMap& f, const tangent::PolyhedralSet* A,
                                       const Vector& xbar, const geometry::DirectionSet& L,
                                       const std::optional<VectorMode>& vector_mode,
                                       const std::optional<geometry::HalfspaceCone>& K) {
  require_dim(f.input_dim(), L.dim(), "direction set L");
  require_dim(f.input_dim(), static_cast<std::size_t>(xbar.size()), "point x̄");
  std::vector<Vector> active;
  if (A) {
    require_dim(f.input_dim(), A->dim(), "constraint polyhedron");
    if (!A->contains(xbar)) throw Error(ErrorCode::kInvalidArgument, "x̄ is not in A");
    for (std::size_t i : A->active(xbar)) active.push_back(A->rows()[i]);
  }
  const Matrix J = f.jacobian(xbar);
  const auto n = J.cols();

  Builder b;
  PenalizedResult res;
  Matrix coef;
  std::size_t eta0 = 0;
  std::size_t w0 = 0;
  std::size_t s0 = 0;
  std::size_t one = 0;
  std::vector<Vector> krows;

  if (!vector_mode) {
    if (f.output_dim() != 1) {
      throw Error(ErrorCode::kInvalidArgument, "scalar penalization needs a scalar objective");
    }
    // G = ∇f - Σ η_i a_i must be nonnegative on cone L.
    one = b.block(1, false);
    eta0 = b.block(active.size(), true);
    coef.resize(n, static_cast<Eigen::Index>(b.size()));
    coef.col(static_cast<Eigen::Index>(one)) = J.row(0).transpose();
    for (std::size_t i = 0; i < active.size(); ++i) coef.col(static_cast<Eigen::Index>(eta0 + i)) = -active[i];
    const std::size_t base = b.size();
    require_nonneg_on_cone(b, coef, L);
    Vector fix = b.zeros();
    fix[static_cast<Eigen::Index>(one)] = 1.0;
    b.eq(fix, 1.0);
    auto sol = lp_feasible(b.build());
    res.xstar = J.row(0).transpose();
    if (!sol) return res;
    res.holds = true;
    res.eta = segment(*sol, eta0, active.size());
    res.polar_part = -(coef * sol->head(static_cast<Eigen::Index>(base)));
    return res;
  }

  const geometry::HalfspaceCone cone =
      K ? *K : geometry::HalfspaceCone::orthant(f.output_dim());
  require_dim(f.output_dim(), cone.dim(), "ordering cone K");
  require_dim(f.output_dim(), static_cast<std::size_t>(vector_mode->e.size()), "direction e");
  if (!(vector_mode->ell >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "ℓ must be >= 0");
  krows = cone.rows();
  w0 = b.block(krows.size(), true);
  eta0 = b.block(active.size(), true);
  s0 = b.block(static_cast<std::size_t>(n), true);
  const std::size_t base = b.size();
  // x* = Σ w_i J^T a_i; G = x* - Σ η_i a_i on cone L.
  Matrix xs = Matrix::Zero(n, static_cast<Eigen::Index>(base));
  for (std::size_t i = 0; i < krows.size(); ++i) xs.col(static_cast<Eigen::Index>(w0 + i)) = J.transpose() * krows[i];
  coef = xs;
  for (std::size_t i = 0; i < active.size(); ++i) coef.col(static_cast<Eigen::Index>(eta0 + i)) = -active[i];
  require_nonneg_on_cone(b, coef, L);
  Vector norm = b.zeros();
  for (std::size_t i = 0; i < krows.size(); ++i) norm[static_cast<Eigen::Index>(w0 + i)] = krows[i].dot(vector_mode->e);
  b.eq(norm, 1.0);
  for (Eigen::Index k = 0; k < n; ++k) {
    Vector up = b.zeros();
    up.head(static_cast<Eigen::Index>(base)) = -xs.row(k).transpose();
    up[static_cast<Eigen::Index>(s0) + k] += 1.0;
    b.geq(up, 0.0);
    Vector down = b.zeros();
    down.head(static_cast<Eigen::Index>(base)) = xs.row(k).transpose();
    down[static_cast<Eigen::Index>(s0) + k] += 1.0;
    b.geq(down, 0.0);
  }
  Vector budget = b.zeros();
  budget.segment(static_cast<Eigen::Index>(s0), n).setConstant(-1.0);
  b.geq(budget, -vector_mode->ell);

  auto sol = lp_feasible(b.build());
  if (!sol) return res;
  res.holds = true;
  res.eta = segment(*sol, eta0, active.size());
  res.ystar = Vector::Zero(static_cast<Eigen::Index>(cone.dim()));
  for (std::size_t i = 0; i < krows.size(); ++i) res.ystar += (*sol)[static_cast<Eigen::Index>(w0 + i)] * krows[i];
  res.xstar = xs * sol->head(static_cast<Eigen::Index>(base));
  res.polar_part = -(coef * sol->head(static_cast<Eigen::Index>(base)));
  return res;
}

}  // namespace dirpareto::multipliers
