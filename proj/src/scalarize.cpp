#include "dirpareto/scalarize.hpp"

#include <cmath>
#include <limits>

#include "dirpareto/lp.hpp"

namespace dirpareto::scalarize {

ScalarizationContext::ScalarizationContext(geometry::HalfspaceCone K, Vector e)
    : K_(std::move(K)), e_(std::move(e)) {
  require_dim(K_.dim(), static_cast<std::size_t>(e_.size()), "scalarization direction e");
  if (K_.is_whole_space()) {
    throw Error(ErrorCode::kInvalidArgument, "K must be a proper cone, not the whole space");
  }
  if (!geometry::contains(K_, e_, true)) {
    throw Error(ErrorCode::kInvalidArgument, "e must lie in the interior of K");
  }
}

double gerstewitz_value(const ScalarizationContext& ctx, const Vector& y) {
  require_dim(ctx.K().dim(), static_cast<std::size_t>(y.size()), "scalarization argument");
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& a : ctx.K().rows()) best = std::max(best, a.dot(y) / a.dot(ctx.e()));
  return best;
}

SubdiffCert gerstewitz_subdiff(const ScalarizationContext& ctx, const Vector& u) {
  const double value = gerstewitz_value(ctx, u);
  const auto& rows = ctx.K().rows();
  const std::size_t m = rows.size();
  multipliers::LPProblem lp(m);
  Vector ce(static_cast<Eigen::Index>(m));
  Vector cu(static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) {
    lp.set_nonnegative(i);
    ce[static_cast<Eigen::Index>(i)] = rows[i].dot(ctx.e());
    cu[static_cast<Eigen::Index>(i)] = rows[i].dot(u);
  }
  lp.add_eq(ce, 1.0);
  lp.add_eq(cu, value);
  auto w = multipliers::lp_feasible(lp);
  if (!w) throw Error(ErrorCode::kNumerical, "subdifferential LP reported infeasible");

  SubdiffCert cert;
  cert.weights = *w;
  cert.witness = Vector::Zero(u.size());
  for (std::size_t i = 0; i < m; ++i) cert.witness += (*w)[static_cast<Eigen::Index>(i)] * rows[i];
  cert.u = u;
  cert.value = value;
  return cert;
}

bool SubdiffCert::contains(const ScalarizationContext& ctx, const Vector& vstar,
                           double tol) const {
  require_dim(ctx.K().dim(), static_cast<std::size_t>(vstar.size()), "subgradient");
  if (std::abs(vstar.dot(ctx.e()) - 1.0) > tol) return false;
  if (std::abs(vstar.dot(u) - value) > tol * (1.0 + std::abs(value))) return false;
  const auto dual = geometry::dual_generators(ctx.K());
  return geometry::contains(dual.cone, vstar, false, tol);
}

}  // namespace dirpareto::scalarize
