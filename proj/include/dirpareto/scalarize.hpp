#ifndef DIRPARETO_SCALARIZE_HPP
#define DIRPARETO_SCALARIZE_HPP

#include "dirpareto/geometry.hpp"

namespace dirpareto::scalarize {

/// Cone K with a direction e strictly inside it.
class ScalarizationContext {
 public:
  ScalarizationContext(geometry::HalfspaceCone K, Vector e);

  const geometry::HalfspaceCone& K() const { return K_; }
  const Vector& e() const { return e_; }

 private:
  geometry::HalfspaceCone K_;
  Vector e_;
};

/// One element v* of the subdifferential at u plus the constraints that
/// describe the whole subdifferential: v* = sum w_i a_i with w >= 0,
/// v*(e) = 1 and v*(u) = s(u).
struct SubdiffCert {
  Vector witness;
  Vector weights;  // w, one per row of K
  Vector u;
  double value = 0.0;

  /// Membership of an arbitrary v* in the subdifferential, within tol.
  bool contains(const ScalarizationContext& ctx, const Vector& vstar,
                double tol = kMembershipTol) const;
};

/// s(y) = inf{λ : λe ∈ y + K} = max_i (a_i.y)/(a_i.e).
double gerstewitz_value(const ScalarizationContext& ctx, const Vector& y);

SubdiffCert gerstewitz_subdiff(const ScalarizationContext& ctx, const Vector& u);

}  // namespace dirpareto::scalarize

#endif  // DIRPARETO_SCALARIZE_HPP
