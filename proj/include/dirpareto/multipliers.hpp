#ifndef DIRPARETO_MULTIPLIERS_HPP
#define DIRPARETO_MULTIPLIERS_HPP

#include <optional>
#include <string>
#include <vector>

#include "dirpareto/certify.hpp"
#include "dirpareto/lp.hpp"
#include "dirpareto/tangent.hpp"

namespace dirpareto::multipliers {

/// Absolute slack allowed in stationarity: G(l) >= -kStationarityTol on cone L.
inline constexpr double kStationarityTol = 1e-9;

/// y* = Σ w_i a_i over the rows of K, z* = Σ s_j q_j over the rows of Q,
/// with (y*∘∇f + z*∘∇g)(u) >= 0 on cone L and Σw + Σs = 1.
struct FritzJohnCert {
  Vector w;
  Vector s;
  Vector ystar;
  Vector zstar;
  Vector stationarity;  // y*∘∇f(x̄) + z*∘∇g(x̄), as a row in X*
};

/// Constraint map g with g(x) in -Q. Without one, g and Q come from the
/// problem: (μ, ν) with Q = R+^m × {0}^p, or b - A x with Q = R+^m for a
/// polyhedral constraint set.
std::optional<FritzJohnCert> fritz_john(const certify::Problem& p, MapPtr g = nullptr,
                                        std::optional<geometry::HalfspaceCone> Q = std::nullopt);

struct MultiplierCert {
  Vector w;
  Vector ystar;
  Vector lambda;
  Vector tau;
  std::string normalization = "ystar_e_eq_1";
  Vector residual_in_Lpolar;  // -(y*∘∇f + Σλ∇μ + Στ∇ν)
  Vector e;
};

std::optional<MultiplierCert> kkt_multipliers(const certify::Problem& p, const Vector& e);

/// Validity of a KKT certificate for p within tol.
bool kkt_certificate_valid(const certify::Problem& p, const MultiplierCert& cert,
                           double tol = 1e-7);

struct ConvexityAssertion {
  bool f_K_convex = false;
  bool mu_convex = false;
  bool nu_affine = false;
  bool L_convex = false;
};

enum class SufficiencyVerdict { kGloballyWeaklyCertified, kAssertionRefuted, kNotAsserted };

const char* to_string(SufficiencyVerdict v);

struct SufficiencyResult {
  SufficiencyVerdict verdict = SufficiencyVerdict::kNotAsserted;
  std::vector<std::string> failures;
  int pairs_checked = 0;
};

/// Throws kInvalidArgument for an invalid certificate.
SufficiencyResult sufficiency_certificate(const certify::Problem& p, const MultiplierCert& cert,
                                          const ConvexityAssertion& assertion, int pairs = 200);

/// Midpoint K-convexity spot check over seeded pairs in the box x̄ ± half_width.
bool spot_check_K_convex(const SmoothMap& f, const geometry::HalfspaceCone& K, const Vector& xbar,
                         double half_width, int pairs, std::uint64_t seed);
bool spot_check_affine(const SmoothMap& f, const Vector& xbar, double half_width, int pairs,
                       std::uint64_t seed);
/// Convexity of cone L (always true for cone sections).
bool cone_is_convex(const geometry::DirectionSet& L);

struct VectorMode {
  Vector e;
  double ell = 1.0;
};

struct PenalizedResult {
  bool holds = false;
  Vector eta;      // multipliers of the active rows of A
  Vector ystar;    // vector mode only
  Vector xstar;    // ∇f(x̄)^T y* (vector mode) or ∇f(x̄)
  Vector polar_part;  // element of L⁻
  std::string norm = "l1";
};

/// 0 ∈ ∇f(x̄) + N(A, x̄) + L⁻ (scalar), or the K-Lipschitz vector condition
/// with ‖x*‖_1 <= ℓ y*(e). A null A means the whole space.
PenalizedResult stationarity_penalized(const SmoothMap& f, const tangent::PolyhedralSet* A,
                                       const Vector& xbar, const geometry::DirectionSet& L,
                                       const std::optional<VectorMode>& vector_mode = std::nullopt,
                                       const std::optional<geometry::HalfspaceCone>& K =
                                           std::nullopt);

}  // namespace dirpareto::multipliers

#endif  // DIRPARETO_MULTIPLIERS_HPP
