#ifndef DIRPARETO_CERTIFY_HPP
#define DIRPARETO_CERTIFY_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dirpareto/geometry.hpp"
#include "dirpareto/maps.hpp"
#include "dirpareto/sets.hpp"
#include "dirpareto/tangent.hpp"

namespace dirpareto::certify {

/// μ_i(x) <= 0 and ν_j(x) = 0.
struct IneqEq {
  std::vector<MapPtr> mu;
  std::vector<MapPtr> nu;
};

using Constraint = std::variant<std::monostate, SetSpec, IneqEq>;

struct Problem {
  MapPtr f;
  geometry::HalfspaceCone K;
  geometry::DirectionSet L;
  Constraint constraint;
  Vector xbar;
  GridSpec grid;

  /// Dimensions, a proper K and a feasible x̄.
  void validate() const;
  bool feasible(const Vector& x) const;
};

enum class Verdict { kCertifiedOnGrid, kRefuted };

const char* to_string(Verdict v);

struct SamplePoint {
  Vector x;
  Vector diff;  // f(x) - f(x̄), or x - x̄ for sets
  int level = 0;
  int ray = 0;
  bool feasible = false;
  bool violation = false;
};

struct CertReport {
  Verdict verdict = Verdict::kCertifiedOnGrid;
  bool weak = false;
  bool no_feasible_sample = false;  // certified vacuously: only x̄ is feasible
  int samples = 0;    // feasible grid points checked
  int evaluated = 0;  // grid points visited
  std::optional<Vector> counter_x;
  std::optional<Vector> counter_diff;
  GridSpec grid;
  std::vector<SamplePoint> points;
};

/// Weak: d = f(x) - f(x̄) must avoid -int K. Strong: d in -K forces d in K.
bool violates(const geometry::HalfspaceCone& K, const Vector& d, bool weak);

CertReport certify_directional_min(const Problem& p, bool weak);

CertReport certify_set_min(const SetSpec& M, const Vector& xbar, const geometry::HalfspaceCone& K,
                           const geometry::DirectionSet& L, bool weak, const GridSpec& grid);

struct DirectionCheck {
  Vector u;
  Vector image;  // ∇f(x̄)u
  bool violated = false;
};

struct FirstOrderReport {
  bool holds = true;
  std::vector<DirectionCheck> directions;
};

/// Rejects (throws kInvalidArgument) any direction that is not tangent-
/// admissible for the problem's constraint and L.
FirstOrderReport check_first_order_necessary(const Problem& p, const std::vector<Vector>& dirs);

enum class SufficiencyStatus { kCertified, kViolated, kNotRefuted };

const char* to_string(SufficiencyStatus s);

struct SufficiencyReport {
  SufficiencyStatus status = SufficiencyStatus::kNotRefuted;
  bool exact = false;
  std::optional<Vector> violating_direction;
};

/// Tests T_B^L(cl(M + K), x̄) against -int K (weak) or -K ⊂ K (strong).
/// Exact for polyhedral M. Any other M needs `sum_oracle`, a membership
/// oracle for M + K, which is probed with the sampled tangent test.
SufficiencyReport tangent_sufficiency_sets(const SetSpec& M, const Vector& xbar,
                                           const geometry::HalfspaceCone& K,
                                           const geometry::DirectionSet& L, bool weak,
                                           const SetSpec* sum_oracle = nullptr);

struct OpennessTarget {
  double r = 0.0;
  Vector y;
  double distance = 0.0;  // min |f(x) - y| over the sample
};

struct OpennessReport {
  bool witness = false;
  double eps = 0.0;
  std::vector<OpennessTarget> targets;
  double eta = 0.25;
};

/// Looks for ε such that every r in the schedule has an unreachable target
/// y = f(x̄) - s c (c in C, 0 < s <= r): no sampled x in B(x̄, ε) ∩ (x̄ + cone L)
/// has |f(x) - y| <= η |y - f(x̄)|.
OpennessReport openness_falsifier(const SmoothMap& f, const Vector& xbar,
                                  const geometry::DirectionSet& L, const geometry::DirectionSet& C,
                                  const std::vector<double>& eps_schedule,
                                  const std::vector<double>& r_schedule, int rays = 64);

std::vector<double> default_eps_schedule();
std::vector<double> default_r_schedule();

/// Unit lattice directions of K that are not in -K.
std::vector<Vector> find_K_minus_negK(const geometry::HalfspaceCone& K, std::size_t count = 64);

}  // namespace dirpareto::certify

#endif  // DIRPARETO_CERTIFY_HPP
