#ifndef DIRPARETO_LP_HPP
#define DIRPARETO_LP_HPP

#include <optional>
#include <vector>

#include "dirpareto/core.hpp"

namespace dirpareto::multipliers {

struct LinearConstraint {
  Vector coeffs;
  double rhs = 0.0;
};

/// Small dense linear program over `num_vars` variables.
///
/// Variables are free unless flagged in `nonnegative`. Without an objective
/// the problem is a pure feasibility query.
struct LPProblem {
  std::size_t num_vars = 0;
  std::vector<LinearConstraint> at_least;  // coeffs . v >= rhs
  std::vector<LinearConstraint> equal;     // coeffs . v == rhs
  std::vector<bool> nonnegative;           // empty means all free
  std::optional<Vector> minimize;

  explicit LPProblem(std::size_t n = 0) : num_vars(n) {}

  void add_geq(Vector c, double d) { at_least.push_back({std::move(c), d}); }
  void add_leq(const Vector& c, double d) { at_least.push_back({-c, -d}); }
  void add_eq(Vector c, double d) { equal.push_back({std::move(c), d}); }
  void set_nonnegative(std::size_t j);
};

enum class LPStatus { kFeasible, kInfeasible, kUnbounded };

struct LPSolution {
  LPStatus status = LPStatus::kInfeasible;
  Vector point;              // feasible point (optimal when an objective is set)
  double objective = 0.0;
  double phase1_residual = 0.0;
  int pivots = 0;
};

inline constexpr double kPivotTol = 1e-10;
inline constexpr double kFeasibilityTol = 1e-9;

/// Two-phase dense simplex with Bland's anti-cycling rule.
LPSolution solve_lp(const LPProblem& problem);

/// Feasibility witness, or nullopt when the phase-1 optimum exceeds the
/// feasibility tolerance. Throws Error(kNumerical) on an unbounded phase 1.
std::optional<Vector> lp_feasible(const LPProblem& problem);

}  // namespace dirpareto::multipliers

#endif  // DIRPARETO_LP_HPP
