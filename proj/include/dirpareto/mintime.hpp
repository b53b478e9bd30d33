#ifndef DIRPARETO_MINTIME_HPP
#define DIRPARETO_MINTIME_HPP

#include <limits>
#include <optional>
#include <variant>
#include <vector>

#include "dirpareto/geometry.hpp"
#include "dirpareto/maps.hpp"
#include "dirpareto/sets.hpp"

namespace dirpareto::mintime {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct Point {
  Vector x;
};

struct FinitePoints {
  std::vector<Vector> points;
};

/// {x : rows[i] . x >= offsets[i]}.
struct Polyhedron {
  std::vector<Vector> rows;
  std::vector<double> offsets;
};

struct Target {
  std::variant<Point, FinitePoints, Polyhedron> variant;

  std::size_t dim() const;
  void validate() const;
};

enum class Norm { kL2, kLinf };

double norm_of(const Vector& v, Norm norm);

struct MinTimeResult {
  double value = kInfinity;
  bool approximate = false;  // sampled upper bound
  std::optional<Vector> displacement;  // d with x + d in the target, when finite
};

/// T_L(x, Ω) = inf{‖d‖ : d in cone L, x + d in Ω}, with ‖.‖ the chosen norm.
MinTimeResult minimal_time(const geometry::DirectionSet& L, const Vector& x, const Target& target,
                           Norm norm = Norm::kL2);

struct RatioEstimate {
  double supremum_ratio = 0.0;
  Vector witness_x;        // argument achieving the supremum
  Vector witness_value;    // its image
  int samples_used = 0;    // grid points with a finite, positive denominator
  bool no_admissible_point = false;
  bool infinite = false;   // some admissible point had an infinite numerator
  bool empirical = true;
};

/// sup over grid x of T_M(f(x), {f(x̄)}) / T_L(x̄, {x}), with x = x̄ + t l on
/// the grid (l from L, t = radius 2^-k).
RatioEstimate calmness_ratio(const SmoothMap& f, const Vector& xbar,
                             const geometry::DirectionSet& L, const geometry::DirectionSet& M,
                             const GridSpec& grid, Norm norm = Norm::kL2);

/// sup over the supplied x of T_L(x, f^-1(ȳ)) / T_M(ȳ, {f(x)}), where the
/// preimage f^-1(ȳ) is given as a finite point list.
RatioEstimate subregularity_ratio(const SmoothMap& f, const Vector& ybar,
                                  const std::vector<Vector>& preimage,
                                  const geometry::DirectionSet& L,
                                  const geometry::DirectionSet& M,
                                  const std::vector<Vector>& samples, Norm norm = Norm::kL2);

/// x̄ + radius 2^-k l for k < levels, in level-then-ray order.
std::vector<Vector> grid_points(const Vector& xbar, const geometry::DirectionSet& L,
                                const GridSpec& grid);

}  // namespace dirpareto::mintime

#endif  // DIRPARETO_MINTIME_HPP
