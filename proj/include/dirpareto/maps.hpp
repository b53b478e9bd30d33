#ifndef DIRPARETO_MAPS_HPP
#define DIRPARETO_MAPS_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dirpareto/core.hpp"

namespace dirpareto {

/// Evaluable vector function X -> Y with a Jacobian.
class SmoothMap {
 public:
  virtual ~SmoothMap() = default;

  virtual std::size_t input_dim() const = 0;
  virtual std::size_t output_dim() const = 0;
  virtual Vector value(const Vector& x) const = 0;

  /// Analytic when available; central differences otherwise.
  virtual Matrix jacobian(const Vector& x) const;
  virtual bool has_analytic_jacobian() const { return false; }

  /// False where the map is known not to be differentiable.
  virtual bool differentiable_at(const Vector& /*x*/) const { return true; }

  virtual std::string name() const = 0;
};

using MapPtr = std::shared_ptr<const SmoothMap>;

/// Central differences with step h = 1e-6 (1 + |x|).
Matrix finite_difference_jacobian(const SmoothMap& f, const Vector& x);

using ValueFn = std::function<Vector(const Vector&)>;
using JacobianFn = std::function<Matrix(const Vector&)>;
using SmoothnessFn = std::function<bool(const Vector&)>;

MapPtr make_map(std::string name, std::size_t in, std::size_t out, ValueFn value,
                JacobianFn jacobian = {}, SmoothnessFn differentiable = {});

/// y = A x + b.
MapPtr make_linear(const Matrix& a, std::optional<Vector> b = std::nullopt);

/// Names of the built-in objectives, in gallery order.
const std::vector<std::string>& builtin_names();

/// Built-in objective by name. `params` carries the sector angles for
/// "arctan-sector" and is ignored otherwise.
MapPtr make_builtin(const std::string& name, const std::vector<double>& params = {});

/// Stacks scalar component maps into one vector map.
MapPtr stack_maps(std::string name, const std::vector<MapPtr>& parts);

}  // namespace dirpareto

#endif  // DIRPARETO_MAPS_HPP
