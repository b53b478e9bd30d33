#include "dirpareto/maps.hpp"

#include <cmath>
#include <numbers>

namespace dirpareto {

Matrix SmoothMap::jacobian(const Vector& x) const { return finite_difference_jacobian(*this, x); }

Matrix finite_difference_jacobian(const SmoothMap& f, const Vector& x) {
  require_dim(f.input_dim(), static_cast<std::size_t>(x.size()), f.name());
  const double h = 1e-6 * (1.0 + x.norm());
  Matrix j(static_cast<Eigen::Index>(f.output_dim()), x.size());
  Vector xp = x;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    xp[k] = x[k] + h;
    const Vector fp = f.value(xp);
    xp[k] = x[k] - h;
    const Vector fm = f.value(xp);
    xp[k] = x[k];
    j.col(k) = (fp - fm) / (2.0 * h);
  }
  return j;
}

namespace {

class FunctionMap final : public SmoothMap {
 public:
  FunctionMap(std::string name, std::size_t in, std::size_t out, ValueFn value,
              JacobianFn jacobian, SmoothnessFn differentiable)
      : name_(std::move(name)),
        in_(in),
        out_(out),
        value_(std::move(value)),
        jacobian_(std::move(jacobian)),
        differentiable_(std::move(differentiable)) {}

  std::size_t input_dim() const override { return in_; }
  std::size_t output_dim() const override { return out_; }

  Vector value(const Vector& x) const override {
    require_dim(in_, static_cast<std::size_t>(x.size()), name_);
    Vector y = value_(x);
    require_dim(out_, static_cast<std::size_t>(y.size()), name_);
    return y;
  }

  Matrix jacobian(const Vector& x) const override {
    if (!jacobian_) return finite_difference_jacobian(*this, x);
    require_dim(in_, static_cast<std::size_t>(x.size()), name_);
    if (!differentiable_at(x)) {
      throw Error(ErrorCode::kDomain, name_ + " is not differentiable at the query point");
    }
    return jacobian_(x);
  }

  bool has_analytic_jacobian() const override { return static_cast<bool>(jacobian_); }

  bool differentiable_at(const Vector& x) const override {
    return !differentiable_ || differentiable_(x);
  }

  std::string name() const override { return name_; }

 private:
  std::string name_;
  std::size_t in_, out_;
  ValueFn value_;
  JacobianFn jacobian_;
  SmoothnessFn differentiable_;
};

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

Matrix mat(Eigen::Index rows, Eigen::Index cols, std::initializer_list<double> xs) {
  Matrix m(rows, cols);
  Eigen::Index k = 0;
  for (double x : xs) {
    m(k / cols, k % cols) = x;
    ++k;
  }
  return m;
}

// Sector angle of the printed formula: arctan(y/x) for x != 0.
double printed_angle(double x, double y) {
  double theta = std::atan2(y, x);
  if (x < 0.0) theta = theta > 0.0 ? theta - std::numbers::pi : theta + std::numbers::pi;
  return theta;
}

}  // namespace

MapPtr make_map(std::string name, std::size_t in, std::size_t out, ValueFn value,
                JacobianFn jacobian, SmoothnessFn differentiable) {
  return std::make_shared<FunctionMap>(std::move(name), in, out, std::move(value),
                                       std::move(jacobian), std::move(differentiable));
}

MapPtr make_linear(const Matrix& a, std::optional<Vector> b) {
  Vector offset = b.value_or(Vector::Zero(a.rows()));
  require_dim(static_cast<std::size_t>(a.rows()), static_cast<std::size_t>(offset.size()),
              "linear map offset");
  return make_map(
      "linear", static_cast<std::size_t>(a.cols()), static_cast<std::size_t>(a.rows()),
      [a, offset](const Vector& x) -> Vector { return a * x + offset; },
      [a](const Vector&) -> Matrix { return a; });
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = {
      "saddle-x2-y2", "saddle-x2-y3", "sin-inv-x",         "x3-sin-inv-x",
      "arctan-sector", "vector-2x-x", "vector-pair-saddle", "identity-1d"};
  return names;
}

MapPtr make_builtin(const std::string& name, const std::vector<double>& params) {
  if (name == "saddle-x2-y2") {
    return make_map(
        name, 2, 1, [](const Vector& x) { return vec({x[0] * x[0] - x[1] * x[1]}); },
        [](const Vector& x) { return mat(1, 2, {2 * x[0], -2 * x[1]}); });
  }
  if (name == "saddle-x2-y3") {
    return make_map(
        name, 2, 1, [](const Vector& x) { return vec({x[0] * x[0] - x[1] * x[1] * x[1]}); },
        [](const Vector& x) { return mat(1, 2, {2 * x[0], -3 * x[1] * x[1]}); });
  }
  if (name == "sin-inv-x") {
    return make_map(
        name, 1, 1,
        [](const Vector& x) { return vec({x[0] != 0.0 ? std::sin(1.0 / x[0]) : 0.0}); },
        [](const Vector& x) {
          return mat(1, 1, {-std::cos(1.0 / x[0]) / (x[0] * x[0])});
        },
        [](const Vector& x) { return x[0] != 0.0; });
  }
  if (name == "x3-sin-inv-x") {
    return make_map(
        name, 1, 1,
        [](const Vector& x) {
          const double t = x[0];
          return vec({t != 0.0 ? t * t * t * std::sin(1.0 / t) : 0.0});
        },
        [](const Vector& x) {
          const double t = x[0];
          if (t == 0.0) return mat(1, 1, {0.0});
          return mat(1, 1, {3 * t * t * std::sin(1.0 / t) - t * std::cos(1.0 / t)});
        });
  }
  if (name == "arctan-sector") {
    const double lo = params.size() > 0 ? params[0] : std::numbers::pi / 6.0;
    const double hi = params.size() > 1 ? params[1] : std::numbers::pi / 3.0;
    if (!(0.0 < lo && lo < hi && hi < std::numbers::pi / 2.0)) {
      throw Error(ErrorCode::kInvalidArgument, "arctan-sector needs 0 < theta1 < theta2 < pi/2");
    }
    return make_map(
        name, 2, 1,
        [lo, hi](const Vector& x) {
          if (x[0] == 0.0) return vec({0.0});
          if (x[0] < 0.0 && x[1] < 0.0) return vec({-1.0});
          const double theta = printed_angle(x[0], x[1]);
          return vec({(hi - theta) * (theta - lo)});
        },
        [lo, hi](const Vector& x) {
          const double r2 = x[0] * x[0] + x[1] * x[1];
          const double theta = printed_angle(x[0], x[1]);
          const double d = (hi - theta) - (theta - lo);
          return mat(1, 2, {d * (-x[1] / r2), d * (x[0] / r2)});
        },
        [](const Vector& x) { return x[0] > 0.0 || (x[0] < 0.0 && x[1] > 0.0); });
  }
  if (name == "vector-2x-x") {
    return make_map(
        name, 1, 2, [](const Vector& x) { return vec({2 * x[0], x[0]}); },
        [](const Vector&) { return mat(2, 1, {2.0, 1.0}); });
  }
  if (name == "vector-pair-saddle") {
    return make_map(
        name, 2, 2,
        [](const Vector& x) {
          return vec({x[0] * x[0] - x[1] * x[1], x[0] * x[0] - x[1] * x[1] * x[1]});
        },
        [](const Vector& x) {
          return mat(2, 2, {2 * x[0], -2 * x[1], 2 * x[0], -3 * x[1] * x[1]});
        });
  }
  if (name == "identity-1d") {
    return make_map(
        name, 1, 1, [](const Vector& x) { return x; },
        [](const Vector&) { return mat(1, 1, {1.0}); });
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown builtin objective '" + name + "'");
}

MapPtr stack_maps(std::string name, const std::vector<MapPtr>& parts) {
  if (parts.empty()) throw Error(ErrorCode::kInvalidArgument, "no component maps to stack");
  const std::size_t in = parts.front()->input_dim();
  std::size_t out = 0;
  for (const auto& p : parts) {
    require_dim(in, p->input_dim(), "stacked map input");
    out += p->output_dim();
  }
  auto value = [parts, out](const Vector& x) {
    Vector y(static_cast<Eigen::Index>(out));
    Eigen::Index k = 0;
    for (const auto& p : parts) {
      const Vector v = p->value(x);
      y.segment(k, v.size()) = v;
      k += v.size();
    }
    return y;
  };
  auto jacobian = [parts, out, in](const Vector& x) {
    Matrix j(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(in));
    Eigen::Index k = 0;
    for (const auto& p : parts) {
      const Matrix pj = p->jacobian(x);
      j.middleRows(k, pj.rows()) = pj;
      k += pj.rows();
    }
    return j;
  };
  auto smooth = [parts](const Vector& x) {
    for (const auto& p : parts) {
      if (!p->differentiable_at(x)) return false;
    }
    return true;
  };
  return make_map(std::move(name), in, out, value, jacobian, smooth);
}

}  // namespace dirpareto
