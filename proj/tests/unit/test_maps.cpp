#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "dirpareto/maps.hpp"

using dirpareto::Matrix;
using dirpareto::Vector;
using namespace dirpareto;

namespace {

Vector v2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("builtin values") {
  CHECK(make_builtin("saddle-x2-y2")->value(v2(0, 1))[0] == -1.0);
  CHECK(make_builtin("saddle-x2-y3")->value(v2(0, -1))[0] == 1.0);
  CHECK(make_builtin("sin-inv-x")->value(Vector::Constant(1, 0.0))[0] == 0.0);
  CHECK(make_builtin("sin-inv-x")->value(Vector::Constant(1, 2 / std::numbers::pi))[0] ==
        doctest::Approx(1.0));
  CHECK(make_builtin("x3-sin-inv-x")->value(Vector::Constant(1, 0.0))[0] == 0.0);
  const Vector f = make_builtin("vector-2x-x")->value(Vector::Constant(1, 1.5));
  CHECK(f[0] == 3.0);
  CHECK(f[1] == 1.5);
  const Vector g = make_builtin("vector-pair-saddle")->value(v2(1, 2));
  CHECK(g[0] == -3.0);
  CHECK(g[1] == -7.0);
}

TEST_CASE("arctan sector follows the printed piecewise definition") {
  const double lo = std::numbers::pi / 6;
  const double hi = std::numbers::pi / 3;
  const auto f = make_builtin("arctan-sector", {lo, hi});
  CHECK(f->value(v2(0, 1))[0] == 0.0);
  CHECK(f->value(v2(0, -1))[0] == 0.0);
  CHECK(f->value(v2(-1, -1))[0] == -1.0);
  const double mid = 0.25 * std::numbers::pi;
  CHECK(f->value(v2(std::cos(mid), std::sin(mid)))[0] == doctest::Approx((hi - mid) * (mid - lo)));
  // x < 0, y >= 0 uses arctan(y/x) in (-π/2, 0].
  const double a = std::atan(2.0 / -1.0);
  CHECK(f->value(v2(-1, 2))[0] == doctest::Approx((hi - a) * (a - lo)));
  CHECK(f->value(v2(-1, 0))[0] == doctest::Approx((hi - 0) * (0 - lo)));
  CHECK_THROWS_AS(make_builtin("arctan-sector", {1.0, 0.5}), Error);
}

TEST_CASE("finite differences match analytic Jacobians within 1e-5 relative") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (const auto& name : builtin_names()) {
    const auto f = make_builtin(name);
    REQUIRE(f->has_analytic_jacobian());
    for (int i = 0; i < 40; ++i) {
      Vector x(static_cast<Eigen::Index>(f->input_dim()));
      for (auto& c : x) c = u(rng);
      if (!f->differentiable_at(x)) continue;
      if (name == "sin-inv-x" || name == "x3-sin-inv-x") x = x.cwiseAbs().array() + 0.5;
      const Matrix a = f->jacobian(x);
      const Matrix d = finite_difference_jacobian(*f, x);
      CHECK((a - d).norm() <= 1e-5 * std::max(1.0, a.norm()));
    }
  }
}

TEST_CASE("linear maps and stacking") {
  Matrix a(2, 2);
  a << 1, 2, 3, 4;
  const auto f = make_linear(a, v2(1, -1));
  CHECK(f->value(v2(1, 1)) == v2(4, 6));
  CHECK(f->jacobian(v2(0, 0)) == a);
  const auto s = stack_maps("s", {make_builtin("saddle-x2-y2"), make_builtin("saddle-x2-y3")});
  CHECK(s->output_dim() == 2);
  CHECK(s->value(v2(1, 2)) == make_builtin("vector-pair-saddle")->value(v2(1, 2)));
  CHECK(s->jacobian(v2(1, 2)).isApprox(make_builtin("vector-pair-saddle")->jacobian(v2(1, 2))));
  CHECK_THROWS_AS(make_builtin("nope"), Error);
}
