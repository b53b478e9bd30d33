#include <cmath>
#include <random>

#include "doctest.h"
#include "dirpareto/mintime.hpp"

using dirpareto::Matrix;
using dirpareto::Vector;
using namespace dirpareto;
using namespace dirpareto::mintime;
using geometry::DirectionSet;
using geometry::HalfspaceCone;

namespace {

Vector v2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

Vector v1(double a) { return Vector::Constant(1, a); }

DirectionSet plus1() { return DirectionSet::finite(1, {v1(1)}); }
DirectionSet minus1() { return DirectionSet::finite(1, {v1(-1)}); }

}  // namespace

TEST_CASE("point targets") {
  const auto L = DirectionSet::finite(2, {v2(1, 0)});
  CHECK(minimal_time(L, v2(0, 0), Target{Point{v2(3, 0)}}).value == 3.0);
  CHECK(minimal_time(L, v2(0, 0), Target{Point{v2(0, 3)}}).value == kInfinity);
  const auto r = minimal_time(L, v2(0, 0), Target{FinitePoints{{v2(0, 3), v2(5, 0), v2(2, 0)}}});
  CHECK(r.value == 2.0);
  REQUIRE(r.displacement);
  CHECK(*r.displacement == v2(2, 0));
}

TEST_CASE("polyhedral targets") {
  const Target half{Polyhedron{{v2(1, 0)}, {2.0}}};
  CHECK(minimal_time(DirectionSet::full_sphere(2), v2(0, 0), half, Norm::kLinf).value ==
        doctest::Approx(2.0));
  CHECK(minimal_time(DirectionSet::finite(2, {v2(0, 1)}), v2(0, 0), half).value == kInfinity);
  CHECK(minimal_time(DirectionSet::finite(2, {v2(1, 0)}), v2(0, 0), half).value ==
        doctest::Approx(2.0));
  const auto l2 = minimal_time(DirectionSet::full_sphere(2), v2(0, 0), half, Norm::kL2);
  CHECK(l2.approximate);
  CHECK(l2.value >= 2.0 - 1e-12);
  CHECK(l2.value <= 2.0 * (1 + 1e-5));
  CHECK_THROWS_AS(minimal_time(plus1(), v2(0, 0), half), Error);
  CHECK_THROWS_AS(minimal_time(plus1(), v1(0), Target{FinitePoints{{}}}), Error);
}

TEST_CASE("lower bound: minimal time dominates the distance") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2, 2);
  const auto L = DirectionSet::finite(2, {v2(1, 0), v2(0, 1), v2(-0.6, 0.8)});
  for (int i = 0; i < 100; ++i) {
    const Vector x = v2(u(rng), u(rng));
    const Vector a = v2(u(rng), u(rng));
    const double b = a.dot(v2(u(rng), u(rng)));
    const Target t{Polyhedron{{a}, {b}}};
    for (auto norm : {Norm::kL2, Norm::kLinf}) {
      const double T = minimal_time(L, x, t, norm).value;
      const double gap = std::max(0.0, b - a.dot(x));
      const double dist = norm == Norm::kL2 ? gap / a.norm() : gap / a.lpNorm<1>();
      CHECK(T >= dist - 1e-9);
    }
  }
}

TEST_CASE("calmness examples") {
  GridSpec g;
  const auto id = make_builtin("identity-1d");
  auto r = calmness_ratio(*id, v1(0), plus1(), minus1(), g);
  CHECK(r.supremum_ratio == doctest::Approx(1.0));
  CHECK(r.empirical);
  CHECK(r.samples_used == g.levels);

  const auto twice = make_linear(Matrix::Constant(1, 1, 2.0));
  r = calmness_ratio(*twice, v1(0), plus1(), minus1(), g);
  CHECK(r.supremum_ratio == doctest::Approx(2.0));
  CHECK(std::abs(r.witness_value[0]) == doctest::Approx(2.0 * std::abs(r.witness_x[0])));

  const auto sq = make_map("sq", 1, 1, [](const Vector& x) { return Vector(x.array().square()); });
  g.radius = 0.1;
  r = calmness_ratio(*sq, v1(0), plus1(), minus1(), g);
  CHECK(r.supremum_ratio == doctest::Approx(0.1));
  CHECK(r.witness_x[0] == doctest::Approx(0.1));

  // With M = {+1} the image never returns along M: the ratio is infinite.
  r = calmness_ratio(*id, v1(0), plus1(), plus1(), g);
  CHECK(r.infinite);

  // No admissible sample: sup over the empty set is 0.
  r = subregularity_ratio(*id, v1(0), {v1(0)}, plus1(), plus1(), {v1(-1), v1(-0.5)});
  CHECK(r.no_admissible_point);
  CHECK(r.supremum_ratio == 0.0);
}

TEST_CASE("calmness of the inverse equals the subregularity ratio on matched grids") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-2, 2);
  const auto S = DirectionSet::full_sphere(2);
  GridSpec g;
  g.levels = 6;
  for (int i = 0; i < 20; ++i) {
    Matrix a(2, 2);
    a << u(rng), u(rng), u(rng), u(rng);
    if (std::abs(a.determinant()) < 0.2) continue;
    const Matrix ainv = a.inverse();
    const auto f = make_linear(a);
    const auto finv = make_linear(ainv);
    const Vector xbar = v2(u(rng), u(rng));
    const Vector ybar = a * xbar;
    const auto calm = calmness_ratio(*finv, ybar, S, S, g);
    std::vector<Vector> xs;
    for (const auto& y : grid_points(ybar, S, g)) xs.push_back(ainv * y);
    const auto sub = subregularity_ratio(*f, ybar, {xbar}, S, S, xs);
    CHECK(std::abs(calm.supremum_ratio - sub.supremum_ratio) <= 0.05 * calm.supremum_ratio);
    // Both approach the operator norm of A^-1 from below.
    const double op = Eigen::JacobiSVD<Matrix>(ainv).singularValues()[0];
    CHECK(calm.supremum_ratio <= op * (1 + 1e-9));
    CHECK(calm.supremum_ratio >= 0.95 * op);
  }
}

TEST_CASE("grid points come level by level") {
  GridSpec g{0.5, 3, 4, 0};
  const auto pts = grid_points(v2(1, 1), DirectionSet::finite(2, {v2(1, 0), v2(0, 1)}), g);
  REQUIRE(pts.size() == 6);
  CHECK(pts[0] == v2(1.5, 1));
  CHECK(pts[1] == v2(1, 1.5));
  CHECK(pts[2] == v2(1.25, 1));
  CHECK(pts[5] == v2(1, 1.125));
}
