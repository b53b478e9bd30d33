#include <cmath>
#include <numbers>

#include "doctest.h"
#include "dirpareto/expression.hpp"

using dirpareto::Vector;
using dirpareto::cli::parse_expression;

namespace {

Vector v2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

double at(const char* text, const Vector& x) { return parse_expression(text).evaluate(x); }

}  // namespace

TEST_CASE("gallery formulas") {
  CHECK(at("x0^2 - x1^2", v2(0, 0)) == 0.0);
  CHECK(at("x0^2 - x1^2", v2(0, 1)) == -1.0);
  CHECK(at("x0^2 - x1^3", v2(0, -1)) == 1.0);
  CHECK(at("sin(1/x0)", Vector::Constant(1, 2 / std::numbers::pi)) == doctest::Approx(1.0));
}

TEST_CASE("precedence and associativity") {
  const Vector z = Vector::Zero(1);
  CHECK(at("-2^2", z) == -4.0);
  CHECK(at("2^3^2", z) == 512.0);
  CHECK(at("8 - 3 - 2", z) == 3.0);
  CHECK(at("8 / 4 / 2", z) == 1.0);
  CHECK(at("1 + 2 * 3", z) == 7.0);
  CHECK(at("(1 + 2) * 3", z) == 9.0);
  CHECK(at("2^-1", z) == 0.5);
  CHECK(at("1 < 2 && 2 <= 2 || 0", z) == 1.0);
  CHECK(at("!(1 > 2)", z) == 1.0);
  CHECK(at("1 != 1", z) == 0.0);
}

TEST_CASE("functions and constants") {
  const Vector x = v2(1.0, -1.0);
  CHECK(at("atan2(x1, x0)", x) == doctest::Approx(-std::numbers::pi / 4));
  CHECK(at("atan(1)", x) == doctest::Approx(std::numbers::pi / 4));
  CHECK(at("abs(x1) + sqrt(4)", x) == 3.0);
  CHECK(at("cos(pi)", x) == doctest::Approx(-1.0));
  CHECK(at("1e-3 * 2", x) == doctest::Approx(2e-3));
}

TEST_CASE("piecewise") {
  const char* f = "piecewise(x0 == 0 -> 0, x0 < 0 && x1 < 0 -> -1, otherwise -> atan(x1/x0))";
  CHECK(at(f, v2(0, 3)) == 0.0);
  CHECK(at(f, v2(-1, -1)) == -1.0);
  CHECK(at(f, v2(1, 1)) == doctest::Approx(std::numbers::pi / 4));
  CHECK_THROWS_AS(at("piecewise(x0 > 0 -> 1)", v2(-1, 0)), dirpareto::Error);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(at("1/x0", v2(0, 0)), dirpareto::Error);
  CHECK_THROWS_AS(at("sqrt(x0)", v2(-1, 0)), dirpareto::Error);
  CHECK_THROWS_AS(at("x0^0.5", v2(-1, 0)), dirpareto::Error);
  CHECK(at("x0^0.5", v2(4, 0)) == doctest::Approx(2.0));
  try {
    at("atan(x1/x0)", v2(0, 1));
    FAIL("expected a domain error");
  } catch (const dirpareto::Error& e) {
    CHECK(e.code() == dirpareto::ErrorCode::kDomain);
  }
}

TEST_CASE("syntax errors carry position and expectations") {
  try {
    parse_expression("x0 + * 2");
    FAIL("expected a parse error");
  } catch (const dirpareto::Error& e) {
    CHECK(e.code() == dirpareto::ErrorCode::kParse);
    const std::string msg = e.what();
    CHECK(msg.find("position 5") != std::string::npos);
    CHECK(msg.find("number") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_expression("foo(1)"), dirpareto::Error);
  CHECK_THROWS_AS(parse_expression("(x0"), dirpareto::Error);
  CHECK_THROWS_AS(parse_expression("x0 x1"), dirpareto::Error);
}

TEST_CASE("named variables and arity") {
  const auto e = parse_expression("2 + 2*cos(t)", {"t"});
  CHECK(e.evaluate(Vector::Zero(1)) == 4.0);
  CHECK(parse_expression("x3 + 1").num_vars() == 4);
  CHECK_THROWS_AS(parse_expression("x3").evaluate(Vector::Zero(2)), dirpareto::Error);
}

TEST_CASE("expression maps use finite differences") {
  const auto f = dirpareto::cli::make_expression_map("f", 2, {"x0^2 - x1^3", "x0*x1"});
  const auto j = f->jacobian(v2(1.0, 2.0));
  CHECK(j(0, 0) == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(j(0, 1) == doctest::Approx(-12.0).epsilon(1e-6));
  CHECK(j(1, 0) == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(j(1, 1) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK_THROWS_AS(dirpareto::cli::make_expression_map("g", 1, {"x1"}), dirpareto::Error);
}
