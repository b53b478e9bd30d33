#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "dirpareto/gallery.hpp"
#include "dirpareto/problem_io.hpp"

using dirpareto::Vector;
using namespace dirpareto;
using namespace dirpareto::cli;

namespace {

ErrorCode parse_error_code(const std::string& text) {
  try {
    (void)parse_problem(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error for: " << text);
  return ErrorCode::kInvalidArgument;
}

constexpr const char* kHandWritten = R"({
  "schema_version": 1,
  "description": "x on x >= 0",
  "dim": 2,
  "objective": {"expressions": ["x0 + x1", "x0^2 - x1"]},
  "K": [[1, 0], [0, 1]],
  "L": {"finite": [[1, 0], [0, 1]]},
  "constraint": {"mu": ["-x0"], "nu": ["x0 - x1"]},
  "point": [0, 0],
  "grid": {"radius": 0.25, "levels": 7, "rays": 16, "seed": 9},
  "weak": true,
  "norm": "linf",
  "target": {"polyhedron": {"rows": [[1, 1]], "offsets": [1]}},
  "e": [1, 1]
})";

}  // namespace

TEST_CASE("hand-written problem file") {
  const auto p = parse_problem(kHandWritten);
  CHECK(p.description == "x on x >= 0");
  CHECK(p.dim == 2);
  CHECK(p.output_dim() == 2);
  CHECK(p.grid.radius == 0.25);
  CHECK(p.grid.levels == 7);
  CHECK(p.grid.rays_per_level == 16);
  CHECK(p.grid.seed == 9);
  CHECK(p.weak);
  CHECK(p.norm == mintime::Norm::kLinf);
  CHECK(p.tol == 1e-7);
  REQUIRE(p.e);
  CHECK((*p.e)[1] == 1.0);

  const auto prob = p.to_problem();
  Vector x(2);
  x << 0.5, 2.0;
  const Vector fx = prob.f->value(x);
  CHECK(fx[0] == 2.5);
  CHECK(fx[1] == doctest::Approx(-1.75));
  const auto* c = std::get_if<certify::IneqEq>(&prob.constraint);
  REQUIRE(c);
  CHECK(c->mu.size() == 1);
  CHECK(c->nu.size() == 1);
  CHECK(c->nu[0]->value(x)[0] == -1.5);
  CHECK(prob.L.is_finite());

  const auto j = to_json(p);
  CHECK(to_json(from_json(j)) == j);
  CHECK(j["norm"] == "linf");
  CHECK(j["target"]["polyhedron"]["offsets"][0] == 1.0);
}

TEST_CASE("every gallery problem survives a JSON round trip") {
  int runs = 0;
  for (const auto& n : gallery_names()) {
    for (const auto& run : gallery_example(n).runs) {
      const Json j = to_json(run.problem);
      const auto back = from_json(j);
      CHECK_MESSAGE(to_json(back) == j, n << " / " << run.label);
      const auto text = j.dump();
      CHECK(to_json(parse_problem(text)).dump() == text);
      ++runs;
    }
  }
  CHECK(runs == 16);
}

TEST_CASE("set kinds round trip") {
  const auto ball = SetSpec::ball(Vector::Zero(2), 1.5);
  const auto h = SetSpec::polyhedron({Vector::Ones(2)}, {0.0});
  const auto imp = SetSpec::implicit(2, "x0^2 - x1", 0.0);
  const auto all = SetSpec::set_union({SetSpec::set_intersection({ball, h}), imp});
  const Json j = set_to_json(all);
  CHECK(set_to_json(set_from_json(j)) == j);
  CHECK(set_to_json(set_from_json(set_to_json(cardioid_region()))) == set_to_json(cardioid_region()));
  CHECK(set_to_json(set_from_json(set_to_json(curve_halfplane_set()))) ==
        set_to_json(curve_halfplane_set()));
}

TEST_CASE("malformed problem files") {
  CHECK(parse_error_code("{") == ErrorCode::kParse);
  CHECK(parse_error_code("[]") == ErrorCode::kParse);
  CHECK(parse_error_code(R"({"dim": 1})") == ErrorCode::kParse);
  CHECK(parse_error_code(R"({"schema_version": 2, "dim": 1})") == ErrorCode::kParse);
  CHECK(parse_error_code(R"({"schema_version": 1})") == ErrorCode::kParse);
  CHECK(parse_error_code(R"({"schema_version": 1, "dim": "two"})") == ErrorCode::kParse);
  CHECK(parse_error_code(R"({"schema_version": 1, "dim": 1, "objective": {}})") ==
        ErrorCode::kParse);
  CHECK(parse_error_code(R"({"schema_version": 1, "dim": 1, "set": {"kind": "blob"}})") ==
        ErrorCode::kParse);
  CHECK(parse_error_code(R"({"schema_version": 1, "dim": 1, "L": {"finite": [["a"]]}})") ==
        ErrorCode::kParse);
  CHECK(parse_error_code(R"({"schema_version": 1, "dim": 1, "norm": "l7"})") == ErrorCode::kParse);
}

TEST_CASE("inconsistent problems fail validation") {
  CHECK_THROWS_AS(parse_problem(R"({"schema_version": 1, "dim": 2,
    "objective": {"builtin": "saddle-x2-y2"}, "L": {"finite": [[1, 0]]}, "point": [0]})"),
                  Error);
  CHECK_THROWS_AS(parse_problem(R"({"schema_version": 1, "dim": 2,
    "objective": {"builtin": "saddle-x2-y2"}, "L": {"finite": [[1, 0, 0]]}, "point": [0, 0]})"),
                  Error);
  // Infeasible point: μ(x̄) = 1 > 0.
  auto p = parse_problem(R"({"schema_version": 1, "dim": 2,
    "objective": {"builtin": "saddle-x2-y2"}, "L": {"finite": [[1, 0]]}, "point": [1, 0],
    "constraint": {"mu": ["x0"]}})");
  CHECK_THROWS_AS(p.to_problem(), Error);
}

TEST_CASE("loading from disk") {
  const auto path = std::filesystem::temp_directory_path() / "dirpareto_io_test.json";
  {
    std::ofstream out(path);
    out << kHandWritten;
  }
  CHECK(to_json(load_problem(path.string())) == to_json(parse_problem(kHandWritten)));
  std::filesystem::remove(path);
  try {
    (void)load_problem(path.string());
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIo);
  }
}
