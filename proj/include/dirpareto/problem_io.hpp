#ifndef DIRPARETO_PROBLEM_IO_HPP
#define DIRPARETO_PROBLEM_IO_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dirpareto/certify.hpp"
#include "dirpareto/mintime.hpp"

namespace dirpareto::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

struct ObjectiveSpec {
  std::string builtin;                   // builtin name, or empty
  std::vector<double> params;
  std::vector<std::string> expressions;  // one per output coordinate
};

struct DirectionSpec {
  enum class Kind { kFinite, kConeSection };
  Kind kind = Kind::kFinite;
  std::vector<Vector> vectors;  // directions, or cone rows (none = whole space)

  geometry::DirectionSet build(std::size_t dim) const;
};

struct ConstraintSpec {
  enum class Kind { kNone, kSet, kIneqEq };
  Kind kind = Kind::kNone;
  std::optional<SetSpec> set;
  std::vector<std::string> mu;
  std::vector<std::string> nu;
};

/// Parsed problem file. Fields unused by a command stay empty.
struct ProblemFile {
  std::string description;
  std::size_t dim = 0;
  std::optional<ObjectiveSpec> objective;
  std::optional<std::vector<Vector>> K;  // rows; default orthant
  std::optional<DirectionSpec> L;
  std::optional<DirectionSpec> C;
  ConstraintSpec constraint;
  std::optional<SetSpec> set;  // M for certify-set, A for tangent
  Vector point;
  GridSpec grid;
  bool weak = false;
  mintime::Norm norm = mintime::Norm::kL2;
  double tol = 1e-7;
  std::vector<std::string> g;             // fritz-john constraint map
  std::optional<std::vector<Vector>> Q;   // its cone
  std::vector<Vector> directions;         // tangent u, first-order directions
  std::optional<Vector> e;
  std::optional<Vector> y;
  std::optional<double> ell;
  std::optional<mintime::Target> target;
  std::optional<std::vector<double>> eps_schedule;
  std::optional<std::vector<double>> r_schedule;

  MapPtr objective_map() const;
  std::size_t output_dim() const;
  geometry::HalfspaceCone ordering_cone() const;
  geometry::DirectionSet directions_L() const;
  certify::Constraint build_constraint() const;
  certify::Problem to_problem() const;
};

Json vector_json(const Vector& v);
Json set_to_json(const SetSpec& s);
SetSpec set_from_json(const Json& j);
Json target_to_json(const mintime::Target& t);

Json to_json(const ProblemFile& p);
ProblemFile from_json(const Json& j);
/// Throws Error(kParse) on malformed JSON or a bad schema.
ProblemFile parse_problem(const std::string& text);
ProblemFile load_problem(const std::string& path);

}  // namespace dirpareto::cli

#endif  // DIRPARETO_PROBLEM_IO_HPP
