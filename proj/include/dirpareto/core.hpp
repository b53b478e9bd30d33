#ifndef DIRPARETO_CORE_HPP
#define DIRPARETO_CORE_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace dirpareto {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Absolute tolerance applied to every linear inequality membership test.
inline constexpr double kMembershipTol = 1e-9;

/// Feasibility tolerance for inequality/equality constraint functions.
inline constexpr double kConstraintTol = 1e-8;

enum class ErrorCode {
  kInvalidArgument = 1,
  kDimensionMismatch = 2,
  kParse = 3,
  kDomain = 4,
  kNumerical = 5,
  kIo = 6,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline void require_dim(std::size_t expected, std::size_t actual,
                        const std::string& what) {
  if (expected != actual) {
    throw Error(ErrorCode::kDimensionMismatch,
                what + ": expected dimension " +
                    std::to_string(expected) + ", got " +
                    std::to_string(actual));
  }
}

inline bool all_finite(const Vector& v) { return v.allFinite(); }

}  // namespace dirpareto

#endif  // DIRPARETO_CORE_HPP
