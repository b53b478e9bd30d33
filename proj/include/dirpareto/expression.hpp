#ifndef DIRPARETO_EXPRESSION_HPP
#define DIRPARETO_EXPRESSION_HPP

#include <memory>
#include <string>
#include <vector>

#include "dirpareto/core.hpp"
#include "dirpareto/maps.hpp"

namespace dirpareto::cli {

struct Node;

/// Parsed arithmetic expression over variables x0..x{n-1} (plus any extra
/// names declared at parse time). Comparisons and logical operators yield
/// 1 or 0.
class Expression {
 public:
  Expression() = default;
  Expression(std::shared_ptr<const Node> root, std::string text, std::size_t num_vars);

  /// Throws Error(kDomain) where the expression is undefined.
  double evaluate(const Vector& vars) const;

  const std::string& text() const { return text_; }
  /// One more than the highest variable index referenced.
  std::size_t num_vars() const { return num_vars_; }

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
  std::size_t num_vars_ = 0;
};

/// Precedence, high to low: ^ (right), unary - and !, * /, + -, comparisons,
/// &&, ||. `names` gives extra variable names bound to x0, x1, ... in order.
/// Throws Error(kParse) with the offending position and the expected tokens.
Expression parse_expression(const std::string& text, const std::vector<std::string>& names = {});

/// One expression per output coordinate; Jacobian by central differences.
MapPtr make_expression_map(std::string name, std::size_t input_dim,
                           const std::vector<std::string>& components);

}  // namespace dirpareto::cli

#endif  // DIRPARETO_EXPRESSION_HPP
