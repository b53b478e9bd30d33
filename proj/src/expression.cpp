#include "dirpareto/expression.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>

namespace dirpareto::cli {

enum class Op {
  kNumber, kVar, kNeg, kNot, kAdd, kSub, kMul, kDiv, kPow,
  kLt, kLe, kGt, kGe, kEq, kNe, kAnd, kOr,
  kSin, kCos, kAtan, kAtan2, kAbs, kSqrt, kPiecewise,
};

struct Node {
  Op op = Op::kNumber;
  double value = 0.0;
  std::size_t var = 0;
  std::vector<std::shared_ptr<const Node>> args;  // piecewise: cond, expr, cond, expr, ...
};

namespace {

using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Op op, std::vector<NodePtr> args) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->args = std::move(args);
  return n;
}

double ipow(double base, long n) {
  double result = 1.0;
  const bool neg = n < 0;
  unsigned long e = static_cast<unsigned long>(neg ? -n : n);
  while (e > 0) {
    if (e & 1UL) result *= base;
    base *= base;
    e >>= 1U;
  }
  return neg ? 1.0 / result : result;
}

double eval(const Node& n, const Vector& x) {
  auto arg = [&](std::size_t i) { return eval(*n.args[i], x); };
  switch (n.op) {
    case Op::kNumber: return n.value;
    case Op::kVar: return x[static_cast<Eigen::Index>(n.var)];
    case Op::kNeg: return -arg(0);
    case Op::kNot: return arg(0) != 0.0 ? 0.0 : 1.0;
    case Op::kAdd: return arg(0) + arg(1);
    case Op::kSub: return arg(0) - arg(1);
    case Op::kMul: return arg(0) * arg(1);
    case Op::kDiv: {
      const double d = arg(1);
      if (d == 0.0) throw Error(ErrorCode::kDomain, "division by zero");
      return arg(0) / d;
    }
    case Op::kPow: {
      const double b = arg(0);
      const double e = arg(1);
      if (e == std::round(e) && std::abs(e) <= 1e6) {
        if (b == 0.0 && e < 0.0) throw Error(ErrorCode::kDomain, "zero to a negative power");
        return ipow(b, static_cast<long>(e));
      }
      if (b < 0.0) throw Error(ErrorCode::kDomain, "non-integer power of a negative number");
      return std::pow(b, e);
    }
    case Op::kLt: return arg(0) < arg(1) ? 1.0 : 0.0;
    case Op::kLe: return arg(0) <= arg(1) ? 1.0 : 0.0;
    case Op::kGt: return arg(0) > arg(1) ? 1.0 : 0.0;
    case Op::kGe: return arg(0) >= arg(1) ? 1.0 : 0.0;
    case Op::kEq: return arg(0) == arg(1) ? 1.0 : 0.0;
    case Op::kNe: return arg(0) != arg(1) ? 1.0 : 0.0;
    case Op::kAnd: return (arg(0) != 0.0 && arg(1) != 0.0) ? 1.0 : 0.0;
    case Op::kOr: return (arg(0) != 0.0 || arg(1) != 0.0) ? 1.0 : 0.0;
    case Op::kSin: return std::sin(arg(0));
    case Op::kCos: return std::cos(arg(0));
    case Op::kAtan: return std::atan(arg(0));
    case Op::kAtan2: {
      const double y = arg(0);
      const double xx = arg(1);
      if (y == 0.0 && xx == 0.0) throw Error(ErrorCode::kDomain, "atan2(0, 0) is undefined");
      return std::atan2(y, xx);
    }
    case Op::kAbs: return std::abs(arg(0));
    case Op::kSqrt: {
      const double v = arg(0);
      if (v < 0.0) throw Error(ErrorCode::kDomain, "sqrt of a negative number");
      return std::sqrt(v);
    }
    case Op::kPiecewise:
      for (std::size_t i = 0; i + 1 < n.args.size(); i += 2) {
        if (!n.args[i] || arg(i) != 0.0) return arg(i + 1);
      }
      throw Error(ErrorCode::kDomain, "no piecewise branch applies");
  }
  throw Error(ErrorCode::kNumerical, "corrupt expression node");
}

class Parser {
 public:
  Parser(const std::string& text, const std::vector<std::string>& names)
      : text_(text), names_(names) {}

  NodePtr parse() {
    NodePtr root = parse_or();
    skip_ws();
    if (pos_ != text_.size()) fail({"operator", "end of input"});
    return root;
  }

  std::size_t max_var() const { return max_var_; }

 private:
  [[noreturn]] void fail(const std::vector<std::string>& expected) const {
    std::ostringstream msg;
    msg << "parse error at position " << pos_ << ": found ";
    if (pos_ >= text_.size()) {
      msg << "end of input";
    } else {
      msg << "'" << text_[pos_] << "'";
    }
    msg << ", expected one of {";
    for (std::size_t i = 0; i < expected.size(); ++i) msg << (i ? ", " : "") << expected[i];
    msg << "}";
    throw Error(ErrorCode::kParse, msg.str());
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(const std::string& tok) {
    skip_ws();
    if (text_.compare(pos_, tok.size(), tok) != 0) return false;
    pos_ += tok.size();
    return true;
  }

  void expect(const std::string& tok) {
    if (!accept(tok)) fail({"'" + tok + "'"});
  }

  NodePtr parse_or() {
    NodePtr lhs = parse_and();
    while (accept("||")) lhs = make(Op::kOr, {lhs, parse_and()});
    return lhs;
  }

  NodePtr parse_and() {
    NodePtr lhs = parse_cmp();
    while (accept("&&")) lhs = make(Op::kAnd, {lhs, parse_cmp()});
    return lhs;
  }

  NodePtr parse_cmp() {
    NodePtr lhs = parse_add();
    static const std::pair<const char*, Op> ops[] = {
        {"<=", Op::kLe}, {">=", Op::kGe}, {"==", Op::kEq}, {"!=", Op::kNe},
        {"<", Op::kLt},  {">", Op::kGt}};
    skip_ws();
    // "->" belongs to piecewise, not to a comparison.
    for (const auto& [tok, op] : ops) {
      if (accept(tok)) return make(op, {lhs, parse_add()});
    }
    return lhs;
  }

  NodePtr parse_add() {
    NodePtr lhs = parse_mul();
    for (;;) {
      skip_ws();
      if (text_.compare(pos_, 2, "->") == 0) return lhs;
      if (accept("+")) {
        lhs = make(Op::kAdd, {lhs, parse_mul()});
      } else if (accept("-")) {
        lhs = make(Op::kSub, {lhs, parse_mul()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_mul() {
    NodePtr lhs = parse_unary();
    for (;;) {
      if (accept("*")) {
        lhs = make(Op::kMul, {lhs, parse_unary()});
      } else if (accept("/")) {
        lhs = make(Op::kDiv, {lhs, parse_unary()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_unary() {
    skip_ws();
    if (text_.compare(pos_, 2, "!=") != 0 && accept("!")) return make(Op::kNot, {parse_unary()});
    if (accept("-")) return make(Op::kNeg, {parse_unary()});
    if (accept("+")) return parse_unary();
    return parse_pow();
  }

  NodePtr parse_pow() {
    NodePtr base = parse_primary();
    if (accept("^")) return make(Op::kPow, {base, parse_unary()});
    return base;
  }

  NodePtr parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail({"number", "identifier", "'('"});
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    if (accept("(")) {
      NodePtr inner = parse_or();
      expect(")");
      return inner;
    }
    fail({"number", "identifier", "'('"});
  }

  NodePtr parse_number() {
    const char* begin = text_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail({"number"});
    pos_ += static_cast<std::size_t>(end - begin);
    auto n = std::make_shared<Node>();
    n->op = Op::kNumber;
    n->value = v;
    return n;
  }

  NodePtr variable(std::size_t index) {
    auto n = std::make_shared<Node>();
    n->op = Op::kVar;
    n->var = index;
    max_var_ = std::max(max_var_, index + 1);
    return n;
  }

  NodePtr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string id = text_.substr(start, pos_ - start);

    static const std::pair<const char*, Op> unary_fns[] = {
        {"sin", Op::kSin}, {"cos", Op::kCos}, {"atan", Op::kAtan},
        {"abs", Op::kAbs}, {"sqrt", Op::kSqrt}};
    for (const auto& [name, op] : unary_fns) {
      if (id == name) {
        expect("(");
        NodePtr a = parse_or();
        expect(")");
        return make(op, {a});
      }
    }
    if (id == "atan2") {
      expect("(");
      NodePtr y = parse_or();
      expect(",");
      NodePtr x = parse_or();
      expect(")");
      return make(Op::kAtan2, {y, x});
    }
    if (id == "piecewise") return parse_piecewise();
    if (id == "pi") {
      auto n = std::make_shared<Node>();
      n->value = std::numbers::pi;
      return n;
    }
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (id == names_[i]) return variable(i);
    }
    if (id.size() > 1 && id[0] == 'x' &&
        id.find_first_not_of("0123456789", 1) == std::string::npos) {
      return variable(static_cast<std::size_t>(std::stoul(id.substr(1))));
    }
    pos_ = start;
    throw Error(ErrorCode::kParse,
                "unknown identifier '" + id + "' at position " + std::to_string(start));
  }

  NodePtr parse_piecewise() {
    expect("(");
    std::vector<NodePtr> args;
    for (;;) {
      skip_ws();
      const std::size_t save = pos_;
      NodePtr cond;
      if (accept("otherwise")) {
        cond = nullptr;
      } else {
        pos_ = save;
        cond = parse_or();
      }
      expect("->");
      args.push_back(cond);
      args.push_back(parse_or());
      if (!cond) break;
      if (!accept(",")) break;
    }
    expect(")");
    return make(Op::kPiecewise, std::move(args));
  }

  const std::string& text_;
  const std::vector<std::string>& names_;
  std::size_t pos_ = 0;
  std::size_t max_var_ = 0;
};

}  // namespace

Expression::Expression(std::shared_ptr<const Node> root, std::string text, std::size_t num_vars)
    : root_(std::move(root)), text_(std::move(text)), num_vars_(num_vars) {}

double Expression::evaluate(const Vector& vars) const {
  if (!root_) throw Error(ErrorCode::kInvalidArgument, "empty expression");
  if (static_cast<std::size_t>(vars.size()) < num_vars_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "expression '" + text_ + "' needs " + std::to_string(num_vars_) + " variables");
  }
  return eval(*root_, vars);
}

Expression parse_expression(const std::string& text, const std::vector<std::string>& names) {
  Parser p(text, names);
  NodePtr root = p.parse();
  return Expression(root, text, p.max_var());
}

MapPtr make_expression_map(std::string name, std::size_t input_dim,
                           const std::vector<std::string>& components) {
  if (components.empty()) throw Error(ErrorCode::kInvalidArgument, "objective has no components");
  std::vector<Expression> exprs;
  for (const auto& c : components) {
    exprs.push_back(parse_expression(c));
    if (exprs.back().num_vars() > input_dim) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "expression '" + c + "' references a variable beyond x" +
                      std::to_string(input_dim - 1));
    }
  }
  return make_map(std::move(name), input_dim, exprs.size(), [exprs](const Vector& x) {
    Vector y(static_cast<Eigen::Index>(exprs.size()));
    for (std::size_t i = 0; i < exprs.size(); ++i) {
      y[static_cast<Eigen::Index>(i)] = exprs[i].evaluate(x);
    }
    return y;
  });
}

}  // namespace dirpareto::cli
