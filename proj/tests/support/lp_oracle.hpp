#ifndef DIRPARETO_TESTS_LP_ORACLE_HPP
#define DIRPARETO_TESTS_LP_ORACLE_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <optional>
#include <vector>

#include "dirpareto/lp.hpp"

namespace oracle {

using Rational = boost::multiprecision::cpp_rational;
using RVec = std::vector<Rational>;

struct RRow {
  RVec a;
  Rational b;
};

inline Rational to_rational(double v) {
  const double r = std::round(v);
  if (r != v) throw std::invalid_argument("oracle expects integer data");
  return Rational(static_cast<long long>(r));
}

// Solves the square system M x = rhs; nullopt when singular.
inline std::optional<RVec> solve_square(std::vector<RVec> m, RVec rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(m[p], m[c]);
    std::swap(rhs[p], rhs[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      const Rational f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
      rhs[r] -= f * rhs[c];
    }
  }
  RVec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / m[i][i];
  return x;
}

// Basis of {v : row . v = 0 for every row}.
inline std::vector<RVec> null_space(std::vector<RVec> rows, std::size_t n) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    const Rational inv = 1 / rows[r][c];
    for (auto& v : rows[r]) v *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const Rational f = rows[i][c];
      for (std::size_t k = 0; k < n; ++k) rows[i][k] -= f * rows[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<RVec> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
    RVec v(n, Rational(0));
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -rows[i][free];
    basis.push_back(v);
  }
  return basis;
}

/// Exact feasibility of an integer-data LP by enumerating candidate vertices.
/// Lineality directions are removed by requiring orthogonality to them, so a
/// nonempty polyhedron always has a vertex.
inline bool feasible(const dirpareto::multipliers::LPProblem& p) {
  const std::size_t n = p.num_vars;
  std::vector<RRow> ineq;
  std::vector<RRow> eq;
  auto convert = [&](const dirpareto::multipliers::LinearConstraint& c) {
    RRow row;
    for (Eigen::Index j = 0; j < c.coeffs.size(); ++j) row.a.push_back(to_rational(c.coeffs[j]));
    row.b = to_rational(c.rhs);
    return row;
  };
  for (const auto& c : p.at_least) ineq.push_back(convert(c));
  for (const auto& c : p.equal) eq.push_back(convert(c));
  for (std::size_t j = 0; j < n; ++j) {
    if (!p.nonnegative.empty() && p.nonnegative[j]) {
      RRow row{RVec(n, Rational(0)), Rational(0)};
      row.a[j] = 1;
      ineq.push_back(row);
    }
  }

  std::vector<RVec> all;
  for (const auto& r : ineq) all.push_back(r.a);
  for (const auto& r : eq) all.push_back(r.a);
  for (const auto& v : null_space(all, n)) eq.push_back({v, Rational(0)});

  std::vector<RRow> cand = eq;
  cand.insert(cand.end(), ineq.begin(), ineq.end());
  const std::size_t m = cand.size();
  auto check = [&](const RVec& x) {
    auto dot = [&](const RVec& a) {
      Rational s = 0;
      for (std::size_t j = 0; j < n; ++j) s += a[j] * x[j];
      return s;
    };
    for (const auto& r : eq) {
      if (dot(r.a) != r.b) return false;
    }
    for (const auto& r : ineq) {
      if (dot(r.a) < r.b) return false;
    }
    return true;
  };

  std::vector<std::size_t> idx(n);
  // Enumerate n-subsets of the candidate rows.
  std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == n) {
      std::vector<RVec> mat;
      RVec rhs;
      for (std::size_t i : idx) {
        mat.push_back(cand[i].a);
        rhs.push_back(cand[i].b);
      }
      auto x = solve_square(mat, rhs);
      return x.has_value() && check(*x);
    }
    for (std::size_t i = start; i < m; ++i) {
      idx[depth] = i;
      if (rec(i + 1, depth + 1)) return true;
    }
    return false;
  };
  return rec(0, 0);
}

}  // namespace oracle

#endif  // DIRPARETO_TESTS_LP_ORACLE_HPP
