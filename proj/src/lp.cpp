#include "dirpareto/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dirpareto::multipliers {

void LPProblem::set_nonnegative(std::size_t j) {
  if (nonnegative.empty()) nonnegative.assign(num_vars, false);
  nonnegative.at(j) = true;
}

namespace {

// Column layout of the standard-form tableau:
//   [structural (free vars split in two) | slacks | artificials | rhs]
class Tableau {
 public:
  explicit Tableau(const LPProblem& p) : problem_(p) {
    const std::size_t n = p.num_vars;
    for (const auto& c : p.at_least) require_dim(n, c.coeffs.size(), "LP row");
    for (const auto& c : p.equal) require_dim(n, c.coeffs.size(), "LP row");
    if (!p.nonnegative.empty()) require_dim(n, p.nonnegative.size(), "LP sign flags");

    for (std::size_t j = 0; j < n; ++j) {
      pos_col_.push_back(num_struct_++);
      const bool nonneg = !p.nonnegative.empty() && p.nonnegative[j];
      neg_col_.push_back(nonneg ? -1 : static_cast<long>(num_struct_++));
    }
    rows_ = p.at_least.size() + p.equal.size();
    num_slack_ = p.at_least.size();
    art_begin_ = num_struct_ + num_slack_;
    cols_ = art_begin_ + rows_;
    t_ = Matrix::Zero(static_cast<Eigen::Index>(rows_ + 1),
                      static_cast<Eigen::Index>(cols_ + 1));
    basis_.assign(rows_, 0);

    std::size_t r = 0;
    auto load = [&](const LinearConstraint& c, long slack) {
      if (!c.coeffs.allFinite() || !std::isfinite(c.rhs)) {
        throw Error(ErrorCode::kInvalidArgument, "LP coefficients must be finite");
      }
      for (std::size_t j = 0; j < n; ++j) {
        t_(row(r), col(pos_col_[j])) = c.coeffs[static_cast<Eigen::Index>(j)];
        if (neg_col_[j] >= 0) {
          t_(row(r), col(static_cast<std::size_t>(neg_col_[j]))) =
              -c.coeffs[static_cast<Eigen::Index>(j)];
        }
      }
      if (slack >= 0) t_(row(r), col(static_cast<std::size_t>(slack))) = -1.0;
      t_(row(r), col(cols_)) = c.rhs;
      const double scale = t_.row(row(r)).head(col(num_struct_)).cwiseAbs().maxCoeff();
      if (scale > 0.0) t_.row(row(r)) /= scale;
      if (t_(row(r), col(cols_)) < 0.0) t_.row(row(r)) *= -1.0;
      t_(row(r), col(art_begin_ + r)) = 1.0;
      basis_[r] = art_begin_ + r;
      ++r;
    };
    for (std::size_t i = 0; i < p.at_least.size(); ++i) {
      load(p.at_least[i], static_cast<long>(num_struct_ + i));
    }
    for (const auto& c : p.equal) load(c, -1);
  }

  LPSolution solve() {
    LPSolution out;
    // Phase 1: minimize the sum of artificials.
    for (std::size_t j = 0; j < art_begin_; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < rows_; ++i) s += t_(row(i), col(j));
      t_(row(rows_), col(j)) = -s;
    }
    double rhs_sum = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) rhs_sum += t_(row(i), col(cols_));
    t_(row(rows_), col(cols_)) = -rhs_sum;

    if (!iterate(cols_, out.pivots)) {
      throw Error(ErrorCode::kNumerical, "unbounded phase-1 LP (malformed input)");
    }
    out.phase1_residual = std::max(0.0, -t_(row(rows_), col(cols_)));
    if (out.phase1_residual > kFeasibilityTol) {
      out.status = LPStatus::kInfeasible;
      return out;
    }
    drive_out_artificials(out.pivots);

    out.status = LPStatus::kFeasible;
    if (problem_.minimize) {
      const Vector& c = *problem_.minimize;
      require_dim(problem_.num_vars, c.size(), "LP objective");
      Vector cost = Vector::Zero(static_cast<Eigen::Index>(cols_));
      for (std::size_t j = 0; j < problem_.num_vars; ++j) {
        cost[col(pos_col_[j])] = c[static_cast<Eigen::Index>(j)];
        if (neg_col_[j] >= 0) cost[neg_col_[j]] = -c[static_cast<Eigen::Index>(j)];
      }
      for (std::size_t j = 0; j < cols_; ++j) {
        double r = cost[col(j)];
        for (std::size_t i = 0; i < rows_; ++i) r -= cost[col(basis_[i])] * t_(row(i), col(j));
        t_(row(rows_), col(j)) = r;
      }
      double z = 0.0;
      for (std::size_t i = 0; i < rows_; ++i) z += cost[col(basis_[i])] * t_(row(i), col(cols_));
      t_(row(rows_), col(cols_)) = -z;
      if (!iterate(art_begin_, out.pivots)) out.status = LPStatus::kUnbounded;
    }
    out.point = extract();
    if (problem_.minimize) out.objective = problem_.minimize->dot(out.point);
    return out;
  }

 private:
  static Eigen::Index row(std::size_t i) { return static_cast<Eigen::Index>(i); }
  static Eigen::Index col(std::size_t j) { return static_cast<Eigen::Index>(j); }

  // Runs Bland pivots over columns [0, allowed). Returns false when unbounded.
  bool iterate(std::size_t allowed, int& pivots) {
    const int cap = 20000 + 200 * static_cast<int>(rows_ + cols_);
    for (int it = 0; it < cap; ++it) {
      std::size_t enter = allowed;
      for (std::size_t j = 0; j < allowed; ++j) {
        if (t_(row(rows_), col(j)) < -kPivotTol) {
          enter = j;
          break;
        }
      }
      if (enter == allowed) return true;
      std::size_t leave = rows_;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < rows_; ++i) {
        const double a = t_(row(i), col(enter));
        if (a <= kPivotTol) continue;
        const double ratio = t_(row(i), col(cols_)) / a;
        if (leave == rows_ || ratio < best - 1e-12) {
          best = ratio;
          leave = i;
        } else if (ratio <= best + 1e-12 && basis_[i] < basis_[leave]) {
          leave = i;
        }
      }
      if (leave == rows_) return false;
      pivot(leave, enter);
      ++pivots;
    }
    throw Error(ErrorCode::kNumerical, "simplex iteration limit reached");
  }

  void pivot(std::size_t r, std::size_t c) {
    t_.row(row(r)) /= t_(row(r), col(c));
    for (std::size_t i = 0; i <= rows_; ++i) {
      if (i == r) continue;
      const double f = t_(row(i), col(c));
      if (f != 0.0) t_.row(row(i)) -= f * t_.row(row(r));
    }
    basis_[r] = c;
  }

  void drive_out_artificials(int& pivots) {
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] < art_begin_) continue;
      std::size_t best = art_begin_;
      double mag = 1e-9;
      for (std::size_t j = 0; j < art_begin_; ++j) {
        if (std::abs(t_(row(i), col(j))) > mag) {
          mag = std::abs(t_(row(i), col(j)));
          best = j;
        }
      }
      // A row with no structural entry is redundant; its artificial stays at 0.
      if (best < art_begin_) {
        pivot(i, best);
        ++pivots;
      }
    }
  }

  Vector extract() const {
    Vector x = Vector::Zero(static_cast<Eigen::Index>(cols_));
    for (std::size_t i = 0; i < rows_; ++i) x[col(basis_[i])] = t_(row(i), col(cols_));
    Vector v(static_cast<Eigen::Index>(problem_.num_vars));
    for (std::size_t j = 0; j < problem_.num_vars; ++j) {
      double value = x[col(pos_col_[j])];
      if (neg_col_[j] >= 0) value -= x[neg_col_[j]];
      v[static_cast<Eigen::Index>(j)] = value;
    }
    return v;
  }

  const LPProblem& problem_;
  std::vector<std::size_t> pos_col_;
  std::vector<long> neg_col_;
  std::size_t num_struct_ = 0;
  std::size_t num_slack_ = 0;
  std::size_t rows_ = 0;
  std::size_t art_begin_ = 0;
  std::size_t cols_ = 0;
  Matrix t_;
  std::vector<std::size_t> basis_;
};

}  // namespace

LPSolution solve_lp(const LPProblem& problem) {
  if (problem.num_vars == 0) {
    throw Error(ErrorCode::kInvalidArgument, "LP needs at least one variable");
  }
  Tableau tableau(problem);
  return tableau.solve();
}

std::optional<Vector> lp_feasible(const LPProblem& problem) {
  LPProblem feas = problem;
  feas.minimize.reset();
  LPSolution s = solve_lp(feas);
  if (s.status != LPStatus::kFeasible) return std::nullopt;
  return s.point;
}

}  // namespace dirpareto::multipliers
