#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dirpareto/commands.hpp"
#include "dirpareto/gallery.hpp"
#include "dirpareto/multipliers.hpp"
#include "dirpareto/scalarize.hpp"
#include "dirpareto/tangent.hpp"
#include "gerstewitz_oracle.hpp"
#include "lp_oracle.hpp"
#include "random_lp.hpp"

using dirpareto::Matrix;
using dirpareto::Vector;
using namespace dirpareto;
using geometry::DirectionSet;
using geometry::HalfspaceCone;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << what << "; ";
    pass = pass && ok;
  }
};

Vector v2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

Vector v1(double a) { return Vector::Constant(1, a); }

Vector random_vector(std::mt19937_64& rng, Eigen::Index n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vector v(n);
  for (auto& c : v) c = u(rng);
  return v;
}

Vector random_unit(std::mt19937_64& rng, Eigen::Index n) {
  Vector v;
  do {
    v = random_vector(rng, n, -1, 1);
  } while (v.norm() < 0.1);
  return v.normalized();
}

// AC1: verdicts at radius 0.5, 21 levels, 64 rays.
Outcome ac1() {
  Outcome o;
  struct Expect {
    const char* example;
    std::size_t run;
    const char* verdict;
    std::size_t finite_directions;  // 0 = full circle
  };
  const std::vector<Expect> table = {
      {"saddle-x2-y2", 0, "certified_on_grid", 2},  {"saddle-x2-y2", 1, "refuted", 0},
      {"saddle-x2-y3", 0, "certified_on_grid", 2},  {"saddle-x2-y3", 1, "certified_on_grid", 1},
      {"sin-inv-x", 0, "refuted", 1},               {"sin-inv-x", 1, "refuted", 1},
      {"x3-sin-inv-x", 0, "refuted", 1},            {"x3-sin-inv-x", 1, "refuted", 1},
      {"arctan-sector", 0, "certified_on_grid", 128},
      {"vector-2x-x", 0, "certified_on_grid", 1},   {"vector-2x-x", 1, "refuted", 2},
      {"set-curve-halfplane", 0, "certified_on_grid", 64},
      {"set-curve-halfplane", 1, "refuted", 0},
  };
  cli::RunOptions opts;
  opts.radius = 0.5;
  opts.levels = 21;
  opts.rays = 64;
  int matched = 0;
  for (const auto& e : table) {
    const auto ex = cli::gallery_example(e.example);
    if (e.run >= ex.runs.size()) {
      o.require(false, std::string(e.example) + ": missing run");
      continue;
    }
    const auto& run = ex.runs[e.run];
    const auto L = run.problem.L;
    const bool shape = L && (e.finite_directions == 0
                                 ? L->kind == cli::DirectionSpec::Kind::kConeSection &&
                                       L->vectors.empty()
                                 : L->kind == cli::DirectionSpec::Kind::kFinite &&
                                       L->vectors.size() == e.finite_directions);
    o.require(shape, std::string(e.example) + ": unexpected direction set");
    const auto r = cli::run_command(run.command, run.problem, opts);
    o.require(r.verdict == e.verdict,
              std::string(e.example) + " run " + std::to_string(e.run) + ": got " + r.verdict);
    if (r.verdict == e.verdict) ++matched;
  }
  // K = cone conv{(1,0),(1,1)} for vector-2x-x.
  const auto K = cli::gallery_example("vector-2x-x").runs[0].problem.ordering_cone();
  o.require(geometry::contains(K, v2(1, 0)) && geometry::contains(K, v2(1, 1)) &&
                !geometry::contains(K, v2(0, 1)) && !geometry::contains(K, v2(1, -0.01)),
            "vector-2x-x: wrong ordering cone");
  o.detail << matched << "/" << table.size() << " verdicts";
  return o;
}

// AC2: cardioid strict inclusion.
Outcome ac2() {
  Outcome o;
  const auto A = cli::cardioid_region();
  const Vector u = v2(-1, 0);
  const auto restricted =
      tangent::tangent_membership_sampled(A, v2(0, 0), DirectionSet::finite(2, {u}), u);
  const auto S = DirectionSet::full_sphere(2);
  const auto plain = tangent::tangent_membership_sampled(A, v2(0, 0), S, u);
  o.require(restricted.status == tangent::TangentStatus::kNonmember, "restricted query not nonmember");
  o.require(plain.status == tangent::TangentStatus::kMember, "unrestricted query not member");
  o.require(!restricted.evidence.empty() && !plain.evidence.empty(), "missing evidence");
  // Level 0 allows u_k = 0, so x̄ itself may be a hit; the verdict rests on the trailing misses.
  const auto& ev = restricted.evidence;
  o.require(ev.size() == 25, "restricted schedule is not 25 levels");
  for (std::size_t k = 1; k < ev.size(); ++k) o.require(!ev[k].hit, "hit past the first level");
  for (const auto& e : ev) {
    o.require(!e.hit || contains(A, Vector(e.t * e.u_k)), "recorded hit outside the set");
  }
  for (const auto& e : plain.evidence) {
    o.require(e.hit && contains(A, Vector(e.t * e.u_k)) && (e.u_k - u).norm() <= e.eps_k + 1e-12,
              "bad member evidence");
  }
  // The same verdicts through the command layer, with evidence in the report.
  const auto r = cli::run_example("cardioid-tangent");
  o.require(r.report["reproduced"] == true, "cardioid-tangent example not reproduced");
  o.detail << "nonmember wrt {(-1,0)} over " << restricted.evidence.size()
           << " levels; member wrt the circle with " << plain.evidence.size() << " hits";
  return o;
}

// AC3: Gerstewitz functional against bisection plus its structural properties.
Outcome ac3() {
  Outcome o;
  Vector e3(3);
  e3 << 1, 1, 1;
  Vector r3(3);
  r3 << 0.5, 0, 1;
  const std::vector<scalarize::ScalarizationContext> ctxs = {
      {HalfspaceCone(2, {v2(0, 1), v2(1, -1)}), v2(2, 1)},
      {HalfspaceCone(3, {Vector::Unit(3, 0), Vector::Unit(3, 1), r3}), e3},
  };
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unit(0, 1);
  int samples = 0;
  double worst = 0.0;
  for (std::size_t c = 0; c < ctxs.size(); ++c) {
    const auto& ctx = ctxs[c];
    const auto n = static_cast<Eigen::Index>(ctx.K().dim());
    for (int i = 0; i < 500; ++i, ++samples) {
      const Vector y = random_vector(rng, n, -5, 5);
      const double s = scalarize::gerstewitz_value(ctx, y);
      const double ref = oracle::gerstewitz_bisection(ctx.K(), ctx.e(), y);
      worst = std::max(worst, std::abs(s - ref));
      o.require(std::abs(s - ref) <= 1e-7, "value differs from bisection");

      const double scale = 1.0 + y.norm();
      const double lam = s + 4 * (unit(rng) - 0.5);
      if (std::abs(lam - s) > 1e-9) {
        const bool in = geometry::contains(ctx.K(), Vector(lam * ctx.e() - y), false, 0.0);
        o.require(in == (s <= lam), "level-set characterization");
      }
      const double t = 6 * (unit(rng) - 0.5);
      o.require(std::abs(scalarize::gerstewitz_value(ctx, Vector(y + t * ctx.e())) - (s + t)) <=
                    1e-9 * (scale + std::abs(t)),
                "translation property");

      const Vector z = random_vector(rng, n, -5, 5);
      const double sz = scalarize::gerstewitz_value(ctx, z);
      o.require(scalarize::gerstewitz_value(ctx, Vector(y + z)) <= s + sz + 1e-9 * (scale + z.norm()),
                "subadditivity");
      const double a = 0.1 + 3 * unit(rng);
      o.require(std::abs(scalarize::gerstewitz_value(ctx, Vector(a * y)) - a * s) <= 1e-9 * a * scale,
                "positive homogeneity");

      Vector k;
      do {
        k = random_vector(rng, n, 0, 3);
      } while (!geometry::contains(ctx.K(), k, false, 0.0));
      o.require(s <= scalarize::gerstewitz_value(ctx, Vector(y + k)) + 1e-9 * scale, "K-monotonicity");

      const auto cert = scalarize::gerstewitz_subdiff(ctx, y);
      o.require(std::abs(cert.witness.dot(ctx.e()) - 1.0) <= 1e-9, "subgradient normalization");
      o.require(std::abs(cert.witness.dot(y) - s) <= 1e-9 * scale, "subgradient value");
      o.require(sz >= s + cert.witness.dot(z - y) - 1e-9 * (scale + z.norm()),
                "subgradient inequality");
    }
  }
  o.detail << samples << " samples, max |s - oracle| = " << worst;
  return o;
}

// Box-constrained feasibility by vertex enumeration: {|p - x|_inf <= r} ∩ {a_i.p >= b_i}.
bool box_meets(const Vector& x, double r, const std::vector<Vector>& rows,
               const std::vector<double>& offs) {
  const auto n = x.size();
  std::vector<Vector> A;
  std::vector<double> b;
  for (Eigen::Index k = 0; k < n; ++k) {
    A.push_back(Vector::Unit(n, k));
    b.push_back(x[k] - r);
    A.push_back(-Vector::Unit(n, k));
    b.push_back(-x[k] - r);
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    A.push_back(rows[i]);
    b.push_back(offs[i]);
  }
  const std::size_t m = A.size();
  std::vector<std::size_t> pick(static_cast<std::size_t>(n));
  std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t depth, std::size_t from) {
    if (depth == pick.size()) {
      Matrix M(n, n);
      Vector rhs(n);
      for (Eigen::Index k = 0; k < n; ++k) {
        M.row(k) = A[pick[static_cast<std::size_t>(k)]].transpose();
        rhs[k] = b[pick[static_cast<std::size_t>(k)]];
      }
      Eigen::FullPivLU<Matrix> lu(M);
      if (!lu.isInvertible()) return false;
      const Vector p = lu.solve(rhs);
      for (std::size_t i = 0; i < m; ++i) {
        if (A[i].dot(p) < b[i] - 1e-11 * (1 + std::abs(b[i]))) return false;
      }
      return true;
    }
    for (std::size_t i = from; i < m; ++i) {
      pick[depth] = i;
      if (rec(depth + 1, i + 1)) return true;
    }
    return false;
  };
  return rec(0, 0);
}

double linf_distance_oracle(const Vector& x, const std::vector<Vector>& rows,
                            const std::vector<double>& offs) {
  double lo = 0.0;
  double hi = 1.0;
  while (!box_meets(x, hi, rows, offs)) hi *= 2.0;
  if (box_meets(x, 0.0, rows, offs)) return 0.0;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (box_meets(x, mid, rows, offs) ? hi : lo) = mid;
  }
  return hi;
}

// AC4: minimal-time function.
Outcome ac4() {
  Outcome o;
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> unit(0, 1);
  int finite = 0;
  int infinite = 0;
  for (int i = 0; i < 200; ++i) {
    std::vector<Vector> dirs;
    for (int k = 0; k < 1 + i % 4; ++k) dirs.push_back(random_unit(rng, 2));
    const auto L = DirectionSet::finite(2, dirs);
    const Vector x = random_vector(rng, 2, -3, 3);
    if (i % 2 == 0) {
      const Vector u = x + (0.1 + 3 * unit(rng)) * dirs[static_cast<std::size_t>(i) % dirs.size()];
      const auto r = mintime::minimal_time(L, x, mintime::Target{mintime::Point{u}});
      o.require(r.value == (u - x).norm(), "on-ray point: value is not |u - x|");
      ++finite;
    } else {
      const Vector u = random_vector(rng, 2, -3, 3);
      const auto r = mintime::minimal_time(L, x, mintime::Target{mintime::Point{u}});
      bool on_ray = false;
      for (const auto& l : dirs) on_ray = on_ray || ((u - x).normalized() - l).norm() <= 1e-6;
      o.require(on_ray ? r.value == (u - x).norm() : r.value == mintime::kInfinity,
                "off-ray point: value is not infinite");
      ++infinite;
    }
    // Cone sections: membership by the defining inequalities.
    const std::vector<Vector> crow = {random_unit(rng, 2), random_unit(rng, 2)};
    const Vector u = random_vector(rng, 2, -3, 3);
    double margin = 1e300;
    for (const auto& c : crow) margin = std::min(margin, c.dot(u - x));
    if (std::abs(margin) < 1e-9) continue;
    const auto sec = DirectionSet::section(HalfspaceCone(2, crow));
    const auto r = mintime::minimal_time(sec, x, mintime::Target{mintime::Point{u}});
    o.require(margin > 0 ? r.value == (u - x).norm() : r.value == mintime::kInfinity,
              "section point target");
  }

  int polys = 0;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i, ++polys) {
    const int n = 2 + i % 2;
    const Vector p = random_vector(rng, n, -2, 2);
    std::vector<Vector> rows;
    std::vector<double> offs;
    for (int k = 0; k < 1 + i % 3; ++k) {
      const Vector a = random_vector(rng, n, -1, 1);
      rows.push_back(a);
      offs.push_back(a.dot(p) - unit(rng));
    }
    const Vector x = random_vector(rng, n, -4, 4);
    const auto r = mintime::minimal_time(DirectionSet::full_sphere(static_cast<std::size_t>(n)), x,
                                         mintime::Target{mintime::Polyhedron{rows, offs}},
                                         mintime::Norm::kLinf);
    const double ref = linf_distance_oracle(x, rows, offs);
    worst = std::max(worst, std::abs(r.value - ref));
    o.require(!r.approximate, "linf minimal time flagged approximate");
    o.require(std::abs(r.value - ref) <= 1e-6, "linf distance differs from oracle");
  }

  int mono = 0;
  for (int i = 0; i < 100; ++i, ++mono) {
    const Vector x = random_vector(rng, 2, -3, 3);
    const Vector a = random_unit(rng, 2);
    const mintime::Target t{mintime::Polyhedron{{a}, {a.dot(x) + 0.5 + unit(rng)}}};
    std::vector<Vector> big;
    for (int k = 0; k < 6; ++k) big.push_back(random_unit(rng, 2));
    const std::vector<Vector> small(big.begin(), big.begin() + 1 + i % 5);
    const double t_small = mintime::minimal_time(DirectionSet::finite(2, small), x, t).value;
    const double t_big = mintime::minimal_time(DirectionSet::finite(2, big), x, t).value;
    o.require(t_big <= t_small * (1 + 1e-12) || t_small == mintime::kInfinity,
              "finite L: larger L gave a larger time");
    const Vector c1 = random_unit(rng, 2);
    const Vector c2 = random_unit(rng, 2);
    const double s_small =
        mintime::minimal_time(DirectionSet::section(HalfspaceCone(2, {c1, c2})), x, t,
                              mintime::Norm::kLinf)
            .value;
    const double s_big =
        mintime::minimal_time(DirectionSet::section(HalfspaceCone(2, {c1})), x, t,
                              mintime::Norm::kLinf)
            .value;
    o.require(s_big <= s_small + 1e-9 || s_small == mintime::kInfinity,
              "section L: larger L gave a larger time");
  }
  o.detail << finite << " finite / " << infinite << " random point targets, " << polys
           << " polyhedra (max err " << worst << "), " << mono << " monotonicity pairs";
  return o;
}

// AC5: multipliers.
Outcome ac5() {
  Outcome o;
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> u(-1, 1);
  const auto plus = DirectionSet::finite(1, {v1(1)});
  int agree = 0;
  for (int i = 0; i < 100; ++i) {
    double d = u(rng);
    if (i % 10 == 0) d = 0.0;
    if (i % 10 == 1) d = -1e-12;
    if (i % 10 == 2) d = -1e-6;
    const double b = u(rng);
    const double c = u(rng);
    auto f = make_map(
        "poly", 1, 1,
        [=](const Vector& x) { return v1(d * x[0] + b * x[0] * x[0] + c * std::sin(x[0]) * x[0] * x[0]); },
        [=](const Vector& x) {
          const double s = x[0];
          return Matrix::Constant(1, 1, d + 2 * b * s + c * (std::cos(s) * s * s + 2 * s * std::sin(s)));
        });
    const certify::Problem p{f, HalfspaceCone::orthant(1), plus, std::monostate{}, v1(0), GridSpec{}};
    const bool exists = multipliers::kkt_multipliers(p, v1(1)).has_value();
    o.require(exists == (d >= -1e-9), "1-D reduction fails for f'(0) = " + std::to_string(d));
    if (exists == (d >= -1e-9)) ++agree;
  }

  const certify::Problem hand{make_builtin("identity-1d"), HalfspaceCone::orthant(1),
                              DirectionSet::finite(1, {v1(1), v1(-1)}),
                              certify::IneqEq{{make_linear(Matrix::Constant(1, 1, -1.0))}, {}},
                              v1(0), GridSpec{}};
  const auto m = multipliers::kkt_multipliers(hand, v1(1));
  o.require(m && std::abs(m->lambda[0] - 1.0) <= 1e-9 && std::abs(m->ystar[0] - 1.0) <= 1e-9,
            "hand example: λ = y* = 1 not reproduced");

  int smooth = 0;
  for (const auto& n : cli::gallery_names()) {
    for (const auto& run : cli::gallery_example(n).runs) {
      if (run.command != "certify") continue;
      const auto p = run.problem.to_problem();
      if (!p.f->differentiable_at(p.xbar)) continue;
      if (certify::certify_directional_min(p, false).verdict != certify::Verdict::kCertifiedOnGrid) {
        continue;
      }
      ++smooth;
      o.require(multipliers::fritz_john(p).has_value(), n + ": certified without Fritz John multipliers");
    }
  }
  o.require(smooth >= 5, "too few smooth certified gallery problems");
  o.detail << agree << "/100 scalar problems, hand example ok, " << smooth
           << " smooth certified gallery problems with multipliers";
  return o;
}

// AC6: T_U(D) ∩ ∇φ⁻¹ T_B(E) ⊆ T_B(D ∩ φ⁻¹(E)) on integer data.
Outcome ac6() {
  Outcome o;
  std::mt19937_64 rng(66);
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<int> slack(0, 2);
  auto ivec = [&](Eigen::Index n) {
    Vector v(n);
    for (auto& c : v) c = coef(rng);
    return v;
  };
  auto active_ok = [](const std::vector<Vector>& rows, const std::vector<double>& offs,
                      const Vector& at, const Vector& u) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].dot(at) == offs[i] && rows[i].dot(u) < 0) return false;
    }
    return true;
  };
  int triples = 0;
  long members = 0;
  while (triples < 50) {
    const Eigen::Index n = 2 + triples % 2;
    const Eigen::Index k = 2 + (triples / 2) % 2;
    const Vector xbar = ivec(n);
    std::vector<Vector> drows;
    std::vector<double> doffs;
    for (int i = 0; i < 3; ++i) {
      Vector d = ivec(n);
      if (d.isZero()) d = Vector::Unit(n, 0);
      drows.push_back(d);
      doffs.push_back(d.dot(xbar) - (i == 0 ? 0 : slack(rng)));
    }
    Matrix Phi(k, n);
    for (Eigen::Index r = 0; r < k; ++r) Phi.row(r) = ivec(n).transpose();
    const Vector bias = ivec(k);
    const Vector ybar = Phi * xbar + bias;
    std::vector<Vector> erows;
    std::vector<double> eoffs;
    for (int j = 0; j < 2; ++j) {
      Vector c = ivec(k);
      if (c.isZero()) c = Vector::Unit(k, 0);
      erows.push_back(c);
      eoffs.push_back(c.dot(ybar) - (j == 0 ? 0 : slack(rng)));
    }
    std::vector<Vector> crow = drows;
    std::vector<double> coff = doffs;
    for (std::size_t j = 0; j < erows.size(); ++j) {
      Vector r = Phi.transpose() * erows[j];
      if (r.isZero()) continue;
      crow.push_back(r);
      coff.push_back(eoffs[j] - erows[j].dot(bias));
    }
    const tangent::PolyhedralSet D(drows, doffs);
    const tangent::PolyhedralSet E(erows, eoffs);
    const tangent::PolyhedralSet C(crow, coff);
    const auto TD = tangent::tangent_polyhedral(D, xbar);
    const auto TE = tangent::tangent_polyhedral(E, ybar);
    const auto TC = tangent::tangent_polyhedral(C, xbar);
    ++triples;
    const int span = 3;
    std::vector<int> idx(static_cast<std::size_t>(n), -span);
    while (true) {
      Vector u(n);
      for (Eigen::Index c = 0; c < n; ++c) u[c] = idx[static_cast<std::size_t>(c)];
      const Vector du = Phi * u;
      const bool left = geometry::contains(TD, u) && geometry::contains(TE, du);
      const bool left_exact = active_ok(drows, doffs, xbar, u) && active_ok(erows, eoffs, ybar, du);
      o.require(left == left_exact, "library tangent cone disagrees with the integer check");
      if (left) {
        ++members;
        o.require(geometry::contains(TC, u), "left-side member outside the right side");
        o.require(active_ok(crow, coff, xbar, u), "left-side member fails the exact right side");
      }
      std::size_t c = 0;
      while (c < idx.size() && ++idx[c] > span) idx[c++] = -span;
      if (c == idx.size()) break;
    }
  }
  o.require(members > 0, "no left-side members sampled");
  o.detail << triples << " triples, " << members << " left-side members checked";
  return o;
}

// AC7: simplex feasibility against rational vertex enumeration.
Outcome ac7() {
  Outcome o;
  std::mt19937_64 rng(777);
  int disagreements = 0;
  int feasible = 0;
  for (int i = 0; i < 500; ++i) {
    const auto p = oracle::random_lp(rng);
    const bool mine = multipliers::lp_feasible(p).has_value();
    const bool ref = oracle::feasible(p);
    if (mine != ref) ++disagreements;
    if (ref) ++feasible;
  }
  o.require(disagreements == 0, std::to_string(disagreements) + " disagreements");
  o.detail << "500 LPs (" << feasible << " feasible), " << disagreements << " disagreements";
  return o;
}

// AC8: byte-identical gallery output.
Outcome ac8() {
  Outcome o;
  auto run_all = [] {
    std::string out;
    for (const auto& n : cli::gallery_names()) {
      const auto r = cli::run_example(n);
      out += cli::dump_report(r.report) + r.csv + r.svg;
    }
    return out;
  };
  const auto a = run_all();
  const auto b = run_all();
  o.require(a == b, "gallery output differs between runs");
  o.detail << cli::gallery_names().size() << " examples, " << a.size() << " bytes identical";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"AC1 gallery reproduction", ac1},
      {"AC2 cardioid tangent strict inclusion", ac2},
      {"AC3 Gerstewitz suite", ac3},
      {"AC4 minimal-time suite", ac4},
      {"AC5 KKT / Fritz John", ac5},
      {"AC6 tangent inclusion on polyhedral triples", ac6},
      {"AC7 simplex vs rational vertex enumeration", ac7},
      {"AC8 determinism", ac8},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.str().c_str());
    if (!o.pass) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
