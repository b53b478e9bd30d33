#ifndef DIRPARETO_TANGENT_HPP
#define DIRPARETO_TANGENT_HPP

#include <optional>
#include <string>
#include <vector>

#include "dirpareto/geometry.hpp"
#include "dirpareto/maps.hpp"
#include "dirpareto/sets.hpp"

namespace dirpareto::tangent {

/// {x : rows[i] . x >= offsets[i]}, checked nonempty at construction.
class PolyhedralSet {
 public:
  PolyhedralSet(std::vector<Vector> rows, std::vector<double> offsets);

  std::size_t dim() const { return dim_; }
  const std::vector<Vector>& rows() const { return rows_; }
  const std::vector<double>& offsets() const { return offsets_; }
  const Vector& witness() const { return witness_; }

  bool contains(const Vector& x, double tol = kMembershipTol) const;
  /// Indices i with rows[i] . x = offsets[i] within tol.
  std::vector<std::size_t> active(const Vector& x, double tol = kMembershipTol) const;
  SetSpec to_set() const;

 private:
  std::size_t dim_ = 0;
  std::vector<Vector> rows_;
  std::vector<double> offsets_;
  Vector witness_;
};

/// Exact tangent cone of a polyhedron wrt L: the active-constraint cone
/// intersected with cone L. For a finite L the cone is the union of the
/// feasible rays, listed in `rays`.
struct TangentCone {
  geometry::HalfspaceCone cone;
  std::optional<std::vector<Vector>> rays;

  bool contains(const Vector& u, double tol = kMembershipTol) const;
};

TangentCone tangent_polyhedral(const PolyhedralSet& A, const Vector& xbar,
                               const geometry::DirectionSet& L);

/// Plain Bouligand cone (L = whole sphere) of a polyhedron; equals the
/// Ursescu cone for polyhedra.
geometry::HalfspaceCone tangent_polyhedral(const PolyhedralSet& A, const Vector& xbar);

struct TSchedule {
  double radius = 0.5;
  int levels = 25;
  int max_perturbations = 1000;
  int confirm_levels = 3;

  double t(int k) const;
  double eps(int k, double unorm) const;
};

enum class TangentStatus { kMember, kNonmember, kInconclusive };

const char* to_string(TangentStatus s);

struct LevelEvidence {
  int k = 0;
  double t_k = 0.0;
  double eps_k = 0.0;
  int perturbations = 0;
  bool hit = false;
  double t = 0.0;  // step of the hit
  Vector u_k;      // perturbed direction of the hit
};

struct TangentVerdict {
  TangentStatus status = TangentStatus::kInconclusive;
  std::string reason;
  std::vector<LevelEvidence> evidence;
};

/// Searches x̄ + t u_k in A with u_k in cone L, |u_k - u| <= eps_k, t <= t_k.
/// Member when every level hits; nonmember after `confirm_levels`
/// consecutive levels where the whole sampled neighbourhood misses.
TangentVerdict tangent_membership_sampled(const SetSpec& A, const Vector& xbar,
                                          const geometry::DirectionSet& L, const Vector& u,
                                          const TSchedule& schedule = {});

/// Perturbations v in cone L with |v - u| <= eps, at most `limit` of them.
std::vector<Vector> perturbation_lattice(const geometry::DirectionSet& L, const Vector& u,
                                         double eps, int limit);

/// ∇f(x̄)u, or nothing when L is given and u is outside cone L.
std::optional<Vector> derivative_image(const SmoothMap& f, const Vector& xbar, const Vector& u,
                                       const geometry::DirectionSet* L = nullptr);

}  // namespace dirpareto::tangent

#endif  // DIRPARETO_TANGENT_HPP
