#pragma once

#include "polyset/lp.hpp"

#include <vector>

namespace polyset {

/// {z : A z <= b, E z = f}. Either block may be empty.
struct HRep {
  int dim = 0;
  Mat A{0, 0};
  Vec b{0};
  Mat E{0, 0};
  Vec f{0};

  int num_ineq() const { return static_cast<int>(A.rows()); }
  int num_eq() const { return static_cast<int>(E.rows()); }

  static HRep universe(int dim);
  /// Canonical inconsistent system 0^T z <= -1.
  static HRep empty_set(int dim);
};

/// conv(points) + cone(rays) + span(lines); empty iff points is empty.
/// Rays and lines are primitive integer vectors.
struct VRep {
  int dim = 0;
  std::vector<Vec> points;
  std::vector<Vec> rays;
  std::vector<Vec> lines;

  bool empty() const { return points.empty(); }
};

struct NormalEntry {
  Vec normal;        // primitive integer vector
  Rational support;  // sup over the set of normal^T z
  bool affine_pair;  // row belongs to the affine-hull inequality pair
};

/// Minimal inequality description: facet rows of the (fattened) set plus,
/// for lower-dimensional sets, the affine-hull pair rows.
struct NormalSystem {
  std::vector<NormalEntry> entries;

  bool satisfied_by(const Vec& z) const;
};

/// Double description cone in R^dim: span(lin) + cone(rays), refined by
/// cutting with halfspaces {a^T z <= 0} or hyperplanes {a^T z = 0}.
/// Starts as the whole space. Rays stay extreme modulo the lineality space;
/// adjacency is decided by the algebraic rank test on tight constraints.
class DDCone {
 public:
  explicit DDCone(int dim);
  void cut(const Vec& a, bool is_equality);

  const std::vector<Vec>& lineality() const { return lin_; }
  const std::vector<Vec>& rays() const { return rays_; }

 private:
  bool adjacent(const Vec& r1, const Vec& r2) const;

  int dim_;
  std::vector<Vec> lin_;
  std::vector<Vec> rays_;
  std::vector<Vec> inserted_;  // constraint rows processed so far
  std::vector<bool> inserted_eq_;
};

VRep h_to_v(const HRep& h);
HRep v_to_h(const VRep& v);

/// Minimal equation system of the affine hull: aff = {z : E z = f} with
/// independent rows; also returns the dimension of the set.
struct AffineHull {
  Mat E{0, 0};
  Vec f{0};
  int dim = 0;
};
AffineHull affine_hull(const VRep& v);

/// The rows of E (primitive, rhs scaled along) plus the single aggregated
/// row -(sum of rows) with rhs -(sum of rhs): a minimal inequality
/// representation of {z : E z = f}.
NormalSystem affine_hull_ineq(const Mat& e, const Vec& f);

/// Facet normals with exact support values; for lower-dimensional sets the
/// facets of the set fattened by (aff)^perp together with the affine-hull
/// inequality pair.
NormalSystem min_outer_normals(const VRep& v);

HRep recession_cone(const HRep& h);

bool contains_point(const HRep& h, const Vec& z);
bool contains_point(const VRep& v, const Vec& z);

/// Membership of a direction in the recession cone cone(rays)+span(lines).
bool recession_contains(const VRep& v, const Vec& direction);

bool is_subset(const VRep& q, const HRep& p);
bool is_subset(const VRep& q, const VRep& p);

VRep remove_redundancy(const VRep& v);

VRep project_drop(const VRep& v, const std::vector<int>& keep);

/// Decided by a phase-1 LP.
bool hrep_nonempty(const HRep& h);

/// Exact V-representation of the image W = {proj * u : u feasible for
/// region} for 1- or 2-dimensional images. `recession` must be the exact
/// recession cone of W (rays/lines, primitive). Vertices are enumerated by
/// support probing with two-stage lexicographic LPs and chord refinement;
/// the region must be feasible.
VRep enumerate_projection(const LPProblem& region, const Mat& proj, const VRep& recession);

/// Canonical generator form of cone(rays)+span(lines): hidden lineality
/// moved into the line block, lines reduced to a basis, redundant rays
/// dropped. The single point 0 is attached.
VRep canonicalize_cone(const VRep& generators);

/// Exact set equality via mutual containment of generators.
bool same_set(const VRep& a, const VRep& b);

}  // namespace polyset
