#pragma once

#include "polyset/polyhedron.hpp"

#include <memory>
#include <optional>

namespace polyset {

/// Set-valued mapping F: R^n =| R^q with convex polyhedral graph in
/// R^{n+q}. Either representation of the graph may be given; the other is
/// derived lazily when a computation needs it. All data immutable after
/// construction; caches are internally synchronized.
class PolyMap {
 public:
  PolyMap(int n, int q, HRep graph);
  PolyMap(int n, int q, VRep graph);

  int domain_dim() const { return n_; }
  int image_dim() const { return q_; }
  bool h_primary() const { return h_primary_; }

  const HRep& graph_h() const;
  const VRep& graph_v() const;
  bool graph_nonempty() const;

  /// G(0): the common recession cone of the nonempty values (cone V-rep
  /// with the single point 0).
  const VRep& value_recession() const;

 private:
  struct Cache;
  int n_, q_;
  bool h_primary_;
  std::shared_ptr<Cache> cache_;
};

struct OrderCone {
  int q = 0;
  VRep generators;  // canonical cone form: point 0, rays, lines

  static OrderCone from_generators(int q, std::vector<Vec> rays, std::vector<Vec> lines);
  static OrderCone zero(int q);
  static OrderCone orthant(int q);

  bool is_zero() const { return generators.rays.empty() && generators.lines.empty(); }
  bool contains(const Vec& y) const;
  bool full_dimensional() const;
};

struct SetOptProblem {
  PolyMap F;
  OrderCone C;
  bool is_standard_form = false;
};

enum class SolveStatus { Infeasible, NoSolution, Solved };

struct MinimizerStats {
  long alg1_lp_count = 0;
  long alg1_updates = 0;
  long alg4_lp_count = 0;
  long alg4_passes = 0;
  long alg4_updates = 0;
};

struct MinimizerCertificate {
  Vec covered_y;   // point or direction of the upper image this run covered
  bool is_direction = false;
  Vec minimizer;
  NormalSystem final_normals;   // describes F(x)+C of the stabilized mapping
  std::vector<Vec> lift_lines;  // y-space lines added by the affine-hull prelude
  std::vector<Vec> xbar_trail;  // successive x values along the run
  MinimizerStats stats;
};

struct Solution {
  SolveStatus status = SolveStatus::Infeasible;
  std::vector<Vec> minimizing_points;       // S-bar
  std::vector<Vec> minimizing_directions;   // S-hat, primitive
  std::vector<MinimizerCertificate> certificates;
  VRep upper_image;
  std::vector<Vec> upper_directions;  // directions of the upper image outside C
  long total_lp_solves = 0;
  double wall_seconds = 0.0;
};

struct SolveOptions {
  int jobs = 1;
  bool collect_trails = false;
};

/// gr G = recession cone of gr F.
PolyMap recession_map(const PolyMap& f);

/// F_std = F + C, C_std = C + G(0); upper image, minimizers and solutions
/// carry over unchanged between the problem and its standard form.
SetOptProblem standard_form(const SetOptProblem& p);

/// Natural ordering cone K = {y : exists x with y in G(x), 0 in G(x)} of a
/// standard-form problem, as a cone V-rep.
VRep natural_cone(const SetOptProblem& p);

/// The linear program max w^T y over y in F(x)+C subject to
/// F(xbar)+C being contained in F(x)+C. Variable layout: x (n), y (q),
/// then multiplier blocks.
LPProblem build_inclusion_lp(const PolyMap& f, const OrderCone& c, const Vec& w, const Vec& xbar);

/// V-representation of F(xbar)+C.
VRep value_set(const PolyMap& f, const OrderCone& c, const Vec& xbar);

/// Minimizer computation: some x with ybar in F(x)+C such that no
/// F(x')+C strictly contains F(x)+C; nullopt when some internal LP lacks
/// an optimal solution (the problem has no solution). When the cone lacks
/// interior the affine-hull stabilization runs first.
std::optional<Vec> compute_minimizer(const PolyMap& f, const OrderCone& c, const Vec& ybar,
                                     MinimizerCertificate* certificate = nullptr);

/// Affine-hull stabilization: some x with ybar in F(x)+C whose value has
/// maximal dimension among enclosing values, together with the mapping
/// fattened by the orthogonal complement of that affine hull.
std::optional<std::pair<PolyMap, Vec>> stabilize_affine_hull(const PolyMap& f, const OrderCone& c,
                                                             const Vec& ybar);

struct UpperImage {
  VRep vrep;                   // reduced V-rep of C + union of values
  std::vector<Vec> directions; // generators of the recession outside C
};
UpperImage upper_image(const SetOptProblem& p);

/// True iff the problem is feasible and the homogeneous minimizer
/// computation at 0 succeeds; requires standard form.
bool check_existence(const SetOptProblem& p);

/// Bounded solver: one minimizer per vertex of the upper image.
Solution solve_bounded(const SetOptProblem& p, const SolveOptions& opts = {});

/// General solver: standardizes, tests existence, then covers the points
/// and the directions of the upper image by minimizing points/directions.
Solution solve(const SetOptProblem& p, const SolveOptions& opts = {});

}  // namespace polyset
