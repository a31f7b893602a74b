#include "polyset/setopt.hpp"

#include <atomic>
#include <chrono>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

namespace polyset {

namespace {

struct LexLess {
  bool operator()(const Vec& a, const Vec& b) const {
    for (Eigen::Index i = 0; i < a.size() && i < b.size(); ++i) {
      if (a(i) != b(i)) return a(i) < b(i);
    }
    return a.size() < b.size();
  }
};

Vec zero_vec(int d) {
  Vec z(d);
  z.setZero();
  return z;
}

}  // namespace

struct PolyMap::Cache {
  std::mutex mu;
  std::optional<HRep> h;
  std::optional<VRep> v;
  std::optional<VRep> value_rec;
  std::optional<bool> nonempty;
};

PolyMap::PolyMap(int n, int q, HRep graph)
    : n_(n), q_(q), h_primary_(true), cache_(std::make_shared<Cache>()) {
  if (graph.dim != n + q) throw std::invalid_argument("PolyMap: graph dimension mismatch");
  cache_->h = std::move(graph);
}

PolyMap::PolyMap(int n, int q, VRep graph)
    : n_(n), q_(q), h_primary_(false), cache_(std::make_shared<Cache>()) {
  if (graph.dim != n + q) throw std::invalid_argument("PolyMap: graph dimension mismatch");
  cache_->v = std::move(graph);
}

const HRep& PolyMap::graph_h() const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  if (!cache_->h) cache_->h = v_to_h(*cache_->v);
  return *cache_->h;
}

const VRep& PolyMap::graph_v() const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  if (!cache_->v) cache_->v = h_to_v(*cache_->h);
  return *cache_->v;
}

bool PolyMap::graph_nonempty() const {
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    if (cache_->nonempty) return *cache_->nonempty;
  }
  bool result = h_primary_ ? hrep_nonempty(graph_h()) : !graph_v().empty();
  std::lock_guard<std::mutex> lock(cache_->mu);
  cache_->nonempty = result;
  return result;
}

const VRep& PolyMap::value_recession() const {
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    if (cache_->value_rec) return *cache_->value_rec;
  }
  VRep rec;
  rec.dim = q_;
  rec.points.push_back(zero_vec(q_));
  if (h_primary_ || !graph_v().rays.empty() || !graph_v().lines.empty()) {
    HRep cone_h;
    if (h_primary_) {
      cone_h = recession_cone(graph_h());
    } else {
      VRep cone_gens;
      cone_gens.dim = n_ + q_;
      cone_gens.points.push_back(zero_vec(n_ + q_));
      cone_gens.rays = graph_v().rays;
      cone_gens.lines = graph_v().lines;
      cone_h = v_to_h(cone_gens);
    }
    // G(0): slice the graph recession cone at x = 0
    HRep slice = HRep::universe(q_);
    slice.A = cone_h.A.rightCols(q_);
    slice.b = zero_vec(cone_h.num_ineq());
    slice.E = cone_h.E.rightCols(q_);
    slice.f = zero_vec(cone_h.num_eq());
    VRep g0 = h_to_v(slice);
    VRep gens;
    gens.dim = q_;
    gens.rays = g0.rays;
    gens.lines = g0.lines;
    rec = canonicalize_cone(gens);
  }
  std::lock_guard<std::mutex> lock(cache_->mu);
  if (!cache_->value_rec) cache_->value_rec = std::move(rec);
  return *cache_->value_rec;
}

OrderCone OrderCone::from_generators(int q, std::vector<Vec> rays, std::vector<Vec> lines) {
  VRep gens;
  gens.dim = q;
  for (auto& r : rays) {
    if (r.size() != q) throw std::invalid_argument("OrderCone: generator dimension mismatch");
    if (!r.isZero()) gens.rays.push_back(primitive_normalize(r));
  }
  for (auto& l : lines) {
    if (l.size() != q) throw std::invalid_argument("OrderCone: generator dimension mismatch");
    if (!l.isZero()) gens.lines.push_back(primitive_normalize(l));
  }
  OrderCone c;
  c.q = q;
  c.generators = canonicalize_cone(gens);
  return c;
}

OrderCone OrderCone::zero(int q) { return from_generators(q, {}, {}); }

OrderCone OrderCone::orthant(int q) {
  std::vector<Vec> rays;
  for (int i = 0; i < q; ++i) {
    Vec e = zero_vec(q);
    e(i) = 1;
    rays.push_back(e);
  }
  return from_generators(q, std::move(rays), {});
}

bool OrderCone::contains(const Vec& y) const { return recession_contains(generators, y); }

bool OrderCone::full_dimensional() const {
  Mat g(static_cast<int>(generators.rays.size() + generators.lines.size()), q);
  int k = 0;
  for (const auto& r : generators.rays) g.row(k++) = r.transpose();
  for (const auto& l : generators.lines) g.row(k++) = l.transpose();
  return rank(g) == q;
}

namespace {

// The mapping an algorithm works on. The inclusion LPs always use the
// original mapping; the affine-hull stabilization only fixes the normal
// systems, so no lifted copy is carried here.
struct WorkingMap {
  const PolyMap* base;

  int n() const { return base->domain_dim(); }
  int q() const { return base->image_dim(); }
};

// Recession cone of the value sets F(x)+C.
VRep work_recession(const WorkingMap& wm, const OrderCone& c) {
  const VRep& g0 = wm.base->value_recession();
  VRep gens;
  gens.dim = wm.q();
  gens.rays = g0.rays;
  gens.lines = g0.lines;
  for (const auto& r : c.generators.rays) gens.rays.push_back(r);
  for (const auto& l : c.generators.lines) gens.lines.push_back(l);
  VRep canon = canonicalize_cone(gens);
  canon.points.clear();
  return canon;
}

bool cone_gens_full_dim(const VRep& rec, int q) {
  Mat g(static_cast<int>(rec.rays.size() + rec.lines.size()), q);
  int k = 0;
  for (const auto& r : rec.rays) g.row(k++) = r.transpose();
  for (const auto& l : rec.lines) g.row(k++) = l.transpose();
  return rank(g) == q;
}

// Appends one membership block: the target (shared y variables or a fixed
// vector) lies in F(x)+C+span(lift) at the shared x variables.
void add_membership_block(LPBuilder& lb, const WorkingMap& wm, const OrderCone& c,
                          const std::vector<int>& xvars, const std::vector<int>* yvars,
                          const Vec* yfix) {
  const PolyMap& f = *wm.base;
  const int n = f.domain_dim(), q = f.image_dim();
  auto y0 = lb.add_vars(q, VarBound::Free);

  if (f.h_primary()) {
    const HRep& g = f.graph_h();
    for (int i = 0; i < g.num_ineq(); ++i) {
      std::vector<std::pair<int, Rational>> row;
      for (int j = 0; j < n; ++j)
        if (g.A(i, j) != 0) row.emplace_back(xvars[j], g.A(i, j));
      for (int k = 0; k < q; ++k)
        if (g.A(i, n + k) != 0) row.emplace_back(y0[k], g.A(i, n + k));
      lb.add_row(std::move(row), RowSense::LE, g.b(i));
    }
    for (int i = 0; i < g.num_eq(); ++i) {
      std::vector<std::pair<int, Rational>> row;
      for (int j = 0; j < n; ++j)
        if (g.E(i, j) != 0) row.emplace_back(xvars[j], g.E(i, j));
      for (int k = 0; k < q; ++k)
        if (g.E(i, n + k) != 0) row.emplace_back(y0[k], g.E(i, n + k));
      lb.add_row(std::move(row), RowSense::EQ, g.f(i));
    }
  } else {
    const VRep& g = f.graph_v();
    auto lam = lb.add_vars(static_cast<int>(g.points.size()), VarBound::NonNeg);
    auto rho = lb.add_vars(static_cast<int>(g.rays.size()), VarBound::NonNeg);
    auto sig = lb.add_vars(static_cast<int>(g.lines.size()), VarBound::Free);
    for (int j = 0; j < n + q; ++j) {
      std::vector<std::pair<int, Rational>> row;
      for (size_t i = 0; i < g.points.size(); ++i)
        if (g.points[i](j) != 0) row.emplace_back(lam[i], g.points[i](j));
      for (size_t i = 0; i < g.rays.size(); ++i)
        if (g.rays[i](j) != 0) row.emplace_back(rho[i], g.rays[i](j));
      for (size_t i = 0; i < g.lines.size(); ++i)
        if (g.lines[i](j) != 0) row.emplace_back(sig[i], g.lines[i](j));
      row.emplace_back(j < n ? xvars[j] : y0[j - n], Rational(-1));
      lb.add_row(std::move(row), RowSense::EQ, Rational(0));
    }
    std::vector<std::pair<int, Rational>> conv;
    for (int id : lam) conv.emplace_back(id, Rational(1));
    lb.add_row(std::move(conv), RowSense::EQ, Rational(1));
  }

  auto mu = lb.add_vars(static_cast<int>(c.generators.rays.size()), VarBound::NonNeg);
  auto nu = lb.add_vars(static_cast<int>(c.generators.lines.size()), VarBound::Free);
  for (int k = 0; k < q; ++k) {
    std::vector<std::pair<int, Rational>> row;
    row.emplace_back(y0[k], Rational(1));
    for (size_t i = 0; i < mu.size(); ++i)
      if (c.generators.rays[i](k) != 0) row.emplace_back(mu[i], c.generators.rays[i](k));
    for (size_t i = 0; i < nu.size(); ++i)
      if (c.generators.lines[i](k) != 0) row.emplace_back(nu[i], c.generators.lines[i](k));
    if (yvars) {
      row.emplace_back((*yvars)[k], Rational(-1));
      lb.add_row(std::move(row), RowSense::EQ, Rational(0));
    } else {
      lb.add_row(std::move(row), RowSense::EQ, (*yfix)(k));
    }
  }
}

LPProblem make_inclusion_lp(const WorkingMap& wm, const OrderCone& c, const Vec& w,
                            const std::vector<Vec>& value_points) {
  LPBuilder lb;
  auto xvars = lb.add_vars(wm.n(), VarBound::Free);
  auto yvars = lb.add_vars(wm.q(), VarBound::Free);
  for (int k = 0; k < wm.q(); ++k) lb.set_objective(yvars[k], w(k));
  add_membership_block(lb, wm, c, xvars, &yvars, nullptr);
  for (const auto& p : value_points) add_membership_block(lb, wm, c, xvars, nullptr, &p);
  return lb.build();
}

// A feasibility LP for ybar in F(x)+C; the simplex vertex it lands on is
// the deterministic start point.
std::optional<Vec> choose_initial_x(const WorkingMap& wm, const OrderCone& c, const Vec& ybar) {
  LPBuilder lb;
  auto xvars = lb.add_vars(wm.n(), VarBound::Free);
  add_membership_block(lb, wm, c, xvars, nullptr, &ybar);
  LPOutcome o = solve_lp(lb.build());
  if (o.status != LPStatus::Optimal) return std::nullopt;
  return Vec(o.solution.head(wm.n()));
}

// V-representation of F(xbar)+C+span(lift), reduced.
VRep work_value(const WorkingMap& wm, const OrderCone& c, const Vec& xbar) {
  const PolyMap& f = *wm.base;
  const int n = f.domain_dim(), q = f.image_dim();

  if (!f.h_primary() && q <= 2) {
    // exact projection of the multiplier region onto the image plane
    LPBuilder lb;
    const VRep& g = f.graph_v();
    auto lam = lb.add_vars(static_cast<int>(g.points.size()), VarBound::NonNeg);
    auto rho = lb.add_vars(static_cast<int>(g.rays.size()), VarBound::NonNeg);
    auto sig = lb.add_vars(static_cast<int>(g.lines.size()), VarBound::Free);
    auto mu = lb.add_vars(static_cast<int>(c.generators.rays.size()), VarBound::NonNeg);
    auto nu = lb.add_vars(static_cast<int>(c.generators.lines.size()), VarBound::Free);
    for (int j = 0; j < n; ++j) {
      std::vector<std::pair<int, Rational>> row;
      for (size_t i = 0; i < g.points.size(); ++i)
        if (g.points[i](j) != 0) row.emplace_back(lam[i], g.points[i](j));
      for (size_t i = 0; i < g.rays.size(); ++i)
        if (g.rays[i](j) != 0) row.emplace_back(rho[i], g.rays[i](j));
      for (size_t i = 0; i < g.lines.size(); ++i)
        if (g.lines[i](j) != 0) row.emplace_back(sig[i], g.lines[i](j));
      lb.add_row(std::move(row), RowSense::EQ, xbar(j));
    }
    std::vector<std::pair<int, Rational>> conv;
    for (int id : lam) conv.emplace_back(id, Rational(1));
    lb.add_row(std::move(conv), RowSense::EQ, Rational(1));
    LPProblem region = lb.build();

    Mat proj(q, region.num_vars());
    proj.setZero();
    for (int k = 0; k < q; ++k) {
      for (size_t i = 0; i < g.points.size(); ++i) proj(k, lam[i]) = g.points[i](n + k);
      for (size_t i = 0; i < g.rays.size(); ++i) proj(k, rho[i]) = g.rays[i](n + k);
      for (size_t i = 0; i < g.lines.size(); ++i) proj(k, sig[i]) = g.lines[i](n + k);
      for (size_t i = 0; i < mu.size(); ++i) proj(k, mu[i]) = c.generators.rays[i](k);
      for (size_t i = 0; i < nu.size(); ++i) proj(k, nu[i]) = c.generators.lines[i](k);
    }
    return remove_redundancy(enumerate_projection(region, proj, work_recession(wm, c)));
  }

  // slice the graph H-rep at x = xbar
  const HRep& g = f.graph_h();
  std::vector<Vec> ai, ei;
  std::vector<Rational> bi, fi;
  for (int i = 0; i < g.num_ineq(); ++i) {
    Vec ya = g.A.row(i).tail(q).transpose();
    Rational rhs = g.b(i) - g.A.row(i).head(n).dot(xbar);
    if (ya.isZero()) {
      if (rhs < 0) throw std::logic_error("work_value: x outside dom F");
      continue;
    }
    ai.push_back(ya);
    bi.push_back(rhs);
  }
  for (int i = 0; i < g.num_eq(); ++i) {
    Vec ya = g.E.row(i).tail(q).transpose();
    Rational rhs = g.f(i) - g.E.row(i).head(n).dot(xbar);
    if (ya.isZero()) {
      if (rhs != 0) throw std::logic_error("work_value: x outside dom F");
      continue;
    }
    ei.push_back(ya);
    fi.push_back(rhs);
  }
  HRep slice = HRep::universe(q);
  slice.A = Mat(static_cast<int>(ai.size()), q);
  slice.b = Vec(static_cast<int>(ai.size()));
  for (size_t i = 0; i < ai.size(); ++i) {
    slice.A.row(i) = ai[i].transpose();
    slice.b(static_cast<int>(i)) = bi[i];
  }
  slice.E = Mat(static_cast<int>(ei.size()), q);
  slice.f = Vec(static_cast<int>(ei.size()));
  for (size_t i = 0; i < ei.size(); ++i) {
    slice.E.row(i) = ei[i].transpose();
    slice.f(static_cast<int>(i)) = fi[i];
  }
  VRep v = h_to_v(slice);
  if (v.empty()) throw std::logic_error("work_value: x outside dom F");
  for (const auto& r : c.generators.rays) v.rays.push_back(r);
  for (const auto& l : c.generators.lines) v.lines.push_back(l);
  return remove_redundancy(v);
}

// Affine-hull stabilization, run when the working cone has empty interior.
// Returns false when some LP lacks an optimal solution; on success the
// affine-hull complement is installed as the lift.
bool stabilize(WorkingMap& wm, const OrderCone& c, Vec& xbar, MinimizerStats& st,
               std::vector<Vec>* trail) {
  const int n = wm.n(), q = wm.q();
  for (;;) {
    ++st.alg4_passes;
    VRep val = work_value(wm, c, xbar);
    AffineHull ah = affine_hull(val);
    NormalSystem normals = affine_hull_ineq(ah.E, ah.f);
    bool updated = false;
    for (const auto& entry : normals.entries) {
      LPOutcome o = solve_lp(make_inclusion_lp(wm, c, entry.normal, val.points));
      ++st.alg4_lp_count;
      if (o.status != LPStatus::Optimal) return false;
      Vec ystar = o.solution.segment(n, q);
      if (Vec(ah.E * ystar) != ah.f) {
        xbar = o.solution.head(n);
        if (trail) trail->push_back(xbar);
        ++st.alg4_updates;
        updated = true;
        break;
      }
    }
    if (!updated) {
      for (int i = 0; i < ah.E.rows(); ++i)
        wm.lift.push_back(primitive_normalize(Vec(ah.E.row(i).transpose())));
      return true;
    }
  }
}

std::optional<Vec> minimize_on(const WorkingMap& wm_in, const OrderCone& c, const Vec& ybar,
                               MinimizerCertificate* cert) {
  WorkingMap wm = wm_in;
  const int n = wm.n(), q = wm.q();
  MinimizerStats st;
  std::vector<Vec> trail;

  auto x0 = choose_initial_x(wm, c, ybar);
  if (!x0) throw std::invalid_argument("compute_minimizer: ybar is not in the upper image");
  Vec xbar = *x0;
  trail.push_back(xbar);

  if (!cone_gens_full_dim(work_recession(wm, c), q)) {
    if (!stabilize(wm, c, xbar, st, &trail)) return std::nullopt;
  }

  VRep val = work_value(wm, c, xbar);
  NormalSystem normals = min_outer_normals(val);
  std::set<Vec, LexLess> used;
  for (;;) {
    const Vec* w = nullptr;
    for (const auto& e : normals.entries) {
      if (used.count(e.normal)) continue;
      if (!w || LexLess{}(e.normal, *w)) w = &e.normal;
    }
    if (!w) break;
    used.insert(*w);
    LPOutcome o = solve_lp(make_inclusion_lp(wm, c, *w, val.points));
    ++st.alg1_lp_count;
    if (o.status != LPStatus::Optimal) return std::nullopt;
    Vec ystar = o.solution.segment(n, q);
    if (!normals.satisfied_by(ystar)) {
      xbar = o.solution.head(n);
      trail.push_back(xbar);
      ++st.alg1_updates;
      val = work_value(wm, c, xbar);
      normals = min_outer_normals(val);
    }
  }

  if (cert) {
    cert->minimizer = xbar;
    cert->final_normals = normals;
    cert->lift_lines = wm.lift;
    cert->xbar_trail = std::move(trail);
    cert->stats = st;
  }
  return xbar;
}

}  // namespace

PolyMap recession_map(const PolyMap& f) {
  if (!f.graph_nonempty()) throw std::invalid_argument("recession_map: empty graph");
  if (f.h_primary())
    return PolyMap(f.domain_dim(), f.image_dim(), recession_cone(f.graph_h()));
  VRep cone;
  cone.dim = f.domain_dim() + f.image_dim();
  cone.points.push_back(zero_vec(cone.dim));
  cone.rays = f.graph_v().rays;
  cone.lines = f.graph_v().lines;
  return PolyMap(f.domain_dim(), f.image_dim(), cone);
}

SetOptProblem standard_form(const SetOptProblem& p) {
  if (p.is_standard_form) return p;
  const int n = p.F.domain_dim(), q = p.F.image_dim();
  const VRep& g0 = p.F.value_recession();

  std::vector<Vec> rays = p.C.generators.rays, lines = p.C.generators.lines;
  for (const auto& r : g0.rays) rays.push_back(r);
  for (const auto& l : g0.lines) lines.push_back(l);
  OrderCone cstd = OrderCone::from_generators(q, std::move(rays), std::move(lines));

  if (p.C.is_zero()) return {p.F, cstd, true};

  VRep graph = p.F.graph_v();
  for (const auto& r : p.C.generators.rays) {
    Vec g = zero_vec(n + q);
    g.tail(q) = r;
    graph.rays.push_back(g);
  }
  for (const auto& l : p.C.generators.lines) {
    Vec g = zero_vec(n + q);
    g.tail(q) = l;
    graph.lines.push_back(g);
  }
  graph = remove_redundancy(graph);
  PolyMap fstd = p.F.h_primary() ? PolyMap(n, q, v_to_h(graph)) : PolyMap(n, q, graph);
  return {fstd, cstd, true};
}

VRep natural_cone(const SetOptProblem& p) {
  if (!p.is_standard_form) throw std::invalid_argument("natural_cone: standard form required");
  if (!p.F.graph_nonempty()) throw std::invalid_argument("natural_cone: infeasible mapping");
  const int n = p.F.domain_dim(), q = p.F.image_dim();
  PolyMap g = recession_map(p.F);
  const HRep& gh = g.graph_h();

  // {(x,y) : (x,y) in gr G, (x,0) in gr G}
  HRep w = HRep::universe(n + q);
  w.A = Mat(2 * gh.num_ineq(), n + q);
  w.A.setZero();
  w.b = zero_vec(2 * gh.num_ineq());
  w.A.topRows(gh.num_ineq()) = gh.A;
  w.A.bottomLeftCorner(gh.num_ineq(), n) = gh.A.leftCols(n);
  w.E = Mat(2 * gh.num_eq(), n + q);
  w.E.setZero();
  w.f = zero_vec(2 * gh.num_eq());
  w.E.topRows(gh.num_eq()) = gh.E;
  w.E.bottomLeftCorner(gh.num_eq(), n) = gh.E.leftCols(n);

  std::vector<int> ycols(q);
  for (int k = 0; k < q; ++k) ycols[k] = n + k;
  VRep k_full = project_drop(h_to_v(w), ycols);
  VRep gens;
  gens.dim = q;
  gens.rays = k_full.rays;
  gens.lines = k_full.lines;
  return canonicalize_cone(gens);
}

LPProblem build_inclusion_lp(const PolyMap& f, const OrderCone& c, const Vec& w,
                             const Vec& xbar) {
  WorkingMap wm{&f, {}};
  VRep value = work_value(wm, c, xbar);  // throws when xbar is outside dom F
  return make_inclusion_lp(wm, c, w, value.points);
}

VRep value_set(const PolyMap& f, const OrderCone& c, const Vec& xbar) {
  WorkingMap wm{&f, {}};
  return work_value(wm, c, xbar);
}

std::optional<Vec> compute_minimizer(const PolyMap& f, const OrderCone& c, const Vec& ybar,
                                     MinimizerCertificate* certificate) {
  WorkingMap wm{&f, {}};
  if (certificate) {
    certificate->covered_y = ybar;
    certificate->minimizer = Vec();
  }
  auto result = minimize_on(wm, c, ybar, certificate);
  return result;
}

std::optional<std::pair<PolyMap, Vec>> stabilize_affine_hull(const PolyMap& f,
                                                             const OrderCone& c,
                                                             const Vec& ybar) {
  WorkingMap wm{&f, {}};
  auto x0 = choose_initial_x(wm, c, ybar);
  if (!x0) throw std::invalid_argument("stabilize_affine_hull: ybar is not in the upper image");
  Vec xbar = *x0;
  MinimizerStats st;
  if (!stabilize(wm, c, xbar, st, nullptr)) return std::nullopt;

  const int n = f.domain_dim(), q = f.image_dim();
  VRep graph = f.graph_v();
  for (const auto& l : wm.lift) {
    Vec g = zero_vec(n + q);
    g.tail(q) = l;
    graph.lines.push_back(g);
  }
  PolyMap lifted = f.h_primary() ? PolyMap(n, q, v_to_h(graph)) : PolyMap(n, q, graph);
  return std::make_pair(std::move(lifted), std::move(xbar));
}

UpperImage upper_image(const SetOptProblem& p) {
  const int n = p.F.domain_dim(), q = p.F.image_dim();
  UpperImage ui;
  ui.vrep.dim = q;
  if (!p.F.graph_nonempty()) return ui;

  std::vector<int> ycols(q);
  for (int k = 0; k < q; ++k) ycols[k] = n + k;
  VRep proj = project_drop(p.F.graph_v(), ycols);
  for (const auto& r : p.C.generators.rays) proj.rays.push_back(r);
  for (const auto& l : p.C.generators.lines) proj.lines.push_back(l);
  ui.vrep = remove_redundancy(proj);

  for (const auto& r : ui.vrep.rays)
    if (!p.C.contains(r)) ui.directions.push_back(r);
  for (const auto& l : ui.vrep.lines) {
    if (!p.C.contains(l)) ui.directions.push_back(l);
    Vec neg = -l;
    if (!p.C.contains(neg)) ui.directions.push_back(primitive_normalize(neg));
  }
  return ui;
}

bool check_existence(const SetOptProblem& p) {
  if (!p.is_standard_form) throw std::invalid_argument("check_existence: standard form required");
  if (!p.F.graph_nonempty()) return false;
  PolyMap g = recession_map(p.F);
  return compute_minimizer(g, p.C, zero_vec(p.F.image_dim())).has_value();
}

namespace {

// Covers each target by a minimizing point/direction, optionally in
// parallel; result order follows the target order.
bool cover_targets(const PolyMap& map, const OrderCone& c, const std::vector<Vec>& targets,
                   bool directions, int jobs, std::vector<MinimizerCertificate>& certs,
                   std::vector<std::optional<Vec>>& results) {
  const size_t base = results.size();
  results.resize(base + targets.size());
  certs.resize(base + targets.size());
  auto run_one = [&](size_t i) {
    MinimizerCertificate cert;
    cert.covered_y = targets[i];
    cert.is_direction = directions;
    results[base + i] = compute_minimizer(map, c, targets[i], &cert);
    cert.covered_y = targets[i];
    cert.is_direction = directions;
    certs[base + i] = std::move(cert);
  };
  if (jobs <= 1 || targets.size() <= 1) {
    for (size_t i = 0; i < targets.size(); ++i) run_one(i);
  } else {
    // materialize shared caches up front so workers only read
    map.graph_v();
    if (map.h_primary()) map.graph_h();
    map.value_recession();
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    int workers = std::min<int>(jobs, static_cast<int>(targets.size()));
    for (int t = 0; t < workers; ++t)
      pool.emplace_back([&] {
        for (size_t i = next++; i < targets.size(); i = next++) run_one(i);
      });
    for (auto& th : pool) th.join();
  }
  for (size_t i = 0; i < targets.size(); ++i)
    if (!results[base + i]) return false;
  return true;
}

void collect_solution(Solution& sol, const std::vector<std::optional<Vec>>& results,
                      std::vector<MinimizerCertificate> certs) {
  for (size_t i = 0; i < results.size(); ++i) {
    Vec x = *results[i];
    if (certs[i].is_direction) {
      Vec d = primitive_normalize(x);
      bool seen = false;
      for (const auto& u : sol.minimizing_directions) seen |= (u == d);
      if (!seen) sol.minimizing_directions.push_back(d);
    } else {
      bool seen = false;
      for (const auto& u : sol.minimizing_points) seen |= (u == x);
      if (!seen) sol.minimizing_points.push_back(x);
    }
  }
  sol.certificates = std::move(certs);
  for (const auto& cert : sol.certificates)
    sol.total_lp_solves += cert.stats.alg1_lp_count + cert.stats.alg4_lp_count;
}

double seconds_since(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

Solution solve_bounded(const SetOptProblem& p, const SolveOptions& opts) {
  auto start = std::chrono::steady_clock::now();
  Solution sol;
  if (!p.F.graph_nonempty()) {
    sol.status = SolveStatus::Infeasible;
    return sol;
  }
  UpperImage ui = upper_image(p);
  sol.upper_image = ui.vrep;
  sol.upper_directions = ui.directions;

  std::vector<MinimizerCertificate> certs;
  std::vector<std::optional<Vec>> results;
  if (!cover_targets(p.F, p.C, ui.vrep.points, false, opts.jobs, certs, results)) {
    sol.status = SolveStatus::NoSolution;
    return sol;
  }
  collect_solution(sol, results, std::move(certs));
  sol.status = SolveStatus::Solved;
  sol.wall_seconds = seconds_since(start);
  return sol;
}

Solution solve(const SetOptProblem& p0, const SolveOptions& opts) {
  auto start = std::chrono::steady_clock::now();
  Solution sol;
  if (!p0.F.graph_nonempty()) {
    sol.status = SolveStatus::Infeasible;
    return sol;
  }
  SetOptProblem p = p0.is_standard_form ? p0 : standard_form(p0);
  PolyMap g = recession_map(p.F);
  MinimizerCertificate existence_cert;
  if (!compute_minimizer(g, p.C, zero_vec(p.F.image_dim()), &existence_cert)) {
    sol.status = SolveStatus::NoSolution;
    UpperImage ui = upper_image(p);
    sol.upper_image = ui.vrep;
    sol.upper_directions = ui.directions;
    sol.total_lp_solves =
        existence_cert.stats.alg1_lp_count + existence_cert.stats.alg4_lp_count;
    sol.wall_seconds = seconds_since(start);
    return sol;
  }

  UpperImage ui = upper_image(p);
  sol.upper_image = ui.vrep;
  sol.upper_directions = ui.directions;

  std::vector<MinimizerCertificate> certs;
  std::vector<std::optional<Vec>> results;
  bool points_ok = cover_targets(p.F, p.C, ui.vrep.points, false, opts.jobs, certs, results);
  bool dirs_ok = cover_targets(g, p.C, ui.directions, true, opts.jobs, certs, results);
  if (!points_ok || !dirs_ok)
    throw std::logic_error("solve: minimizer computation failed after the existence test");

  collect_solution(sol, results, std::move(certs));
  for (const auto& d : sol.minimizing_directions)
    if (d.isZero()) throw std::logic_error("solve: zero minimizing direction");
  sol.status = SolveStatus::Solved;
  sol.wall_seconds = seconds_since(start);
  return sol;
}

}  // namespace polyset
