#include "polyset/polyhedron.hpp"

#include <stdexcept>

namespace polyset {

HRep HRep::universe(int dim) {
  HRep h;
  h.dim = dim;
  h.A = Mat(0, dim);
  h.b = Vec(0);
  h.E = Mat(0, dim);
  h.f = Vec(0);
  return h;
}

HRep HRep::empty_set(int dim) {
  HRep h = universe(dim);
  h.A = Mat(1, dim);
  h.A.setZero();
  h.b = Vec(1);
  h.b(0) = -1;
  return h;
}

bool NormalSystem::satisfied_by(const Vec& z) const {
  for (const auto& e : entries)
    if (e.normal.dot(z) > e.support) return false;
  return true;
}

DDCone::DDCone(int dim) : dim_(dim) {
  lin_.reserve(dim);
  for (int i = 0; i < dim; ++i) {
    Vec e(dim);
    e.setZero();
    e(i) = 1;
    lin_.push_back(e);
  }
}

bool DDCone::adjacent(const Vec& r1, const Vec& r2) const {
  Mat tight(static_cast<int>(inserted_.size()), dim_);
  int k = 0;
  for (const auto& row : inserted_) {
    if (row.dot(r1) == 0 && row.dot(r2) == 0) tight.row(k++) = row.transpose();
  }
  return rank(tight.topRows(k)) == dim_ - static_cast<int>(lin_.size()) - 2;
}

void DDCone::cut(const Vec& a, bool is_equality) {
  if (a.isZero()) return;

  // Does the constraint cut the lineality space?
  int hit = -1;
  for (size_t i = 0; i < lin_.size(); ++i)
    if (a.dot(lin_[i]) != 0) { hit = static_cast<int>(i); break; }

  if (hit >= 0) {
    Vec l0 = lin_[hit];
    if (a.dot(l0) > 0) l0 = -l0;  // orient into the halfspace
    const Rational al0 = a.dot(l0);
    lin_.erase(lin_.begin() + hit);
    for (auto& l : lin_) {
      const Rational d = a.dot(l);
      if (d != 0) l = primitive_normalize(Vec(l - (d / al0) * l0));
    }
    for (auto& r : rays_) {
      const Rational d = a.dot(r);
      if (d != 0) r = primitive_normalize(Vec(r - (d / al0) * l0));
    }
    if (!is_equality) rays_.push_back(primitive_normalize(l0));
    inserted_.push_back(a);
    inserted_eq_.push_back(is_equality);
    return;
  }

  std::vector<Rational> val(rays_.size());
  bool any_pos = false, any_neg = false;
  for (size_t i = 0; i < rays_.size(); ++i) {
    val[i] = a.dot(rays_[i]);
    any_pos |= val[i] > 0;
    any_neg |= val[i] < 0;
  }
  if ((is_equality && !any_pos && !any_neg) || (!is_equality && !any_pos)) {
    inserted_.push_back(a);
    inserted_eq_.push_back(is_equality);
    return;
  }

  std::vector<Vec> next;
  for (size_t i = 0; i < rays_.size(); ++i)
    if (val[i] == 0 || (!is_equality && val[i] < 0)) next.push_back(rays_[i]);
  for (size_t i = 0; i < rays_.size(); ++i) {
    if (val[i] <= 0) continue;
    for (size_t j = 0; j < rays_.size(); ++j) {
      if (val[j] >= 0) continue;
      if (!adjacent(rays_[i], rays_[j])) continue;
      Vec combo = val[i] * rays_[j] - val[j] * rays_[i];
      next.push_back(primitive_normalize(combo));
    }
  }
  rays_ = std::move(next);
  inserted_.push_back(a);
  inserted_eq_.push_back(is_equality);
}

VRep h_to_v(const HRep& h) {
  const int d = h.dim;
  DDCone cone(d + 1);
  Vec tpos(d + 1);
  tpos.setZero();
  tpos(d) = -1;  // -t <= 0
  cone.cut(tpos, false);
  for (int i = 0; i < h.num_eq(); ++i) {
    Vec row(d + 1);
    row.head(d) = h.E.row(i).transpose();
    row(d) = -h.f(i);
    cone.cut(row, true);
  }
  for (int i = 0; i < h.num_ineq(); ++i) {
    Vec row(d + 1);
    row.head(d) = h.A.row(i).transpose();
    row(d) = -h.b(i);
    cone.cut(row, false);
  }

  VRep v;
  v.dim = d;
  bool has_point = false;
  for (const auto& r : cone.rays())
    if (r(d) > 0) { has_point = true; break; }
  if (!has_point) return v;

  for (const auto& l : cone.lineality()) {
    Vec z = l.head(d);
    if (!z.isZero()) v.lines.push_back(primitive_normalize(z));
  }
  for (const auto& r : cone.rays()) {
    if (r(d) > 0) {
      v.points.push_back(Vec(r.head(d) / r(d)));
    } else {
      Vec z = r.head(d);
      if (!z.isZero()) v.rays.push_back(primitive_normalize(z));
    }
  }
  return v;
}

HRep v_to_h(const VRep& v) {
  const int d = v.dim;
  if (v.empty()) return HRep::empty_set(d);

  DDCone polar(d + 1);
  for (const auto& p : v.points) {
    Vec row(d + 1);
    row.head(d) = p;
    row(d) = 1;
    polar.cut(row, false);
  }
  for (const auto& r : v.rays) {
    Vec row(d + 1);
    row.head(d) = r;
    row(d) = 0;
    polar.cut(row, false);
  }
  for (const auto& l : v.lines) {
    Vec row(d + 1);
    row.head(d) = l;
    row(d) = 0;
    polar.cut(row, true);
  }

  std::vector<Vec> ineq, eq;
  for (const auto& r : polar.rays())
    if (!r.head(d).isZero()) ineq.push_back(r);
  for (const auto& l : polar.lineality())
    if (!l.head(d).isZero()) eq.push_back(l);

  HRep h = HRep::universe(d);
  h.A = Mat(static_cast<int>(ineq.size()), d);
  h.b = Vec(static_cast<int>(ineq.size()));
  for (size_t i = 0; i < ineq.size(); ++i) {
    h.A.row(i) = ineq[i].head(d).transpose();
    h.b(static_cast<int>(i)) = -ineq[i](d);
  }
  h.E = Mat(static_cast<int>(eq.size()), d);
  h.f = Vec(static_cast<int>(eq.size()));
  for (size_t i = 0; i < eq.size(); ++i) {
    h.E.row(i) = eq[i].head(d).transpose();
    h.f(static_cast<int>(i)) = -eq[i](d);
  }
  return h;
}

AffineHull affine_hull(const VRep& v) {
  if (v.empty()) throw std::invalid_argument("affine_hull: empty set");
  const int d = v.dim;
  Mat dirs(static_cast<int>(v.points.size() - 1 + v.rays.size() + v.lines.size()), d);
  int k = 0;
  for (size_t i = 1; i < v.points.size(); ++i)
    dirs.row(k++) = (v.points[i] - v.points[0]).transpose();
  for (const auto& r : v.rays) dirs.row(k++) = r.transpose();
  for (const auto& l : v.lines) dirs.row(k++) = l.transpose();

  Mat basis = nullspace(dirs);  // columns orthogonal to every direction
  AffineHull ah;
  ah.E = Mat(static_cast<int>(basis.cols()), d);
  for (int i = 0; i < basis.cols(); ++i) ah.E.row(i) = basis.col(i).transpose();
  ah.f = ah.E * v.points[0];
  ah.dim = d - static_cast<int>(ah.E.rows());
  return ah;
}

NormalSystem affine_hull_ineq(const Mat& e, const Vec& f) {
  NormalSystem ns;
  if (e.rows() == 0) return ns;
  const int d = static_cast<int>(e.cols());
  Vec agg_w(d);
  agg_w.setZero();
  Rational agg_rhs = 0;
  for (int i = 0; i < e.rows(); ++i) {
    Vec w = primitive_normalize(Vec(e.row(i).transpose()));
    // rhs scales with the row
    int j = 0;
    while (e(i, j) == 0) ++j;
    Rational scale = w(j) / e(i, j);
    Rational rhs = scale * f(i);
    agg_w -= w;
    agg_rhs -= rhs;
    ns.entries.push_back({w, rhs, true});
  }
  Vec w = primitive_normalize(agg_w);
  int j = 0;
  while (agg_w(j) == 0) ++j;
  ns.entries.push_back({w, (w(j) / agg_w(j)) * agg_rhs, true});
  return ns;
}

NormalSystem min_outer_normals(const VRep& v) {
  if (v.empty()) throw std::invalid_argument("min_outer_normals: empty set");
  AffineHull ah = affine_hull(v);

  VRep fat = v;
  for (int i = 0; i < ah.E.rows(); ++i)
    fat.lines.push_back(primitive_normalize(Vec(ah.E.row(i).transpose())));

  HRep h = v_to_h(fat);
  NormalSystem ns;
  for (int i = 0; i < h.num_ineq(); ++i)
    ns.entries.push_back({Vec(h.A.row(i).transpose()), h.b(i), false});
  NormalSystem aff = affine_hull_ineq(ah.E, ah.f);
  for (auto& e : aff.entries) ns.entries.push_back(std::move(e));
  return ns;
}

HRep recession_cone(const HRep& h) {
  if (!hrep_nonempty(h)) throw std::invalid_argument("recession_cone: empty set");
  HRep r = h;
  r.b.setZero();
  r.f.setZero();
  return r;
}

bool contains_point(const HRep& h, const Vec& z) {
  for (int i = 0; i < h.num_ineq(); ++i)
    if (h.A.row(i).dot(z) > h.b(i)) return false;
  for (int i = 0; i < h.num_eq(); ++i)
    if (h.E.row(i).dot(z) != h.f(i)) return false;
  return true;
}

namespace {

// Feasibility of z = conv(points)*lam + cone(rays)*mu + span(lines)*nu.
bool generator_membership(const std::vector<Vec>& points, const std::vector<Vec>& rays,
                          const std::vector<Vec>& lines, const Vec& z, bool affine) {
  const int d = static_cast<int>(z.size());
  LPBuilder lb;
  auto lam = lb.add_vars(static_cast<int>(points.size()), VarBound::NonNeg);
  auto mu = lb.add_vars(static_cast<int>(rays.size()), VarBound::NonNeg);
  auto nu = lb.add_vars(static_cast<int>(lines.size()), VarBound::Free);
  for (int r = 0; r < d; ++r) {
    std::vector<std::pair<int, Rational>> row;
    for (size_t i = 0; i < points.size(); ++i)
      if (points[i](r) != 0) row.emplace_back(lam[i], points[i](r));
    for (size_t i = 0; i < rays.size(); ++i)
      if (rays[i](r) != 0) row.emplace_back(mu[i], rays[i](r));
    for (size_t i = 0; i < lines.size(); ++i)
      if (lines[i](r) != 0) row.emplace_back(nu[i], lines[i](r));
    lb.add_row(std::move(row), RowSense::EQ, z(r));
  }
  if (affine) {
    std::vector<std::pair<int, Rational>> row;
    for (int id : lam) row.emplace_back(id, Rational(1));
    lb.add_row(std::move(row), RowSense::EQ, Rational(1));
  }
  return solve_lp(lb.build()).status == LPStatus::Optimal;
}

}  // namespace

bool contains_point(const VRep& v, const Vec& z) {
  if (v.empty()) return false;
  return generator_membership(v.points, v.rays, v.lines, z, true);
}

bool recession_contains(const VRep& v, const Vec& direction) {
  if (v.empty()) return false;
  if (direction.isZero()) return true;
  return generator_membership({}, v.rays, v.lines, direction, false);
}

bool is_subset(const VRep& q, const HRep& p) {
  for (const auto& pt : q.points)
    if (!contains_point(p, pt)) return false;
  for (const auto& r : q.rays) {
    for (int i = 0; i < p.num_ineq(); ++i)
      if (p.A.row(i).dot(r) > 0) return false;
    for (int i = 0; i < p.num_eq(); ++i)
      if (p.E.row(i).dot(r) != 0) return false;
  }
  for (const auto& l : q.lines) {
    for (int i = 0; i < p.num_ineq(); ++i)
      if (p.A.row(i).dot(l) != 0) return false;
    for (int i = 0; i < p.num_eq(); ++i)
      if (p.E.row(i).dot(l) != 0) return false;
  }
  return true;
}

bool is_subset(const VRep& q, const VRep& p) {
  if (q.empty()) return true;
  if (p.empty()) return false;
  for (const auto& pt : q.points)
    if (!contains_point(p, pt)) return false;
  for (const auto& r : q.rays)
    if (!recession_contains(p, r)) return false;
  for (const auto& l : q.lines)
    if (!recession_contains(p, l) || !recession_contains(p, Vec(-l))) return false;
  return true;
}

VRep remove_redundancy(const VRep& v) {
  VRep out;
  out.dim = v.dim;
  if (v.empty()) return out;

  // lines to a basis
  if (!v.lines.empty()) {
    Mat lm(static_cast<int>(v.lines.size()), v.dim);
    for (size_t i = 0; i < v.lines.size(); ++i) lm.row(i) = v.lines[i].transpose();
    rref(lm);
    for (int i = 0; i < lm.rows(); ++i) {
      Vec row = lm.row(i).transpose();
      if (!row.isZero()) out.lines.push_back(primitive_normalize(row));
    }
  }

  // rays: drop those inside span(lines), then greedy cone-redundancy removal
  std::vector<Vec> rays;
  for (const auto& r : v.rays) {
    if (!out.lines.empty() && generator_membership({}, {}, out.lines, r, false)) continue;
    rays.push_back(primitive_normalize(r));
  }
  std::vector<bool> keep_ray(rays.size(), true);
  for (size_t i = 0; i < rays.size(); ++i) {
    std::vector<Vec> others;
    for (size_t j = 0; j < rays.size(); ++j)
      if (j != i && keep_ray[j]) others.push_back(rays[j]);
    if (generator_membership({}, others, out.lines, rays[i], false)) keep_ray[i] = false;
  }
  for (size_t i = 0; i < rays.size(); ++i)
    if (keep_ray[i]) out.rays.push_back(rays[i]);

  // points
  std::vector<bool> keep_pt(v.points.size(), true);
  for (size_t i = 0; i < v.points.size(); ++i) {
    std::vector<Vec> others;
    for (size_t j = 0; j < v.points.size(); ++j)
      if (j != i && keep_pt[j]) others.push_back(v.points[j]);
    if (others.empty()) continue;
    if (generator_membership(others, out.rays, out.lines, v.points[i], true))
      keep_pt[i] = false;
  }
  for (size_t i = 0; i < v.points.size(); ++i)
    if (keep_pt[i]) out.points.push_back(v.points[i]);
  return out;
}

VRep project_drop(const VRep& v, const std::vector<int>& keep) {
  VRep out;
  out.dim = static_cast<int>(keep.size());
  auto proj = [&](const Vec& z) {
    Vec p(out.dim);
    for (size_t i = 0; i < keep.size(); ++i) p(static_cast<int>(i)) = z(keep[i]);
    return p;
  };
  for (const auto& p : v.points) out.points.push_back(proj(p));
  for (const auto& r : v.rays) {
    Vec p = proj(r);
    if (!p.isZero()) out.rays.push_back(primitive_normalize(p));
  }
  for (const auto& l : v.lines) {
    Vec p = proj(l);
    if (!p.isZero()) out.lines.push_back(primitive_normalize(p));
  }
  return out;
}

bool hrep_nonempty(const HRep& h) {
  LPBuilder lb;
  auto z = lb.add_vars(h.dim, VarBound::Free);
  for (int i = 0; i < h.num_ineq(); ++i) {
    std::vector<std::pair<int, Rational>> row;
    for (int j = 0; j < h.dim; ++j)
      if (h.A(i, j) != 0) row.emplace_back(z[j], h.A(i, j));
    lb.add_row(std::move(row), RowSense::LE, h.b(i));
  }
  for (int i = 0; i < h.num_eq(); ++i) {
    std::vector<std::pair<int, Rational>> row;
    for (int j = 0; j < h.dim; ++j)
      if (h.E(i, j) != 0) row.emplace_back(z[j], h.E(i, j));
    lb.add_row(std::move(row), RowSense::EQ, h.f(i));
  }
  return solve_lp(lb.build()).status == LPStatus::Optimal;
}

bool same_set(const VRep& a, const VRep& b) {
  if (a.empty() || b.empty()) return a.empty() == b.empty();
  return is_subset(a, b) && is_subset(b, a);
}

VRep canonicalize_cone(const VRep& generators) {
  VRep cone;
  cone.dim = generators.dim;
  Vec zero(generators.dim);
  zero.setZero();
  cone.points.push_back(zero);
  std::vector<Vec> lines = generators.lines;
  // the lineality space is spanned by generators whose negation stays inside
  for (const auto& r : generators.rays) {
    if (generator_membership({}, generators.rays, generators.lines, Vec(-r), false))
      lines.push_back(r);
    else
      cone.rays.push_back(r);
  }
  cone.lines = std::move(lines);
  return remove_redundancy(cone);
}

namespace {

Vec rot_ccw(const Vec& w) { return make_vec({-w(1), w(0)}); }

Rational cross2(const Vec& a, const Vec& b) { return a(0) * b(1) - a(1) * b(0); }

class ProjectionProbe {
 public:
  ProjectionProbe(const LPProblem& region, const Mat& proj)
      : region_(region), proj_(proj) {}

  // Supremum direction probe; must be bounded for w in the polar of rec(W).
  LPOutcome maximize(const Vec& w) const {
    LPProblem p = region_;
    p.c = proj_.transpose() * w;
    return solve_lp(p);
  }

  // A vertex of W attaining max w^T y, selected by a second lexicographic
  // stage over the optimal face.
  Vec vertex_for(const Vec& w) const {
    LPOutcome first = maximize(w);
    if (first.status != LPStatus::Optimal)
      throw std::logic_error("enumerate_projection: probe direction unbounded");
    if (proj_.rows() == 1) return proj_ * first.solution;

    LPProblem face = region_;
    Vec c = proj_.transpose() * w;
    face.coeff.conservativeResize(face.coeff.rows() + 1, Eigen::NoChange);
    face.coeff.row(face.coeff.rows() - 1) = c.transpose();
    face.rhs.conservativeResize(face.rhs.size() + 1);
    face.rhs(face.rhs.size() - 1) = first.value;
    face.sense.push_back(RowSense::EQ);
    for (const Vec& t : {rot_ccw(w), Vec(-rot_ccw(w))}) {
      face.c = proj_.transpose() * t;
      LPOutcome second = solve_lp(face);
      if (second.status == LPStatus::Optimal) return proj_ * second.solution;
    }
    throw std::logic_error("enumerate_projection: optimal face contains a line");
  }

  // All vertices on the boundary arc between (wa, va) and (wb, vb).
  void expand(const Vec& wa, const Vec& va, const Vec& wb, const Vec& vb,
              std::vector<Vec>& out) const {
    if (va == vb) return;
    Vec d = vb - va;
    Vec n = -rot_ccw(d);  // outward normal of the chord for a CCW walk
    if (cross2(wa, n) < 0 || cross2(n, wb) < 0)
      throw std::logic_error("enumerate_projection: chord normal out of arc");
    LPOutcome probe = maximize(n);
    if (probe.status != LPStatus::Optimal)
      throw std::logic_error("enumerate_projection: chord probe unbounded");
    if (probe.value == n.dot(va)) return;  // chord is an edge
    Vec vn = vertex_for(n);
    out.push_back(vn);
    expand(wa, va, n, vn, out);
    expand(n, vn, wb, vb, out);
  }

 private:
  const LPProblem& region_;
  const Mat& proj_;
};

}  // namespace

VRep enumerate_projection(const LPProblem& region, const Mat& proj, const VRep& recession) {
  const int k = static_cast<int>(proj.rows());
  if (k < 1 || k > 2)
    throw std::invalid_argument("enumerate_projection: image dimension must be 1 or 2");

  VRep out;
  out.dim = k;
  out.rays = recession.rays;
  out.lines = recession.lines;
  ProjectionProbe probe(region, proj);

  // With lineality in the image, intervals along the complement suffice.
  if (!recession.lines.empty()) {
    if (k == 1 || recession.lines.size() >= 2) {
      LPProblem feas = region;
      feas.c.setZero();
      LPOutcome o = solve_lp(feas);
      if (o.status != LPStatus::Optimal)
        throw std::invalid_argument("enumerate_projection: empty region");
      out.points.push_back(Vec(proj * o.solution));
      return out;
    }
    Vec d = rot_ccw(recession.lines[0]);
    for (const Vec& w : {d, Vec(-d)}) {
      bool unbounded_side = false;
      for (const auto& r : recession.rays)
        if (w.dot(r) > 0) unbounded_side = true;
      if (unbounded_side) continue;
      LPOutcome o = probe.maximize(w);
      if (o.status != LPStatus::Optimal)
        throw std::logic_error("enumerate_projection: recession mismatch");
      out.points.push_back(Vec(proj * o.solution));
    }
    if (out.points.empty()) {
      LPProblem feas = region;
      feas.c.setZero();
      LPOutcome o = solve_lp(feas);
      out.points.push_back(Vec(proj * o.solution));
    }
    return out;
  }

  if (k == 1) {
    bool up = false, down = false;
    for (const auto& r : recession.rays) (r(0) > 0 ? up : down) = true;
    if (!up) out.points.push_back(probe.vertex_for(make_vec({1})));
    if (!down) out.points.push_back(probe.vertex_for(make_vec({-1})));
    if (out.points.size() == 2 && out.points[0] == out.points[1]) out.points.pop_back();
    if (out.points.empty()) {  // image is the whole line; rec would have been a line
      throw std::logic_error("enumerate_projection: inconsistent recession data");
    }
    return out;
  }

  // Pointed two-dimensional case: walk the polar arc of the recession cone.
  std::vector<Vec> dirs;
  if (recession.rays.empty()) {
    dirs = {make_vec({1, 0}), make_vec({0, 1}), make_vec({-1, 0}), make_vec({0, -1}),
            make_vec({1, 0})};
  } else if (recession.rays.size() == 1) {
    const Vec& r = recession.rays[0];
    dirs = {rot_ccw(r), Vec(-r), Vec(-rot_ccw(r))};
  } else {
    if (recession.rays.size() != 2)
      throw std::invalid_argument("enumerate_projection: recession rays not reduced");
    Vec r1 = recession.rays[0], r2 = recession.rays[1];
    if (cross2(r1, r2) < 0) std::swap(r1, r2);  // r2 CCW of r1
    Vec n1 = -rot_ccw(r1);  // perpendicular, on the far side of r2
    Vec n2 = rot_ccw(r2);
    Vec mid = primitive_normalize(Vec(n1 + n2));
    dirs = {n2, mid, n1};
  }

  std::vector<Vec> chain;
  for (const auto& w : dirs) chain.push_back(probe.vertex_for(w));
  std::vector<Vec> verts = chain;
  for (size_t i = 0; i + 1 < dirs.size(); ++i)
    probe.expand(dirs[i], chain[i], dirs[i + 1], chain[i + 1], verts);

  for (const auto& v : verts) {
    bool seen = false;
    for (const auto& u : out.points) seen |= (u == v);
    if (!seen) out.points.push_back(v);
  }
  return out;
}

}  // namespace polyset
