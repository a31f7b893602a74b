#include <doctest.h>

#include "oracles.hpp"
#include "polyset/polyhedron.hpp"

#include <algorithm>
#include <set>

using namespace polyset;

namespace {

HRep unit_cube() {
  HRep h = HRep::universe(3);
  h.A = Mat(6, 3);
  h.A.setZero();
  h.b = Vec(6);
  for (int i = 0; i < 3; ++i) {
    h.A(i, i) = 1;
    h.b(i) = 1;
    h.A(3 + i, i) = -1;
    h.b(3 + i) = 0;
  }
  return h;
}

Vec v2(Rational a, Rational b) { return make_vec({a, b}); }
Vec v3(Rational a, Rational b, Rational c) { return make_vec({a, b, c}); }

}  // namespace

TEST_CASE("h_to_v: unit cube has 8 vertices") {
  VRep v = h_to_v(unit_cube());
  CHECK(v.points.size() == 8);
  CHECK(v.rays.empty());
  CHECK(v.lines.empty());
  std::set<std::pair<std::pair<Rational, Rational>, Rational>> got;
  for (const auto& p : v.points)
    got.insert({{p(0), p(1)}, p(2)});
  CHECK(got.size() == 8);
  for (const auto& [xy, z] : got) {
    CHECK((xy.first == 0 || xy.first == 1));
    CHECK((z == 0 || z == 1));
  }
}

TEST_CASE("h_to_v: nonnegative quadrant") {
  HRep h = HRep::universe(2);
  h.A = make_mat({{-1, 0}, {0, -1}});
  h.b = make_vec({0, 0});
  VRep v = h_to_v(h);
  REQUIRE(v.points.size() == 1);
  CHECK(v.points[0] == v2(0, 0));
  REQUIRE(v.rays.size() == 2);
  std::set<std::pair<Rational, Rational>> rays;
  for (const auto& r : v.rays) rays.insert({r(0), r(1)});
  CHECK(rays.count({1, 0}));
  CHECK(rays.count({0, 1}));
  CHECK(v.lines.empty());
}

TEST_CASE("h_to_v: empty set") {
  VRep v = h_to_v(HRep::empty_set(2));
  CHECK(v.empty());
}

TEST_CASE("v_to_h: triangle gives 3 inequalities") {
  VRep v;
  v.dim = 2;
  v.points = {v2(0, 0), v2(1, 0), v2(0, 1)};
  HRep h = v_to_h(v);
  CHECK(h.num_ineq() == 3);
  CHECK(h.num_eq() == 0);
  CHECK(contains_point(h, v2(Rational(1, 4), Rational(1, 4))));
  CHECK(!contains_point(h, v2(1, 1)));
}

TEST_CASE("v_to_h: point with line gives equation") {
  VRep v;
  v.dim = 2;
  v.points = {v2(0, 0)};
  v.lines = {v2(1, 0)};
  HRep h = v_to_h(v);
  CHECK(h.num_ineq() == 0);
  REQUIRE(h.num_eq() == 1);
  // z2 = 0 up to scaling
  CHECK(h.E(0, 0) == 0);
  CHECK(h.E(0, 1) != 0);
  CHECK(h.f(0) == 0);
}

TEST_CASE("affine_hull") {
  VRep seg;
  seg.dim = 2;
  seg.points = {v2(0, 0), v2(1, 1)};
  AffineHull ah = affine_hull(seg);
  CHECK(ah.dim == 1);
  REQUIRE(ah.E.rows() == 1);
  CHECK(ah.E(0, 0) == -ah.E(0, 1));
  CHECK(ah.f(0) == 0);

  VRep cube = h_to_v(unit_cube());
  AffineHull full = affine_hull(cube);
  CHECK(full.dim == 3);
  CHECK(full.E.rows() == 0);

  VRep pt;
  pt.dim = 2;
  pt.points = {v2(2, 0)};
  AffineHull p0 = affine_hull(pt);
  CHECK(p0.dim == 0);
  REQUIRE(p0.E.rows() == 2);
  CHECK(Vec(p0.E * pt.points[0]) == p0.f);

  VRep none;
  none.dim = 2;
  CHECK_THROWS(affine_hull(none));
}

TEST_CASE("affine_hull_ineq") {
  NormalSystem one = affine_hull_ineq(make_mat({{1, -1}}), make_vec({0}));
  REQUIRE(one.entries.size() == 2);
  CHECK(one.entries[0].normal == v2(1, -1));
  CHECK(one.entries[0].support == 0);
  CHECK(one.entries[1].normal == v2(-1, 1));
  CHECK(one.entries[1].support == 0);
  CHECK(one.entries[0].affine_pair);

  NormalSystem id = affine_hull_ineq(make_mat({{1, 0}, {0, 1}}), make_vec({1, 2}));
  REQUIRE(id.entries.size() == 3);
  CHECK(id.entries[0].normal == v2(1, 0));
  CHECK(id.entries[0].support == 1);
  CHECK(id.entries[1].normal == v2(0, 1));
  CHECK(id.entries[1].support == 2);
  CHECK(id.entries[2].normal == v2(-1, -1));
  CHECK(id.entries[2].support == -3);

  CHECK(affine_hull_ineq(Mat(0, 2), Vec(0)).entries.empty());
}

TEST_CASE("min_outer_normals: quadrant and square") {
  VRep quad;
  quad.dim = 2;
  quad.points = {v2(0, 0)};
  quad.rays = {v2(1, 0), v2(0, 1)};
  NormalSystem ns = min_outer_normals(quad);
  REQUIRE(ns.entries.size() == 2);
  std::set<std::pair<Rational, Rational>> normals;
  for (const auto& e : ns.entries) {
    CHECK(e.support == 0);
    CHECK(!e.affine_pair);
    normals.insert({e.normal(0), e.normal(1)});
  }
  CHECK(normals.count({-1, 0}));
  CHECK(normals.count({0, -1}));

  VRep square;
  square.dim = 2;
  square.points = {v2(0, 0), v2(1, 0), v2(0, 1), v2(1, 1)};
  NormalSystem sq = min_outer_normals(square);
  CHECK(sq.entries.size() == 4);
  Rational rhs_sum = 0;
  for (const auto& e : sq.entries) rhs_sum += e.support;
  CHECK(rhs_sum == 2);  // 1 + 1 + 0 + 0
}

TEST_CASE("min_outer_normals: lower-dimensional set gets affine pair") {
  VRep seg;
  seg.dim = 2;
  seg.points = {v2(0, 0), v2(2, 0)};
  NormalSystem ns = min_outer_normals(seg);
  // fattened set is a slab with 2 facets; affine pair adds 2 rows
  int facets = 0, pairs = 0;
  for (const auto& e : ns.entries)
    (e.affine_pair ? pairs : facets)++;
  CHECK(facets == 2);
  CHECK(pairs == 2);
  CHECK(ns.satisfied_by(v2(1, 0)));
  CHECK(!ns.satisfied_by(v2(1, 1)));
  CHECK(!ns.satisfied_by(v2(3, 0)));
}

TEST_CASE("recession_cone") {
  HRep rc = recession_cone(unit_cube());
  VRep v = h_to_v(rc);
  REQUIRE(v.points.size() == 1);
  CHECK(v.points[0].isZero());
  CHECK(v.rays.empty());
  CHECK(v.lines.empty());

  HRep h = HRep::universe(2);
  h.A = make_mat({{-1, 0}});
  h.b = make_vec({0});
  h.E = make_mat({{0, 1}});
  h.f = make_vec({1});
  HRep r = recession_cone(h);
  CHECK(contains_point(r, v2(5, 0)));
  CHECK(!contains_point(r, v2(5, 1)));
  CHECK(!contains_point(r, v2(-1, 0)));

  CHECK_THROWS(recession_cone(HRep::empty_set(2)));
}

TEST_CASE("contains_point") {
  HRep cube = unit_cube();
  CHECK(contains_point(cube, v3(Rational(1, 2), Rational(1, 2), Rational(1, 2))));
  CHECK(!contains_point(cube, v3(2, 0, 0)));

  VRep v = h_to_v(cube);
  CHECK(contains_point(v, v3(Rational(1, 2), Rational(1, 2), Rational(1, 2))));
  CHECK(!contains_point(v, v3(2, 0, 0)));
}

TEST_CASE("is_subset") {
  VRep square;
  square.dim = 2;
  square.points = {v2(0, 0), v2(1, 0), v2(0, 1), v2(1, 1)};

  VRep tri;
  tri.dim = 2;
  tri.points = {v2(0, 0), v2(1, 0), v2(0, 1)};
  CHECK(is_subset(tri, square));
  CHECK(!is_subset(square, tri));

  VRep with_ray = tri;
  with_ray.rays = {v2(1, 1)};
  CHECK(!is_subset(with_ray, square));

  HRep sq_h = v_to_h(square);
  CHECK(is_subset(tri, sq_h));
  CHECK(!is_subset(with_ray, sq_h));
}

TEST_CASE("remove_redundancy") {
  VRep v;
  v.dim = 2;
  v.points = {v2(0, 0), v2(1, 0), v2(Rational(1, 2), 0)};
  VRep r = remove_redundancy(v);
  CHECK(r.points.size() == 2);

  VRep rays;
  rays.dim = 2;
  rays.points = {v2(0, 0)};
  rays.rays = {v2(1, 0), v2(0, 1), v2(1, 1)};
  VRep rr = remove_redundancy(rays);
  CHECK(rr.rays.size() == 2);

  VRep lines;
  lines.dim = 2;
  lines.points = {v2(0, 0)};
  lines.lines = {v2(1, 0), v2(2, 0), v2(1, 1)};
  VRep lr = remove_redundancy(lines);
  CHECK(lr.lines.size() == 2);
}

TEST_CASE("project_drop") {
  VRep cube = h_to_v(unit_cube());
  VRep sq = remove_redundancy(project_drop(cube, {0, 1}));
  CHECK(sq.points.size() == 4);

  VRep pt;
  pt.dim = 3;
  pt.points = {v3(1, 2, 3)};
  VRep last2 = project_drop(pt, {1, 2});
  REQUIRE(last2.points.size() == 1);
  CHECK(last2.points[0] == v2(2, 3));
}

TEST_CASE("round-trip on random H-reps") {
  oracle::RandomHRep gen(314159);
  int nonempty = 0;
  for (int trial = 0; trial < 60; ++trial) {
    int dim = 2 + trial % 3;
    HRep h = gen.next(dim, 6);
    VRep v = h_to_v(h);
    if (v.empty()) {
      CHECK(!hrep_nonempty(h));
      continue;
    }
    ++nonempty;
    CHECK(hrep_nonempty(h));
    HRep h2 = v_to_h(v);
    CHECK(oracle::same_hrep_set(h, h2));
    CHECK(is_subset(v, h));
    CHECK(is_subset(h_to_v(h2), h));
  }
  CHECK(nonempty >= 20);
}

TEST_CASE("min_outer_normals describes the same set as v_to_h") {
  oracle::RandomHRep gen(2718);
  for (int trial = 0; trial < 40; ++trial) {
    HRep h = gen.next(2 + trial % 3, 5);
    VRep v = h_to_v(h);
    if (v.empty()) continue;
    NormalSystem ns = min_outer_normals(v);
    HRep from_ns = HRep::universe(h.dim);
    from_ns.A = Mat(static_cast<int>(ns.entries.size()), h.dim);
    from_ns.b = Vec(static_cast<int>(ns.entries.size()));
    for (size_t i = 0; i < ns.entries.size(); ++i) {
      from_ns.A.row(i) = ns.entries[i].normal.transpose();
      from_ns.b(static_cast<int>(i)) = ns.entries[i].support;
    }
    CHECK(oracle::same_hrep_set(v_to_h(v), from_ns));
  }
}

TEST_CASE("projection against Fourier-Motzkin oracle") {
  oracle::RandomHRep gen(161803);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    int dim = 3 + trial % 4;  // up to 6 variables
    HRep h = gen.next(dim, 6);
    VRep v = h_to_v(h);
    if (v.empty()) continue;
    std::vector<int> keep;
    for (int j = 0; j < dim; ++j)
      if (j % 2 == trial % 2 || dim <= 2) keep.push_back(j);
    if (keep.empty() || static_cast<int>(keep.size()) == dim) keep = {0};
    VRep proj = project_drop(v, keep);
    HRep fm = oracle::fm_project(h, keep);
    // mutual containment
    CHECK(is_subset(proj, fm));
    VRep fmv = h_to_v(fm);
    REQUIRE(!fmv.empty());
    CHECK(is_subset(fmv, v_to_h(proj)));
    ++checked;
  }
  CHECK(checked >= 15);
}

TEST_CASE("canonicalize_cone extracts hidden lineality") {
  VRep gens;
  gens.dim = 2;
  gens.rays = {v2(1, 0), v2(-1, 0), v2(0, 1)};
  VRep c = canonicalize_cone(gens);
  CHECK(c.lines.size() == 1);
  CHECK(c.rays.size() == 1);

  VRep plane;
  plane.dim = 2;
  plane.rays = {v2(1, 0), v2(-1, 1), v2(0, -1)};
  VRep p = canonicalize_cone(plane);
  CHECK(p.lines.size() == 2);
  CHECK(p.rays.empty());

  VRep pointed;
  pointed.dim = 2;
  pointed.rays = {v2(1, 0), v2(1, 1), v2(2, 1)};
  VRep q = canonicalize_cone(pointed);
  CHECK(q.lines.empty());
  CHECK(q.rays.size() == 2);
}

namespace {

// LP region whose feasible set is exactly the given H-rep.
LPProblem region_of_hrep(const HRep& h) {
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
  return lb.build();
}

}  // namespace

TEST_CASE("enumerate_projection matches the conversion route") {
  oracle::RandomHRep gen(424242);
  int checked = 0;
  for (int trial = 0; trial < 80; ++trial) {
    int dim = 2 + trial % 4;
    HRep h = gen.next(dim, 6);
    VRep v = h_to_v(h);
    if (v.empty()) continue;
    int k = 1 + trial % 2;
    std::vector<int> keep;
    for (int j = 0; j < k; ++j) keep.push_back(j % dim);
    if (k == 2 && dim >= 2) keep = {0, dim - 1};
    else keep = {0};
    k = static_cast<int>(keep.size());

    VRep expected = remove_redundancy(project_drop(v, keep));
    VRep rec;
    rec.dim = k;
    rec.rays = expected.rays;
    rec.lines = expected.lines;
    VRep rec_canon = canonicalize_cone(rec);
    rec_canon.points.clear();

    Mat proj(k, dim);
    proj.setZero();
    for (int j = 0; j < k; ++j) proj(j, keep[j]) = 1;
    VRep got = enumerate_projection(region_of_hrep(h), proj, rec_canon);
    CHECK(same_set(got, expected));
    ++checked;
  }
  CHECK(checked >= 30);
}

TEST_CASE("enumerate_projection on an unbounded planar image") {
  // region: {(x, y) : y >= |x|} projected to itself
  HRep h = HRep::universe(2);
  h.A = make_mat({{1, -1}, {-1, -1}});
  h.b = make_vec({0, 0});
  VRep rec;
  rec.dim = 2;
  rec.rays = {v2(1, 1), v2(-1, 1)};
  Mat proj = make_mat({{1, 0}, {0, 1}});
  VRep got = enumerate_projection(region_of_hrep(h), proj, rec);
  REQUIRE(got.points.size() == 1);
  CHECK(got.points[0] == v2(0, 0));
  CHECK(got.rays.size() == 2);
}

TEST_CASE("recession cone equals ray part of h_to_v") {
  oracle::RandomHRep gen(777);
  for (int trial = 0; trial < 40; ++trial) {
    HRep h = gen.next(2 + trial % 3, 5);
    if (!hrep_nonempty(h)) continue;
    HRep rc = recession_cone(h);
    VRep v = h_to_v(h);
    VRep cone_gens;
    cone_gens.dim = h.dim;
    cone_gens.points = {Vec(Vec::Zero(h.dim))};
    cone_gens.rays = v.rays;
    cone_gens.lines = v.lines;
    CHECK(is_subset(cone_gens, rc));
    VRep rcv = h_to_v(rc);
    for (const auto& r : rcv.rays) CHECK(recession_contains(v, r));
    for (const auto& l : rcv.lines) {
      CHECK(recession_contains(v, l));
      CHECK(recession_contains(v, Vec(-l)));
    }
  }
}
