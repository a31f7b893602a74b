#include <doctest.h>

#include "polyset/lp.hpp"

#include <random>

using namespace polyset;

namespace {

LPProblem single_var_max(Rational upper) {
  // max x s.t. x <= upper, x free
  LPBuilder lb;
  int x = lb.add_var(VarBound::Free);
  lb.set_objective(x, 1);
  lb.add_row({{x, Rational(1)}}, RowSense::LE, upper);
  return lb.build();
}

}  // namespace

TEST_CASE("bounded maximization") {
  LPOutcome o = solve_lp(single_var_max(1));
  REQUIRE(o.status == LPStatus::Optimal);
  CHECK(o.solution(0) == Rational(1));
  CHECK(o.value == Rational(1));
  CHECK(verify_certificate(single_var_max(1), o));
}

TEST_CASE("unbounded with improving ray") {
  LPBuilder lb;
  int x = lb.add_var(VarBound::NonNeg);
  lb.set_objective(x, 1);
  LPProblem p = lb.build();
  LPOutcome o = solve_lp(p);
  REQUIRE(o.status == LPStatus::Unbounded);
  CHECK(o.ray(0) == Rational(1));
  CHECK(verify_certificate(p, o));
}

TEST_CASE("infeasible with Farkas certificate") {
  // x <= 0 and -x <= -1
  LPBuilder lb;
  int x = lb.add_var(VarBound::Free);
  lb.set_objective(x, 1);
  lb.add_row({{x, Rational(1)}}, RowSense::LE, Rational(0));
  lb.add_row({{x, Rational(-1)}}, RowSense::LE, Rational(-1));
  LPProblem p = lb.build();
  LPOutcome o = solve_lp(p);
  REQUIRE(o.status == LPStatus::Infeasible);
  CHECK(verify_certificate(p, o));
  CHECK(o.farkas(0) >= 0);
  CHECK(o.farkas(1) >= 0);
}

TEST_CASE("verify_certificate rejects broken claims") {
  LPProblem p = single_var_max(1);
  LPOutcome o = solve_lp(p);
  LPOutcome bad = o;
  bad.solution(0) = 2;  // infeasible point
  CHECK(!verify_certificate(p, bad));

  LPBuilder lb;
  int x = lb.add_var(VarBound::NonNeg);
  lb.set_objective(x, 0);
  LPProblem q = lb.build();
  LPOutcome claim;
  claim.status = LPStatus::Unbounded;
  claim.feasible_point = Vec(1);
  claim.feasible_point(0) = 0;
  claim.ray = Vec(1);
  claim.ray(0) = 1;
  CHECK(!verify_certificate(q, claim));  // c^T ray = 0
}

TEST_CASE("equality rows and mixed bounds") {
  // max x + y s.t. x + y = 3, x - y <= 1, x >= 0, y free
  LPBuilder lb;
  int x = lb.add_var(VarBound::NonNeg);
  int y = lb.add_var(VarBound::Free);
  lb.set_objective(x, 1);
  lb.set_objective(y, 1);
  lb.add_row({{x, Rational(1)}, {y, Rational(1)}}, RowSense::EQ, Rational(3));
  lb.add_row({{x, Rational(1)}, {y, Rational(-1)}}, RowSense::LE, Rational(1));
  LPProblem p = lb.build();
  LPOutcome o = solve_lp(p);
  REQUIRE(o.status == LPStatus::Optimal);
  CHECK(o.value == Rational(3));
  CHECK(verify_certificate(p, o));
}

TEST_CASE("degenerate instance terminates under Bland") {
  // Beale's cycling example (cycles under Dantzig with a naive tie-break):
  // min -3/4 x1 + 150 x2 - 1/50 x3 + 6 x4
  // s.t. 1/4 x1 - 60 x2 - 1/25 x3 + 9 x4 <= 0
  //      1/2 x1 - 90 x2 - 1/50 x3 + 3 x4 <= 0
  //      x3 <= 1,  x >= 0
  LPBuilder lb;
  auto v = lb.add_vars(4, VarBound::NonNeg);
  lb.set_objective(v[0], Rational(3, 4));
  lb.set_objective(v[1], -150);
  lb.set_objective(v[2], Rational(1, 50));
  lb.set_objective(v[3], -6);
  lb.add_row({{v[0], Rational(1, 4)}, {v[1], Rational(-60)}, {v[2], Rational(-1, 25)}, {v[3], Rational(9)}},
             RowSense::LE, Rational(0));
  lb.add_row({{v[0], Rational(1, 2)}, {v[1], Rational(-90)}, {v[2], Rational(-1, 50)}, {v[3], Rational(3)}},
             RowSense::LE, Rational(0));
  lb.add_row({{v[2], Rational(1)}}, RowSense::LE, Rational(1));
  LPProblem p = lb.build();
  LPOutcome o = solve_lp(p);
  REQUIRE(o.status == LPStatus::Optimal);
  CHECK(o.value == Rational(1, 20));
  CHECK(verify_certificate(p, o));
}

TEST_CASE("objective scaling keeps status and argmax") {
  LPBuilder lb;
  auto v = lb.add_vars(2, VarBound::NonNeg);
  lb.set_objective(v[0], 2);
  lb.set_objective(v[1], 3);
  lb.add_row({{v[0], Rational(1)}, {v[1], Rational(2)}}, RowSense::LE, Rational(4));
  lb.add_row({{v[0], Rational(3)}, {v[1], Rational(1)}}, RowSense::LE, Rational(5));
  LPProblem p = lb.build();
  LPOutcome o = solve_lp(p);
  REQUIRE(o.status == LPStatus::Optimal);

  LPProblem scaled = p;
  scaled.c *= Rational(7, 3);
  LPOutcome os = solve_lp(scaled);
  REQUIRE(os.status == LPStatus::Optimal);
  CHECK(os.solution == o.solution);
  CHECK(os.value == Rational(7, 3) * o.value);
}

TEST_CASE("random LPs all carry valid certificates") {
  set_lp_self_check(true);
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> entry(-3, 3), rows(1, 5), cols(1, 4), pick(0, 3);
  for (int trial = 0; trial < 300; ++trial) {
    int m = rows(rng), n = cols(rng);
    LPBuilder lb;
    std::vector<int> vars;
    for (int j = 0; j < n; ++j)
      vars.push_back(lb.add_var(pick(rng) == 0 ? VarBound::Free : VarBound::NonNeg));
    for (int j = 0; j < n; ++j) lb.set_objective(vars[j], entry(rng));
    for (int i = 0; i < m; ++i) {
      std::vector<std::pair<int, Rational>> row;
      for (int j = 0; j < n; ++j) {
        int e = entry(rng);
        if (e) row.emplace_back(vars[j], e);
      }
      lb.add_row(std::move(row), pick(rng) == 0 ? RowSense::EQ : RowSense::LE,
                 entry(rng));
    }
    solve_lp(lb.build());  // throws if the self-check fails
  }
  set_lp_self_check(false);
  CHECK(lp_self_check_count() >= 300);
}
