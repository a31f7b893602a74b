#pragma once

#include "polyset/linalg.hpp"

#include <atomic>
#include <variant>
#include <vector>

namespace polyset {

enum class RowSense { LE, EQ };
enum class VarBound { Free, NonNeg };

/// maximize c^T z  subject to  M z (<=|=) d  row-wise, z_j free or >= 0.
struct LPProblem {
  Vec c;
  Mat coeff;
  Vec rhs;
  std::vector<RowSense> sense;
  std::vector<VarBound> bound;

  int num_vars() const { return static_cast<int>(c.size()); }
  int num_rows() const { return static_cast<int>(rhs.size()); }
};

/// Incremental construction of block-structured LPs.
class LPBuilder {
 public:
  int add_var(VarBound b) {
    bounds_.push_back(b);
    objective_.emplace_back(0);
    return static_cast<int>(bounds_.size()) - 1;
  }
  std::vector<int> add_vars(int count, VarBound b) {
    std::vector<int> ids(count);
    for (int i = 0; i < count; ++i) ids[i] = add_var(b);
    return ids;
  }
  void set_objective(int var, const Rational& coef) { objective_[var] = coef; }
  void add_row(std::vector<std::pair<int, Rational>> entries, RowSense s, Rational rhs) {
    rows_.push_back(std::move(entries));
    senses_.push_back(s);
    rhs_.push_back(std::move(rhs));
  }
  LPProblem build() const;

 private:
  std::vector<VarBound> bounds_;
  std::vector<Rational> objective_;
  std::vector<std::vector<std::pair<int, Rational>>> rows_;
  std::vector<RowSense> senses_;
  std::vector<Rational> rhs_;
};

enum class LPStatus { Optimal, Unbounded, Infeasible };

struct LPOutcome {
  LPStatus status;
  // Optimal
  Vec solution;
  Rational value;
  Vec dual;  // per-row multipliers certifying optimality
  // Unbounded
  Vec feasible_point;
  Vec ray;
  // Infeasible
  Vec farkas;  // per-row multipliers certifying infeasibility
};

/// Exact two-phase simplex with Bland's rule; deterministic. Every outcome
/// carries a certificate checkable by verify_certificate.
LPOutcome solve_lp(const LPProblem& p);

bool verify_certificate(const LPProblem& p, const LPOutcome& o);

/// When enabled, solve_lp checks its own certificate on every call and
/// throws std::logic_error on a mismatch. Used by the test suites.
void set_lp_self_check(bool enabled);
/// Number of solve_lp calls whose certificate was self-checked.
long lp_self_check_count();

}  // namespace polyset
