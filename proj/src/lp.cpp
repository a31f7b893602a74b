#include "polyset/lp.hpp"

#include <stdexcept>

namespace polyset {

namespace {

std::atomic<bool> g_self_check{false};
std::atomic<long> g_self_check_count{0};

// Dense simplex tableau over the rationals for the internal standard form
//   max cbar^T x  s.t.  T0 x = b, x >= 0
// built from an LPProblem by splitting free variables and adding slacks.
// Artificial columns occupy the trailing block; they start as the identity,
// so throughout the run they hold B^{-1} of the (sign-normalized) system.
class Tableau {
 public:
  explicit Tableau(const LPProblem& p) : p_(p) {
    const int n = p.num_vars();
    const int m = p.num_rows();
    // column layout: per-variable (one col, or plus/minus for free), slacks, artificials
    plus_col_.assign(n, -1);
    minus_col_.assign(n, -1);
    int col = 0;
    for (int j = 0; j < n; ++j) {
      plus_col_[j] = col++;
      if (p.bound[j] == VarBound::Free) minus_col_[j] = col++;
    }
    slack_col_.assign(m, -1);
    for (int i = 0; i < m; ++i)
      if (p.sense[i] == RowSense::LE) slack_col_[i] = col++;
    structural_cols_ = col;
    art_col_ = col;
    total_cols_ = col + m;

    row_sign_.assign(m, Rational(1));
    t_.assign(static_cast<size_t>(m) * total_cols_, Rational(0));
    b_.assign(m, Rational(0));
    basis_.assign(m, -1);
    for (int i = 0; i < m; ++i) {
      Rational s = (p.rhs(i) < 0) ? Rational(-1) : Rational(1);
      row_sign_[i] = s;
      for (int j = 0; j < n; ++j) {
        if (p.coeff(i, j) == 0) continue;
        at(i, plus_col_[j]) = s * p.coeff(i, j);
        if (minus_col_[j] >= 0) at(i, minus_col_[j]) = -s * p.coeff(i, j);
      }
      if (slack_col_[i] >= 0) at(i, slack_col_[i]) = s;
      at(i, art_col_ + i) = 1;
      b_[i] = s * p.rhs(i);
      basis_[i] = art_col_ + i;
    }
  }

  LPOutcome run() {
    const int m = p_.num_rows();
    // Phase 1: maximize -sum(artificials)
    std::vector<Rational> obj1(total_cols_, Rational(0));
    for (int i = 0; i < m; ++i) obj1[art_col_ + i] = -1;
    load_objective(obj1);
    simplex(/*allow_artificial_entering=*/false);
    if (value_ < 0) return infeasible_outcome();
    drive_out_artificials();

    // Phase 2: original objective
    std::vector<Rational> obj2(total_cols_, Rational(0));
    for (int j = 0; j < p_.num_vars(); ++j) {
      obj2[plus_col_[j]] = p_.c(j);
      if (minus_col_[j] >= 0) obj2[minus_col_[j]] = -p_.c(j);
    }
    obj_ = obj2;
    load_objective(obj2);
    int unbounded_col = simplex(false);
    if (unbounded_col >= 0) return unbounded_outcome(unbounded_col);
    return optimal_outcome();
  }

 private:
  Rational& at(int r, int c) { return t_[static_cast<size_t>(r) * total_cols_ + c]; }
  const Rational& at(int r, int c) const { return t_[static_cast<size_t>(r) * total_cols_ + c]; }

  void load_objective(const std::vector<Rational>& obj) {
    zrow_.assign(total_cols_, Rational(0));
    value_ = 0;
    for (int j = 0; j < total_cols_; ++j) zrow_[j] = obj[j];
    for (int r = 0; r < p_.num_rows(); ++r) {
      const Rational& cb = obj[basis_[r]];
      if (cb == 0) continue;
      value_ += cb * b_[r];
      for (int j = 0; j < total_cols_; ++j)
        if (at(r, j) != 0) zrow_[j] -= cb * at(r, j);
    }
  }

  void pivot(int prow, int pcol) {
    const int m = p_.num_rows();
    const Rational piv = at(prow, pcol);
    std::vector<int> nz;
    nz.reserve(total_cols_);
    for (int j = 0; j < total_cols_; ++j) {
      if (at(prow, j) == 0) continue;
      at(prow, j) /= piv;
      nz.push_back(j);
    }
    b_[prow] /= piv;
    for (int r = 0; r < m; ++r) {
      if (r == prow) continue;
      const Rational f = at(r, pcol);
      if (f == 0) continue;
      for (int j : nz) at(r, j) -= f * at(prow, j);
      b_[r] -= f * b_[prow];
    }
    const Rational zf = zrow_[pcol];
    if (zf != 0) {
      for (int j : nz) zrow_[j] -= zf * at(prow, j);
      value_ += zf * b_[prow];
    }
    basis_[prow] = pcol;
  }

  // Bland's rule: entering = lowest-index improving column, leaving = lowest
  // basis index among minimal ratios. Returns entering column on
  // unboundedness, -1 at optimality.
  int simplex(bool allow_artificial_entering) {
    const int m = p_.num_rows();
    const int enter_limit = allow_artificial_entering ? total_cols_ : structural_cols_;
    for (;;) {
      int enter = -1;
      for (int j = 0; j < enter_limit; ++j) {
        if (zrow_[j] > 0) { enter = j; break; }
      }
      if (enter < 0) return -1;
      int leave = -1;
      Rational best_ratio;
      for (int r = 0; r < m; ++r) {
        const Rational& a = at(r, enter);
        if (a <= 0) continue;
        Rational ratio = b_[r] / a;
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (leave < 0) return enter;
      pivot(leave, enter);
    }
  }

  // After phase 1 at value 0: pivot basic artificials out wherever a
  // structural column has a nonzero entry; a row with none is redundant and
  // its artificial stays basic at zero (it can never change again since
  // entering columns are structural).
  void drive_out_artificials() {
    for (int r = 0; r < p_.num_rows(); ++r) {
      if (basis_[r] < art_col_) continue;
      for (int j = 0; j < structural_cols_; ++j) {
        if (at(r, j) != 0) { pivot(r, j); break; }
      }
    }
  }

  // y_i = row_sign_i * sum_r obj[basis_r] * Binv[r][i]; Binv is the
  // artificial block.
  Vec duals_from(const std::vector<Rational>& obj) const {
    const int m = p_.num_rows();
    Vec y(m);
    for (int i = 0; i < m; ++i) {
      Rational acc = 0;
      for (int r = 0; r < m; ++r) {
        const Rational& cb = obj[basis_[r]];
        if (cb != 0) acc += cb * at(r, art_col_ + i);
      }
      y(i) = row_sign_[i] * acc;
    }
    return y;
  }

  Vec current_point() const {
    Vec z(p_.num_vars());
    z.setZero();
    std::vector<Rational> x(total_cols_, Rational(0));
    for (int r = 0; r < p_.num_rows(); ++r) x[basis_[r]] = b_[r];
    for (int j = 0; j < p_.num_vars(); ++j) {
      z(j) = x[plus_col_[j]];
      if (minus_col_[j] >= 0) z(j) -= x[minus_col_[j]];
    }
    return z;
  }

  LPOutcome infeasible_outcome() const {
    std::vector<Rational> obj1(total_cols_, Rational(0));
    for (int i = 0; i < p_.num_rows(); ++i) obj1[art_col_ + i] = -1;
    LPOutcome o;
    o.status = LPStatus::Infeasible;
    o.farkas = duals_from(obj1);
    return o;
  }

  LPOutcome unbounded_outcome(int enter) const {
    LPOutcome o;
    o.status = LPStatus::Unbounded;
    o.feasible_point = current_point();
    Vec ray(p_.num_vars());
    ray.setZero();
    std::vector<Rational> xr(total_cols_, Rational(0));
    xr[enter] = 1;
    for (int r = 0; r < p_.num_rows(); ++r) xr[basis_[r]] = -at(r, enter);
    for (int j = 0; j < p_.num_vars(); ++j) {
      ray(j) = xr[plus_col_[j]];
      if (minus_col_[j] >= 0) ray(j) -= xr[minus_col_[j]];
    }
    o.ray = ray;
    return o;
  }

  LPOutcome optimal_outcome() const {
    LPOutcome o;
    o.status = LPStatus::Optimal;
    o.solution = current_point();
    o.value = p_.c.size() ? Rational(p_.c.dot(o.solution)) : Rational(0);
    o.dual = duals_from(obj_);
    return o;
  }

  const LPProblem& p_;
  std::vector<int> plus_col_, minus_col_, slack_col_;
  std::vector<Rational> row_sign_;
  int structural_cols_ = 0, art_col_ = 0, total_cols_ = 0;
  std::vector<Rational> t_;
  std::vector<Rational> b_;
  std::vector<Rational> zrow_;
  Rational value_;
  std::vector<int> basis_;
  std::vector<Rational> obj_;
};

}  // namespace

LPProblem LPBuilder::build() const {
  LPProblem p;
  const int n = static_cast<int>(bounds_.size());
  const int m = static_cast<int>(rows_.size());
  p.c = Vec(n);
  for (int j = 0; j < n; ++j) p.c(j) = objective_[j];
  p.coeff = Mat(m, n);
  p.coeff.setZero();
  p.rhs = Vec(m);
  for (int i = 0; i < m; ++i) {
    for (const auto& [j, v] : rows_[i]) p.coeff(i, j) += v;
    p.rhs(i) = rhs_[i];
  }
  p.sense = senses_;
  p.bound = bounds_;
  return p;
}

LPOutcome solve_lp(const LPProblem& p) {
  if (p.coeff.rows() != p.rhs.size() || p.coeff.cols() != p.c.size() ||
      p.sense.size() != static_cast<size_t>(p.coeff.rows()) ||
      p.bound.size() != static_cast<size_t>(p.coeff.cols()))
    throw std::invalid_argument("solve_lp: malformed problem");
  Tableau t(p);
  LPOutcome o = t.run();
  if (g_self_check.load(std::memory_order_relaxed)) {
    ++g_self_check_count;
    if (!verify_certificate(p, o)) throw std::logic_error("solve_lp: certificate check failed");
  }
  return o;
}

namespace {

bool point_feasible(const LPProblem& p, const Vec& z) {
  if (z.size() != p.c.size()) return false;
  for (int j = 0; j < p.num_vars(); ++j)
    if (p.bound[j] == VarBound::NonNeg && z(j) < 0) return false;
  Vec mz = p.coeff * z;
  for (int i = 0; i < p.num_rows(); ++i) {
    if (p.sense[i] == RowSense::LE ? (mz(i) > p.rhs(i)) : (mz(i) != p.rhs(i))) return false;
  }
  return true;
}

}  // namespace

bool verify_certificate(const LPProblem& p, const LPOutcome& o) {
  switch (o.status) {
    case LPStatus::Optimal: {
      if (!point_feasible(p, o.solution)) return false;
      if (o.dual.size() != p.num_rows()) return false;
      for (int i = 0; i < p.num_rows(); ++i)
        if (p.sense[i] == RowSense::LE && o.dual(i) < 0) return false;
      Vec s = p.c - p.coeff.transpose() * o.dual;
      for (int j = 0; j < p.num_vars(); ++j) {
        if (p.bound[j] == VarBound::Free ? (s(j) != 0) : (s(j) > 0)) return false;
      }
      return Rational(p.c.dot(o.solution)) == Rational(o.dual.dot(p.rhs)) &&
             Rational(p.c.dot(o.solution)) == o.value;
    }
    case LPStatus::Unbounded: {
      if (!point_feasible(p, o.feasible_point)) return false;
      if (o.ray.size() != p.num_vars() || o.ray.isZero()) return false;
      Vec mr = p.coeff * o.ray;
      for (int i = 0; i < p.num_rows(); ++i) {
        if (p.sense[i] == RowSense::LE ? (mr(i) > 0) : (mr(i) != 0)) return false;
      }
      for (int j = 0; j < p.num_vars(); ++j)
        if (p.bound[j] == VarBound::NonNeg && o.ray(j) < 0) return false;
      return Rational(p.c.dot(o.ray)) > 0;
    }
    case LPStatus::Infeasible: {
      if (o.farkas.size() != p.num_rows()) return false;
      for (int i = 0; i < p.num_rows(); ++i)
        if (p.sense[i] == RowSense::LE && o.farkas(i) < 0) return false;
      Vec s = p.coeff.transpose() * o.farkas;
      for (int j = 0; j < p.num_vars(); ++j) {
        if (p.bound[j] == VarBound::Free ? (s(j) != 0) : (s(j) < 0)) return false;
      }
      return Rational(o.farkas.dot(p.rhs)) < 0;
    }
  }
  return false;
}

void set_lp_self_check(bool enabled) { g_self_check.store(enabled); }
long lp_self_check_count() { return g_self_check_count.load(); }

}  // namespace polyset
