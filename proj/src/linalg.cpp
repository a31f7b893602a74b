#include "polyset/linalg.hpp"

namespace polyset {

Vec primitive_normalize(const Vec& v) {
  if (v.size() == 0 || v.isZero()) throw std::invalid_argument("primitive_normalize: zero vector");
  Integer den_lcm = 1;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    den_lcm = lcm(den_lcm, denominator(v(i)));
  Integer num_gcd = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    num_gcd = gcd(num_gcd, Integer(numerator(v(i)) * (den_lcm / denominator(v(i)))));
  Rational factor(den_lcm, num_gcd);
  Vec out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = v(i) * factor;
  return out;
}

std::vector<int> rref(Mat& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int pivot = -1;
    for (int r = row; r < m.rows(); ++r)
      if (m(r, col) != 0) { pivot = r; break; }
    if (pivot < 0) continue;
    if (pivot != row) m.row(pivot).swap(m.row(row));
    m.row(row) /= m(row, col);
    for (int r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      m.row(r) -= m(r, col) * m.row(row);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

int rank(const Mat& a) {
  Mat m = a;
  return static_cast<int>(rref(m).size());
}

Mat nullspace(const Mat& a) {
  Mat m = a;
  std::vector<int> pivots = rref(m);
  std::vector<bool> is_pivot(a.cols(), false);
  for (int c : pivots) is_pivot[c] = true;

  int free_count = static_cast<int>(a.cols()) - static_cast<int>(pivots.size());
  Mat basis(a.cols(), free_count);
  basis.setZero();
  int k = 0;
  for (int c = 0; c < a.cols(); ++c) {
    if (is_pivot[c]) continue;
    Vec z(a.cols());
    z.setZero();
    z(c) = 1;
    for (size_t p = 0; p < pivots.size(); ++p) z(pivots[p]) = -m(static_cast<int>(p), c);
    basis.col(k++) = primitive_normalize(z);
  }
  return basis;
}

std::optional<LinearSolution> solve_linear(const Mat& a, const Vec& b) {
  if (a.rows() != b.size()) throw std::invalid_argument("solve_linear: dimension mismatch");
  Mat aug(a.rows(), a.cols() + 1);
  aug.leftCols(a.cols()) = a;
  aug.col(a.cols()) = b;
  std::vector<int> pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;

  LinearSolution sol;
  sol.x = Vec(a.cols());
  sol.x.setZero();
  for (size_t p = 0; p < pivots.size(); ++p)
    sol.x(pivots[p]) = aug(static_cast<int>(p), a.cols());
  sol.nullspace = nullspace(a);
  return sol;
}

}  // namespace polyset
