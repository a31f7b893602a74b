#pragma once

#include "polyset/rational.hpp"

#include <optional>

namespace polyset {

/// Scales a nonzero rational vector by a positive factor so that all entries
/// are integers with overall gcd 1. Unique representative of the ray
/// {lambda*v : lambda > 0}; idempotent.
Vec primitive_normalize(const Vec& v);

/// Exact rank via Gaussian elimination over the rationals.
int rank(const Mat& a);

struct LinearSolution {
  Vec x;              // one particular solution, A x = b exactly
  Mat nullspace;      // columns span {z : A z = 0}; primitive entries
};

/// Solves A x = b exactly. Returns nullopt when the system is inconsistent.
std::optional<LinearSolution> solve_linear(const Mat& a, const Vec& b);

/// Columns form a primitive basis of {z : A z = 0}.
Mat nullspace(const Mat& a);

/// Row echelon form in place; returns pivot columns. Eliminates above and
/// below pivots (reduced form, pivots scaled to 1).
std::vector<int> rref(Mat& m);

}  // namespace polyset
