#pragma once

#include <span>
#include <vector>

namespace calogero {

/// Real symmetric tridiagonal matrix: `diag` has n entries, `off` has n-1.
struct SymTridiagonal {
  std::vector<double> diag;
  std::vector<double> off;

  int size() const { return static_cast<int>(diag.size()); }
};

/// Number of eigenvalues strictly below `x` (Sturm sequence via LDL^T pivots).
int sturm_count(const SymTridiagonal& t, double x);

/// Gerschgorin enclosure [lo, hi] of the spectrum.
std::pair<double, double> gerschgorin_bounds(const SymTridiagonal& t);

/// The `index`-th smallest eigenvalue (0-based) by bisection on the Sturm count.
double eigenvalue_by_bisection(const SymTridiagonal& t, int index);

/// The `count` smallest eigenvalues in ascending order.
std::vector<double> lowest_eigenvalues(const SymTridiagonal& t, int count);

/// Unit-norm eigenvector for a (converged) eigenvalue, by inverse iteration.
std::vector<double> eigenvector(const SymTridiagonal& t, double eigenvalue);

}  // namespace calogero
