#include "calogero/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "calogero/errors.hpp"

namespace calogero {

namespace {

void check_shape(const SymTridiagonal& t) {
  if (t.diag.empty() || t.off.size() + 1 != t.diag.size())
    throw DomainError("symmetric tridiagonal matrix has inconsistent shape");
}

}  // namespace

int sturm_count(const SymTridiagonal& t, double x) {
  const int n = t.size();
  const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  int negatives = 0;
  double q = t.diag[0] - x;
  for (int i = 0;; ++i) {
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++negatives;
    if (i + 1 == n) break;
    const double e = t.off[static_cast<std::size_t>(i)];
    q = t.diag[static_cast<std::size_t>(i) + 1] - x - e * e / q;
  }
  return negatives;
}

std::pair<double, double> gerschgorin_bounds(const SymTridiagonal& t) {
  check_shape(t);
  const int n = t.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(t.off[i - 1]);
    if (i + 1 < n) radius += std::abs(t.off[i]);
    lo = std::min(lo, t.diag[i] - radius);
    hi = std::max(hi, t.diag[i] + radius);
  }
  const double pad = 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi)) + 1e-300;
  return {lo - pad, hi + pad};
}

double eigenvalue_by_bisection(const SymTridiagonal& t, int index) {
  check_shape(t);
  if (index < 0 || index >= t.size()) throw DomainError("eigenvalue index out of range");
  auto [lo, hi] = gerschgorin_bounds(t);
  const double eps = std::numeric_limits<double>::epsilon();
  for (int iter = 0; iter < 400; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (hi - lo <= 2.0 * eps * std::max(std::abs(lo), std::abs(hi))) break;
    if (sturm_count(t, mid) > index)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> lowest_eigenvalues(const SymTridiagonal& t, int count) {
  check_shape(t);
  if (count < 1 || count > t.size()) throw DomainError("requested eigenvalue count out of range");
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = eigenvalue_by_bisection(t, i);
  return out;
}

std::vector<double> eigenvector(const SymTridiagonal& t, double eigenvalue) {
  check_shape(t);
  const std::size_t n = t.diag.size();
  // Shift slightly off the eigenvalue so the factorization stays regular.
  const double scale = std::max(1.0, std::abs(eigenvalue));
  const double shift = eigenvalue + 1e-10 * scale;

  std::vector<double> y(n, 1.0), c(n), d(n);
  for (int sweep = 0; sweep < 4; ++sweep) {
    // Thomas algorithm on (T - shift).
    double denom = t.diag[0] - shift;
    if (denom == 0.0) denom = 1e-300;
    c[0] = n > 1 ? t.off[0] / denom : 0.0;
    d[0] = y[0] / denom;
    for (std::size_t i = 1; i < n; ++i) {
      denom = t.diag[i] - shift - t.off[i - 1] * c[i - 1];
      if (denom == 0.0) denom = 1e-300;
      c[i] = i + 1 < n ? t.off[i] / denom : 0.0;
      d[i] = (y[i] - t.off[i - 1] * d[i - 1]) / denom;
    }
    y[n - 1] = d[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) y[i] = d[i] - c[i] * y[i + 1];
    const double norm = std::sqrt(std::inner_product(y.begin(), y.end(), y.begin(), 0.0));
    for (auto& v : y) v /= norm;
  }
  return y;
}

}  // namespace calogero
