#include "calogero/orthopoly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <numbers>

#include "calogero/errors.hpp"
#include "calogero/tridiagonal.hpp"

namespace calogero {

namespace {

constexpr double kNodeTol = 1e-14;

void require_degree(int n) {
  if (n < 0) throw DomainError("polynomial degree must be non-negative, got " + std::to_string(n));
}

void require_jacobi_params(double a, double b) {
  if (!(a > -1.0) || !(b > -1.0))
    throw DomainError("Jacobi parameters must exceed -1, got a=" + std::to_string(a) + " b=" + std::to_string(b));
}

// log of the Gauss-Jacobi weight constant Gamma(n+a+1)Gamma(n+b+1) 2^{a+b+1} / (Gamma(n+a+b+1) n!)
double log_jacobi_weight_constant(int n, double a, double b) {
  return std::lgamma(n + a + 1.0) + std::lgamma(n + b + 1.0) - std::lgamma(n + a + b + 1.0) -
         std::lgamma(n + 1.0) + (a + b + 1.0) * std::numbers::ln2;
}

double jacobi_weight(int n, double a, double b, double x) {
  const double dp = jacobi_poly_derivative(n, a, b, x);
  return std::exp(log_jacobi_weight_constant(n, a, b) - std::log1p(-x * x) - 2.0 * std::log(std::abs(dp)));
}

double jacobi_moment(double a, double b) {
  return std::exp((a + b + 1.0) * std::numbers::ln2 + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                  std::lgamma(a + b + 2.0));
}

bool rule_is_sane(const QuadratureRule& r, double lo, double hi, double moment) {
  double total = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    if (!std::isfinite(r.nodes[i]) || !(r.nodes[i] > lo) || !(r.nodes[i] < hi)) return false;
    if (i > 0 && !(r.nodes[i] > r.nodes[i - 1])) return false;
    if (!std::isfinite(r.weights[i]) || !(r.weights[i] > 0.0)) return false;
    total += r.weights[i];
  }
  return std::abs(total - moment) <= 1e-10 * moment;
}

// Newton polish of a single node on P_n^{(a,b)}; returns false if it fails.
bool newton_jacobi_node(int n, double a, double b, double& z) {
  for (int it = 0; it < 100; ++it) {
    const double p = jacobi_poly(n, a, b, z);
    const double dp = jacobi_poly_derivative(n, a, b, z);
    if (dp == 0.0 || !std::isfinite(dp)) return false;
    const double step = p / dp;
    z -= step;
    if (std::abs(step) <= kNodeTol * std::max(1.0, std::abs(z))) return std::abs(z) < 1.0;
  }
  return false;
}

}  // namespace

double gegenbauer(int n, double q, double x) {
  require_degree(n);
  if (!(q > 0.0)) throw DomainError("Gegenbauer parameter must be positive, got " + std::to_string(q));
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 2.0 * q * x;
  for (int j = 1; j < n; ++j) {
    const double next = (2.0 * x * (j + q) * cur - (j + 2.0 * q - 1.0) * prev) / (j + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double jacobi_poly(int n, double a, double b, double x) {
  require_degree(n);
  require_jacobi_params(a, b);
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 0.5 * (a - b + (a + b + 2.0) * x);
  for (int j = 2; j <= n; ++j) {
    const double s = 2.0 * j + a + b;
    const double c1 = 2.0 * j * (j + a + b) * (s - 2.0);
    const double c2 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
    const double c3 = 2.0 * (j + a - 1.0) * (j + b - 1.0) * s;
    const double next = (c2 * cur - c3 * prev) / c1;
    prev = cur;
    cur = next;
  }
  return cur;
}

double jacobi_poly_derivative(int n, double a, double b, double x) {
  require_degree(n);
  require_jacobi_params(a, b);
  if (n == 0) return 0.0;
  return 0.5 * (n + a + b + 1.0) * jacobi_poly(n - 1, a + 1.0, b + 1.0, x);
}

double laguerre(int n, double alpha, double x) {
  require_degree(n);
  if (!(alpha > -1.0)) throw DomainError("Laguerre parameter must exceed -1, got " + std::to_string(alpha));
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 + alpha - x;
  for (int j = 1; j < n; ++j) {
    const double next = ((2.0 * j + 1.0 + alpha - x) * cur - (j + alpha) * prev) / (j + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double hermite(int n, double x) {
  require_degree(n);
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 2.0 * x;
  for (int j = 1; j < n; ++j) {
    const double next = 2.0 * x * cur - 2.0 * j * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::string to_string(Family f) {
  switch (f) {
    case Family::Gegenbauer: return "gegenbauer";
    case Family::Jacobi: return "jacobi";
    case Family::Laguerre: return "laguerre";
    case Family::Hermite: return "hermite";
  }
  return "unknown";
}

PolynomialFamily PolynomialFamily::gegenbauer(int n, double q) {
  require_degree(n);
  if (!(q > 0.0)) throw DomainError("Gegenbauer parameter must be positive");
  return {Family::Gegenbauer, n, q, 0.0};
}

PolynomialFamily PolynomialFamily::jacobi(int n, double a, double b) {
  require_degree(n);
  require_jacobi_params(a, b);
  return {Family::Jacobi, n, a, b};
}

PolynomialFamily PolynomialFamily::laguerre(int n, double alpha) {
  require_degree(n);
  if (!(alpha > -1.0)) throw DomainError("Laguerre parameter must exceed -1");
  return {Family::Laguerre, n, alpha, 0.0};
}

PolynomialFamily PolynomialFamily::hermite(int n) {
  require_degree(n);
  return {Family::Hermite, n, 0.0, 0.0};
}

double PolynomialFamily::operator()(double x) const {
  switch (family_) {
    case Family::Gegenbauer: return calogero::gegenbauer(n_, p0_, x);
    case Family::Jacobi: return jacobi_poly(n_, p0_, p1_, x);
    case Family::Laguerre: return calogero::laguerre(n_, p0_, x);
    case Family::Hermite: return calogero::hermite(n_, x);
  }
  return 0.0;
}

namespace detail {

bool gauss_jacobi_newton(int n, double a, double b, QuadratureRule& out) {
  // Initial guesses follow the classic asymptotic fits; nodes come out
  // descending from +1 and are reversed at the end.
  std::vector<double> x(static_cast<std::size_t>(n));
  const double dn = n;
  double z = 0.0;
  for (int i = 0; i < n; ++i) {
    if (i == 0) {
      const double an = a / dn, bn = b / dn;
      const double r1 = (1.0 + a) * (2.78 / (4.0 + dn * dn) + 0.768 * an / dn);
      const double r2 = 1.0 + 1.48 * an + 0.96 * bn + 0.452 * an * an + 0.83 * an * bn;
      z = 1.0 - r1 / r2;
    } else if (i == 1) {
      const double r1 = (4.1 + a) / ((1.0 + a) * (1.0 + 0.156 * a));
      const double r2 = 1.0 + 0.06 * (dn - 8.0) * (1.0 + 0.12 * a) / dn;
      const double r3 = 1.0 + 0.012 * b * (1.0 + 0.25 * std::abs(a)) / dn;
      z -= (1.0 - z) * r1 * r2 * r3;
    } else if (i == 2) {
      const double r1 = (1.67 + 0.28 * a) / (1.0 + 0.37 * a);
      const double r2 = 1.0 + 0.22 * (dn - 8.0) / dn;
      const double r3 = 1.0 + 8.0 * b / ((6.28 + b) * dn * dn);
      z -= (x[0] - z) * r1 * r2 * r3;
    } else if (i == n - 2) {
      const double r1 = (1.0 + 0.235 * b) / (0.766 + 0.119 * b);
      const double r2 = 1.0 / (1.0 + 0.639 * (dn - 4.0) / (1.0 + 0.71 * (dn - 4.0)));
      const double r3 = 1.0 / (1.0 + 20.0 * a / ((7.5 + a) * dn * dn));
      z += (z - x[static_cast<std::size_t>(n - 4)]) * r1 * r2 * r3;
    } else if (i == n - 1) {
      const double r1 = (1.0 + 0.37 * b) / (1.67 + 0.28 * b);
      const double r2 = 1.0 / (1.0 + 0.22 * (dn - 8.0) / dn);
      const double r3 = 1.0 / (1.0 + 8.0 * a / ((6.28 + a) * dn * dn));
      z += (z - x[static_cast<std::size_t>(n - 3)]) * r1 * r2 * r3;
    } else {
      z = 3.0 * x[i - 1] - 3.0 * x[i - 2] + x[i - 3];
    }
    if (!newton_jacobi_node(n, a, b, z)) return false;
    x[static_cast<std::size_t>(i)] = z;
  }
  std::reverse(x.begin(), x.end());
  out.nodes = x;
  out.weights.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out.weights[i] = jacobi_weight(n, a, b, x[i]);
  return rule_is_sane(out, -1.0, 1.0, jacobi_moment(a, b));
}

QuadratureRule gauss_jacobi_golub_welsch(int n, double a, double b) {
  // Jacobi matrix of the monic recurrence.
  SymTridiagonal t;
  t.diag.resize(static_cast<std::size_t>(n));
  t.off.resize(static_cast<std::size_t>(n - 1));
  for (int j = 0; j < n; ++j) {
    const double s = 2.0 * j + a + b;
    t.diag[j] = (j == 0) ? (b - a) / (a + b + 2.0) : (b * b - a * a) / (s * (s + 2.0));
  }
  for (int j = 1; j < n; ++j) {
    const double s = 2.0 * j + a + b;
    const double beta = (j == 1) ? 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b) * (2.0 + a + b) * (3.0 + a + b))
                                 : 4.0 * j * (j + a) * (j + b) * (j + a + b) / (s * s * (s + 1.0) * (s - 1.0));
    t.off[j - 1] = std::sqrt(beta);
  }
  QuadratureRule out;
  out.nodes = lowest_eigenvalues(t, n);
  for (auto& z : out.nodes) {
    double polished = z;
    if (newton_jacobi_node(n, a, b, polished) && std::abs(polished - z) < 1e-6) z = polished;
  }
  out.weights.resize(out.nodes.size());
  for (std::size_t i = 0; i < out.nodes.size(); ++i) out.weights[i] = jacobi_weight(n, a, b, out.nodes[i]);
  return out;
}

}  // namespace detail

QuadratureRule gauss_jacobi_rule(int order, double a, double b) {
  if (order < 1) throw DomainError("quadrature order must be >= 1");
  require_jacobi_params(a, b);
  if (order == 1) {
    return {{(b - a) / (a + b + 2.0)}, {jacobi_moment(a, b)}};
  }
  QuadratureRule rule;
  if (order >= 4 && detail::gauss_jacobi_newton(order, a, b, rule)) return rule;
  rule = detail::gauss_jacobi_golub_welsch(order, a, b);
  if (!rule_is_sane(rule, -1.0, 1.0, jacobi_moment(a, b)))
    throw QuadratureError("Gauss-Jacobi rule failed for order " + std::to_string(order));
  return rule;
}

QuadratureRule gauss_laguerre_rule(int n, double alpha) {
  if (n < 1) throw DomainError("quadrature order must be >= 1");
  if (!(alpha > -1.0)) throw DomainError("Laguerre parameter must exceed -1");
  const double log_norm = std::lgamma(n + alpha + 1.0) - std::lgamma(n + 1.0) - 2.0 * std::log(n + 1.0);
  auto weight = [&](double x) {
    const double l = laguerre(n + 1, alpha, x);
    return std::exp(log_norm + std::log(x) - 2.0 * std::log(std::abs(l)));
  };
  auto polish = [&](double& z) {
    for (int it = 0; it < 100; ++it) {
      const double p = laguerre(n, alpha, z);
      const double dp = (n * p - (n + alpha) * laguerre(n - 1, alpha, z)) / z;
      if (dp == 0.0 || !std::isfinite(dp)) return false;
      const double step = p / dp;
      z -= step;
      if (!(z > 0.0)) return false;
      if (std::abs(step) <= kNodeTol * std::max(1.0, z)) return true;
    }
    return false;
  };
  const double moment = std::exp(std::lgamma(alpha + 1.0));

  // Newton from asymptotic initial guesses.
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  bool ok = true;
  double z = 0.0;
  for (int i = 0; i < n && ok; ++i) {
    if (i == 0) {
      z = (1.0 + alpha) * (3.0 + 0.92 * alpha) / (1.0 + 2.4 * n + 1.8 * alpha);
    } else if (i == 1) {
      z += (15.0 + 6.25 * alpha) / (1.0 + 0.9 * alpha + 2.5 * n);
    } else {
      const double ai = i - 1;
      z += ((1.0 + 2.55 * ai) / (1.9 * ai) + 1.26 * ai * alpha / (1.0 + 3.5 * ai)) * (z - rule.nodes[i - 2]) /
           (1.0 + 0.3 * alpha);
    }
    ok = polish(z);
    rule.nodes[static_cast<std::size_t>(i)] = z;
  }
  if (ok) {
    rule.weights.resize(rule.nodes.size());
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) rule.weights[i] = weight(rule.nodes[i]);
    if (rule_is_sane(rule, 0.0, std::numeric_limits<double>::infinity(), moment)) return rule;
  }

  // Golub-Welsch fallback.
  SymTridiagonal t;
  t.diag.resize(static_cast<std::size_t>(n));
  t.off.resize(static_cast<std::size_t>(n - 1));
  for (int j = 0; j < n; ++j) t.diag[j] = 2.0 * j + alpha + 1.0;
  for (int j = 1; j < n; ++j) t.off[j - 1] = std::sqrt(j * (j + alpha));
  rule.nodes = lowest_eigenvalues(t, n);
  for (auto& node : rule.nodes) {
    double polished = node;
    if (polish(polished) && std::abs(polished - node) < 1e-6 * std::max(1.0, node)) node = polished;
  }
  rule.weights.resize(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) rule.weights[i] = weight(rule.nodes[i]);
  if (!rule_is_sane(rule, 0.0, std::numeric_limits<double>::infinity(), moment))
    throw QuadratureError("Gauss-Laguerre rule failed for order " + std::to_string(n));
  return rule;
}

}  // namespace calogero
