#pragma once

#include <string>
#include <vector>

namespace calogero {

// Classical orthogonal polynomials by forward three-term recurrence.
// Parameter-domain violations throw DomainError.

/// Gegenbauer C_n^{(q)}(x), q > 0.
double gegenbauer(int n, double q, double x);

/// Jacobi P_n^{(a,b)}(x), a > -1, b > -1.
double jacobi_poly(int n, double a, double b, double x);

/// d/dx P_n^{(a,b)}(x).
double jacobi_poly_derivative(int n, double a, double b, double x);

/// Generalized Laguerre L_n^{(alpha)}(x), alpha > -1.
double laguerre(int n, double alpha, double x);

/// Physicists' Hermite H_n(x).
double hermite(int n, double x);

enum class Family { Gegenbauer, Jacobi, Laguerre, Hermite };

std::string to_string(Family f);

/// One member of a polynomial family with validated parameters.
class PolynomialFamily {
 public:
  static PolynomialFamily gegenbauer(int n, double q);
  static PolynomialFamily jacobi(int n, double a, double b);
  static PolynomialFamily laguerre(int n, double alpha);
  static PolynomialFamily hermite(int n);

  Family family() const { return family_; }
  int degree() const { return n_; }
  double first_parameter() const { return p0_; }
  double second_parameter() const { return p1_; }

  double operator()(double x) const;

 private:
  PolynomialFamily(Family f, int n, double p0, double p1) : family_(f), n_(n), p0_(p0), p1_(p1) {}

  Family family_;
  int n_;
  double p0_;
  double p1_;
};

struct QuadratureRule {
  std::vector<double> nodes;    // ascending
  std::vector<double> weights;  // positive

  int order() const { return static_cast<int>(nodes.size()); }
};

/// Gauss rule for the weight (1-x)^a (1+x)^b on [-1, 1]; exact through degree
/// 2*order-1. Newton iteration on the recurrence, Golub-Welsch fallback.
QuadratureRule gauss_jacobi_rule(int order, double a, double b);

/// Gauss rule for the weight x^alpha e^{-x} on [0, inf).
QuadratureRule gauss_laguerre_rule(int order, double alpha);

namespace detail {
// Exposed for tests: each path on its own.
QuadratureRule gauss_jacobi_golub_welsch(int order, double a, double b);
bool gauss_jacobi_newton(int order, double a, double b, QuadratureRule& out);
}  // namespace detail

}  // namespace calogero
