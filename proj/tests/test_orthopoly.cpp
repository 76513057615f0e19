#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <random>

#include "calogero/errors.hpp"
#include "calogero/orthopoly.hpp"

using namespace calogero;
using Big = boost::multiprecision::cpp_bin_float_50;

namespace {

// Explicit finite sums evaluated in 50 digits. Each returns the value and the
// sum of absolute terms (the scale against which cancellation is judged).
struct Series {
  Big value = 0;
  Big scale = 0;
};

// (q)_m, the rising factorial.
Big rising(Big q, int m) {
  Big p = 1;
  for (int i = 0; i < m; ++i) p *= q + i;
  return p;
}

Big factorial(int n) { return rising(1, n); }

// Binomial (n + a choose j) with real a, as a product.
Big gbinom(int n, Big a, int j) {
  // Gamma(n+a+1) / (Gamma(j+1) Gamma(n+a-j+1)) = prod_{t=1..j} (n + a - j + t) / t
  Big p = 1;
  for (int t = 1; t <= j; ++t) p *= (Big(n) + a - j + t) / t;
  return p;
}

Series gegenbauer_series(int n, double q, double x) {
  Series s;
  for (int k = 0; 2 * k <= n; ++k) {
    Big term = rising(Big(q), n - k) / (factorial(k) * factorial(n - 2 * k)) * pow(Big(2) * x, n - 2 * k);
    if (k % 2) term = -term;
    s.value += term;
    s.scale += abs(term);
  }
  return s;
}

Series jacobi_series(int n, double a, double b, double x) {
  Series s;
  const Big xm = (Big(x) - 1) / 2, xp = (Big(x) + 1) / 2;
  for (int j = 0; j <= n; ++j) {
    const Big term = gbinom(n, Big(a), n - j) * gbinom(n, Big(b), j) * pow(xm, j) * pow(xp, n - j);
    s.value += term;
    s.scale += abs(term);
  }
  return s;
}

Series laguerre_series(int n, double alpha, double x) {
  Series s;
  for (int i = 0; i <= n; ++i) {
    Big term = gbinom(n, Big(alpha), n - i) * pow(Big(x), i) / factorial(i);
    if (i % 2) term = -term;
    s.value += term;
    s.scale += abs(term);
  }
  return s;
}

Series hermite_series(int n, double x) {
  Series s;
  for (int m = 0; 2 * m <= n; ++m) {
    Big term = factorial(n) / (factorial(m) * factorial(n - 2 * m)) * pow(Big(2) * x, n - 2 * m);
    if (m % 2) term = -term;
    s.value += term;
    s.scale += abs(term);
  }
  return s;
}

void check_against(double got, const Series& s, double rel = 1e-13) {
  const double want = static_cast<double>(s.value);
  const double scale = static_cast<double>(s.scale);
  CHECK(std::abs(got - want) <= rel * std::max(scale, 1e-300));
}

// Integral of (1-x)^a (1+x)^b x^m over [-1, 1] by expanding x = 2t - 1. The
// alternating sum cancels heavily, so it runs in 50 digits; the common factor
// B(a+1, b+1) is kept in double.
double jacobi_moment(double a, double b, int m) {
  Big sum = 0, binom = 1, beta_ratio = 1;  // B(a+1, b+j+1) / B(a+1, b+1)
  for (int j = 0; j <= m; ++j) {
    const Big term = binom * pow(Big(2), j) * beta_ratio;
    sum += (m - j) % 2 ? -term : term;
    binom = binom * (m - j) / (j + 1);
    beta_ratio = beta_ratio * (Big(b) + j + 1) / (Big(a) + b + j + 2);
  }
  const double beta0 = std::exp(std::lgamma(a + 1) + std::lgamma(b + 1) - std::lgamma(a + b + 2));
  return std::pow(2.0, a + b + 1) * beta0 * static_cast<double>(sum);
}

}  // namespace

TEST_CASE("listed polynomial values") {
  CHECK(gegenbauer(0, 1.0, 0.3) == 1.0);
  CHECK(gegenbauer(1, 1.0, 0.5) == doctest::Approx(1.0).epsilon(1e-15));
  check_against(gegenbauer(3, 0.75, -1.0), gegenbauer_series(3, 0.75, -1.0));
  CHECK(jacobi_poly(0, 3.0, 1.5, 0.9) == 1.0);
  CHECK(std::abs(jacobi_poly(1, 1.0, 1.0, 0.0)) < 1e-16);
  check_against(jacobi_poly(4, 6.5, 1.5, 0.2), jacobi_series(4, 6.5, 1.5, 0.2));
  CHECK(laguerre(0, 2.0, 5.0) == 1.0);
  CHECK(laguerre(1, 2.0, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
  check_against(laguerre(5, 15.5, 3.7), laguerre_series(5, 15.5, 3.7));
  CHECK(hermite(0, 2.2) == 1.0);
  CHECK(hermite(1, 0.0) == 0.0);
  CHECK(hermite(2, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("recurrences agree with 50-digit explicit sums") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ux(-1.0, 1.0), upar(-0.95, 12.0), uq(0.05, 12.0), ur(0.0, 30.0);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = trial % 13;
    const double x = ux(rng);
    const double q = uq(rng), a = upar(rng), b = upar(rng), alpha = upar(rng), r = ur(rng);
    check_against(gegenbauer(n, q, x), gegenbauer_series(n, q, x));
    check_against(jacobi_poly(n, a, b, x), jacobi_series(n, a, b, x));
    check_against(laguerre(n, alpha, r), laguerre_series(n, alpha, r));
    check_against(hermite(n, 3.0 * x), hermite_series(n, 3.0 * x));
  }
}

TEST_CASE("jacobi derivative") {
  for (int n = 0; n < 8; ++n)
    for (double x : {-0.7, 0.1, 0.95}) {
      const double a = 2.5, b = 0.5;
      const double want = n == 0 ? 0.0 : 0.5 * (n + a + b + 1) * jacobi_poly(n - 1, a + 1, b + 1, x);
      CHECK(jacobi_poly_derivative(n, a, b, x) == doctest::Approx(want).epsilon(1e-13));
      const double h = 1e-5;
      const double fd = (jacobi_poly(n, a, b, x + h) - jacobi_poly(n, a, b, x - h)) / (2 * h);
      CHECK(jacobi_poly_derivative(n, a, b, x) == doctest::Approx(fd).epsilon(1e-7));
    }
}

TEST_CASE("parameter domains") {
  CHECK_THROWS_AS(gegenbauer(2, 0.0, 0.1), DomainError);
  CHECK_THROWS_AS(gegenbauer(2, -1.0, 0.1), DomainError);
  CHECK_THROWS_AS(jacobi_poly(2, -1.0, 0.0, 0.1), DomainError);
  CHECK_THROWS_AS(jacobi_poly(2, 0.0, -1.5, 0.1), DomainError);
  CHECK_THROWS_AS(laguerre(2, -1.0, 0.1), DomainError);
  CHECK_THROWS_AS(gegenbauer(-1, 1.0, 0.1), DomainError);
  CHECK_THROWS_AS(PolynomialFamily::jacobi(1, -2.0, 0.0), DomainError);
  CHECK_THROWS_AS(gauss_jacobi_rule(0, 0.0, 0.0), DomainError);
}

TEST_CASE("family wrapper dispatches") {
  CHECK(PolynomialFamily::gegenbauer(3, 0.7)(0.2) == gegenbauer(3, 0.7, 0.2));
  CHECK(PolynomialFamily::jacobi(3, 0.7, 1.1)(0.2) == jacobi_poly(3, 0.7, 1.1, 0.2));
  CHECK(PolynomialFamily::laguerre(3, 0.7)(0.2) == laguerre(3, 0.7, 0.2));
  CHECK(PolynomialFamily::hermite(3)(0.2) == hermite(3, 0.2));
  CHECK(PolynomialFamily::jacobi(3, 0.7, 1.1).degree() == 3);
  CHECK(to_string(Family::Laguerre) == "laguerre");
}

TEST_CASE("small Gauss-Legendre rules") {
  const auto r1 = gauss_jacobi_rule(1, 0.0, 0.0);
  REQUIRE(r1.order() == 1);
  CHECK(std::abs(r1.nodes[0]) < 1e-15);
  CHECK(r1.weights[0] == doctest::Approx(2.0).epsilon(1e-15));
  const auto r2 = gauss_jacobi_rule(2, 0.0, 0.0);
  CHECK(r2.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(r2.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(r2.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r2.weights[1] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("Gauss-Jacobi rule against adaptive quadrature") {
  // order 5, a = 2.5, b = 0.5 integrates x^8 exactly.
  const auto rule = gauss_jacobi_rule(5, 2.5, 0.5);
  double gauss = 0.0;
  for (int i = 0; i < rule.order(); ++i) gauss += rule.weights[i] * std::pow(rule.nodes[i], 8);
  boost::math::quadrature::tanh_sinh<double> ts;
  const double adaptive =
      ts.integrate([](double x) { return std::pow(1 - x, 2.5) * std::pow(1 + x, 0.5) * std::pow(x, 8); }, -1.0, 1.0);
  CHECK(gauss == doctest::Approx(adaptive).epsilon(1e-12));
  CHECK(gauss == doctest::Approx(jacobi_moment(2.5, 0.5, 8)).epsilon(1e-12));

  // A smooth non-polynomial integrand with integer exponents: Gauss-Kronrod reference.
  const auto r = gauss_jacobi_rule(20, 2.0, 3.0);
  double g = 0.0;
  for (int i = 0; i < r.order(); ++i) g += r.weights[i] * std::cos(3 * r.nodes[i]);
  const double gk = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      [](double x) { return (1 - x) * (1 - x) * (1 + x) * (1 + x) * (1 + x) * std::cos(3 * x); }, -1.0, 1.0, 10, 1e-15);
  CHECK(g == doctest::Approx(gk).epsilon(1e-13));
}

TEST_CASE("Gauss rules are exact through degree 2n-1 (random parameters)") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> upar(-0.9, 15.0);
  for (int trial = 0; trial < 60; ++trial) {
    const int order = 1 + trial % 12;
    const double a = upar(rng), b = upar(rng);
    const auto rule = gauss_jacobi_rule(order, a, b);
    REQUIRE(rule.order() == order);
    for (int i = 0; i < order; ++i) {
      CHECK(rule.weights[i] > 0.0);
      if (i) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
    }
    for (int m = 0; m <= 2 * order - 1; ++m) {
      double q = 0.0;
      for (int i = 0; i < order; ++i) q += rule.weights[i] * std::pow(rule.nodes[i], m);
      const double exact = jacobi_moment(a, b, m);
      const double scale = jacobi_moment(a, b, 0);
      CHECK(std::abs(q - exact) <= 1e-12 * scale);
    }
    // Newton and Golub-Welsch paths agree.
    QuadratureRule newton;
    if (detail::gauss_jacobi_newton(order, a, b, newton)) {
      const auto gw = detail::gauss_jacobi_golub_welsch(order, a, b);
      for (int i = 0; i < order; ++i) {
        CHECK(newton.nodes[i] == doctest::Approx(gw.nodes[i]).epsilon(1e-11));
        CHECK(newton.weights[i] == doctest::Approx(gw.weights[i]).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("Gauss-Laguerre moments") {
  for (double alpha : {-0.5, 0.0, 2.0, 15.5, 40.0})
    for (int order : {1, 4, 12, 30}) {
      const auto rule = gauss_laguerre_rule(order, alpha);
      for (int m = 0; m <= std::min(2 * order - 1, 20); ++m) {
        double q = 0.0;
        for (int i = 0; i < order; ++i) q += rule.weights[i] * std::pow(rule.nodes[i], m);
        CHECK(q == doctest::Approx(std::exp(std::lgamma(alpha + m + 1))).epsilon(1e-11));
      }
    }
}

TEST_CASE("orthogonality under the Gauss rules") {
  // Discrete orthogonality is exact for degree i + j <= 2n - 1.
  for (double a : {-0.5, 1.5, 7.0})
    for (double b : {0.0, 3.5}) {
      const auto rule = gauss_jacobi_rule(10, a, b);
      for (int i = 0; i < 8; ++i)
        for (int j = 0; j < i; ++j) {
          double dot = 0.0, ni = 0.0, nj = 0.0;
          for (int t = 0; t < rule.order(); ++t) {
            const double pi = jacobi_poly(i, a, b, rule.nodes[t]), pj = jacobi_poly(j, a, b, rule.nodes[t]);
            dot += rule.weights[t] * pi * pj;
            ni += rule.weights[t] * pi * pi;
            nj += rule.weights[t] * pj * pj;
          }
          CHECK(std::abs(dot) / std::sqrt(ni * nj) < 1e-13);
        }
    }
}
