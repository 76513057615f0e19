#include "calogero/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "calogero/errors.hpp"
#include "calogero/orthopoly.hpp"
#include "calogero/tridiagonal.hpp"

namespace calogero {

Grid1D::Grid1D(double lo_, double hi_, int n_) : lo(lo_), hi(hi_), n(n_) {
  if (!(hi > lo)) throw DomainError("grid interval must have hi > lo");
  if (n < kMinNodes) throw DomainError("grid needs at least " + std::to_string(kMinNodes) + " interior nodes");
}

DiscreteSchrodinger::DiscreteSchrodinger(const Grid1D& grid, const std::function<double(double)>& potential)
    : grid_(grid), v_(static_cast<std::size_t>(grid.n)) {
  for (int j = 0; j < grid.n; ++j) {
    const double v = potential(grid.node(j));
    if (!std::isfinite(v)) throw DomainError("potential is not finite at a grid node");
    v_[static_cast<std::size_t>(j)] = v;
  }
  const auto [mn, mx] = std::minmax_element(v_.begin(), v_.end());
  vmin_ = *mn;
  vmax_ = *mx;
}

int DiscreteSchrodinger::count_below(double x) const {
  // Pivots of (T - x) h^2 written as q_j = 1 + g_j, so the smooth part never
  // goes through the cancellation 2 - 1:
  //   g_j = h^2 (V_j - x) + g_{j-1} / q_{j-1},   with g_0 / q_0 := 1.
  const double h = grid_.step();
  const double h2 = h * h;
  const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  int count = 0;
  double carry = 1.0;
  for (double v : v_) {
    const double g = h2 * (v - x) + carry;
    double q = 1.0 + g;
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++count;
    carry = g / q;
  }
  return count;
}

double DiscreteSchrodinger::eigenvalue(int index) const {
  if (index < 0 || index >= grid_.n) throw DomainError("eigenvalue index out of range");
  const double h = grid_.step();
  double lo = vmin_;
  double hi = vmax_ + 4.0 / (h * h);
  while (hi - lo > 2.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi))) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (count_below(mid) > index) hi = mid;
    else lo = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> DiscreteSchrodinger::lowest(int count) const {
  if (count < 1) throw DomainError("need at least one eigenvalue");
  if (count > grid_.n / 4) throw DomainError("grid too coarse for the requested number of eigenvalues");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out.push_back(eigenvalue(i));
  return out;
}

std::vector<double> DiscreteSchrodinger::eigenvector(int index) const {
  const double h = grid_.step();
  SymTridiagonal t;
  t.diag.resize(v_.size());
  for (std::size_t j = 0; j < v_.size(); ++j) t.diag[j] = 2.0 / (h * h) + v_[j];
  t.off.assign(v_.size() - 1, -1.0 / (h * h));
  std::vector<double> u = calogero::eigenvector(t, eigenvalue(index));
  double norm2 = 0.0;
  std::size_t peak = 0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    norm2 += u[j] * u[j] * h;
    if (std::abs(u[j]) > std::abs(u[peak])) peak = j;
  }
  const double f = (u[peak] < 0.0 ? -1.0 : 1.0) / std::sqrt(norm2);
  for (double& x : u) x *= f;
  return u;
}

Grid1D angular_grid(int n) { return Grid1D(0.0, std::numbers::pi / 3.0, n); }
Grid1D jacobi_type_grid(int n) { return Grid1D(0.0, 0.5 * std::numbers::pi, n); }
Grid1D gegenbauer_type_grid(int n) { return Grid1D(0.0, std::numbers::pi, n); }

double radial_cutoff(double omega, double C, int highest_level) {
  const double kappa = std::sqrt(C);
  return std::max(8.0, (kappa + 4.0 * std::sqrt(2.0 * highest_level + kappa + 1.0)) / std::sqrt(omega));
}

Grid1D radial_grid(double omega, double C, int highest_level, int n) {
  return Grid1D(0.0, radial_cutoff(omega, C, highest_level), n);
}

std::vector<double> fd_eigen_angular(double lambda, int count, const Grid1D& grid) {
  if (!(lambda > -0.5)) throw DomainError("angular equation needs lambda > -1/2");
  const DiscreteSchrodinger op(grid, [lambda](double phi) {
    const double s = std::sin(3.0 * phi);
    return 4.5 * lambda / (s * s);
  });
  return op.lowest(count);
}

std::vector<double> fd_eigenvector_angular(double lambda, int index, const Grid1D& grid) {
  if (!(lambda > -0.5)) throw DomainError("angular equation needs lambda > -1/2");
  const DiscreteSchrodinger op(grid, [lambda](double phi) {
    const double s = std::sin(3.0 * phi);
    return 4.5 * lambda / (s * s);
  });
  return op.eigenvector(index);
}

std::vector<double> fd_eigen_jacobi_type(double A, double B, int count, const Grid1D& grid) {
  if (!(A > 0.25) || !(B > 0.25)) throw DomainError("two-term trigonometric equation needs A, B > 1/4");
  const DiscreteSchrodinger op(grid, [A, B](double x) {
    const double s = std::sin(x), c = std::cos(x);
    return (A - 0.25) / (s * s) + (B - 0.25) / (c * c);
  });
  return op.lowest(count);
}

std::vector<double> fd_eigen_gegenbauer_type(double D, int count, const Grid1D& grid) {
  if (!(D > 0.0)) throw DomainError("single-term trigonometric equation needs D > 0");
  const DiscreteSchrodinger op(grid, [D](double x) {
    const double s = std::sin(x);
    return (D - 0.25) / (s * s);
  });
  return op.lowest(count);
}

std::vector<double> fd_eigen_radial(double omega, double C, int count, const Grid1D& grid) {
  if (!(omega > 0.0)) throw DomainError("radial equation needs omega > 0");
  if (!(C > 0.0)) throw DomainError("radial equation needs C = mu + A > 0 (no fall to the centre)");
  const DiscreteSchrodinger op(grid, [omega, C](double r) { return omega * omega * r * r + (C - 0.25) / (r * r); });
  return op.lowest(count);
}

RichardsonResult richardson(const std::function<std::vector<double>(const Grid1D&)>& solve, const Grid1D& coarse,
                            double order) {
  if (!(order > 0.0)) throw DomainError("Richardson order must be positive");
  // The refined grid has exactly half the step.
  const double f = std::pow(2.0, order);
  RichardsonResult out;
  out.order = order;
  out.coarse = solve(coarse);
  out.fine = solve(coarse.refined());
  if (out.fine.size() != out.coarse.size()) throw DomainError("solver returned a different count on the refined grid");
  for (std::size_t i = 0; i < out.coarse.size(); ++i) out.extrapolated.push_back((f * out.fine[i] - out.coarse[i]) / (f - 1.0));
  return out;
}

namespace {

std::vector<OracleCheck> compare(const std::string& name, std::vector<std::pair<std::string, double>> params,
                                 const RichardsonResult& rr, const std::vector<double>& exact, double tol,
                                 const std::string& level_name) {
  std::vector<OracleCheck> out;
  for (std::size_t i = 0; i < exact.size(); ++i) {
    OracleCheck c;
    c.name = name;
    c.parameters = params;
    c.parameters.emplace_back(level_name, static_cast<double>(i));
    c.closed_form = exact[i];
    c.fd_coarse = rr.coarse[i];
    c.fd_fine = rr.fine[i];
    c.extrapolated = rr.extrapolated[i];
    c.richardson_order = rr.order;
    c.observed_order = std::log2(std::abs((c.fd_coarse - c.closed_form) / (c.fd_fine - c.closed_form)));
    c.relative_error = std::abs(c.extrapolated - c.closed_form) / std::abs(c.closed_form);
    c.tolerance = tol;
    c.passed = c.relative_error < tol;
    out.push_back(std::move(c));
  }
  return out;
}

void append(std::vector<OracleCheck>& dst, std::vector<OracleCheck> src) {
  dst.insert(dst.end(), std::make_move_iterator(src.begin()), std::make_move_iterator(src.end()));
}

}  // namespace

double angular_fd_order(double lambda) {
  // Near a wall the solution behaves as x^{1/2 + a}; the 3-point stencil then
  // errs at order h^{2a} whenever 2a < 2 and the wall term is present.
  if (lambda == 0.0) return 2.0;
  return std::min(2.0, 2.0 * a_of(lambda));
}

std::vector<OracleCheck> angular_sweep() {
  std::vector<OracleCheck> out;
  for (double lambda : {-0.4, 0.0, 1.0, 4.0}) {
    // At lambda < 0 the next term, h^{4a}, is still slow; a finer grid keeps it small.
    const bool weak = lambda < 0.0;
    const int n = weak ? 262143 : 20000;
    const double tol = weak ? 1e-5 : 1e-6;
    const auto rr = richardson([&](const Grid1D& g) { return fd_eigen_angular(lambda, 4, g); }, angular_grid(n),
                               angular_fd_order(lambda));
    const double a = a_of(lambda);
    std::vector<double> exact;
    for (int k = 0; k < 4; ++k) exact.push_back(9.0 * (k + 0.5 + a) * (k + 0.5 + a));
    append(out, compare("angular", {{"lambda", lambda}}, rr, exact, tol, "n"));
  }
  return out;
}

std::vector<OracleCheck> jacobi_type_sweep() {
  std::vector<OracleCheck> out;
  for (double b : {3.0, 6.0})
    for (double bp : {3.0, 6.0}) {
      const auto rr =
          richardson([&](const Grid1D& g) { return fd_eigen_jacobi_type(b * b, bp * bp, 3, g); }, jacobi_type_grid(20000));
      std::vector<double> exact;
      for (int i = 0; i < 3; ++i) exact.push_back((2.0 * i + 1.0 + b + bp) * (2.0 * i + 1.0 + b + bp));
      append(out, compare("jacobi_type", {{"A", b * b}, {"B", bp * bp}}, rr, exact, 1e-6, "i"));
    }
  return out;
}

std::vector<OracleCheck> gegenbauer_type_sweep() {
  std::vector<OracleCheck> out;
  for (double d : {2.0, 6.5}) {
    const auto rr =
        richardson([&](const Grid1D& g) { return fd_eigen_gegenbauer_type(d * d, 3, g); }, gegenbauer_type_grid(20000));
    std::vector<double> exact;
    for (int l = 0; l < 3; ++l) exact.push_back((l + d + 0.5) * (l + d + 0.5));
    append(out, compare("gegenbauer_type", {{"D", d * d}}, rr, exact, 1e-6, "l"));
  }
  return out;
}

std::vector<OracleCheck> radial_sweep() {
  std::vector<OracleCheck> out;
  for (double omega : {1.0, 2.0})
    for (double kappa : {1.0, std::sqrt(40.25), 15.5}) {
      const double C = kappa * kappa;
      const auto rr =
          richardson([&](const Grid1D& g) { return fd_eigen_radial(omega, C, 3, g); }, radial_grid(omega, C, 2, 20000));
      std::vector<double> exact;
      for (int n = 0; n < 3; ++n) exact.push_back(2.0 * omega * (2.0 * n + kappa + 1.0));
      append(out, compare("radial", {{"omega", omega}, {"C", C}}, rr, exact, 1e-6, "n"));
    }
  return out;
}

std::vector<OracleCheck> model_sweep(const ValidatedModel& model, int grid_nodes) {
  std::vector<OracleCheck> out;
  const Hierarchy& tree = model.hierarchy();
  std::vector<double> couplings;
  for (const SlotId& s : tree.chain())
    if (std::find(couplings.begin(), couplings.end(), model.lambda(s)) == couplings.end())
      couplings.push_back(model.lambda(s));
  std::sort(couplings.begin(), couplings.end());
  for (double lambda : couplings) {
    const bool weak = lambda < 0.0;
    const int n = weak ? std::max(grid_nodes, 262143) : grid_nodes;
    const auto rr = richardson([&](const Grid1D& g) { return fd_eigen_angular(lambda, 4, g); }, angular_grid(n),
                               angular_fd_order(lambda));
    const double a = a_of(lambda);
    std::vector<double> exact;
    for (int k = 0; k < 4; ++k) exact.push_back(9.0 * (k + 0.5 + a) * (k + 0.5 + a));
    append(out, compare("model_angular", {{"lambda", lambda}}, rr, exact, weak ? 1e-5 : 1e-6, "n"));
  }

  const StateIndex ground = StateIndex::ground(model.k());
  const SlotId top = tree.chain()[0];
  const double tail = epsilon(model, ground, tree.chain()[1]);
  const double b = model.b(top, 0);
  {
    const auto rr = richardson([&](const Grid1D& g) { return fd_eigen_jacobi_type(tail * tail, b * b, 3, g); },
                               jacobi_type_grid(grid_nodes));
    std::vector<double> exact;
    for (int i = 0; i < 3; ++i) exact.push_back((2.0 * i + 1.0 + tail + b) * (2.0 * i + 1.0 + tail + b));
    append(out, compare("model_top_node", {{"A", tail * tail}, {"B", b * b}}, rr, exact, 1e-6, "Lambda"));
  }
  const double eps0 = epsilon(model, ground, top);
  {
    const auto rr = richardson([&](const Grid1D& g) { return fd_eigen_gegenbauer_type(eps0 * eps0, 3, g); },
                               gegenbauer_type_grid(grid_nodes));
    std::vector<double> exact;
    for (int l = 0; l < 3; ++l) exact.push_back((l + eps0 + 0.5) * (l + eps0 + 0.5));
    append(out, compare("model_alpha", {{"D", eps0 * eps0}}, rr, exact, 1e-6, "n_alpha"));
  }
  {
    const double bracket = hyperangular_bracket(model, ground);
    const double C = model.mu() + bracket * bracket;
    const double omega = model.omega();
    const auto rr = richardson([&](const Grid1D& g) { return fd_eigen_radial(omega, C, 3, g); },
                               radial_grid(omega, C, 2, grid_nodes));
    std::vector<double> exact;
    for (int n = 0; n < 3; ++n) exact.push_back(2.0 * omega * (2.0 * n + std::sqrt(C) + 1.0));
    append(out, compare("model_radial", {{"omega", omega}, {"C", C}}, rr, exact, 1e-6, "n_r"));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Factorized inner products for k = 2.

const std::array<const char*, kK2Factors> kK2FactorNames = {"phi_1_1", "phi_2_1", "phi_3_1", "phi_1_2", "phi",
                                                            "beta",    "theta",   "alpha",   "r"};

namespace {

// Runs `integrate(order)` at a base order and one step higher; on mismatch the
// order is doubled once before giving up.
double checked_quadrature(int degree, const std::function<std::pair<double, double>(int)>& integrate) {
  int order = degree + 10;
  for (int attempt = 0; attempt < 2; ++attempt) {
    const auto [v1, s1] = integrate(order);
    const auto [v2, s2] = integrate(order + 1);
    const double scale = std::max(s1, s2);
    if (std::abs(v1 - v2) <= 1e-12 * scale) return v2;
    order *= 2;
  }
  throw QuadratureError("quadrature did not settle for polynomial degree " + std::to_string(degree));
}

// \int_0^{pi/2} sin^p cos^q f(cos 2x) g(cos 2x) dx with polynomial f, g.
double trig_integral(double p, double q, int degree, const std::function<double(double)>& f,
                     const std::function<double(double)>& g) {
  const double prefactor = std::pow(2.0, -0.5 * (p + q) - 1.0);
  return prefactor * checked_quadrature(degree, [&](int order) {
           const QuadratureRule rule = gauss_jacobi_rule(order, 0.5 * (p - 1.0), 0.5 * (q - 1.0));
           double sum = 0.0, mag = 0.0;
           for (int i = 0; i < rule.order(); ++i) {
             const double t = rule.weights[i] * f(rule.nodes[i]) * g(rule.nodes[i]);
             sum += t;
             mag += std::abs(t);
           }
           return std::make_pair(sum, mag);
         });
}

// \int_{-1}^{1} (1 - x^2)^c f(x) g(x) dx.
double symmetric_integral(double c, int degree, const std::function<double(double)>& f,
                          const std::function<double(double)>& g) {
  return checked_quadrature(degree, [&](int order) {
    const QuadratureRule rule = gauss_jacobi_rule(order, c, c);
    double sum = 0.0, mag = 0.0;
    for (int i = 0; i < rule.order(); ++i) {
      const double t = rule.weights[i] * f(rule.nodes[i]) * g(rule.nodes[i]);
      sum += t;
      mag += std::abs(t);
    }
    return std::make_pair(sum, mag);
  });
}

struct K2Exponents {
  double s21, s31, sum_m, top;
  int ijm;
  double b11, b12;
  double kappa;
};

K2Exponents exponents(const ValidatedModel& model, const K2Indices& q) {
  K2Exponents e;
  e.s21 = 3 * model.a({2, 1}) + 3 * q.n21;
  e.s31 = 3 * model.a({3, 1}) + 3 * q.n31;
  e.sum_m = 3 * model.a({1, 1}) + 3 * q.n11 + e.s21 + e.s31;
  e.top = 3 * model.a({1, 2}) + 3 * q.n12 + e.sum_m;
  e.ijm = 2 * (q.i + q.j + q.m);
  e.b11 = 1.5 + 3 * model.a({1, 1}) + 3 * q.n11;
  e.b12 = 1.5 + 3 * model.a({1, 2}) + 3 * q.n12;
  const double bracket = 9.5 + e.top + q.ell + e.ijm;
  const double arg = model.mu() + bracket * bracket;
  if (!(arg > 0.0)) throw InfeasibleState("mu + bracket^2 is not positive");
  e.kappa = std::sqrt(arg);
  return e;
}

double slot_factor(double a, int na, int nb) {
  // (1/3) \int_0^pi sin^{1+2a} t C_na C_nb (cos t) dt
  const double q = 0.5 + a;
  auto f = [&](double x) { return gegenbauer(na, q, x); };
  auto g = [&](double x) { return gegenbauer(nb, q, x); };
  return symmetric_integral(a, na + nb, f, g) / 3.0;
}

}  // namespace

double inner_product_factor(const ValidatedModel& model, const K2Indices& a, const K2Indices& b, int factor) {
  if (model.k() != 2) throw DomainError("the factorized inner product is implemented for k = 2");
  const K2Exponents ea = exponents(model, a), eb = exponents(model, b);
  switch (factor) {
    case 0: return slot_factor(model.a({1, 1}), a.n11, b.n11);
    case 1: return slot_factor(model.a({2, 1}), a.n21, b.n21);
    case 2: return slot_factor(model.a({3, 1}), a.n31, b.n31);
    case 3: return slot_factor(model.a({1, 2}), a.n12, b.n12);
    case 4: {
      // measure sin 2phi = 2 sin phi cos phi
      const double p = 1.0 + (ea.s21 + 1.5) + (eb.s21 + 1.5);
      const double q = 1.0 + (ea.s31 + 1.5) + (eb.s31 + 1.5);
      auto f = [&](double x) { return jacobi_poly(a.i, 1.5 + ea.s21, 1.5 + ea.s31, x); };
      auto g = [&](double x) { return jacobi_poly(b.i, 1.5 + eb.s21, 1.5 + eb.s31, x); };
      return 2.0 * trig_integral(p, q, a.i + b.i, f, g);
    }
    case 5: {
      const double p = 3.0 + (3.0 + 2 * a.i + ea.s21 + ea.s31) + (3.0 + 2 * b.i + eb.s21 + eb.s31);
      const double q = 1.0 + ea.b11 + eb.b11;
      auto f = [&](double x) { return jacobi_poly(a.m, 4.0 + 2 * a.i + ea.s21 + ea.s31, ea.b11, x); };
      auto g = [&](double x) { return jacobi_poly(b.m, 4.0 + 2 * b.i + eb.s21 + eb.s31, eb.b11, x); };
      return trig_integral(p, q, a.m + b.m, f, g);
    }
    case 6: {
      const double sa = 4.5 + ea.sum_m + 2 * a.i + 2 * a.m, sb = 4.5 + eb.sum_m + 2 * b.i + 2 * b.m;
      const double p = 5.0 + sa + sb;
      const double q = 1.0 + ea.b12 + eb.b12;
      auto f = [&](double x) { return jacobi_poly(a.j, sa + 2.0, ea.b12, x); };
      auto g = [&](double x) { return jacobi_poly(b.j, sb + 2.0, eb.b12, x); };
      return trig_integral(p, q, a.j + b.j, f, g);
    }
    case 7: {
      // x = cos alpha: \int (1 - x^2)^{(p-1)/2} C C dx, p = 7 + both sine powers
      const double pa = 6.0 + ea.top + ea.ijm, pb = 6.0 + eb.top + eb.ijm;
      const double p = 7.0 + pa + pb;
      auto f = [&](double x) { return gegenbauer(a.ell, pa + 3.5, x); };
      auto g = [&](double x) { return gegenbauer(b.ell, pb + 3.5, x); };
      return symmetric_integral(0.5 * (p - 1.0), a.ell + b.ell, f, g);
    }
    case 8: {
      // t = omega r^2 turns r^8 dr R_a R_b into a Gauss-Laguerre integral.
      const double omega = model.omega();
      const double alpha = 0.5 * (ea.kappa + eb.kappa);
      const double prefactor = 0.5 * std::pow(omega, -0.5 * (ea.kappa + eb.kappa + 2.0));
      return prefactor * checked_quadrature(a.k + b.k, [&](int order) {
               const QuadratureRule rule = gauss_laguerre_rule(order, alpha);
               double sum = 0.0, mag = 0.0;
               for (int i = 0; i < rule.order(); ++i) {
                 const double t = rule.weights[i] * laguerre(a.k, ea.kappa, rule.nodes[i]) *
                                  laguerre(b.k, eb.kappa, rule.nodes[i]);
                 sum += t;
                 mag += std::abs(t);
               }
               return std::make_pair(sum, mag);
             });
    }
    default: throw DomainError("inner product factor index out of range");
  }
}

InnerProduct inner_product(const ValidatedModel& model, const StateIndex& a, const StateIndex& b) {
  const K2Indices qa = to_k2(a), qb = to_k2(b);
  InnerProduct out;
  out.value = 1.0;
  for (int f = 0; f < kK2Factors; ++f) {
    out.factors[static_cast<std::size_t>(f)] = inner_product_factor(model, qa, qb, f);
    out.value *= out.factors[static_cast<std::size_t>(f)];
  }
  return out;
}

double normalized_overlap(const ValidatedModel& model, const StateIndex& a, const StateIndex& b) {
  const double ab = inner_product(model, a, b).value;
  const double aa = inner_product(model, a, a).value;
  const double bb = inner_product(model, b, b).value;
  return ab / std::sqrt(aa * bb);
}

namespace {

// Index introduced by each factor, in kK2FactorNames order.
int& component(K2Indices& q, int level) {
  switch (level) {
    case 0: return q.n11;
    case 1: return q.n21;
    case 2: return q.n31;
    case 3: return q.n12;
    case 4: return q.i;
    case 5: return q.m;
    case 6: return q.j;
    case 7: return q.ell;
    default: return q.k;
  }
}

std::vector<int> prefix_key(const K2Indices& q, int level) {
  std::vector<int> key{level};
  K2Indices c = q;
  for (int l = 0; l <= level; ++l) key.push_back(component(c, l));
  return key;
}

class SweepRunner {
 public:
  SweepRunner(const ValidatedModel& model, int max_index, double prune)
      : model_(model), side_(max_index + 1), prune_(prune) {
    result_.max_index = max_index;
  }

  OrthogonalitySweep run() {
    K2Indices a{}, b{};
    recurse(0, 1.0, a, b);
    result_.pairs = ordered_pairs_ / 2;
    result_.pairs_evaluated /= 2;
    return result_;
  }

 private:
  const ValidatedModel& model_;
  int side_;
  double prune_;
  OrthogonalitySweep result_;
  long long ordered_pairs_ = 0;
  std::map<std::vector<int>, double> self_;

  double self_factor(const K2Indices& q, int level) {
    auto key = prefix_key(q, level);
    auto it = self_.find(key);
    if (it != self_.end()) return it->second;
    const double v = inner_product_factor(model_, q, q, level);
    self_.emplace(std::move(key), v);
    return v;
  }

  long long subtree_pairs(int levels_left) const {
    long long n = 1;
    for (int l = 0; l < levels_left; ++l) n *= static_cast<long long>(side_) * side_;
    return n;
  }

  void recurse(int level, double partial, K2Indices& a, K2Indices& b) {
    if (level == kK2Factors) {
      const bool same = a.k == b.k && a.ell == b.ell && a.j == b.j && a.m == b.m && a.i == b.i && a.n12 == b.n12 &&
                        a.n11 == b.n11 && a.n21 == b.n21 && a.n31 == b.n31;
      if (same) return;
      ++ordered_pairs_;
      ++result_.pairs_evaluated;
      note(partial, a, b);
      return;
    }
    for (int x = 0; x < side_; ++x)
      for (int y = 0; y < side_; ++y) {
        component(a, level) = x;
        component(b, level) = y;
        const double f = inner_product_factor(model_, a, b, level) /
                         std::sqrt(self_factor(a, level) * self_factor(b, level));
        const double next = partial * std::abs(f);
        if (next < prune_) {
          // |normalized factor| <= 1 (Cauchy-Schwarz), so the whole subtree is bounded.
          ordered_pairs_ += subtree_pairs(kK2Factors - level - 1);
          note(next, a, b);
          continue;
        }
        recurse(level + 1, next, a, b);
      }
    component(a, level) = 0;
    component(b, level) = 0;
  }

  void note(double value, const K2Indices& a, const K2Indices& b) {
    if (value > result_.max_overlap) {
      result_.max_overlap = value;
      result_.worst_a = a;
      result_.worst_b = b;
    }
  }
};

}  // namespace

OrthogonalitySweep orthogonality_sweep(const ValidatedModel& model, int max_index, double prune) {
  if (model.k() != 2) throw DomainError("the orthogonality sweep is implemented for k = 2");
  if (max_index < 0) throw DomainError("max_index must be non-negative");
  return SweepRunner(model, max_index, prune).run();
}

}  // namespace calogero
