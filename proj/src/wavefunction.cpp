#include "calogero/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "calogero/errors.hpp"
#include "calogero/orthopoly.hpp"

namespace calogero {

LogValue LogValue::of(double x) {
  LogValue v;
  if (x == 0.0) return v;
  v.sign = x > 0.0 ? 1 : -1;
  v.log_abs = std::log(std::abs(x));
  return v;
}

LogValue& LogValue::operator*=(const LogValue& o) {
  if (sign == 0 || o.sign == 0) {
    *this = LogValue{};
    return *this;
  }
  sign *= o.sign;
  log_abs += o.log_abs;
  return *this;
}

void LogValue::mul_pow(double base, double power) {
  if (sign == 0 || power == 0.0) return;
  if (base == 0.0) {
    if (power > 0.0) *this = LogValue{};
    else throw SingularConfiguration("power", "zero base raised to a negative power");
    return;
  }
  log_abs += power * std::log(std::abs(base));
}

EvalPoint::EvalPoint(CartesianConfig cfg)
    : x(std::move(cfg)), jacobi(to_jacobi(x)), polar(to_polar(jacobi)), hyper(radii_to_hyperspherical(polar)) {}

namespace {

void add_inverse_square(double& sum, double diff, double coupling, const std::string& term) {
  if (coupling == 0.0) return;
  if (diff == 0.0 || !std::isfinite(diff)) throw SingularConfiguration(term, "coincident coordinates in " + term);
  sum += coupling / (diff * diff);
}

void require_depth(const ValidatedModel& model, const StateIndex& state, int k) {
  if (k != model.k()) throw DomainError("configuration depth does not match model depth");
  state.check(model.k());
}

// |sin 3phi|^{1/2+a} C_n^{(1/2+a)}(cos 3phi) for every slot.
LogValue angular_factors(const ValidatedModel& model, const StateIndex& state, const PolarSector& polar) {
  LogValue out = LogValue::of(1.0);
  for (const SlotId& s : model.hierarchy().chain()) {
    const double q = 0.5 + model.a(s);
    const double phi = polar.phi[s];
    out.mul_pow(std::sin(3.0 * phi), q);
    out *= LogValue::of(gegenbauer(state.n[s], q, std::cos(3.0 * phi)));
  }
  return out;
}

// r^{kappa + 1 - 3^k/2} L_{n_r}^{kappa}(omega r^2) exp(-omega r^2 / 2)
LogValue radial_factor(const ValidatedModel& model, int n_r, double kappa, double r) {
  const double omega = model.omega();
  const double t = omega * r * r;
  LogValue out = LogValue::of(laguerre(n_r, kappa, t));
  out.mul_pow(r, kappa + 1.0 - 0.5 * model.hierarchy().num_particles());
  out.log_abs -= 0.5 * t;
  return out;
}

// eps[q]: epsilon anchored at chain position q (suffix sums).
std::vector<double> chain_epsilons(const ValidatedModel& model, const StateIndex& state) {
  const auto& chain = model.hierarchy().chain();
  const std::size_t S = chain.size();
  std::vector<double> eps(S);
  eps[S - 1] = model.b(chain[S - 1], state.n[chain[S - 1]]);
  for (std::size_t q = S - 1; q-- > 0;) {
    const SlotId s = chain[q];
    eps[q] = eps[q + 1] + 2.0 * state.Lambda[s] + 1.0 + model.b(s, state.n[s]);
  }
  return eps;
}

double kappa_of(const ValidatedModel& model, const StateIndex& state, const std::vector<double>& eps) {
  const double bracket = state.n_alpha + eps[0] + 0.5;
  const double arg = model.mu() + bracket * bracket;
  if (!(arg > 0.0)) throw InfeasibleState("mu + bracket^2 is not positive for state " + to_string(state));
  return std::sqrt(arg);
}

// Distance from angle t to the nearest root angle of a polynomial in cos(t),
// t and the roots taken on [0, pi].
double angle_clearance(double t, const std::vector<double>& cos_roots) {
  double best = std::numeric_limits<double>::infinity();
  for (double c : cos_roots) best = std::min(best, std::abs(t - std::acos(std::clamp(c, -1.0, 1.0))));
  return best;
}

}  // namespace

double potential(const ValidatedModel& model, const CartesianConfig& x) {
  const int k = x.depth();
  if (k != model.k()) throw DomainError("configuration depth does not match model depth");
  const double omega = model.omega();

  double r2 = 0.0;
  for (double xi : x.x) r2 += xi * xi;
  double v = omega * omega * r2;
  if (model.mu() != 0.0) {
    if (r2 == 0.0) throw SingularConfiguration("mu", "configuration at the origin");
    v += model.mu() / r2;
  }

  static constexpr int kPairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  std::vector<double> w = x.x;
  for (int m = 1; m <= k; ++m) {
    for (int ell = 1; ell <= pow3(k - m); ++ell) {
      const double lam = model.lambda({ell, m});
      for (const auto& pr : kPairs) {
        const std::size_t i = 3 * static_cast<std::size_t>(ell - 1) + pr[0];
        const std::size_t j = 3 * static_cast<std::size_t>(ell - 1) + pr[1];
        add_inverse_square(v, w[i] - w[j], lam,
                           "lambda" + to_string(SlotId{ell, m}) + " pair (" + std::to_string(i + 1) + "," +
                               std::to_string(j + 1) + ")");
      }
    }
    std::vector<double> next(w.size() / 3);
    for (std::size_t l = 0; l < next.size(); ++l) next[l] = (w[3 * l] + w[3 * l + 1] + w[3 * l + 2]) / std::sqrt(3.0);
    w = std::move(next);
  }
  return v;
}

double potential_transformed(const ValidatedModel& model, const EvalPoint& p) {
  const double r = p.hyper.r;
  const double omega = model.omega();
  double v = omega * omega * r * r;
  if (model.mu() != 0.0) {
    if (r == 0.0) throw SingularConfiguration("mu", "configuration at the origin");
    v += model.mu() / (r * r);
  }
  for (const SlotId& s : model.hierarchy().chain()) {
    const double lam = model.lambda(s);
    if (lam == 0.0) continue;
    const double d = p.polar.r[s] * std::sin(3.0 * p.polar.phi[s]);
    if (d == 0.0) throw SingularConfiguration("lambda" + to_string(s), "slot " + to_string(s) + " on a coincidence line");
    v += 4.5 * lam / (d * d);
  }
  return v;
}

LogValue log_psi_k2(const ValidatedModel& model, const StateIndex& state, const EvalPoint& p) {
  if (model.k() != 2) throw DomainError("the explicit nine-body form requires k = 2");
  require_depth(model, state, p.x.depth());
  const K2Indices q = to_k2(state);
  const K2Angles ang = k2_angles(p.polar);

  const double a12 = model.a({1, 2}), a11 = model.a({1, 1}), a21 = model.a({2, 1}), a31 = model.a({3, 1});
  const double s21 = 3 * a21 + 3 * q.n21;
  const double s31 = 3 * a31 + 3 * q.n31;
  const double sum_m = 3 * a11 + 3 * q.n11 + s21 + s31;  // sum over M of (3 a + 3 n)
  const double top = 3 * a12 + 3 * q.n12 + sum_m;
  const int ijm = 2 * q.i + 2 * q.j + 2 * q.m;

  const double bracket = 19.0 / 2.0 + top + q.ell + ijm;
  const double kappa = std::sqrt(model.mu() + bracket * bracket);
  const double omega = model.omega();
  const double r = ang.r;

  LogValue psi = LogValue::of(laguerre(q.k, kappa, omega * r * r));
  psi.mul_pow(r, kappa - 3.5);
  psi.log_abs -= 0.5 * omega * r * r;

  psi.mul_pow(std::sin(ang.alpha), 6.0 + top + ijm);
  psi *= LogValue::of(gegenbauer(q.ell, 19.0 / 2.0 + top + ijm, std::cos(ang.alpha)));

  const double b12 = 1.5 + 3 * a12 + 3 * q.n12;
  psi.mul_pow(std::sin(ang.theta), 4.5 + sum_m + 2 * q.i + 2 * q.m);
  psi.mul_pow(std::cos(ang.theta), b12);
  psi *= LogValue::of(jacobi_poly(q.j, 6.5 + sum_m + 2 * q.i + 2 * q.m, b12, std::cos(2 * ang.theta)));

  // The first Jacobi parameter carries 2i: it is the tail index of the phi sector.
  const double b11 = 1.5 + 3 * a11 + 3 * q.n11;
  psi.mul_pow(std::sin(ang.beta), 3.0 + 2 * q.i + s21 + s31);
  psi.mul_pow(std::cos(ang.beta), b11);
  psi *= LogValue::of(jacobi_poly(q.m, 4.0 + 2 * q.i + s21 + s31, b11, std::cos(2 * ang.beta)));

  psi.mul_pow(std::sin(ang.phi), s21 + 1.5);
  psi.mul_pow(std::cos(ang.phi), s31 + 1.5);
  psi *= LogValue::of(jacobi_poly(q.i, 1.5 + s21, 1.5 + s31, std::cos(2 * ang.phi)));

  psi *= angular_factors(model, state, p.polar);
  return psi;
}

double eval_psi_k2(const ValidatedModel& model, const StateIndex& state, const CartesianConfig& x) {
  return log_psi_k2(model, state, EvalPoint(x)).value();
}

LogValue log_psi_general(const ValidatedModel& model, const StateIndex& state, const EvalPoint& p) {
  require_depth(model, state, p.x.depth());
  const int k = model.k();
  const auto& chain = model.hierarchy().chain();
  const std::size_t S = chain.size();

  const std::vector<double> eps = chain_epsilons(model, state);
  const double kappa = kappa_of(model, state, eps);

  LogValue psi = radial_factor(model, state.n_r, kappa, p.hyper.r);

  // The alpha factor sees the whole relative subtree: 3^k - 1 dimensions.
  const double alpha = p.hyper.alpha;
  psi.mul_pow(std::sin(alpha), eps[0] - 0.5 * (pow3(k) - 3));
  psi *= LogValue::of(gegenbauer(state.n_alpha, eps[0] + 0.5, std::cos(alpha)));

  for (std::size_t q = 0; q + 1 < S; ++q) {
    const SlotId s = chain[q];
    const int m = k - s.level;
    const double offset = 0.5 * (pow3(k) - pow3(m) - 2 * s.ell - 2);
    const double b = model.b(s, state.n[s]);
    const double beta = p.hyper.beta[q];
    psi.mul_pow(std::sin(beta), eps[q + 1] - offset);
    psi.mul_pow(std::cos(beta), b);
    psi *= LogValue::of(jacobi_poly(state.Lambda[s], eps[q + 1], b, std::cos(2.0 * beta)));
  }

  psi *= angular_factors(model, state, p.polar);
  return psi;
}

double eval_psi_general(const ValidatedModel& model, const StateIndex& state, const CartesianConfig& x) {
  return log_psi_general(model, state, EvalPoint(x)).value();
}

double min_triple_separation(const CartesianConfig& x) {
  const int k = x.depth();
  double best = std::numeric_limits<double>::infinity();
  for (int level = 0; level < k; ++level) {
    const std::vector<double> w = cluster_centres(x, level);
    for (std::size_t t = 0; t + 2 < w.size(); t += 3) {
      best = std::min({best, std::abs(w[t] - w[t + 1]), std::abs(w[t] - w[t + 2]), std::abs(w[t + 1] - w[t + 2])});
    }
  }
  return best;
}

double node_clearance(const ValidatedModel& model, const StateIndex& state, const EvalPoint& p) {
  require_depth(model, state, p.x.depth());
  const auto& chain = model.hierarchy().chain();
  const std::vector<double> eps = chain_epsilons(model, state);
  const double pi = std::numbers::pi;
  double best = std::numeric_limits<double>::infinity();

  if (state.n_r > 0) {
    const double rho = std::sqrt(model.omega()) * p.hyper.r;
    for (double t : gauss_laguerre_rule(state.n_r, kappa_of(model, state, eps)).nodes)
      best = std::min(best, std::abs(rho - std::sqrt(t)));
  }
  if (state.n_alpha > 0) {
    // Gegenbauer C^{(q)} roots are Gauss-Jacobi nodes with a = b = q - 1/2.
    const double c = eps[0];
    best = std::min(best, angle_clearance(p.hyper.alpha, gauss_jacobi_rule(state.n_alpha, c, c).nodes));
  }
  for (std::size_t q = 0; q + 1 < chain.size(); ++q) {
    const SlotId s = chain[q];
    if (state.Lambda[s] == 0) continue;
    const auto roots = gauss_jacobi_rule(state.Lambda[s], eps[q + 1], model.b(s, state.n[s])).nodes;
    best = std::min(best, 0.5 * angle_clearance(2.0 * p.hyper.beta[q], roots));
  }
  for (const SlotId& s : chain) {
    if (state.n[s] == 0) continue;
    const double a = model.a(s);
    const auto roots = gauss_jacobi_rule(state.n[s], a, a).nodes;
    double t = std::fmod(3.0 * p.polar.phi[s], 2.0 * pi);
    if (t > pi) t = 2.0 * pi - t;
    best = std::min(best, angle_clearance(t, roots) / 3.0);
  }
  return best;
}

ConfigSampler::ConfigSampler(int k, double omega, SamplingCuts cuts, std::uint64_t seed)
    : k_(k), omega_(omega), cuts_(cuts), rng_(seed) {
  Hierarchy{k};  // validates k
  if (!(omega > 0.0)) throw DomainError("sampler needs omega > 0");
  if (!(cuts.r_lo >= 0.0 && cuts.r_hi > cuts.r_lo)) throw DomainError("bad hyperradius window");
}

double ConfigSampler::uniform(double lo, double hi) {
  // Portable 53-bit uniform; std::uniform_real_distribution differs across libraries.
  const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

double ConfigSampler::normal() {
  // Box-Muller on the portable uniforms.
  const double u1 = 1.0 - uniform(0.0, 1.0);
  const double u2 = uniform(0.0, 1.0);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

bool ConfigSampler::accepts(const EvalPoint& p) const {
  const Hierarchy h(k_);
  if (!(std::sin(p.hyper.alpha) > cuts_.min_sine)) return false;
  for (double b : p.hyper.beta)
    if (!(std::sin(b) > cuts_.min_sine && std::cos(b) > cuts_.min_cosine)) return false;
  for (const SlotId& s : h.chain())
    if (!(std::abs(std::sin(3.0 * p.polar.phi[s])) > cuts_.min_abs_sin3phi)) return false;
  return cuts_.min_separation <= 0.0 || min_triple_separation(p.x) >= cuts_.min_separation / std::sqrt(omega_);
}

CartesianConfig ConfigSampler::next() {
  const std::size_t n = static_cast<std::size_t>(pow3(k_));
  const double scale = 1.0 / std::sqrt(omega_);
  CartesianConfig x{std::vector<double>(n)};
  for (int attempt = 0; attempt < cuts_.max_tries; ++attempt) {
    // Isotropic direction, hyperradius uniform in the window.
    double norm2 = 0.0;
    for (double& xi : x.x) {
      xi = normal();
      norm2 += xi * xi;
    }
    const double r = scale * uniform(cuts_.r_lo, cuts_.r_hi);
    const double f = r / std::sqrt(norm2);
    for (double& xi : x.x) xi *= f;
    if (accepts(EvalPoint(x))) return x;
  }
  throw SamplingError("no configuration satisfied the sampling cuts after " + std::to_string(cuts_.max_tries) +
                      " draws");
}

double relative_residual_at(const ValidatedModel& model, const StateIndex& state, const CartesianConfig& x, double h,
                            double energy, bool use_k2_form) {
  if (!(h > 0.0)) throw DomainError("finite-difference step must be positive");
  auto log_psi = [&](const CartesianConfig& c) {
    const EvalPoint p(c);
    return use_k2_form ? log_psi_k2(model, state, p) : log_psi_general(model, state, p);
  };
  const LogValue centre = log_psi(x);
  if (centre.sign == 0) throw SingularConfiguration("psi", "wavefunction vanishes at the sample point");

  // Laplacian / Psi from ratios Psi(x +- h e_i) / Psi(x).
  double lap_over_psi = 0.0;
  CartesianConfig shifted = x;
  for (std::size_t i = 0; i < x.x.size(); ++i) {
    double ratio_sum = -2.0;
    for (double dir : {1.0, -1.0}) {
      shifted.x[i] = x.x[i] + dir * h;
      const LogValue v = log_psi(shifted);
      if (v.sign != 0) ratio_sum += v.sign * centre.sign * std::exp(v.log_abs - centre.log_abs);
    }
    shifted.x[i] = x.x[i];
    lap_over_psi += ratio_sum / (h * h);
  }
  const double h_psi_over_psi = -lap_over_psi + potential(model, x);
  return std::abs(h_psi_over_psi - energy) / std::abs(energy);
}

EvaluatorComparison compare_evaluators(const ValidatedModel& model, const StateIndex& state, int n_points,
                                       std::uint64_t seed, const SamplingCuts& cuts) {
  if (model.k() != 2) throw DomainError("evaluator comparison needs k = 2");
  if (n_points < 2) throw DomainError("evaluator comparison needs at least two points");
  state.check(model.k());
  ConfigSampler sampler(model.k(), model.omega(), cuts, seed);
  std::vector<double> ratios;
  while (static_cast<int>(ratios.size()) < n_points) {
    const EvalPoint p(sampler.next());
    const LogValue g = log_psi_general(model, state, p);
    const LogValue e = log_psi_k2(model, state, p);
    if (g.sign == 0 || e.sign == 0) continue;  // exactly on a node
    ratios.push_back(g.sign * e.sign * std::exp(g.log_abs - e.log_abs));
  }
  EvaluatorComparison out;
  out.points = n_points;
  double mean = 0.0;
  for (double r : ratios) mean += r;
  mean /= n_points;
  double var = 0.0;
  for (double r : ratios) var += (r - mean) * (r - mean);
  var /= n_points - 1;
  out.mean_ratio = mean;
  out.coefficient_of_variation = std::sqrt(var) / std::abs(mean);
  out.min_ratio = *std::min_element(ratios.begin(), ratios.end());
  out.max_ratio = *std::max_element(ratios.begin(), ratios.end());
  return out;
}

ResidualReport hamiltonian_residual(const ValidatedModel& model, const StateIndex& state, const ResidualOptions& opt) {
  if (opt.n_points < 1) throw DomainError("residual test needs at least one point");
  if (!(opt.h > 0.0)) throw DomainError("finite-difference step must be positive");
  state.check(model.k());

  ResidualReport rep;
  rep.h = opt.h;
  rep.energy = energy(model, state) + opt.energy_shift;
  ConfigSampler sampler(model.k(), model.omega(), opt.cuts, opt.seed);
  const long long max_skips = 1000LL * opt.n_points;
  double sum = 0.0;
  while (rep.points < opt.n_points) {
    const CartesianConfig x = sampler.next();
    if (opt.min_node_clearance > 0.0 && node_clearance(model, state, EvalPoint(x)) < opt.min_node_clearance) {
      if (++rep.skipped_near_nodes > max_skips)
        throw SamplingError("too many sample points rejected by the node-clearance cut");
      continue;
    }
    const double res = relative_residual_at(model, state, x, opt.h, rep.energy, opt.use_k2_form);
    rep.max_relative = std::max(rep.max_relative, res);
    sum += res;
    ++rep.points;
  }
  rep.mean_relative = sum / rep.points;
  return rep;
}

}  // namespace calogero
