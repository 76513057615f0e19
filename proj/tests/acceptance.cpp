// Acceptance run: one PASS/FAIL line per criterion. Tolerances and runtime
// limits are fixed here and not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "calogero/coords.hpp"
#include "calogero/errors.hpp"
#include "calogero/model.hpp"
#include "calogero/oracle.hpp"
#include "calogero/quantum_numbers.hpp"
#include "calogero/wavefunction.hpp"

using namespace calogero;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double time_limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = dt < time_limit_s;
  const bool pass = o.ok && in_time;
  if (!pass) ++failures;
  std::printf("%s [%d] %s: %s; %.2f s (limit %.0f s)%s\n", pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), dt,
              time_limit_s, in_time ? "" : " OVER TIME");
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Outcome sweep_outcome(const std::vector<OracleCheck>& checks) {
  Outcome o;
  double worst = 0.0, worst_ratio = 0.0;
  for (const auto& c : checks) {
    o.ok = o.ok && c.passed;
    if (c.relative_error / c.tolerance > worst_ratio) {
      worst_ratio = c.relative_error / c.tolerance;
      worst = c.relative_error;
    }
  }
  o.detail = std::to_string(checks.size()) + " eigenvalues, worst relative error " + fmt("%.2e", worst) +
             fmt(" (%.2f of its tolerance)", worst_ratio);
  return o;
}

ValidatedModel uniform(int k, double lambda, double mu = 0.0, double omega = 1.0) {
  return ValidatedModel::validate(ModelParams::uniform(k, omega, mu, lambda));
}

StateIndex k2(int k, int ell, int j, int m, int i, int n12, int n11, int n21, int n31) {
  return from_k2({k, ell, j, m, i, n12, n11, n21, n31});
}

bool rejected(const ModelParams& p) {
  try {
    (void)ValidatedModel::validate(p);
  } catch (const ValidationError&) {
    return true;
  }
  return false;
}

// Brute-force level count at lambda = 0, omega = 1, k = 2 from the explicit
// bracket l + 2(i + j + m) + 3 sum(n) + 15.5 (all a = 1/2), mu = 0.
std::map<long long, long long> brute_levels_lambda0(double e_max) {
  std::map<long long, long long> out;
  std::vector<int> q(9, 0);
  auto E = [&] {
    const double br = q[1] + 2.0 * (q[2] + q[3] + q[4]) + 3.0 * (q[5] + q[6] + q[7] + q[8]) + 15.5;
    return 2.0 * (2.0 * q[0] + 1.0 + br);
  };
  std::function<void(int)> rec = [&](int pos) {
    if (pos == 9) {
      out[std::llround(E())] += 1;
      return;
    }
    for (q[pos] = 0; E() <= e_max; ++q[pos]) rec(pos + 1);
    q[pos] = 0;
  };
  rec(0);
  return out;
}

}  // namespace

int main() {
  criterion(1, "angular eigenvalues", 30, [] { return sweep_outcome(angular_sweep()); });
  criterion(2, "Poschl-Teller sector", 30, [] { return sweep_outcome(jacobi_type_sweep()); });
  criterion(3, "radial sector", 30, [] { return sweep_outcome(radial_sweep()); });

  criterion(4, "k=2 eigen-relation residual", 120, [] {
    constexpr double kTol = 1e-5;
    constexpr double kRatioLo = 2.2, kRatioHi = 6.0;
    Outcome o;
    double worst = 0.0, rlo = 1e300, rhi = 0.0;
    int runs = 0;
    for (double mu : {0.0, 0.5, -10.0}) {
      const auto m = uniform(2, 1.0, mu);
      for (const auto& s : {k2(0, 0, 0, 0, 0, 0, 0, 0, 0), k2(1, 0, 0, 0, 0, 0, 0, 0, 0), k2(0, 0, 1, 0, 0, 0, 0, 0, 0),
                            k2(0, 0, 0, 0, 0, 2, 0, 0, 0)}) {
        ResidualOptions opt;
        opt.n_points = 100;
        opt.h = 1e-3;
        const auto coarse = hamiltonian_residual(m, s, opt);
        opt.h = 5e-4;
        const auto fine = hamiltonian_residual(m, s, opt);
        const double ratio = coarse.max_relative / fine.max_relative;
        o.ok = o.ok && coarse.points == 100 && coarse.max_relative < kTol && ratio >= kRatioLo && ratio <= kRatioHi;
        worst = std::max(worst, coarse.max_relative);
        rlo = std::min(rlo, ratio);
        rhi = std::max(rhi, ratio);
        ++runs;
      }
    }
    o.detail = std::to_string(runs) + " state/mu runs x 100 points, max residual " + fmt("%.2e", worst) +
               fmt(" (tol %.0e), halving ratio ", kTol) + fmt("%.2f", rlo) + fmt("..%.2f", rhi) +
               fmt(" (allowed %.1f", kRatioLo) + fmt("..%.1f)", kRatioHi);
    return o;
  });

  criterion(5, "general-k consistency", 300, [] {
    constexpr double kCvTol = 1e-9;
    constexpr double kResidualTol = 1e-4;
    Outcome o;
    const auto m2 = uniform(2, 1.0, 0.5);
    double worst_cv = 0.0;
    for (const auto& s : {k2(0, 0, 0, 0, 0, 0, 0, 0, 0), k2(1, 0, 0, 0, 0, 0, 0, 0, 0), k2(0, 1, 1, 0, 0, 0, 0, 0, 0),
                          k2(0, 0, 0, 1, 1, 0, 0, 0, 0), k2(0, 0, 0, 0, 0, 2, 1, 0, 1)}) {
      const auto c = compare_evaluators(m2, s, 100, 7);
      o.ok = o.ok && c.points == 100 && c.coefficient_of_variation < kCvTol;
      worst_cv = std::max(worst_cv, c.coefficient_of_variation);
    }
    const auto m3 = uniform(3, 0.3);
    auto excited = StateIndex::ground(3);
    excited.Lambda(1, 3) = 1;
    double worst_res = 0.0;
    for (const auto& s : {StateIndex::ground(3), excited}) {
      ResidualOptions opt;
      opt.n_points = 20;
      opt.h = 1e-3;
      // Triples of cluster centres at level 3 are rarely 0.3 apart in a
      // 27-particle draw; 0.1 keeps the rejection rate workable.
      opt.cuts.min_separation = 0.1;
      const auto r = hamiltonian_residual(m3, s, opt);
      o.ok = o.ok && r.points == 20 && r.max_relative < kResidualTol;
      worst_res = std::max(worst_res, r.max_relative);
    }
    o.detail = "k=2 ratio CV max " + fmt("%.2e", worst_cv) + fmt(" (tol %.0e) over 5 states x 100 points; ", kCvTol) +
               "k=3 residual max " + fmt("%.2e", worst_res) + fmt(" (tol %.0e) over 2 states x 20 points", kResidualTol);
    return o;
  });

  criterion(6, "mu=0 spectral equivalence", 60, [] {
    Outcome o;
    int levels = 0;
    for (double lambda : {0.0, 1.0}) {
      const auto m = uniform(2, lambda);
      const auto rep = spectra_equivalence_mu0(m, energy(m, StateIndex::ground(2)) + 10.0);
      o.ok = o.ok && rep.equal;
      levels += rep.levels_compared;
    }
    const auto t = enumerate_spectrum(uniform(2, 0.0), 38.0);
    const auto brute = brute_levels_lambda0(38.0);
    const std::map<long long, long long> expected = {{33, 1}, {35, 1}, {37, 5}};
    std::map<long long, long long> got;
    for (const auto& l : t.levels) got[std::llround(l.energy)] += l.degeneracy;
    for (const auto& l : t.levels) o.ok = o.ok && std::abs(l.energy - std::round(l.energy)) < 1e-12;
    o.ok = o.ok && got == expected && brute == expected;
    o.detail = std::to_string(levels) + " levels equal (lambda 0 and 1, ground + 10 omega); lowest (33,1) (35,1) (37,5) " +
               (got == expected && brute == expected ? "confirmed" : "NOT confirmed") + " by brute force";
    return o;
  });

  criterion(7, "orthogonality", 120, [] {
    constexpr double kTol = 1e-8;
    const auto r = orthogonality_sweep(uniform(2, 1.0), 2);
    const long long states = 19683;  // 3^9
    Outcome o;
    o.ok = r.pairs == states * (states - 1) / 2 && r.max_overlap < kTol;
    o.detail = std::to_string(r.pairs) + " pairs, max |normalized overlap| " + fmt("%.2e", r.max_overlap) +
               fmt(" (tol %.0e)", kTol);
    return o;
  });

  criterion(8, "transform exactness", 30, [] {
    constexpr double kTransformTol = 1e-12;
    constexpr double kIdentityTol = 1e-10;
    // A triple with |sin 3 phi| below this is within double rounding of a
    // coincidence: both sides are then ill-conditioned in the inputs.
    constexpr double kCoincidence = 1e-4;
    Outcome o;
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> g(0.0, 2.0);
    auto random_config = [&](int k) {
      CartesianConfig x{std::vector<double>(static_cast<std::size_t>(pow3(k)))};
      for (double& xi : x.x) xi = g(rng);
      return x;
    };
    double worst_t = 0.0;
    for (int k = 2; k <= 4; ++k)
      for (int trial = 0; trial < 1000; ++trial) {
        const auto x = random_config(k);
        const auto h = to_jacobi(x);
        double s = h.w_top * h.w_top, n2 = 0.0;
        for (int m = 1; m <= k; ++m) {
          for (double u : h.u.level(m)) s += u * u;
          for (double v : h.v.level(m)) s += v * v;
        }
        for (double xi : x.x) n2 += xi * xi;
        worst_t = std::max(worst_t, std::abs(s - n2) / n2);
        const auto back = from_jacobi(h);
        for (std::size_t i = 0; i < x.x.size(); ++i) worst_t = std::max(worst_t, std::abs(back.x[i] - x.x[i]));
      }
    double worst_i = 0.0;
    int checked = 0, excluded = 0;
    for (int k = 2; k <= 3; ++k)
      for (int level = 1; level <= k; ++level)
        for (int trial = 0; trial < 500; ++trial) {
          const auto x = random_config(k);
          const auto p = to_polar(to_jacobi(x));
          const auto w = cluster_centres(x, level - 1);
          for (std::size_t l = 0; l < w.size() / 3; ++l) {
            const double a = w[3 * l], b = w[3 * l + 1], c = w[3 * l + 2];
            const double pair = 1 / ((a - b) * (a - b)) + 1 / ((a - c) * (a - c)) + 1 / ((b - c) * (b - c));
            const int ell = static_cast<int>(l) + 1;
            const double s3 = std::sin(3 * p.phi(ell, level));
            if (std::abs(s3) < kCoincidence) {
              ++excluded;
              continue;
            }
            const double polar = 9.0 / (2.0 * p.r(ell, level) * p.r(ell, level) * s3 * s3);
            worst_i = std::max(worst_i, std::abs(pair - polar) / pair);
            ++checked;
          }
        }
    o.ok = worst_t < kTransformTol && worst_i < kIdentityTol;
    o.detail = "round trip / norm max " + fmt("%.2e", worst_t) + fmt(" (tol %.0e); ", kTransformTol) +
               "cluster identity max " + fmt("%.2e", worst_i) + fmt(" (tol %.0e) over ", kIdentityTol) +
               std::to_string(checked) + " triples, " + std::to_string(excluded) + " near-coincident excluded";
    return o;
  });

  criterion(9, "validation gates", 1, [] {
    Outcome o;
    const bool a = rejected(ModelParams::uniform(2, 1.0, 0.0, -0.6));
    const bool b = rejected(ModelParams::uniform(2, 1.0, -240.25, 0.0));
    const bool c = rejected(ModelParams::uniform(2, 1.0, -250.0, 0.0));
    const bool d = !rejected(ModelParams::uniform(2, 1.0, -240.25 + 1e-6, 0.0));
    const double bound = mu_lower_bound(uniform(2, 0.0));
    o.ok = a && b && c && d && bound == -240.25;
    o.detail = std::string("lambda=-0.6 ") + (a ? "rejected" : "ACCEPTED") + ", mu=-240.25 " +
               (b ? "rejected" : "ACCEPTED") + ", mu=-250 " + (c ? "rejected" : "ACCEPTED") + ", mu=-240.25+1e-6 " +
               (d ? "accepted" : "REJECTED") + fmt(", bound %.6g", bound);
    return o;
  });

  std::printf("%s: %d of 9 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
