#include <doctest.h>

#include <algorithm>
#include <array>
#include <functional>
#include <cmath>
#include <map>
#include <random>

#include "calogero/errors.hpp"
#include "calogero/model.hpp"
#include "calogero/quantum_numbers.hpp"

using namespace calogero;

namespace {

ValidatedModel uniform(int k, double lambda, double mu = 0.0, double omega = 1.0) {
  return ValidatedModel::validate(ModelParams::uniform(k, omega, mu, lambda));
}

// Levels keyed by energy rounded to 1e-9.
using Levels = std::map<long long, long long>;

long long key(double e) { return std::llround(e * 1e9); }

Levels as_levels(const SpectrumTable& t) {
  Levels out;
  for (const auto& l : t.levels) out[key(l.energy)] += l.degeneracy;
  return out;
}

// Independent k = 2 brute force over the explicit labels, with the bracket
// l + 2(i + j + m) + 3 sum(n + a) + 19/2 written out. The energy grows in every
// index, so a branch stops as soon as it passes the cutoff.
Levels brute_force_k2(const ValidatedModel& m, double e_max) {
  const double a_sum = m.a({1, 2}) + m.a({1, 1}) + m.a({2, 1}) + m.a({3, 1});
  const double om = m.omega(), mu = m.mu();
  // q = (k, l, j, m, i, n12, n11, n21, n31)
  auto E = [&](const std::array<int, 9>& q) {
    const double br = q[1] + 2.0 * (q[2] + q[3] + q[4]) + 3.0 * (q[5] + q[6] + q[7] + q[8]) + 3.0 * a_sum + 9.5;
    return 2.0 * om * (2.0 * q[0] + 1.0 + std::sqrt(mu + br * br));
  };
  Levels out;
  std::array<int, 9> q{};
  std::function<void(int)> rec = [&](int pos) {
    if (pos == 9) {
      out[key(E(q))] += 1;
      return;
    }
    for (q[pos] = 0; E(q) <= e_max + 1e-9 * om; ++q[pos]) rec(pos + 1);
    q[pos] = 0;
  };
  rec(0);
  return out;
}

// Independent separable (mu = 0) brute force for k = 2: one Hermite index and
// a (Lambda, n) pair for each of the four slots.
Levels brute_force_cartesian_k2(const ValidatedModel& m, double e_max) {
  const double om = m.omega();
  const SlotId slots[4] = {{1, 2}, {1, 1}, {2, 1}, {3, 1}};
  double base = 0.5;
  for (const SlotId& s : slots) base += 1.0 + 3.0 * (0.5 + m.a(s));
  const int cap = static_cast<int>(e_max / (2 * om) - base) + 1;
  Levels out;
  std::vector<int> idx(9, 0);
  std::function<void(int, double)> rec = [&](int pos, double acc) {
    if (2 * om * acc > e_max + 1e-9 * om) return;
    if (pos == 9) {
      out[key(2 * om * acc)] += 1;
      return;
    }
    // pos 0: Hermite (+1); odd positions: Lambda (+2); even positions: n (+3).
    const double step = pos == 0 ? 1.0 : (pos % 2 ? 2.0 : 3.0);
    for (int v = 0; v <= cap; ++v) rec(pos + 1, acc + step * v);
  };
  rec(0, base);
  return out;
}

}  // namespace

TEST_CASE("listed energies") {
  const auto m = uniform(2, 0.0);
  CHECK(energy(m, StateIndex::ground(2)) == doctest::Approx(33.0).epsilon(1e-15));
  K2Indices q{};
  q.ell = 1;
  CHECK(energy(m, from_k2(q)) == doctest::Approx(35.0).epsilon(1e-15));
  q = {};
  q.j = 1;
  CHECK(energy(m, from_k2(q)) == doctest::Approx(37.0).epsilon(1e-15));
  q = {};
  q.n11 = 1;
  CHECK(energy(m, from_k2(q)) == doctest::Approx(39.0).epsilon(1e-15));

  const auto m200 = uniform(2, 0.0, -200.0);
  CHECK(energy(m200, StateIndex::ground(2)) == doctest::Approx(2.0 * (1.0 + std::sqrt(40.25))).epsilon(1e-15));
}

TEST_CASE("epsilon examples") {
  const auto m = uniform(2, 0.0);
  const auto g = StateIndex::ground(2);
  CHECK(epsilon(m, g, {1, 2}) == doctest::Approx(15.0).epsilon(1e-15));
  CHECK(hyperangular_bracket(m, g) == doctest::Approx(15.5).epsilon(1e-15));
  CHECK(epsilon(m, g, {2, 1}) == doctest::Approx(7.0).epsilon(1e-15));
  CHECK(epsilon(m, g, {3, 1}) == doctest::Approx(3.0).epsilon(1e-15));

  // k = 3 at zero indices: every node adds 1, every slot adds 3 (a = 1/2).
  const auto m3 = uniform(3, 0.0);
  const auto g3 = StateIndex::ground(3);
  const Hierarchy h(3);
  const int S = h.num_slots();
  for (int p = 0; p < S; ++p) {
    const int remaining = S - p;
    CHECK(epsilon(m3, g3, h.chain()[p]) == doctest::Approx((remaining - 1) + 3.0 * remaining).epsilon(1e-15));
  }
}

TEST_CASE("general bracket matches the explicit k = 2 formula") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> ui(0, 4);
  std::uniform_real_distribution<double> ul(-0.45, 5.0);
  for (int trial = 0; trial < 500; ++trial) {
    auto p = ModelParams::uniform(2, 0.5 + trial % 3, 0.0, 0.0);
    for (const SlotId& s : Hierarchy(2).chain()) p.lambda[s] = ul(rng);
    p.mu = 0.5 * mu_lower_bound(2, p.lambda);
    const auto m = ValidatedModel::validate(p);
    const K2Indices q{ui(rng), ui(rng), ui(rng), ui(rng), ui(rng), ui(rng), ui(rng), ui(rng), ui(rng)};
    CHECK(energy(m, from_k2(q)) == doctest::Approx(energy_k2_explicit(m, q)).epsilon(1e-14));
  }
}

TEST_CASE("k = 2 label correspondence round-trips") {
  const K2Indices q{1, 2, 3, 4, 5, 6, 7, 8, 9};
  const K2Indices r = to_k2(from_k2(q));
  CHECK(r.k == 1);
  CHECK(r.ell == 2);
  CHECK(r.j == 3);
  CHECK(r.m == 4);
  CHECK(r.i == 5);
  CHECK(r.n12 == 6);
  CHECK(r.n11 == 7);
  CHECK(r.n21 == 8);
  CHECK(r.n31 == 9);
}

TEST_CASE("state checks") {
  auto s = StateIndex::ground(2);
  s.Lambda(3, 1) = 1;  // the final slot has no Lambda
  CHECK_THROWS_AS(s.check(2), DomainError);
  s = StateIndex::ground(2);
  s.n(2, 1) = -1;
  CHECK_THROWS_AS(s.check(2), DomainError);
  CHECK_THROWS_AS(StateIndex::ground(3).check(2), DomainError);
  CHECK(has_lambda(3, {9, 1}) == false);
  CHECK(has_lambda(3, {8, 1}));
  CHECK(has_lambda(3, {1, 3}));
}

TEST_CASE("spectrum table against brute force") {
  const auto m = uniform(2, 0.0);
  SUBCASE("listed cutoffs") {
    const auto t34 = enumerate_spectrum(m, 34.0);
    REQUIRE(t34.levels.size() == 1);
    CHECK(t34.levels[0].energy == doctest::Approx(33.0));
    CHECK(t34.levels[0].degeneracy == 1);
    const auto t38 = enumerate_spectrum(m, 38.0);
    REQUIRE(t38.levels.size() == 3);
    CHECK(t38.levels[1].energy == doctest::Approx(35.0));
    CHECK(t38.levels[1].degeneracy == 1);
    CHECK(t38.levels[2].energy == doctest::Approx(37.0));
    CHECK(t38.levels[2].degeneracy == 5);
    CHECK(t38.total_states() == 7);
  }
  SUBCASE("random couplings and mu") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ul(-0.4, 3.0);
    for (int trial = 0; trial < 6; ++trial) {
      auto p = ModelParams::uniform(2, 1.0 + 0.5 * (trial % 2), 0.0, 0.0);
      for (const SlotId& s : Hierarchy(2).chain()) p.lambda[s] = ul(rng);
      p.mu = trial % 3 == 0 ? 0.0 : (trial % 3 == 1 ? 3.7 : 0.4 * mu_lower_bound(2, p.lambda));
      const auto mm = ValidatedModel::validate(p);
      const double e_max = energy(mm, StateIndex::ground(2)) + 7.0 * mm.omega();
      CHECK(as_levels(enumerate_spectrum(mm, e_max)) == brute_force_k2(mm, e_max));
    }
  }
  SUBCASE("below the ground state") { CHECK(enumerate_spectrum(m, 30.0).levels.empty()); }
}

TEST_CASE("levels are sorted, merged and carry valid representatives") {
  const auto m = uniform(3, 1.0);
  const double e0 = energy(m, StateIndex::ground(3));
  const auto t = enumerate_spectrum(m, e0 + 6.0);
  for (std::size_t i = 1; i < t.levels.size(); ++i)
    CHECK(t.levels[i].energy - t.levels[i - 1].energy > kLevelMergeTolerance);
  for (const auto& l : t.levels) {
    CHECK(!l.representatives.empty());
    CHECK(static_cast<long long>(l.representatives.size()) <= l.degeneracy);
    for (const auto& s : l.representatives) CHECK(energy(m, s) == doctest::Approx(l.energy).epsilon(1e-12));
  }
}

TEST_CASE("separable mu = 0 spectrum") {
  const auto m = uniform(2, 0.0);
  const auto g = SlotTable<int>(2, 0);
  CHECK(energy_mu0_cartesian(m, 0, g, g) == doctest::Approx(33.0));
  CHECK(energy_mu0_cartesian(m, 1, g, g) == doctest::Approx(35.0));
  auto L = g;
  L(1, 2) = 1;
  CHECK(energy_mu0_cartesian(m, 0, L, g) == doctest::Approx(37.0));
  CHECK_THROWS_AS(energy_mu0_cartesian(uniform(2, 0.0, 1.0), 0, g, g), DomainError);

  for (double lambda : {0.0, 1.0, 2.5}) {
    const auto mm = uniform(2, lambda);
    const double e_max = energy(mm, StateIndex::ground(2)) + 10.0;
    CHECK(as_levels(enumerate_cartesian_mu0(mm, e_max)) == brute_force_cartesian_k2(mm, e_max));
  }
}

TEST_CASE("hyperspherical and separable spectra agree at mu = 0") {
  SUBCASE("k = 2, lambda = 0 and 1") {
    for (double lambda : {0.0, 1.0}) {
      const auto m = uniform(2, lambda);
      const auto rep = spectra_equivalence_mu0(m, energy(m, StateIndex::ground(2)) + 10.0);
      CHECK(rep.equal);
      CHECK(rep.levels_compared == 6);
      CHECK_FALSE(rep.first_discrepancy.has_value());
    }
  }
  SUBCASE("k = 2, one strong coupling") {
    auto p = ModelParams::uniform(2, 1.0, 0.0, 0.0);
    p.lambda(1, 1) = 4.0;
    const auto m = ValidatedModel::validate(p);
    CHECK(spectra_equivalence_mu0(m, energy(m, StateIndex::ground(2)) + 8.0).equal);
  }
  SUBCASE("k = 3, lambda = 1") {
    const auto m = uniform(3, 1.0);
    CHECK(spectra_equivalence_mu0(m, energy(m, StateIndex::ground(3)) + 6.0).equal);
  }
  SUBCASE("needs mu = 0") { CHECK_THROWS_AS(spectra_equivalence_mu0(uniform(2, 0.0, 1.0), 40.0), DomainError); }
}

TEST_CASE("runaway cutoff is refused") {
  const auto m = uniform(3, 0.0);
  CHECK_THROWS(enumerate_spectrum(m, energy(m, StateIndex::ground(3)) + 60.0, 4, 1000));
}
