#include "calogero/quantum_numbers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include "calogero/errors.hpp"

namespace calogero {

StateIndex StateIndex::ground(int k) {
  StateIndex s;
  s.Lambda = SlotTable<int>(k, 0);
  s.n = SlotTable<int>(k, 0);
  return s;
}

bool has_lambda(int k, SlotId s) { return !(s.level == 1 && s.ell == pow3(k - 1)); }

void StateIndex::check(int k) const {
  if (n.depth() != k || Lambda.depth() != k)
    throw DomainError("state index depth does not match model depth k=" + std::to_string(k));
  if (n_r < 0 || n_alpha < 0) throw DomainError("state index has a negative radial/alpha quantum number");
  const Hierarchy h(k);
  for (const SlotId& s : h.chain()) {
    if (n[s] < 0) throw DomainError("negative angular quantum number at slot " + to_string(s));
    if (Lambda[s] < 0) throw DomainError("negative Lambda at slot " + to_string(s));
    if (!has_lambda(k, s) && Lambda[s] != 0)
      throw DomainError("slot " + to_string(s) + " carries no Lambda quantum number");
  }
}

std::string to_string(const StateIndex& st) {
  std::string out = "n_r=" + std::to_string(st.n_r) + " n_alpha=" + std::to_string(st.n_alpha);
  const Hierarchy h(st.k());
  for (const SlotId& s : h.chain())
    if (has_lambda(st.k(), s) && st.Lambda[s] != 0)
      out += " Lambda" + to_string(s) + "=" + std::to_string(st.Lambda[s]);
  for (const SlotId& s : h.chain())
    if (st.n[s] != 0) out += " n" + to_string(s) + "=" + std::to_string(st.n[s]);
  return out;
}

StateIndex from_k2(const K2Indices& q) {
  StateIndex s = StateIndex::ground(2);
  s.n_r = q.k;
  s.n_alpha = q.ell;
  s.Lambda(1, 2) = q.j;
  s.Lambda(1, 1) = q.m;
  s.Lambda(2, 1) = q.i;
  s.n(1, 2) = q.n12;
  s.n(1, 1) = q.n11;
  s.n(2, 1) = q.n21;
  s.n(3, 1) = q.n31;
  s.check(2);
  return s;
}

K2Indices to_k2(const StateIndex& s) {
  s.check(2);
  return {s.n_r, s.n_alpha, s.Lambda(1, 2), s.Lambda(1, 1), s.Lambda(2, 1), s.n(1, 2), s.n(1, 1), s.n(2, 1), s.n(3, 1)};
}

double epsilon(const ValidatedModel& model, const StateIndex& state, SlotId anchor) {
  state.check(model.k());
  const Hierarchy& h = model.hierarchy();
  const auto& chain = h.chain();
  const int start = h.chain_position(anchor);
  const int last = static_cast<int>(chain.size()) - 1;
  double eps = 0.0;
  for (int p = start; p <= last; ++p) {
    const SlotId s = chain[static_cast<std::size_t>(p)];
    if (p < last) eps += 2.0 * state.Lambda[s] + 1.0;
    eps += model.b(s, state.n[s]);
  }
  return eps;
}

double hyperangular_bracket(const ValidatedModel& model, const StateIndex& state) {
  return epsilon(model, state, {1, model.k()}) + state.n_alpha + 0.5;
}

double energy(const ValidatedModel& model, const StateIndex& state) {
  const double bracket = hyperangular_bracket(model, state);
  const double arg = model.mu() + bracket * bracket;
  if (!(arg > 0.0)) throw InfeasibleState("mu + bracket^2 is not positive for state " + to_string(state));
  return 2.0 * model.omega() * (2.0 * state.n_r + 1.0 + std::sqrt(arg));
}

double energy_k2_explicit(const ValidatedModel& model, const K2Indices& q) {
  if (model.k() != 2) throw DomainError("energy_k2_explicit requires k = 2");
  const double bracket = q.ell + 2.0 * q.j + 2.0 * q.m + 2.0 * q.i + 3.0 * q.n12 + 3.0 * model.a({1, 2}) +
                         3.0 * (q.n11 + model.a({1, 1}) + q.n21 + model.a({2, 1}) + q.n31 + model.a({3, 1})) + 19.0 / 2.0;
  const double arg = model.mu() + bracket * bracket;
  if (!(arg > 0.0)) throw InfeasibleState("mu + bracket^2 is not positive");
  return 2.0 * model.omega() * (2.0 * q.k + 1.0 + std::sqrt(arg));
}

double energy_mu0_cartesian(const ValidatedModel& model, int n_w, const SlotTable<int>& Lambda, const SlotTable<int>& n) {
  if (model.mu() != 0.0) throw DomainError("the separable Cartesian spectrum requires mu = 0");
  if (n_w < 0) throw DomainError("negative Hermite quantum number");
  if (Lambda.depth() != model.k() || n.depth() != model.k()) throw DomainError("index table depth mismatch");
  double sum = 0.5 + n_w;
  for (const SlotId& s : model.hierarchy().chain()) {
    if (Lambda[s] < 0 || n[s] < 0) throw DomainError("negative quantum number");
    sum += 1.0 + 2.0 * Lambda[s] + model.b(s, n[s]);
  }
  return 2.0 * model.omega() * sum;
}

long long SpectrumTable::total_states() const {
  long long total = 0;
  for (const auto& l : levels) total += l.degeneracy;
  return total;
}

namespace {

// Enumerates all non-negative integer vectors c with sum_i c_i * step_i <= budget.
void for_each_combination(const std::vector<int>& steps, int budget,
                          const std::function<void(const std::vector<int>&, int used)>& visit) {
  std::vector<int> c(steps.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int used) {
    if (pos == steps.size()) {
      visit(c, used);
      return;
    }
    for (int v = 0; used + v * steps[pos] <= budget; ++v) {
      c[pos] = v;
      rec(pos + 1, used + v * steps[pos]);
    }
    c[pos] = 0;
  };
  rec(0, 0);
}

std::vector<SpectrumLevel> group_levels(std::vector<double> energies, double tol) {
  std::sort(energies.begin(), energies.end());
  std::vector<SpectrumLevel> levels;
  for (double e : energies) {
    if (!levels.empty() && e - levels.back().energy <= tol) {
      ++levels.back().degeneracy;
    } else {
      levels.push_back({e, 1, {}});
    }
  }
  return levels;
}

}  // namespace

SpectrumTable enumerate_spectrum(const ValidatedModel& model, double e_max, int max_representatives,
                                 long long max_states) {
  const int k = model.k();
  const double omega = model.omega();
  const double tol = kLevelMergeTolerance * omega;
  const auto& chain = model.hierarchy().chain();
  const std::size_t num_slots = chain.size();

  SpectrumTable table;
  table.cutoff = e_max;
  table.model_hash = model.hash();

  const StateIndex ground = StateIndex::ground(k);
  const double bracket0 = hyperangular_bracket(model, ground);
  const double top = e_max / (2.0 * omega) - 1.0;
  if (top < 0.0 || top * top - model.mu() < bracket0 * bracket0 - 1e-9 * (1.0 + bracket0 * bracket0)) {
    return table;  // below the ground state
  }
  const double bracket_max = std::sqrt(top * top - model.mu());
  const int budget = static_cast<int>(std::floor(bracket_max - bracket0 + 1e-9));

  // Variable layout: [n_alpha, Lambda(node 0..S-2), n(slot 0..S-1)].
  std::vector<int> steps;
  steps.push_back(1);
  for (std::size_t p = 0; p + 1 < num_slots; ++p) steps.push_back(2);
  for (std::size_t p = 0; p < num_slots; ++p) steps.push_back(3);

  auto decode = [&](const std::vector<int>& c, int n_r) {
    StateIndex s = ground;
    s.n_r = n_r;
    s.n_alpha = c[0];
    for (std::size_t p = 0; p + 1 < num_slots; ++p) s.Lambda[chain[p]] = c[1 + p];
    for (std::size_t p = 0; p < num_slots; ++p) s.n[chain[p]] = c[num_slots + p];
    return s;
  };

  std::vector<double> energies;
  auto sweep = [&](const std::function<void(double, const std::vector<int>&, int)>& sink) {
    for_each_combination(steps, budget, [&](const std::vector<int>& c, int used) {
      // b shifts by exactly 3 per angular quantum, so the bracket is affine in `used`.
      const double bracket = bracket0 + used;
      const double root = std::sqrt(model.mu() + bracket * bracket);
      for (int n_r = 0;; ++n_r) {
        const double e = 2.0 * omega * (2.0 * n_r + 1.0 + root);
        if (e > e_max + tol) break;
        sink(e, c, n_r);
      }
    });
  };

  sweep([&](double e, const std::vector<int>&, int) {
    energies.push_back(e);
    if (static_cast<long long>(energies.size()) > max_states)
      throw Error("spectrum enumeration exceeded " + std::to_string(max_states) + " states; lower the cutoff");
  });
  table.levels = group_levels(std::move(energies), tol);

  if (max_representatives > 0) {
    sweep([&](double e, const std::vector<int>& c, int n_r) {
      auto it = std::lower_bound(table.levels.begin(), table.levels.end(), e - tol,
                                 [](const SpectrumLevel& l, double v) { return l.energy < v; });
      if (it == table.levels.end()) return;
      if (static_cast<int>(it->representatives.size()) < max_representatives) it->representatives.push_back(decode(c, n_r));
    });
  }
  return table;
}

SpectrumTable enumerate_cartesian_mu0(const ValidatedModel& model, double e_max, long long max_states) {
  if (model.mu() != 0.0) throw DomainError("the separable Cartesian spectrum requires mu = 0");
  const int k = model.k();
  const double omega = model.omega();
  const double tol = kLevelMergeTolerance * omega;
  const auto& chain = model.hierarchy().chain();

  SpectrumTable table;
  table.cutoff = e_max;
  table.model_hash = model.hash();

  const SlotTable<int> zeros(k, 0);
  const double e0 = energy_mu0_cartesian(model, 0, zeros, zeros);
  if (e_max + tol < e0) return table;
  const int budget = static_cast<int>(std::floor((e_max - e0) / (2.0 * omega) + 1e-9));

  // Variable layout: [n_w, Lambda(every slot), n(every slot)].
  std::vector<int> steps;
  steps.push_back(1);
  for (std::size_t p = 0; p < chain.size(); ++p) steps.push_back(2);
  for (std::size_t p = 0; p < chain.size(); ++p) steps.push_back(3);

  std::vector<double> energies;
  for_each_combination(steps, budget, [&](const std::vector<int>& c, int) {
    SlotTable<int> lam(k, 0), n(k, 0);
    for (std::size_t p = 0; p < chain.size(); ++p) {
      lam[chain[p]] = c[1 + p];
      n[chain[p]] = c[1 + chain.size() + p];
    }
    const double e = energy_mu0_cartesian(model, c[0], lam, n);
    if (e <= e_max + tol) energies.push_back(e);
    if (static_cast<long long>(energies.size()) > max_states)
      throw Error("Cartesian enumeration exceeded " + std::to_string(max_states) + " states; lower the cutoff");
  });
  table.levels = group_levels(std::move(energies), tol);
  return table;
}

EquivalenceReport spectra_equivalence_mu0(const ValidatedModel& model, double e_max) {
  if (model.mu() != 0.0) throw DomainError("spectral equivalence check requires mu = 0");
  EquivalenceReport report;
  report.hyperspherical = enumerate_spectrum(model, e_max, 1);
  report.cartesian = enumerate_cartesian_mu0(model, e_max);
  const double tol = kLevelMergeTolerance * model.omega();
  const auto& hs = report.hyperspherical.levels;
  const auto& cs = report.cartesian.levels;
  const std::size_t common = std::min(hs.size(), cs.size());
  char buf[200];
  for (std::size_t i = 0; i < common; ++i) {
    ++report.levels_compared;
    if (std::abs(hs[i].energy - cs[i].energy) > tol || hs[i].degeneracy != cs[i].degeneracy) {
      std::snprintf(buf, sizeof buf, "level %zu: hyperspherical (%.12g, %lld) vs Cartesian (%.12g, %lld)", i,
                    hs[i].energy, hs[i].degeneracy, cs[i].energy, cs[i].degeneracy);
      report.first_discrepancy = buf;
      return report;
    }
  }
  if (hs.size() != cs.size()) {
    std::snprintf(buf, sizeof buf, "level count differs: hyperspherical %zu vs Cartesian %zu", hs.size(), cs.size());
    report.first_discrepancy = buf;
    return report;
  }
  report.equal = true;
  return report;
}

}  // namespace calogero
