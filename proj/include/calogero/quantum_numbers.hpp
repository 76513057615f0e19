#pragma once

#include <optional>
#include <string>
#include <vector>

#include "calogero/model.hpp"
#include "calogero/slots.hpp"

namespace calogero {

/// Complete multi-index of one eigenstate.
///
/// `Lambda` is indexed by chain node: every slot except the last one in
/// Hierarchy::chain() (the slot (3^{k-1}, 1) has no hyperangle of its own).
/// `n` carries the angular quantum number of every slot.
struct StateIndex {
  int n_r = 0;
  int n_alpha = 0;
  SlotTable<int> Lambda;
  SlotTable<int> n;

  /// All-zero index for depth k.
  static StateIndex ground(int k);

  int k() const { return n.depth(); }
  /// Throws DomainError on shape mismatch or negative entries.
  void check(int k) const;

  friend bool operator==(const StateIndex&, const StateIndex&) = default;
};

/// Whether `s` carries a Lambda quantum number in a depth-k tree.
bool has_lambda(int k, SlotId s);

std::string to_string(const StateIndex& s);

/// Explicit k = 2 labels: radial k, alpha-sector ell, theta-sector j,
/// beta-sector m, phi-sector i, and the four angular numbers.
struct K2Indices {
  int k = 0;
  int ell = 0;
  int j = 0;
  int m = 0;
  int i = 0;
  int n12 = 0;
  int n11 = 0;
  int n21 = 0;
  int n31 = 0;
};

/// Index correspondence: k<->n_r, ell<->n_alpha, j<->Lambda(1,2),
/// m<->Lambda(1,1), i<->Lambda(2,1), n12<->n(1,2), nM1<->n(M,1).
StateIndex from_k2(const K2Indices& q);
K2Indices to_k2(const StateIndex& s);

/// epsilon of the index set anchored at chain node `anchor`: the sum over the
/// anchor and every later chain node of (2 Lambda + 1), plus b over the anchor
/// and every later slot. Anchoring at the final slot yields its b alone.
double epsilon(const ValidatedModel& model, const StateIndex& state, SlotId anchor);

/// n_alpha + 1/2 + epsilon at the top anchor (1, k): the hyperangular bracket.
double hyperangular_bracket(const ValidatedModel& model, const StateIndex& state);

/// E = 2 omega (2 n_r + 1 + sqrt(mu + bracket^2)).
double energy(const ValidatedModel& model, const StateIndex& state);

/// Direct evaluation of the closed-form nine-body spectrum with k = 2 labels.
double energy_k2_explicit(const ValidatedModel& model, const K2Indices& q);

/// Separable Cartesian spectrum at mu = 0:
/// E = 2 omega {1/2 + n_w + sum_slots [1 + 2 Lambda + 3 (n + 1/2 + a)]}.
/// Here `Lambda` covers every slot (including the one the hyperspherical
/// labelling omits).
double energy_mu0_cartesian(const ValidatedModel& model, int n_w, const SlotTable<int>& Lambda, const SlotTable<int>& n);

struct SpectrumLevel {
  double energy = 0.0;
  long long degeneracy = 0;
  std::vector<StateIndex> representatives;
};

struct SpectrumTable {
  std::vector<SpectrumLevel> levels;
  double cutoff = 0.0;
  std::string model_hash;

  long long total_states() const;
};

/// Merge tolerance for grouping energies, in units of omega.
inline constexpr double kLevelMergeTolerance = 1e-9;

/// Every state with energy <= e_max, grouped into levels. The enumeration
/// bounds each index by the bracket budget implied by e_max, so it is
/// exhaustive for any mu. `max_states` guards against runaway cutoffs.
SpectrumTable enumerate_spectrum(const ValidatedModel& model, double e_max, int max_representatives = 4,
                                 long long max_states = 50'000'000);

/// Levels of the separable Cartesian spectrum (mu must be 0).
SpectrumTable enumerate_cartesian_mu0(const ValidatedModel& model, double e_max, long long max_states = 50'000'000);

struct EquivalenceReport {
  bool equal = false;
  std::size_t levels_compared = 0;
  SpectrumTable hyperspherical;
  SpectrumTable cartesian;
  /// Human-readable first discrepancy, if any.
  std::optional<std::string> first_discrepancy;
};

/// Compare (energy, degeneracy) multisets of both spectra up to e_max. mu must be 0.
EquivalenceReport spectra_equivalence_mu0(const ValidatedModel& model, double e_max);

}  // namespace calogero
