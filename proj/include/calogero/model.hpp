#pragma once

#include <string>

#include "calogero/slots.hpp"

namespace calogero {

/// Physical definition of the N = 3^k model, in units hbar = 2m = 1.
struct ModelParams {
  int k = 2;
  double omega = 1.0;
  double mu = 0.0;
  /// Calogero couplings lambda_{ell,m}; level 1 are intra-cluster couplings,
  /// level m >= 2 couple centres of mass of level m-1 clusters.
  SlotTable<double> lambda;

  /// Uniform couplings on every slot.
  static ModelParams uniform(int k, double omega, double mu, double lambda);
};

/// a(lambda) = sqrt(1 + 2 lambda) / 2, defined for lambda > -1/2.
double a_of(double lambda);

/// b(n, a) = 3 (n + 1/2 + a). The angular eigenvalue is B = b^2.
double b_of(int n, double a);

/// A model whose couplings and mu passed every admissibility check.
/// Immutable once built.
class ValidatedModel {
 public:
  /// Throws ValidationError listing every violated condition.
  static ValidatedModel validate(const ModelParams& params);

  const ModelParams& params() const { return params_; }
  const Hierarchy& hierarchy() const { return hierarchy_; }
  int k() const { return params_.k; }
  double omega() const { return params_.omega; }
  double mu() const { return params_.mu; }
  double lambda(SlotId s) const { return params_.lambda[s]; }
  double a(SlotId s) const { return a_[s]; }
  const SlotTable<double>& couplings_a() const { return a_; }
  /// b for angular quantum number n on slot s.
  double b(SlotId s, int n) const { return b_of(n, a_[s]); }

  /// Stable textual fingerprint of the parameters.
  std::string hash() const;

 private:
  ValidatedModel(ModelParams p, SlotTable<double> a);

  ModelParams params_;
  Hierarchy hierarchy_;
  SlotTable<double> a_;
};

/// Square of the smallest admissible hyperangular bracket, negated: mu must
/// exceed this value for square-integrable hyperradial solutions.
double mu_lower_bound(const ValidatedModel& model);

/// Same bound from raw couplings (used during validation).
double mu_lower_bound(int k, const SlotTable<double>& lambda);

}  // namespace calogero
