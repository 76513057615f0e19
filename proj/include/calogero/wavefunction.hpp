#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "calogero/coords.hpp"
#include "calogero/model.hpp"
#include "calogero/quantum_numbers.hpp"

namespace calogero {

/// A real number stored as sign * exp(log_abs). sign == 0 means exactly zero.
struct LogValue {
  double log_abs = -std::numeric_limits<double>::infinity();
  int sign = 0;

  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }

  static LogValue of(double x);
  LogValue& operator*=(const LogValue& o);
  /// Multiply by |base|^power with base > 0 (power may be fractional).
  void mul_pow(double base, double power);
};

/// A configuration together with all coordinate transforms of it.
struct EvalPoint {
  CartesianConfig x;
  JacobiHierarchy jacobi;
  PolarSector polar;
  HypersphericalPoint hyper;

  explicit EvalPoint(CartesianConfig cfg);
};

/// Raw Cartesian potential: confinement, intra-cluster Calogero sums at every
/// level (centre-of-mass coordinates above level 1) and mu / sum x^2.
/// Throws SingularConfiguration naming the first divergent term.
double potential(const ValidatedModel& model, const CartesianConfig& x);

/// Same potential through the polar form: omega^2 r^2 + mu / r^2 +
/// sum over slots of 9 lambda / (2 r_s^2 sin^2 3 phi_s).
double potential_transformed(const ValidatedModel& model, const EvalPoint& p);

/// Closed-form nine-body eigenfunction in the explicit (r, alpha, theta,
/// beta, phi) labelling. k must be 2.
LogValue log_psi_k2(const ValidatedModel& model, const StateIndex& state, const EvalPoint& p);
double eval_psi_k2(const ValidatedModel& model, const StateIndex& state, const CartesianConfig& x);

/// Closed-form eigenfunction for any depth, walking the hyperangle chain.
LogValue log_psi_general(const ValidatedModel& model, const StateIndex& state, const EvalPoint& p);
double eval_psi_general(const ValidatedModel& model, const StateIndex& state, const CartesianConfig& x);

/// Rejection-sampling window for residual tests.
struct SamplingCuts {
  double min_abs_sin3phi = 0.2;  // every slot
  double min_sine = 0.2;         // sin(alpha) and every sin(beta)
  double min_cosine = 0.2;       // every cos(beta)
  double r_lo = 0.5;             // times 1/sqrt(omega)
  double r_hi = 2.5;
  /// Minimum distance (times 1/sqrt(omega)) between the members of every
  /// triple: particles at level 1, cluster centres above. 0 disables it.
  double min_separation = 0.3;
  int max_tries = 100000;        // per accepted point
};

/// Draws configurations with an isotropic direction and a hyperradius uniform
/// in the window, rejecting those that violate any cut.
class ConfigSampler {
 public:
  ConfigSampler(int k, double omega, SamplingCuts cuts, std::uint64_t seed);

  /// Throws SamplingError if max_tries draws are all rejected.
  CartesianConfig next();

 private:
  int k_;
  double omega_;
  SamplingCuts cuts_;
  std::mt19937_64 rng_;

  double uniform(double lo, double hi);
  double normal();
  bool accepts(const EvalPoint& p) const;
};

/// Smallest pairwise distance within any triple of the hierarchy
/// (particles at level 1, cluster centres w above).
double min_triple_separation(const CartesianConfig& x);

struct ResidualOptions {
  int n_points = 100;
  double h = 1e-3;
  std::uint64_t seed = 1;
  SamplingCuts cuts{};
  /// Added to the closed-form energy (a deliberately wrong eigenvalue must fail).
  double energy_shift = 0.0;
  bool use_k2_form = false;
  /// Points closer than this to a node of any polynomial factor are skipped
  /// (distance measured in that factor's own angle, or in sqrt(omega) r).
  double min_node_clearance = 0.15;
};

struct ResidualReport {
  int points = 0;
  double h = 0.0;
  double max_relative = 0.0;
  double mean_relative = 0.0;
  double energy = 0.0;
  long long skipped_near_nodes = 0;
};

/// Distance of a point from the nodal set of the polynomial factors of Psi,
/// measured factor by factor in its natural coordinate (slot angle phi,
/// hyperangles alpha and beta, scaled hyperradius sqrt(omega) r). Infinite
/// when every polynomial factor has degree zero.
double node_clearance(const ValidatedModel& model, const StateIndex& state, const EvalPoint& p);

/// Relative eigen-relation residual |(-Laplacian Psi + V Psi) / Psi - E| / |E|
/// for a single point, using central differences with step h.
double relative_residual_at(const ValidatedModel& model, const StateIndex& state, const CartesianConfig& x, double h,
                            double energy, bool use_k2_form = false);

/// eval_psi_general / eval_psi_k2 over sampled points (k = 2). Both forms
/// describe the same function, so the ratio is a constant.
struct EvaluatorComparison {
  int points = 0;
  double mean_ratio = 0.0;
  /// Standard deviation over |mean|, computed in two passes.
  double coefficient_of_variation = 0.0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
};

EvaluatorComparison compare_evaluators(const ValidatedModel& model, const StateIndex& state, int n_points,
                                       std::uint64_t seed, const SamplingCuts& cuts = {});

ResidualReport hamiltonian_residual(const ValidatedModel& model, const StateIndex& state, const ResidualOptions& opt);

}  // namespace calogero
