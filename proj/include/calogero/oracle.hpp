#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "calogero/model.hpp"
#include "calogero/quantum_numbers.hpp"

namespace calogero {

/// Uniform grid with N interior nodes lo + j h (j = 1..N), h = (hi - lo)/(N + 1).
/// The endpoints carry the Dirichlet value 0.
struct Grid1D {
  double lo = 0.0;
  double hi = 1.0;
  int n = 0;

  static constexpr int kMinNodes = 32;

  Grid1D(double lo, double hi, int n);

  double step() const { return (hi - lo) / (n + 1); }
  double node(int j) const { return lo + (j + 1) * step(); }  // j = 0..n-1
  /// Same interval with the step halved (2n + 1 interior nodes).
  Grid1D refined() const { return Grid1D(lo, hi, 2 * n + 1); }
};

/// -u'' + V u on a Grid1D with Dirichlet ends, 3-point stencil.
class DiscreteSchrodinger {
 public:
  DiscreteSchrodinger(const Grid1D& grid, const std::function<double(double)>& potential);

  const Grid1D& grid() const { return grid_; }
  /// Number of eigenvalues strictly below x.
  int count_below(double x) const;
  /// The index-th eigenvalue (0-based) by bisection to full precision.
  double eigenvalue(int index) const;
  std::vector<double> lowest(int count) const;
  /// Unit-norm (sum u_j^2 h = 1) eigenvector by inverse iteration, sign fixed
  /// so that the largest-magnitude component is positive.
  std::vector<double> eigenvector(int index) const;

 private:
  Grid1D grid_;
  std::vector<double> v_;
  double vmin_, vmax_;
};

// Model equations, each with Dirichlet conditions at both ends.

/// -d^2/dphi^2 + 9 lambda / (2 sin^2 3phi) on ]0, pi/3[. Exact: 9 (n + 1/2 + a)^2.
std::vector<double> fd_eigen_angular(double lambda, int count, const Grid1D& grid);
Grid1D angular_grid(int n);

/// -d^2/dx^2 + (A - 1/4)/sin^2 x + (B - 1/4)/cos^2 x on ]0, pi/2[.
/// Exact: (2i + 1 + sqrt(A) + sqrt(B))^2. Requires A, B > 1/4.
std::vector<double> fd_eigen_jacobi_type(double A, double B, int count, const Grid1D& grid);
Grid1D jacobi_type_grid(int n);

/// -d^2/dx^2 + (D - 1/4)/sin^2 x on ]0, pi[. Exact: (l + sqrt(D) + 1/2)^2. Requires D > 0.
std::vector<double> fd_eigen_gegenbauer_type(double D, int count, const Grid1D& grid);
Grid1D gegenbauer_type_grid(int n);

/// -d^2/dr^2 + omega^2 r^2 + (C - 1/4)/r^2 on ]0, r_max[.
/// Exact: 2 omega (2n + sqrt(C) + 1). Requires C > 0.
std::vector<double> fd_eigen_radial(double omega, double C, int count, const Grid1D& grid);
/// Truncation radius max(8, (kappa + 4 sqrt(2n + kappa + 1)) / sqrt(omega)) for the
/// highest level n requested.
double radial_cutoff(double omega, double C, int highest_level);
Grid1D radial_grid(double omega, double C, int highest_level, int n);

/// Angular eigenvector from the FD matrix, unit L2 norm on the grid.
std::vector<double> fd_eigenvector_angular(double lambda, int index, const Grid1D& grid);

/// Two-grid Richardson extrapolation under an h^order error model.
struct RichardsonResult {
  double order = 2.0;
  std::vector<double> coarse;
  std::vector<double> fine;
  std::vector<double> extrapolated;
};

RichardsonResult richardson(const std::function<std::vector<double>(const Grid1D&)>& solve, const Grid1D& coarse,
                            double order = 2.0);

/// Leading error order of the 3-point angular discretization: min(2, 2a) when
/// the wall term is present (a = sqrt(1 + 2 lambda) / 2), 2 otherwise.
double angular_fd_order(double lambda);

/// One FD-versus-closed-form comparison.
struct OracleCheck {
  std::string name;
  std::vector<std::pair<std::string, double>> parameters;
  double closed_form = 0.0;
  double fd_coarse = 0.0;
  double fd_fine = 0.0;
  double extrapolated = 0.0;
  double richardson_order = 2.0;
  /// log2 of the coarse/fine error ratio against the closed form.
  double observed_order = 0.0;
  double relative_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// The standard FD sweeps with their tolerances.
std::vector<OracleCheck> angular_sweep();
std::vector<OracleCheck> jacobi_type_sweep();
std::vector<OracleCheck> gegenbauer_type_sweep();
std::vector<OracleCheck> radial_sweep();

/// The same four equations at the parameters of one model's ground state:
/// the angular equation for every distinct coupling, the first chain node,
/// the alpha equation and the hyperradial equation. `grid_nodes` is the coarse
/// grid size (couplings below zero use at least 262143 nodes).
std::vector<OracleCheck> model_sweep(const ValidatedModel& model, int grid_nodes = 20000);

// Factorized inner products (k = 2).

inline constexpr int kK2Factors = 9;

/// Factor order: phi_{1,1}, phi_{2,1}, phi_{3,1}, phi_{1,2} slot factors, then
/// the phi, beta, theta, alpha hyperangles and the hyperradius.
extern const std::array<const char*, kK2Factors> kK2FactorNames;

struct InnerProduct {
  double value = 0.0;
  std::array<double, kK2Factors> factors{};
};

/// <Psi_a, Psi_b> with the nine-body measure, as a product of 1D Gauss rules.
InnerProduct inner_product(const ValidatedModel& model, const StateIndex& a, const StateIndex& b);

/// One factor of the inner product, computed on its own.
double inner_product_factor(const ValidatedModel& model, const K2Indices& a, const K2Indices& b, int factor);

/// <a,b> / sqrt(<a,a><b,b>).
double normalized_overlap(const ValidatedModel& model, const StateIndex& a, const StateIndex& b);

struct OrthogonalitySweep {
  int max_index = 0;
  long long pairs = 0;           // unordered pairs of distinct states
  long long pairs_evaluated = 0;  // pairs whose full product was computed
  double max_overlap = 0.0;       // upper bound over all pairs
  K2Indices worst_a{};
  K2Indices worst_b{};
};

/// All pairs of distinct k = 2 states with every index in [0, max_index].
/// Factors are visited in the order of kK2FactorNames, each adding one index
/// pair; since every normalized factor is bounded by 1 in magnitude, a branch
/// whose partial product is below `prune` is bounded without expansion.
OrthogonalitySweep orthogonality_sweep(const ValidatedModel& model, int max_index, double prune = 1e-12);

}  // namespace calogero
