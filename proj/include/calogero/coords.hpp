#pragma once

#include <span>
#include <vector>

#include "calogero/slots.hpp"

namespace calogero {

/// Particle positions x_1..x_{3^k}.
struct CartesianConfig {
  std::vector<double> x;

  int depth() const;  // k with 3^k == x.size(); throws otherwise
};

/// Relative (u, v) pairs of every slot plus the overall centre of mass.
struct JacobiHierarchy {
  SlotTable<double> u;
  SlotTable<double> v;
  double w_top = 0.0;

  int depth() const { return u.depth(); }
};

/// Per-slot polar form: u = r sin(phi), v = r cos(phi), phi in [0, 2 pi).
struct PolarSector {
  SlotTable<double> r;
  SlotTable<double> phi;
  double w_top = 0.0;

  int depth() const { return r.depth(); }
};

/// Hyperradius, polar angle alpha and the chain of beta angles (one per
/// chain node, in Hierarchy::chain() order; the final slot has none).
struct HypersphericalPoint {
  int k = 2;
  double r = 0.0;
  double alpha = 0.0;
  std::vector<double> beta;

  /// beta attached to a chain-node slot.
  double beta_at(SlotId s) const;
};

/// Centre-of-mass coordinates w_{ell,m} of all clusters at level m
/// (level 0 returns the particle positions themselves).
std::vector<double> cluster_centres(const CartesianConfig& x, int level);

JacobiHierarchy to_jacobi(const CartesianConfig& x);
CartesianConfig from_jacobi(const JacobiHierarchy& h);

PolarSector to_polar(const JacobiHierarchy& h);
JacobiHierarchy from_polar(const PolarSector& p);

/// Radii and w_top to hyperspherical form. All deeper angles are zero once
/// the remaining norm vanishes.
HypersphericalPoint radii_to_hyperspherical(const PolarSector& sector);

struct HyperRadii {
  SlotTable<double> r;
  double w_top = 0.0;
};

/// Product formulas: w_top = r cos(alpha); each slot along the chain takes
/// the running product of sines times the cosine of its own angle; the final
/// slot takes the full product of sines.
HyperRadii hyperspherical_to_radii(const HypersphericalPoint& p);

/// Nine-body (k = 2) angles in the explicit labelling:
/// w = r cos a, r12 = r sin a cos t, r11 = r sin a sin t cos b,
/// r21 = r sin a sin t sin b sin f, r31 = r sin a sin t sin b cos f.
struct K2Angles {
  double r = 0.0;
  double alpha = 0.0;
  double theta = 0.0;
  double beta = 0.0;
  double phi = 0.0;
};

K2Angles k2_angles(const PolarSector& sector);

}  // namespace calogero
