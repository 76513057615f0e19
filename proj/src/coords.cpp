#include "calogero/coords.hpp"

#include <cmath>
#include <numbers>

#include "calogero/errors.hpp"

namespace calogero {

namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
const double kInvSqrt3 = std::numbers::inv_sqrt3;
const double kInvSqrt6 = 1.0 / std::sqrt(6.0);

double normalize_angle(double phi) {
  const double two_pi = 2.0 * std::numbers::pi;
  if (phi < 0.0) phi += two_pi;
  if (phi >= two_pi) phi -= two_pi;
  return phi;
}

}  // namespace

int CartesianConfig::depth() const {
  int k = 0;
  std::size_t n = 1;
  while (n < x.size()) {
    n *= 3;
    ++k;
  }
  if (n != x.size() || k < 1) throw DomainError("configuration length " + std::to_string(x.size()) + " is not 3^k");
  return k;
}

double HypersphericalPoint::beta_at(SlotId s) const {
  const Hierarchy h(k);
  const int pos = h.chain_position(s);
  if (pos >= static_cast<int>(beta.size())) throw DomainError("slot " + to_string(s) + " has no hyperangle");
  return beta[static_cast<std::size_t>(pos)];
}

std::vector<double> cluster_centres(const CartesianConfig& x, int level) {
  const int k = x.depth();
  if (level < 0 || level > k) throw DomainError("cluster level out of range");
  std::vector<double> w = x.x;
  for (int m = 1; m <= level; ++m) {
    std::vector<double> next(w.size() / 3);
    for (std::size_t l = 0; l < next.size(); ++l) next[l] = (w[3 * l] + w[3 * l + 1] + w[3 * l + 2]) * kInvSqrt3;
    w = std::move(next);
  }
  return w;
}

JacobiHierarchy to_jacobi(const CartesianConfig& x) {
  const int k = x.depth();
  JacobiHierarchy h{SlotTable<double>(k), SlotTable<double>(k), 0.0};
  std::vector<double> w = x.x;
  for (int m = 1; m <= k; ++m) {
    std::vector<double> next(w.size() / 3);
    for (std::size_t l = 0; l < next.size(); ++l) {
      const double a = w[3 * l], b = w[3 * l + 1], c = w[3 * l + 2];
      h.u(static_cast<int>(l) + 1, m) = (a - b) * kInvSqrt2;
      h.v(static_cast<int>(l) + 1, m) = (a + b - 2.0 * c) * kInvSqrt6;
      next[l] = (a + b + c) * kInvSqrt3;
    }
    w = std::move(next);
  }
  h.w_top = w.front();
  return h;
}

CartesianConfig from_jacobi(const JacobiHierarchy& h) {
  const int k = h.depth();
  if (h.v.depth() != k) throw DomainError("Jacobi hierarchy u/v depth mismatch");
  std::vector<double> w{h.w_top};
  for (int m = k; m >= 1; --m) {
    std::vector<double> below(w.size() * 3);
    for (std::size_t l = 0; l < w.size(); ++l) {
      const double u = h.u(static_cast<int>(l) + 1, m);
      const double v = h.v(static_cast<int>(l) + 1, m);
      const double s = w[l] * kInvSqrt3;
      below[3 * l] = s + u * kInvSqrt2 + v * kInvSqrt6;
      below[3 * l + 1] = s - u * kInvSqrt2 + v * kInvSqrt6;
      below[3 * l + 2] = s - 2.0 * v * kInvSqrt6;
    }
    w = std::move(below);
  }
  return {std::move(w)};
}

PolarSector to_polar(const JacobiHierarchy& h) {
  const int k = h.depth();
  PolarSector p{SlotTable<double>(k), SlotTable<double>(k), h.w_top};
  const Hierarchy tree(k);
  for (const SlotId& s : tree.chain()) {
    const double u = h.u[s], v = h.v[s];
    p.r[s] = std::hypot(u, v);
    // u plays the sine role: phi = 0 lies on the v axis.
    p.phi[s] = p.r[s] == 0.0 ? 0.0 : normalize_angle(std::atan2(u, v));
  }
  return p;
}

JacobiHierarchy from_polar(const PolarSector& p) {
  const int k = p.depth();
  JacobiHierarchy h{SlotTable<double>(k), SlotTable<double>(k), p.w_top};
  const Hierarchy tree(k);
  for (const SlotId& s : tree.chain()) {
    h.u[s] = p.r[s] * std::sin(p.phi[s]);
    h.v[s] = p.r[s] * std::cos(p.phi[s]);
  }
  return h;
}

HypersphericalPoint radii_to_hyperspherical(const PolarSector& sector) {
  const int k = sector.depth();
  const Hierarchy h(k);
  const auto& chain = h.chain();

  // Tail norms: tail[p]^2 = sum of r^2 over chain positions >= p.
  std::vector<double> tail(chain.size() + 1, 0.0);
  for (std::size_t p = chain.size(); p-- > 0;) tail[p] = std::hypot(tail[p + 1], sector.r[chain[p]]);

  HypersphericalPoint out;
  out.k = k;
  out.r = std::hypot(sector.w_top, tail[0]);
  out.beta.assign(chain.size() - 1, 0.0);
  if (out.r == 0.0) return out;
  out.alpha = std::atan2(tail[0], sector.w_top);
  for (std::size_t p = 0; p + 1 < chain.size(); ++p) {
    if (tail[p] == 0.0) break;  // deeper angles stay at zero
    out.beta[p] = std::atan2(tail[p + 1], sector.r[chain[p]]);
  }
  return out;
}

HyperRadii hyperspherical_to_radii(const HypersphericalPoint& p) {
  const Hierarchy h(p.k);
  const auto& chain = h.chain();
  if (p.beta.size() + 1 != chain.size()) throw DomainError("hyperspherical point has the wrong number of angles");
  HyperRadii out{SlotTable<double>(p.k), p.r * std::cos(p.alpha)};
  double running = p.r * std::sin(p.alpha);
  for (std::size_t q = 0; q + 1 < chain.size(); ++q) {
    out.r[chain[q]] = running * std::cos(p.beta[q]);
    running *= std::sin(p.beta[q]);
  }
  out.r[chain.back()] = running;
  return out;
}

K2Angles k2_angles(const PolarSector& s) {
  if (s.depth() != 2) throw DomainError("k2_angles requires k = 2");
  const double r12 = s.r(1, 2), r11 = s.r(1, 1), r21 = s.r(2, 1), r31 = s.r(3, 1);
  const double rho_phi = std::hypot(r21, r31);
  const double rho_beta = std::hypot(r11, rho_phi);
  const double rho_theta = std::hypot(r12, rho_beta);
  K2Angles a;
  a.r = std::hypot(s.w_top, rho_theta);
  a.alpha = std::atan2(rho_theta, s.w_top);
  a.theta = std::atan2(rho_beta, r12);
  a.beta = std::atan2(rho_phi, r11);
  a.phi = std::atan2(r21, r31);
  return a;
}

}  // namespace calogero
