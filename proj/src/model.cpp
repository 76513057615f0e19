#include "calogero/model.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <vector>

#include "calogero/errors.hpp"

namespace calogero {

ModelParams ModelParams::uniform(int k, double omega, double mu, double lambda) {
  ModelParams p;
  p.k = k;
  p.omega = omega;
  p.mu = mu;
  if (k >= 1 && k <= 12) p.lambda = SlotTable<double>(k, lambda);
  return p;
}

double a_of(double lambda) {
  if (!(lambda > -0.5)) throw DomainError("coupling must exceed -1/2, got " + std::to_string(lambda));
  return 0.5 * std::sqrt(1.0 + 2.0 * lambda);
}

double b_of(int n, double a) {
  if (n < 0) throw DomainError("angular quantum number must be non-negative");
  return 3.0 * (n + 0.5 + a);
}

double mu_lower_bound(int k, const SlotTable<double>& lambda) {
  // Ground bracket: every slot contributes b at n = 0, every chain node one
  // unit of (2 Lambda + 1), plus n_alpha + 1/2.
  const Hierarchy h(k);
  double bracket = (h.num_slots() - 1) + 0.5;
  for (const SlotId& s : h.chain()) bracket += b_of(0, a_of(lambda[s]));
  return -bracket * bracket;
}

double mu_lower_bound(const ValidatedModel& model) { return mu_lower_bound(model.k(), model.params().lambda); }

ValidatedModel::ValidatedModel(ModelParams p, SlotTable<double> a)
    : params_(std::move(p)), hierarchy_(params_.k), a_(std::move(a)) {}

ValidatedModel ValidatedModel::validate(const ModelParams& p) {
  std::vector<std::string> issues;
  if (p.k < 2 || p.k > 12) issues.push_back("bad-k: k must lie in [2, 12], got " + std::to_string(p.k));
  if (!(p.omega > 0.0) || !std::isfinite(p.omega)) issues.push_back("bad-omega: omega must be positive and finite");
  if (!std::isfinite(p.mu)) issues.push_back("bad-mu: mu must be finite");
  if (!issues.empty() && (p.k < 2 || p.k > 12)) throw ValidationError(issues);

  if (p.lambda.depth() != p.k) {
    issues.push_back("bad-lambda-shape: coupling table depth " + std::to_string(p.lambda.depth()) +
                     " does not match k=" + std::to_string(p.k));
    throw ValidationError(issues);
  }

  const Hierarchy h(p.k);
  SlotTable<double> a(p.k, 0.0);
  bool couplings_ok = true;
  for (const SlotId& s : h.chain()) {
    const double lam = p.lambda[s];
    if (!(lam > -0.5) || !std::isfinite(lam)) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "coupling-out-of-range: lambda%s = %.17g must exceed -1/2", to_string(s).c_str(), lam);
      issues.emplace_back(buf);
      couplings_ok = false;
      continue;
    }
    a[s] = a_of(lam);
  }
  if (couplings_ok) {
    const double bound = mu_lower_bound(p.k, p.lambda);
    if (!(p.mu > bound)) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "mu-below-bound: mu = %.17g must exceed %.17g", p.mu, bound);
      issues.emplace_back(buf);
    }
  }
  if (!issues.empty()) throw ValidationError(issues);
  return ValidatedModel(p, std::move(a));
}

std::string ValidatedModel::hash() const {
  // FNV-1a over the canonical parameter text.
  std::string text;
  char buf[64];
  std::snprintf(buf, sizeof buf, "k=%d;omega=%.17g;mu=%.17g", params_.k, params_.omega, params_.mu);
  text += buf;
  for (const SlotId& s : hierarchy_.chain()) {
    std::snprintf(buf, sizeof buf, ";l%d.%d=%.17g", s.level, s.ell, params_.lambda[s]);
    text += buf;
  }
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace calogero
