#include "calogero/slots.hpp"

#include "calogero/errors.hpp"

namespace calogero {

std::string to_string(SlotId id) {
  return "(" + std::to_string(id.ell) + "," + std::to_string(id.level) + ")";
}

ValidationError::ValidationError(std::vector<std::string> issues)
    : Error([&] {
        std::string msg = "invalid model:";
        for (const auto& s : issues) msg += " [" + s + "]";
        return msg;
      }()),
      issues_(std::move(issues)) {}

Hierarchy::Hierarchy(int k) : k_(k) {
  if (k < 1 || k > 12) throw DomainError("hierarchy depth k must lie in [1, 12], got " + std::to_string(k));
  chain_.reserve(static_cast<std::size_t>(num_slots()));
  for (int m = k; m >= 1; --m)
    for (int ell = 1; ell <= pow3(k - m); ++ell) chain_.push_back({ell, m});
}

bool Hierarchy::contains(SlotId id) const {
  return id.level >= 1 && id.level <= k_ && id.ell >= 1 && id.ell <= pow3(k_ - id.level);
}

int Hierarchy::chain_position(SlotId id) const {
  if (!contains(id)) throw DomainError("slot " + to_string(id) + " is not part of the k=" + std::to_string(k_) + " tree");
  // levels above id.level contribute 3^0 + ... + 3^{k-level-1} slots
  return (pow3(k_ - id.level) - 1) / 2 + id.ell - 1;
}

}  // namespace calogero
