#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace calogero {

/// Integer power of three.
constexpr int pow3(int e) {
  int p = 1;
  for (int i = 0; i < e; ++i) p *= 3;
  return p;
}

/// Position (ell, level) of one Jacobi slot of the ternary cluster tree.
/// Level m runs 1..k, ell runs 1..3^{k-m}. Each slot carries one (u, v) pair.
struct SlotId {
  int ell = 1;
  int level = 1;

  friend bool operator==(const SlotId&, const SlotId&) = default;
};

std::string to_string(SlotId id);

/// Shape of the hierarchy for N = 3^k particles.
class Hierarchy {
 public:
  explicit Hierarchy(int k);

  int depth() const { return k_; }
  int num_particles() const { return pow3(k_); }
  /// (3^k - 1) / 2 slots in total.
  int num_slots() const { return (pow3(k_) - 1) / 2; }
  int slots_at(int level) const { return pow3(k_ - level); }
  bool contains(SlotId id) const;

  /// Slots in hyperspherical chain order: level k first, descending levels,
  /// ascending ell within a level. The last entry is (3^{k-1}, 1).
  const std::vector<SlotId>& chain() const& { return chain_; }
  // A temporary hands over its storage, so `for (s : Hierarchy(k).chain())` is safe.
  std::vector<SlotId> chain() && { return std::move(chain_); }
  /// Position of a slot in chain(); throws for slots outside the tree.
  int chain_position(SlotId id) const;

 private:
  int k_;
  std::vector<SlotId> chain_;
};

/// Dense per-slot storage addressed by (ell, level).
template <class T>
class SlotTable {
 public:
  SlotTable() = default;
  explicit SlotTable(int k, T fill = T{}) : k_(k) {
    if (k < 1) throw std::invalid_argument("SlotTable: depth must be >= 1");
    rows_.resize(static_cast<std::size_t>(k));
    for (int m = 1; m <= k; ++m) rows_[m - 1].assign(static_cast<std::size_t>(pow3(k - m)), fill);
  }

  int depth() const { return k_; }
  bool empty() const { return rows_.empty(); }

  T& operator()(int ell, int level) { return rows_.at(level - 1).at(ell - 1); }
  const T& operator()(int ell, int level) const { return rows_.at(level - 1).at(ell - 1); }
  T& operator[](SlotId id) { return (*this)(id.ell, id.level); }
  const T& operator[](SlotId id) const { return (*this)(id.ell, id.level); }

  std::vector<T>& level(int m) { return rows_.at(m - 1); }
  const std::vector<T>& level(int m) const { return rows_.at(m - 1); }

  friend bool operator==(const SlotTable&, const SlotTable&) = default;

 private:
  int k_ = 0;
  std::vector<std::vector<T>> rows_;
};

}  // namespace calogero
