#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace crs {

/// Subset of the finite state space {0, ..., m-1}, m <= 16, as a bitmask.
class DiscreteSet {
 public:
  static constexpr int kMaxUniverse = 16;

  DiscreteSet() = default;
  DiscreteSet(int m, std::uint32_t mask) : m_(m), mask_(mask) {
    if (m < 1 || m > kMaxUniverse) throw std::invalid_argument("universe size must be in [1, 16]");
    if (mask >> m) throw std::invalid_argument("mask uses bits beyond the universe");
  }

  static DiscreteSet empty_set(int m) { return DiscreteSet(m, 0); }
  static DiscreteSet full_set(int m) { return DiscreteSet(m, (1u << m) - 1u); }
  static DiscreteSet singleton(int m, int x) { return DiscreteSet(m, 1u << x); }

  int universe_size() const { return m_; }
  std::uint32_t mask() const { return mask_; }
  bool empty() const { return mask_ == 0; }
  int size() const { return std::popcount(mask_); }
  bool contains(int x) const { return (mask_ >> x) & 1u; }

  /// Elements in increasing order.
  std::vector<int> elements() const {
    std::vector<int> out;
    for (int x = 0; x < m_; ++x) {
      if (contains(x)) out.push_back(x);
    }
    return out;
  }

  friend bool operator==(const DiscreteSet&, const DiscreteSet&) = default;

 private:
  int m_ = 1;
  std::uint32_t mask_ = 0;
};

inline DiscreteSet unite(const DiscreteSet& a, const DiscreteSet& b) {
  return DiscreteSet(a.universe_size(), a.mask() | b.mask());
}
inline DiscreteSet intersect(const DiscreteSet& a, const DiscreteSet& b) {
  return DiscreteSet(a.universe_size(), a.mask() & b.mask());
}
inline DiscreteSet subtract(const DiscreteSet& a, const DiscreteSet& b) {
  return DiscreteSet(a.universe_size(), a.mask() & ~b.mask());
}
inline bool is_subset(const DiscreteSet& a, const DiscreteSet& b) {
  return (a.mask() & ~b.mask()) == 0;
}
inline bool disjoint(const DiscreteSet& a, const DiscreteSet& b) {
  return (a.mask() & b.mask()) == 0;
}

/// Singleton decomposition, the semiring pieces of the discrete backend.
inline std::vector<DiscreteSet> split_components(const DiscreteSet& a) {
  std::vector<DiscreteSet> out;
  for (int x : a.elements()) out.push_back(DiscreteSet::singleton(a.universe_size(), x));
  return out;
}

}  // namespace crs
