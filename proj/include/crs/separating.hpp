#pragma once

#include <cstdint>
#include <limits>

#include "crs/discrete_set.hpp"
#include "crs/interval_set.hpp"

namespace crs {

/// Countable separating family over a real window [lo, hi): the half-open
/// dyadic cells of the window enumerated breadth-first,
///
///   E_1 = [lo, mid), E_2 = [mid, hi), E_3 = first quarter, ...
///
/// generation d holds the 2^d cells of width (hi-lo)/2^d at indices
/// 2^d - 1 ... 2^{d+1} - 2 (1-based). Two distinct points are separated
/// once the cell width drops below their distance. The enumeration order
/// is part of the contract: canonical point selection depends on it.
class DyadicFamily {
 public:
  using set_type = IntervalSet;
  using point_type = double;

  /// Generations beyond this report failure to separate instead of
  /// looping on pairs closer than (hi-lo)*2^-64.
  static constexpr int kGenerationCap = 64;

  DyadicFamily(double lo, double hi);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  IntervalSet window() const { return IntervalSet::interval(lo_, hi_); }
  bool in_window(double x) const { return lo_ <= x && x < hi_; }

  /// E_n, 1-based; never empty for n within the generation cap.
  IntervalSet set(std::uint64_t n) const;

  bool point_in_set(double x, std::uint64_t n) const;

  /// Cell edges of generation d: edge(d, 0) = lo, edge(d, 2^d) = hi,
  /// monotone in k and consistent with set() and cell_index().
  double edge(int d, std::uint64_t k) const;

  /// Index in 0..2^d-1 of the generation-d cell containing x.
  std::uint64_t cell_index(double x, int d) const;

  /// Last enumeration index belonging to generation d.
  std::uint64_t generation_end(int d) const { return (std::uint64_t{2} << d) - 2; }

  static int generation_of(std::uint64_t n);
  static std::uint64_t cell_of(std::uint64_t n);

  /// Smallest n such that E_n contains exactly one of x != y, or 0 when
  /// the generation cap is reached without separating them.
  std::uint64_t separation_index(double x, double y) const;

  /// Smallest generation whose cells are narrower than `gap`.
  int separation_generation(double gap) const;

 private:
  double lo_;
  double hi_;
  double width_;
};

/// Separating family on {0..m-1}: E_n = {n-1} for n <= m, empty after.
class SingletonFamily {
 public:
  using set_type = DiscreteSet;
  using point_type = int;

  explicit SingletonFamily(int m) : m_(m) {
    if (m < 1 || m > DiscreteSet::kMaxUniverse) {
      throw std::invalid_argument("universe size must be in [1, 16]");
    }
  }

  int universe_size() const { return m_; }
  DiscreteSet window() const { return DiscreteSet::full_set(m_); }
  bool in_window(int x) const { return 0 <= x && x < m_; }

  DiscreteSet set(std::uint64_t n) const {
    if (n >= 1 && n <= static_cast<std::uint64_t>(m_)) {
      return DiscreteSet::singleton(m_, static_cast<int>(n - 1));
    }
    return DiscreteSet::empty_set(m_);
  }

  bool point_in_set(int x, std::uint64_t n) const {
    return n >= 1 && n <= static_cast<std::uint64_t>(m_) && x == static_cast<int>(n - 1);
  }

  std::uint64_t generation_end(int d) const { return static_cast<std::uint64_t>(d); }

  std::uint64_t separation_index(int x, int y) const {
    return x == y ? 0 : static_cast<std::uint64_t>(std::min(x, y)) + 1;
  }

 private:
  int m_;
};

/// Spec-facing constructors.
DyadicFamily dyadic_family(const IntervalSet& window);
inline SingletonFamily singleton_family(int m) { return SingletonFamily(m); }

}  // namespace crs
