#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace crs {

/// Half-open interval [lo, hi). Empty when lo >= hi.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool empty() const { return !(lo < hi); }
  double length() const { return empty() ? 0.0 : hi - lo; }
  bool contains(double x) const { return lo <= x && x < hi; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// A finite union of disjoint half-open intervals, kept normalized:
/// components sorted by left endpoint, no overlaps, no zero gaps
/// (abutting intervals are merged). The empty sequence is the empty set.
///
/// Endpoints are plain binary64; normalization merges only exact-zero
/// gaps, so identities like A \ A = empty are exact on dyadic endpoints.
class IntervalSet {
 public:
  IntervalSet() = default;

  /// Single interval [lo, hi); empty set when lo >= hi.
  static IntervalSet interval(double lo, double hi);

  /// Normalizes an arbitrary list of intervals (sorts, drops empties,
  /// merges overlapping and abutting components).
  static IntervalSet from_intervals(std::vector<Interval> intervals);

  bool empty() const { return comps_.empty(); }
  std::size_t component_count() const { return comps_.size(); }
  const std::vector<Interval>& components() const { return comps_; }

  bool contains(double x) const;
  double lebesgue() const;

  /// Smallest interval [min lo, max hi) covering the set; empty set -> empty.
  Interval span() const;

  /// min |x| over points of the set; infinity for the empty set.
  /// Zero when some component [a,b) has a <= 0 < b or accumulates at 0
  /// from the left (b == 0).
  double distance_to_zero() const;

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  std::vector<Interval> comps_;
};

IntervalSet unite(const IntervalSet& a, const IntervalSet& b);
IntervalSet intersect(const IntervalSet& a, const IntervalSet& b);
IntervalSet subtract(const IntervalSet& a, const IntervalSet& b);
IntervalSet complement_in(const IntervalSet& window, const IntervalSet& a);

bool is_subset(const IntervalSet& a, const IntervalSet& b);
bool disjoint(const IntervalSet& a, const IntervalSet& b);

/// The components of `a` as separate one-interval sets, in order.
std::vector<IntervalSet> split_components(const IntervalSet& a);

std::ostream& operator<<(std::ostream& os, const IntervalSet& s);

/// Closed interval [a, b]; degenerate points (a == b) allowed.
struct ClosedInterval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double x) const { return lo <= x && x <= hi; }

  friend bool operator==(const ClosedInterval&, const ClosedInterval&) = default;
};

/// A finite union of disjoint closed intervals (touching components are
/// merged). Used for the closed-set test families; measure evaluation
/// goes through half_open_hull(), exact for atomless intensities.
class ClosedIntervalSet {
 public:
  ClosedIntervalSet() = default;

  static ClosedIntervalSet interval(double lo, double hi);
  static ClosedIntervalSet from_intervals(std::vector<ClosedInterval> intervals);

  bool empty() const { return comps_.empty(); }
  const std::vector<ClosedInterval>& components() const { return comps_; }
  bool contains(double x) const;

  /// [a, b] -> [a, b); degenerate components vanish.
  IntervalSet half_open_hull() const;

  friend bool operator==(const ClosedIntervalSet&, const ClosedIntervalSet&) = default;

 private:
  std::vector<ClosedInterval> comps_;
};

/// Component-wise closure [a, b) -> [a, b].
ClosedIntervalSet closure(const IntervalSet& a);

}  // namespace crs
