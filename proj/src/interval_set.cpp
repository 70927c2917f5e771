#include "crs/interval_set.hpp"

#include <algorithm>
#include <limits>
#include <ostream>

namespace crs {

IntervalSet IntervalSet::interval(double lo, double hi) {
  IntervalSet s;
  if (lo < hi) s.comps_.push_back({lo, hi});
  return s;
}

IntervalSet IntervalSet::from_intervals(std::vector<Interval> intervals) {
  std::erase_if(intervals, [](const Interval& iv) { return iv.empty(); });
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  IntervalSet s;
  for (const Interval& iv : intervals) {
    if (!s.comps_.empty() && iv.lo <= s.comps_.back().hi) {
      s.comps_.back().hi = std::max(s.comps_.back().hi, iv.hi);
    } else {
      s.comps_.push_back(iv);
    }
  }
  return s;
}

bool IntervalSet::contains(double x) const {
  auto it = std::upper_bound(
      comps_.begin(), comps_.end(), x,
      [](double v, const Interval& iv) { return v < iv.lo; });
  if (it == comps_.begin()) return false;
  --it;
  return x < it->hi;
}

double IntervalSet::lebesgue() const {
  double total = 0.0;
  for (const Interval& iv : comps_) total += iv.length();
  return total;
}

Interval IntervalSet::span() const {
  if (comps_.empty()) return {};
  return {comps_.front().lo, comps_.back().hi};
}

double IntervalSet::distance_to_zero() const {
  double best = std::numeric_limits<double>::infinity();
  for (const Interval& iv : comps_) {
    double d;
    if (iv.lo <= 0.0 && 0.0 <= iv.hi) {
      d = 0.0;  // contains 0 or accumulates at it from the left
    } else if (iv.lo > 0.0) {
      d = iv.lo;
    } else {
      d = -iv.hi;
    }
    best = std::min(best, d);
  }
  return best;
}

IntervalSet unite(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> all = a.components();
  all.insert(all.end(), b.components().begin(), b.components().end());
  return IntervalSet::from_intervals(std::move(all));
}

IntervalSet intersect(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> out;
  const auto& xs = a.components();
  const auto& ys = b.components();
  std::size_t i = 0, j = 0;
  while (i < xs.size() && j < ys.size()) {
    double lo = std::max(xs[i].lo, ys[j].lo);
    double hi = std::min(xs[i].hi, ys[j].hi);
    if (lo < hi) out.push_back({lo, hi});
    if (xs[i].hi < ys[j].hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return IntervalSet::from_intervals(std::move(out));
}

IntervalSet subtract(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> out;
  const auto& ys = b.components();
  for (Interval iv : a.components()) {
    double lo = iv.lo;
    for (const Interval& y : ys) {
      if (y.hi <= lo) continue;
      if (y.lo >= iv.hi) break;
      if (y.lo > lo) out.push_back({lo, y.lo});
      lo = std::max(lo, y.hi);
      if (lo >= iv.hi) break;
    }
    if (lo < iv.hi) out.push_back({lo, iv.hi});
  }
  return IntervalSet::from_intervals(std::move(out));
}

IntervalSet complement_in(const IntervalSet& window, const IntervalSet& a) {
  return subtract(window, a);
}

bool is_subset(const IntervalSet& a, const IntervalSet& b) {
  return subtract(a, b).empty();
}

bool disjoint(const IntervalSet& a, const IntervalSet& b) {
  return intersect(a, b).empty();
}

std::vector<IntervalSet> split_components(const IntervalSet& a) {
  std::vector<IntervalSet> out;
  out.reserve(a.component_count());
  for (const Interval& iv : a.components()) out.push_back(IntervalSet::interval(iv.lo, iv.hi));
  return out;
}

std::ostream& operator<<(std::ostream& os, const IntervalSet& s) {
  os << '{';
  bool first = true;
  for (const Interval& iv : s.components()) {
    if (!first) os << ", ";
    os << '[' << iv.lo << ", " << iv.hi << ')';
    first = false;
  }
  return os << '}';
}

ClosedIntervalSet ClosedIntervalSet::interval(double lo, double hi) {
  ClosedIntervalSet s;
  if (lo <= hi) s.comps_.push_back({lo, hi});
  return s;
}

ClosedIntervalSet ClosedIntervalSet::from_intervals(std::vector<ClosedInterval> intervals) {
  std::erase_if(intervals, [](const ClosedInterval& iv) { return iv.lo > iv.hi; });
  std::sort(intervals.begin(), intervals.end(),
            [](const ClosedInterval& x, const ClosedInterval& y) { return x.lo < y.lo; });
  ClosedIntervalSet s;
  for (const ClosedInterval& iv : intervals) {
    if (!s.comps_.empty() && iv.lo <= s.comps_.back().hi) {
      s.comps_.back().hi = std::max(s.comps_.back().hi, iv.hi);
    } else {
      s.comps_.push_back(iv);
    }
  }
  return s;
}

bool ClosedIntervalSet::contains(double x) const {
  for (const ClosedInterval& iv : comps_) {
    if (iv.contains(x)) return true;
  }
  return false;
}

IntervalSet ClosedIntervalSet::half_open_hull() const {
  std::vector<Interval> out;
  for (const ClosedInterval& iv : comps_) out.push_back({iv.lo, iv.hi});
  return IntervalSet::from_intervals(std::move(out));
}

ClosedIntervalSet closure(const IntervalSet& a) {
  std::vector<ClosedInterval> out;
  for (const Interval& iv : a.components()) out.push_back({iv.lo, iv.hi});
  return ClosedIntervalSet::from_intervals(std::move(out));
}

}  // namespace crs
