#include "crs/separating.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace crs {

DyadicFamily::DyadicFamily(double lo, double hi) : lo_(lo), hi_(hi), width_(hi - lo) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw std::invalid_argument("dyadic family needs a nonempty finite window");
  }
}

DyadicFamily dyadic_family(const IntervalSet& window) {
  if (window.component_count() != 1) {
    throw std::invalid_argument("dyadic family window must be a single interval");
  }
  const Interval iv = window.components().front();
  return DyadicFamily(iv.lo, iv.hi);
}

int DyadicFamily::generation_of(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("family indices are 1-based");
  return std::bit_width(n + 1) - 1;
}

std::uint64_t DyadicFamily::cell_of(std::uint64_t n) {
  const int d = generation_of(n);
  return n - ((std::uint64_t{1} << d) - 1);
}

double DyadicFamily::edge(int d, std::uint64_t k) const {
  if (k == 0) return lo_;
  if (k >= (std::uint64_t{1} << d)) return hi_;
  double e = lo_ + std::ldexp(static_cast<double>(k) * width_, -d);
  if (e < lo_) e = lo_;
  if (e > hi_) e = hi_;
  return e;
}

std::uint64_t DyadicFamily::cell_index(double x, int d) const {
  // Largest k with edge(d, k) <= x; binary search keeps this exact even
  // when rounding makes neighbouring edges coincide.
  std::uint64_t last = (std::uint64_t{1} << d) - 1;
  std::uint64_t lo = 0, hi = last;
  while (lo < hi) {
    std::uint64_t mid = lo + (hi - lo + 1) / 2;
    if (edge(d, mid) <= x) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

IntervalSet DyadicFamily::set(std::uint64_t n) const {
  const int d = generation_of(n);
  const std::uint64_t k = cell_of(n);
  return IntervalSet::interval(edge(d, k), edge(d, k + 1));
}

bool DyadicFamily::point_in_set(double x, std::uint64_t n) const {
  const int d = generation_of(n);
  const std::uint64_t k = cell_of(n);
  return edge(d, k) <= x && x < edge(d, k + 1);
}

std::uint64_t DyadicFamily::separation_index(double x, double y) const {
  if (x == y) return 0;
  for (int d = 1; d <= kGenerationCap; ++d) {
    const std::uint64_t kx = cell_index(x, d);
    const std::uint64_t ky = cell_index(y, d);
    if (kx != ky) return ((std::uint64_t{1} << d) - 1) + std::min(kx, ky);
  }
  return 0;
}

int DyadicFamily::separation_generation(double gap) const {
  int d = 1;
  while (d < kGenerationCap && !(std::ldexp(width_, -d) < gap)) ++d;
  return d;
}

}  // namespace crs
