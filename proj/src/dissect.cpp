#include "crs/dissect.hpp"

#include <set>

namespace crs {

std::vector<IntervalSet> dissect(const IntervalSet& a, const DyadicFamily& fam, int depth) {
  if (depth < 1 || depth > 24) throw std::invalid_argument("dissect depth must be in [1, 24]");
  if (!is_subset(a, fam.window())) {
    throw std::invalid_argument("dissect root must lie inside the family window");
  }
  std::vector<IntervalSet> cells;
  const std::uint64_t n_grid = std::uint64_t{1} << depth;
  // Components of A & grid cell, grid cells left to right. Walk A's
  // components and cut them at grid edges rather than looping the grid.
  for (const Interval& comp : a.components()) {
    double lo = comp.lo;
    std::uint64_t k = fam.cell_index(lo, depth);
    while (lo < comp.hi) {
      const double right = k + 1 >= n_grid ? fam.hi() : fam.edge(depth, k + 1);
      const double hi = std::min(comp.hi, right);
      if (lo < hi) cells.push_back(IntervalSet::interval(lo, hi));
      lo = std::max(lo, right);
      ++k;
      if (k >= n_grid) break;
    }
  }
  return cells;
}

std::vector<DiscreteSet> dissect(const DiscreteSet& a, const SingletonFamily& fam, int depth) {
  if (depth < 1) throw std::invalid_argument("dissect depth must be >= 1");
  if (a.universe_size() != fam.universe_size()) {
    throw std::invalid_argument("universe size mismatch");
  }
  return split_components(a);
}

std::vector<long> leadbetter_counts(const FinitePointSet<double>& m, const IntervalSet& a,
                                    const DyadicFamily& fam, int max_depth) {
  if (max_depth < 1 || max_depth > DyadicFamily::kGenerationCap) {
    throw std::invalid_argument("depth out of range");
  }
  // Occupied cells at generation d are keyed by (grid index, left edge of
  // the component of A & G containing the point).
  std::vector<double> pts;
  for (double x : m.points()) {
    if (a.contains(x)) pts.push_back(x);
  }
  std::vector<long> counts;
  counts.reserve(static_cast<std::size_t>(max_depth));
  for (int d = 1; d <= max_depth; ++d) {
    std::set<std::pair<std::uint64_t, double>> occupied;
    for (double x : pts) {
      const std::uint64_t k = fam.cell_index(x, d);
      const double cell_lo = fam.edge(d, k);
      // Left endpoint of the component of A containing x.
      double comp_lo = 0.0;
      for (const Interval& comp : a.components()) {
        if (comp.contains(x)) {
          comp_lo = comp.lo;
          break;
        }
      }
      occupied.emplace(k, std::max(cell_lo, comp_lo));
    }
    counts.push_back(static_cast<long>(occupied.size()));
  }
  return counts;
}

std::vector<long> leadbetter_counts(const FinitePointSet<int>& m, const DiscreteSet& a,
                                    const SingletonFamily& fam, int max_depth) {
  if (max_depth < 1) throw std::invalid_argument("depth out of range");
  if (a.universe_size() != fam.universe_size()) {
    throw std::invalid_argument("universe size mismatch");
  }
  long in_a = 0;
  for (int x : m.points()) {
    if (a.contains(x)) ++in_a;
  }
  return std::vector<long>(static_cast<std::size_t>(max_depth), in_a);
}

}  // namespace crs
