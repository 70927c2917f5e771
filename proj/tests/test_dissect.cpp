#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "crs/dissect.hpp"
#include "crs/rng.hpp"

using namespace crs;

namespace {

/// Literal Prop-2.7 refinement: split every cell by each family set of
/// the generation in enumeration order, keeping C & E whole and the
/// components of C \ E as separate cells. Oracle for the closed form.
std::vector<IntervalSet> dissect_literal(const IntervalSet& a, const DyadicFamily& fam,
                                         int depth) {
  std::vector<IntervalSet> cells;
  if (!a.empty()) cells.push_back(a);
  for (std::uint64_t n = 1; n <= fam.generation_end(depth); ++n) {
    const IntervalSet e = fam.set(n);
    std::vector<IntervalSet> next;
    for (const IntervalSet& c : cells) {
      const IntervalSet in = intersect(c, e);
      if (!in.empty()) next.push_back(in);
      for (const IntervalSet& piece : split_components(subtract(c, e))) {
        next.push_back(piece);
      }
    }
    cells = std::move(next);
  }
  return cells;
}

long occupancy(const std::vector<IntervalSet>& cells, const std::vector<double>& pts) {
  long n = 0;
  for (const IntervalSet& c : cells) {
    for (double x : pts) {
      if (c.contains(x)) {
        ++n;
        break;
      }
    }
  }
  return n;
}

IntervalSet random_set_in(const Interval& window, RngStream& rng) {
  std::vector<Interval> comps;
  const int pieces = 1 + static_cast<int>(rng.next_u32() % 3u);
  for (int p = 0; p < pieces; ++p) {
    const double a = window.lo + (window.hi - window.lo) * rng.next_double();
    const double b = window.lo + (window.hi - window.lo) * rng.next_double();
    comps.push_back({std::min(a, b), std::max(a, b)});
  }
  return IntervalSet::from_intervals(std::move(comps));
}

}  // namespace

TEST_CASE("dissect levels on the unit window") {
  const DyadicFamily fam = dyadic_family(IntervalSet::interval(0, 1));
  const IntervalSet a = IntervalSet::interval(0, 1);
  const auto level1 = dissect(a, fam, 1);
  REQUIRE(level1.size() == 2);
  CHECK(level1[0] == IntervalSet::interval(0, 0.5));
  CHECK(level1[1] == IntervalSet::interval(0.5, 1));

  const auto level2 = dissect(a, fam, 2);
  REQUIRE(level2.size() == 4);
  CHECK(level2[0] == IntervalSet::interval(0, 0.25));
  CHECK(level2[1] == IntervalSet::interval(0.25, 0.5));
  CHECK(level2[2] == IntervalSet::interval(0.5, 0.75));
  CHECK(level2[3] == IntervalSet::interval(0.75, 1));

  CHECK(dissect(IntervalSet{}, fam, 3).empty());
}

TEST_CASE("dissect agrees with the literal refinement") {
  const DyadicFamily fam = dyadic_family(IntervalSet::interval(-1, 1));
  RngStream rng(41, 0);
  for (int t = 0; t < 200; ++t) {
    const IntervalSet a = random_set_in({-1.0, 1.0}, rng);
    const int depth = 1 + static_cast<int>(rng.next_u32() % 5u);
    auto got = dissect(a, fam, depth);
    auto want = dissect_literal(a, fam, depth);
    // Compare as multisets of cells: the construction orders parents
    // differently from the left-to-right closed form.
    auto key = [](const IntervalSet& s) { return s.components().front().lo; };
    std::sort(got.begin(), got.end(), [&](auto& x, auto& y) { return key(x) < key(y); });
    std::sort(want.begin(), want.end(), [&](auto& x, auto& y) { return key(x) < key(y); });
    REQUIRE(got == want);
  }
}

TEST_CASE("dissect cells partition the root") {
  const DyadicFamily fam = dyadic_family(IntervalSet::interval(-1, 1));
  RngStream rng(42, 0);
  for (int t = 0; t < 200; ++t) {
    const IntervalSet a = random_set_in({-1.0, 1.0}, rng);
    const auto cells = dissect(a, fam, 4);
    IntervalSet all;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      REQUIRE(!cells[i].empty());
      all = unite(all, cells[i]);
      for (std::size_t j = i + 1; j < cells.size(); ++j) {
        REQUIRE(disjoint(cells[i], cells[j]));
      }
    }
    REQUIRE(all == a);
  }
}

TEST_CASE("discrete dissect is the singleton partition") {
  const SingletonFamily fam = singleton_family(5);
  const DiscreteSet a(5, 0b10110);
  const auto cells = dissect(a, fam, 3);
  REQUIRE(cells.size() == 3);
  CHECK(cells[0] == DiscreteSet::singleton(5, 1));
  CHECK(cells[1] == DiscreteSet::singleton(5, 2));
  CHECK(cells[2] == DiscreteSet::singleton(5, 4));
}

TEST_CASE("leadbetter counting examples") {
  const DyadicFamily fam = dyadic_family(IntervalSet::interval(0, 1));
  const IntervalSet a = IntervalSet::interval(0, 1);
  const FinitePointSet<double> m({0.3, 0.31, 0.8});
  const auto counts = leadbetter_counts(m, a, fam, 8);
  CHECK(counts[0] == 2);  // depth 1: {0.3, 0.31} share [0, 0.5)
  CHECK(counts[5] == 2);  // depth 6: cells of width 1/64 still join them
  CHECK(counts[6] == 3);  // depth 7: width 1/128 separates 0.3 and 0.31
  CHECK(counts[7] == 3);

  CHECK(leadbetter_count(FinitePointSet<double>(std::vector<double>{}), a, fam, 5) == 0);
  const auto single = leadbetter_counts(FinitePointSet<double>(std::vector<double>{0.42}), a, fam, 5);
  for (long c : single) CHECK(c == 1);
}

TEST_CASE("leadbetter counts are nondecreasing and stabilize") {
  const DyadicFamily fam = dyadic_family(IntervalSet::interval(0, 1));
  RngStream rng(43, 0);
  for (int t = 0; t < 300; ++t) {
    const IntervalSet a = random_set_in({0.0, 1.0}, rng);
    std::set<double> uniq;
    const int count = 1 + static_cast<int>(rng.next_u32() % 12u);
    while (static_cast<int>(uniq.size()) < count) uniq.insert(rng.next_double());
    const FinitePointSet<double> m(std::vector<double>(uniq.begin(), uniq.end()));

    std::vector<double> in_a;
    for (double x : m.points()) {
      if (a.contains(x)) in_a.push_back(x);
    }
    double min_gap = 1.0;
    std::sort(in_a.begin(), in_a.end());
    for (std::size_t i = 1; i < in_a.size(); ++i) {
      min_gap = std::min(min_gap, in_a[i] - in_a[i - 1]);
    }
    const int d_star = in_a.size() < 2 ? 1 : fam.separation_generation(min_gap);
    const auto counts = leadbetter_counts(m, a, fam, d_star + 2);
    for (std::size_t i = 1; i < counts.size(); ++i) REQUIRE(counts[i] >= counts[i - 1]);
    REQUIRE(counts[static_cast<std::size_t>(d_star) - 1] == static_cast<long>(in_a.size()));
    REQUIRE(counts.back() == static_cast<long>(in_a.size()));
  }
}

TEST_CASE("leadbetter counts agree with literal occupancy") {
  const DyadicFamily fam = dyadic_family(IntervalSet::interval(0, 1));
  RngStream rng(44, 0);
  for (int t = 0; t < 100; ++t) {
    const IntervalSet a = random_set_in({0.0, 1.0}, rng);
    std::set<double> uniq;
    while (uniq.size() < 6) uniq.insert(rng.next_double());
    std::vector<double> v(uniq.begin(), uniq.end());
    const FinitePointSet<double> m(v);
    for (int depth = 1; depth <= 5; ++depth) {
      REQUIRE(leadbetter_count(m, a, fam, depth) ==
              occupancy(dissect_literal(a, fam, depth), v));
    }
  }
}

TEST_CASE("discrete leadbetter count") {
  const SingletonFamily fam = singleton_family(6);
  const DiscreteSet a(6, 0b011110);
  const FinitePointSet<int> m({0, 1, 3, 5});
  const auto counts = leadbetter_counts(m, a, fam, 4);
  for (long c : counts) CHECK(c == 2);  // 1 and 3 are in A, 0 and 5 are not
}
