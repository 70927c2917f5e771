#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "crs/selection.hpp"
#include "crs/separating.hpp"

namespace crs {

/// Nested partitions built from a separating family by the inductive
/// rule: split every cell C by the next family set E into C & E plus the
/// semiring components of C \ E. The public depth unit is the family
/// *generation* (dyadic generation d = cells of width (hi-lo)/2^d; the
/// singleton family consumes one set per generation); empty cells are
/// dropped.
///
/// For the dyadic family a generation boundary has a closed form: the
/// level-d cells are exactly the connected components of A & G for G
/// running over the generation-d grid cells. The literal set-by-set
/// refinement is kept in the tests as the oracle for this identity.
std::vector<IntervalSet> dissect(const IntervalSet& a, const DyadicFamily& fam, int depth);

/// Discrete backend: level 1 already splits A into {A & E_1} plus
/// singletons, so every level is the singleton partition of A.
std::vector<DiscreteSet> dissect(const DiscreteSet& a, const SingletonFamily& fam, int depth);

/// Leadbetter occupancy counts sum_k 1{M & A_{n,k} != empty} for
/// generations 1..max_depth. Nondecreasing, and equal to |M & A| from
/// the generation whose cells separate the points of M & A.
std::vector<long> leadbetter_counts(const FinitePointSet<double>& m, const IntervalSet& a,
                                    const DyadicFamily& fam, int max_depth);
std::vector<long> leadbetter_counts(const FinitePointSet<int>& m, const DiscreteSet& a,
                                    const SingletonFamily& fam, int max_depth);

template <class M, class A, class Family>
long leadbetter_count(const M& m, const A& a, const Family& fam, int depth) {
  const auto counts = leadbetter_counts(m, a, fam, depth);
  return counts.empty() ? 0 : counts.back();
}

}  // namespace crs
