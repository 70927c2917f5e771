#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crs/discrete_set.hpp"

namespace crs {
class RngStream;
}

namespace crs::sigma {

/// A configuration is a subset of the discrete state space {0..m-1},
/// encoded as a mask; the configuration universe C(S) is all 2^m of them.
using Config = std::uint32_t;

constexpr int kMaxFullEnumeration = 12;

/// A sigma-field over the configuration universe, represented by the
/// partition of C(S) into atoms: an event belongs to the field iff it is
/// a union of atoms. Atom ids are canonical (first occurrence order), so
/// two fields are equal iff their atom vectors are equal.
class FieldPartition {
 public:
  FieldPartition(int m, std::vector<int> atom_of, int n_atoms)
      : m_(m), atom_of_(std::move(atom_of)), n_atoms_(n_atoms) {}

  int universe_size() const { return m_; }
  std::size_t config_count() const { return atom_of_.size(); }
  int atom_count() const { return n_atoms_; }
  int atom_of(Config c) const { return atom_of_[c]; }
  const std::vector<int>& atoms() const { return atom_of_; }

  /// Union-of-atoms test; `event[c]` flags the configurations in the event.
  bool measurable(const std::vector<char>& event) const;

  /// Configurations of each atom, ordered by atom id.
  std::vector<std::vector<Config>> atom_members() const;

  friend bool operator==(const FieldPartition&, const FieldPartition&) = default;

 private:
  int m_;
  std::vector<int> atom_of_;
  int n_atoms_;
};

/// True when `fine` distinguishes every pair `coarse` distinguishes.
bool refines(const FieldPartition& fine, const FieldPartition& coarse);

/// sigma(N_A | A in tests): atoms are the fibers of M -> (|M & A|)_A.
FieldPartition counting_field(int m, const std::vector<DiscreteSet>& tests);

/// sigma({N_A != 0} | A in tests): fibers of the hit-indicator vector.
FieldPartition hitormiss_field(int m, const std::vector<DiscreteSet>& tests);

/// The event {N_A != 0} as a flag vector over the 2^m configurations.
std::vector<char> hit_event(int m, const DiscreteSet& a);

/// A == union of the family members contained in A (the empty union
/// makes every family represent the empty set).
bool is_union_of(const DiscreteSet& a, const std::vector<DiscreteSet>& family);

/// Semiring checks with the empty set treated as the empty disjoint
/// union, so families lacking an explicit empty member still qualify.
bool intersection_closed(int m, const std::vector<DiscreteSet>& tests);
bool differences_tile(int m, const std::vector<DiscreteSet>& tests);
bool separates_points(int m, const std::vector<DiscreteSet>& tests);

struct SelfDissectReport {
  bool intersection_closed = false;
  bool differences_tile = false;
  bool separating = false;
  bool equal = false;
  int counting_atoms = 0;
  int hitormiss_atoms = 0;

  bool preconditions_ok() const { return intersection_closed && differences_tile && separating; }
};

/// Exact check of the hit-or-miss = counting equality predicted for
/// self-dissecting families; precondition violations are reported, not
/// treated as theorem failures.
SelfDissectReport check_selfdissecting_equality(int m, const std::vector<DiscreteSet>& tests);

struct HitMembershipReport {
  bool membership = false;  // {N_A != 0} is hitormiss(tests)-measurable
  bool is_union = false;    // A is a union of test sets
};

HitMembershipReport hit_membership_iff_union(int m, const DiscreteSet& a,
                                             const std::vector<DiscreteSet>& tests);

/// All finite intersections of test sets and their complements, plus the
/// whole space as the empty intersection; deduplicated, sorted by mask.
std::vector<DiscreteSet> star_semiring_closure(int m, const std::vector<DiscreteSet>& tests);

/// sigma(gens) = P(S) iff the membership signatures separate points.
bool generates_powerset(int m, const std::vector<DiscreteSet>& gens);

/// Counting field of `gens` equals the full counting field. Predicted
/// true exactly when gens is an intersection-stable cover generating
/// P(S).
bool check_intersection_stable_generator(int m, const std::vector<DiscreteSet>& gens);

// ---- randomized and exhaustive trial drivers -------------------------

struct TrialCounts {
  long instances = 0;
  long failures = 0;
};

struct SigmaCheckReport {
  int m_max = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  TrialCounts thm31;            // randomized semirings: equality holds
  TrialCounts thm33;            // randomized families: membership <-> union
  TrialCounts cor36;            // randomized star-closure representation
  TrialCounts thm41;            // randomized generators: equality <-> powerset
  TrialCounts thm31_exhaustive; // all qualifying families, m <= exhaustive_m
  TrialCounts thm33_exhaustive; // all (family, A) pairs, m <= exhaustive_m
  int exhaustive_m = 0;
  std::vector<std::string> atoms_examples;

  long total_instances() const;
  long total_failures() const;
};

SigmaCheckReport run_sigma_check(int m_max, int trials, std::uint64_t seed,
                                 int exhaustive_m = 4);

/// Random separating semiring on {0..m-1} (laminar splits or ordered
/// intervals under a random permutation), empty set included.
std::vector<DiscreteSet> random_semiring(int m, RngStream& rng);

std::string describe_atoms(const FieldPartition& p);

}  // namespace crs::sigma
