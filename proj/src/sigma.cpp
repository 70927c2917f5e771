#include "crs/sigma.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "crs/rng.hpp"

namespace crs::sigma {

namespace {

void require_universe(int m) {
  if (m < 1 || m > kMaxFullEnumeration) {
    throw std::invalid_argument("full enumeration needs 1 <= m <= 12");
  }
}

template <class Signature>
FieldPartition partition_from(int m, const std::vector<Signature>& sig) {
  const std::size_t n = std::size_t{1} << m;
  std::vector<int> atom_of(n, -1);
  std::map<Signature, int> ids;
  int next = 0;
  for (std::size_t c = 0; c < n; ++c) {
    auto [it, inserted] = ids.try_emplace(sig[c], next);
    if (inserted) ++next;
    atom_of[c] = it->second;
  }
  return FieldPartition(m, std::move(atom_of), next);
}

}  // namespace

bool FieldPartition::measurable(const std::vector<char>& event) const {
  if (event.size() != atom_of_.size()) throw std::invalid_argument("event size mismatch");
  std::vector<signed char> atom_value(n_atoms_, -1);
  for (std::size_t c = 0; c < event.size(); ++c) {
    const int a = atom_of_[c];
    const signed char v = event[c] ? 1 : 0;
    if (atom_value[a] == -1) {
      atom_value[a] = v;
    } else if (atom_value[a] != v) {
      return false;
    }
  }
  return true;
}

std::vector<std::vector<Config>> FieldPartition::atom_members() const {
  std::vector<std::vector<Config>> out(n_atoms_);
  for (std::size_t c = 0; c < atom_of_.size(); ++c) {
    out[atom_of_[c]].push_back(static_cast<Config>(c));
  }
  return out;
}

bool refines(const FieldPartition& fine, const FieldPartition& coarse) {
  if (fine.config_count() != coarse.config_count()) return false;
  // Same fine atom must imply same coarse atom.
  std::vector<int> image(fine.atom_count(), -1);
  for (std::size_t c = 0; c < fine.config_count(); ++c) {
    const int f = fine.atom_of(static_cast<Config>(c));
    const int g = coarse.atom_of(static_cast<Config>(c));
    if (image[f] == -1) {
      image[f] = g;
    } else if (image[f] != g) {
      return false;
    }
  }
  return true;
}

FieldPartition counting_field(int m, const std::vector<DiscreteSet>& tests) {
  require_universe(m);
  const std::size_t n = std::size_t{1} << m;
  std::vector<std::vector<int>> sig(n, std::vector<int>(tests.size(), 0));
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t t = 0; t < tests.size(); ++t) {
      sig[c][t] = std::popcount(static_cast<std::uint32_t>(c) & tests[t].mask());
    }
  }
  return partition_from(m, sig);
}

FieldPartition hitormiss_field(int m, const std::vector<DiscreteSet>& tests) {
  require_universe(m);
  if (tests.size() > 64) throw std::invalid_argument("at most 64 test sets");
  const std::size_t n = std::size_t{1} << m;
  std::vector<std::uint64_t> sig(n, 0);
  for (std::size_t c = 0; c < n; ++c) {
    std::uint64_t bits = 0;
    for (std::size_t t = 0; t < tests.size(); ++t) {
      if (static_cast<std::uint32_t>(c) & tests[t].mask()) bits |= std::uint64_t{1} << t;
    }
    sig[c] = bits;
  }
  return partition_from(m, sig);
}

std::vector<char> hit_event(int m, const DiscreteSet& a) {
  const std::size_t n = std::size_t{1} << m;
  std::vector<char> event(n, 0);
  for (std::size_t c = 0; c < n; ++c) {
    event[c] = (static_cast<std::uint32_t>(c) & a.mask()) != 0;
  }
  return event;
}

bool is_union_of(const DiscreteSet& a, const std::vector<DiscreteSet>& family) {
  std::uint32_t covered = 0;
  for (const DiscreteSet& e : family) {
    if (is_subset(e, a)) covered |= e.mask();
  }
  return covered == a.mask();
}

bool intersection_closed(int m, const std::vector<DiscreteSet>& tests) {
  std::vector<char> present(std::size_t{1} << m, 0);
  for (const DiscreteSet& t : tests) present[t.mask()] = 1;
  for (const DiscreteSet& x : tests) {
    for (const DiscreteSet& y : tests) {
      const std::uint32_t w = x.mask() & y.mask();
      if (w != 0 && !present[w]) return false;
    }
  }
  return true;
}

bool differences_tile(int m, const std::vector<DiscreteSet>& tests) {
  const std::size_t n = std::size_t{1} << m;
  std::vector<std::uint32_t> members;
  std::vector<char> present(n, 0);
  for (const DiscreteSet& t : tests) {
    if (t.mask() != 0 && !present[t.mask()]) {
      present[t.mask()] = 1;
      members.push_back(t.mask());
    }
  }
  // tileable(X): X is a disjoint union of member sets (empty union for 0).
  std::vector<signed char> memo(n, -1);
  memo[0] = 1;
  auto tileable = [&](auto&& self, std::uint32_t x) -> bool {
    if (memo[x] != -1) return memo[x] == 1;
    bool ok = false;
    for (std::uint32_t e : members) {
      if ((e & x) == e && self(self, x & ~e)) {
        ok = true;
        break;
      }
    }
    memo[x] = ok ? 1 : 0;
    return ok;
  };
  for (const DiscreteSet& x : tests) {
    for (const DiscreteSet& y : tests) {
      if (!tileable(tileable, x.mask() & ~y.mask())) return false;
    }
  }
  return true;
}

bool separates_points(int m, const std::vector<DiscreteSet>& tests) {
  for (int x = 0; x < m; ++x) {
    for (int y = x + 1; y < m; ++y) {
      bool separated = false;
      for (const DiscreteSet& e : tests) {
        if (e.contains(x) != e.contains(y)) {
          separated = true;
          break;
        }
      }
      if (!separated) return false;
    }
  }
  return true;
}

SelfDissectReport check_selfdissecting_equality(int m, const std::vector<DiscreteSet>& tests) {
  SelfDissectReport r;
  r.intersection_closed = intersection_closed(m, tests);
  r.differences_tile = differences_tile(m, tests);
  r.separating = separates_points(m, tests);
  const FieldPartition counting = counting_field(m, tests);
  const FieldPartition hitmiss = hitormiss_field(m, tests);
  r.counting_atoms = counting.atom_count();
  r.hitormiss_atoms = hitmiss.atom_count();
  r.equal = counting == hitmiss;
  return r;
}

HitMembershipReport hit_membership_iff_union(int m, const DiscreteSet& a,
                                             const std::vector<DiscreteSet>& tests) {
  HitMembershipReport r;
  r.membership = hitormiss_field(m, tests).measurable(hit_event(m, a));
  r.is_union = is_union_of(a, tests);
  return r;
}

std::vector<DiscreteSet> star_semiring_closure(int m, const std::vector<DiscreteSet>& tests) {
  require_universe(m);
  const std::uint32_t full = (std::uint32_t{1} << m) - 1u;
  std::vector<char> seen(std::size_t{1} << m, 0);
  std::vector<std::uint32_t> closure;
  // Whole space as the empty intersection.
  seen[full] = 1;
  closure.push_back(full);
  for (std::size_t i = 0; i < closure.size(); ++i) {
    const std::uint32_t base = closure[i];
    for (const DiscreteSet& t : tests) {
      for (const std::uint32_t w : {base & t.mask(), base & ~t.mask() & full}) {
        if (!seen[w]) {
          seen[w] = 1;
          closure.push_back(w);
        }
      }
    }
  }
  std::sort(closure.begin(), closure.end());
  std::vector<DiscreteSet> out;
  out.reserve(closure.size());
  for (std::uint32_t w : closure) out.emplace_back(m, w);
  return out;
}

bool generates_powerset(int m, const std::vector<DiscreteSet>& gens) {
  // sigma(gens) atoms are the membership-signature classes of points.
  for (int x = 0; x < m; ++x) {
    for (int y = x + 1; y < m; ++y) {
      bool separated = false;
      for (const DiscreteSet& g : gens) {
        if (g.contains(x) != g.contains(y)) {
          separated = true;
          break;
        }
      }
      if (!separated) return false;
    }
  }
  return true;
}

bool check_intersection_stable_generator(int m, const std::vector<DiscreteSet>& gens) {
  std::vector<DiscreteSet> singletons;
  for (int x = 0; x < m; ++x) singletons.push_back(DiscreteSet::singleton(m, x));
  return counting_field(m, gens) == counting_field(m, singletons);
}

long SigmaCheckReport::total_instances() const {
  return thm31.instances + thm33.instances + cor36.instances + thm41.instances +
         thm31_exhaustive.instances + thm33_exhaustive.instances;
}

long SigmaCheckReport::total_failures() const {
  return thm31.failures + thm33.failures + cor36.failures + thm41.failures +
         thm31_exhaustive.failures + thm33_exhaustive.failures;
}

namespace {

DiscreteSet random_subset(int m, RngStream& rng) {
  const std::uint32_t full = (std::uint32_t{1} << m) - 1u;
  return DiscreteSet(m, static_cast<std::uint32_t>(rng.next_u32()) & full);
}

void laminar_split(int m, std::uint32_t block, RngStream& rng, std::vector<DiscreteSet>& out) {
  out.emplace_back(m, block);
  if (std::popcount(block) <= 1) return;
  // Random proper bipartition of the block.
  std::uint32_t left = 0;
  do {
    left = 0;
    for (int x = 0; x < m; ++x) {
      if ((block >> x) & 1u) {
        if (rng.next_u32() & 1u) left |= 1u << x;
      }
    }
  } while (left == 0 || left == block);
  laminar_split(m, left, rng, out);
  laminar_split(m, block & ~left, rng, out);
}

std::vector<DiscreteSet> interval_semiring(int m, const std::vector<int>& order) {
  std::vector<DiscreteSet> out;
  out.push_back(DiscreteSet::empty_set(m));
  for (int i = 0; i < m; ++i) {
    std::uint32_t mask = 0;
    for (int j = i; j < m; ++j) {
      mask |= 1u << order[j];
      out.emplace_back(m, mask);
    }
  }
  return out;
}

}  // namespace

std::vector<DiscreteSet> random_semiring(int m, RngStream& rng) {
  if (rng.next_u32() & 1u) {
    std::vector<DiscreteSet> out;
    out.push_back(DiscreteSet::empty_set(m));
    laminar_split(m, (std::uint32_t{1} << m) - 1u, rng, out);
    return out;
  }
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  for (int i = m - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.next_u32() % static_cast<std::uint32_t>(i + 1));
    std::swap(order[i], order[j]);
  }
  return interval_semiring(m, order);
}

std::string describe_atoms(const FieldPartition& p) {
  std::ostringstream os;
  const auto members = p.atom_members();
  for (std::size_t a = 0; a < members.size(); ++a) {
    if (a) os << " | ";
    os << '{';
    for (std::size_t i = 0; i < members[a].size(); ++i) {
      if (i) os << ',';
      os << members[a][i];
    }
    os << '}';
  }
  return os.str();
}

namespace {

void run_thm31_trials(int m_max, int trials, std::uint64_t seed, SigmaCheckReport& report) {
  RngStream rng(seed, substream_id(0, 31));
  for (int t = 0; t < trials; ++t) {
    const int m = 2 + static_cast<int>(rng.next_u32() % static_cast<std::uint32_t>(m_max - 1));
    const auto tests = random_semiring(m, rng);
    const auto r = check_selfdissecting_equality(m, tests);
    ++report.thm31.instances;
    if (!r.preconditions_ok() || !r.equal) ++report.thm31.failures;
    if (t == 0) {
      report.atoms_examples.push_back("counting atoms, first thm31 instance (m=" +
                                      std::to_string(m) + "): " +
                                      describe_atoms(counting_field(m, tests)));
    }
  }
}

void run_thm33_trials(int m_max, int trials, std::uint64_t seed, SigmaCheckReport& report) {
  RngStream rng(seed, substream_id(0, 33));
  for (int t = 0; t < trials; ++t) {
    const int m = 1 + static_cast<int>(rng.next_u32() % static_cast<std::uint32_t>(m_max));
    const int count = 1 + static_cast<int>(rng.next_u32() % static_cast<std::uint32_t>(2 * m));
    std::vector<DiscreteSet> tests;
    for (int i = 0; i < count; ++i) tests.push_back(random_subset(m, rng));
    const DiscreteSet a = random_subset(m, rng);
    const auto r = hit_membership_iff_union(m, a, tests);
    ++report.thm33.instances;
    if (r.membership != r.is_union) ++report.thm33.failures;
  }
}

void run_cor36_trials(int m_max, int trials, std::uint64_t seed, SigmaCheckReport& report) {
  RngStream rng(seed, substream_id(0, 36));
  const int cap = std::min(m_max, 5);
  for (int t = 0; t < trials; ++t) {
    const int m = 2 + static_cast<int>(rng.next_u32() % static_cast<std::uint32_t>(cap - 1));
    const auto semiring = random_semiring(m, rng);
    // Test sets measurable for C(semiring): unions of semiring members,
    // plus all singletons so the family separates points.
    std::vector<DiscreteSet> test_family;
    for (int x = 0; x < m; ++x) test_family.push_back(DiscreteSet::singleton(m, x));
    for (int i = 0; i < 3; ++i) {
      std::uint32_t mask = 0;
      for (const DiscreteSet& e : semiring) {
        if (rng.next_u32() & 1u) mask |= e.mask();
      }
      test_family.emplace_back(m, mask);
    }
    const auto star = star_semiring_closure(m, semiring);
    ++report.cor36.instances;
    // Hypothesis check: counting field unchanged by adjoining the tests.
    std::vector<DiscreteSet> joint = semiring;
    joint.insert(joint.end(), test_family.begin(), test_family.end());
    const bool hypothesis = counting_field(m, joint) == counting_field(m, semiring);
    bool conclusion = true;
    for (const DiscreteSet& a : test_family) {
      if (!is_union_of(a, star)) conclusion = false;
    }
    if (!hypothesis || !conclusion) ++report.cor36.failures;
  }
}

void run_thm41_trials(int m_max, int trials, std::uint64_t seed, SigmaCheckReport& report) {
  RngStream rng(seed, substream_id(0, 41));
  for (int t = 0; t < trials; ++t) {
    const int m = 2 + static_cast<int>(rng.next_u32() % static_cast<std::uint32_t>(m_max - 1));
    const int count = 1 + static_cast<int>(rng.next_u32() % 4u);
    std::vector<DiscreteSet> gens;
    gens.push_back(DiscreteSet::full_set(m));  // guarantees the cover
    for (int i = 0; i < count; ++i) gens.push_back(random_subset(m, rng));
    // Intersection-stable closure (the empty set may appear; harmless).
    for (std::size_t i = 0; i < gens.size(); ++i) {
      for (std::size_t j = i; j < gens.size(); ++j) {
        const DiscreteSet w = intersect(gens[i], gens[j]);
        if (std::find(gens.begin(), gens.end(), w) == gens.end()) gens.push_back(w);
      }
    }
    ++report.thm41.instances;
    const bool predicted = generates_powerset(m, gens);
    const bool equal = check_intersection_stable_generator(m, gens);
    if (equal != predicted) ++report.thm41.failures;
  }
}

void run_exhaustive(int exhaustive_m, SigmaCheckReport& report) {
  for (int m = 2; m <= exhaustive_m; ++m) {
    const std::uint32_t n_sets = std::uint32_t{1} << m;   // subsets of S
    const std::uint64_t n_families = std::uint64_t{1} << n_sets;
    for (std::uint64_t f = 1; f < n_families; ++f) {
      std::vector<DiscreteSet> tests;
      for (std::uint32_t s = 0; s < n_sets; ++s) {
        if ((f >> s) & 1u) tests.emplace_back(m, s);
      }
      // Thm 3.3 holds for arbitrary nonempty families: check every A.
      const FieldPartition hm = hitormiss_field(m, tests);
      for (std::uint32_t a = 0; a < n_sets; ++a) {
        const DiscreteSet set_a(m, a);
        ++report.thm33_exhaustive.instances;
        const bool membership = hm.measurable(hit_event(m, set_a));
        if (membership != is_union_of(set_a, tests)) ++report.thm33_exhaustive.failures;
      }
      // Thm 3.1 applies to separating semirings only.
      if (separates_points(m, tests) && intersection_closed(m, tests) &&
          differences_tile(m, tests)) {
        ++report.thm31_exhaustive.instances;
        if (!(hm == counting_field(m, tests))) ++report.thm31_exhaustive.failures;
      }
    }
  }
}

}  // namespace

SigmaCheckReport run_sigma_check(int m_max, int trials, std::uint64_t seed, int exhaustive_m) {
  if (m_max < 2 || m_max > kMaxFullEnumeration) {
    throw std::invalid_argument("sigma check needs 2 <= m <= 12");
  }
  if (exhaustive_m > 4) throw std::invalid_argument("exhaustive sweep supports m <= 4");
  SigmaCheckReport report;
  report.m_max = m_max;
  report.trials = trials;
  report.seed = seed;
  report.exhaustive_m = exhaustive_m;
  run_thm31_trials(m_max, trials, seed, report);
  run_thm33_trials(m_max, trials, seed, report);
  run_cor36_trials(m_max, trials, seed, report);
  run_thm41_trials(m_max, trials, seed, report);
  if (exhaustive_m >= 2) run_exhaustive(exhaustive_m, report);
  return report;
}

}  // namespace crs::sigma
