#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "crs/discrete_set.hpp"
#include "crs/models.hpp"
#include "crs/stats.hpp"

namespace crs {

/// Monte Carlo estimate of T(A) = P(realization hits A) with a Wilson
/// interval and, when the model admits one, a truncation bias bound.
struct HittingEstimate {
  IntervalSet set;
  double p_hat = 0.0;
  WilsonInterval ci;
  std::optional<double> truncation_bias;  // nullopt: bias unknown (shifted model)
  std::int64_t n_samples = 0;
  int depth = 0;

  /// An estimate is decided when the analytic tail bound is below the
  /// interval halfwidth; otherwise the truncation dominates.
  bool decided() const { return truncation_bias && *truncation_bias <= ci.halfwidth; }
};

/// One pass over shared replicates for a whole batch of sets.
std::vector<HittingEstimate> estimate_hitting(const CrSetModel& model,
                                              const std::vector<IntervalSet>& sets,
                                              std::int64_t n_samples, int depth,
                                              std::uint64_t seed, double z, int threads = 1);

HittingEstimate estimate_hitting_one(const CrSetModel& model, const IntervalSet& set,
                                     std::int64_t n_samples, int depth, std::uint64_t seed,
                                     double z, int threads = 1);

/// Exact hitting function of a random subset model of {0..m-1}, by
/// outcome enumeration or product form.
class ExactHitting {
 public:
  /// Explicit distribution over the 2^m configurations.
  static ExactHitting from_distribution(int m, std::vector<double> probs);
  /// Independent inclusion with per-point probabilities.
  static ExactHitting independent_inclusion(int m, std::vector<double> p);

  int universe_size() const { return m_; }
  double evaluate(const DiscreteSet& a) const;

 private:
  ExactHitting(int m, std::vector<double> config_probs, std::vector<double> incl);

  int m_;
  std::vector<double> config_probs_;  // empty in product form
  std::vector<double> inclusion_;    // empty in enumeration form
};

// ---------------------------------------------------------------------
// Hitting-function axioms.

using HittingFn = std::function<double(const IntervalSet&)>;

struct AxiomCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = true;
};

struct AxiomReport {
  std::vector<AxiomCheck> checks;
  bool all_pass = true;
};

template <class SetT>
struct IncreasingChain {
  std::vector<SetT> sets;  // nondecreasing
  SetT limit;              // their union
};

/// T(empty) = 0, monotone on nested pairs of `sets`, finitely subadditive
/// on pairs, continuous from below along the chains; `slack` absorbs
/// estimator noise (zero for exact hitting functions). Works on either
/// backend's set type.
template <class SetT, class Fn>
AxiomReport check_axioms(const Fn& t, const std::vector<SetT>& sets,
                         const std::vector<IncreasingChain<SetT>>& chains, double slack) {
  AxiomReport report;
  const auto add = [&](const char* name, double lhs, double rhs, bool pass) {
    report.checks.push_back({name, lhs, rhs, pass});
    report.all_pass = report.all_pass && pass;
  };

  const double t_empty = sets.empty() ? t(SetT{}) : t(subtract(sets.front(), sets.front()));
  add("empty", t_empty, 0.0, std::abs(t_empty) <= slack);

  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = 0; j < sets.size(); ++j) {
      if (i != j && is_subset(sets[i], sets[j])) {
        const double ti = t(sets[i]);
        const double tj = t(sets[j]);
        add("monotone", ti, tj, ti <= tj + slack);
      }
    }
  }
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      const double tu = t(unite(sets[i], sets[j]));
      const double sum = t(sets[i]) + t(sets[j]);
      add("subadditive", tu, sum, tu <= sum + slack);
    }
  }
  for (const IncreasingChain<SetT>& chain : chains) {
    double prev = -1.0;
    bool increasing = true;
    for (const SetT& a : chain.sets) {
      const double v = t(a);
      if (v + slack < prev) increasing = false;
      prev = std::max(prev, v);
    }
    const double tl = t(chain.limit);
    add("continuity_from_below", prev, tl, increasing && std::abs(tl - prev) <= slack);
  }
  return report;
}

// ---------------------------------------------------------------------
// Continuity from above.

struct ContinuityProbe {
  std::vector<double> chain_values;
  double limit_value = 0.0;
  bool continuous = false;  // last chain value within slack of the limit value
  std::string mode;         // "analytic" or "estimated"
};

/// Evaluates T along a decreasing chain and at its intersection. A
/// finite model converges; the Example-1 chain (0, 1/n) stays at T = 1
/// against T(empty) = 0, which the probe reports as the (correct)
/// discontinuity witness.
ContinuityProbe continuity_from_above_probe(const CrSetModel& model,
                                            const std::vector<IntervalSet>& chain,
                                            const IntervalSet& limit, std::int64_t n_samples,
                                            int depth, std::uint64_t seed, double slack);

// ---------------------------------------------------------------------
// Renyi verification.

struct RenyiRow {
  IntervalSet set;
  double p_hat = 0.0;
  double ci_halfwidth = 0.0;
  double ci_center = 0.0;
  double analytic = 0.0;
  std::optional<double> tail_bound;
  bool pass = false;
};

struct RenyiReport {
  std::vector<RenyiRow> rows;
  bool all_pass = true;
  std::int64_t n_samples = 0;
  int depth = 0;
  double z = 0.0;
};

/// |p_hat - (1 - e^{-mu(A)})| within the Wilson interval plus the
/// truncation bound, per set. `bonferroni` widens the per-set level to
/// alpha / #sets.
RenyiReport renyi_verify(const CrSetModel& model, const std::vector<IntervalSet>& sets,
                         std::int64_t n_samples, int depth, std::uint64_t seed, double alpha,
                         bool bonferroni = false, int threads = 1);

// ---------------------------------------------------------------------
// Exact inner/outer approximation on the discrete backend.

struct SandwichRow {
  DiscreteSet set;
  double sup_inner = 0.0;
  double t_value = 0.0;
  double inf_outer = 1.0;
  bool pass = false;
};

struct SandwichReport {
  bool empty_in_family = false;
  bool intersection_stable = false;
  bool family_in_inner_sigma = false;  // E subset of (E_int)_sigma
  bool generates = false;
  std::vector<SandwichRow> rows;       // one per subset of S
  bool all_pass = false;

  bool preconditions_ok() const {
    return empty_in_family && intersection_stable && family_in_inner_sigma && generates;
  }
};

/// sup{T(F) | F in E_int, F subset A} = T(A) = inf{T(G) | G in E_ext,
/// A subset G} checked for every A by exhaustive enumeration; E_int is
/// the intersections of complements, E_ext the unions.
SandwichReport inner_outer_sandwich(const ExactHitting& t, const std::vector<DiscreteSet>& family,
                                    double tolerance = 0.0);

// ---------------------------------------------------------------------
// Constructive sup representation along a closed exhaustion.

struct SupRepresentationReport {
  std::vector<double> sup_values;  // running sup over the exhaustion
  double target = 0.0;             // T(A)
  double final_gap = 0.0;
  bool converged = false;
};

/// sup over closed interval unions F_k increasing to the open core of A
/// of the analytic T(F_k); converges to T(A) for the constructive
/// models, including the infinite-mass Example-1 sets where both sides
/// are 1.
SupRepresentationReport constructive_sup_representation(const CrSetModel& model,
                                                        const IntervalSet& a, int steps,
                                                        double tolerance);

}  // namespace crs
