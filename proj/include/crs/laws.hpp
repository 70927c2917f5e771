#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "crs/hitting.hpp"

namespace crs {

// ---------------------------------------------------------------------
// Finite-dimensional distribution comparison.

struct FidiSpec {
  std::vector<IntervalSet> sets;
  int cap = 4;  // counts >= cap pooled into one category
};

using CountVector = std::vector<int>;

std::vector<CountVector> sample_count_vectors(const CrSetModel& model, const FidiSpec& spec,
                                              std::int64_t n_samples, int depth,
                                              std::uint64_t seed, int threads = 1);

struct FidiReport {
  Chi2Result chi2;
  double alpha = 0.01;
  bool pass = false;
};

/// Two-sample chi-square on the joint pooled count vectors; symmetric in
/// its arguments, p = 1 on identical samples.
FidiReport fidi_compare(const std::vector<CountVector>& sample1,
                        const std::vector<CountVector>& sample2, double alpha);

// ---------------------------------------------------------------------
// Hitting agreement on a finite set family.

struct PairedHitRow {
  IntervalSet set;
  double p1 = 0.0, center1 = 0.0, halfwidth1 = 0.0;
  double p2 = 0.0, center2 = 0.0, halfwidth2 = 0.0;
  double bias1 = 0.0, bias2 = 0.0;
  bool pass = false;
};

struct RingCompareReport {
  std::vector<PairedHitRow> rows;
  bool all_pass = true;
  double z = 0.0;
};

/// Per-set equality of hitting estimates within the combined intervals
/// (Bonferroni over sets). The second model draws from an independent
/// seed derived from `seed`.
RingCompareReport hitting_compare_on_ring(const CrSetModel& model1, const CrSetModel& model2,
                                          const std::vector<IntervalSet>& ring_sets,
                                          std::int64_t n_samples, int depth, std::uint64_t seed,
                                          double alpha, int threads = 1);

// ---------------------------------------------------------------------
// Closed-set uniqueness harness.

struct NullTransferRow {
  IntervalSet set;
  double p1_hat = 0.0, p2_hat = 0.0;
  bool applicable = false;  // model2's estimate was exactly null
  bool pass = true;
};

struct ClosedCompareReport {
  RingCompareReport closed_sets;              // agreement on closed sets
  std::vector<NullTransferRow> null_transfer; // null sets of model2 transfer to model1
  std::vector<RingCompareReport> chains;      // agreement along G-delta chains
  FidiReport fidi;                            // implied law agreement
  bool all_pass = false;
};

ClosedCompareReport closed_set_compare(const CrSetModel& model1, const CrSetModel& model2,
                                       const std::vector<ClosedIntervalSet>& closed_sets,
                                       const std::vector<std::vector<IntervalSet>>& gdelta_chains,
                                       const std::vector<IntervalSet>& null_probes,
                                       const FidiSpec& fidi_spec, std::int64_t n_samples,
                                       int depth, std::uint64_t seed, double alpha,
                                       int threads = 1);

// ---------------------------------------------------------------------
// Intensity recovery from the hitting function.

struct IntensityRecovery {
  IntervalSet set;
  double mu_hat = 0.0;
  bool infinite = false;
  double error = 0.0;  // first-order propagated from the estimate interval
};

IntensityRecovery recover_intensity(const HittingEstimate& estimate);

struct AdditivityRow {
  IntervalSet a, b;
  double mu_a = 0.0, mu_b = 0.0, mu_union = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct AdditivityReport {
  std::vector<AdditivityRow> rows;
  bool all_pass = true;
  double z = 0.0;
};

/// mu_hat = -log(1 - T) additive on disjoint pairs, within error
/// propagated from the estimate intervals (Bonferroni over the three
/// estimates of every pair).
AdditivityReport recover_additivity(const CrSetModel& model,
                                    const std::vector<std::pair<IntervalSet, IntervalSet>>& pairs,
                                    std::int64_t n_samples, int depth, std::uint64_t seed,
                                    double alpha, int threads = 1);

// ---------------------------------------------------------------------
// Independent increments imply Poisson.

struct IncrementsReport {
  std::vector<Chi2Result> independence;  // one per disjoint pair
  std::vector<Chi2Result> gof;           // one per set, Poisson(-log(1 - p_hat))
  std::vector<double> mu_hats;
  double alpha_each = 0.0;
  bool independence_pass = true;
  bool gof_pass = true;
  bool pass = false;
};

IncrementsReport independent_increments_poisson_check(const CrSetModel& model,
                                                      const std::vector<IntervalSet>& disjoint_sets,
                                                      std::int64_t n_samples, int depth,
                                                      std::uint64_t seed, double alpha,
                                                      int threads = 1);

// ---------------------------------------------------------------------
// Sigma-finite decomposition over a finite cell pool.

enum class CellClass { kNull, kSigmaFinite, kInfiniteMass };

struct CellReport {
  IntervalSet cell;
  CellClass cls = CellClass::kNull;
  double hit_value = 0.0;    // T(cell), analytic or estimated
  double p_infinite = 0.0;   // P(N_cell = infinity), analytic or detector fraction
};

struct DecompositionReport {
  std::vector<CellReport> cells;
  IntervalSet sigma_finite_set;  // F: sigma-finite cells plus null cells
  IntervalSet residual;          // cells satisfying the infinite-mass side
  bool analytic = true;
  int detector_depth = 0;
  int detector_threshold = 0;
  std::int64_t n_samples = 0;
};

struct DecomposeOptions {
  bool use_analytic = true;
  std::int64_t n_samples = 2000;
  int depth = 500;
  std::uint64_t seed = 1;
  int threads = 1;
};

/// Greedy decomposition over a finite disjoint cell pool: F collects the
/// cells with positive hitting and no infinite-mass risk, together with
/// the null cells; every residual cell satisfies the dichotomy by its
/// classifier. The count >= c_N detector stands in when the model has no
/// analytic classifier.
DecompositionReport decompose(const CrSetModel& model, const std::vector<IntervalSet>& cells,
                              const DecomposeOptions& options);

/// Documented detector threshold c_N = max(3, round(0.6 ln N)).
int detector_threshold(int depth);

// ---------------------------------------------------------------------
// Set-family helpers shared by the CLI and the acceptance suite.

/// First `count` sets of the dyadic enumeration of the window.
std::vector<IntervalSet> dyadic_ring_sets(const IntervalSet& window, int count);

/// `count` equal consecutive cells partitioning the window.
std::vector<IntervalSet> grid_cells(const IntervalSet& window, int count);

/// Disjoint neighbour pairs of dyadic cells.
std::vector<std::pair<IntervalSet, IntervalSet>> disjoint_dyadic_pairs(const IntervalSet& window,
                                                                       int count);

}  // namespace crs
