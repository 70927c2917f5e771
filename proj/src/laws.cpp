#include "crs/laws.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "crs/parallel.hpp"
#include "crs/separating.hpp"

namespace crs {

namespace {

constexpr std::uint64_t kSecondModelSeedSalt = 0x9E3779B97F4A7C15ull;

int pooled(long count, int cap) { return static_cast<int>(std::min<long>(count, cap)); }

}  // namespace

std::vector<CountVector> sample_count_vectors(const CrSetModel& model, const FidiSpec& spec,
                                              std::int64_t n_samples, int depth,
                                              std::uint64_t seed, int threads) {
  if (spec.sets.empty() || spec.cap < 1) throw std::invalid_argument("bad fidi spec");
  std::vector<CountVector> out(static_cast<std::size_t>(n_samples));
  parallel_for(n_samples, threads, [&](std::int64_t r) {
    const Realization real = sample_realization(model, depth, seed, static_cast<std::uint64_t>(r));
    CountVector v(spec.sets.size());
    for (std::size_t s = 0; s < spec.sets.size(); ++s) {
      v[s] = pooled(real.count_in(spec.sets[s]), spec.cap);
    }
    out[static_cast<std::size_t>(r)] = std::move(v);
  });
  return out;
}

FidiReport fidi_compare(const std::vector<CountVector>& sample1,
                        const std::vector<CountVector>& sample2, double alpha) {
  std::map<std::vector<int>, std::pair<std::int64_t, std::int64_t>> cells;
  for (const CountVector& v : sample1) ++cells[v].first;
  for (const CountVector& v : sample2) ++cells[v].second;
  FidiReport report;
  report.alpha = alpha;
  report.chi2 = chi2_two_sample(cells, static_cast<std::int64_t>(sample1.size()),
                                static_cast<std::int64_t>(sample2.size()));
  report.pass = report.chi2.p_value >= alpha;
  return report;
}

RingCompareReport hitting_compare_on_ring(const CrSetModel& model1, const CrSetModel& model2,
                                          const std::vector<IntervalSet>& ring_sets,
                                          std::int64_t n_samples, int depth, std::uint64_t seed,
                                          double alpha, int threads) {
  RingCompareReport report;
  const double level = alpha / static_cast<double>(std::max<std::size_t>(1, ring_sets.size()));
  report.z = normal_quantile(1.0 - level / 2.0);
  const auto est1 = estimate_hitting(model1, ring_sets, n_samples, depth, seed, report.z, threads);
  const auto est2 = estimate_hitting(model2, ring_sets, n_samples, depth,
                                     seed ^ kSecondModelSeedSalt, report.z, threads);
  for (std::size_t s = 0; s < ring_sets.size(); ++s) {
    PairedHitRow row;
    row.set = ring_sets[s];
    row.p1 = est1[s].p_hat;
    row.center1 = est1[s].ci.center;
    row.halfwidth1 = est1[s].ci.halfwidth;
    row.bias1 = est1[s].truncation_bias.value_or(0.0);
    row.p2 = est2[s].p_hat;
    row.center2 = est2[s].ci.center;
    row.halfwidth2 = est2[s].ci.halfwidth;
    row.bias2 = est2[s].truncation_bias.value_or(0.0);
    row.pass = std::abs(row.center1 - row.center2) <=
               row.halfwidth1 + row.halfwidth2 + row.bias1 + row.bias2;
    report.all_pass = report.all_pass && row.pass;
    report.rows.push_back(row);
  }
  return report;
}

ClosedCompareReport closed_set_compare(const CrSetModel& model1, const CrSetModel& model2,
                                       const std::vector<ClosedIntervalSet>& closed_sets,
                                       const std::vector<std::vector<IntervalSet>>& gdelta_chains,
                                       const std::vector<IntervalSet>& null_probes,
                                       const FidiSpec& fidi_spec, std::int64_t n_samples,
                                       int depth, std::uint64_t seed, double alpha,
                                       int threads) {
  ClosedCompareReport report;
  std::vector<IntervalSet> closed_hulls;
  for (const ClosedIntervalSet& f : closed_sets) closed_hulls.push_back(f.half_open_hull());
  report.closed_sets = hitting_compare_on_ring(model1, model2, closed_hulls, n_samples, depth,
                                               seed, alpha, threads);
  report.all_pass = report.closed_sets.all_pass;

  if (!null_probes.empty()) {
    const double z = report.closed_sets.z;
    const auto est1 = estimate_hitting(model1, null_probes, n_samples, depth, seed + 1, z, threads);
    const auto est2 = estimate_hitting(model2, null_probes, n_samples, depth,
                                       (seed + 1) ^ kSecondModelSeedSalt, z, threads);
    for (std::size_t s = 0; s < null_probes.size(); ++s) {
      NullTransferRow row;
      row.set = null_probes[s];
      row.p1_hat = est1[s].p_hat;
      row.p2_hat = est2[s].p_hat;
      row.applicable = est2[s].p_hat == 0.0;
      row.pass = !row.applicable || est1[s].p_hat == 0.0;
      report.all_pass = report.all_pass && row.pass;
      report.null_transfer.push_back(row);
    }
  }

  for (std::size_t c = 0; c < gdelta_chains.size(); ++c) {
    report.chains.push_back(hitting_compare_on_ring(model1, model2, gdelta_chains[c], n_samples,
                                                    depth, seed + 2 + c, alpha, threads));
    report.all_pass = report.all_pass && report.chains.back().all_pass;
  }

  const auto counts1 = sample_count_vectors(model1, fidi_spec, n_samples, depth, seed + 100, threads);
  const auto counts2 = sample_count_vectors(model2, fidi_spec, n_samples, depth,
                                            (seed + 100) ^ kSecondModelSeedSalt, threads);
  report.fidi = fidi_compare(counts1, counts2, alpha);
  report.all_pass = report.all_pass && report.fidi.pass;
  return report;
}

IntensityRecovery recover_intensity(const HittingEstimate& estimate) {
  IntensityRecovery r;
  r.set = estimate.set;
  if (estimate.p_hat >= 1.0) {
    r.infinite = true;
    r.mu_hat = std::numeric_limits<double>::infinity();
    r.error = std::numeric_limits<double>::infinity();
    return r;
  }
  r.mu_hat = -std::log1p(-estimate.p_hat);
  const double spread = estimate.ci.halfwidth + estimate.truncation_bias.value_or(0.0);
  const double floor_avoid = 1.0 - std::min(0.999999999, estimate.p_hat + spread);
  r.error = spread / floor_avoid;
  return r;
}

AdditivityReport recover_additivity(const CrSetModel& model,
                                    const std::vector<std::pair<IntervalSet, IntervalSet>>& pairs,
                                    std::int64_t n_samples, int depth, std::uint64_t seed,
                                    double alpha, int threads) {
  AdditivityReport report;
  const double level = alpha / (3.0 * static_cast<double>(std::max<std::size_t>(1, pairs.size())));
  report.z = normal_quantile(1.0 - level / 2.0);
  std::vector<IntervalSet> sets;
  for (const auto& [a, b] : pairs) {
    if (!disjoint(a, b)) throw std::invalid_argument("additivity pairs must be disjoint");
    sets.push_back(a);
    sets.push_back(b);
    sets.push_back(unite(a, b));
  }
  const auto est = estimate_hitting(model, sets, n_samples, depth, seed, report.z, threads);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const IntensityRecovery ra = recover_intensity(est[3 * i]);
    const IntensityRecovery rb = recover_intensity(est[3 * i + 1]);
    const IntensityRecovery ru = recover_intensity(est[3 * i + 2]);
    AdditivityRow row;
    row.a = pairs[i].first;
    row.b = pairs[i].second;
    row.mu_a = ra.mu_hat;
    row.mu_b = rb.mu_hat;
    row.mu_union = ru.mu_hat;
    row.tolerance = ra.error + rb.error + ru.error;
    row.pass = std::abs(row.mu_a + row.mu_b - row.mu_union) <= row.tolerance;
    report.all_pass = report.all_pass && row.pass;
    report.rows.push_back(row);
  }
  return report;
}

IncrementsReport independent_increments_poisson_check(const CrSetModel& model,
                                                      const std::vector<IntervalSet>& disjoint_sets,
                                                      std::int64_t n_samples, int depth,
                                                      std::uint64_t seed, double alpha,
                                                      int threads) {
  const std::size_t s = disjoint_sets.size();
  if (s < 2) throw std::invalid_argument("need at least two disjoint sets");
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = i + 1; j < s; ++j) {
      if (!disjoint(disjoint_sets[i], disjoint_sets[j])) {
        throw std::invalid_argument("sets must be pairwise disjoint");
      }
    }
  }
  constexpr int kMaxCount = 40;
  std::vector<long> counts(static_cast<std::size_t>(n_samples) * s, 0);
  parallel_for(n_samples, threads, [&](std::int64_t r) {
    const Realization real = sample_realization(model, depth, seed, static_cast<std::uint64_t>(r));
    for (std::size_t k = 0; k < s; ++k) {
      counts[static_cast<std::size_t>(r) * s + k] =
          std::min<long>(real.count_in(disjoint_sets[k]), kMaxCount);
    }
  });

  IncrementsReport report;
  const double k_tests = static_cast<double>(s * (s - 1) / 2 + s);
  report.alpha_each = alpha / k_tests;

  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = i + 1; j < s; ++j) {
      std::vector<std::vector<std::int64_t>> table(kMaxCount + 1,
                                                   std::vector<std::int64_t>(kMaxCount + 1, 0));
      for (std::int64_t r = 0; r < n_samples; ++r) {
        ++table[counts[static_cast<std::size_t>(r) * s + i]]
               [counts[static_cast<std::size_t>(r) * s + j]];
      }
      report.independence.push_back(chi2_independence(table));
      report.independence_pass =
          report.independence_pass && report.independence.back().p_value >= report.alpha_each;
    }
  }

  for (std::size_t k = 0; k < s; ++k) {
    std::int64_t hitters = 0;
    int max_count = 0;
    for (std::int64_t r = 0; r < n_samples; ++r) {
      const long c = counts[static_cast<std::size_t>(r) * s + k];
      hitters += c > 0;
      max_count = std::max<int>(max_count, static_cast<int>(c));
    }
    const double p_hit = static_cast<double>(hitters) / static_cast<double>(n_samples);
    const double mu = p_hit >= 1.0 ? std::numeric_limits<double>::infinity() : -std::log1p(-p_hit);
    report.mu_hats.push_back(mu);
    std::vector<std::int64_t> observed(static_cast<std::size_t>(max_count) + 2, 0);
    for (std::int64_t r = 0; r < n_samples; ++r) {
      ++observed[counts[static_cast<std::size_t>(r) * s + k]];
    }
    std::vector<double> probs(observed.size(), 0.0);
    double cum = 0.0;
    for (std::size_t c = 0; c + 1 < probs.size(); ++c) {
      probs[c] = poisson_pmf(static_cast<int>(c), mu);
      cum += probs[c];
    }
    probs.back() = std::max(0.0, 1.0 - cum);
    report.gof.push_back(chi2_gof(observed, probs, 1));
    report.gof_pass = report.gof_pass && report.gof.back().p_value >= report.alpha_each;
  }
  report.pass = report.independence_pass && report.gof_pass;
  return report;
}

int detector_threshold(int depth) {
  return std::max(3, static_cast<int>(std::lround(0.6 * std::log(static_cast<double>(depth)))));
}

DecompositionReport decompose(const CrSetModel& model, const std::vector<IntervalSet>& cells,
                              const DecomposeOptions& options) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (std::size_t j = i + 1; j < cells.size(); ++j) {
      if (!disjoint(cells[i], cells[j])) throw std::invalid_argument("cells must be disjoint");
    }
  }
  DecompositionReport report;
  report.analytic = options.use_analytic;
  report.detector_depth = options.depth;
  report.detector_threshold = detector_threshold(options.depth);
  report.n_samples = options.use_analytic ? 0 : options.n_samples;

  std::vector<std::int64_t> hit_counts(cells.size(), 0), exceed_counts(cells.size(), 0);
  if (!options.use_analytic) {
    std::vector<std::int64_t> hits(static_cast<std::size_t>(options.n_samples) * cells.size(), 0);
    std::vector<std::int64_t> exceeds(hits.size(), 0);
    parallel_for(options.n_samples, options.threads, [&](std::int64_t r) {
      const Realization real =
          sample_realization(model, options.depth, options.seed, static_cast<std::uint64_t>(r));
      for (std::size_t c = 0; c < cells.size(); ++c) {
        const long n = real.count_in(cells[c]);
        hits[static_cast<std::size_t>(r) * cells.size() + c] = n > 0;
        exceeds[static_cast<std::size_t>(r) * cells.size() + c] =
            n >= report.detector_threshold;
      }
    });
    for (std::int64_t r = 0; r < options.n_samples; ++r) {
      for (std::size_t c = 0; c < cells.size(); ++c) {
        hit_counts[c] += hits[static_cast<std::size_t>(r) * cells.size() + c];
        exceed_counts[c] += exceeds[static_cast<std::size_t>(r) * cells.size() + c];
      }
    }
  }

  std::vector<IntervalSet> f_cells, residual_cells;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    CellReport cr;
    cr.cell = cells[c];
    if (options.use_analytic) {
      cr.hit_value = analytic_hit_positive(model, cells[c]) ? 1.0 : 0.0;
      if (const auto h = analytic_hitting(model, cells[c])) cr.hit_value = *h;
      cr.p_infinite = *analytic_prob_infinite(model, cells[c]);
      if (cr.hit_value == 0.0 && !analytic_hit_positive(model, cells[c])) {
        cr.cls = CellClass::kNull;
      } else if (cr.p_infinite > 0.0) {
        cr.cls = CellClass::kInfiniteMass;
      } else {
        cr.cls = CellClass::kSigmaFinite;
      }
    } else {
      cr.hit_value = static_cast<double>(hit_counts[c]) / static_cast<double>(options.n_samples);
      cr.p_infinite =
          static_cast<double>(exceed_counts[c]) / static_cast<double>(options.n_samples);
      if (hit_counts[c] == 0) {
        cr.cls = CellClass::kNull;
      } else if (exceed_counts[c] > 0) {
        cr.cls = CellClass::kInfiniteMass;
      } else {
        cr.cls = CellClass::kSigmaFinite;
      }
    }
    if (cr.cls == CellClass::kInfiniteMass) {
      residual_cells.push_back(cells[c]);
    } else {
      f_cells.push_back(cells[c]);
    }
    report.cells.push_back(std::move(cr));
  }
  IntervalSet f, residual;
  for (const IntervalSet& c : f_cells) f = unite(f, c);
  for (const IntervalSet& c : residual_cells) residual = unite(residual, c);
  report.sigma_finite_set = f;
  report.residual = residual;
  return report;
}

namespace {

void require_single_window(const IntervalSet& window) {
  if (window.component_count() != 1) {
    throw std::invalid_argument("window must be a single interval");
  }
}

}  // namespace

std::vector<IntervalSet> dyadic_ring_sets(const IntervalSet& window, int count) {
  const DyadicFamily fam = dyadic_family(window);
  std::vector<IntervalSet> out;
  for (int n = 1; n <= count; ++n) out.push_back(fam.set(static_cast<std::uint64_t>(n)));
  return out;
}

std::vector<IntervalSet> grid_cells(const IntervalSet& window, int count) {
  require_single_window(window);
  const Interval iv = window.components().front();
  std::vector<IntervalSet> out;
  for (int i = 0; i < count; ++i) {
    const double lo = iv.lo + (iv.hi - iv.lo) * i / count;
    const double hi = i + 1 == count ? iv.hi : iv.lo + (iv.hi - iv.lo) * (i + 1) / count;
    out.push_back(IntervalSet::interval(lo, hi));
  }
  return out;
}

std::vector<std::pair<IntervalSet, IntervalSet>> disjoint_dyadic_pairs(const IntervalSet& window,
                                                                       int count) {
  require_single_window(window);
  int depth = 1;
  while ((1 << depth) < 2 * count) ++depth;
  const DyadicFamily fam = dyadic_family(window);
  std::vector<std::pair<IntervalSet, IntervalSet>> out;
  for (int j = 0; j < count; ++j) {
    const std::uint64_t base = (std::uint64_t{1} << depth) - 1;
    out.emplace_back(fam.set(base + 2 * j), fam.set(base + 2 * j + 1));
  }
  return out;
}

}  // namespace crs
