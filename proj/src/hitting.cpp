#include "crs/hitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "crs/parallel.hpp"
#include "crs/sigma.hpp"

namespace crs {

std::vector<HittingEstimate> estimate_hitting(const CrSetModel& model,
                                              const std::vector<IntervalSet>& sets,
                                              std::int64_t n_samples, int depth,
                                              std::uint64_t seed, double z, int threads) {
  if (n_samples < 1) throw std::invalid_argument("need n_samples >= 1");
  std::vector<std::uint8_t> hits(static_cast<std::size_t>(n_samples) * sets.size(), 0);
  parallel_for(n_samples, threads, [&](std::int64_t r) {
    const Realization real = sample_realization(model, depth, seed, static_cast<std::uint64_t>(r));
    for (std::size_t s = 0; s < sets.size(); ++s) {
      hits[static_cast<std::size_t>(r) * sets.size() + s] = real.hits(sets[s]) ? 1 : 0;
    }
  });
  std::vector<HittingEstimate> out;
  out.reserve(sets.size());
  for (std::size_t s = 0; s < sets.size(); ++s) {
    std::int64_t k = 0;
    for (std::int64_t r = 0; r < n_samples; ++r) {
      k += hits[static_cast<std::size_t>(r) * sets.size() + s];
    }
    HittingEstimate e;
    e.set = sets[s];
    e.p_hat = static_cast<double>(k) / static_cast<double>(n_samples);
    e.ci = wilson_interval(k, n_samples, z);
    e.truncation_bias = truncation_hit_bound(model, sets[s], depth);
    e.n_samples = n_samples;
    e.depth = depth;
    out.push_back(std::move(e));
  }
  return out;
}

HittingEstimate estimate_hitting_one(const CrSetModel& model, const IntervalSet& set,
                                     std::int64_t n_samples, int depth, std::uint64_t seed,
                                     double z, int threads) {
  return estimate_hitting(model, {set}, n_samples, depth, seed, z, threads).front();
}

ExactHitting::ExactHitting(int m, std::vector<double> config_probs, std::vector<double> incl)
    : m_(m), config_probs_(std::move(config_probs)), inclusion_(std::move(incl)) {}

ExactHitting ExactHitting::from_distribution(int m, std::vector<double> probs) {
  if (m < 1 || m > sigma::kMaxFullEnumeration) throw std::invalid_argument("m out of range");
  if (probs.size() != (std::size_t{1} << m)) throw std::invalid_argument("need 2^m outcome probabilities");
  double total = 0.0;
  for (double p : probs) {
    if (p < 0.0) throw std::invalid_argument("negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("outcome probabilities must sum to 1");
  return ExactHitting(m, std::move(probs), {});
}

ExactHitting ExactHitting::independent_inclusion(int m, std::vector<double> p) {
  if (m < 1 || m > DiscreteSet::kMaxUniverse) throw std::invalid_argument("m out of range");
  if (p.size() != static_cast<std::size_t>(m)) throw std::invalid_argument("need m inclusion probabilities");
  for (double q : p) {
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("inclusion probability outside [0,1]");
  }
  return ExactHitting(m, {}, std::move(p));
}

double ExactHitting::evaluate(const DiscreteSet& a) const {
  if (a.universe_size() != m_) throw std::invalid_argument("universe mismatch");
  if (!inclusion_.empty()) {
    double avoid = 1.0;
    for (int x = 0; x < m_; ++x) {
      if (a.contains(x)) avoid *= 1.0 - inclusion_[static_cast<std::size_t>(x)];
    }
    return 1.0 - avoid;
  }
  double hit = 0.0;
  for (std::size_t c = 0; c < config_probs_.size(); ++c) {
    if (static_cast<std::uint32_t>(c) & a.mask()) hit += config_probs_[c];
  }
  return hit;
}

ContinuityProbe continuity_from_above_probe(const CrSetModel& model,
                                            const std::vector<IntervalSet>& chain,
                                            const IntervalSet& limit, std::int64_t n_samples,
                                            int depth, std::uint64_t seed, double slack) {
  ContinuityProbe probe;
  const bool analytic = !model.has_shift();
  probe.mode = analytic ? "analytic" : "estimated";
  if (analytic) {
    for (const IntervalSet& a : chain) probe.chain_values.push_back(*analytic_hitting(model, a));
    probe.limit_value = *analytic_hitting(model, limit);
  } else {
    std::vector<IntervalSet> sets = chain;
    sets.push_back(limit);
    const auto est = estimate_hitting(model, sets, n_samples, depth, seed, 2.5758293035489004);
    for (std::size_t i = 0; i + 1 < est.size(); ++i) probe.chain_values.push_back(est[i].p_hat);
    probe.limit_value = est.back().p_hat;
  }
  probe.continuous = std::abs(probe.chain_values.back() - probe.limit_value) <= slack;
  return probe;
}

RenyiReport renyi_verify(const CrSetModel& model, const std::vector<IntervalSet>& sets,
                         std::int64_t n_samples, int depth, std::uint64_t seed, double alpha,
                         bool bonferroni, int threads) {
  if (!model.is_poisson_type() || model.has_shift()) {
    throw std::invalid_argument("renyi verification needs an unshifted Poisson-type model");
  }
  const double level = bonferroni ? alpha / static_cast<double>(sets.size()) : alpha;
  const double z = normal_quantile(1.0 - level / 2.0);
  RenyiReport report;
  report.n_samples = n_samples;
  report.depth = depth;
  report.z = z;
  const auto estimates = estimate_hitting(model, sets, n_samples, depth, seed, z, threads);
  for (const HittingEstimate& e : estimates) {
    RenyiRow row;
    row.set = e.set;
    row.p_hat = e.p_hat;
    row.ci_halfwidth = e.ci.halfwidth;
    row.ci_center = e.ci.center;
    row.analytic = *analytic_hitting(model, e.set);
    row.tail_bound = e.truncation_bias;
    const double bias = e.truncation_bias.value_or(0.0);
    row.pass = std::abs(row.analytic - e.ci.center) <= e.ci.halfwidth + bias;
    report.rows.push_back(row);
    report.all_pass = report.all_pass && row.pass;
  }
  return report;
}

namespace {

/// Closure of seeds under one mask operation, deduplicated.
std::vector<std::uint32_t> mask_closure(std::uint32_t start, const std::vector<std::uint32_t>& ops,
                                        bool intersections, int m) {
  const std::uint32_t full = (std::uint32_t{1} << m) - 1u;
  std::vector<char> seen(std::size_t{1} << m, 0);
  std::vector<std::uint32_t> out;
  seen[start] = 1;
  out.push_back(start);
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::uint32_t op : ops) {
      const std::uint32_t w = intersections ? (out[i] & op) : (out[i] | op);
      if (!seen[w & full]) {
        seen[w & full] = 1;
        out.push_back(w & full);
      }
    }
  }
  return out;
}

}  // namespace

SandwichReport inner_outer_sandwich(const ExactHitting& t, const std::vector<DiscreteSet>& family,
                                    double tolerance) {
  const int m = t.universe_size();
  const std::uint32_t full = (std::uint32_t{1} << m) - 1u;
  SandwichReport report;

  std::vector<std::uint32_t> masks;
  for (const DiscreteSet& e : family) {
    if (e.universe_size() != m) throw std::invalid_argument("universe mismatch");
    masks.push_back(e.mask());
    if (e.mask() == 0) report.empty_in_family = true;
  }
  report.intersection_stable = sigma::intersection_closed(m, family);
  report.generates = sigma::generates_powerset(m, family);

  // E_int: intersections of complements; E_ext: unions of members.
  std::vector<std::uint32_t> complements;
  for (std::uint32_t w : masks) complements.push_back(~w & full);
  std::vector<std::uint32_t> inner;
  for (std::uint32_t c : complements) {
    for (std::uint32_t w : mask_closure(c, complements, true, m)) inner.push_back(w);
  }
  std::sort(inner.begin(), inner.end());
  inner.erase(std::unique(inner.begin(), inner.end()), inner.end());
  std::vector<std::uint32_t> outer;
  for (std::uint32_t e : masks) {
    for (std::uint32_t w : mask_closure(e, masks, false, m)) outer.push_back(w);
  }
  std::sort(outer.begin(), outer.end());
  outer.erase(std::unique(outer.begin(), outer.end()), outer.end());

  // E subset of (E_int)_sigma: every member is a union of inner sets.
  report.family_in_inner_sigma = true;
  for (std::uint32_t e : masks) {
    std::uint32_t covered = 0;
    for (std::uint32_t f : inner) {
      if ((f & e) == f) covered |= f;
    }
    if (covered != e) report.family_in_inner_sigma = false;
  }

  report.all_pass = true;
  for (std::uint32_t a = 0; a <= full; ++a) {
    SandwichRow row;
    row.set = DiscreteSet(m, a);
    row.t_value = t.evaluate(row.set);
    row.sup_inner = 0.0;
    for (std::uint32_t f : inner) {
      if ((f & a) == f) row.sup_inner = std::max(row.sup_inner, t.evaluate(DiscreteSet(m, f)));
    }
    row.inf_outer = std::numeric_limits<double>::infinity();
    for (std::uint32_t g : outer) {
      if ((a & g) == a) row.inf_outer = std::min(row.inf_outer, t.evaluate(DiscreteSet(m, g)));
    }
    row.pass = std::abs(row.sup_inner - row.t_value) <= tolerance &&
               std::abs(row.inf_outer - row.t_value) <= tolerance;
    report.all_pass = report.all_pass && row.pass;
    report.rows.push_back(row);
  }
  return report;
}

SupRepresentationReport constructive_sup_representation(const CrSetModel& model,
                                                        const IntervalSet& a, int steps,
                                                        double tolerance) {
  if (model.has_shift()) {
    throw std::invalid_argument("sup representation needs an analytic hitting function");
  }
  SupRepresentationReport report;
  report.target = *analytic_hitting(model, a);
  double sup = 0.0;
  for (int k = 1; k <= steps; ++k) {
    // Closed sets shrunk inward by a vanishing margin; evaluation uses
    // the half-open proxy, exact for atomless intensities.
    std::vector<ClosedInterval> comps;
    for (const Interval& iv : a.components()) {
      const double margin = std::ldexp(iv.hi - iv.lo, -k - 1);
      const double lo = iv.lo + margin;
      const double hi = iv.hi - margin;
      if (lo <= hi) comps.push_back({lo, hi});
    }
    const ClosedIntervalSet f = ClosedIntervalSet::from_intervals(std::move(comps));
    sup = std::max(sup, *analytic_hitting(model, f.half_open_hull()));
    report.sup_values.push_back(sup);
  }
  report.final_gap = std::abs(report.target - sup);
  report.converged = report.final_gap <= tolerance;
  return report;
}

}  // namespace crs
