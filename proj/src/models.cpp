#include "crs/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "crs/stats.hpp"

namespace crs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

IntervalSet slice_window(std::int64_t n) {
  const double h = 1.0 / static_cast<double>(n);
  return IntervalSet::interval(-h, h);
}

double uniform_point_on(const IntervalSet& w, RngStream& rng) {
  const double total = w.lebesgue();
  double v = rng.next_double() * total;
  for (const Interval& comp : w.components()) {
    if (v < comp.length()) return comp.lo + v;
    v -= comp.length();
  }
  // v rounded up to total: stay inside the last component.
  const Interval& last = w.components().back();
  return std::max(last.lo, last.hi - std::ldexp(total, -53));
}

/// sum_{skip < n <= n_hi} (min(b, 1/n) - a)^+ for one positive component
/// [a, b), 0 < a < b, via harmonic differences.
double positive_slice_sum(double a, double b, std::int64_t skip) {
  // Full terms (1/n >= b) up to n_b, partial (a < 1/n < b) up to n_a.
  const std::int64_t n_b = b > 1.0 ? 0 : static_cast<std::int64_t>(std::floor(1.0 / b));
  const double inv_a = 1.0 / a;
  std::int64_t n_a;
  if (inv_a >= 9.0e18) {
    n_a = std::numeric_limits<std::int64_t>::max() / 2;
  } else {
    n_a = static_cast<std::int64_t>(std::ceil(inv_a)) - 1;
  }
  double sum = 0.0;
  const std::int64_t full_hi = std::max(n_b, skip);
  if (n_b > skip) sum += static_cast<double>(n_b - skip) * (b - a);
  if (n_a > full_hi) {
    sum += harmonic(static_cast<std::uint64_t>(n_a)) - harmonic(static_cast<std::uint64_t>(full_hi));
    sum -= a * static_cast<double>(n_a - full_hi);
  }
  return sum;
}

double slice_sum(const IntervalSet& a, std::int64_t skip) {
  double sum = 0.0;
  for (const Interval& comp : a.components()) {
    if (comp.lo <= 0.0 && 0.0 <= comp.hi) return kInf;
    if (comp.lo > 0.0) {
      sum += positive_slice_sum(comp.lo, comp.hi, skip);
    } else {
      sum += positive_slice_sum(-comp.hi, -comp.lo, skip);  // reflect; endpoint has measure 0
    }
  }
  return sum;
}

}  // namespace

double component_mass(const Component& c, const IntervalSet& a) {
  return std::visit(
      [&](const auto& comp) -> double {
        using T = std::decay_t<decltype(comp)>;
        if constexpr (std::is_same_v<T, LebesgueComponent>) {
          return comp.scale * intersect(a, comp.window).lebesgue();
        } else if constexpr (std::is_same_v<T, SliceComponent>) {
          return intersect(a, slice_window(comp.n)).lebesgue();
        } else {
          const double w = comp.window.lebesgue();
          if (w == 0.0) return 0.0;
          return static_cast<double>(comp.count) * intersect(a, comp.window).lebesgue() / w;
        }
      },
      c);
}

double component_total(const Component& c) {
  return std::visit(
      [&](const auto& comp) -> double {
        using T = std::decay_t<decltype(comp)>;
        if constexpr (std::is_same_v<T, LebesgueComponent>) {
          return comp.scale * comp.window.lebesgue();
        } else if constexpr (std::is_same_v<T, SliceComponent>) {
          return 2.0 / static_cast<double>(comp.n);
        } else {
          return static_cast<double>(comp.count);
        }
      },
      c);
}

bool component_is_poisson(const Component& c) {
  return !std::holds_alternative<BinomialComponent>(c);
}

DiscreteWeights::DiscreteWeights(int m, std::vector<double> weights)
    : m_(m), weights_(std::move(weights)), total_(0.0) {
  if (m < 1 || m > DiscreteSet::kMaxUniverse) throw std::invalid_argument("m out of range");
  if (weights_.size() != static_cast<std::size_t>(m)) {
    throw std::invalid_argument("need one weight per point");
  }
  for (double w : weights_) {
    if (!(w >= 0.0)) throw std::invalid_argument("weights must be nonnegative");
    total_ += w;
  }
}

double DiscreteWeights::evaluate(const DiscreteSet& a) const {
  if (a.universe_size() != m_) throw std::invalid_argument("universe mismatch");
  double mass = 0.0;
  for (int x = 0; x < m_; ++x) {
    if (a.contains(x)) mass += weights_[static_cast<std::size_t>(x)];
  }
  return mass;
}

int DiscreteWeights::sample_point(RngStream& rng) const {
  if (total_ <= 0.0) throw std::logic_error("cannot sample from a null measure");
  double v = rng.next_double() * total_;
  for (int x = 0; x < m_; ++x) {
    if (v < weights_[static_cast<std::size_t>(x)]) return x;
    v -= weights_[static_cast<std::size_t>(x)];
  }
  return m_ - 1;  // u rounded up to total
}

std::optional<Component> ModelPart::component_at(std::size_t k) const {
  if (k < components.size()) return components[k];
  if (example1_tail) {
    return Component{SliceComponent{static_cast<std::int64_t>(k - components.size()) + 1}};
  }
  return std::nullopt;
}

bool CrSetModel::has_shift() const {
  return std::any_of(parts.begin(), parts.end(),
                     [](const ModelPart& p) { return p.shift_std_normal; });
}

bool CrSetModel::is_poisson_type() const {
  for (const ModelPart& p : parts) {
    if (p.shift_std_normal) return false;
    for (const Component& c : p.components) {
      if (!component_is_poisson(c)) return false;
    }
  }
  return true;
}

CrSetModel preset_model(const std::string& name) {
  CrSetModel m;
  m.name = name;
  ModelPart part;
  if (name == "lebesgue01") {
    part.components.push_back(LebesgueComponent{IntervalSet::interval(0.0, 1.0)});
  } else if (name == "lebesgue01-split2") {
    part.components.push_back(LebesgueComponent{IntervalSet::interval(0.0, 0.5)});
    part.components.push_back(LebesgueComponent{IntervalSet::interval(0.5, 1.0)});
  } else if (name == "lebesgue01-split4") {
    for (int i = 0; i < 4; ++i) {
      part.components.push_back(
          LebesgueComponent{IntervalSet::interval(0.25 * i, 0.25 * (i + 1))});
    }
  } else if (name == "example1") {
    part.example1_tail = true;
  } else if (name == "example2") {
    part.example1_tail = true;
    part.shift_std_normal = true;
  } else if (name == "binomial5") {
    part.components.push_back(BinomialComponent{IntervalSet::interval(0.0, 1.0), 5});
  } else {
    throw std::invalid_argument("unknown model preset: " + name);
  }
  m.parts.push_back(std::move(part));
  return m;
}

long Realization::count_in(const IntervalSet& a) const {
  return count_in_prefix(a, depth);
}

long Realization::count_in_prefix(const IntervalSet& a, int depth_prefix) const {
  long n = 0;
  for (const PartRealization& part : parts) {
    const std::size_t kmax =
        std::min<std::size_t>(part.component_points.size(), static_cast<std::size_t>(depth_prefix));
    for (std::size_t k = 0; k < kmax; ++k) {
      for (double x : part.component_points[k]) {
        if (a.contains(x)) ++n;
      }
    }
  }
  return n;
}

long Realization::total_points() const {
  long n = 0;
  for (const PartRealization& part : parts) {
    for (const auto& pts : part.component_points) n += static_cast<long>(pts.size());
  }
  return n;
}

namespace {

void sample_part(const ModelPart& part, int depth, std::uint64_t seed, std::uint64_t replicate,
                 std::uint32_t part_index, PartRealization& out) {
  RngStream rng(seed, substream_id(replicate, part_index));
  double shift = 0.0;
  if (part.shift_std_normal) {
    shift = rng.next_normal();
    out.shift = shift;
  }
  std::vector<double> seen;
  out.component_points.resize(static_cast<std::size_t>(depth));
  for (int k = 0; k < depth; ++k) {
    const auto comp = part.component_at(static_cast<std::size_t>(k));
    if (!comp) continue;
    int count;
    IntervalSet window;
    if (const auto* binom = std::get_if<BinomialComponent>(&*comp)) {
      count = binom->count;
      window = binom->window;
    } else {
      count = rng.next_poisson(component_total(*comp));
      window = std::holds_alternative<LebesgueComponent>(*comp)
                   ? std::get<LebesgueComponent>(*comp).window
                   : slice_window(std::get<SliceComponent>(*comp).n);
    }
    auto& pts = out.component_points[static_cast<std::size_t>(k)];
    for (int i = 0; i < count; ++i) {
      double x = 0.0;
      for (int attempt = 0; attempt < 100; ++attempt) {
        x = uniform_point_on(window, rng) + shift;
        if (std::find(seen.begin(), seen.end(), x) == seen.end()) break;
      }
      seen.push_back(x);
      if (part.restrict_to && !part.restrict_to->contains(x)) continue;
      pts.push_back(x);
    }
  }
}

}  // namespace

Realization sample_realization(const CrSetModel& model, int depth, std::uint64_t seed,
                               std::uint64_t replicate) {
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
  Realization r;
  r.seed = seed;
  r.replicate = replicate;
  r.depth = depth;
  r.parts.resize(model.parts.size());
  for (std::size_t p = 0; p < model.parts.size(); ++p) {
    sample_part(model.parts[p], depth, seed, replicate, static_cast<std::uint32_t>(p),
                r.parts[p]);
  }
  return r;
}

FinitePointSet<double> sample_finite_poisson(const Component& c, std::uint64_t seed,
                                             std::uint64_t replicate) {
  CrSetModel m;
  m.parts.emplace_back();
  m.parts.back().components.push_back(c);
  const Realization r = sample_realization(m, 1, seed, replicate);
  return FinitePointSet<double>(r.parts.front().component_points.front());
}

double example1_intensity(const IntervalSet& a) { return slice_sum(a, 0); }

double example1_tail_intensity(const IntervalSet& a, std::int64_t skip) {
  return slice_sum(a, skip);
}

double prob_infinite_count_example2(const IntervalSet& a) {
  double p = 0.0;
  for (const Interval& comp : a.components()) {
    p += normal_cdf(comp.hi) - normal_cdf(comp.lo);
  }
  return p;
}

namespace {

IntervalSet part_effective_set(const ModelPart& part, const IntervalSet& a) {
  return part.restrict_to ? intersect(a, *part.restrict_to) : a;
}

/// Intensity of one unshifted part on A (restriction already applied).
double part_intensity(const ModelPart& part, const IntervalSet& eff) {
  double mu = 0.0;
  for (const Component& c : part.components) mu += component_mass(c, eff);
  if (part.example1_tail) mu += example1_intensity(eff);
  return mu;
}

}  // namespace

std::optional<double> model_intensity(const CrSetModel& model, const IntervalSet& a) {
  double mu = 0.0;
  for (const ModelPart& part : model.parts) {
    if (part.shift_std_normal) return std::nullopt;
    mu += part_intensity(part, part_effective_set(part, a));
  }
  return mu;
}

std::optional<double> analytic_hitting(const CrSetModel& model, const IntervalSet& a) {
  double avoid = 1.0;
  for (const ModelPart& part : model.parts) {
    if (part.shift_std_normal) return std::nullopt;
    const IntervalSet eff = part_effective_set(part, a);
    for (const Component& c : part.components) {
      if (const auto* binom = std::get_if<BinomialComponent>(&c)) {
        const double w = binom->window.lebesgue();
        const double frac = w == 0.0 ? 0.0 : intersect(eff, binom->window).lebesgue() / w;
        avoid *= std::pow(1.0 - frac, binom->count);
      } else {
        avoid *= std::exp(-component_mass(c, eff));
      }
    }
    if (part.example1_tail) {
      const double mu = example1_intensity(eff);
      avoid *= std::isinf(mu) ? 0.0 : std::exp(-mu);
    }
  }
  return 1.0 - avoid;
}

bool analytic_hit_positive(const CrSetModel& model, const IntervalSet& a) {
  for (const ModelPart& part : model.parts) {
    const IntervalSet eff = part_effective_set(part, a);
    if (eff.empty()) continue;
    if (part.shift_std_normal) {
      // The shift density is positive everywhere, so any set the
      // unshifted intensity could ever see is hit with positive
      // probability once it has positive length.
      if (part.example1_tail) return true;
      double total = 0.0;
      for (const Component& c : part.components) total += component_total(c);
      if (total > 0.0) return true;
    } else {
      if (part_intensity(part, eff) > 0.0) return true;
    }
  }
  return false;
}

std::optional<double> analytic_prob_infinite(const CrSetModel& model, const IntervalSet& a) {
  double none = 1.0;
  for (const ModelPart& part : model.parts) {
    const IntervalSet eff = part_effective_set(part, a);
    double p = 0.0;
    if (part.example1_tail) {
      if (part.shift_std_normal) {
        p = prob_infinite_count_example2(eff);
      } else {
        p = std::isinf(example1_intensity(eff)) ? 1.0 : 0.0;
      }
    }
    none *= 1.0 - p;
  }
  return 1.0 - none;
}

std::optional<double> truncation_hit_bound(const CrSetModel& model, const IntervalSet& a,
                                           int depth) {
  double bound = 0.0;
  for (const ModelPart& part : model.parts) {
    if (part.shift_std_normal) return std::nullopt;  // bias unknown
    const IntervalSet eff = part_effective_set(part, a);
    for (std::size_t k = static_cast<std::size_t>(depth); k < part.components.size(); ++k) {
      bound += component_mass(part.components[k], eff);
    }
    if (part.example1_tail) {
      const std::int64_t sampled_slices =
          std::max<std::int64_t>(0, depth - static_cast<std::int64_t>(part.components.size()));
      bound += example1_tail_intensity(eff, sampled_slices);
    }
  }
  return bound;
}

}  // namespace crs
