#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "crs/discrete_set.hpp"
#include "crs/interval_set.hpp"
#include "crs/rng.hpp"
#include "crs/selection.hpp"

namespace crs {

// ---------------------------------------------------------------------
// Finite intensity components. Each one is a finite measure together
// with a sampler for a single point of the normalized measure.

/// scale * lambda(. & window); sampled uniformly over the window.
struct LebesgueComponent {
  IntervalSet window;
  double scale = 1.0;
};

/// lambda(. & (-1/n, 1/n)), the n-th slice of the Example-1 intensity.
struct SliceComponent {
  std::int64_t n = 1;
};

/// Exactly `count` i.i.d. uniform points on the window per realization.
/// A finite cr-set sampler but *not* a Poisson component; it is the
/// negative control for the independent-increments theorem.
struct BinomialComponent {
  IntervalSet window;
  int count = 0;
};

using Component = std::variant<LebesgueComponent, SliceComponent, BinomialComponent>;

double component_mass(const Component& c, const IntervalSet& a);
double component_total(const Component& c);
bool component_is_poisson(const Component& c);

/// Finite intensity on the discrete backend: point masses w_x on
/// {0..m-1}. Finitely additive and monotone by construction; sampling
/// draws a single point from the normalized weights.
class DiscreteWeights {
 public:
  DiscreteWeights(int m, std::vector<double> weights);

  int universe_size() const { return m_; }
  double total() const { return total_; }
  double evaluate(const DiscreteSet& a) const;
  int sample_point(RngStream& rng) const;

 private:
  int m_;
  std::vector<double> weights_;
  double total_;
};

// ---------------------------------------------------------------------
// Models: a constructive cr-set is a union of parts, each part an
// ordered sequence of finite components, optionally continued by the
// Example-1 slice tail, optionally shifted by an independent standard
// normal Z (Example 2), optionally restricted to a window.

struct ModelPart {
  std::vector<Component> components;
  bool example1_tail = false;
  bool shift_std_normal = false;
  std::optional<IntervalSet> restrict_to;

  /// Component k (0-based); slices continue past the explicit list when
  /// the Example-1 tail is attached.
  std::optional<Component> component_at(std::size_t k) const;
};

struct CrSetModel {
  std::vector<ModelPart> parts;
  std::string name = "custom";

  bool has_shift() const;
  bool is_poisson_type() const;  // no shift, no binomial components
};

/// Built-in model specs: "lebesgue01", "lebesgue01-split2",
/// "lebesgue01-split4", "example1", "example2", "binomial5".
CrSetModel preset_model(const std::string& name);

// ---------------------------------------------------------------------
// Realizations.

struct PartRealization {
  std::optional<double> shift;
  /// Final (shifted, restricted) points, one list per sampled component.
  std::vector<std::vector<double>> component_points;
};

struct Realization {
  std::uint64_t seed = 0;
  std::uint64_t replicate = 0;
  int depth = 0;
  std::vector<PartRealization> parts;

  long count_in(const IntervalSet& a) const;
  /// Count using only components k < depth_prefix of every part.
  long count_in_prefix(const IntervalSet& a, int depth_prefix) const;
  bool hits(const IntervalSet& a) const { return count_in(a) > 0; }
  long total_points() const;
};

/// Draw order within the part's stream: the shift first, then each
/// component's count and points; truncations of one replicate are
/// prefix-consistent. Exact binary64 duplicates within a part are
/// redrawn so realizations keep set semantics.
Realization sample_realization(const CrSetModel& model, int depth, std::uint64_t seed,
                               std::uint64_t replicate = 0);

/// Kingman finite-measure construction: K ~ Poisson(total mass), then K
/// i.i.d. points from the normalized measure.
FinitePointSet<double> sample_finite_poisson(const Component& c, std::uint64_t seed,
                                             std::uint64_t replicate = 0);

// ---------------------------------------------------------------------
// Closed-form analytics.

/// mu(A) = sum_n lambda(A & (-1/n, 1/n)); +infinity exactly when a
/// component of A has 0 in its closure, otherwise evaluated via
/// harmonic-number differences.
double example1_intensity(const IntervalSet& a);

/// sum_{n > skip} lambda(A & (-1/n, 1/n)).
double example1_tail_intensity(const IntervalSet& a, std::int64_t skip);

/// P(N_A(tau) = infinity) for the Example-2 process: the shifted
/// intensity is infinite exactly when Z lands in the closure of a
/// component, so this is the standard normal mass of closure(A).
double prob_infinite_count_example2(const IntervalSet& a);

/// Intensity measure of the model when no part is shifted (the shifted
/// intensity has no closed form here). +infinity propagates.
std::optional<double> model_intensity(const CrSetModel& model, const IntervalSet& a);

/// P(model hits A) in closed form: defined for unshifted models
/// (1 - e^{-mu} per Poisson part, 1 - (1-p)^K for binomial parts).
std::optional<double> analytic_hitting(const CrSetModel& model, const IntervalSet& a);

/// Whether T(A) > 0; decidable even for shifted parts.
bool analytic_hit_positive(const CrSetModel& model, const IntervalSet& a);

/// P(N_A = infinity) combined over parts; exact for shifted Example-1
/// tails via prob_infinite_count_example2 on A & restriction.
std::optional<double> analytic_prob_infinite(const CrSetModel& model, const IntervalSet& a);

/// Upper bound sum_{k >= depth} mu_k(A) on the hitting bias of a
/// depth-truncated sampler; nullopt when a shifted part makes the bias
/// formless ("unknown"), +infinity when the tail does not converge.
std::optional<double> truncation_hit_bound(const CrSetModel& model, const IntervalSet& a,
                                           int depth);

}  // namespace crs
