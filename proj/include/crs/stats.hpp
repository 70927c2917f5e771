#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace crs {

/// Wilson score interval for a binomial proportion. Not centered at the
/// raw frequency; callers test |value - center| <= halfwidth.
struct WilsonInterval {
  double center = 0.0;
  double halfwidth = 0.0;

  double low() const { return center - halfwidth; }
  double high() const { return center + halfwidth; }
  bool covers(double p) const { return low() <= p && p <= high(); }
};

WilsonInterval wilson_interval(std::int64_t successes, std::int64_t n, double z);

double normal_cdf(double x);
double normal_quantile(double p);

/// P(chi2_df > x).
double chi2_survival(double x, double df);

double poisson_pmf(int k, double mean);

/// H_n = sum_{i<=n} 1/i; exact summation for small n, Euler-Maclaurin
/// beyond (relative error ~1e-16 either way).
double harmonic(std::uint64_t n);

struct Chi2Result {
  double statistic = 0.0;
  double df = 0.0;
  double p_value = 1.0;
  std::size_t cells = 0;
};

/// Two-sample homogeneity test over jointly keyed cells. Cells whose
/// combined count falls below `min_cell_total` are merged (in key order)
/// into a rest bucket before the statistic is formed.
Chi2Result chi2_two_sample(const std::map<std::vector<int>, std::pair<std::int64_t, std::int64_t>>& cells,
                           std::int64_t n1, std::int64_t n2, std::int64_t min_cell_total = 10);

/// Goodness of fit of observed category counts against model
/// probabilities; trailing probability mass is an implicit rest cell.
/// `estimated_params` reduces the degrees of freedom.
Chi2Result chi2_gof(const std::vector<std::int64_t>& observed,
                    const std::vector<double>& cell_probs, int estimated_params,
                    double min_expected = 5.0);

/// Independence test on a contingency table of two count variables.
/// Rows/columns are pooled from the top until every margin is at least
/// `min_margin`.
Chi2Result chi2_independence(const std::vector<std::vector<std::int64_t>>& table,
                             std::int64_t min_margin = 10);

}  // namespace crs
