#include "crs/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace crs {

WilsonInterval wilson_interval(std::int64_t successes, std::int64_t n, double z) {
  if (n <= 0) throw std::invalid_argument("wilson interval needs n >= 1");
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(successes) / nn;
  const double z2n = z * z / nn;
  const double denom = 1.0 + z2n;
  WilsonInterval w;
  w.center = (p + z2n / 2.0) / denom;
  w.halfwidth = z * std::sqrt(p * (1.0 - p) / nn + z2n / (4.0 * nn)) / denom;
  return w;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_quantile(double p) {
  static const boost::math::normal_distribution<double> stdnorm;
  return boost::math::quantile(stdnorm, p);
}

double chi2_survival(double x, double df) {
  if (x <= 0.0) return 1.0;
  return boost::math::gamma_q(df / 2.0, x / 2.0);
}

double poisson_pmf(int k, double mean) {
  if (k < 0) return 0.0;
  if (mean == 0.0) return k == 0 ? 1.0 : 0.0;
  return std::exp(-mean + k * std::log(mean) - std::lgamma(static_cast<double>(k) + 1.0));
}

double harmonic(std::uint64_t n) {
  if (n == 0) return 0.0;
  if (n <= 1u << 20) {
    double h = 0.0;
    for (std::uint64_t i = n; i >= 1; --i) h += 1.0 / static_cast<double>(i);
    return h;
  }
  const double x = static_cast<double>(n);
  return std::log(x) + std::numbers::egamma + 1.0 / (2.0 * x) - 1.0 / (12.0 * x * x) +
         1.0 / (120.0 * x * x * x * x);
}

namespace {

Chi2Result chi2_from_cells(const std::vector<std::pair<double, double>>& observed_expected,
                           int lost_df) {
  Chi2Result r;
  double stat = 0.0;
  std::size_t used = 0;
  for (const auto& [obs, exp] : observed_expected) {
    if (exp <= 0.0) continue;
    const double d = obs - exp;
    stat += d * d / exp;
    ++used;
  }
  r.statistic = stat;
  r.cells = used;
  r.df = std::max<double>(1.0, static_cast<double>(used) - 1.0 - lost_df);
  r.p_value = chi2_survival(stat, r.df);
  return r;
}

}  // namespace

Chi2Result chi2_two_sample(const std::map<std::vector<int>, std::pair<std::int64_t, std::int64_t>>& cells,
                           std::int64_t n1, std::int64_t n2, std::int64_t min_cell_total) {
  // Merge sparse cells, in key order, into one rest bucket.
  std::vector<std::pair<std::int64_t, std::int64_t>> kept;
  std::pair<std::int64_t, std::int64_t> rest{0, 0};
  for (const auto& [key, c] : cells) {
    if (c.first + c.second < min_cell_total) {
      rest.first += c.first;
      rest.second += c.second;
    } else {
      kept.push_back(c);
    }
  }
  if (rest.first + rest.second > 0) kept.push_back(rest);

  const double total = static_cast<double>(n1 + n2);
  std::vector<std::pair<double, double>> oe;
  for (const auto& [c1, c2] : kept) {
    const double pooled = static_cast<double>(c1 + c2) / total;
    oe.emplace_back(static_cast<double>(c1), pooled * static_cast<double>(n1));
    oe.emplace_back(static_cast<double>(c2), pooled * static_cast<double>(n2));
  }
  Chi2Result r = chi2_from_cells(oe, 0);
  // Homogeneity df = cells - 1, not 2*cells - 1.
  r.df = std::max<double>(1.0, static_cast<double>(kept.size()) - 1.0);
  r.cells = kept.size();
  r.p_value = chi2_survival(r.statistic, r.df);
  return r;
}

Chi2Result chi2_gof(const std::vector<std::int64_t>& observed,
                    const std::vector<double>& cell_probs, int estimated_params,
                    double min_expected) {
  if (observed.size() != cell_probs.size()) {
    throw std::invalid_argument("observed/probability size mismatch");
  }
  std::int64_t n = 0;
  for (std::int64_t c : observed) n += c;
  const double nn = static_cast<double>(n);

  // Pool from the tail until each cell's expected count is large enough.
  std::vector<std::pair<double, double>> oe;
  double acc_obs = 0.0, acc_exp = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    acc_obs += static_cast<double>(observed[i]);
    acc_exp += cell_probs[i] * nn;
    if (acc_exp >= min_expected) {
      oe.emplace_back(acc_obs, acc_exp);
      acc_obs = acc_exp = 0.0;
    }
  }
  if (acc_exp > 0.0 || acc_obs > 0.0) {
    if (!oe.empty()) {
      oe.back().first += acc_obs;
      oe.back().second += acc_exp;
    } else {
      oe.emplace_back(acc_obs, acc_exp);
    }
  }
  return chi2_from_cells(oe, estimated_params);
}

Chi2Result chi2_independence(const std::vector<std::vector<std::int64_t>>& table,
                             std::int64_t min_margin) {
  if (table.empty() || table.front().empty()) throw std::invalid_argument("empty table");
  std::vector<std::vector<std::int64_t>> t = table;

  const auto pool_rows = [&](std::vector<std::vector<std::int64_t>>& m) {
    while (m.size() > 2) {
      std::int64_t last = 0;
      for (std::int64_t v : m.back()) last += v;
      if (last >= min_margin) break;
      auto tail = m.back();
      m.pop_back();
      for (std::size_t j = 0; j < tail.size(); ++j) m.back()[j] += tail[j];
    }
  };
  const auto transpose = [](const std::vector<std::vector<std::int64_t>>& m) {
    std::vector<std::vector<std::int64_t>> out(m.front().size(),
                                               std::vector<std::int64_t>(m.size(), 0));
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t j = 0; j < m[i].size(); ++j) out[j][i] = m[i][j];
    }
    return out;
  };

  pool_rows(t);
  t = transpose(t);
  pool_rows(t);
  t = transpose(t);

  const std::size_t rows = t.size(), cols = t.front().size();
  std::vector<double> row_sum(rows, 0.0), col_sum(cols, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      row_sum[i] += static_cast<double>(t[i][j]);
      col_sum[j] += static_cast<double>(t[i][j]);
      total += static_cast<double>(t[i][j]);
    }
  }
  Chi2Result r;
  std::size_t nonzero_rows = 0, nonzero_cols = 0;
  for (double s : row_sum) nonzero_rows += s > 0.0;
  for (double s : col_sum) nonzero_cols += s > 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (row_sum[i] <= 0.0 || col_sum[j] <= 0.0) continue;
      const double expct = row_sum[i] * col_sum[j] / total;
      const double d = static_cast<double>(t[i][j]) - expct;
      r.statistic += d * d / expct;
    }
  }
  r.cells = nonzero_rows * nonzero_cols;
  r.df = std::max<double>(1.0, (static_cast<double>(nonzero_rows) - 1.0) *
                                   (static_cast<double>(nonzero_cols) - 1.0));
  r.p_value = chi2_survival(r.statistic, r.df);
  return r;
}

}  // namespace crs
