// crset: seeded experiments over countable-random-set models with
// machine-readable reports. Exit code 0 = all checks passed, 1 = some
// check failed, 2 = configuration error.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "crs/dissect.hpp"
#include "crs/hitting.hpp"
#include "crs/json_io.hpp"
#include "crs/laws.hpp"
#include "crs/parallel.hpp"
#include "crs/selection.hpp"
#include "crs/sigma.hpp"

using nlohmann::json;
using namespace crs;

namespace {

constexpr const char* kVersion = "0.1.0";

struct CommonOpts {
  std::string model = "lebesgue01";
  std::string model2;
  std::string sets = "dyadic:20";
  std::uint64_t seed = 1;
  std::int64_t n = 10000;
  int depth = 64;
  double alpha = 0.01;
  std::string out = "json";
  bool canonical = false;
  int threads = default_threads();
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

/// Set-list specs: "dyadic:N[:lo,hi]", "grid:N:lo,hi", inline JSON
/// "[[a,b],...]" (a list of interval sets), or "@file.json".
std::vector<IntervalSet> parse_sets(const std::string& spec) {
  if (spec.empty()) throw std::invalid_argument("empty set spec");
  if (spec.front() == '[') {
    std::vector<IntervalSet> out;
    for (const json& item : json::parse(spec)) out.push_back(item.get<IntervalSet>());
    return out;
  }
  if (spec.front() == '@') {
    std::ifstream in(spec.substr(1));
    if (!in) throw std::invalid_argument("cannot open set file: " + spec.substr(1));
    json j;
    in >> j;
    std::vector<IntervalSet> out;
    for (const json& item : j) out.push_back(item.get<IntervalSet>());
    return out;
  }
  const auto first = spec.find(':');
  if (first == std::string::npos) throw std::invalid_argument("bad set spec: " + spec);
  const std::string kind = spec.substr(0, first);
  const std::string rest = spec.substr(first + 1);
  const auto second = rest.find(':');
  const int count = std::stoi(rest.substr(0, second));
  IntervalSet window = IntervalSet::interval(0, 1);
  if (second != std::string::npos) {
    const std::string win = rest.substr(second + 1);
    const auto comma = win.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("window needs lo,hi");
    window = IntervalSet::interval(std::stod(win.substr(0, comma)), std::stod(win.substr(comma + 1)));
  }
  if (kind == "dyadic") return dyadic_ring_sets(window, count);
  if (kind == "grid") return grid_cells(window, count);
  throw std::invalid_argument("unknown set spec kind: " + kind);
}

json config_echo(const CommonOpts& o) {
  json j;
  j["model"] = o.model;
  if (!o.model2.empty()) j["model2"] = o.model2;
  j["sets"] = o.sets;
  j["seed"] = o.seed;
  j["n"] = o.n;
  j["depth"] = o.depth;
  j["alpha"] = o.alpha;
  j["out"] = o.out;
  j["threads"] = o.threads;
  return j;
}

struct Report {
  json body;
  bool pass = true;
  std::vector<std::string> csv_lines;  // header first

  void csv(std::string line) { csv_lines.push_back(std::move(line)); }
};

int emit(const CommonOpts& opts, const std::string& command, Report report,
         std::chrono::steady_clock::time_point started) {
  if (opts.out == "csv") {
    for (const std::string& line : report.csv_lines) std::cout << line << '\n';
  } else {
    json envelope;
    envelope["version"] = kVersion;
    envelope["command"] = command;
    envelope["config"] = config_echo(opts);
    envelope["seed"] = opts.seed;
    envelope["pass"] = report.pass;
    envelope["results"] = std::move(report.body);
    if (!opts.canonical) {
      envelope["wall_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                                std::chrono::steady_clock::now() - started)
                                .count();
    }
    std::cout << envelope.dump(2) << '\n';
  }
  return report.pass ? 0 : 1;
}

json interval_json(const IntervalSet& s) {
  json j = s;
  return j;
}

// ---- subcommand bodies ------------------------------------------------

Report run_sigma_check_cmd(int m, int trials, std::uint64_t seed, int exhaustive_m) {
  const auto r = sigma::run_sigma_check(m, trials, seed, exhaustive_m);
  Report report;
  report.pass = r.total_failures() == 0;
  json counts;
  const auto put = [&](const char* key, const sigma::TrialCounts& c) {
    counts[key] = json{{"instances", c.instances}, {"failures", c.failures}};
  };
  put("thm31", r.thm31);
  put("thm33", r.thm33);
  put("cor36", r.cor36);
  put("thm41", r.thm41);
  put("thm31_exhaustive", r.thm31_exhaustive);
  put("thm33_exhaustive", r.thm33_exhaustive);
  report.body["instances"] = r.total_instances();
  report.body["failures"] = r.total_failures();
  report.body["by_check"] = counts;
  report.body["exhaustive_m"] = r.exhaustive_m;
  report.body["atoms_examples"] = r.atoms_examples;
  report.csv("check,instances,failures");
  report.csv("thm31," + std::to_string(r.thm31.instances) + "," + std::to_string(r.thm31.failures));
  report.csv("thm33," + std::to_string(r.thm33.instances) + "," + std::to_string(r.thm33.failures));
  report.csv("cor36," + std::to_string(r.cor36.instances) + "," + std::to_string(r.cor36.failures));
  report.csv("thm41," + std::to_string(r.thm41.instances) + "," + std::to_string(r.thm41.failures));
  report.csv("thm31_exhaustive," + std::to_string(r.thm31_exhaustive.instances) + "," +
             std::to_string(r.thm31_exhaustive.failures));
  report.csv("thm33_exhaustive," + std::to_string(r.thm33_exhaustive.instances) + "," +
             std::to_string(r.thm33_exhaustive.failures));
  return report;
}

Report run_enumerate(const std::string& points_json, const std::string& family_spec,
                     double fallback, int count) {
  std::vector<double> pts;
  for (const json& v : json::parse(points_json)) pts.push_back(v.get<double>());
  const FinitePointSet<double> m(pts);

  if (family_spec.rfind("dyadic:", 0) != 0) {
    throw std::invalid_argument("family spec must be dyadic:lo,hi");
  }
  const std::string win = family_spec.substr(7);
  const auto comma = win.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("family window needs lo,hi");
  const DyadicFamily fam(std::stod(win.substr(0, comma)), std::stod(win.substr(comma + 1)));

  const auto seq = enumerate_finite(m, fallback, fam, static_cast<std::size_t>(count));
  Report report;
  report.body["terms"] = seq;
  report.body["canonical_point"] = m.empty() ? json(nullptr) : json(canonical_point(m, fam));
  report.csv("index,value");
  for (std::size_t i = 0; i < seq.size(); ++i) {
    report.csv(std::to_string(i + 1) + "," + fmt(seq[i]));
  }
  return report;
}

Report run_sample(const CommonOpts& opts, std::int64_t replicates) {
  const CrSetModel model = load_model(opts.model);
  Report report;
  report.body["model"] = model_to_json(model);
  report.body["realizations"] = json::array();
  report.csv("replicate,points");
  for (std::int64_t r = 0; r < replicates; ++r) {
    const Realization real =
        sample_realization(model, opts.depth, opts.seed, static_cast<std::uint64_t>(r));
    report.body["realizations"].push_back(realization_to_json(real));
    report.csv(std::to_string(r) + "," + std::to_string(real.total_points()));
  }
  return report;
}

Report run_hitting(const CommonOpts& opts) {
  const CrSetModel model = load_model(opts.model);
  const auto sets = parse_sets(opts.sets);
  const double z = normal_quantile(1.0 - opts.alpha / 2.0);
  const auto estimates = estimate_hitting(model, sets, opts.n, opts.depth, opts.seed, z,
                                          opts.threads);
  Report report;
  report.body["estimates"] = json::array();
  report.csv("set,p_hat,ci,analytic,tail_bound,verdict");
  for (const auto& e : estimates) {
    const auto analytic = analytic_hitting(model, e.set);
    json row;
    row["set"] = interval_json(e.set);
    row["p_hat"] = e.p_hat;
    row["ci_center"] = e.ci.center;
    row["ci_halfwidth"] = e.ci.halfwidth;
    row["analytic"] = analytic ? json(*analytic) : json(nullptr);
    row["tail_bound"] = e.truncation_bias ? json(*e.truncation_bias) : json("unknown");
    row["decided"] = e.decided();
    report.body["estimates"].push_back(row);
    const std::string verdict = e.decided() ? "decided" : "undecided";
    report.csv(interval_json(e.set).dump() + "," + fmt(e.p_hat) + "," + fmt(e.ci.halfwidth) +
               "," + (analytic ? fmt(*analytic) : std::string()) + "," +
               (e.truncation_bias ? fmt(*e.truncation_bias) : std::string("unknown")) + "," +
               verdict);
  }
  return report;
}

Report run_renyi(const CommonOpts& opts, bool bonferroni) {
  const CrSetModel model = load_model(opts.model);
  const auto sets = parse_sets(opts.sets);
  const auto r = renyi_verify(model, sets, opts.n, opts.depth, opts.seed, opts.alpha, bonferroni,
                              opts.threads);
  Report report;
  report.pass = r.all_pass;
  report.body["all_pass"] = r.all_pass;
  report.body["z"] = r.z;
  report.body["rows"] = json::array();
  report.csv("set,p_hat,ci,analytic,tail_bound,verdict");
  for (const auto& row : r.rows) {
    json jr;
    jr["set"] = interval_json(row.set);
    jr["p_hat"] = row.p_hat;
    jr["ci_halfwidth"] = row.ci_halfwidth;
    jr["analytic"] = row.analytic;
    jr["tail_bound"] = row.tail_bound ? json(*row.tail_bound) : json("unknown");
    jr["pass"] = row.pass;
    report.body["rows"].push_back(jr);
    report.csv(interval_json(row.set).dump() + "," + fmt(row.p_hat) + "," +
               fmt(row.ci_halfwidth) + "," + fmt(row.analytic) + "," +
               (row.tail_bound ? fmt(*row.tail_bound) : std::string("unknown")) + "," +
               (row.pass ? "pass" : "fail"));
  }
  return report;
}

json chi2_json(const Chi2Result& r) {
  return json{{"statistic", r.statistic}, {"df", r.df}, {"p_value", r.p_value},
              {"cells", r.cells}};
}

Report run_laws_fidi(const CommonOpts& opts, int cap) {
  const CrSetModel m1 = load_model(opts.model);
  const CrSetModel m2 = load_model(opts.model2.empty() ? opts.model : opts.model2);
  const FidiSpec spec{parse_sets(opts.sets), cap};
  const auto s1 = sample_count_vectors(m1, spec, opts.n, opts.depth, opts.seed, opts.threads);
  const auto s2 = sample_count_vectors(m2, spec, opts.n, opts.depth,
                                       opts.seed ^ 0x9E3779B97F4A7C15ull, opts.threads);
  const auto r = fidi_compare(s1, s2, opts.alpha);
  Report report;
  report.pass = r.pass;
  report.body["chi2"] = chi2_json(r.chi2);
  report.body["pass"] = r.pass;
  report.csv("statistic,df,p_value,verdict");
  report.csv(fmt(r.chi2.statistic) + "," + fmt(r.chi2.df) + "," + fmt(r.chi2.p_value) + "," +
             (r.pass ? "pass" : "fail"));
  return report;
}

json ring_report_json(const RingCompareReport& r) {
  json j;
  j["z"] = r.z;
  j["all_pass"] = r.all_pass;
  j["rows"] = json::array();
  for (const auto& row : r.rows) {
    j["rows"].push_back(json{{"set", interval_json(row.set)},
                             {"p1", row.p1},
                             {"halfwidth1", row.halfwidth1},
                             {"p2", row.p2},
                             {"halfwidth2", row.halfwidth2},
                             {"pass", row.pass}});
  }
  return j;
}

Report run_laws_ring(const CommonOpts& opts) {
  const CrSetModel m1 = load_model(opts.model);
  const CrSetModel m2 = load_model(opts.model2.empty() ? opts.model : opts.model2);
  const auto r = hitting_compare_on_ring(m1, m2, parse_sets(opts.sets), opts.n, opts.depth,
                                         opts.seed, opts.alpha, opts.threads);
  Report report;
  report.pass = r.all_pass;
  report.body = ring_report_json(r);
  report.csv("set,p1,ci1,p2,ci2,verdict");
  for (const auto& row : r.rows) {
    report.csv(interval_json(row.set).dump() + "," + fmt(row.p1) + "," + fmt(row.halfwidth1) +
               "," + fmt(row.p2) + "," + fmt(row.halfwidth2) + "," +
               (row.pass ? "pass" : "fail"));
  }
  return report;
}

Report run_laws_closed(const CommonOpts& opts, int cap) {
  const CrSetModel m1 = load_model(opts.model);
  const CrSetModel m2 = load_model(opts.model2.empty() ? opts.model : opts.model2);
  // Closed probe sets from the set spec (taken as closed hulls), plus a
  // default shrinking chain around the first set and far-away null probes.
  const auto base = parse_sets(opts.sets);
  std::vector<ClosedIntervalSet> closed;
  for (const IntervalSet& s : base) closed.push_back(closure(s));
  std::vector<std::vector<IntervalSet>> chains;
  if (!base.empty() && !base.front().empty()) {
    const Interval iv0 = base.front().components().front();
    std::vector<IntervalSet> chain;
    for (int k = 1; k <= 4; ++k) {
      const double margin = (iv0.hi - iv0.lo) / (4.0 * k);
      chain.push_back(IntervalSet::interval(iv0.lo - margin, iv0.hi + margin));
    }
    chains.push_back(std::move(chain));
  }
  const std::vector<IntervalSet> null_probes{IntervalSet::interval(1e6, 1e6 + 1)};
  const FidiSpec spec{base, cap};
  const auto r = closed_set_compare(m1, m2, closed, chains, null_probes, spec, opts.n, opts.depth,
                                    opts.seed, opts.alpha, opts.threads);
  Report report;
  report.pass = r.all_pass;
  report.body["closed_sets"] = ring_report_json(r.closed_sets);
  report.body["null_transfer"] = json::array();
  for (const auto& row : r.null_transfer) {
    report.body["null_transfer"].push_back(json{{"set", interval_json(row.set)},
                                                {"p1_hat", row.p1_hat},
                                                {"p2_hat", row.p2_hat},
                                                {"applicable", row.applicable},
                                                {"pass", row.pass}});
  }
  report.body["chains"] = json::array();
  for (const auto& chain : r.chains) report.body["chains"].push_back(ring_report_json(chain));
  report.body["fidi"] = json{{"chi2", chi2_json(r.fidi.chi2)}, {"pass", r.fidi.pass}};
  report.body["all_pass"] = r.all_pass;
  report.csv("section,verdict");
  report.csv(std::string("closed_sets,") + (r.closed_sets.all_pass ? "pass" : "fail"));
  report.csv(std::string("fidi,") + (r.fidi.pass ? "pass" : "fail"));
  return report;
}

Report run_laws_recover(const CommonOpts& opts, int pairs) {
  const CrSetModel model = load_model(opts.model);
  IntervalSet window = IntervalSet::interval(0, 1);
  const auto r = recover_additivity(model, disjoint_dyadic_pairs(window, pairs), opts.n,
                                    opts.depth, opts.seed, opts.alpha, opts.threads);
  Report report;
  report.pass = r.all_pass;
  report.body["z"] = r.z;
  report.body["all_pass"] = r.all_pass;
  report.body["rows"] = json::array();
  report.csv("a,b,mu_a,mu_b,mu_union,tolerance,verdict");
  for (const auto& row : r.rows) {
    report.body["rows"].push_back(json{{"a", interval_json(row.a)},
                                       {"b", interval_json(row.b)},
                                       {"mu_a", row.mu_a},
                                       {"mu_b", row.mu_b},
                                       {"mu_union", row.mu_union},
                                       {"tolerance", row.tolerance},
                                       {"pass", row.pass}});
    report.csv(interval_json(row.a).dump() + "," + interval_json(row.b).dump() + "," +
               fmt(row.mu_a) + "," + fmt(row.mu_b) + "," + fmt(row.mu_union) + "," +
               fmt(row.tolerance) + "," + (row.pass ? "pass" : "fail"));
  }
  return report;
}

Report run_laws_incr(const CommonOpts& opts) {
  const CrSetModel model = load_model(opts.model);
  const auto r = independent_increments_poisson_check(model, parse_sets(opts.sets), opts.n,
                                                      opts.depth, opts.seed, opts.alpha,
                                                      opts.threads);
  Report report;
  report.pass = r.pass;
  report.body["alpha_each"] = r.alpha_each;
  report.body["independence"] = json::array();
  for (const auto& t : r.independence) report.body["independence"].push_back(chi2_json(t));
  report.body["gof"] = json::array();
  for (const auto& t : r.gof) report.body["gof"].push_back(chi2_json(t));
  report.body["mu_hats"] = r.mu_hats;
  report.body["independence_pass"] = r.independence_pass;
  report.body["gof_pass"] = r.gof_pass;
  report.body["pass"] = r.pass;
  report.csv("check,p_value,verdict");
  for (const auto& t : r.independence) {
    report.csv("independence," + fmt(t.p_value) +
               "," + (t.p_value >= r.alpha_each ? "pass" : "fail"));
  }
  for (const auto& t : r.gof) {
    report.csv("gof," + fmt(t.p_value) + "," + (t.p_value >= r.alpha_each ? "pass" : "fail"));
  }
  return report;
}

Report run_laws_decompose(const CommonOpts& opts, int cells, const std::string& window_spec,
                          bool empirical) {
  const CrSetModel model = load_model(opts.model);
  const auto comma = window_spec.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("window needs lo,hi");
  const IntervalSet window = IntervalSet::interval(std::stod(window_spec.substr(0, comma)),
                                                   std::stod(window_spec.substr(comma + 1)));
  DecomposeOptions dopts;
  dopts.use_analytic = !empirical;
  dopts.n_samples = opts.n;
  dopts.depth = opts.depth;
  dopts.seed = opts.seed;
  dopts.threads = opts.threads;
  const auto r = decompose(model, grid_cells(window, cells), dopts);
  Report report;
  report.body["analytic"] = r.analytic;
  report.body["detector_threshold"] = r.detector_threshold;
  report.body["detector_depth"] = r.detector_depth;
  report.body["sigma_finite_set"] = interval_json(r.sigma_finite_set);
  report.body["residual"] = interval_json(r.residual);
  report.body["cells"] = json::array();
  report.csv("cell,class,hit_value,p_infinite");
  for (const auto& cell : r.cells) {
    const char* cls = cell.cls == CellClass::kNull          ? "null"
                      : cell.cls == CellClass::kSigmaFinite ? "sigma-finite"
                                                            : "infinite-mass";
    report.body["cells"].push_back(json{{"cell", interval_json(cell.cell)},
                                        {"class", cls},
                                        {"hit_value", cell.hit_value},
                                        {"p_infinite", cell.p_infinite}});
    report.csv(interval_json(cell.cell).dump() + "," + cls + "," + fmt(cell.hit_value) + "," +
               fmt(cell.p_infinite));
  }
  return report;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"countable-random-set experiments"};
  app.require_subcommand(1);

  CommonOpts opts;
  const auto add_common = [&](CLI::App* cmd, bool with_model2 = false) {
    cmd->add_option("--model", opts.model, "model preset, inline JSON, or file path");
    if (with_model2) cmd->add_option("--model2", opts.model2, "second model for comparisons");
    cmd->add_option("--sets", opts.sets, "set family: dyadic:N[:lo,hi], grid:N:lo,hi, JSON, @file");
    cmd->add_option("--seed", opts.seed, "64-bit seed");
    cmd->add_option("--n", opts.n, "number of replicates");
    cmd->add_option("--depth", opts.depth, "truncation depth (components per part)");
    cmd->add_option("--alpha", opts.alpha, "significance level");
    cmd->add_option("--out", opts.out, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_flag("--canonical", opts.canonical, "strip wall-clock for byte-stable output");
    cmd->add_option("--threads", opts.threads, "worker threads");
  };

  // sigma-check
  int sigma_m = 6, sigma_trials = 100, sigma_exhaustive = 4;
  auto* sigma_cmd = app.add_subcommand("sigma-check", "exact finite-space sigma-field checks");
  sigma_cmd->add_option("--m", sigma_m, "max universe size for randomized trials");
  sigma_cmd->add_option("--trials", sigma_trials, "randomized trials per check");
  sigma_cmd->add_option("--exhaustive-m", sigma_exhaustive, "exhaustive sweep bound (<= 4)");
  add_common(sigma_cmd);

  // enumerate
  std::string enum_points = "[]", enum_family = "dyadic:0,1";
  double enum_fallback = 0.5;
  int enum_count = 10;
  auto* enum_cmd = app.add_subcommand("enumerate", "canonical measurable enumeration");
  enum_cmd->add_option("--points", enum_points, "JSON array of points");
  enum_cmd->add_option("--family", enum_family, "separating family: dyadic:lo,hi");
  enum_cmd->add_option("--fallback", enum_fallback, "value used when the set is empty");
  enum_cmd->add_option("--count", enum_count, "number of terms to print");
  add_common(enum_cmd);

  // sample
  std::int64_t sample_replicates = 1;
  auto* sample_cmd = app.add_subcommand("sample", "dump seeded realizations");
  sample_cmd->add_option("--replicates", sample_replicates, "realizations to dump");
  add_common(sample_cmd);

  // hitting / renyi
  auto* hitting_cmd = app.add_subcommand("hitting", "hitting-probability estimates");
  add_common(hitting_cmd);
  bool renyi_bonferroni = false;
  auto* renyi_cmd = app.add_subcommand("renyi", "Renyi avoidance-identity verification");
  renyi_cmd->add_flag("--bonferroni", renyi_bonferroni, "Bonferroni-correct the per-set level");
  add_common(renyi_cmd);

  // laws
  auto* laws = app.add_subcommand("laws", "law-comparison harness");
  laws->require_subcommand(1);
  int fidi_cap = 4;
  auto* fidi_cmd = laws->add_subcommand("fidi", "finite-dimensional distribution comparison");
  fidi_cmd->add_option("--cap", fidi_cap, "count pooling cap");
  add_common(fidi_cmd, true);
  auto* ring_cmd = laws->add_subcommand("ring", "hitting agreement on a ring family");
  add_common(ring_cmd, true);
  int closed_cap = 4;
  auto* closed_cmd = laws->add_subcommand("closed", "closed-set uniqueness harness");
  closed_cmd->add_option("--cap", closed_cap, "count pooling cap");
  add_common(closed_cmd, true);
  int recover_pairs = 20;
  auto* recover_cmd = laws->add_subcommand("recover", "intensity recovery additivity");
  recover_cmd->add_option("--pairs", recover_pairs, "disjoint dyadic pairs");
  add_common(recover_cmd);
  auto* incr_cmd = laws->add_subcommand("incr", "independent increments + Poisson GOF");
  add_common(incr_cmd);
  int decompose_cells = 60;
  std::string decompose_window = "0,3";
  bool decompose_empirical = false;
  auto* decompose_cmd = laws->add_subcommand("decompose", "sigma-finite decomposition");
  decompose_cmd->add_option("--cells", decompose_cells, "grid cell count");
  decompose_cmd->add_option("--window", decompose_window, "grid window lo,hi");
  decompose_cmd->add_flag("--empirical", decompose_empirical,
                          "use the count-threshold detector instead of analytic classifiers");
  add_common(decompose_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const auto started = std::chrono::steady_clock::now();
  try {
    if (sigma_cmd->parsed()) {
      return emit(opts, "sigma-check",
                  run_sigma_check_cmd(sigma_m, sigma_trials, opts.seed, sigma_exhaustive),
                  started);
    }
    if (enum_cmd->parsed()) {
      return emit(opts, "enumerate",
                  run_enumerate(enum_points, enum_family, enum_fallback, enum_count), started);
    }
    if (sample_cmd->parsed()) {
      return emit(opts, "sample", run_sample(opts, sample_replicates), started);
    }
    if (hitting_cmd->parsed()) return emit(opts, "hitting", run_hitting(opts), started);
    if (renyi_cmd->parsed()) {
      return emit(opts, "renyi", run_renyi(opts, renyi_bonferroni), started);
    }
    if (fidi_cmd->parsed()) return emit(opts, "laws fidi", run_laws_fidi(opts, fidi_cap), started);
    if (ring_cmd->parsed()) return emit(opts, "laws ring", run_laws_ring(opts), started);
    if (closed_cmd->parsed()) {
      return emit(opts, "laws closed", run_laws_closed(opts, closed_cap), started);
    }
    if (recover_cmd->parsed()) {
      return emit(opts, "laws recover", run_laws_recover(opts, recover_pairs), started);
    }
    if (incr_cmd->parsed()) return emit(opts, "laws incr", run_laws_incr(opts), started);
    if (decompose_cmd->parsed()) {
      return emit(opts, "laws decompose",
                  run_laws_decompose(opts, decompose_cells, decompose_window,
                                     decompose_empirical),
                  started);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  std::cerr << "error: no subcommand\n";
  return 2;
}
