#include "sirw/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "sirw/coupling.hpp"
#include "sirw/diagnostics.hpp"
#include "sirw/graph.hpp"
#include "sirw/stats.hpp"
#include "sirw/timelines.hpp"
#include "sirw/urn.hpp"
#include "sirw/walk.hpp"
#include "sirw/weights.hpp"

namespace sirw {

namespace {

using nlohmann::json;

void add_check(Report& r, const std::string& name, bool pass, double value,
               const std::string& threshold) {
  r.checks.push_back({name, pass, value, threshold});
}

std::string csv_number(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

// Chi-square of observed path counts against an exact finite law. Any
// observed outcome outside the exact support is an immediate failure.
template <class Key>
stats::ChiSquareResult compare_to_exact(
    const std::map<Key, Rational>& exact,
    const std::map<Key, long long>& observed) {
  std::vector<long long> obs;
  std::vector<double> probs;
  for (const auto& [key, p] : exact) {
    probs.push_back(to_double(p));
    auto it = observed.find(key);
    obs.push_back(it == observed.end() ? 0 : it->second);
  }
  for (const auto& [key, cnt] : observed)
    if (!exact.count(key)) return {std::numeric_limits<double>::infinity(),
                                   0.0, static_cast<double>(probs.size() - 1)};
  return stats::chi_square(obs, probs);
}

// Exact pick-sequence law of the two-colour W-urn.
std::map<std::vector<int>, Rational> exact_urn_distribution(
    const WeightFunction& w, std::int64_t z_plus, std::int64_t z_minus, int k,
    double a_plus, double a_minus) {
  std::map<std::vector<int>, Rational> out;
  std::vector<int> path;
  Rational ap = rational_from_double(a_plus);
  Rational am = rational_from_double(a_minus);
  std::function<void(std::int64_t, std::int64_t, Rational)> rec =
      [&](std::int64_t zp, std::int64_t zm, Rational prob) {
        if (static_cast<int>(path.size()) == k) {
          out[path] += prob;
          return;
        }
        Rational wp = ap * rational_from_double(w(zp));
        Rational wm = am * rational_from_double(w(zm));
        Rational total = wp + wm;
        path.push_back(1);
        rec(zp + 1, zm, prob * wp / total);
        path.back() = -1;
        rec(zp, zm + 1, prob * wm / total);
        path.pop_back();
      };
  rec(z_plus, z_minus, Rational(1));
  return out;
}

std::set<Vertex> tail_range_prefix(const Trace& t, std::int64_t n, double f) {
  auto start = static_cast<std::int64_t>(
      std::llround((1.0 - f) * static_cast<double>(n)));
  std::set<Vertex> out;
  for (std::int64_t i = start; i <= n; ++i)
    out.insert(t.positions[static_cast<std::size_t>(i)]);
  return out;
}

std::set<std::int64_t> tail_edge_set(const Trace& t, double f) {
  std::int64_t n = t.steps();
  auto start = static_cast<std::int64_t>(
      std::llround((1.0 - f) * static_cast<double>(n)));
  std::set<std::int64_t> out;
  for (std::int64_t i = std::max<std::int64_t>(start, 0) + 1; i <= n; ++i)
    out.insert(undirected_edge_key(t.positions[static_cast<std::size_t>(i - 1)],
                                   t.positions[static_cast<std::size_t>(i)]));
  return out;
}

Report base_report(const ExperimentConfig& cfg, std::int64_t reps,
                   std::int64_t steps) {
  Report r;
  r.experiment_id = cfg.id;
  r.seed = cfg.seed;
  r.reps = reps;
  r.steps = steps;
  return r;
}

double param(const ExperimentConfig& cfg, const std::string& name,
             double fallback) {
  auto it = cfg.params.find(name);
  return it == cfg.params.end() ? fallback : it->second;
}

// ---------------------------------------------------------------------------
// Experiments
// ---------------------------------------------------------------------------

Report exp_exact_identities(const ExperimentConfig& cfg, std::int64_t reps,
                            std::int64_t steps) {
  Report r = base_report(cfg, reps, steps);
  Graph line = Graph::line();
  WeightFunction w = WeightFunction::power(0.0, 1.0);
  std::vector<double> dev_1est(reps), dev_pol_p(reps), dev_pol_m(reps);
  std::vector<char> ri_ok(reps);
  parallel_for(reps, cfg.parallel, [&](std::int64_t i) {
    Walker walker(line, w, Mode::vertex, 0,
                  substream(cfg.seed, cfg.id, i, "walk"));
    Trace t = walker.run(steps);
    dev_1est[i] = check_identity_1est_d(t, 0);
    dev_pol_p[i] = check_identity_pol_a(t, 0, +1);
    dev_pol_m[i] = check_identity_pol_a(t, 0, -1);
    ri_ok[i] = check_identity_ri(t, -3) && check_identity_ri(t, 0);
  });
  double m1 = *std::max_element(dev_1est.begin(), dev_1est.end());
  double mp = std::max(*std::max_element(dev_pol_p.begin(), dev_pol_p.end()),
                       *std::max_element(dev_pol_m.begin(), dev_pol_m.end()));
  bool ri = std::all_of(ri_ok.begin(), ri_ok.end(), [](char c) { return c; });
  add_check(r, "visit_sum_identity_max_dev", m1 < 1e-9, m1, "< 1e-9");
  add_check(r, "constancy_identity_max_dev", mp < 1e-9, mp, "< 1e-9");
  add_check(r, "four_site_integer_identity", ri, ri ? 1.0 : 0.0,
            "exact for all replications");
  r.metrics["max_dev_visit_sum"] = m1;
  r.metrics["max_dev_constancy"] = mp;
  return r;
}

Report exp_oracle_equivalence(const ExperimentConfig& cfg, std::int64_t reps,
                              std::int64_t steps) {
  Report r = base_report(cfg, reps, steps);
  int k = static_cast<int>(steps);
  Graph line = Graph::line();
  WeightFunction w = WeightFunction::power(0.0, 1.0);

  auto exact_v = exact_path_distribution(line, w, 0, k, Mode::vertex);
  auto exact_e = exact_path_distribution(line, w, 0, k, Mode::edge);
  auto exact_u = exact_urn_distribution(w, 1, 1, k, 1.0, 1.0);

  std::map<std::vector<Vertex>, long long> obs_v, obs_vt, obs_e, obs_et;
  std::map<std::vector<int>, long long> obs_u, obs_ut;
  for (std::int64_t i = 0; i < reps; ++i) {
    {
      Walker walker(line, w, Mode::vertex, 0,
                    substream(cfg.seed, cfg.id, i, "vsirw"));
      ++obs_v[walker.run(k).positions];
    }
    {
      AlarmCollection a(substream(cfg.seed, cfg.id, i, "vsirw-lines"));
      ++obs_vt[simulate_vsirw_directed_timelines(line, w, 0, k, a).positions];
    }
    {
      Walker walker(line, w, Mode::edge, 0,
                    substream(cfg.seed, cfg.id, i, "esirw"));
      ++obs_e[walker.run(k).positions];
    }
    {
      AlarmCollection a(substream(cfg.seed, cfg.id, i, "esirw-lines"));
      ++obs_et[simulate_esirw_timelines(line, w, 0, k, a).positions];
    }
    {
      UrnState urn(w, 1, 1, 1.0, 1.0, substream(cfg.seed, cfg.id, i, "urn"));
      std::vector<int> picks(static_cast<std::size_t>(k));
      for (int j = 0; j < k; ++j) picks[static_cast<std::size_t>(j)] =
          step_w_urn(urn);
      ++obs_u[picks];
    }
    {
      AlarmCollection a(substream(cfg.seed, cfg.id, i, "urn-lines"));
      ++obs_ut[simulate_w_urn_timelines(w, 1, 1, k, a).picks];
    }
  }
  struct Case {
    const char* name;
    stats::ChiSquareResult res;
  } cases[] = {
      {"vertex_walk_vs_enumeration", compare_to_exact(exact_v, obs_v)},
      {"vertex_timelines_vs_enumeration", compare_to_exact(exact_v, obs_vt)},
      {"edge_walk_vs_enumeration", compare_to_exact(exact_e, obs_e)},
      {"edge_timelines_vs_enumeration", compare_to_exact(exact_e, obs_et)},
      {"urn_vs_enumeration", compare_to_exact(exact_u, obs_u)},
      {"urn_timelines_vs_enumeration", compare_to_exact(exact_u, obs_ut)},
  };
  for (const auto& c : cases) {
    add_check(r, c.name, c.res.p > 0.001, c.res.p, "chi-square p > 0.001");
    r.metrics[std::string(c.name) + "_stat"] = c.res.statistic;
  }
  return r;
}

Report exp_polya_beta_limit(const ExperimentConfig& cfg, std::int64_t reps,
                            std::int64_t steps) {
  Report r = base_report(cfg, reps, steps);
  WeightFunction w = WeightFunction::power(0.0, 1.0);
  std::vector<double> fractions(reps);
  parallel_for(reps, cfg.parallel, [&](std::int64_t i) {
    UrnState urn(w, 1, 1, 1.0, 1.0, substream(cfg.seed, cfg.id, i, "urn"));
    run_urn_to(urn, steps);
    fractions[i] = static_cast<double>(urn.z_plus()) /
                   static_cast<double>(urn.z_plus() + urn.z_minus());
  });
  auto ks = stats::ks_statistic(fractions, stats::uniform01_cdf);
  add_check(r, "terminal_fraction_uniform", ks.p > 0.01, ks.p,
            "KS vs Uniform(0,1), p > 0.01");
  r.metrics["ks_d"] = ks.d;
  std::ostringstream csv;
  csv << "rep,fraction\n";
  for (std::int64_t i = 0; i < reps; ++i)
    csv << i << "," << csv_number(fractions[i]) << "\n";
  r.series.emplace_back("terminal_fractions.csv", csv.str());
  return r;
}

Report exp_weak_reinforcement_ratio(const ExperimentConfig& cfg,
                                    std::int64_t reps, std::int64_t steps) {
  Report r = base_report(cfg, reps, steps);
  struct Setting {
    const char* name;
    double rho, a_plus, a_minus, target;
  } settings[] = {
      {"rho_half_a_4_1", 0.5, 4.0, 1.0, 16.0},
      {"rho_minus_one_a_2_1", -1.0, 2.0, 1.0, std::sqrt(2.0)},
  };
  for (const auto& s : settings) {
    WeightFunction w = WeightFunction::power(0.0, s.rho);
    std::vector<double> rel(reps);
    parallel_for(reps, cfg.parallel, [&](std::int64_t i) {
      UrnState urn(w, 1, 1, s.a_plus, s.a_minus,
                   substream(cfg.seed, cfg.id, i, s.name));
      for (std::int64_t n = 0; n < steps; ++n) step_w_urn(urn);
      double ratio = static_cast<double>(urn.z_plus()) /
                     static_cast<double>(urn.z_minus());
      rel[i] = std::abs(ratio / s.target - 1.0);
    });
    double worst = *std::max_element(rel.begin(), rel.end());
    add_check(r, std::string("ratio_limit_") + s.name, worst <= 0.05, worst,
              "all replications within 5% of the limit");
    r.metrics[std::string("max_rel_dev_") + s.name] = worst;
  }
  return r;
}

Report exp_strong_monopoly(const ExperimentConfig& cfg, std::int64_t reps,
                           std::int64_t steps) {
  Report r = base_report(cfg, reps, steps);
  WeightFunction w = WeightFunction::power(0.0, 2.0);
  std::vector<char> mono(reps);
  parallel_for(reps, cfg.parallel, [&](std::int64_t i) {
    UrnState urn(w, 1, 1, 1.0, 1.0, substream(cfg.seed, cfg.id, i, "urn"));
    UrnHistory h = run_urn_to(urn, steps);
    mono[i] = detect_monopoly(h, param(cfg, "tail_fraction", 0.18)).has_value();
  });
  long long succ = std::count(mono.begin(), mono.end(), char(1));
  double freq = static_cast<double>(succ) / static_cast<double>(reps);
  auto ci = stats::wilson_interval(succ, reps, 0.99);
  add_check(r, "monopoly_frequency", freq >= 0.99, freq, ">= 0.99");
  add_check(r, "monopoly_wilson_lower", ci.lo > 0.97, ci.lo,
            "99% Wilson lower bound > 0.97");
  return r;
}

Report exp_vrrw_five_site(const ExperimentConfig& cfg, std::int64_t reps,
                          std::int64_t steps) {
  Report r = base_report(cfg, reps, steps);
  Graph line = Graph::line();
  WeightFunction w = WeightFunction::power(0.0, 1.0);
  double tail = param(cfg, "tail_fraction", 0.1);
  std::int64_t dyadic = 1;
  while (dyadic * 2 <= steps) dyadic *= 2;  // last power of two <= steps

  struct RepOut {
    int size_final;
    bool stabilized;
    bool stab_violation;
    bool localized;
    double alpha;
  };
  std::vector<RepOut> out(reps);
  parallel_for(reps, cfg.parallel, [&](std::int64_t i) {
    Walker walker(line, w, Mode::vertex, 0,
                  substream(cfg.seed, cfg.id, i, "walk"));
    Trace t = walker.run(steps);
    auto est = estimate_asymptotic_range(t, tail);
    auto prev = tail_range_prefix(t, dyadic / 2, tail);
    auto last = tail_range_prefix(t, dyadic, tail);
    RepOut o{};
    o.size_final = static_cast<int>(est.size());
    o.stabilized = prev == last;
    o.stab_violation = o.stabilized && o.size_final < 5;
    o.localized = o.size_final == 5;
    if (o.localized) {
      Vertex center = *std::next(est.begin(), 2);
      auto z = terminal_counts(t);
      double zl = static_cast<double>(z.count(center - 1) ? z[center - 1] : 1);
      double zr = static_cast<double>(z.count(center + 1) ? z[center + 1] : 1);
      o.alpha = zl / (zl + zr);
    }
    out[i] = o;
  });
  long long five = 0, violations = 0;
  std::array<long long, 8> bins{};
  for (const auto& o : out) {
    five += o.localized;
    violations += o.stab_violation;
    if (o.localized && o.alpha > 0.1 && o.alpha < 0.9) {
      auto b = static_cast<std::size_t>((o.alpha - 0.1) / 0.1);
      bins[std::min<std::size_t>(b, 7)]++;
    }
  }
  double freq = static_cast<double>(five) / static_cast<double>(reps);
  bool all_bins = std::all_of(bins.begin(), bins.end(),
                              [](long long c) { return c > 0; });
  add_check(r, "five_site_frequency", freq >= 0.9, freq, ">= 0.90");
  add_check(r, "stabilized_range_at_least_five", violations == 0,
            static_cast<double>(violations), "no stabilized run below 5");
  add_check(r, "alpha_histogram_full_support", all_bins,
            static_cast<double>(*std::min_element(bins.begin(), bins.end())),
            "every width-0.1 bin of (0.1,0.9) populated");
  std::ostringstream csv;
  csv << "rep,range_size,stabilized,alpha\n";
  for (std::int64_t i = 0; i < reps; ++i)
    csv << i << "," << out[i].size_final << "," << (out[i].stabilized ? 1 : 0)
        << "," << csv_number(out[i].localized ? out[i].alpha : -1.0) << "\n";
  r.series.emplace_back("range_estimates.csv", csv.str());
  return r;
}

Report exp_volkov_dichotomy(const ExperimentConfig& cfg, std::int64_t reps,
                            std::int64_t steps) {
  Report r = base_report(cfg, reps, steps);
  Graph line = Graph::line();
  double tail = param(cfg, "tail_fraction", 0.1);
  {
    WeightFunction w = WeightFunction::power(0.0, 1.2);
    std::vector<char> two(reps);
    parallel_for(reps, cfg.parallel, [&](std::int64_t i) {
      Walker walker(line, w, Mode::vertex, 0,
                    substream(cfg.seed, cfg.id, i, "strong"));
      Trace t = walker.run(steps);
      two[i] = estimate_asymptotic_range(t, tail).size() == 2;
    });
    double freq = static_cast<double>(std::count(two.begin(), two.end(),
                                                 char(1))) /
                  static_cast<double>(reps);
    add_check(r, "strong_two_site_frequency", freq >= 0.99, freq, ">= 0.99");
  }
  {
    WeightFunction w = WeightFunction::power(0.0, 0.5);
    std::vector<char> grow(reps);
    parallel_for(reps, cfg.parallel, [&](std::int64_t i) {
      Walker walker(line, w, Mode::vertex, 0,
                    substream(cfg.seed, cfg.id, i, "weak"));
      Trace t = walker.run(steps);
      // The window estimate is noisy between adjacent checkpoints, so growth
      // is measured across the trailing decade: the final estimate must
      // exceed the one at the earliest dyadic checkpoint above steps/16.
      std::int64_t early = 1;
      while (early * 16 <= steps) early *= 2;
      auto first = tail_range_prefix(t, early, tail);
      auto full = estimate_asymptotic_range(t, tail);
      grow[i] = full.size() > 5 && full.size() > first.size();
    });
    double freq = static_cast<double>(std::count(grow.begin(), grow.end(),
                                                 char(1))) /
                  static_cast<double>(reps);
    add_check(r, "weak_growing_range_frequency", freq >= 0.95, freq,
              ">= 0.95");
  }
  return r;
}

Report exp_attracting_edge(const ExperimentConfig& cfg, std::int64_t reps,
                           std::int64_t steps) {
  Report r = base_report(cfg, reps, steps);
  WeightFunction w = WeightFunction::power(0.0, 2.0);
  double tail = param(cfg, "tail_fraction", 0.1);
  struct Setting {
    const char* name;
    Graph g;
    bool allow_odd_cycle;
  } settings[] = {
      {"line", Graph::line(), false},
      {"four_cycle", Graph::cycle(4), false},
      {"triangle", Graph::cycle(3), true},
  };
  for (const auto& s : settings) {
    std::vector<char> ok(reps);
    parallel_for(reps, cfg.parallel, [&](std::int64_t i) {
      Walker walker(s.g, w, Mode::edge, 0,
                    substream(cfg.seed, cfg.id, i, s.name));
      Trace t = walker.run(steps);
      std::size_t sz = tail_edge_set(t, tail).size();
      ok[i] = s.allow_odd_cycle ? (sz == 1 || sz == 3) : sz == 1;
    });
    double freq = static_cast<double>(std::count(ok.begin(), ok.end(),
                                                 char(1))) /
                  static_cast<double>(reps);
    if (s.allow_odd_cycle)
      add_check(r, "triangle_edge_or_odd_cycle", freq == 1.0, freq,
                "single edge or all three edges in 100% of runs");
    else
      add_check(r, std::string("single_edge_") + s.name, freq >= 0.99, freq,
                ">= 0.99");
  }
  return r;
}

Report exp_coupling_monotonicity(const ExperimentConfig& cfg,
                                 std::int64_t reps, std::int64_t steps) {
  Report r = base_report(cfg, reps, steps);
  struct Setting {
    const char* name;
    WeightFunction w;
  } settings[] = {
      {"linear", WeightFunction::power(0.0, 1.0)},
      {"quadratic", WeightFunction::power(0.0, 2.0)},
  };
  for (const auto& s : settings) {
    std::vector<char> ok(reps);
    parallel_for(reps, cfg.parallel, [&](std::int64_t i) {
      AlarmCollection alarms(substream(cfg.seed, cfg.id, i, s.name));
      auto pert = AlarmPerturbation::delay_return(0, 1);
      CoupledPair pair = run_coupled(alarms, pert, 0, steps, s.w);
      ok[i] = check_Eie(pair).holds;
    });
    long long bad = std::count(ok.begin(), ok.end(), char(0));
    add_check(r, std::string("no_violations_") + s.name, bad == 0,
              static_cast<double>(bad), "zero matched-index violations");
  }
  // Detector sanity: a hand-built pair (not produced by the coupling) whose
  // second crossing profile breaks the ordering must be flagged.
  CoupledPair fixture;
  fixture.base_trace.positions = {0, 1, 0, -1, 0};
  fixture.base_trace.times = {0, 1, 2, 3, 4};
  fixture.perturbed_trace.positions = {0, -1, 0, 1, 0};
  fixture.perturbed_trace.times = {0, 1, 2, 3, 4};
  EieResult res = check_Eie(fixture);
  add_check(r, "detector_flags_fixture",
            !res.holds && res.first_violation.has_value(),
            res.holds ? 0.0 : 1.0, "hand-built violation reported");
  return r;
}

Report exp_kendall_transform(const ExperimentConfig& cfg, std::int64_t reps,
                             std::int64_t steps) {
  Report r = base_report(cfg, reps, steps);
  auto n0 = static_cast<std::int64_t>(param(cfg, "n0", 50));
  std::vector<std::vector<double>> spacings(reps);
  std::vector<double> west(reps);
  parallel_for(reps, cfg.parallel, [&](std::int64_t i) {
    auto times =
        simulate_birth_process(n0, steps, substream(cfg.seed, cfg.id, i, "bp"));
    auto kt = kendall_transform(times, n0);
    spacings[i] = std::move(kt.spacings);
    west[i] = kt.w_estimate;
  });
  std::vector<double> pooled;
  pooled.reserve(static_cast<std::size_t>(reps * steps));
  for (const auto& s : spacings) pooled.insert(pooled.end(), s.begin(), s.end());
  auto ks_exp = stats::ks_statistic(pooled, stats::exp1_cdf);
  auto ks_gamma = stats::ks_statistic(
      west, [n0](double x) { return stats::gamma_cdf(static_cast<double>(n0), x); });
  add_check(r, "transformed_spacings_exponential", ks_exp.p > 0.01, ks_exp.p,
            "KS vs Exp(1), p > 0.01");
  add_check(r, "limit_estimates_gamma", ks_gamma.p > 0.01, ks_gamma.p,
            "KS vs Gamma(n0,1), p > 0.01");
  r.metrics["ks_d_spacings"] = ks_exp.d;
  r.metrics["ks_d_west"] = ks_gamma.d;
  std::ostringstream csv;
  csv << "rep,w_estimate\n";
  for (std::int64_t i = 0; i < reps; ++i)
    csv << i << "," << csv_number(west[i]) << "\n";
  r.series.emplace_back("limit_estimates.csv", csv.str());
  return r;
}

Report exp_martingale_means(const ExperimentConfig& cfg, std::int64_t reps,
                            std::int64_t steps) {
  Report r = base_report(cfg, reps, steps);
  // Urn weight n + 4 keeps every factor of the exponential martingale
  // positive on the whole lambda grid (lambda < W(1) = 5).
  WeightFunction wu = WeightFunction::power(4.0, 1.0);
  WeightFunction wv = WeightFunction::power(0.0, 1.0);
  Graph line = Graph::line();
  const std::vector<double> lambdas{0.5, 1.0, 2.0};
  const std::vector<std::int64_t> horizons{100, steps};

  struct RepOut {
    double a[2][3];
    double m[2];
    double yhat[2][2];
  };
  std::vector<RepOut> out(reps);
  parallel_for(reps, cfg.parallel, [&](std::int64_t i) {
    RepOut o{};
    UrnState urn(wu, 1, 1, 1.0, 1.0, substream(cfg.seed, cfg.id, i, "urn"));
    for (std::size_t h = 0; h < horizons.size(); ++h) {
      std::int64_t target = horizons[h];
      while (urn.step < target) step_w_urn(urn);
      for (std::size_t l = 0; l < lambdas.size(); ++l)
        o.a[h][l] = std::exp(
            urn_log_a(wu, lambdas[l], urn.z_plus(), urn.z_minus(), 1.0, 1.0));
      o.m[h] = urn_m(wu, urn.z_plus(), urn.z_minus(), 1.0, 1.0);
    }
    SiteStatsTracker tracker({0});
    StepObserver* obs[] = {&tracker};
    Walker walker(line, wv, Mode::vertex, 0,
                  substream(cfg.seed, cfg.id, i, "walk"));
    std::span<StepObserver* const> span(obs, 1);
    walker.run(horizons[0], span);
    SiteSnapshot s = tracker.current(0);
    o.yhat[0][0] = s.y_hat[0];
    o.yhat[0][1] = s.y_hat[1];
    for (std::int64_t n = horizons[0]; n < horizons[1]; ++n) walker.step(span);
    s = tracker.current(0);
    o.yhat[1][0] = s.y_hat[0];
    o.yhat[1][1] = s.y_hat[1];
    out[i] = o;
  });
  auto band_check = [&](const std::string& name, auto getter, double target) {
    std::vector<double> xs(reps);
    for (std::int64_t i = 0; i < reps; ++i) xs[i] = getter(out[i]);
    auto mv = stats::mean_variance(xs);
    double se = std::sqrt(mv.variance / static_cast<double>(reps));
    double dev = std::abs(mv.mean - target);
    add_check(r, name, dev <= 4.0 * se, dev,
              "empirical mean within 4 standard errors (" +
                  csv_number(4.0 * se) + ") of " + csv_number(target));
  };
  for (std::size_t h = 0; h < horizons.size(); ++h) {
    std::string suffix = "_n" + std::to_string(horizons[h]);
    for (std::size_t l = 0; l < lambdas.size(); ++l)
      band_check("exp_martingale_lambda" + csv_number(lambdas[l]) + suffix,
                 [h, l](const RepOut& o) { return o.a[h][l]; }, 1.0);
    band_check("linear_martingale" + suffix,
               [h](const RepOut& o) { return o.m[h]; }, 0.0);
    band_check("doob_residual_plus" + suffix,
               [h](const RepOut& o) { return o.yhat[h][0]; }, 0.0);
    band_check("doob_residual_minus" + suffix,
               [h](const RepOut& o) { return o.yhat[h][1]; }, 0.0);
  }
  return r;
}

Report exp_sellke_parity(const ExperimentConfig& cfg, std::int64_t reps,
                         std::int64_t steps) {
  Report r = base_report(cfg, reps, steps);
  AlternatingRule even;
  even.type = AlternatingRule::Type::geometric;
  even.scale = param(cfg, "even_scale", 1.0);
  even.base = param(cfg, "even_base", 4.0);
  AlternatingRule odd;  // constant 1
  WeightFunction w = WeightFunction::alternating(even, odd);
  Graph line = Graph::line();
  const std::int64_t n_short = 1000;
  const std::int64_t n_long = steps;

  std::vector<char> ok_short(reps), ok_long(reps);
  parallel_for(reps, cfg.parallel, [&](std::int64_t i) {
    Walker walker(line, w, Mode::edge, 0,
                  substream(cfg.seed, cfg.id, i, "walk"));
    char s = 1, l = 1;
    for (std::int64_t n = 1; n <= 2 * n_long; ++n) {
      walker.step();
      if (n % 2 == 0 && walker.state().position != 0) {
        if (n <= 2 * n_short) s = 0;
        l = 0;
        break;
      }
    }
    ok_short[i] = s;
    ok_long[i] = l;
  });
  long long succ_s = std::count(ok_short.begin(), ok_short.end(), char(1));
  long long succ_l = std::count(ok_long.begin(), ok_long.end(), char(1));
  double p_s = static_cast<double>(succ_s) / static_cast<double>(reps);
  double p_l = static_cast<double>(succ_l) / static_cast<double>(reps);
  auto ci = stats::wilson_interval(succ_l, reps, 0.99);
  add_check(r, "trap_probability_positive", ci.lo > 0.0, ci.lo,
            "99% Wilson lower bound > 0");
  add_check(r, "trap_probability_stable", std::abs(p_s - p_l) < 0.01,
            std::abs(p_s - p_l), "estimates at both horizons within 1%");
  r.metrics["p_short"] = p_s;
  r.metrics["p_long"] = p_l;
  return r;
}

Report exp_borel_cantelli_contrast(const ExperimentConfig& cfg,
                                   std::int64_t reps, std::int64_t steps) {
  Report r = base_report(cfg, reps, steps);
  WeightFunction w = WeightFunction::power(0.0, 0.5);
  Graph g = Graph::cycle(6);
  double tail = param(cfg, "tail_fraction", 0.1);
  std::vector<char> full(reps);
  parallel_for(reps, cfg.parallel, [&](std::int64_t i) {
    Walker walker(g, w, Mode::edge, 0,
                  substream(cfg.seed, cfg.id, i, "walk"));
    Trace t = walker.run(steps);
    full[i] = estimate_asymptotic_range(t, tail).size() == 6;
  });
  double freq = static_cast<double>(std::count(full.begin(), full.end(),
                                               char(1))) /
                static_cast<double>(reps);
  add_check(r, "all_vertices_in_tail_window", freq >= 0.99, freq, ">= 0.99");
  return r;
}

Report exp_predicate_suite(const ExperimentConfig& cfg, std::int64_t reps,
                           std::int64_t steps) {
  Report r = base_report(cfg, reps, steps);
  long long disagreements = 0, implication_violations = 0, accepted = 0;
  for (std::int64_t i = 0; i < reps; ++i) {
    Rng rng(substream(cfg.seed, cfg.id, i, "gen"));
    int m = 3 + static_cast<int>(rng.uniform() * 6.0);  // 3..8 vertices
    bool planted = rng.uniform() < 0.5;

    std::vector<std::tuple<Vertex, Vertex, double>> edges;
    std::vector<std::vector<Vertex>> parts;
    if (planted) {
      // Random complete multipartite graph, possibly with loops on
      // singleton parts; built through the flat edge list so the
      // recognizer is exercised independently of the constructor.
      std::vector<int> label(static_cast<std::size_t>(m));
      int d = 2 + static_cast<int>(rng.uniform() * 3.0);  // 2..4 parts
      for (int v = 0; v < m; ++v)
        label[static_cast<std::size_t>(v)] =
            v < d ? v : static_cast<int>(rng.uniform() * d);
      std::vector<std::vector<double>> a(
          static_cast<std::size_t>(d), std::vector<double>(
                                           static_cast<std::size_t>(d), 0.0));
      for (int p = 0; p < d; ++p)
        for (int q = 0; q < d; ++q) {
          double v = 0.5 + rng.uniform() * 1.5;
          a[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] = v;
          a[static_cast<std::size_t>(q)][static_cast<std::size_t>(p)] = v;
        }
      for (int u = 0; u < m; ++u)
        for (int v = u + 1; v < m; ++v)
          if (label[static_cast<std::size_t>(u)] !=
              label[static_cast<std::size_t>(v)])
            edges.emplace_back(u, v,
                               a[static_cast<std::size_t>(
                                   label[static_cast<std::size_t>(u)])][
                                   static_cast<std::size_t>(
                                       label[static_cast<std::size_t>(v)])]);
      // loops on singleton parts with probability 0.3
      std::vector<int> part_size(static_cast<std::size_t>(d), 0);
      for (int v = 0; v < m; ++v)
        part_size[static_cast<std::size_t>(
            label[static_cast<std::size_t>(v)])]++;
      for (int v = 0; v < m; ++v)
        if (part_size[static_cast<std::size_t>(
                label[static_cast<std::size_t>(v)])] == 1 &&
            rng.uniform() < 0.3)
          edges.emplace_back(v, v, 0.5 + rng.uniform());
    } else {
      for (int u = 0; u < m; ++u)
        for (int v = u + 1; v < m; ++v)
          if (rng.uniform() < 0.5)
            edges.emplace_back(u, v, 0.5 + rng.uniform() * 1.5);
    }
    if (edges.empty()) edges.emplace_back(0, 1, 1.0);
    Graph g = Graph::from_edges(edges);
    std::set<Vertex> vset;
    for (const auto& [u, v, a] : edges) {
      vset.insert(u);
      vset.insert(v);
    }
    std::vector<Vertex> s(vset.begin(), vset.end());
    auto fast = is_complete_d_partite_with_loops(g, s);
    auto slow = is_complete_d_partite_brute_force(g, s);
    if (fast.ok != slow.ok) ++disagreements;
    if (planted && !slow.ok) ++disagreements;  // planted instances must pass

    // Stability predicate on an equal-mass d-partite equilibrium with one
    // boundary vertex hanging off the first part.
    int d = 3 + static_cast<int>(rng.uniform() * 2.0);  // 3..4 parts
    std::vector<std::tuple<Vertex, Vertex, double>> e2;
    for (int u = 0; u < d; ++u)
      for (int v = u + 1; v < d; ++v) e2.emplace_back(u, v, 1.0);
    e2.emplace_back(d, 0, 1.0);  // boundary vertex d attached to vertex 0
    Graph g2 = Graph::from_edges(e2);
    std::map<Vertex, double> xs;
    for (int v = 0; v < d; ++v) xs[v] = 1.0 / d;
    OccupationVector x(xs);
    if (check_px(g2, x)) {
      ++accepted;
      auto supp = x.support();
      if (!is_complete_d_partite_with_loops(g2, supp).ok)
        ++implication_violations;
    }
  }
  add_check(r, "recognizer_matches_bruteforce", disagreements == 0,
            static_cast<double>(disagreements), "no disagreements");
  add_check(r, "stability_implies_multipartite_support",
            implication_violations == 0 && accepted > 0,
            static_cast<double>(implication_violations),
            "implication never violated on accepted instances");
  r.metrics["accepted_instances"] = static_cast<double>(accepted);
  (void)steps;
  return r;
}

struct Entry {
  ExperimentInfo info;
  Report (*fn)(const ExperimentConfig&, std::int64_t, std::int64_t);
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = {
      {{"exact_identities",
        "Path-functional identities hold to accumulation error on "
        "linearly-reinforced vertex walks",
        50, 100000},
       exp_exact_identities},
      {{"oracle_equivalence",
        "Prefix laws of walks, urns and their event-driven embeddings match "
        "exact enumeration",
        100000, 4},
       exp_oracle_equivalence},
      {{"polya_beta_limit",
        "Terminal colour fraction of the linear symmetric urn is uniform",
        2000, 10000},
       exp_polya_beta_limit},
      {{"weak_reinforcement_ratio",
        "Sublinear-weight urns converge to the predicted propensity-ratio "
        "power",
        20, 1000000},
       exp_weak_reinforcement_ratio},
      {{"strong_monopoly",
        "Superlinear urns end with a single colour drawn forever",
        1000, 10000},
       exp_strong_monopoly},
      {{"vrrw_five_site",
        "Linearly-reinforced vertex walks localize on five sites",
        200, 1000000},
       exp_vrrw_five_site},
      {{"volkov_dichotomy",
        "Vertex walks: two-site trap for superlinear weights, growing range "
        "for sublinear",
        1000, 100000},
       exp_volkov_dichotomy},
      {{"attracting_edge",
        "Superlinear edge walks end on one edge; triangles allow the odd "
        "cycle",
        1000, 100000},
       exp_attracting_edge},
      {{"coupling_monotonicity",
        "Delaying a leftward alarm never reorders matched crossing counts",
        1000, 10000},
       exp_coupling_monotonicity},
      {{"kendall_transform",
        "Log time change of a pure birth process yields a unit Poisson "
        "process and Gamma limits",
        1000, 500},
       exp_kendall_transform},
      {{"martingale_means",
        "Exponential and linear urn martingales and walk Doob residuals keep "
        "their means",
        10000, 1000},
       exp_martingale_means},
      {{"sellke_parity",
        "Alternating weights trap the edge walk at the origin with positive "
        "probability",
        10000, 10000},
       exp_sellke_parity},
      {{"borel_cantelli_contrast",
        "Square-root weights on a 6-cycle keep every vertex in the tail "
        "window",
        1000, 10000},
       exp_borel_cantelli_contrast},
      {{"predicate_suite",
        "Stability predicate and multipartite recognizer agree with "
        "brute-force oracles",
        1000, 0},
       exp_predicate_suite},
  };
  return table;
}

}  // namespace

const std::vector<ExperimentInfo>& experiment_catalog() {
  static const std::vector<ExperimentInfo> infos = [] {
    std::vector<ExperimentInfo> v;
    for (const auto& e : entries()) v.push_back(e.info);
    return v;
  }();
  return infos;
}

Report run_experiment(const ExperimentConfig& cfg) {
  if (cfg.parallel < 1)
    throw std::invalid_argument("parallel degree must be >= 1");
  if (cfg.format != "json" && cfg.format != "csv" && cfg.format != "both")
    throw std::invalid_argument("format must be json, csv or both");
  for (const auto& e : entries()) {
    if (e.info.id != cfg.id) continue;
    std::int64_t reps = cfg.reps > 0 ? cfg.reps : e.info.default_reps;
    std::int64_t steps = cfg.steps > 0 ? cfg.steps : e.info.default_steps;
    Report r = e.fn(cfg, reps, steps);
    r.pass = std::all_of(r.checks.begin(), r.checks.end(),
                         [](const CheckResult& c) { return c.pass; });
    return r;
  }
  throw std::invalid_argument("unknown experiment id: " + cfg.id);
}

std::string Report::to_json() const {
  json j;
  j["experiment"] = experiment_id;
  j["seed"] = seed;
  j["reps"] = reps;
  j["steps"] = steps;
  j["pass"] = pass;
  j["checks"] = json::array();
  for (const auto& c : checks)
    j["checks"].push_back({{"name", c.name},
                           {"pass", c.pass},
                           {"value", c.value},
                           {"threshold", c.threshold}});
  j["metrics"] = json::object();
  for (const auto& [k, v] : metrics) j["metrics"][k] = v;
  j["series"] = json::array();
  for (const auto& [name, body] : series) j["series"].push_back(name);
  return j.dump(2) + "\n";
}

ExperimentConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config parse error: ") +
                                e.what());
  }
  ExperimentConfig cfg;
  try {
    cfg.id = j.at("experiment").get<std::string>();
    if (j.count("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.count("reps")) cfg.reps = j["reps"].get<std::int64_t>();
    if (j.count("steps")) cfg.steps = j["steps"].get<std::int64_t>();
    if (j.count("parallel")) cfg.parallel = j["parallel"].get<int>();
    if (j.count("format")) cfg.format = j["format"].get<std::string>();
    if (j.count("params"))
      for (const auto& [k, v] : j["params"].items())
        cfg.params[k] = v.get<double>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config field error: ") +
                                e.what());
  }
  return cfg;
}

std::string config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["experiment"] = cfg.id;
  j["seed"] = cfg.seed;
  j["reps"] = cfg.reps;
  j["steps"] = cfg.steps;
  j["parallel"] = cfg.parallel;
  j["format"] = cfg.format;
  j["params"] = json::object();
  for (const auto& [k, v] : cfg.params) j["params"][k] = v;
  return j.dump(2) + "\n";
}

void parallel_for(std::int64_t n, int threads,
                  const std::function<void(std::int64_t)>& body) {
  if (threads <= 1 || n < 2) {
    for (std::int64_t i = 0; i < n; ++i) body(i);
    return;
  }
  int t = static_cast<int>(std::min<std::int64_t>(threads, n));
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(t));
  for (int w = 0; w < t; ++w)
    workers.emplace_back([&, w] {
      try {
        for (std::int64_t i = w; i < n; i += t) body(i);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  for (auto& th : workers) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace sirw
