#include <stdexcept>

#include "doctest.h"
#include "json.hpp"
#include "sirw/experiments.hpp"

using namespace sirw;

TEST_CASE("catalog lists the expected experiments") {
  const auto& cat = experiment_catalog();
  auto has = [&](const std::string& id) {
    for (const auto& e : cat)
      if (e.id == id) return true;
    return false;
  };
  CHECK(cat.size() == 14);
  CHECK(has("polya_beta_limit"));
  CHECK(has("coupling_monotonicity"));
  CHECK(has("exact_identities"));
  CHECK(has("martingale_means"));
  for (const auto& e : cat) {
    CHECK(!e.description.empty());
    CHECK(e.default_reps > 0);
  }
}

TEST_CASE("every catalog id round-trips through config serialization") {
  for (const auto& e : experiment_catalog()) {
    ExperimentConfig cfg;
    cfg.id = e.id;
    cfg.seed = 99;
    cfg.params["tail_fraction"] = 0.1;
    ExperimentConfig back = config_from_json(config_to_json(cfg));
    CHECK(back.id == cfg.id);
    CHECK(back.seed == cfg.seed);
    CHECK(back.params.at("tail_fraction") == doctest::Approx(0.1));
  }
}

TEST_CASE("invalid configs are rejected") {
  CHECK_THROWS_AS((void)config_from_json("not json"), std::invalid_argument);
  CHECK_THROWS_AS((void)config_from_json("{}"), std::invalid_argument);
  ExperimentConfig cfg;
  cfg.id = "no_such_experiment";
  CHECK_THROWS_AS((void)run_experiment(cfg), std::invalid_argument);
  cfg.id = "polya_beta_limit";
  cfg.format = "xml";
  CHECK_THROWS_AS((void)run_experiment(cfg), std::invalid_argument);
  cfg.format = "json";
  cfg.parallel = 0;
  CHECK_THROWS_AS((void)run_experiment(cfg), std::invalid_argument);
}

TEST_CASE("small run produces a structured report") {
  ExperimentConfig cfg;
  cfg.id = "exact_identities";
  cfg.seed = 5;
  cfg.reps = 2;
  cfg.steps = 500;
  Report r = run_experiment(cfg);
  CHECK(r.experiment_id == "exact_identities");
  CHECK(r.reps == 2);
  CHECK(r.steps == 500);
  CHECK(!r.checks.empty());
  for (const auto& c : r.checks) CHECK(!c.threshold.empty());
  auto j = nlohmann::json::parse(r.to_json());
  CHECK(j["experiment"] == "exact_identities");
  CHECK(j["seed"] == 5);
  CHECK(j.contains("checks"));
}

TEST_CASE("reports are byte-identical across reruns and parallelism") {
  ExperimentConfig cfg;
  cfg.id = "polya_beta_limit";
  cfg.seed = 31;
  cfg.reps = 64;
  cfg.steps = 400;
  cfg.parallel = 1;
  Report a = run_experiment(cfg);
  Report b = run_experiment(cfg);
  cfg.parallel = 4;
  Report c = run_experiment(cfg);
  CHECK(a.to_json() == b.to_json());
  CHECK(a.to_json() == c.to_json());
  REQUIRE(a.series.size() == 1);
  CHECK(a.series[0].second == c.series[0].second);
}

TEST_CASE("seed changes the report") {
  ExperimentConfig cfg;
  cfg.id = "polya_beta_limit";
  cfg.reps = 32;
  cfg.steps = 200;
  cfg.seed = 1;
  Report a = run_experiment(cfg);
  cfg.seed = 2;
  Report b = run_experiment(cfg);
  CHECK(a.series[0].second != b.series[0].second);
}

TEST_CASE("parallel_for covers every index once") {
  std::vector<int> hits(1000, 0);
  parallel_for(1000, 4, [&](std::int64_t i) { hits[i]++; });
  for (int h : hits) CHECK(h == 1);
  parallel_for(0, 4, [&](std::int64_t) { CHECK(false); });
}
