#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "sirw/urn.hpp"

using namespace sirw;

TEST_CASE("pick probability follows the weighted counts") {
  WeightFunction w = WeightFunction::power(0, 1);
  UrnState a(w, 1, 1, 1.0, 1.0, 1);
  CHECK(prob_pick_plus(a) == doctest::Approx(0.5));
  UrnState b(w, 2, 1, 1.0, 1.0, 1);
  CHECK(prob_pick_plus(b) == doctest::Approx(2.0 / 3.0));
  UrnState c(w, 1, 1, 4.0, 1.0, 1);
  CHECK(prob_pick_plus(c) == doctest::Approx(0.8));
  WeightFunction w2 = WeightFunction::power(0, 2);
  UrnState d(w2, 3, 1, 1.0, 1.0, 1);
  CHECK(prob_pick_plus(d) == doctest::Approx(0.9));
}

TEST_CASE("urn steps add exactly one ball") {
  WeightFunction w = WeightFunction::power(0, 1);
  UrnState urn(w, 1, 1, 1.0, 1.0, 17);
  for (int i = 0; i < 100; ++i) {
    int pick = step_w_urn(urn);
    CHECK((pick == 1 || pick == -1));
  }
  CHECK(urn.z_plus() + urn.z_minus() == 102);
  CHECK(urn.step == 100);
}

TEST_CASE("friedman integer payoff adds deterministically") {
  WeightFunction w = WeightFunction::power(0, 1);
  UrnState urn(w, 1, 1, 1.0, 1.0, 3);
  std::int64_t before = urn.z_plus() + urn.z_minus();
  step_friedman(urn, [](int) { return 2.0; });
  CHECK(urn.z_plus() + urn.z_minus() == before + 2);
}

TEST_CASE("friedman fractional payoff randomizes between the neighbors") {
  WeightFunction w = WeightFunction::power(0, 1);
  UrnState urn(w, 1, 1, 1.0, 1.0, 11);
  std::int64_t before = urn.z_plus() + urn.z_minus();
  const int n = 20000;
  for (int i = 0; i < n; ++i) step_friedman(urn, [](int) { return 1.5; });
  double mean =
      static_cast<double>(urn.z_plus() + urn.z_minus() - before) / n;
  CHECK(mean == doctest::Approx(1.5).epsilon(0.01));
}

TEST_CASE("friedman rejects non-positive payoffs") {
  WeightFunction w = WeightFunction::power(0, 1);
  UrnState urn(w, 1, 1, 1.0, 1.0, 3);
  CHECK_THROWS_AS(step_friedman(urn, [](int) { return 0.0; }),
                  std::invalid_argument);
}

TEST_CASE("history keeps dyadic checkpoints plus endpoint") {
  WeightFunction w = WeightFunction::power(0, 1);
  UrnState urn(w, 1, 1, 1.0, 1.0, 23);
  UrnHistory h = run_urn_to(urn, 100);
  REQUIRE(!h.checkpoints.empty());
  CHECK(h.checkpoints.front().step == 0);
  CHECK(h.checkpoints.back().step == 100);
  for (const auto& c : h.checkpoints)
    CHECK(c.z_plus + c.z_minus == c.step + 2);
}

TEST_CASE("monopoly detector on synthetic histories") {
  UrnHistory frozen;
  frozen.checkpoints = {{0, 1, 1}, {64, 60, 6}, {128, 124, 6}};
  auto r = detect_monopoly(frozen);
  REQUIRE(r.has_value());
  CHECK(*r == 1);

  UrnHistory frozen_plus;
  frozen_plus.checkpoints = {{0, 1, 1}, {64, 3, 63}, {128, 3, 127}};
  auto r2 = detect_monopoly(frozen_plus);
  REQUIRE(r2.has_value());
  CHECK(*r2 == -1);

  UrnHistory mixed;
  mixed.checkpoints = {{0, 1, 1}, {64, 33, 33}, {128, 66, 64}};
  CHECK_FALSE(detect_monopoly(mixed).has_value());
}

TEST_CASE("superlinear urns reach monopoly quickly") {
  WeightFunction w = WeightFunction::power(0, 2);
  int monopolies = 0;
  for (int rep = 0; rep < 50; ++rep) {
    UrnState urn(w, 1, 1, 1.0, 1.0, derive_key(1234, {(std::uint64_t)rep}));
    UrnHistory h = run_urn_to(urn, 2000);
    monopolies += detect_monopoly(h).has_value();
  }
  CHECK(monopolies >= 45);
}
