#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "sirw/weights.hpp"

using namespace sirw;

TEST_CASE("power weights evaluate (n + delta)^rho") {
  CHECK(WeightFunction::power(0, 1)(5) == doctest::Approx(5.0));
  CHECK(WeightFunction::power(1, 2)(3) == doctest::Approx(16.0));
  CHECK(WeightFunction::power(0, 0.5)(4) == doctest::Approx(2.0));
  CHECK(WeightFunction::power(0, -1)(4) == doctest::Approx(0.25));
}

TEST_CASE("table weights look up stored values") {
  auto w = WeightFunction::table({2.0, 3.0, 5.0});
  CHECK(w(1) == doctest::Approx(2.0));
  CHECK(w(3) == doctest::Approx(5.0));
}

TEST_CASE("alternating weights branch on parity") {
  AlternatingRule even;
  even.type = AlternatingRule::Type::geometric;
  even.scale = 1.0;
  even.base = 4.0;
  AlternatingRule odd;  // constant 1
  auto w = WeightFunction::alternating(even, odd);
  CHECK(w(1) == doctest::Approx(1.0));
  CHECK(w(3) == doctest::Approx(1.0));
  CHECK(w(2) == doctest::Approx(4.0));
  CHECK(w(4) == doctest::Approx(16.0));
}

TEST_CASE("nondecreasing probe") {
  CHECK(WeightFunction::power(0, 1).nondecreasing());
  CHECK(WeightFunction::power(0, 2).nondecreasing());
  CHECK_FALSE(WeightFunction::power(0, -1).nondecreasing());
  CHECK_FALSE(WeightFunction::table({3.0, 2.0, 1.0}).nondecreasing());
}

TEST_CASE("reciprocal summability of power weights") {
  CHECK(WeightFunction::power(0, 2).reciprocally_summable() ==
        Summability::yes);
  CHECK(WeightFunction::power(0, 1).reciprocally_summable() == Summability::no);
  CHECK(WeightFunction::power(0, 0.5).reciprocally_summable() ==
        Summability::no);
  CHECK(WeightFunction::power(0, 1.0001).reciprocally_summable() ==
        Summability::yes);
}

TEST_CASE("alternating summability splits by parity") {
  AlternatingRule even;
  even.type = AlternatingRule::Type::geometric;
  even.base = 4.0;
  AlternatingRule odd;
  auto w = WeightFunction::alternating(even, odd);
  CHECK(w.even_reciprocally_summable() == Summability::yes);
  CHECK(w.odd_reciprocally_summable() == Summability::no);
}

TEST_CASE("prefix sequences use the empty-sum convention") {
  auto w = WeightFunction::power(0, 1);
  CHECK(wstar(w, 1) == doctest::Approx(0.0));
  CHECK(wstar(w, 4) == doctest::Approx(1.0 + 0.5 + 1.0 / 3.0));
  CHECK(what(w, 3) == doctest::Approx(1.0 + 0.25));
  CHECK(harmonic(1) == doctest::Approx(0.0));
  CHECK(harmonic(4) == doctest::Approx(1.0 + 0.5 + 1.0 / 3.0));
}

TEST_CASE("wtilde log products") {
  auto w = WeightFunction::power(0, 1);
  CHECK(wtilde_log(w, 0.5, 1) == doctest::Approx(0.0));
  CHECK(wtilde_log(w, 1.0, 3) ==
        doctest::Approx(std::log(2.0) + std::log(1.5)));
  // Negative lambda is allowed while the factors stay positive...
  CHECK(wtilde_log(w, -0.5, 2) == doctest::Approx(std::log(0.5)));
  // ...and rejected once a factor would hit zero or below.
  CHECK_THROWS_AS((void)wtilde_log(w, -1.0, 2), std::domain_error);
}

TEST_CASE("prefix sums cache matches direct summation") {
  PrefixSums ps([](std::int64_t k) { return 1.0 / (k * k); });
  double direct = 0;
  for (std::int64_t n = 1; n <= 50; ++n) {
    CHECK(ps.value(n) == doctest::Approx(direct).epsilon(1e-14));
    direct += 1.0 / (n * n);
  }
  // Non-monotone access goes through the cache.
  CHECK(ps.value(10) == doctest::Approx(ps.value(10)));
}

TEST_CASE("weight caches agree with free functions") {
  auto w = WeightFunction::power(4, 1);
  WeightCaches c(w, {0.5, 1.0});
  for (std::int64_t n : {1, 2, 7, 20}) {
    CHECK(c.wstar(n) == doctest::Approx(wstar(w, n)));
    CHECK(c.what(n) == doctest::Approx(what(w, n)));
    CHECK(c.harmonic(n) == doctest::Approx(harmonic(n)));
    CHECK(c.wtilde_log(1, n) == doctest::Approx(wtilde_log(w, 1.0, n)));
  }
}
