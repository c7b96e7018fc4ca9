#include <cmath>
#include <vector>

#include "doctest.h"
#include "sirw/stats.hpp"

using namespace sirw::stats;

TEST_CASE("ks statistic on a single sample") {
  auto r = ks_statistic({0.5}, uniform01_cdf);
  CHECK(r.d == doctest::Approx(0.5));
}

TEST_CASE("ks statistic on exact quantiles is small") {
  const int m = 99;
  std::vector<double> xs;
  for (int k = 1; k <= m; ++k) xs.push_back(static_cast<double>(k) / (m + 1));
  auto r = ks_statistic(xs, uniform01_cdf);
  CHECK(r.d <= 1.0 / (m + 1) + 1e-12);
  CHECK(r.p > 0.99);
}

TEST_CASE("ks against exp(1) and gamma cdfs") {
  CHECK(exp1_cdf(0.0) == doctest::Approx(0.0));
  CHECK(exp1_cdf(1.0) == doctest::Approx(1.0 - std::exp(-1.0)));
  // Gamma(1,1) is Exp(1).
  CHECK(gamma_cdf(1.0, 2.0) == doctest::Approx(exp1_cdf(2.0)).epsilon(1e-9));
  // Gamma(50,1) median near 49.67.
  CHECK(gamma_cdf(50.0, 49.67) == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("chi-square exact proportions give statistic zero") {
  std::vector<long long> obs{50, 50};
  std::vector<double> probs{0.5, 0.5};
  auto r = chi_square(obs, probs);
  CHECK(r.statistic == doctest::Approx(0.0));
  CHECK(r.p == doctest::Approx(1.0));
}

TEST_CASE("chi-square hand value") {
  std::vector<long long> obs{60, 40};
  std::vector<double> probs{0.5, 0.5};
  auto r = chi_square(obs, probs);
  CHECK(r.statistic == doctest::Approx(4.0));
  CHECK(r.dof == doctest::Approx(1.0));
  // P(chi2_1 > 4) = 2 (1 - Phi(2)) ~ 0.0455
  CHECK(r.p == doctest::Approx(0.0455).epsilon(0.01));
}

TEST_CASE("wilson interval endpoints") {
  CHECK(wilson_interval(0, 20, 0.95).lo == doctest::Approx(0.0));
  CHECK(wilson_interval(20, 20, 0.95).hi == doctest::Approx(1.0));
  auto ci = wilson_interval(50, 100, 0.95);
  CHECK(ci.lo == doctest::Approx(0.404).epsilon(0.002));
  CHECK(ci.hi == doctest::Approx(0.596).epsilon(0.002));
  // Independent recomputation of the closed form.
  double z = 1.959963984540054;
  double n = 100, p = 0.5, z2 = z * z;
  double center = (p + z2 / (2 * n)) / (1 + z2 / n);
  double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) /
                (1 + z2 / n);
  CHECK(ci.lo == doctest::Approx(center - half).epsilon(1e-9));
  CHECK(ci.hi == doctest::Approx(center + half).epsilon(1e-9));
}

TEST_CASE("normal and incomplete gamma basics") {
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5));
  CHECK(normal_cdf(1.96) == doctest::Approx(0.975).epsilon(1e-3));
  CHECK(gamma_p(1.0, 1.0) == doctest::Approx(1.0 - std::exp(-1.0)));
  CHECK(gamma_p(2.5, 1e-12) == doctest::Approx(0.0));
  CHECK(gamma_q(0.5, 30.0) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("mean and variance") {
  std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
  auto mv = mean_variance(xs);
  CHECK(mv.mean == doctest::Approx(2.5));
  CHECK(mv.variance == doctest::Approx(5.0 / 3.0));
  CHECK(mv.n == 4);
}

TEST_CASE("kahan sum keeps tiny increments") {
  KahanSum s;
  s.add(1.0);
  for (int i = 0; i < 1000000; ++i) s.add(1e-16);
  CHECK(s.value() == doctest::Approx(1.0 + 1e-10).epsilon(1e-12));
}
