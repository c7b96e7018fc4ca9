#ifndef SIRW_STATS_HPP
#define SIRW_STATS_HPP

#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace sirw::stats {

// Regularized incomplete gamma functions P(a,x) and Q(a,x) = 1 - P(a,x).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

double normal_cdf(double x);

// CDFs used by the experiment suite.
double uniform01_cdf(double x);
double exp1_cdf(double x);
double gamma_cdf(double shape, double x);  // scale 1

struct KsResult {
  double d;
  double p;
};

// One-sample Kolmogorov-Smirnov with asymptotic p-value.
KsResult ks_statistic(std::vector<double> samples,
                      const std::function<double(double)>& cdf);

struct ChiSquareResult {
  double statistic;
  double p;
  double dof;
};

// Pearson chi-square of observed counts against expected cell probabilities.
ChiSquareResult chi_square(std::span<const long long> observed,
                           std::span<const double> expected_probs);

// Two-sample homogeneity chi-square on matched count vectors.
ChiSquareResult chi_square_two_sample(std::span<const long long> a,
                                      std::span<const long long> b);

struct Interval {
  double lo;
  double hi;
};

Interval wilson_interval(long long successes, long long trials,
                         double confidence);

// Kahan-compensated running sum.
class KahanSum {
 public:
  void add(double x) {
    double y = x - c_;
    double t = sum_ + y;
    c_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double c_ = 0.0;
};

struct MeanVar {
  double mean;
  double variance;  // unbiased
  long long n;
};

MeanVar mean_variance(std::span<const double> xs);

}  // namespace sirw::stats

#endif  // SIRW_STATS_HPP
