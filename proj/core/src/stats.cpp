#include "sirw/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sirw::stats {

namespace {

// Series expansion of P(a,x), valid for x < a+1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a,x), valid for x >= a+1 (Lentz's method).
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    double an = -static_cast<double>(i) * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_p(double a, double x) {
  if (a <= 0.0) throw std::invalid_argument("gamma_p: shape must be positive");
  if (x <= 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
  if (a <= 0.0) throw std::invalid_argument("gamma_q: shape must be positive");
  if (x <= 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double uniform01_cdf(double x) { return std::clamp(x, 0.0, 1.0); }

double exp1_cdf(double x) { return x <= 0.0 ? 0.0 : -std::expm1(-x); }

double gamma_cdf(double shape, double x) { return gamma_p(shape, x); }

namespace {

// Asymptotic KS survival function Q_KS(lambda) = 2 sum (-1)^{k-1} e^{-2k^2 l^2}.
double ks_q(double lambda) {
  if (lambda < 1e-8) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += sign * term;
    if (term < 1e-12) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

}  // namespace

KsResult ks_statistic(std::vector<double> samples,
                      const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("ks_statistic: no samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double f = cdf(samples[i]);
    d = std::max(d, f - static_cast<double>(i) / n);
    d = std::max(d, static_cast<double>(i + 1) / n - f);
  }
  double sn = std::sqrt(n);
  double p = ks_q((sn + 0.12 + 0.11 / sn) * d);
  return {d, p};
}

ChiSquareResult chi_square(std::span<const long long> observed,
                           std::span<const double> expected_probs) {
  if (observed.size() != expected_probs.size() || observed.empty())
    throw std::invalid_argument("chi_square: mismatched cells");
  long long total = 0;
  for (long long o : observed) total += o;
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    double e = expected_probs[i] * static_cast<double>(total);
    if (e <= 0.0) throw std::invalid_argument("chi_square: zero expected cell");
    double diff = static_cast<double>(observed[i]) - e;
    stat += diff * diff / e;
  }
  double dof = static_cast<double>(observed.size()) - 1.0;
  return {stat, gamma_q(dof / 2.0, stat / 2.0), dof};
}

ChiSquareResult chi_square_two_sample(std::span<const long long> a,
                                      std::span<const long long> b) {
  if (a.size() != b.size() || a.empty())
    throw std::invalid_argument("chi_square_two_sample: mismatched cells");
  double na = 0.0, nb = 0.0;
  for (long long x : a) na += static_cast<double>(x);
  for (long long x : b) nb += static_cast<double>(x);
  double stat = 0.0;
  double dof = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double pooled = static_cast<double>(a[i] + b[i]);
    if (pooled == 0.0) continue;
    double ea = pooled * na / (na + nb);
    double eb = pooled * nb / (na + nb);
    double da = static_cast<double>(a[i]) - ea;
    double db = static_cast<double>(b[i]) - eb;
    stat += da * da / ea + db * db / eb;
    dof += 1.0;
  }
  dof -= 1.0;
  if (dof <= 0.0) return {stat, 1.0, 0.0};
  return {stat, gamma_q(dof / 2.0, stat / 2.0), dof};
}

Interval wilson_interval(long long successes, long long trials,
                         double confidence) {
  if (trials <= 0) throw std::invalid_argument("wilson_interval: no trials");
  if (successes < 0 || successes > trials)
    throw std::invalid_argument("wilson_interval: bad successes");
  // z from the normal quantile via bisection on normal_cdf.
  double alpha = (1.0 - confidence) / 2.0;
  double lo = 0.0, hi = 10.0;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (normal_cdf(-mid) > alpha)
      lo = mid;
    else
      hi = mid;
  }
  double z = 0.5 * (lo + hi);
  double n = static_cast<double>(trials);
  double p = static_cast<double>(successes) / n;
  double z2 = z * z;
  double denom = 1.0 + z2 / n;
  double center = (p + z2 / (2.0 * n)) / denom;
  double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

MeanVar mean_variance(std::span<const double> xs) {
  KahanSum s;
  for (double x : xs) s.add(x);
  double mean = s.value() / static_cast<double>(xs.size());
  KahanSum sq;
  for (double x : xs) sq.add((x - mean) * (x - mean));
  double var = xs.size() > 1
                   ? sq.value() / static_cast<double>(xs.size() - 1)
                   : 0.0;
  return {mean, var, static_cast<long long>(xs.size())};
}

}  // namespace sirw::stats
