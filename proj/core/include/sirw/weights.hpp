#ifndef SIRW_WEIGHTS_HPP
#define SIRW_WEIGHTS_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "sirw/stats.hpp"

namespace sirw {

// One parity branch of an alternating weight: either a constant, or
// geometric in the index within the parity class (n = 2k or 2k+1 -> scale*base^k).
struct AlternatingRule {
  enum class Type { constant, geometric };
  Type type = Type::constant;
  double value = 1.0;  // constant
  double scale = 1.0;  // geometric
  double base = 2.0;   // geometric
  double eval(std::int64_t class_index) const;
};

enum class Summability { yes, no, undetermined };

// Reinforcement weight W(n), n >= 1, W(n) > 0.
class WeightFunction {
 public:
  enum class Kind { power, table, alternating };

  static WeightFunction power(double delta, double rho);
  static WeightFunction table(std::vector<double> values);
  static WeightFunction alternating(AlternatingRule even, AlternatingRule odd);

  double operator()(std::int64_t n) const;

  Kind kind() const { return kind_; }
  double delta() const { return delta_; }
  double rho() const { return rho_; }

  bool nondecreasing(std::int64_t probe_horizon = 1024) const;

  // Condition (H): sum 1/W(k) < infinity. Analytic for the power kind,
  // probed numerically otherwise.
  Summability reciprocally_summable(std::int64_t probe_horizon = 100000) const;
  // Per-parity answers for the alternating kind.
  Summability even_reciprocally_summable() const;
  Summability odd_reciprocally_summable() const;

 private:
  WeightFunction() = default;
  Kind kind_ = Kind::power;
  double delta_ = 0.0;
  double rho_ = 1.0;
  std::vector<double> table_;
  AlternatingRule even_, odd_;
};

// Direct-summation derived sequences, with the paper's n=1 conventions
// (all empty sums are 0).
double wstar(const WeightFunction& w, std::int64_t n);       // sum 1/W(k), k<n
double what(const WeightFunction& w, std::int64_t n);        // sum 1/W(k)^2
double wtilde_log(const WeightFunction& w, double lambda, std::int64_t n);
double harmonic(std::int64_t n);                             // sum 1/k, k<n

// Incremental prefix-sum cache over f(k), k >= 1, Kahan-compensated.
// value(n) returns sum_{k=1}^{n-1} f(k); extending is O(delta n).
class PrefixSums {
 public:
  template <typename F>
  explicit PrefixSums(F f) : f_(std::move(f)) {}
  double value(std::int64_t n);

 private:
  std::function<double(std::int64_t)> f_;
  std::vector<double> cache_{0.0};  // cache_[i] = sum over k < i+1
  stats::KahanSum running_;
};

// The caches a per-simulation diagnostic needs: W*, What, h and log-Wtilde on
// a lambda grid, each O(1) per step when counts grow by single increments.
class WeightCaches {
 public:
  WeightCaches(const WeightFunction& w, std::vector<double> lambda_grid);
  double wstar(std::int64_t n) { return wstar_.value(n); }
  double what(std::int64_t n) { return what_.value(n); }
  double harmonic(std::int64_t n) { return h_.value(n); }
  double wtilde_log(std::size_t lambda_index, std::int64_t n) {
    return wtilde_[lambda_index]->value(n);
  }
  const std::vector<double>& lambda_grid() const { return lambdas_; }

 private:
  std::vector<double> lambdas_;
  PrefixSums wstar_, what_, h_;
  std::vector<std::unique_ptr<PrefixSums>> wtilde_;
};

}  // namespace sirw

#endif  // SIRW_WEIGHTS_HPP
