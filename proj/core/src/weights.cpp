#include "sirw/weights.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace sirw {

double AlternatingRule::eval(std::int64_t class_index) const {
  switch (type) {
    case Type::constant:
      return value;
    case Type::geometric: {
      // Clamped so that transition normalizations over a bounded degree stay
      // finite; by then the clamped option dominates any unclamped one anyway.
      constexpr double kCap = 1e300;
      double v = scale * std::pow(base, static_cast<double>(class_index));
      return v < kCap ? v : kCap;
    }
  }
  throw std::logic_error("AlternatingRule: bad type");
}

WeightFunction WeightFunction::power(double delta, double rho) {
  if (delta <= -1.0)
    throw std::invalid_argument("WeightFunction::power: delta must be > -1");
  WeightFunction w;
  w.kind_ = Kind::power;
  w.delta_ = delta;
  w.rho_ = rho;
  return w;
}

WeightFunction WeightFunction::table(std::vector<double> values) {
  if (values.empty())
    throw std::invalid_argument("WeightFunction::table: empty table");
  for (double v : values)
    if (v <= 0.0)
      throw std::invalid_argument("WeightFunction::table: values must be > 0");
  WeightFunction w;
  w.kind_ = Kind::table;
  w.table_ = std::move(values);
  return w;
}

WeightFunction WeightFunction::alternating(AlternatingRule even,
                                           AlternatingRule odd) {
  WeightFunction w;
  w.kind_ = Kind::alternating;
  w.even_ = even;
  w.odd_ = odd;
  return w;
}

double WeightFunction::operator()(std::int64_t n) const {
  if (n < 1) throw std::invalid_argument("WeightFunction: n must be >= 1");
  switch (kind_) {
    case Kind::power:
      return std::pow(delta_ + static_cast<double>(n), rho_);
    case Kind::table: {
      // The table repeats its last value beyond the end.
      std::size_t i = static_cast<std::size_t>(n - 1);
      return i < table_.size() ? table_[i] : table_.back();
    }
    case Kind::alternating:
      return (n % 2 == 0) ? even_.eval(n / 2) : odd_.eval((n - 1) / 2);
  }
  throw std::logic_error("WeightFunction: bad kind");
}

bool WeightFunction::nondecreasing(std::int64_t probe_horizon) const {
  if (kind_ == Kind::power) return rho_ >= 0.0;
  double prev = (*this)(1);
  for (std::int64_t n = 2; n <= probe_horizon; ++n) {
    double cur = (*this)(n);
    if (cur < prev) return false;
    prev = cur;
  }
  return true;
}

namespace {

Summability probe_sum(const std::function<double(std::int64_t)>& term,
                      std::int64_t horizon) {
  // A numeric probe cannot prove convergence; it reports "yes" when the tail
  // terms decay geometrically fast, "no" when the partial sums keep growing
  // linearly in log-scale, otherwise undetermined.
  stats::KahanSum s;
  double last_term = 0.0;
  for (std::int64_t k = 1; k <= horizon; ++k) {
    last_term = term(k);
    s.add(last_term);
  }
  if (last_term * static_cast<double>(horizon) < 1e-6) return Summability::yes;
  if (last_term * static_cast<double>(horizon) > 1e-2) return Summability::no;
  return Summability::undetermined;
}

Summability rule_summability(const AlternatingRule& r) {
  if (r.type == AlternatingRule::Type::constant) return Summability::no;
  return r.base > 1.0 ? Summability::yes : Summability::no;
}

}  // namespace

Summability WeightFunction::reciprocally_summable(
    std::int64_t probe_horizon) const {
  switch (kind_) {
    case Kind::power:
      return rho_ > 1.0 ? Summability::yes : Summability::no;
    case Kind::table:
      // Constant tail, so always divergent.
      return Summability::no;
    case Kind::alternating: {
      Summability e = even_reciprocally_summable();
      Summability o = odd_reciprocally_summable();
      if (e == Summability::yes && o == Summability::yes)
        return Summability::yes;
      if (e == Summability::no || o == Summability::no) return Summability::no;
      return probe_sum([this](std::int64_t k) { return 1.0 / (*this)(k); },
                       probe_horizon);
    }
  }
  throw std::logic_error("WeightFunction: bad kind");
}

Summability WeightFunction::even_reciprocally_summable() const {
  if (kind_ != Kind::alternating)
    throw std::logic_error("even_reciprocally_summable: not alternating");
  return rule_summability(even_);
}

Summability WeightFunction::odd_reciprocally_summable() const {
  if (kind_ != Kind::alternating)
    throw std::logic_error("odd_reciprocally_summable: not alternating");
  return rule_summability(odd_);
}

double wstar(const WeightFunction& w, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("wstar: n must be >= 1");
  stats::KahanSum s;
  for (std::int64_t k = 1; k < n; ++k) s.add(1.0 / w(k));
  return s.value();
}

double what(const WeightFunction& w, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("what: n must be >= 1");
  stats::KahanSum s;
  for (std::int64_t k = 1; k < n; ++k) {
    double v = w(k);
    s.add(1.0 / (v * v));
  }
  return s.value();
}

double wtilde_log(const WeightFunction& w, double lambda, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("wtilde_log: n must be >= 1");
  stats::KahanSum s;
  for (std::int64_t k = 1; k < n; ++k) {
    double x = lambda / w(k);
    if (x <= -1.0)
      throw std::domain_error("wtilde_log: factor 1 + lambda/W(k) <= 0");
    s.add(std::log1p(x));
  }
  return s.value();
}

double harmonic(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("harmonic: n must be >= 1");
  stats::KahanSum s;
  for (std::int64_t k = 1; k < n; ++k) s.add(1.0 / static_cast<double>(k));
  return s.value();
}

double PrefixSums::value(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("PrefixSums: n must be >= 1");
  std::size_t idx = static_cast<std::size_t>(n - 1);
  while (cache_.size() <= idx) {
    running_.add(f_(static_cast<std::int64_t>(cache_.size())));
    cache_.push_back(running_.value());
  }
  return cache_[idx];
}

WeightCaches::WeightCaches(const WeightFunction& w,
                           std::vector<double> lambda_grid)
    : lambdas_(std::move(lambda_grid)),
      wstar_([w](std::int64_t k) { return 1.0 / w(k); }),
      what_([w](std::int64_t k) {
        double v = w(k);
        return 1.0 / (v * v);
      }),
      h_([](std::int64_t k) { return 1.0 / static_cast<double>(k); }) {
  for (double lambda : lambdas_) {
    wtilde_.push_back(std::make_unique<PrefixSums>(
        [w, lambda](std::int64_t k) { return std::log1p(lambda / w(k)); }));
  }
}

}  // namespace sirw
