#include "sirw/walk.hpp"

#include <cmath>
#include <stdexcept>

namespace sirw {

std::vector<std::pair<Vertex, double>> transition_distribution(
    const Graph& g, const WeightFunction& w, const WalkState& state,
    Mode mode) {
  std::vector<Vertex> nbr(static_cast<std::size_t>(g.max_degree()));
  std::vector<double> prop(nbr.size());
  int n = g.neighbors_into(state.position, nbr.data(), prop.data());
  if (n == 0)
    throw std::domain_error("transition_distribution: isolated vertex");
  std::vector<std::pair<Vertex, double>> out;
  out.reserve(static_cast<std::size_t>(n));
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    std::int64_t z = mode == Mode::vertex
                         ? state.z(nbr[static_cast<std::size_t>(i)])
                         : state.z_edge(state.position,
                                        nbr[static_cast<std::size_t>(i)]);
    double weight = prop[static_cast<std::size_t>(i)] * w(z);
    out.emplace_back(nbr[static_cast<std::size_t>(i)], weight);
    total += weight;
  }
  for (auto& [v, p] : out) p /= total;
  return out;
}

Walker::Walker(const Graph& g, const WeightFunction& w, Mode mode, Vertex x0,
               std::uint64_t rng_key)
    : g_(g),
      w_(w),
      mode_(mode),
      state_(x0, rng_key),
      nbr_(static_cast<std::size_t>(g.max_degree())),
      prop_(nbr_.size()),
      weight_(nbr_.size()) {}

void Walker::step(std::span<StepObserver* const> observers) {
  const Vertex pos = state_.position;
  int n = g_.neighbors_into(pos, nbr_.data(), prop_.data());
  if (n == 0) throw std::domain_error("Walker::step: isolated vertex");
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    std::size_t k = static_cast<std::size_t>(i);
    std::int64_t z = mode_ == Mode::vertex ? state_.z(nbr_[k])
                                           : state_.z_edge(pos, nbr_[k]);
    weight_[k] = prop_[k] * w_(z);
    total += weight_[k];
  }
  // Cumulative inversion; neighbors are sorted, so ties (probability zero in
  // exact arithmetic) resolve to the lexicographically smaller one.
  double u = state_.rng.uniform() * total;
  double cum = 0.0;
  Vertex next = nbr_[static_cast<std::size_t>(n - 1)];
  for (int i = 0; i < n; ++i) {
    cum += weight_[static_cast<std::size_t>(i)];
    if (cum > u) {
      next = nbr_[static_cast<std::size_t>(i)];
      break;
    }
  }
  for (StepObserver* obs : observers) obs->observe(state_, next);
  state_.vertex_count.increment(next);
  state_.edge_count.increment(undirected_edge_key(pos, next));
  state_.directed_count.increment(directed_edge_key(pos, next));
  state_.position = next;
  ++state_.step;
}

Trace Walker::run(std::int64_t n, std::span<StepObserver* const> observers) {
  Trace trace;
  trace.positions.reserve(static_cast<std::size_t>(n) + 1);
  trace.positions.push_back(state_.position);
  for (StepObserver* obs : observers) obs->init(state_);
  for (std::int64_t i = 0; i < n; ++i) {
    step(observers);
    trace.positions.push_back(state_.position);
  }
  return trace;
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("rational_from_double");
  if (x == 0.0) return Rational(0);
  int exp = 0;
  double mant = std::frexp(x, &exp);  // x = mant * 2^exp, |mant| in [0.5,1)
  std::int64_t m = static_cast<std::int64_t>(std::ldexp(mant, 53));
  exp -= 53;
  Rational r(m);
  boost::multiprecision::cpp_int two(2);
  if (exp >= 0)
    r *= Rational(boost::multiprecision::pow(two, exp));
  else
    r /= Rational(boost::multiprecision::pow(two, -exp));
  return r;
}

namespace {

void enumerate_paths(const Graph& g, const WeightFunction& w, Mode mode,
                     WalkState& state, std::vector<Vertex>& path,
                     const Rational& prob, int remaining,
                     std::map<std::vector<Vertex>, Rational>& out) {
  if (remaining == 0) {
    out[path] += prob;
    return;
  }
  std::vector<Vertex> nbr(static_cast<std::size_t>(g.max_degree()));
  std::vector<double> prop(nbr.size());
  int n = g.neighbors_into(state.position, nbr.data(), prop.data());
  if (n == 0) throw std::domain_error("exact_path_distribution: isolated");
  std::vector<Rational> weights(static_cast<std::size_t>(n));
  Rational total(0);
  for (int i = 0; i < n; ++i) {
    std::size_t k = static_cast<std::size_t>(i);
    std::int64_t z = mode == Mode::vertex
                         ? state.z(nbr[k])
                         : state.z_edge(state.position, nbr[k]);
    weights[k] = rational_from_double(prop[k]) * rational_from_double(w(z));
    total += weights[k];
  }
  const Vertex pos = state.position;
  for (int i = 0; i < n; ++i) {
    std::size_t k = static_cast<std::size_t>(i);
    Vertex next = nbr[k];
    Rational p = prob * weights[k] / total;
    // apply
    state.vertex_count.increment(next);
    state.edge_count.increment(undirected_edge_key(pos, next));
    state.directed_count.increment(directed_edge_key(pos, next));
    state.position = next;
    path.push_back(next);
    enumerate_paths(g, w, mode, state, path, p, remaining - 1, out);
    // undo
    path.pop_back();
    state.position = pos;
    --state.vertex_count.slot(next);
    --state.edge_count.slot(undirected_edge_key(pos, next));
    --state.directed_count.slot(directed_edge_key(pos, next));
  }
}

}  // namespace

std::map<std::vector<Vertex>, Rational> exact_path_distribution(
    const Graph& g, const WeightFunction& w, Vertex x0, int k, Mode mode) {
  if (k < 0 || k > 12)
    throw std::invalid_argument("exact_path_distribution: k must be in [0,12]");
  WalkState state(x0, 0);
  std::vector<Vertex> path{x0};
  std::map<std::vector<Vertex>, Rational> out;
  enumerate_paths(g, w, mode, state, path, Rational(1), k, out);
  return out;
}

std::vector<std::int64_t> visit_times(const Trace& t, Vertex x) {
  std::vector<std::int64_t> out;
  for (std::size_t n = 0; n < t.positions.size(); ++n)
    if (t.positions[n] == x) out.push_back(static_cast<std::int64_t>(n));
  return out;
}

std::vector<std::int64_t> departure_times(const Trace& t, Vertex from,
                                          Vertex to) {
  std::vector<std::int64_t> out;
  for (std::size_t n = 1; n < t.positions.size(); ++n)
    if (t.positions[n - 1] == from && t.positions[n] == to)
      out.push_back(static_cast<std::int64_t>(n));
  return out;
}

}  // namespace sirw
