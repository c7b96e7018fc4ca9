#ifndef SIRW_WALK_HPP
#define SIRW_WALK_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <span>
#include <unordered_map>
#include <vector>

#include "sirw/graph.hpp"
#include "sirw/rng.hpp"
#include "sirw/weights.hpp"

namespace sirw {

using Rational = boost::multiprecision::cpp_rational;

enum class Mode { vertex, edge };

// Packed keys for edge-indexed counters.
inline std::int64_t undirected_edge_key(Vertex i, Vertex j) {
  if (i > j) std::swap(i, j);
  return (static_cast<std::int64_t>(i) << 32) |
         static_cast<std::uint32_t>(j);
}
inline std::int64_t directed_edge_key(Vertex from, Vertex to) {
  return (static_cast<std::int64_t>(from) << 32) |
         static_cast<std::uint32_t>(to);
}

// Integer-keyed counter grown on demand.
class CounterMap {
 public:
  explicit CounterMap(std::int64_t default_value)
      : default_(default_value) {}
  std::int64_t get(std::int64_t key) const {
    auto it = map_.find(key);
    return it == map_.end() ? default_ : it->second;
  }
  std::int64_t increment(std::int64_t key) { return ++slot(key); }
  std::int64_t& slot(std::int64_t key) {
    auto [it, inserted] = map_.try_emplace(key, default_);
    return it->second;
  }
  const std::unordered_map<std::int64_t, std::int64_t>& raw() const {
    return map_;
  }

 private:
  std::int64_t default_;
  std::unordered_map<std::int64_t, std::int64_t> map_;
};

// Full counter state of a walk: Z_n(v) = visits + 1, Z_n(e) = crossings + 1,
// Z_n^{+-}(x) = departures along each directed edge.
struct WalkState {
  WalkState(Vertex x0, std::uint64_t rng_key)
      : position(x0),
        step(0),
        vertex_count(1),
        edge_count(1),
        directed_count(0),
        rng(rng_key) {
    vertex_count.increment(x0);  // Z_0(x0) = 2
  }

  Vertex position;
  std::int64_t step;
  CounterMap vertex_count;    // keyed by vertex
  CounterMap edge_count;      // keyed by undirected_edge_key
  CounterMap directed_count;  // keyed by directed_edge_key
  Rng rng;

  std::int64_t z(Vertex v) const { return vertex_count.get(v); }
  std::int64_t z_edge(Vertex i, Vertex j) const {
    return edge_count.get(undirected_edge_key(i, j));
  }
  std::int64_t z_directed(Vertex from, Vertex to) const {
    return directed_count.get(directed_edge_key(from, to));
  }
};

// Observer hook: observe() fires before counters are updated, so the k-th call
// sees Z_{k-1} together with the move X_{k-1} -> X_k. Missing steps breaks the
// exact identities, hence observers are registered for the whole run.
struct StepObserver {
  virtual ~StepObserver() = default;
  virtual void init(const WalkState& state) { (void)state; }
  virtual void observe(const WalkState& before, Vertex to) = 0;
};

struct Trace {
  std::vector<Vertex> positions;  // X_0..X_N
  Vertex x0() const { return positions.front(); }
  std::int64_t steps() const {
    return static_cast<std::int64_t>(positions.size()) - 1;
  }
};

// X_{n+1} sampled proportionally to a_{i,j} W(Z_n(j)) (vertex mode) or
// a_{i,j} W(Z_n({i,j})) (edge mode).
std::vector<std::pair<Vertex, double>> transition_distribution(
    const Graph& g, const WeightFunction& w, const WalkState& state,
    Mode mode);

class Walker {
 public:
  Walker(const Graph& g, const WeightFunction& w, Mode mode, Vertex x0,
         std::uint64_t rng_key);

  // One step; counters updated, observers notified.
  void step(std::span<StepObserver* const> observers = {});
  Trace run(std::int64_t n, std::span<StepObserver* const> observers = {});

  const WalkState& state() const { return state_; }
  WalkState& state() { return state_; }

 private:
  const Graph& g_;
  const WeightFunction& w_;
  Mode mode_;
  WalkState state_;
  std::vector<Vertex> nbr_;
  std::vector<double> prop_;
  std::vector<double> weight_;
};

// Exhaustive path enumeration with exact rational probabilities, k <= 12.
// Doubles are dyadic rationals, so propensities and weights convert exactly.
std::map<std::vector<Vertex>, Rational> exact_path_distribution(
    const Graph& g, const WeightFunction& w, Vertex x0, int k, Mode mode);

Rational rational_from_double(double x);

// Step indices n with X_n == x (visit times), and with X_{n-1}==x, X_n==x+-1
// (directed departure times), recomputed from a trace.
std::vector<std::int64_t> visit_times(const Trace& t, Vertex x);
std::vector<std::int64_t> departure_times(const Trace& t, Vertex from,
                                          Vertex to);

}  // namespace sirw

#endif  // SIRW_WALK_HPP
