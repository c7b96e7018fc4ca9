#ifndef SIRW_TIMELINES_HPP
#define SIRW_TIMELINES_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "sirw/graph.hpp"
#include "sirw/rng.hpp"
#include "sirw/walk.hpp"
#include "sirw/weights.hpp"

namespace sirw {

// Two pending alarms bitwise equal: the event order is undefined, so the run
// aborts instead of breaking the tie silently. The CLI maps this to its own
// exit code.
struct TieAbortError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Pure source of unit-exponential variates Y_k indexed by (stream, k).
// Re-accessing an index yields the same value; distinct indices are
// independent by construction (counter-based generator). Streams are packed
// edge keys or urn colours; coupled runs share one source.
struct AlarmSource {
  virtual ~AlarmSource() = default;
  virtual double y(std::int64_t stream, std::int64_t k) const = 0;
};

class AlarmCollection : public AlarmSource {
 public:
  explicit AlarmCollection(std::uint64_t key) : key_(key) {}
  double y(std::int64_t stream, std::int64_t k) const override {
    Rng r(derive_key(key_, static_cast<std::uint64_t>(stream)));
    return r.exponential_at(static_cast<std::uint64_t>(k), 1.0);
  }
  std::uint64_t key() const { return key_; }

 private:
  std::uint64_t key_;
};

// Jump chain with real jump times; times[0] == 0.
struct ContinuousTrace {
  std::vector<Vertex> positions;
  std::vector<double> times;

  Trace jump_chain() const { return Trace{positions}; }
};

// Urn colour streams inside an AlarmSource.
inline constexpr std::int64_t kUrnStreamPlus = 0;
inline constexpr std::int64_t kUrnStreamMinus = 1;

struct UrnTimelineResult {
  std::vector<int> picks;         // +1 / -1 per jump
  std::vector<double> jump_times; // xi_1..xi_n (xi_0 := 0)
  std::int64_t z_plus;
  std::int64_t z_minus;
  double next_alarm_time[2];      // pending absolute alarm per colour at end
};

// Two always-running time lines, one per colour; the k-th alarm of colour i
// is spaced Y_k^i / (a_i W(z0_i + k - 1)), i.e. the rate is the weight of the
// current count when the alarm is armed. The jump chain has the law of the
// discrete W-urn.
UrnTimelineResult simulate_w_urn_timelines(const WeightFunction& w,
                                           std::int64_t z0_plus,
                                           std::int64_t z0_minus,
                                           std::int64_t steps,
                                           const AlarmSource& alarms,
                                           double a_plus = 1.0,
                                           double a_minus = 1.0);

// Per-non-oriented-edge clocks; a clock runs only while the walker is at one
// of the edge's endpoints. After the edge's k-th crossing (count Z = k + 1)
// the next alarm is armed at local-time distance Y_Z^e / (a_e W(Z)); the
// first alarm is armed (lazily, at first adjacency) with Z = 1. The jump
// chain has the law of the discrete edge-reinforced walk.
ContinuousTrace simulate_esirw_timelines(const Graph& g,
                                         const WeightFunction& w, Vertex x0,
                                         std::int64_t steps,
                                         const AlarmSource& alarms);

// Directed-edge clocks on the integer line; a clock runs only while the
// walker sits at the edge's source. After a crossing of e = (v, u) the
// reversed edge (u, v) is armed at distance Y_{k+1}^{(u,v)} / W(Z(v)), k its
// crossing count. On the line each non-oriented edge then always carries
// exactly one pending alarm, pointing away from the walker. Initial outward
// alarms are armed lazily at Y_1 / W(Z(target)); `raw_initial_alarms` keeps
// the raw distance Y_1 instead (the two agree whenever W(1) = 1). The jump
// chain has the law of the discrete vertex-reinforced walk.
ContinuousTrace simulate_vsirw_directed_timelines(
    const Graph& g, const WeightFunction& w, Vertex x0, std::int64_t steps,
    const AlarmSource& alarms, bool raw_initial_alarms = false);

// Total real time spent at each vertex; the values sum to times.back().
std::map<Vertex, double> holding_times(const ContinuousTrace& t);

// Pure birth process started at population n0: the k-th spacing (k >= 1) is
// exponential with mean 1/(n0 + k - 1). Returns the event times.
std::vector<double> simulate_birth_process(std::int64_t n0, std::int64_t events,
                                           std::uint64_t rng_key);

struct KendallTransform {
  double w_estimate;             // N_T e^{-T} at the horizon T
  std::vector<double> spacings;  // inter-arrivals of N_{log(1 + u / W)}
};

// Time change u = W (e^s - 1) applied to the event times; the transformed
// arrivals form a unit Poisson process, so the spacings (including the first
// arrival) are i.i.d. Exp(1) and W itself is Gamma(n0, 1).
KendallTransform kendall_transform(const std::vector<double>& event_times,
                                   std::int64_t n0);

}  // namespace sirw

#endif  // SIRW_TIMELINES_HPP
