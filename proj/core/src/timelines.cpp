#include "sirw/timelines.hpp"

#include <cmath>
#include <stdexcept>

namespace sirw {

UrnTimelineResult simulate_w_urn_timelines(const WeightFunction& w,
                                           std::int64_t z0_plus,
                                           std::int64_t z0_minus,
                                           std::int64_t steps,
                                           const AlarmSource& alarms,
                                           double a_plus, double a_minus) {
  if (z0_plus < 1 || z0_minus < 1)
    throw std::invalid_argument("simulate_w_urn_timelines: counts must be >= 1");
  const std::int64_t z0[2] = {z0_plus, z0_minus};
  const std::int64_t stream[2] = {kUrnStreamPlus, kUrnStreamMinus};
  const double a[2] = {a_plus, a_minus};
  std::int64_t z[2] = {z0_plus, z0_minus};
  double next[2];
  for (int i = 0; i < 2; ++i)
    next[i] = alarms.y(stream[i], 1) / (a[i] * w(z[i]));

  UrnTimelineResult res;
  res.picks.reserve(static_cast<std::size_t>(steps));
  res.jump_times.reserve(static_cast<std::size_t>(steps));
  for (std::int64_t n = 0; n < steps; ++n) {
    if (next[0] == next[1])
      throw TieAbortError("simultaneous urn alarms (bitwise tie)");
    int i = next[0] < next[1] ? 0 : 1;
    double t = next[i];
    ++z[i];
    res.picks.push_back(i == 0 ? 1 : -1);
    res.jump_times.push_back(t);
    std::int64_t k = z[i] - z0[i] + 1;  // index of the alarm being armed
    next[i] = t + alarms.y(stream[i], k) / (a[i] * w(z[i]));
  }
  res.z_plus = z[0];
  res.z_minus = z[1];
  res.next_alarm_time[0] = next[0];
  res.next_alarm_time[1] = next[1];
  return res;
}

ContinuousTrace simulate_esirw_timelines(const Graph& g,
                                         const WeightFunction& w, Vertex x0,
                                         std::int64_t steps,
                                         const AlarmSource& alarms) {
  ContinuousTrace trace;
  trace.positions.push_back(x0);
  trace.times.push_back(0.0);

  CounterMap edge_count(1);                              // Z(e) = crossings + 1
  std::unordered_map<std::int64_t, double> remaining;    // pending local time
  std::vector<Vertex> nbr(static_cast<std::size_t>(g.max_degree()));
  std::vector<double> prop(static_cast<std::size_t>(g.max_degree()));
  std::vector<std::int64_t> keys(static_cast<std::size_t>(g.max_degree()));

  Vertex pos = x0;
  double time = 0.0;
  for (std::int64_t n = 0; n < steps; ++n) {
    int deg = g.neighbors_into(pos, nbr.data(), prop.data());
    if (deg == 0) throw std::invalid_argument("isolated vertex");
    int best = -1;
    for (int j = 0; j < deg; ++j) {
      std::int64_t key = undirected_edge_key(pos, nbr[j]);
      keys[static_cast<std::size_t>(j)] = key;
      auto [it, inserted] = remaining.try_emplace(key, 0.0);
      if (inserted) {
        std::int64_t z = edge_count.get(key);  // 1 at first adjacency
        it->second = alarms.y(key, z) / (prop[j] * w(z));
      }
      if (best < 0 || it->second < remaining[keys[static_cast<std::size_t>(
                          best)]])
        best = j;
    }
    double dt = remaining[keys[static_cast<std::size_t>(best)]];
    for (int j = 0; j < deg; ++j)
      if (j != best && remaining[keys[static_cast<std::size_t>(j)]] == dt)
        throw TieAbortError("simultaneous edge alarms (bitwise tie)");
    for (int j = 0; j < deg; ++j)
      remaining[keys[static_cast<std::size_t>(j)]] -= dt;

    std::int64_t fired = keys[static_cast<std::size_t>(best)];
    std::int64_t z = edge_count.increment(fired);
    remaining[fired] = alarms.y(fired, z) / (prop[best] * w(z));
    pos = nbr[static_cast<std::size_t>(best)];
    time += dt;
    trace.positions.push_back(pos);
    trace.times.push_back(time);
  }
  return trace;
}

namespace {

struct PendingAlarm {
  Vertex to;         // direction of the next crossing (source is implicit)
  double remaining;  // local-time offset, runs while walker at the source
};

}  // namespace

ContinuousTrace simulate_vsirw_directed_timelines(
    const Graph& g, const WeightFunction& w, Vertex x0, std::int64_t steps,
    const AlarmSource& alarms, bool raw_initial_alarms) {
  if (!g.is_line())
    throw std::invalid_argument(
        "directed time-lines are defined on the integer line only");

  ContinuousTrace trace;
  trace.positions.push_back(x0);
  trace.times.push_back(0.0);

  CounterMap vertex_count(1);
  vertex_count.increment(x0);  // Z_0(x0) = 2
  CounterMap crossings(0);     // per directed edge
  std::unordered_map<std::int64_t, PendingAlarm> pending;  // per edge

  Vertex pos = x0;
  double time = 0.0;
  for (std::int64_t n = 0; n < steps; ++n) {
    std::int64_t key[2];
    double rem[2];
    for (int j = 0; j < 2; ++j) {
      Vertex target = j == 0 ? pos - 1 : pos + 1;
      key[j] = undirected_edge_key(pos, target);
      auto [it, inserted] = pending.try_emplace(key[j]);
      if (inserted) {
        // First alarm of an outward edge, armed at first need; the target
        // has never been visited, so the crossing count is zero.
        std::int64_t k = crossings.get(directed_edge_key(pos, target));
        double rate = raw_initial_alarms ? 1.0 : w(vertex_count.get(target));
        it->second = {target, alarms.y(directed_edge_key(pos, target), k + 1) /
                                  rate};
      } else if (it->second.to == pos) {
        throw std::logic_error("pending alarm points at the walker");
      }
      rem[j] = it->second.remaining;
    }
    if (rem[0] == rem[1])
      throw TieAbortError("simultaneous directed alarms (bitwise tie)");
    int best = rem[0] < rem[1] ? 0 : 1;
    double dt = rem[best];
    pending[key[0]].remaining -= dt;
    pending[key[1]].remaining -= dt;

    Vertex from = pos;
    Vertex to = pending[key[best]].to;
    crossings.increment(directed_edge_key(from, to));
    vertex_count.increment(to);
    // Re-arm the reversed edge; its rate is the weight of the current count
    // at its target (the vertex just left), frozen until it fires.
    std::int64_t k = crossings.get(directed_edge_key(to, from));
    pending[key[best]] = {
        from, alarms.y(directed_edge_key(to, from), k + 1) /
                  w(vertex_count.get(from))};
    pos = to;
    time += dt;
    trace.positions.push_back(pos);
    trace.times.push_back(time);
  }
  return trace;
}

std::map<Vertex, double> holding_times(const ContinuousTrace& t) {
  std::map<Vertex, double> total;
  for (std::size_t i = 0; i + 1 < t.positions.size(); ++i)
    total[t.positions[i]] += t.times[i + 1] - t.times[i];
  return total;
}

std::vector<double> simulate_birth_process(std::int64_t n0, std::int64_t events,
                                           std::uint64_t rng_key) {
  if (n0 < 1) throw std::invalid_argument("birth process needs n0 >= 1");
  Rng rng(rng_key);
  std::vector<double> times;
  times.reserve(static_cast<std::size_t>(events));
  double t = 0.0;
  for (std::int64_t k = 0; k < events; ++k) {
    t += rng.exponential(static_cast<double>(n0 + k));
    times.push_back(t);
  }
  return times;
}

KendallTransform kendall_transform(const std::vector<double>& event_times,
                                   std::int64_t n0) {
  if (event_times.empty())
    throw std::invalid_argument("kendall_transform: no events");
  double horizon = event_times.back();
  double w = static_cast<double>(n0 + static_cast<std::int64_t>(
                                          event_times.size())) *
             std::exp(-horizon);
  KendallTransform out;
  out.w_estimate = w;
  out.spacings.reserve(event_times.size());
  double prev = 0.0;
  for (double s : event_times) {
    double u = w * std::expm1(s);
    out.spacings.push_back(u - prev);
    prev = u;
  }
  return out;
}

}  // namespace sirw
