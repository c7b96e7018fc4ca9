#include <cmath>
#include <map>

#include "doctest.h"
#include "sirw/timelines.hpp"

using namespace sirw;

namespace {

// All streams alarm at the same constant distance: guaranteed ties.
struct ConstantAlarms : AlarmSource {
  double y(std::int64_t, std::int64_t) const override { return 1.0; }
};

}  // namespace

TEST_CASE("alarm collection is a pure function of (stream, index)") {
  AlarmCollection a(42), b(42), c(43);
  CHECK(a.y(5, 3) == b.y(5, 3));
  CHECK(a.y(5, 3) != c.y(5, 3));
  CHECK(a.y(5, 3) != a.y(5, 4));
  CHECK(a.y(6, 3) != a.y(5, 3));
  CHECK(a.y(5, 3) > 0.0);
}

TEST_CASE("urn timelines fire the smaller initial alarm first") {
  WeightFunction w = WeightFunction::power(0, 1);
  AlarmCollection alarms(7);
  double tp = alarms.y(kUrnStreamPlus, 1) / w(1);
  double tm = alarms.y(kUrnStreamMinus, 1) / w(1);
  auto res = simulate_w_urn_timelines(w, 1, 1, 1, alarms);
  REQUIRE(res.picks.size() == 1);
  CHECK(res.picks[0] == (tp < tm ? 1 : -1));
  CHECK(res.jump_times[0] == doctest::Approx(std::min(tp, tm)));
}

TEST_CASE("urn timelines respect propensities and weights in the rates") {
  WeightFunction w = WeightFunction::power(0, 2);
  AlarmCollection alarms(9);
  auto res = simulate_w_urn_timelines(w, 3, 1, 5, alarms, 2.0, 1.0);
  // First plus alarm at Y_1 / (2 W(3)), first minus at Y_1 / W(1).
  double tp = alarms.y(kUrnStreamPlus, 1) / (2.0 * 9.0);
  double tm = alarms.y(kUrnStreamMinus, 1) / 1.0;
  CHECK(res.jump_times[0] == doctest::Approx(std::min(tp, tm)));
  CHECK(res.z_plus + res.z_minus == 3 + 1 + 5);
  for (std::size_t i = 1; i < res.jump_times.size(); ++i)
    CHECK(res.jump_times[i] > res.jump_times[i - 1]);
}

TEST_CASE("bitwise alarm ties abort the run") {
  WeightFunction w = WeightFunction::power(0, 1);
  ConstantAlarms alarms;
  CHECK_THROWS_AS((void)simulate_w_urn_timelines(w, 1, 1, 3, alarms),
                  TieAbortError);
}

TEST_CASE("edge timelines produce a valid adjacent jump chain") {
  Graph g = Graph::cycle(3);
  WeightFunction w = WeightFunction::power(0, 1);
  AlarmCollection alarms(13);
  auto ct = simulate_esirw_timelines(g, w, 0, 200, alarms);
  REQUIRE(ct.positions.size() == 201);
  CHECK(ct.times.front() == doctest::Approx(0.0));
  for (std::size_t i = 1; i < ct.positions.size(); ++i) {
    CHECK(g.adjacent(ct.positions[i - 1], ct.positions[i]));
    CHECK(ct.times[i] > ct.times[i - 1]);
  }
}

TEST_CASE("first edge alarm on the line fires the nearer clock") {
  Graph g = Graph::line();
  WeightFunction w = WeightFunction::power(0, 1);
  AlarmCollection alarms(21);
  double right = alarms.y(undirected_edge_key(0, 1), 1) / w(1);
  double left = alarms.y(undirected_edge_key(-1, 0), 1) / w(1);
  auto ct = simulate_esirw_timelines(g, w, 0, 1, alarms);
  CHECK(ct.positions[1] == (right < left ? 1 : -1));
  CHECK(ct.times[1] == doctest::Approx(std::min(right, left)));
}

TEST_CASE("paused clocks accumulate local time exactly") {
  // On the 3-cycle every clock is always adjacent to the walker only part of
  // the time; replay the event sequence and recompute each firing's local
  // time from scratch.
  Graph g = Graph::cycle(3);
  WeightFunction w = WeightFunction::power(0, 1);
  AlarmCollection alarms(31);
  auto ct = simulate_esirw_timelines(g, w, 0, 500, alarms);
  std::map<std::int64_t, double> local;     // accumulated local time per edge
  std::map<std::int64_t, double> armed_at;  // local time of current arming
  std::map<std::int64_t, std::int64_t> cross;
  for (std::size_t i = 1; i < ct.positions.size(); ++i) {
    Vertex from = ct.positions[i - 1];
    double dt = ct.times[i] - ct.times[i - 1];
    for (Vertex nb : g.neighbors(from))
      local[undirected_edge_key(from, nb)] += dt;
    std::int64_t key = undirected_edge_key(from, ct.positions[i]);
    std::int64_t z = ++cross[key];  // count after this crossing is z + 1
    double distance = alarms.y(key, z) / w(z);
    CHECK(local[key] - armed_at[key] == doctest::Approx(distance).epsilon(1e-9));
    armed_at[key] = local[key];
  }
}

TEST_CASE("holding times sum to the final clock reading") {
  Graph g = Graph::cycle(4);
  WeightFunction w = WeightFunction::power(0, 1);
  AlarmCollection alarms(17);
  auto ct = simulate_esirw_timelines(g, w, 0, 300, alarms);
  auto h = holding_times(ct);
  double total = 0;
  for (const auto& [v, t] : h) total += t;
  CHECK(total == doctest::Approx(ct.times.back()).epsilon(1e-12));
}

TEST_CASE("directed line construction starts from the outward alarms") {
  Graph g = Graph::line();
  WeightFunction w = WeightFunction::power(0, 1);
  AlarmCollection alarms(77);
  double right = alarms.y(directed_edge_key(0, 1), 1) / w(1);
  double left = alarms.y(directed_edge_key(0, -1), 1) / w(1);
  auto ct = simulate_vsirw_directed_timelines(g, w, 0, 1, alarms);
  CHECK(ct.positions[1] == (right < left ? 1 : -1));
  CHECK(ct.times[1] == doctest::Approx(std::min(right, left)));
}

TEST_CASE("directed construction is deterministic and line-only") {
  Graph g = Graph::line();
  WeightFunction w = WeightFunction::power(0, 1);
  AlarmCollection alarms(78);
  auto a = simulate_vsirw_directed_timelines(g, w, 0, 400, alarms);
  auto b = simulate_vsirw_directed_timelines(g, w, 0, 400, alarms);
  CHECK(a.positions == b.positions);
  CHECK_THROWS(
      (void)simulate_vsirw_directed_timelines(Graph::cycle(4), w, 0, 5, alarms));
}

TEST_CASE("birth process spacings scale like 1/(n0+k-1)") {
  auto times = simulate_birth_process(50, 200, 5);
  REQUIRE(times.size() == 200);
  CHECK(times.front() > 0.0);
  for (std::size_t i = 1; i < times.size(); ++i) CHECK(times[i] > times[i - 1]);
  // Mean of T_200 is sum 1/(n0+k-1); check across seeds.
  double expected = 0;
  for (int k = 1; k <= 200; ++k) expected += 1.0 / (50 + k - 1);
  double avg = 0;
  const int reps = 2000;
  for (int r = 0; r < reps; ++r)
    avg += simulate_birth_process(50, 200, derive_key(99, {(std::uint64_t)r}))
               .back();
  avg /= reps;
  CHECK(avg == doctest::Approx(expected).epsilon(0.02));
}

TEST_CASE("kendall transform bookkeeping") {
  auto times = simulate_birth_process(50, 100, 8);
  auto kt = kendall_transform(times, 50);
  CHECK(kt.w_estimate ==
        doctest::Approx((50 + 100) * std::exp(-times.back())));
  REQUIRE(kt.spacings.size() == 100);
  double sum = 0;
  for (double s : kt.spacings) {
    CHECK(s > 0.0);
    sum += s;
  }
  CHECK(sum == doctest::Approx(kt.w_estimate * std::expm1(times.back()))
                   .epsilon(1e-9));
}
