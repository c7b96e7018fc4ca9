#ifndef SIRW_URN_HPP
#define SIRW_URN_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "sirw/rng.hpp"
#include "sirw/weights.hpp"

namespace sirw {

// Two-colour urn with colours +1 and -1. A W-urn step picks colour i with
// probability proportional to a_i * W(Z(i)) and adds one ball of that colour.
struct UrnState {
  UrnState(const WeightFunction& w, std::int64_t z_plus, std::int64_t z_minus,
           double a_plus, double a_minus, std::uint64_t rng_key)
      : weight(&w),
        z{z_plus, z_minus},
        a{a_plus, a_minus},
        step(0),
        rng(rng_key) {}

  const WeightFunction* weight;
  std::int64_t z[2];  // 0 -> colour +1, 1 -> colour -1
  double a[2];
  std::int64_t step;
  Rng rng;

  std::int64_t z_plus() const { return z[0]; }
  std::int64_t z_minus() const { return z[1]; }
};

// Returns the picked colour (+1 or -1).
int step_w_urn(UrnState& urn);
double prob_pick_plus(const UrnState& urn);

// Friedman-style step: colour picked proportionally to its count (linear
// weight), then incremented by the two-point integer randomization around
// payoff(colour). Requires positive payoffs.
int step_friedman(UrnState& urn, const std::function<double(int)>& payoff);

struct UrnCheckpoint {
  std::int64_t step;
  std::int64_t z_plus;
  std::int64_t z_minus;
};

struct UrnHistory {
  std::vector<UrnCheckpoint> checkpoints;  // powers of two plus the endpoint
};

UrnHistory run_urn_to(UrnState& urn, std::int64_t n);

// Monopoly detector: a colour wins when the opposite count is frozen over the
// trailing tail_fraction of steps. Returns +1, -1 or nullopt.
std::optional<int> detect_monopoly(const UrnHistory& history,
                                   double tail_fraction = 0.5);

}  // namespace sirw

#endif  // SIRW_URN_HPP
