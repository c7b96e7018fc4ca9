#include "sirw/urn.hpp"

#include <cmath>
#include <stdexcept>

namespace sirw {

double prob_pick_plus(const UrnState& urn) {
  const WeightFunction& w = *urn.weight;
  double wp = urn.a[0] * w(urn.z[0]);
  double wm = urn.a[1] * w(urn.z[1]);
  return wp / (wp + wm);
}

int step_w_urn(UrnState& urn) {
  double p = prob_pick_plus(urn);
  int picked = urn.rng.uniform() < p ? 0 : 1;
  ++urn.z[picked];
  ++urn.step;
  return picked == 0 ? 1 : -1;
}

int step_friedman(UrnState& urn, const std::function<double(int)>& payoff) {
  double zp = static_cast<double>(urn.z[0]);
  double zm = static_cast<double>(urn.z[1]);
  int picked = urn.rng.uniform() < zp / (zp + zm) ? 0 : 1;
  int colour = picked == 0 ? 1 : -1;
  double pay = payoff(colour);
  if (pay <= 0.0) throw std::invalid_argument("step_friedman: payoff <= 0");
  double lo = std::floor(pay);
  std::int64_t add = static_cast<std::int64_t>(lo);
  if (pay > lo && urn.rng.uniform() < pay - lo) ++add;
  urn.z[picked] += add;
  ++urn.step;
  return colour;
}

UrnHistory run_urn_to(UrnState& urn, std::int64_t n) {
  UrnHistory h;
  h.checkpoints.push_back({urn.step, urn.z[0], urn.z[1]});
  std::int64_t next_checkpoint = 1;
  for (std::int64_t i = 0; i < n; ++i) {
    step_w_urn(urn);
    if (i + 1 == next_checkpoint || i + 1 == n) {
      h.checkpoints.push_back({urn.step, urn.z[0], urn.z[1]});
      if (i + 1 == next_checkpoint) next_checkpoint *= 2;
    }
  }
  return h;
}

std::optional<int> detect_monopoly(const UrnHistory& history,
                                   double tail_fraction) {
  const auto& cps = history.checkpoints;
  if (cps.empty()) throw std::invalid_argument("detect_monopoly: empty history");
  const UrnCheckpoint& last = cps.back();
  std::int64_t cutoff = static_cast<std::int64_t>(
      std::floor(static_cast<double>(last.step) * (1.0 - tail_fraction)));
  // Latest checkpoint at or before the cutoff.
  const UrnCheckpoint* base = &cps.front();
  for (const auto& cp : cps)
    if (cp.step <= cutoff) base = &cp;
  bool plus_frozen = base->z_plus == last.z_plus;
  bool minus_frozen = base->z_minus == last.z_minus;
  if (plus_frozen && !minus_frozen) return -1;
  if (minus_frozen && !plus_frozen) return 1;
  return std::nullopt;
}

}  // namespace sirw
