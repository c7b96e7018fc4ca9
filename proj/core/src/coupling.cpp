#include "sirw/coupling.hpp"

#include <algorithm>
#include <stdexcept>

#include "json.hpp"

namespace sirw {

AlarmPerturbation AlarmPerturbation::delay_return(Vertex x, std::int64_t k) {
  AlarmPerturbation p;
  p.edits[{directed_edge_key(x, x - 1), k}] = {Kind::add, 1.0};
  return p;
}

double PerturbedAlarms::y(std::int64_t stream, std::int64_t k) const {
  double base = base_->y(stream, k);
  auto it = pert_->edits.find({stream, k});
  if (it == pert_->edits.end()) return base;
  double v = it->second.kind == AlarmPerturbation::Kind::add
                 ? base + it->second.value
                 : it->second.value;
  if (v <= 0.0)
    throw std::invalid_argument("perturbed alarm must stay positive");
  return v;
}

bool check_dominance(
    const AlarmSource& y, const AlarmSource& y_prime,
    const std::vector<std::pair<std::int64_t, std::int64_t>>& probes) {
  for (auto [stream, k] : probes) {
    Vertex from = edge_key_source(stream);
    Vertex to = edge_key_target(stream);
    double a = y.y(stream, k);
    double b = y_prime.y(stream, k);
    if (to == from + 1) {
      if (b > a) return false;  // rightward alarms may only shrink
    } else if (to == from - 1) {
      if (b < a) return false;  // leftward alarms may only grow
    } else {
      throw std::invalid_argument("probe stream is not a line edge");
    }
  }
  return true;
}

CoupledPair run_coupled(const AlarmSource& alarms,
                        const AlarmPerturbation& pert, Vertex x0,
                        std::int64_t steps, const WeightFunction& w) {
  if (!w.nondecreasing())
    throw std::invalid_argument(
        "coupling monotonicity requires a nondecreasing weight");
  Graph line = Graph::line();
  CoupledPair pair;
  pair.perturbation = pert;
  pair.base_trace =
      simulate_vsirw_directed_timelines(line, w, x0, steps, alarms);
  PerturbedAlarms perturbed(alarms, pert);
  pair.perturbed_trace =
      simulate_vsirw_directed_timelines(line, w, x0, steps, perturbed);
  return pair;
}

namespace {

// For each edge {j, j+1} (keyed by j), the vertex counts (Z(j), Z(j+1)) seen
// at the walk's successive crossing times of that edge, counts taken just
// after the crossing lands.
std::map<Vertex, std::vector<std::pair<std::int64_t, std::int64_t>>>
crossing_profiles(const Trace& t) {
  CounterMap z(1);
  z.increment(t.x0());
  std::map<Vertex, std::vector<std::pair<std::int64_t, std::int64_t>>> prof;
  for (std::size_t n = 1; n < t.positions.size(); ++n) {
    Vertex from = t.positions[n - 1];
    Vertex to = t.positions[n];
    z.increment(to);
    Vertex j = std::min(from, to);
    prof[j].emplace_back(z.get(j), z.get(j + 1));
  }
  return prof;
}

}  // namespace

EieResult check_Eie(const CoupledPair& pair) {
  auto base = crossing_profiles(pair.base_trace.jump_chain());
  auto pert = crossing_profiles(pair.perturbed_trace.jump_chain());

  EieResult res{true, 0, std::nullopt};
  // Scan the base walk's crossings in time order so the reported violation is
  // the minimal (edge, i) pair.
  const Trace chain = pair.base_trace.jump_chain();
  std::map<Vertex, std::int64_t> seen;
  for (std::size_t n = 1; n < chain.positions.size(); ++n) {
    Vertex j = std::min(chain.positions[n - 1], chain.positions[n]);
    std::int64_t i = seen[j]++;
    auto it = pert.find(j);
    if (it == pert.end() ||
        static_cast<std::size_t>(i) >= it->second.size())
      continue;  // unrealized in the perturbed walk: vacuous
    ++res.matched_indices;
    auto [z_lo, z_hi] = base[j][static_cast<std::size_t>(i)];
    auto [zp_lo, zp_hi] = it->second[static_cast<std::size_t>(i)];
    if (zp_hi < z_hi || zp_lo > z_lo) {
      res.holds = false;
      if (!res.first_violation) res.first_violation = EieViolation{j, i + 1};
    }
  }
  return res;
}

std::string pair_report_json(const CoupledPair& pair, const EieResult& eie) {
  nlohmann::json j;
  j["matchedIndices"] = eie.matched_indices;
  j["violations"] = nlohmann::json::array();
  if (eie.first_violation) {
    j["violations"].push_back({{"edgeLower", eie.first_violation->edge_lower},
                               {"index", eie.first_violation->index}});
  }
  nlohmann::json edits = nlohmann::json::array();
  for (const auto& [key, edit] : pair.perturbation.edits) {
    edits.push_back(
        {{"from", edge_key_source(key.first)},
         {"to", edge_key_target(key.first)},
         {"k", key.second},
         {"kind", edit.kind == AlarmPerturbation::Kind::add ? "add" : "set"},
         {"value", edit.value}});
  }
  j["perturbation"] = edits;
  return j.dump(2);
}

}  // namespace sirw
