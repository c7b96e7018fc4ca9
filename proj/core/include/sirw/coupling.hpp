#ifndef SIRW_COUPLING_HPP
#define SIRW_COUPLING_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sirw/timelines.hpp"
#include "sirw/walk.hpp"
#include "sirw/weights.hpp"

namespace sirw {

inline Vertex edge_key_source(std::int64_t directed_key) {
  return static_cast<Vertex>(directed_key >> 32);
}
inline Vertex edge_key_target(std::int64_t directed_key) {
  return static_cast<Vertex>(
      static_cast<std::int32_t>(directed_key & 0xffffffff));
}

// Finite edit set applied on top of a shared alarm collection. A valid
// perturbation Y' dominates Y: rightward alarms (x, x+1) may only shrink,
// leftward alarms (x, x-1) may only grow.
struct AlarmPerturbation {
  enum class Kind { add, set };
  struct Edit {
    Kind kind;
    double value;
  };
  // keyed by (directed-edge stream, alarm index k)
  std::map<std::pair<std::int64_t, std::int64_t>, Edit> edits;

  // The single-index family: add +1 to the k-th alarm of (x, x-1), delaying
  // one return to the left.
  static AlarmPerturbation delay_return(Vertex x, std::int64_t k);
};

class PerturbedAlarms : public AlarmSource {
 public:
  PerturbedAlarms(const AlarmSource& base, const AlarmPerturbation& pert)
      : base_(&base), pert_(&pert) {}
  double y(std::int64_t stream, std::int64_t k) const override;

 private:
  const AlarmSource* base_;
  const AlarmPerturbation* pert_;
};

// True iff Y' >> Y on every probed (directed-edge stream, k): Y' <= Y on
// rightward edges and Y' >= Y on leftward edges (weak inequalities).
bool check_dominance(
    const AlarmSource& y, const AlarmSource& y_prime,
    const std::vector<std::pair<std::int64_t, std::int64_t>>& probes);

struct CoupledPair {
  ContinuousTrace base_trace;       // walk driven by Y
  ContinuousTrace perturbed_trace;  // walk driven by Y'
  AlarmPerturbation perturbation;
};

// Runs the directed-line construction twice from shared alarms, once
// unperturbed and once through the edit set. W must be nondecreasing (the
// monotonicity lemma's hypothesis); violations are rejected.
CoupledPair run_coupled(const AlarmSource& alarms,
                        const AlarmPerturbation& pert, Vertex x0,
                        std::int64_t steps, const WeightFunction& w);

struct EieViolation {
  Vertex edge_lower;  // the edge {j, j+1} identified by j
  std::int64_t index; // i-th crossing
};

struct EieResult {
  bool holds;
  std::int64_t matched_indices;  // (edge, i) pairs realized in both walks
  std::optional<EieViolation> first_violation;  // minimal in crossing order
};

// For every non-oriented edge e = {j, j+1} and index i realized in both
// walks, checks Z'(j+1) >= Z(j+1) and Z'(j) <= Z(j) evaluated at the
// respective i-th crossing times of e. Unrealized indices pass vacuously.
EieResult check_Eie(const CoupledPair& pair);

// JSON report: {violations, matchedIndices, perturbation}.
std::string pair_report_json(const CoupledPair& pair, const EieResult& eie);

}  // namespace sirw

#endif  // SIRW_COUPLING_HPP
