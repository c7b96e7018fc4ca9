#ifndef SIRW_DIAGNOSTICS_HPP
#define SIRW_DIAGNOSTICS_HPP

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "sirw/stats.hpp"
#include "sirw/walk.hpp"
#include "sirw/weights.hpp"

namespace sirw {

using stats::KahanSum;

// Snapshot of every tracked statistic of one site at step n. Signed pairs are
// indexed 0 for the "+" member and 1 for the "-" member.
struct SiteSnapshot {
  std::int64_t n;
  double alpha[2];    // alpha_n^{+-}(x) = Z_n(x+-1) / (Z_n(x-1) + Z_n(x+1))
  double y_dir[2];    // Y_n^{+-}(x): departure sums weighted 1/Z_{k-1}(x+-1)
  double y;           // Y_n(x): previsible part, 1/(Z(x-1)+Z(x+1)) per visit
  double y_hat[2];    // martingale parts Y^{+-} - Y
  double u_up[2];     // U_{n,+-}^+(x): departures toward x+-1, 1/Z_{k-1}(x)
  double u_down[2];   // U_{n,+-}^-(x): opposite departures, ratio-weighted
  double u_pred[2];   // U_{n,+-}(x): previsible part with alpha_{k-1}^{+-}
  double u_hat_up[2];    // U^+ - U
  double u_hat_down[2];  // U^- - U
  double u_check[2];     // u_hat_up - u_hat_down
};

// Push-based observer maintaining the full statistic family of each tracked
// site in O(sites) per step, with snapshots kept at powers of two. Observers
// must see every step from 0; the exact identities fail otherwise.
class SiteStatsTracker : public StepObserver {
 public:
  explicit SiteStatsTracker(std::vector<Vertex> sites);

  void init(const WalkState& state) override;
  void observe(const WalkState& before, Vertex to) override;

  // Snapshots at n = 0, 1, 2, 4, ... plus the last observed step.
  std::vector<SiteSnapshot> snapshots(Vertex x) const;
  SiteSnapshot current(Vertex x) const;

 private:
  struct Accumulators {
    KahanSum y_dir[2], y, u_up[2], u_down[2], u_pred[2];
    double alpha[2] = {0.5, 0.5};
    std::vector<SiteSnapshot> history;
  };
  SiteSnapshot snapshot(const Accumulators& acc, std::int64_t n) const;

  std::map<Vertex, Accumulators> sites_;
  std::int64_t next_checkpoint_ = 1;
  std::int64_t step_ = 0;
};

// Urn martingales, recomputable exactly from counts:
//   M_n = a_minus W*(Z_n(+)) - a_plus W*(Z_n(-));
//   log A_n(lambda) = log Wtilde_{lambda a_minus}(Z_n(+))
//                   + log Wtilde_{-lambda a_plus}(Z_n(-)),
// the exponential-family martingale whose lambda-derivative at 0 is M_n.
double urn_m(const WeightFunction& w, std::int64_t z_plus,
             std::int64_t z_minus, double a_plus, double a_minus);
double urn_log_a(const WeightFunction& w, double lambda, std::int64_t z_plus,
                 std::int64_t z_minus, double a_plus, double a_minus);

inline const std::vector<double>& default_lambda_grid() {
  static const std::vector<double> grid{0.25, 0.5, 1.0, 2.0, 4.0};
  return grid;
}

// Four-site frame 1..4 relative to `origin`:
//   R_n = Z(o+4) + Z(o+2) - Z(o+1) - Z(o+3),
//   z_n = log(Z(o+3)/Z(o+2)),  y_n = R_n / (Z(o+2) Z(o+3)).
struct TriadSeries {
  std::vector<std::int64_t> r;
  std::vector<double> z_log;
  std::vector<double> y;
};
TriadSeries triad_series(const Trace& trace, Vertex origin);

// Exact integer identity: R_i minus (departures(o+5 -> o+4) minus
// departures(o -> o+1) plus 1{X_i = o+2 or X_i >= o+4}) is the same integer
// for every i.
bool check_identity_ri(const Trace& trace, Vertex origin);

// max_n |Y_n^+(x-1) + Y_n^-(x+1) - (h(Z_n(x)) - h(1 + 1{X_0 = x}))|.
double check_identity_1est_d(const Trace& trace, Vertex x);

// Deviation from constancy of
//   n -> Y_n^s(x) + 1{s X_n <= s x}/Z_{n-1}(x+s) - U_{n,-s}^+(x+s),
// sign s in {+1, -1}, with the convention Z_{-1} := Z_0.
double check_identity_pol_a(const Trace& trace, Vertex x, int sign);

// Logit f(t) = log(t / (1 - t)).
double logit_f(double t);

// sup_{m <= k <= n} [ f(alpha_n^-(y)) - f(alpha_k^-(y)) - (Y_n(y-2) - Y_k(y-2)) ]
// computed by the running-max decomposition in one pass.
double logit_drift_statistic(const Trace& trace, Vertex y, std::int64_t m);

// Vertices visited within the trailing tail_fraction of steps.
std::set<Vertex> estimate_asymptotic_range(const Trace& trace,
                                           double tail_fraction);

// Trailing partial sum Y_N(x) - Y_m(x); small values signal Y_inf(x) finite.
double upsilon_proxy(const Trace& trace, Vertex x, std::int64_t m);

// Z_N(v) = visits + 1 for every visited vertex.
std::map<Vertex, std::int64_t> terminal_counts(const Trace& trace);

}  // namespace sirw

#endif  // SIRW_DIAGNOSTICS_HPP
