#include "sirw/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sirw {

SiteStatsTracker::SiteStatsTracker(std::vector<Vertex> sites) {
  for (Vertex x : sites) sites_.emplace(x, Accumulators{});
}

SiteSnapshot SiteStatsTracker::snapshot(const Accumulators& acc,
                                        std::int64_t n) const {
  SiteSnapshot s{};
  s.n = n;
  s.y = acc.y.value();
  for (int i = 0; i < 2; ++i) {
    s.alpha[i] = acc.alpha[i];
    s.y_dir[i] = acc.y_dir[i].value();
    s.y_hat[i] = s.y_dir[i] - s.y;
    s.u_up[i] = acc.u_up[i].value();
    s.u_down[i] = acc.u_down[i].value();
    s.u_pred[i] = acc.u_pred[i].value();
    s.u_hat_up[i] = s.u_up[i] - s.u_pred[i];
    s.u_hat_down[i] = s.u_down[i] - s.u_pred[i];
    s.u_check[i] = s.u_hat_up[i] - s.u_hat_down[i];
  }
  return s;
}

void SiteStatsTracker::init(const WalkState& state) {
  step_ = state.step;
  next_checkpoint_ = 1;
  for (auto& [x, acc] : sites_) {
    double zl = static_cast<double>(state.z(x - 1));
    double zr = static_cast<double>(state.z(x + 1));
    acc.alpha[0] = zr / (zl + zr);
    acc.alpha[1] = zl / (zl + zr);
    acc.history.clear();
    acc.history.push_back(snapshot(acc, step_));
  }
}

void SiteStatsTracker::observe(const WalkState& before, Vertex to) {
  Vertex from = before.position;
  std::int64_t n = before.step + 1;
  for (auto& [x, acc] : sites_) {
    double zl = static_cast<double>(before.z(x - 1));
    double zr = static_cast<double>(before.z(x + 1));
    if (from == x) {
      double zx = static_cast<double>(before.z(x));
      acc.y.add(1.0 / (zl + zr));
      acc.u_pred[0].add(zr / (zl + zr) / zx);
      acc.u_pred[1].add(zl / (zl + zr) / zx);
      if (to == x + 1) {
        acc.y_dir[0].add(1.0 / zr);
        acc.u_up[0].add(1.0 / zx);
        acc.u_down[1].add(zl / zr / zx);
      } else if (to == x - 1) {
        acc.y_dir[1].add(1.0 / zl);
        acc.u_up[1].add(1.0 / zx);
        acc.u_down[0].add(zr / zl / zx);
      }
    }
    if (to == x - 1) zl += 1.0;
    if (to == x + 1) zr += 1.0;
    acc.alpha[0] = zr / (zl + zr);
    acc.alpha[1] = zl / (zl + zr);
  }
  step_ = n;
  if (n == next_checkpoint_) {
    for (auto& [x, acc] : sites_) acc.history.push_back(snapshot(acc, n));
    next_checkpoint_ *= 2;
  }
}

std::vector<SiteSnapshot> SiteStatsTracker::snapshots(Vertex x) const {
  auto it = sites_.find(x);
  if (it == sites_.end()) throw std::invalid_argument("site not tracked");
  std::vector<SiteSnapshot> out = it->second.history;
  if (out.empty() || out.back().n != step_)
    out.push_back(snapshot(it->second, step_));
  return out;
}

SiteSnapshot SiteStatsTracker::current(Vertex x) const {
  auto it = sites_.find(x);
  if (it == sites_.end()) throw std::invalid_argument("site not tracked");
  return snapshot(it->second, step_);
}

double urn_m(const WeightFunction& w, std::int64_t z_plus,
             std::int64_t z_minus, double a_plus, double a_minus) {
  return a_minus * wstar(w, z_plus) - a_plus * wstar(w, z_minus);
}

double urn_log_a(const WeightFunction& w, double lambda, std::int64_t z_plus,
                 std::int64_t z_minus, double a_plus, double a_minus) {
  // Product form: the +1 colour contributes factors (1 + lambda a_minus / W),
  // the -1 colour factors (1 - lambda a_plus / W). A step multiplies A by
  // (1 + lambda a_-i / W(Z(i))) when colour i is picked, and the expected
  // relative increment cancels exactly, so E A_n = A_0 = 1 at every n.
  // Positivity requires lambda a_plus < W(1).
  return wtilde_log(w, lambda * a_minus, z_plus) +
         wtilde_log(w, -lambda * a_plus, z_minus);
}

TriadSeries triad_series(const Trace& trace, Vertex origin) {
  CounterMap z(1);
  z.increment(trace.x0());
  auto record = [&](TriadSeries& s) {
    std::int64_t z1 = z.get(origin + 1), z2 = z.get(origin + 2);
    std::int64_t z3 = z.get(origin + 3), z4 = z.get(origin + 4);
    s.r.push_back(z4 + z2 - z1 - z3);
    s.z_log.push_back(std::log(static_cast<double>(z3) /
                               static_cast<double>(z2)));
    s.y.push_back(static_cast<double>(s.r.back()) /
                  (static_cast<double>(z2) * static_cast<double>(z3)));
  };
  TriadSeries s;
  record(s);
  for (std::size_t i = 1; i < trace.positions.size(); ++i) {
    z.increment(trace.positions[i]);
    record(s);
  }
  return s;
}

bool check_identity_ri(const Trace& trace, Vertex origin) {
  CounterMap z(1);
  z.increment(trace.x0());
  std::int64_t dep_54 = 0;  // departures origin+5 -> origin+4
  std::int64_t dep_01 = 0;  // departures origin   -> origin+1
  auto constant_at = [&](Vertex pos) {
    std::int64_t r = z.get(origin + 4) + z.get(origin + 2) - z.get(origin + 1) -
                     z.get(origin + 3);
    std::int64_t ind = (pos == origin + 2 || pos >= origin + 4) ? 1 : 0;
    return r - dep_54 + dep_01 - ind;
  };
  std::int64_t c0 = constant_at(trace.x0());
  for (std::size_t i = 1; i < trace.positions.size(); ++i) {
    Vertex from = trace.positions[i - 1], to = trace.positions[i];
    if (from == origin + 5 && to == origin + 4) ++dep_54;
    if (from == origin && to == origin + 1) ++dep_01;
    z.increment(to);
    if (constant_at(to) != c0) return false;
  }
  return true;
}

double check_identity_1est_d(const Trace& trace, Vertex x) {
  CounterMap z(1);
  z.increment(trace.x0());
  double rhs_shift = harmonic(1 + (trace.x0() == x ? 1 : 0));
  KahanSum lhs;
  KahanSum h_z;  // harmonic(Z(x)), grown one reciprocal per visit
  for (std::int64_t k = 1; k < z.get(x); ++k)
    h_z.add(1.0 / static_cast<double>(k));
  double max_dev = std::abs(lhs.value() - (h_z.value() - rhs_shift));
  for (std::size_t i = 1; i < trace.positions.size(); ++i) {
    Vertex from = trace.positions[i - 1], to = trace.positions[i];
    if (to == x && (from == x - 1 || from == x + 1))
      lhs.add(1.0 / static_cast<double>(z.get(x)));
    if (to == x) h_z.add(1.0 / static_cast<double>(z.get(x)));
    z.increment(to);
    max_dev =
        std::max(max_dev, std::abs(lhs.value() - (h_z.value() - rhs_shift)));
  }
  return max_dev;
}

double check_identity_pol_a(const Trace& trace, Vertex x, int sign) {
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("sign must be +-1");
  Vertex nbr = x + sign;
  CounterMap z(1);
  z.increment(trace.x0());
  KahanSum y_dir;  // Y_n^s(x)
  KahanSum u;      // U_{n,-s}^+(x+s): departures x+s -> x, weight 1/Z(x+s)
  auto value = [&](Vertex pos, double z_nbr_prev) {
    double ind = sign * pos <= sign * x ? 1.0 : 0.0;
    return y_dir.value() + ind / z_nbr_prev - u.value();
  };
  double v0 = value(trace.x0(), static_cast<double>(z.get(nbr)));
  double max_dev = 0.0;
  for (std::size_t i = 1; i < trace.positions.size(); ++i) {
    Vertex from = trace.positions[i - 1], to = trace.positions[i];
    double z_nbr_prev = static_cast<double>(z.get(nbr));
    if (from == x && to == nbr) y_dir.add(1.0 / z_nbr_prev);
    if (from == nbr && to == x) u.add(1.0 / z_nbr_prev);
    z.increment(to);
    max_dev = std::max(max_dev, std::abs(value(to, z_nbr_prev) - v0));
  }
  return max_dev;
}

double logit_f(double t) {
  if (t <= 0.0 || t >= 1.0)
    throw std::domain_error("logit argument must lie in (0,1)");
  return std::log(t / (1.0 - t));
}

double logit_drift_statistic(const Trace& trace, Vertex y, std::int64_t m) {
  std::int64_t steps = trace.steps();
  if (m < 0 || m > steps)
    throw std::invalid_argument("m out of range");
  CounterMap z(1);
  z.increment(trace.x0());
  KahanSum y_prev;  // Y_k(y-2)
  std::vector<double> g(static_cast<std::size_t>(steps) + 1);
  std::vector<double> neg(static_cast<std::size_t>(steps) + 1);
  auto record = [&](std::int64_t k) {
    double zl = static_cast<double>(z.get(y - 1));
    double zr = static_cast<double>(z.get(y + 1));
    double f = logit_f(zl / (zl + zr));
    g[static_cast<std::size_t>(k)] = f - y_prev.value();
    neg[static_cast<std::size_t>(k)] = y_prev.value() - f;
  };
  record(0);
  for (std::size_t i = 1; i < trace.positions.size(); ++i) {
    Vertex from = trace.positions[i - 1], to = trace.positions[i];
    if (from == y - 2)
      y_prev.add(1.0 / static_cast<double>(z.get(y - 3) + z.get(y - 1)));
    z.increment(to);
    record(static_cast<std::int64_t>(i));
  }
  double best_neg = -std::numeric_limits<double>::infinity();
  double stat = -std::numeric_limits<double>::infinity();
  for (std::int64_t n = m; n <= steps; ++n) {
    best_neg = std::max(best_neg, neg[static_cast<std::size_t>(n)]);
    stat = std::max(stat, g[static_cast<std::size_t>(n)] + best_neg);
  }
  return stat;
}

std::set<Vertex> estimate_asymptotic_range(const Trace& trace,
                                           double tail_fraction) {
  if (trace.positions.empty())
    throw std::invalid_argument("empty trace");
  if (tail_fraction < 0.0 || tail_fraction > 1.0)
    throw std::invalid_argument("tail_fraction must lie in [0,1]");
  std::int64_t steps = trace.steps();
  auto start = static_cast<std::int64_t>(
      std::llround((1.0 - tail_fraction) * static_cast<double>(steps)));
  std::set<Vertex> out;
  for (std::int64_t i = start; i <= steps; ++i)
    out.insert(trace.positions[static_cast<std::size_t>(i)]);
  return out;
}

double upsilon_proxy(const Trace& trace, Vertex x, std::int64_t m) {
  CounterMap z(1);
  z.increment(trace.x0());
  KahanSum tail;
  for (std::size_t i = 1; i < trace.positions.size(); ++i) {
    Vertex from = trace.positions[i - 1], to = trace.positions[i];
    if (static_cast<std::int64_t>(i) > m && from == x)
      tail.add(1.0 / static_cast<double>(z.get(x - 1) + z.get(x + 1)));
    z.increment(to);
  }
  return tail.value();
}

std::map<Vertex, std::int64_t> terminal_counts(const Trace& trace) {
  std::map<Vertex, std::int64_t> z;
  for (Vertex v : trace.positions) ++z[v];
  for (auto& [v, c] : z) ++c;  // Z = visits + 1; X_0 counts as a visit
  return z;
}

}  // namespace sirw
