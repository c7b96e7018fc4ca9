#include "sirw/graph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <tuple>

namespace sirw {

Graph Graph::line() {
  Graph g;
  g.kind_ = Kind::line;
  g.max_degree_ = kMaxDegreeLine;
  return g;
}

Graph Graph::cycle(int length) {
  if (length < 3) throw std::invalid_argument("Graph::cycle: length must be >= 3");
  std::vector<std::tuple<Vertex, Vertex, double>> edges;
  for (Vertex i = 0; i < length; ++i)
    edges.emplace_back(i, (i + 1) % length, 1.0);
  return from_edges(std::move(edges));
}

Graph Graph::complete_multipartite(std::vector<std::vector<Vertex>> parts,
                                   std::set<Vertex> loops,
                                   std::vector<std::vector<double>> propensity) {
  std::set<Vertex> seen;
  for (const auto& p : parts) {
    if (p.empty())
      throw std::invalid_argument("complete_multipartite: empty part");
    for (Vertex v : p)
      if (!seen.insert(v).second)
        throw std::invalid_argument("complete_multipartite: parts not disjoint");
  }
  for (Vertex v : loops) {
    bool singleton = false;
    for (const auto& p : parts)
      if (p.size() == 1 && p[0] == v) singleton = true;
    if (!singleton)
      throw std::invalid_argument(
          "complete_multipartite: looped vertex must be a singleton part");
  }
  auto prop = [&](std::size_t p, std::size_t q) {
    if (propensity.empty()) return 1.0;
    return propensity[p][q];
  };
  std::vector<std::tuple<Vertex, Vertex, double>> edges;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    for (std::size_t q = p + 1; q < parts.size(); ++q)
      for (Vertex i : parts[p])
        for (Vertex j : parts[q]) edges.emplace_back(i, j, prop(p, q));
    if (parts[p].size() == 1 && loops.count(parts[p][0]))
      edges.emplace_back(parts[p][0], parts[p][0], prop(p, p));
  }
  return from_edges(std::move(edges));
}

Graph Graph::from_edges(std::vector<std::tuple<Vertex, Vertex, double>> edges) {
  Graph g;
  g.kind_ = Kind::finite;
  for (auto& [i, j, a] : edges) {
    if (a <= 0.0)
      throw std::invalid_argument("Graph: propensity must be positive");
    g.adj_[i].emplace_back(j, a);
    if (i != j) g.adj_[j].emplace_back(i, a);
  }
  g.max_degree_ = 0;
  for (auto& [v, nb] : g.adj_) {
    std::sort(nb.begin(), nb.end());
    for (std::size_t k = 1; k < nb.size(); ++k)
      if (nb[k].first == nb[k - 1].first)
        throw std::invalid_argument("Graph: duplicate edge");
    g.max_degree_ = std::max(g.max_degree_, static_cast<int>(nb.size()));
  }
  return g;
}

bool Graph::adjacent(Vertex i, Vertex j) const {
  if (kind_ == Kind::line) return std::abs(i - j) == 1;
  auto it = adj_.find(i);
  if (it == adj_.end()) return false;
  for (auto& [v, a] : it->second)
    if (v == j) return true;
  return false;
}

double Graph::propensity(Vertex i, Vertex j) const {
  if (kind_ == Kind::line) {
    if (std::abs(i - j) != 1)
      throw std::out_of_range("Graph::propensity: vertices not adjacent");
    return 1.0;
  }
  auto it = adj_.find(i);
  if (it != adj_.end())
    for (auto& [v, a] : it->second)
      if (v == j) return a;
  throw std::out_of_range("Graph::propensity: vertices not adjacent");
}

int Graph::neighbors_into(Vertex v, Vertex* out, double* props) const {
  if (kind_ == Kind::line) {
    out[0] = v - 1;
    out[1] = v + 1;
    props[0] = props[1] = 1.0;
    return 2;
  }
  auto it = adj_.find(v);
  if (it == adj_.end()) return 0;
  int n = 0;
  for (auto& [u, a] : it->second) {
    out[n] = u;
    props[n] = a;
    ++n;
  }
  return n;
}

std::vector<Vertex> Graph::neighbors(Vertex v) const {
  std::vector<Vertex> out(static_cast<std::size_t>(max_degree()));
  std::vector<double> props(out.size());
  int n = neighbors_into(v, out.data(), props.data());
  out.resize(static_cast<std::size_t>(n));
  return out;
}

int Graph::degree(Vertex v) const {
  if (kind_ == Kind::line) return 2;
  auto it = adj_.find(v);
  return it == adj_.end() ? 0 : static_cast<int>(it->second.size());
}

int Graph::max_degree() const { return max_degree_; }

std::vector<Vertex> Graph::vertices() const {
  if (kind_ == Kind::line)
    throw std::logic_error("Graph::vertices: the line is not materialized");
  std::vector<Vertex> out;
  out.reserve(adj_.size());
  for (auto& [v, nb] : adj_) out.push_back(v);
  return out;
}

OccupationVector::OccupationVector(std::map<Vertex, double> entries)
    : entries_(std::move(entries)) {
  for (auto& [v, x] : entries_)
    if (x < 0.0)
      throw std::invalid_argument("OccupationVector: negative entry");
}

double OccupationVector::at(Vertex v) const {
  auto it = entries_.find(v);
  return it == entries_.end() ? 0.0 : it->second;
}

std::vector<Vertex> OccupationVector::support() const {
  std::vector<Vertex> s;
  for (auto& [v, x] : entries_)
    if (x != 0.0) s.push_back(v);
  return s;
}

bool OccupationVector::in_simplex(double tol) const {
  double sum = 0.0;
  for (auto& [v, x] : entries_) sum += x;
  return std::fabs(sum - 1.0) <= tol;
}

ReplicatorQuantities replicator_quantities(const Graph& g,
                                           const OccupationVector& x) {
  std::vector<Vertex> support = x.support();
  std::set<Vertex> targets(support.begin(), support.end());
  for (Vertex v : support)
    for (Vertex u : g.neighbors(v)) targets.insert(u);
  ReplicatorQuantities r;
  r.h = 0.0;
  for (Vertex i : targets) {
    double ni = 0.0;
    for (Vertex j : g.neighbors(i)) ni += g.propensity(i, j) * x.at(j);
    r.n[i] = ni;
    r.h += x.at(i) * ni;
  }
  return r;
}

std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> m,
                                       double tol) {
  const std::size_t n = m.size();
  if (n == 0) return {};
  for (int sweep = 0; sweep < 200; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += m[p][q] * m[p][q];
    if (std::sqrt(off) < tol) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::fabs(m[p][q]) < 1e-300) continue;
        double theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
        double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          double mkp = m[k][p], mkq = m[k][q];
          m[k][p] = c * mkp - s * mkq;
          m[k][q] = s * mkp + c * mkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double mpk = m[p][k], mqk = m[q][k];
          m[p][k] = c * mpk - s * mqk;
          m[q][k] = s * mpk + c * mqk;
        }
      }
    }
  }
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = m[i][i];
  std::sort(eig.begin(), eig.end());
  return eig;
}

bool check_px(const Graph& g, const OccupationVector& x, double tol) {
  std::vector<Vertex> support = x.support();
  if (support.empty()) return false;
  ReplicatorQuantities rq = replicator_quantities(g, x);

  const std::size_t n = support.size();
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double a = g.adjacent(support[i], support[j])
                     ? g.propensity(support[i], support[j])
                     : 0.0;
      m[i][j] = a - 2.0 * rq.h;
    }
  std::vector<double> eig = jacobi_eigenvalues(std::move(m));
  if (eig.back() > tol) return false;

  std::set<Vertex> in_support(support.begin(), support.end());
  for (auto& [i, ni] : rq.n) {
    if (in_support.count(i)) continue;
    if (ni - rq.h >= -tol) return false;
  }
  return true;
}

namespace {

bool validate_partition(const Graph& g, const std::vector<Vertex>& s,
                        const std::vector<std::vector<Vertex>>& parts) {
  // (a) within parts: non-adjacent (loops excepted via (b)); across: complete.
  // (b) loops only in singleton parts. (c) constant propensity per part pair.
  for (const auto& p : parts) {
    for (std::size_t a = 0; a < p.size(); ++a) {
      if (g.adjacent(p[a], p[a]) && p.size() > 1) return false;
      for (std::size_t b = a + 1; b < p.size(); ++b)
        if (g.adjacent(p[a], p[b])) return false;
    }
  }
  for (std::size_t p = 0; p < parts.size(); ++p)
    for (std::size_t q = p + 1; q < parts.size(); ++q) {
      double common = 0.0;
      bool first = true;
      for (Vertex i : parts[p])
        for (Vertex j : parts[q]) {
          if (!g.adjacent(i, j)) return false;
          double a = g.propensity(i, j);
          if (first) {
            common = a;
            first = false;
          } else if (std::fabs(a - common) > 1e-12) {
            return false;
          }
        }
    }
  (void)s;
  return true;
}

void sort_partition(std::vector<std::vector<Vertex>>& parts) {
  for (auto& p : parts) std::sort(p.begin(), p.end());
  std::sort(parts.begin(), parts.end());
}

}  // namespace

PartitionResult is_complete_d_partite_with_loops(const Graph& g,
                                                 const std::vector<Vertex>& s) {
  PartitionResult result;
  if (s.empty()) return result;
  // Parts of a complete multipartite graph are the connected components of the
  // complement of the induced subgraph (loops ignored for connectivity).
  std::vector<int> comp(s.size(), -1);
  int ncomp = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (comp[i] >= 0) continue;
    std::vector<std::size_t> stack{i};
    comp[i] = ncomp;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t u = 0; u < s.size(); ++u)
        if (comp[u] < 0 && u != v && !g.adjacent(s[v], s[u])) {
          comp[u] = ncomp;
          stack.push_back(u);
        }
    }
    ++ncomp;
  }
  std::vector<std::vector<Vertex>> parts(static_cast<std::size_t>(ncomp));
  for (std::size_t i = 0; i < s.size(); ++i)
    parts[static_cast<std::size_t>(comp[i])].push_back(s[i]);
  if (!validate_partition(g, s, parts)) return result;
  sort_partition(parts);
  result.ok = true;
  result.parts = std::move(parts);
  return result;
}

PartitionResult is_complete_d_partite_brute_force(const Graph& g,
                                                  const std::vector<Vertex>& s) {
  PartitionResult result;
  if (s.empty() || s.size() > 12) return result;
  // Enumerate set partitions via restricted growth strings.
  std::vector<int> assign(s.size(), 0);
  std::function<bool(std::size_t, int)> rec = [&](std::size_t i,
                                                  int max_used) -> bool {
    if (i == s.size()) {
      std::vector<std::vector<Vertex>> parts(
          static_cast<std::size_t>(max_used + 1));
      for (std::size_t k = 0; k < s.size(); ++k)
        parts[static_cast<std::size_t>(assign[k])].push_back(s[k]);
      if (validate_partition(g, s, parts)) {
        sort_partition(parts);
        result.ok = true;
        result.parts = std::move(parts);
        return true;
      }
      return false;
    }
    for (int c = 0; c <= max_used + 1; ++c) {
      assign[i] = c;
      if (rec(i + 1, std::max(max_used, c))) return true;
    }
    return false;
  };
  rec(1, 0);
  return result;
}

}  // namespace sirw
