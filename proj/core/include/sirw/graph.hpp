#ifndef SIRW_GRAPH_HPP
#define SIRW_GRAPH_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace sirw {

using Vertex = std::int32_t;

// Locally finite nonoriented graph with symmetric positive propensities
// a_{i,j} > 0 iff i ~ j. Loops (i ~ i) are permitted. The integer line is
// handled without materializing vertices; all other kinds hold explicit
// adjacency. Graphs are immutable after construction and safe to share.
class Graph {
 public:
  static constexpr int kMaxDegreeLine = 2;

  static Graph line();
  static Graph cycle(int length);  // Z/lZ, l >= 3
  // Complete d-partite with possible loops; looped vertices must sit in
  // singleton parts. propensity[p][q] is the constant a between parts p,q
  // (and the loop propensity when p == q is a looped singleton).
  static Graph complete_multipartite(
      std::vector<std::vector<Vertex>> parts, std::set<Vertex> loops = {},
      std::vector<std::vector<double>> propensity = {});
  static Graph from_edges(
      std::vector<std::tuple<Vertex, Vertex, double>> edges);

  bool is_line() const { return kind_ == Kind::line; }

  bool adjacent(Vertex i, Vertex j) const;
  // Throws std::out_of_range for non-adjacent pairs.
  double propensity(Vertex i, Vertex j) const;

  // Fills out[]/props[] with the neighbors of v (sorted ascending) and their
  // propensities; returns the degree. Buffers must hold max_degree() entries.
  int neighbors_into(Vertex v, Vertex* out, double* props) const;
  std::vector<Vertex> neighbors(Vertex v) const;
  int degree(Vertex v) const;
  int max_degree() const;

  // Vertex set for finite kinds; throws for the line.
  std::vector<Vertex> vertices() const;

 private:
  enum class Kind { line, finite };
  Kind kind_ = Kind::line;
  // finite kinds: sorted adjacency with propensities
  std::map<Vertex, std::vector<std::pair<Vertex, double>>> adj_;
  int max_degree_ = kMaxDegreeLine;
};

// Element of the finite-support simplex over the graph's vertices.
class OccupationVector {
 public:
  OccupationVector() = default;
  explicit OccupationVector(std::map<Vertex, double> entries);

  double at(Vertex v) const;
  const std::map<Vertex, double>& entries() const { return entries_; }
  std::vector<Vertex> support() const;
  bool in_simplex(double tol = 1e-9) const;

 private:
  std::map<Vertex, double> entries_;
};

struct ReplicatorQuantities {
  std::map<Vertex, double> n;  // N_i(x) on S(x) and its outer boundary
  double h;                    // H(x) = sum_i x_i N_i(x)
};

ReplicatorQuantities replicator_quantities(const Graph& g,
                                           const OccupationVector& x);

// Stability predicate (P)_x: max Sp[a_{i,j} - 2H(x)] over S(x) is <= tol and
// N_i(x) - H(x) < -tol on the outer boundary.
bool check_px(const Graph& g, const OccupationVector& x, double tol = 1e-9);

struct PartitionResult {
  bool ok = false;
  std::vector<std::vector<Vertex>> parts;
};

// Recognizes whether the subgraph induced on S is a complete d-partite graph
// with possible loops satisfying (P)_S(a)-(c); returns the witness partition.
PartitionResult is_complete_d_partite_with_loops(
    const Graph& g, const std::vector<Vertex>& s);

// Exhaustive partition search, test oracle for |S| <= 8.
PartitionResult is_complete_d_partite_brute_force(
    const Graph& g, const std::vector<Vertex>& s);

// Eigenvalues of a small symmetric matrix by cyclic Jacobi rotations.
std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> m,
                                       double tol = 1e-10);

}  // namespace sirw

#endif  // SIRW_GRAPH_HPP
