#include <stdexcept>

#include "doctest.h"
#include "sirw/graph.hpp"

using namespace sirw;

TEST_CASE("integer line adjacency") {
  Graph g = Graph::line();
  CHECK(g.is_line());
  CHECK(g.adjacent(0, 1));
  CHECK(g.adjacent(-5, -6));
  CHECK_FALSE(g.adjacent(0, 2));
  CHECK(g.degree(17) == 2);
  CHECK(g.propensity(3, 4) == doctest::Approx(1.0));
  CHECK_THROWS_AS((void)g.propensity(0, 2), std::out_of_range);
}

TEST_CASE("cycles wrap around") {
  Graph g = Graph::cycle(3);
  CHECK(g.adjacent(0, 2));
  CHECK(g.adjacent(0, 1));
  CHECK(g.degree(1) == 2);
  CHECK(g.vertices().size() == 3);
  Graph c6 = Graph::cycle(6);
  CHECK(c6.adjacent(5, 0));
  CHECK_FALSE(c6.adjacent(0, 3));
}

TEST_CASE("from_edges keeps propensities symmetric") {
  Graph g = Graph::from_edges({{0, 1, 2.0}, {1, 2, 3.0}});
  CHECK(g.propensity(0, 1) == doctest::Approx(2.0));
  CHECK(g.propensity(1, 0) == doctest::Approx(2.0));
  CHECK(g.propensity(2, 1) == doctest::Approx(3.0));
  CHECK_FALSE(g.adjacent(0, 2));
  CHECK(g.neighbors(1) == std::vector<Vertex>{0, 2});
}

TEST_CASE("complete multipartite construction") {
  Graph g = Graph::complete_multipartite({{0, 1}, {2}});
  CHECK(g.adjacent(0, 2));
  CHECK(g.adjacent(1, 2));
  CHECK_FALSE(g.adjacent(0, 1));
  CHECK_FALSE(g.adjacent(2, 2));
  Graph gl = Graph::complete_multipartite({{0, 1}, {2}}, {2});
  CHECK(gl.adjacent(2, 2));
}

TEST_CASE("occupation vectors") {
  OccupationVector x({{0, 0.5}, {1, 0.5}});
  CHECK(x.in_simplex());
  CHECK(x.at(0) == doctest::Approx(0.5));
  CHECK(x.at(7) == doctest::Approx(0.0));
  CHECK(x.support() == std::vector<Vertex>{0, 1});
  CHECK_FALSE(OccupationVector({{0, 0.7}, {1, 0.5}}).in_simplex());
}

TEST_CASE("replicator quantities on the uniform triangle") {
  Graph g = Graph::cycle(3);
  OccupationVector x(
      {{0, 1.0 / 3}, {1, 1.0 / 3}, {2, 1.0 / 3}});
  auto q = replicator_quantities(g, x);
  CHECK(q.n.at(0) == doctest::Approx(2.0 / 3));
  CHECK(q.h == doctest::Approx(2.0 / 3));
}

TEST_CASE("stability predicate accepts the uniform triangle") {
  Graph g = Graph::cycle(3);
  OccupationVector x(
      {{0, 1.0 / 3}, {1, 1.0 / 3}, {2, 1.0 / 3}});
  CHECK(check_px(g, x));
}

TEST_CASE("stability predicate rejects a dominated boundary") {
  // Boundary vertex 3 attached to 0 with a strong propensity: N_3 - H > 0.
  Graph g = Graph::from_edges(
      {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}, {3, 0, 9.0}});
  OccupationVector x(
      {{0, 1.0 / 3}, {1, 1.0 / 3}, {2, 1.0 / 3}});
  CHECK_FALSE(check_px(g, x));
}

TEST_CASE("d-partite recognizer on hand graphs") {
  Graph path = Graph::from_edges({{0, 1, 1.0}, {1, 2, 1.0}});
  auto r = is_complete_d_partite_with_loops(path, {0, 1, 2});
  CHECK(r.ok);  // K_{1,2}
  CHECK(r.parts.size() == 2);

  Graph c4 = Graph::cycle(4);
  CHECK(is_complete_d_partite_with_loops(c4, {0, 1, 2, 3}).ok);  // K_{2,2}

  Graph c5 = Graph::cycle(5);
  CHECK_FALSE(is_complete_d_partite_with_loops(c5, {0, 1, 2, 3, 4}).ok);

  Graph tri = Graph::cycle(3);
  auto rt = is_complete_d_partite_with_loops(tri, {0, 1, 2});
  CHECK(rt.ok);
  CHECK(rt.parts.size() == 3);
}

TEST_CASE("recognizer and brute force agree on hand graphs") {
  for (int l : {3, 4, 5, 6}) {
    Graph g = Graph::cycle(l);
    std::vector<Vertex> s;
    for (int v = 0; v < l; ++v) s.push_back(v);
    CHECK(is_complete_d_partite_with_loops(g, s).ok ==
          is_complete_d_partite_brute_force(g, s).ok);
  }
}

TEST_CASE("loops must sit in singleton parts") {
  // Loop on a vertex that shares a part with another vertex: rejected.
  Graph g = Graph::from_edges({{0, 2, 1.0}, {1, 2, 1.0}, {0, 0, 1.0}});
  CHECK_FALSE(is_complete_d_partite_with_loops(g, {0, 1, 2}).ok);
  CHECK_FALSE(is_complete_d_partite_brute_force(g, {0, 1, 2}).ok);
  // Loop on a singleton part: fine.
  Graph g2 = Graph::from_edges({{0, 1, 1.0}, {1, 1, 1.0}});
  CHECK(is_complete_d_partite_with_loops(g2, {0, 1}).ok);
}

TEST_CASE("jacobi eigenvalues") {
  auto ev = jacobi_eigenvalues({{2.0, 0.0}, {0.0, 3.0}});
  CHECK(ev[0] == doctest::Approx(2.0));
  CHECK(ev[1] == doctest::Approx(3.0));
  auto ev2 = jacobi_eigenvalues({{0.0, 1.0}, {1.0, 0.0}});
  CHECK(ev2[0] == doctest::Approx(-1.0));
  CHECK(ev2[1] == doctest::Approx(1.0));
}
