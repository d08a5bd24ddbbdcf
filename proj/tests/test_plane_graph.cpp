#include <algorithm>
#include <catch2/catch_amalgamated.hpp>
#include <numeric>
#include <set>

#include "kissing/plane_graph.hpp"

using namespace kissing;

namespace {

PlaneGraph square() { return polygon_graph(3); }

PlaneGraph square_with_chord02() { return outerplanar_graph(4, {{0, 2}}); }

PlaneGraph k4() {
  // Outer triangle 0,1,2 counterclockwise with 3 in the middle.
  return PlaneGraph::from_rotation(4, {{1, 3, 2}, {2, 3, 0}, {0, 3, 1}, {0, 1, 2}});
}

PlaneGraph cube_graph() {
  // Bottom 0..3 ccw, top 4..7 with i above i.
  return PlaneGraph::from_rotation(8, {
                                          {1, 4, 3},
                                          {2, 5, 0},
                                          {3, 6, 1},
                                          {0, 7, 2},
                                          {0, 5, 7},
                                          {1, 6, 4},
                                          {2, 7, 5},
                                          {3, 4, 6},
                                      });
}

PlaneGraph bowtie() {
  // Two triangles (0,1,2) and (0,3,4) sharing vertex 0.
  return PlaneGraph::from_rotation(5, {{1, 2, 3, 4}, {2, 0}, {0, 1}, {4, 0}, {0, 3}});
}

// Independent connectivity oracle on an adjacency matrix.
bool oracle_connected_minus(const PlaneGraph& g, const std::set<int>& removed) {
  int n = g.n;
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (int d = 0; d < g.dart_count(); ++d) adj[g.origin[d]][g.target(d)] = 1;
  int start = -1, keep = 0;
  for (int v = 0; v < n; ++v)
    if (!removed.count(v)) {
      if (start < 0) start = v;
      ++keep;
    }
  if (keep == 0) return true;
  std::set<int> vis{start};
  std::vector<int> stack{start};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u = 0; u < n; ++u)
      if (adj[v][u] && !removed.count(u) && !vis.count(u)) {
        vis.insert(u);
        stack.push_back(u);
      }
  }
  return static_cast<int>(vis.size()) == keep;
}

bool oracle_k_connected(const PlaneGraph& g, int k) {
  if (g.n <= k) return false;
  std::vector<int> verts(g.n);
  std::iota(verts.begin(), verts.end(), 0);
  if (k == 2) {
    for (int v : verts)
      if (!oracle_connected_minus(g, {v})) return false;
    return true;
  }
  for (int v : verts)
    if (!oracle_connected_minus(g, {v})) return false;
  for (int v : verts)
    for (int w : verts)
      if (v < w && !oracle_connected_minus(g, {v, w})) return false;
  return true;
}

// Permutation-based Hamiltonian cycle oracle.
int oracle_hamiltonian_count(const PlaneGraph& g) {
  int n = g.n;
  if (n < 3) return 0;
  std::vector<int> perm(n - 1);
  std::iota(perm.begin(), perm.end(), 1);
  int count = 0;
  do {
    if (perm.front() > perm.back()) continue;  // fix reflection
    bool ok = g.adjacent(0, perm.front()) && g.adjacent(perm.back(), 0);
    for (size_t i = 0; ok && i + 1 < perm.size(); ++i)
      ok = g.adjacent(perm[i], perm[i + 1]);
    if (ok) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

}  // namespace

TEST_CASE("square cycle has two faces of length four") {
  PlaneGraph g = square();
  REQUIRE(g.n == 4);
  REQUIRE(g.edge_count() == 4);
  REQUIRE(g.face_count() == 2);
  for (auto& f : g.faces()) REQUIRE(f.size() == 4);
}

TEST_CASE("K4 face structure satisfies Euler") {
  PlaneGraph g = k4();
  REQUIRE(g.n == 4);
  REQUIRE(g.edge_count() == 6);
  REQUIRE(g.face_count() == 4);
  for (auto& f : g.faces()) REQUIRE(f.size() == 3);
}

TEST_CASE("rotation encoding K5 violates the Euler formula") {
  std::vector<std::vector<int>> rot(5);
  for (int v = 0; v < 5; ++v)
    for (int u = 0; u < 5; ++u)
      if (u != v) rot[v].push_back(u);
  REQUIRE_THROWS_MATCHES(PlaneGraph::from_rotation(5, rot), Error, Catch::Matchers::Predicate<Error>(
      [](const Error& e) { return e.code() == ErrorCode::EulerViolation; }));
}

TEST_CASE("disconnected input is rejected") {
  REQUIRE_THROWS_MATCHES(
      PlaneGraph::from_rotation(4, {{1}, {0}, {3}, {2}}), Error,
      Catch::Matchers::Predicate<Error>(
          [](const Error& e) { return e.code() == ErrorCode::Disconnected; }));
}

TEST_CASE("cube graph has six quadrilateral faces") {
  PlaneGraph g = cube_graph();
  REQUIRE(g.face_count() == 6);
  for (auto& f : g.faces()) REQUIRE(f.size() == 4);
}

TEST_CASE("k-connectivity matches the subset-removal oracle on named graphs") {
  REQUIRE(is_k_connected(k4(), 3));
  REQUIRE_FALSE(is_k_connected(bowtie(), 2));
  REQUIRE_FALSE(is_k_connected(square_with_chord02(), 3));
  for (auto make : {square, square_with_chord02, k4, bowtie, cube_graph}) {
    PlaneGraph g = make();
    REQUIRE(is_k_connected(g, 2) == oracle_k_connected(g, 2));
    REQUIRE(is_k_connected(g, 3) == oracle_k_connected(g, 3));
  }
}

TEST_CASE("outerplanar face detection") {
  REQUIRE(outerplanar_face(square_with_chord02()).has_value());
  REQUIRE_FALSE(outerplanar_face(k4()).has_value());
  auto f = outerplanar_face(polygon_graph(3));
  REQUIRE(f.has_value());
  REQUIRE(*f == 0);  // both faces qualify; lowest id wins
}

TEST_CASE("hamiltonian cycles against the permutation oracle") {
  REQUIRE(hamiltonian_cycles(k4()).size() == 3);
  REQUIRE(oracle_hamiltonian_count(k4()) == 3);
  REQUIRE(hamiltonian_cycles(square_with_chord02()).size() == 1);
  REQUIRE(oracle_hamiltonian_count(square_with_chord02()) == 1);
  // star K_{1,3}
  PlaneGraph star = PlaneGraph::from_rotation(4, {{1, 2, 3}, {0}, {0}, {0}});
  REQUIRE(hamiltonian_cycles(star).empty());
  REQUIRE(hamiltonian_cycles(bowtie()).empty());
}

TEST_CASE("planar dual of K4 is K4 and of the square is a doubled pair") {
  REQUIRE(isomorphic(planar_dual(k4()), k4()));
  PlaneGraph dual_sq = planar_dual(square());
  REQUIRE(dual_sq.n == 2);
  REQUIRE(dual_sq.edge_count() == 4);
  REQUIRE_FALSE(dual_sq.is_simple());
}

TEST_CASE("cube and octahedron graphs are planar duals") {
  PlaneGraph cube = cube_graph();
  PlaneGraph dual = planar_dual(cube);
  REQUIRE(dual.n == 6);
  REQUIRE(dual.edge_count() == 12);
  REQUIRE(dual.face_count() == 8);
  for (int v = 0; v < dual.n; ++v) REQUIRE(dual.degree(v) == 4);
  REQUIRE(dual.is_simple());
  REQUIRE(is_k_connected(dual, 3));
}

TEST_CASE("dual of dual is isomorphic to the original") {
  for (auto make : {square, square_with_chord02, k4, bowtie, cube_graph}) {
    PlaneGraph g = make();
    REQUIRE(isomorphic(planar_dual(planar_dual(g)), g));
  }
  for (int d = 2; d <= 6; ++d) {
    PlaneGraph g = polygon_graph(d);
    REQUIRE(isomorphic(planar_dual(planar_dual(g)), g));
  }
}

TEST_CASE("polygon graphs") {
  REQUIRE(polygon_graph(2).n == 3);
  REQUIRE(polygon_graph(3).n == 4);
  PlaneGraph hexagon = polygon_graph(5);
  REQUIRE(hexagon.n == 6);
  REQUIRE(hexagon.face_count() == 2);
  REQUIRE_THROWS_MATCHES(polygon_graph(1), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.code() == ErrorCode::DegreeTooSmall;
                         }));
}

TEST_CASE("glue: two squares with chord 0-2 give K4") {
  PlaneGraph plus = square_with_chord02();
  PlaneGraph minus = square_with_chord02();
  PlaneGraph glued = glue_along_outer(plus, minus, 3);
  REQUIRE(glued.is_simple());
  REQUIRE(is_k_connected(glued, 3));
  REQUIRE(isomorphic(glued, k4()));
}

TEST_CASE("glue: chord 0-2 against chord 1-3 duplicates a chord") {
  PlaneGraph plus = square_with_chord02();
  PlaneGraph minus = outerplanar_graph(4, {{1, 3}});
  PlaneGraph glued = glue_along_outer(plus, minus, 3);
  REQUIRE_FALSE(glued.is_simple());
}

TEST_CASE("glue: two plain squares give the square") {
  PlaneGraph glued = glue_along_outer(square(), square(), 3);
  REQUIRE(glued.is_simple());
  REQUIRE(isomorphic(glued, square()));
}

TEST_CASE("unmate K4 along a Hamiltonian cycle gives opposite chords") {
  PlaneGraph g = k4();
  auto cycles = hamiltonian_cycles(g);
  REQUIRE(cycles.size() == 3);
  auto [plus, minus] = unmate(g, cycles[0]);
  REQUIRE(isomorphic(plus, square_with_chord02()));
  REQUIRE(isomorphic(minus, square_with_chord02()));
  // round trip
  PlaneGraph glued = glue_along_outer(plus, minus);
  REQUIRE(isomorphic(glued, g));
}

TEST_CASE("unmate the square along itself") {
  PlaneGraph g = square();
  auto cycles = hamiltonian_cycles(g);
  REQUIRE(cycles.size() == 1);
  auto [plus, minus] = unmate(g, cycles[0]);
  REQUIRE(isomorphic(plus, square()));
  REQUIRE(isomorphic(minus, square()));
}

TEST_CASE("unmate then glue reproduces the graph on all named Hamiltonian graphs") {
  for (auto make : {square, square_with_chord02, k4, cube_graph}) {
    PlaneGraph g = make();
    for (auto& cycle : hamiltonian_cycles(g)) {
      auto [plus, minus] = unmate(g, cycle);
      REQUIRE(isomorphic(glue_along_outer(plus, minus), g));
    }
  }
}

TEST_CASE("rejecting a non-Hamiltonian cycle") {
  REQUIRE_THROWS_MATCHES(unmate(k4(), std::vector<int>{0, 1, 2}), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.code() == ErrorCode::NotHamiltonianCycle;
                         }));
}

TEST_CASE("canonical form separates the square from the chorded square") {
  REQUIRE(canonical_form(square()) != canonical_form(square_with_chord02()));
  REQUIRE(isomorphic(square(), polygon_graph(3)));
}

TEST_CASE("classification summary") {
  auto c = classify(k4());
  REQUIRE(c.is_simple);
  REQUIRE(c.k_connectivity == 3);
  REQUIRE(c.is_polyhedral);
  REQUIRE_FALSE(c.outerplanar_face_id.has_value());
  REQUIRE(c.hamiltonian.size() == 3);
}

TEST_CASE("outerplanar 2-connected graphs contain their outer cycle among the Hamiltonian ones") {
  for (int m = 4; m <= 6; ++m) {
    // representative chord sets on the m-gon
    std::vector<std::vector<std::pair<int, int>>> sets = {{}, {{0, 2}}};
    if (m >= 5) sets.push_back({{0, 2}, {0, 3}});
    if (m == 6) sets.push_back({{0, 2}, {2, 4}, {4, 0}});
    for (auto& chords : sets) {
      PlaneGraph g = outerplanar_graph(m, chords);
      auto face = outerplanar_face(g);
      REQUIRE(face.has_value());
      auto cycles = hamiltonian_cycles(g);
      REQUIRE_FALSE(cycles.empty());
      // the outer boundary, canonicalized, appears in the list
      std::vector<int> outer(m);
      std::iota(outer.begin(), outer.end(), 0);
      REQUIRE(std::find(cycles.begin(), cycles.end(), outer) != cycles.end());
    }
  }
}

TEST_CASE("classification invariants over the small corpus") {
  for (int m = 3; m <= 5; ++m) {
    PlaneGraph g = polygon_graph(m - 1);
    auto c = classify(g);
    REQUIRE(c.is_polyhedral == (c.is_simple && c.k_connectivity >= 3));
    if (c.outerplanar_face_id && c.k_connectivity >= 2) REQUIRE_FALSE(c.hamiltonian.empty());
  }
}
