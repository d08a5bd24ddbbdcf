#include <catch2/catch_amalgamated.hpp>

#include "kissing/enumerate.hpp"
#include "kissing/mating.hpp"

using namespace kissing;

namespace {

Lamination cubic_chord(int i, int j) {
  return make_lamination(3, {leaf_for_chord(3, i, j)}, fixed_angles(3));
}

Lamination basilica_tuned() {
  // fixed rays co-landing in pairs after basilica tuning
  return make_lamination(3,
                         {Leaf(make_angle(0, 1), make_angle(3, 4)),
                          Leaf(make_angle(1, 2), make_angle(1, 4))},
                         {});
}

PlaneGraph k4() {
  return PlaneGraph::from_rotation(4, {{1, 3, 2}, {2, 3, 0}, {0, 3, 1}, {0, 1, 2}});
}

}  // namespace

TEST_CASE("ray classes of the basilica-tuned example are trees") {
  Lamination lp = cubic_chord(0, 2);
  Lamination lq = basilica_tuned();
  RayClassGraph g = ray_classes(lp, lq);
  // classes {0, 1/4} and {1/2, 3/4} through Q, {1/8, 5/8} through P
  auto find_angle = [&](const Angle& a) {
    return static_cast<int>(std::lower_bound(g.angles.begin(), g.angles.end(), a) -
                            g.angles.begin());
  };
  REQUIRE(g.q_class[find_angle(make_angle(0, 1))] == g.q_class[find_angle(make_angle(1, 4))]);
  REQUIRE(g.q_class[find_angle(make_angle(1, 2))] == g.q_class[find_angle(make_angle(3, 4))]);
  REQUIRE(g.p_class[find_angle(make_angle(1, 8))] == g.p_class[find_angle(make_angle(5, 8))]);
  for (int c = 0; c < g.components; ++c) REQUIRE(g.comp_edges[c] == g.comp_vertices[c] - 1);
  auto rep = detect_obstruction(lp, lq);
  REQUIRE_FALSE(rep.obstructed);
}

TEST_CASE("empty Q leaves every class trivial") {
  Lamination lp = cubic_chord(0, 2);
  Lamination lq = make_lamination(3, {}, fixed_angles(3));
  RayClassGraph g = ray_classes(lp, lq);
  for (int c = 0; c < g.components; ++c) REQUIRE(g.comp_edges[c] <= 2);
  REQUIRE_FALSE(detect_obstruction(lp, lq).obstructed);
}

TEST_CASE("parallel chords are detected with a 2-cycle witness") {
  Lamination lp = cubic_chord(0, 2);
  Lamination lq = cubic_chord(1, 3);
  auto rep = detect_obstruction(lp, lq);
  REQUIRE(rep.obstructed);
  REQUIRE(rep.witness.size() == 2);
  REQUIRE(rep.witness[0] == make_angle(1, 8));
  REQUIRE(rep.witness[1] == make_angle(5, 8));
  REQUIRE_FALSE(non_parallel(lp, lq));
}

TEST_CASE("a chord against itself is unobstructed") {
  Lamination lp = cubic_chord(0, 2);
  REQUIRE_FALSE(detect_obstruction(lp, lp).obstructed);
  REQUIRE(non_parallel(lp, lp));
}

TEST_CASE("non-parallel with an empty lamination") {
  Lamination lp = cubic_chord(0, 2);
  Lamination empty = make_lamination(3, {}, fixed_angles(3));
  REQUIRE(non_parallel(lp, empty));
  REQUIRE(non_parallel(empty, empty));
}

TEST_CASE("degree mismatch is rejected") {
  REQUIRE_THROWS_MATCHES(
      non_parallel(cubic_chord(0, 2), make_lamination(4, {}, fixed_angles(4))), Error,
      Catch::Matchers::Predicate<Error>(
          [](const Error& e) { return e.code() == ErrorCode::DegreeMismatch; }));
}

TEST_CASE("obstruction detection is symmetric") {
  std::vector<std::pair<Lamination, Lamination>> pairs = {
      {cubic_chord(0, 2), cubic_chord(1, 3)},
      {cubic_chord(0, 2), cubic_chord(0, 2)},
      {cubic_chord(0, 2), basilica_tuned()},
      {cubic_chord(1, 3), basilica_tuned()},
  };
  for (auto& [lp, lq] : pairs)
    REQUIRE(detect_obstruction(lp, lq).obstructed == detect_obstruction(lq, lp).obstructed);
}

TEST_CASE("mate_graphs on the pinned examples") {
  PlaneGraph sq02 = outerplanar_graph(4, {{0, 2}});
  PlaneGraph sq13 = outerplanar_graph(4, {{1, 3}});
  PlaneGraph square = polygon_graph(3);
  SECTION("chord 0-2 against itself is mateable and glues to K4") {
    auto v = mate_graphs(sq02, sq02, 3);
    REQUIRE(v.mateable);
    REQUIRE(isomorphic(v.glued, k4()));
  }
  SECTION("chord 0-2 against chord 1-3 is blocked by the duplicated chord") {
    auto v = mate_graphs(sq02, sq13, 3);
    REQUIRE_FALSE(v.mateable);
    REQUIRE(v.duplicated_chords == std::vector<std::pair<int, int>>{{0, 2}});
    REQUIRE(v.shared_leaves ==
            std::vector<Leaf>{Leaf(make_angle(1, 8), make_angle(5, 8))});
  }
  SECTION("two plain squares mate to the square") {
    auto v = mate_graphs(square, square, 3);
    REQUIRE(v.mateable);
    REQUIRE(isomorphic(v.glued, square));
  }
}

TEST_CASE("shared matings") {
  SECTION("K4 has exactly three unmatings, each reassembling to K4") {
    auto list = shared_matings(k4());
    REQUIRE(list.size() == 3);
    std::set<std::vector<int>> cycles;
    for (auto& sm : list) {
      cycles.insert(sm.cycle);
      REQUIRE(isomorphic(glue_along_outer(sm.plus, sm.minus), k4()));
    }
    REQUIRE(cycles.size() == 3);
  }
  SECTION("the chorded square has one unmating") {
    REQUIRE(shared_matings(outerplanar_graph(4, {{0, 2}})).size() == 1);
  }
  SECTION("the plain square unmates into two squares") {
    auto list = shared_matings(polygon_graph(3));
    REQUIRE(list.size() == 1);
    REQUIRE(isomorphic(list[0].plus, polygon_graph(3)));
    REQUIRE(isomorphic(list[0].minus, polygon_graph(3)));
  }
  SECTION("iso-dedup flags collapse the K4 triple") {
    REQUIRE(shared_matings(k4(), MatingDedup::OrderedIso).size() == 1);
    REQUIRE(shared_matings(k4(), MatingDedup::UnorderedIso).size() == 1);
  }
  SECTION("non-Hamiltonian input is rejected") {
    PlaneGraph star = PlaneGraph::from_rotation(4, {{1, 2, 3}, {0}, {0}, {0}});
    REQUIRE_THROWS_MATCHES(shared_matings(star), Error,
                           Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return e.code() == ErrorCode::NotHamiltonian;
                           }));
  }
}

TEST_CASE("exhaustive equivalence on 5-vertex outerplanar pairs") {
  // glued-graph simplicity == non-parallel == no obstruction, all offsets
  int m = 5, d = 4;
  auto chord_sets = noncrossing_chord_sets(m);
  std::vector<PlaneGraph> graphs;
  std::vector<Lamination> lams;
  for (auto& chords : chord_sets) {
    graphs.push_back(outerplanar_graph(m, chords));
    lams.push_back(lamination_of(graphs.back()));
  }
  int checked = 0;
  for (size_t i = 0; i < graphs.size(); ++i)
    for (size_t j = 0; j < graphs.size(); ++j)
      for (int offset = 0; offset < m; ++offset) {
        PlaneGraph glued = glue_along_outer(graphs[i], graphs[j], offset);
        bool simple = glued.is_simple();
        Lamination lq = rotate_lamination(lams[j], d - offset);
        bool np = non_parallel(lams[i], lq);
        bool unobstructed = !detect_obstruction(lams[i], lq).obstructed;
        REQUIRE(simple == np);
        REQUIRE(np == unobstructed);
        ++checked;
      }
  REQUIRE(checked == static_cast<int>(graphs.size() * graphs.size() * m));
}

TEST_CASE("a tuned quartic pairing produces a 4-cycle witness") {
  // P pinches chords {0,2} and {2,4} of the pentagon; Q joins the mirrored
  // endpoints crosswise, so the principal class closes into a 4-cycle.
  Lamination lp = make_lamination(
      4, {leaf_for_chord(4, 0, 2), leaf_for_chord(4, 2, 4)}, fixed_angles(4));
  Lamination lq = make_lamination(
      4,
      {Leaf(make_angle(2, 15), make_angle(13, 15)), Leaf(make_angle(7, 15), make_angle(8, 15))},
      {});
  auto rep = detect_obstruction(lp, lq);
  REQUIRE(rep.obstructed);
  REQUIRE(rep.witness.size() == 4);
  REQUIRE(rep.witness == std::vector<Angle>{make_angle(2, 15), make_angle(7, 15),
                                            make_angle(8, 15), make_angle(13, 15)});
}
