#include <catch2/catch_amalgamated.hpp>
#include <random>
#include <set>

#include "kissing/angle_dynamics.hpp"

using namespace kissing;
using Catch::Matchers::WithinAbs;

TEST_CASE("angle map is exact") {
  REQUIRE(angle_map(make_angle(1, 8), 3) == make_angle(5, 8));
  REQUIRE(angle_map(make_angle(0, 1), 3) == make_angle(0, 1));
  Angle t = make_angle(3, 8);
  REQUIRE(angle_map(t, 3) == make_angle(7, 8));
  REQUIRE(angle_map(angle_map(t, 3), 3) == t);
}

TEST_CASE("fixed angles solve -d theta = theta") {
  auto f2 = fixed_angles(2);
  REQUIRE(f2 == std::vector<Angle>{make_angle(0, 1), make_angle(1, 3), make_angle(2, 3)});
  auto f3 = fixed_angles(3);
  REQUIRE(f3 == std::vector<Angle>{make_angle(0, 1), make_angle(1, 4), make_angle(1, 2),
                                   make_angle(3, 4)});
  for (int d = 2; d <= 9; ++d)
    for (const Angle& t : fixed_angles(d)) REQUIRE(angle_map(t, d) == t);
}

TEST_CASE("two cycles") {
  auto c3 = two_cycles(3);
  REQUIRE(c3.size() == 2);
  REQUIRE(c3[0] == Leaf(make_angle(1, 8), make_angle(5, 8)));
  REQUIRE(c3[1] == Leaf(make_angle(3, 8), make_angle(7, 8)));
  REQUIRE(two_cycles(2).empty());
  REQUIRE(two_cycles(5).size() == 9);
  for (int d = 2; d <= 9; ++d) {
    auto cycles = two_cycles(d);
    REQUIRE(static_cast<int>(cycles.size()) == (d + 1) * (d - 2) / 2);
    for (const Leaf& leaf : cycles) {
      REQUIRE(angle_map(leaf.a, d) == leaf.b);
      REQUIRE(angle_map(leaf.b, d) == leaf.a);
    }
  }
}

TEST_CASE("angle itineraries") {
  SECTION("1/8 under degree 3 alternates arcs 0 and 2") {
    auto it = angle_itinerary(make_angle(1, 8), 3, 6);
    REQUIRE(it.symbols == std::vector<int>{0, 2, 0, 2, 0, 2});
    REQUIRE_FALSE(it.boundary_step.has_value());
  }
  SECTION("1/2 under degree 2 emits one symbol then hits the boundary") {
    auto it = angle_itinerary(make_angle(1, 2), 2, 6);
    REQUIRE(it.symbols == std::vector<int>{1});
    REQUIRE(it.boundary_step == 1);
    REQUIRE(it.boundary_index == 0);
  }
  SECTION("arc endpoints hit immediately") {
    auto it = angle_itinerary(make_angle(2, 5), 4, 6);
    REQUIRE(it.symbols.empty());
    REQUIRE(it.boundary_step == 0);
    REQUIRE(it.boundary_index == 2);
  }
  SECTION("consecutive symbols differ") {
    for (int d : {2, 3, 4, 5}) {
      auto it = angle_itinerary(make_angle(13, 101), d, 50);
      for (size_t k = 1; k < it.symbols.size(); ++k)
        REQUIRE(it.symbols[k] != it.symbols[k - 1]);
    }
  }
}

TEST_CASE("leaf for chord matches the figure-pinned values") {
  REQUIRE(leaf_for_chord(3, 0, 2) == Leaf(make_angle(1, 8), make_angle(5, 8)));
  REQUIRE(leaf_for_chord(3, 1, 3) == Leaf(make_angle(3, 8), make_angle(7, 8)));
  REQUIRE_THROWS_MATCHES(leaf_for_chord(3, 0, 1), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.code() == ErrorCode::AdjacentVertices;
                         }));
  SECTION("d=5 chord {0,2}: the unique pair over 24ths with arcs 0 and 2") {
    Leaf leaf = leaf_for_chord(5, 0, 2);
    int matches = 0;
    for (int m = 1; m < 24; ++m) {
      Angle t = make_angle(m, 24);
      Angle u = angle_map(t, 5);
      if (t < u && detail::arc_index(t, 5) == 0 && detail::arc_index(u, 5) == 2) {
        ++matches;
        REQUIRE(Leaf(t, u) == leaf);
      }
    }
    REQUIRE(matches == 1);
  }
}

TEST_CASE("chords biject with two cycles for d <= 12") {
  for (int d = 3; d <= 12; ++d) {
    int m = d + 1;
    std::set<Leaf> seen;
    int chords = 0;
    for (int i = 0; i < m; ++i)
      for (int j = i + 2; j < m; ++j) {
        if (i == 0 && j == m - 1) continue;
        ++chords;
        Leaf leaf = leaf_for_chord(d, i, j);
        REQUIRE(seen.insert(leaf).second);  // injective
      }
    REQUIRE(chords == (d + 1) * (d - 2) / 2);
    REQUIRE(static_cast<int>(seen.size()) == static_cast<int>(two_cycles(d).size()));
  }
}

TEST_CASE("laminations of outerplanar graphs") {
  SECTION("square with chord 0-2") {
    Lamination lam = lamination_of(outerplanar_graph(4, {{0, 2}}));
    REQUIRE(lam.degree == 3);
    REQUIRE(lam.leaves == std::vector<Leaf>{Leaf(make_angle(1, 8), make_angle(5, 8))});
    REQUIRE(lam.singletons == fixed_angles(3));
  }
  SECTION("plain polygons carry no leaves") {
    for (int d = 2; d <= 6; ++d) {
      Lamination lam = lamination_of(polygon_graph(d));
      REQUIRE(lam.leaves.empty());
      REQUIRE(lam.singletons == fixed_angles(d));
    }
  }
  SECTION("fan triangulation of the square") {
    Lamination lam = lamination_of(outerplanar_graph(4, {{0, 2}}));
    REQUIRE(lam.leaves.size() == 1);
  }
  SECTION("crossing leaves are rejected as a certificate") {
    REQUIRE_THROWS_MATCHES(
        make_lamination(3,
                        {Leaf(make_angle(1, 8), make_angle(5, 8)),
                         Leaf(make_angle(3, 8), make_angle(7, 8))},
                        fixed_angles(3)),
        Error, Catch::Matchers::Predicate<Error>(
                   [](const Error& e) { return e.code() == ErrorCode::LinkedLeaves; }));
  }
  SECTION("non-invariant leaf sets are rejected") {
    REQUIRE_THROWS_MATCHES(make_lamination(3, {Leaf(make_angle(1, 8), make_angle(2, 8))},
                                           fixed_angles(3)),
                           Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return e.code() == ErrorCode::NonInvariantLamination;
                           }));
  }
}

TEST_CASE("mirror negates angles and is an involution") {
  Lamination lam = lamination_of(outerplanar_graph(4, {{0, 2}}));
  Lamination mir = mirror(lam);
  REQUIRE(mir.leaves == std::vector<Leaf>{Leaf(make_angle(3, 8), make_angle(7, 8))});
  Lamination back = mirror(mir);
  REQUIRE(back.leaves == lam.leaves);
  REQUIRE(back.singletons == lam.singletons);
  validate_lamination(mir);  // the mirror is again invariant
}

TEST_CASE("question mark at convention points") {
  REQUIRE_THAT(std::abs(question_mark(make_angle(1, 3), 2) - std::polar(1.0, 2.0 * kPi / 3.0)),
               WithinAbs(0.0, 1e-12));
  REQUIRE_THAT(std::abs(question_mark(make_angle(1, 2), 2) - Complex(-1.0, 0.0)),
               WithinAbs(0.0, 1e-12));
  for (int d = 2; d <= 4; ++d)
    for (int j = 0; j <= d; ++j)
      REQUIRE_THAT(std::abs(question_mark(make_angle(j, d + 1), d) -
                            std::polar(1.0, 2.0 * kPi * j / (d + 1))),
                   WithinAbs(0.0, 1e-12));
}

TEST_CASE("question mark lands on the unit circle") {
  std::mt19937_64 rng(7);
  for (int d : {2, 3}) {
    for (int trial = 0; trial < 50; ++trial) {
      long long q = 101;
      long long p = 1 + static_cast<long long>(rng() % (q - 1));
      Complex z = question_mark(make_angle(p, q), d);
      REQUIRE_THAT(std::abs(z), WithinAbs(1.0, 1e-9));
    }
  }
}

TEST_CASE("question mark conjugates the angle map to the Nielsen map") {
  std::mt19937_64 rng(99);
  for (int d : {2, 3}) {
    const CirclePacking& p = regular_polygon_packing(d);
    int tested = 0;
    while (tested < 100) {
      long long q = 997;
      long long num = 1 + static_cast<long long>(rng() % (q - 1));
      Angle theta = make_angle(num, q);
      Complex z = question_mark(theta, d);
      Complex expected = question_mark(angle_map(theta, d), d);
      auto step = nielsen_step(p, z);
      REQUIRE_FALSE(step.point.at_infinity());
      REQUIRE_THAT(std::abs(step.point.value() - expected), WithinAbs(0.0, 1e-9));
      ++tested;
    }
  }
}
