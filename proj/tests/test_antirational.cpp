#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <set>

#include "kissing/antirational.hpp"

using namespace kissing;
using Catch::Matchers::WithinAbs;

TEST_CASE("evaluation of the tetrahedral map") {
  AntiRationalMap tetra = platonic_map("tetrahedron");
  REQUIRE(tetra.degree() == 3);
  REQUIRE_THAT(std::abs(eval_point(tetra, Complex(1, 0)).value() - Complex(1, 0)),
               WithinAbs(0.0, 1e-14));
  REQUIRE_THAT(std::abs(eval_point(tetra, Complex(0, 0)).value()), WithinAbs(0.0, 1e-14));
  Complex omega = std::polar(1.0, 2.0 * kPi / 3.0);
  REQUIRE_THAT(std::abs(eval_point(tetra, omega).value() - omega), WithinAbs(0.0, 1e-14));
  // infinity maps to zero (deg P < deg Q) and poles map to infinity
  REQUIRE_THAT(std::abs(eval_point(tetra, SpherePoint::infinity()).value()),
               WithinAbs(0.0, 1e-14));
  double cbrt_half = std::pow(0.5, 1.0 / 3.0);
  Complex pole = -cbrt_half;  // real root of 2w^3 + 1 (self-conjugate)
  REQUIRE(eval_point(tetra, pole).at_infinity(1e-10));
}

TEST_CASE("critical portrait of the tetrahedral map") {
  AntiRationalMap tetra = platonic_map("tetrahedron");
  auto cp = critical_points(tetra);
  REQUIRE(cp.k == 4);
  REQUIRE(cp.critically_fixed);
  std::vector<Complex> expected{Complex(0, 0), Complex(1, 0), std::polar(1.0, 2.0 * kPi / 3.0),
                                std::polar(1.0, -2.0 * kPi / 3.0)};
  for (auto& c : cp.points) {
    REQUIRE(c.local_degree == 2);
    REQUIRE(c.fixed);
    bool matched = false;
    for (auto& e : expected)
      if (std::abs(c.position.value() - e) < 1e-9) matched = true;
    REQUIRE(matched);
  }
}

TEST_CASE("critical portrait of the cubing map has infinity") {
  AntiRationalMap zbar3{{Complex(0, 0), Complex(0, 0), Complex(0, 0), Complex(1, 0)},
                        {Complex(1, 0)}};
  auto cp = critical_points(zbar3);
  REQUIRE(cp.k == 2);
  bool has_inf = false, has_zero = false;
  for (auto& c : cp.points) {
    REQUIRE(c.local_degree == 3);
    if (c.position.at_infinity()) has_inf = true;
    else if (std::abs(c.position.value()) < 1e-9) has_zero = true;
  }
  REQUIRE(has_inf);
  REQUIRE(has_zero);
}

TEST_CASE("cube map portrait: six critical points of valence four") {
  AntiRationalMap cube = platonic_map("cube");
  REQUIRE(cube.degree() == 7);
  auto cp = critical_points(cube);
  REQUIRE(cp.k == 6);
  int sum = 0;
  for (auto& c : cp.points) {
    REQUIRE(c.local_degree == 3);  // valence m_i + 1 = 4 in the ray graph
    REQUIRE(c.fixed);
    sum += c.local_degree - 1;
  }
  REQUIRE(sum == 2 * 7 - 2);
}

TEST_CASE("fixed point counts across the default maps") {
  struct Expect {
    const char* name;
    int d, k, total, repelling;
  };
  // oracle-confirmed counts: total = d + 2k - 1, repelling = d + k - 1
  for (auto e : std::vector<Expect>{{"tetrahedron", 3, 4, 10, 6},
                                    {"octahedron", 5, 8, 20, 12},
                                    {"cube", 7, 6, 18, 12}}) {
    AntiRationalMap map = platonic_map(e.name);
    REQUIRE(map.degree() == e.d);
    auto cp = critical_points(map);
    REQUIRE(cp.k == e.k);
    auto fp = fixed_points(map, &cp);  // throws CountMismatch unless the counts agree
    REQUIRE(fp.total == e.total);
    REQUIRE(fp.repelling == e.repelling);
    REQUIRE(fp.max_root_residual < 1e-8);
    for (auto& f : fp.points) {
      REQUIRE(std::abs(f.multiplier_modulus - 1.0) > 1e-6);  // no neutral point
      if (!f.repelling) REQUIRE(f.multiplier_modulus < 0.5);
    }
  }
}

TEST_CASE("every fixed point of the tetrahedral second iterate is fixed by the map itself") {
  AntiRationalMap tetra = platonic_map("tetrahedron");
  auto [n, dn] = detail::second_iterate_parts(tetra);
  Poly<ComplexL> shifted = dn;
  shifted.insert(shifted.begin(), ComplexL(0, 0));
  Poly<ComplexL> f = poly_add(n, poly_scale(shifted, ComplexL(-1, 0)));
  auto rr = find_roots_extended(f, 5);
  REQUIRE(rr.roots.size() == 10);  // d^2 + 1 = d + 2k - 1 here
  for (auto& z : rr.roots)
    REQUIRE(chordal(eval_point(tetra, z), SpherePoint::finite(z)) < 1e-9);
}

TEST_CASE("platonic table") {
  auto maps = platonic_maps();
  REQUIRE(maps.size() == 5);
  std::vector<int> degrees;
  for (auto& m : maps) degrees.push_back(m.map.degree());
  REQUIRE(degrees == std::vector<int>{3, 5, 7, 11, 19});
  for (auto& m : maps) {
    if (m.map.degree() > 8) continue;  // large maps exercised behind --large
    REQUIRE(critical_points(m.map).critically_fixed);
  }
}

TEST_CASE("large platonic maps confirm the counting lemma", "[.large]") {
  struct Expect {
    const char* name;
    int k, total, repelling;
  };
  for (auto e : std::vector<Expect>{{"icosahedron", 20, 50, 30}, {"dodecahedron", 12, 42, 30}}) {
    AntiRationalMap map = platonic_map(e.name);
    auto cp = critical_points(map);
    REQUIRE(cp.k == e.k);
    REQUIRE(cp.critically_fixed);
    auto fp = fixed_points(map, &cp);
    REQUIRE(fp.total == e.total);
    REQUIRE(fp.repelling == e.repelling);
    REQUIRE(fp.max_root_residual < 1e-8);
  }
}

TEST_CASE("dictionary verification") {
  SECTION("K4 against the tetrahedral map passes every item") {
    auto rep = verify_dictionary(tetrahedron_graph(), platonic_map("tetrahedron"));
    REQUIRE(rep.pass);
  }
  SECTION("octahedron graph against its map") {
    auto rep = verify_dictionary(octahedron_plane_graph(), platonic_map("octahedron"));
    REQUIRE(rep.pass);
  }
  SECTION("cube graph against its map") {
    auto rep = verify_dictionary(cube_plane_graph(), platonic_map("cube"));
    REQUIRE(rep.pass);
  }
  SECTION("a mismatched pairing fails with a list of defects") {
    auto rep = verify_dictionary(tetrahedron_graph(), platonic_map("octahedron"));
    REQUIRE_FALSE(rep.pass);
    int failures = 0;
    for (auto& c : rep.checks)
      if (!c.pass) ++failures;
    REQUIRE(failures >= 2);
  }
}

TEST_CASE("julia render of the tetrahedral map") {
  AntiRationalMap tetra = platonic_map("tetrahedron");
  auto img = julia_render(tetra, -2, 2, -2, 2, 96, 120);
  REQUIRE(img.basins == 4);
  std::set<int> labels(img.labels.begin(), img.labels.end());
  for (int b = 0; b < 4; ++b) REQUIRE(labels.count(b));
  // a pixel at a critical point is in its own basin immediately
  auto img_small = julia_render(tetra, 0.99, 1.01, -0.01, 0.01, 3, 1);
  REQUIRE(img_small.labels[3 * 1 + 1] >= 0);
  // the Julia set has measure zero: unresolved pixels shrink as iterations double
  auto img_lo = julia_render(tetra, -2, 2, -2, 2, 64, 12);
  auto img_hi = julia_render(tetra, -2, 2, -2, 2, 64, 24);
  auto count_julia = [](const RenderResult& r) {
    return std::count(r.labels.begin(), r.labels.end(), -1);
  };
  REQUIRE(count_julia(img_hi) <= count_julia(img_lo));
}

TEST_CASE("maps with a shared root are rejected") {
  REQUIRE_THROWS_AS(make_anti_rational({Complex(-1, 0), Complex(1, 0)},
                                       {Complex(-1, 0), Complex(1, 0)}),
                    Error);
}
