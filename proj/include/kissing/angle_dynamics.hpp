#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "kissing/packing.hpp"
#include "kissing/plane_graph.hpp"
#include "kissing/rational.hpp"
#include "kissing/reflection_group.hpp"

namespace kissing {

/// Rational angle in [0, 1), exact arithmetic throughout.
using Angle = Rational;

inline Angle make_angle(long long num, long long den) { return mod1(make_rational(num, den)); }

/// theta -> -d theta (mod 1).
inline Angle angle_map(const Angle& theta, int d) { return mod1(-theta * d); }

/// The d+1 solutions of -d theta == theta: j / (d+1).
inline std::vector<Angle> fixed_angles(int d) {
  std::vector<Angle> out;
  for (int j = 0; j <= d; ++j) out.push_back(make_angle(j, d + 1));
  return out;
}

/// Unordered pair of angles; degenerate leaves are kept as singletons instead.
struct Leaf {
  Angle a, b;  // a < b

  Leaf() = default;
  Leaf(const Angle& x, const Angle& y) : a(std::min(x, y)), b(std::max(x, y)) {}

  bool operator==(const Leaf& o) const { return a == o.a && b == o.b; }
  bool operator<(const Leaf& o) const { return a != o.a ? a < o.a : b < o.b; }
};

/// All 2-cycles {theta, -d theta} among the angles m/(d^2-1); there are
/// (d+1)(d-2)/2 of them.
inline std::vector<Leaf> two_cycles(int d) {
  if (d < 2) fail(ErrorCode::DegreeTooSmall, "two_cycles needs d >= 2");
  std::vector<Leaf> out;
  int q = d * d - 1;
  for (int m = 1; m < q; ++m) {
    if (m % (d - 1) == 0) continue;  // m/(d^2-1) = j/(d+1): a fixed angle
    Angle theta = make_angle(m, q);
    Angle image = angle_map(theta, d);
    if (image == theta) continue;
    Leaf leaf(theta, image);
    if (theta == leaf.a) out.push_back(leaf);  // record each pair once
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct ItineraryResult {
  std::vector<int> symbols;
  // set when some iterate lands exactly on an arc endpoint j/(d+1)
  std::optional<int> boundary_step;
  std::optional<int> boundary_index;
};

namespace detail {

/// Arc index for theta in (j/(d+1), (j+1)/(d+1)), or -1 on an endpoint.
inline int arc_index(const Angle& theta, int d) {
  Rational scaled = theta * (d + 1);
  BigInt fl = scaled.numerator() / scaled.denominator();
  if (fl * scaled.denominator() == scaled.numerator()) return -1;
  return static_cast<int>(fl);
}

}  // namespace detail

/// Symbol sequence of theta under -d theta with the arc convention
/// A_j = (j/(d+1), (j+1)/(d+1)).
inline ItineraryResult angle_itinerary(const Angle& theta0, int d, int steps) {
  ItineraryResult out;
  Angle theta = mod1(theta0);
  for (int k = 0; k < steps; ++k) {
    int arc = detail::arc_index(theta, d);
    if (arc < 0) {
      out.boundary_step = k;
      Rational scaled = theta * (d + 1);
      out.boundary_index = static_cast<int>(scaled.numerator() / scaled.denominator());
      return out;
    }
    out.symbols.push_back(arc);
    theta = angle_map(theta, d);
  }
  return out;
}

/// The unique 2-cycle leaf with one endpoint in arc A_i and the other in A_j;
/// it encodes the repelling fixed point created by pinching chord {i, j}.
inline Leaf leaf_for_chord(int d, int i, int j) {
  if (d < 2) fail(ErrorCode::DegreeTooSmall, "leaf_for_chord needs d >= 2");
  int m = d + 1;
  if (i == j || (j - i + m) % m == 1 || (i - j + m) % m == 1)
    fail(ErrorCode::AdjacentVertices, "chord endpoints must be non-adjacent on the cycle");
  for (const Leaf& leaf : two_cycles(d)) {
    int ia = detail::arc_index(leaf.a, d);
    int ib = detail::arc_index(leaf.b, d);
    if ((ia == i && ib == j) || (ia == j && ib == i)) return leaf;
  }
  fail(ErrorCode::NotFound, "no 2-cycle for that chord");
}

struct Lamination {
  int degree = 0;
  std::vector<Leaf> leaves;       // sorted, pairwise unlinked
  std::vector<Angle> singletons;  // sorted fixed rays
};

namespace detail {

inline bool leaves_cross(const Leaf& x, const Leaf& y) {
  auto strictly_between = [](const Angle& lo, const Angle& hi, const Angle& v) {
    return lo < v && v < hi;
  };
  bool b1 = strictly_between(x.a, x.b, y.a);
  bool b2 = strictly_between(x.a, x.b, y.b);
  return b1 != b2;
}

}  // namespace detail

/// Checks forward invariance and unlinkedness.
inline void validate_lamination(const Lamination& lam) {
  for (const Leaf& leaf : lam.leaves) {
    Angle ia = angle_map(leaf.a, lam.degree);
    Angle ib = angle_map(leaf.b, lam.degree);
    if (ia == ib) {
      if (!std::binary_search(lam.singletons.begin(), lam.singletons.end(), ia))
        fail(ErrorCode::NonInvariantLamination, "leaf image collapses to a missing singleton");
    } else {
      Leaf image(ia, ib);
      if (!std::binary_search(lam.leaves.begin(), lam.leaves.end(), image))
        fail(ErrorCode::NonInvariantLamination, "leaf image is not in the lamination");
    }
  }
  for (size_t i = 0; i < lam.leaves.size(); ++i)
    for (size_t j = i + 1; j < lam.leaves.size(); ++j)
      if (detail::leaves_cross(lam.leaves[i], lam.leaves[j]))
        fail(ErrorCode::LinkedLeaves, "two leaves cross");
}

inline Lamination make_lamination(int degree, std::vector<Leaf> leaves,
                                  std::vector<Angle> singletons) {
  Lamination lam;
  lam.degree = degree;
  std::sort(leaves.begin(), leaves.end());
  leaves.erase(std::unique(leaves.begin(), leaves.end()), leaves.end());
  std::sort(singletons.begin(), singletons.end());
  singletons.erase(std::unique(singletons.begin(), singletons.end()), singletons.end());
  lam.leaves = std::move(leaves);
  lam.singletons = std::move(singletons);
  validate_lamination(lam);
  return lam;
}

/// Principal lamination of a labeled 2-connected outerplanar graph: one
/// 2-cycle leaf per chord plus the fixed rays.
inline Lamination lamination_of(const PlaneGraph& g) {
  OuterplanarData data = outerplanar_chords(g);
  int d = data.m - 1;
  std::vector<Leaf> leaves;
  for (auto [i, j] : data.chords) leaves.push_back(leaf_for_chord(d, i, j));
  return make_lamination(d, std::move(leaves), fixed_angles(d));
}

/// theta -> -theta on every angle (the equatorial identification).
inline Lamination mirror(const Lamination& lam) {
  std::vector<Leaf> leaves;
  for (const Leaf& l : lam.leaves) leaves.emplace_back(mod1(-l.a), mod1(-l.b));
  std::vector<Angle> singles;
  for (const Angle& s : lam.singletons) singles.push_back(mod1(-s));
  Lamination out;
  out.degree = lam.degree;
  std::sort(leaves.begin(), leaves.end());
  std::sort(singles.begin(), singles.end());
  out.leaves = std::move(leaves);
  out.singletons = std::move(singles);
  return out;
}

/// Rotation by k/(d+1) turns; preserves invariance.
inline Lamination rotate_lamination(const Lamination& lam, int k) {
  Angle shift = make_angle(k, lam.degree + 1);
  std::vector<Leaf> leaves;
  for (const Leaf& l : lam.leaves) leaves.emplace_back(mod1(l.a + shift), mod1(l.b + shift));
  std::vector<Angle> singles;
  for (const Angle& s : lam.singletons) singles.push_back(mod1(s + shift));
  std::sort(leaves.begin(), leaves.end());
  std::sort(singles.begin(), singles.end());
  Lamination out;
  out.degree = lam.degree;
  out.leaves = std::move(leaves);
  out.singletons = std::move(singles);
  return out;
}

// -- question mark conjugacy --------------------------------------------------

namespace detail {

inline const CirclePacking& regular_packing_cache(int d) {
  static std::map<int, CirclePacking> cache;
  auto it = cache.find(d);
  if (it == cache.end()) it = cache.emplace(d, regular_polygon_packing(d)).first;
  return it->second;
}

/// Attracting (or parabolic) fixed point of a Moebius map, computed without
/// determinant normalization so that extremely loxodromic products stay in
/// range: roots of c z^2 + (d - a) z - b with the stable quadratic branch,
/// attracting choice by |c z + d|.
inline Complex moebius_fixed_point_attracting(const MoebiusLike& v) {
  Complex a = v.m00, b = v.m01, c = v.m10, d = v.m11;
  double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  if (scale == 0.0) fail(ErrorCode::DegenerateCircle, "zero transformation");
  if (std::abs(c) < 1e-300 * scale)
    fail(ErrorCode::DepthInsufficient, "fixed point escaped to infinity");
  Complex disc = (d - a) * (d - a) + 4.0 * c * b;
  Complex s = std::sqrt(disc);
  if (std::abs(s) < 1e-12 * scale) return (a - d) / (2.0 * c);  // parabolic
  Complex n1 = (a - d) + s, n2 = (a - d) - s;
  Complex big = std::abs(n1) >= std::abs(n2) ? n1 : n2;
  Complex z1 = big / (2.0 * c);
  Complex z2 = (std::abs(z1) < 1e-300) ? (a - d - s) / (2.0 * c) : -b / (c * z1);
  return std::abs(c * z1 + d) >= std::abs(c * z2 + d) ? z1 : z2;
}

}  // namespace detail

/// Boundary point of the limit set of the regular (d+1)-gon reflection group
/// whose Nielsen itinerary matches the angle itinerary of theta; the
/// conjugacy phi with phi(j/(d+1)) = e^{2 pi i j/(d+1)}.
inline Complex question_mark(const Angle& theta0, int d, int depth = 4096) {
  if (d < 2) fail(ErrorCode::DegreeTooSmall, "question_mark needs d >= 2");
  if (depth < 1) fail(ErrorCode::DepthInsufficient, "depth must be positive");
  const CirclePacking& p = detail::regular_packing_cache(d);
  Angle theta = mod1(theta0);

  std::vector<int> symbols;
  std::map<Angle, int> seen;  // angle -> step index
  int preperiod = -1, period = -1;
  std::optional<int> boundary_index;
  for (int k = 0; k <= depth; ++k) {
    int arc = detail::arc_index(theta, d);
    if (arc < 0) {
      Rational scaled = theta * (d + 1);
      boundary_index = static_cast<int>(scaled.numerator() / scaled.denominator());
      break;
    }
    auto it = seen.find(theta);
    if (it != seen.end()) {
      preperiod = it->second;
      period = k - it->second;
      break;
    }
    seen.emplace(theta, k);
    symbols.push_back(arc);
    theta = angle_map(theta, d);
  }
  if (!boundary_index && period < 0)
    fail(ErrorCode::DepthInsufficient, "orbit did not close within the depth bound");

  if (boundary_index) {
    // finite cusp-orbit evaluation
    Complex point = std::polar(1.0, 2.0 * kPi * (*boundary_index) / (d + 1));
    for (auto it = symbols.rbegin(); it != symbols.rend(); ++it)
      point = reflection(p.circles[*it]).apply(point);
    return point;
  }

  // periodic block: the point is the attracting fixed point of the block's
  // composition, carried back by the preperiod prefix
  MoebiusLike block = MoebiusLike::identity();
  for (int k = preperiod; k < preperiod + period; ++k)
    block = block.compose(reflection(p.circles[symbols[k]])).rescaled();
  MoebiusLike v = block.anti ? block.compose(block).rescaled() : block;
  Complex point = detail::moebius_fixed_point_attracting(v);
  for (int k = preperiod - 1; k >= 0; --k)
    point = reflection(p.circles[symbols[k]]).apply(point);
  return point;
}

}  // namespace kissing
