#pragma once

#include <cmath>
#include <complex>
#include <optional>

#include "kissing/errors.hpp"

namespace kissing {

using Complex = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

/// Chordal (spherical) distance 2|z-w| / sqrt((1+|z|^2)(1+|w|^2)).
inline double chordal(Complex z, Complex w) {
  return 2.0 * std::abs(z - w) / std::sqrt((1.0 + std::norm(z)) * (1.0 + std::norm(w)));
}

/// Chordal distance from a finite point to infinity.
inline double chordal_to_inf(Complex z) { return 2.0 / std::sqrt(1.0 + std::norm(z)); }

// Generalized circle as a Hermitian form  a|z|^2 + 2 Re(conj(b) z) + d = 0
// with a, d real and b complex.  The oriented disk is the negative side
// {z : a|z|^2 + 2 Re(conj(b) z) + d < 0}; a > 0 bounds an ordinary disk,
// a < 0 a disk containing infinity, a == 0 a half plane.
struct Circle {
  double a = 1.0;
  Complex b{0.0, 0.0};
  double d = -1.0;

  static Circle from_center_radius(Complex center, double radius, int orient = +1) {
    Circle c;
    c.a = 1.0;
    c.b = -center;
    c.d = std::norm(center) - radius * radius;
    if (orient < 0) c = c.flipped();
    return c;
  }

  /// Half plane {z : 2 Re(conj(normal) z) + offset < 0}.
  static Circle line(Complex normal, double offset) {
    Circle c;
    c.a = 0.0;
    c.b = normal;
    c.d = offset;
    return c;
  }

  bool is_line(double eps = 1e-13) const { return std::abs(a) <= eps * scale(); }

  double scale() const { return std::max({std::abs(a), std::abs(b), std::abs(d)}); }

  /// |b|^2 - a d; positive for a nondegenerate real circle or line.
  double discriminant() const { return std::norm(b) - a * d; }

  Complex center() const {
    if (is_line()) fail(ErrorCode::DegenerateCircle, "line has no finite center");
    return -b / a;
  }

  double radius() const {
    if (is_line()) fail(ErrorCode::DegenerateCircle, "line has no finite radius");
    return std::sqrt(std::max(0.0, discriminant())) / std::abs(a);
  }

  /// Sign of the form at z: negative inside the oriented disk.
  double side(Complex z) const { return a * std::norm(z) + 2.0 * (conj(b) * z).real() + d; }

  bool disk_contains(Complex z, double slack = 0.0) const { return side(z) <= slack; }

  bool disk_contains_infinity() const { return a < 0.0; }

  Circle flipped() const { return Circle{-a, -b, -d}; }

  /// Rescales so that |b|^2 - a d = 1, preserving orientation.
  Circle normalized() const {
    double disc = discriminant();
    if (disc <= 0.0) fail(ErrorCode::DegenerateCircle, "imaginary circle");
    double s = 1.0 / std::sqrt(disc);
    return Circle{a * s, b * s, d * s};
  }

  /// Chordal diameter of the oriented disk on the Riemann sphere.
  double spherical_diameter() const {
    Circle n = normalized();  // disc == 1
    double apd = n.a + n.d;
    if (apd < 0.0) return 2.0;  // more than a hemisphere: contains antipodal pairs
    return 4.0 / std::sqrt(4.0 + apd * apd);
  }
};

/// Tangency residual for two oriented disks with disjoint interiors:
/// zero when the circles touch at a single point.
inline double tangency_residual(const Circle& x, const Circle& y) {
  Complex cx = x.center(), cy = y.center();
  double rx = x.radius(), ry = y.radius();
  double dist = std::abs(cx - cy);
  if (x.a > 0.0 && y.a > 0.0) return std::abs(dist - (rx + ry));
  if (x.a < 0.0 && y.a < 0.0) return 2.0;  // two complements cannot kiss
  // One disk is the outside of its circle: internal tangency.
  return std::abs(dist - std::abs(rx - ry));
}

/// Signed gap between two oriented disks: positive when separated,
/// ~0 at tangency, negative when the interiors overlap.
inline double disk_gap(const Circle& x, const Circle& y) {
  Complex cx = x.center(), cy = y.center();
  double rx = x.radius(), ry = y.radius();
  double dist = std::abs(cx - cy);
  if (x.a > 0.0 && y.a > 0.0) return dist - (rx + ry);
  if (x.a < 0.0 && y.a < 0.0) return -2.0;
  const Circle& outer = (x.a < 0.0) ? x : y;
  const Circle& inner = (x.a < 0.0) ? y : x;
  double ro = outer.radius(), ri = inner.radius();
  double dd = std::abs(outer.center() - inner.center());
  return (ro - ri) - dd;  // positive when the inner disk is strictly inside
}

/// Point where two tangent circles touch (best effort for near-tangent data).
inline Complex tangency_point(const Circle& x, const Circle& y) {
  Complex cx = x.center(), cy = y.center();
  double rx = x.radius(), ry = y.radius();
  Complex dir = cy - cx;
  double dist = std::abs(dir);
  if (dist == 0.0) fail(ErrorCode::DegenerateCircle, "concentric circles do not touch");
  dir /= dist;
  if (x.a > 0.0 && y.a > 0.0) {
    // external tangency: weighted toward the smaller circle
    return cx + dir * (rx + 0.5 * (dist - rx - ry));
  }
  const Circle& outer = (x.a < 0.0) ? x : y;
  const Circle& inner = (x.a < 0.0) ? y : x;
  Complex co = outer.center(), ci = inner.center();
  double ro = outer.radius();
  Complex d2 = ci - co;
  double n2 = std::abs(d2);
  if (n2 == 0.0) fail(ErrorCode::DegenerateCircle, "concentric circles do not touch");
  return co + d2 / n2 * ro;
}

}  // namespace kissing
