#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <utility>

#include "kissing/geometry.hpp"

namespace kissing {

/// A point on the Riemann sphere in homogeneous coordinates [z1 : z2].
struct SpherePoint {
  Complex z1{0.0, 0.0};
  Complex z2{1.0, 0.0};

  static SpherePoint finite(Complex z) { return SpherePoint{z, Complex(1.0, 0.0)}; }
  static SpherePoint infinity() { return SpherePoint{Complex(1.0, 0.0), Complex(0.0, 0.0)}; }

  bool at_infinity(double eps = 1e-14) const { return std::abs(z2) <= eps * std::abs(z1); }

  Complex value() const {
    if (at_infinity()) fail(ErrorCode::DegeneratePoints, "point at infinity");
    return z1 / z2;
  }

  SpherePoint normalized() const {
    double m = std::max(std::abs(z1), std::abs(z2));
    if (m == 0.0) return *this;
    return SpherePoint{z1 / m, z2 / m};
  }
};

inline double chordal(const SpherePoint& p, const SpherePoint& q) {
  SpherePoint a = p.normalized(), b = q.normalized();
  double num = 2.0 * std::abs(a.z1 * b.z2 - b.z1 * a.z2);
  double da = std::sqrt(std::norm(a.z1) + std::norm(a.z2));
  double db = std::sqrt(std::norm(b.z1) + std::norm(b.z2));
  return num / (da * db);
}

// Moebius or anti-Moebius transformation.  The matrix acts on homogeneous
// coordinates; when `anti` is set the action is V -> M conj(V), i.e.
// z -> (a conj(z) + b) / (c conj(z) + d).
struct MoebiusLike {
  Complex m00{1.0, 0.0}, m01{0.0, 0.0}, m10{0.0, 0.0}, m11{1.0, 0.0};
  bool anti = false;

  static MoebiusLike identity() { return MoebiusLike{}; }

  Complex det() const { return m00 * m11 - m01 * m10; }

  /// Rescales so det == 1 (orientation of the action is unchanged).
  MoebiusLike normalized() const {
    Complex dt = det();
    if (std::abs(dt) == 0.0) fail(ErrorCode::DegenerateCircle, "singular transformation");
    Complex s = 1.0 / std::sqrt(dt);
    return MoebiusLike{m00 * s, m01 * s, m10 * s, m11 * s, anti};
  }

  /// Divides by the largest entry magnitude (projectively a no-op); keeps
  /// long products of group elements inside the floating-point range.
  MoebiusLike rescaled() const {
    double m = std::max({std::abs(m00), std::abs(m01), std::abs(m10), std::abs(m11)});
    if (m == 0.0) fail(ErrorCode::DegenerateCircle, "zero transformation");
    return MoebiusLike{m00 / m, m01 / m, m10 / m, m11 / m, anti};
  }

  MoebiusLike inverse() const {
    // adj(M) / det; for anti maps conjugate so that (W^-1 W) = id holds.
    MoebiusLike inv{m11, -m01, -m10, m00, anti};
    if (anti) {
      inv.m00 = std::conj(inv.m00);
      inv.m01 = std::conj(inv.m01);
      inv.m10 = std::conj(inv.m10);
      inv.m11 = std::conj(inv.m11);
    }
    return inv;
  }

  SpherePoint apply(const SpherePoint& p) const {
    Complex v1 = p.z1, v2 = p.z2;
    if (anti) {
      v1 = std::conj(v1);
      v2 = std::conj(v2);
    }
    return SpherePoint{m00 * v1 + m01 * v2, m10 * v1 + m11 * v2}.normalized();
  }

  Complex apply(Complex z) const { return apply(SpherePoint::finite(z)).value(); }

  Circle apply(const Circle& c) const {
    // Image form M' = (T^{-1})^* C T^{-1}, with C conjugated for anti maps.
    MoebiusLike inv{m11, -m01, -m10, m00, false};  // adjugate; scale is irrelevant
    double ca = c.a, cd = c.d;
    Complex cb = anti ? std::conj(c.b) : c.b;
    // C = [[ca, cb], [conj(cb), cd]]; compute S = inv^* C inv.
    Complex i00 = inv.m00, i01 = inv.m01, i10 = inv.m10, i11 = inv.m11;
    // first C * inv
    Complex t00 = ca * i00 + cb * i10;
    Complex t01 = ca * i01 + cb * i11;
    Complex t10 = std::conj(cb) * i00 + cd * i10;
    Complex t11 = std::conj(cb) * i01 + cd * i11;
    // then inv^* * t
    Complex s00 = std::conj(i00) * t00 + std::conj(i10) * t10;
    Complex s01 = std::conj(i00) * t01 + std::conj(i10) * t11;
    Complex s11 = std::conj(i01) * t01 + std::conj(i11) * t11;
    Circle out{s00.real(), s01, s11.real()};
    double sc = out.scale();
    if (sc > 0) {
      out.a /= sc;
      out.b /= sc;
      out.d /= sc;
    }
    return out;
  }

  /// this ∘ rhs (apply rhs first).
  MoebiusLike compose(const MoebiusLike& rhs) const {
    Complex r00 = rhs.m00, r01 = rhs.m01, r10 = rhs.m10, r11 = rhs.m11;
    if (anti) {
      r00 = std::conj(r00);
      r01 = std::conj(r01);
      r10 = std::conj(r10);
      r11 = std::conj(r11);
    }
    return MoebiusLike{m00 * r00 + m01 * r10, m00 * r01 + m01 * r11,
                       m10 * r00 + m11 * r10, m10 * r01 + m11 * r11,
                       anti != rhs.anti};
  }

  /// |trace| of the det-normalized matrix (Moebius maps only).
  double abs_trace() const {
    if (anti) fail(ErrorCode::WordNotReduced, "trace is defined for Moebius maps");
    MoebiusLike n = normalized();
    return std::abs(n.m00 + n.m11);
  }

  /// Derivative (az+b)/(cz+d) at z for det-normalized Moebius maps: 1/(cz+d)^2.
  Complex derivative(Complex z) const {
    MoebiusLike n = normalized();
    Complex den = n.m10 * z + n.m11;
    return 1.0 / (den * den);
  }
};

/// Reflection (inversion) in a nondegenerate circle: z -> q + r^2 / conj(z - q).
inline MoebiusLike reflection(const Circle& c) {
  if (c.is_line() || c.discriminant() <= 0.0)
    fail(ErrorCode::DegenerateCircle, "reflection requires a real circle");
  Complex q = c.center();
  double r = c.radius();
  MoebiusLike g{q, Complex(r * r) - q * std::conj(q), Complex(1.0, 0.0), -std::conj(q), true};
  // det = -r^2: divide by i r to normalize.
  Complex s = 1.0 / Complex(0.0, r);
  g.m00 *= s;
  g.m01 *= s;
  g.m10 *= s;
  g.m11 *= s;
  return g;
}

/// Unique Moebius map with z1,z2,z3 -> 0,1,inf.
inline MoebiusLike moebius_to_standard(Complex z1, Complex z2, Complex z3) {
  double sep = std::min({std::abs(z1 - z2), std::abs(z2 - z3), std::abs(z1 - z3)});
  if (sep < 1e-13 * (1.0 + std::max({std::abs(z1), std::abs(z2), std::abs(z3)})))
    fail(ErrorCode::DegeneratePoints, "three-point map needs distinct points");
  return MoebiusLike{z2 - z3, -z1 * (z2 - z3), z2 - z1, -z3 * (z2 - z1), false};
}

/// Unique Moebius map sending the src triple to the dst triple.
inline MoebiusLike moebius_three_points(const std::array<Complex, 3>& src,
                                        const std::array<Complex, 3>& dst) {
  MoebiusLike a = moebius_to_standard(src[0], src[1], src[2]);
  MoebiusLike b = moebius_to_standard(dst[0], dst[1], dst[2]);
  MoebiusLike binv{b.m11, -b.m01, -b.m10, b.m00, false};
  return binv.compose(a);
}

/// Fixed points of a Moebius map (one entry when parabolic).
inline std::pair<SpherePoint, SpherePoint> moebius_fixed_points(const MoebiusLike& g) {
  if (g.anti) fail(ErrorCode::WordNotReduced, "fixed points of the Moebius part only");
  MoebiusLike n = g.normalized();
  Complex a = n.m00, b = n.m01, c = n.m10, d = n.m11;
  if (std::abs(c) < 1e-15 * (std::abs(a) + std::abs(d))) {
    // z = b/(d-a) and infinity
    if (std::abs(d - a) < 1e-12) return {SpherePoint::infinity(), SpherePoint::infinity()};
    return {SpherePoint::finite(b / (d - a)), SpherePoint::infinity()};
  }
  Complex tr = a + d;
  Complex disc = std::sqrt(tr * tr - 4.0);
  Complex z1 = (a - d + disc) / (2.0 * c);
  Complex z2 = (a - d - disc) / (2.0 * c);
  return {SpherePoint::finite(z1), SpherePoint::finite(z2)};
}

/// Disk automorphism z -> (z - alpha) / (1 - conj(alpha) z).
inline MoebiusLike disk_translation(Complex alpha) {
  return MoebiusLike{Complex(1.0, 0.0), -alpha, -std::conj(alpha), Complex(1.0, 0.0), false};
}

inline MoebiusLike rotation(double angle) {
  Complex r = std::polar(1.0, angle);
  return MoebiusLike{r, Complex(0.0, 0.0), Complex(0.0, 0.0), Complex(1.0, 0.0), false};
}

}  // namespace kissing
