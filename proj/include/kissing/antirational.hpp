#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "kissing/moebius.hpp"
#include "kissing/plane_graph.hpp"
#include "kissing/polynomial.hpp"

namespace kissing {

/// Degree-d anti-rational map z -> P(conj z) / Q(conj z).
struct AntiRationalMap {
  Poly<Complex> num, den;

  int degree() const {
    return std::max(poly_degree(poly_trim(num)), poly_degree(poly_trim(den)));
  }
};

inline AntiRationalMap make_anti_rational(Poly<Complex> num, Poly<Complex> den,
                                          uint64_t seed = 1) {
  AntiRationalMap r{poly_trim(std::move(num)), poly_trim(std::move(den))};
  if (poly_degree(r.num) < 1 && poly_degree(r.den) < 1)
    fail(ErrorCode::DegreeTooSmall, "constant map");
  // common roots would drop the degree
  auto pr = find_roots(r.num, seed).roots;
  auto qr = find_roots(r.den, seed + 1).roots;
  for (const Complex& a : pr)
    for (const Complex& b : qr)
      if (std::abs(a - b) < 1e-9 * (1.0 + std::abs(a)))
        fail(ErrorCode::DegreeTooSmall, "numerator and denominator share a root");
  return r;
}

/// Projective evaluation; the far chart is used when |z| > 1 so poles and the
/// point at infinity are handled uniformly.
inline SpherePoint eval_point(const AntiRationalMap& r, const SpherePoint& z) {
  int d = std::max(poly_degree(r.num), poly_degree(r.den));
  auto padded = [&](const Poly<Complex>& p, bool reversed) {
    Poly<Complex> out(d + 1, Complex(0, 0));
    for (size_t k = 0; k < p.size(); ++k) out[reversed ? d - k : k] = p[k];
    return out;
  };
  SpherePoint zn = z.normalized();
  Complex u = std::conj(zn.z1), v = std::conj(zn.z2);
  // R(z) = [sum p_k u^k v^{d-k}] : [sum q_k u^k v^{d-k}]
  if (std::abs(u) <= std::abs(v)) {
    Complex t = u / v;
    return SpherePoint{poly_eval(padded(r.num, false), t), poly_eval(padded(r.den, false), t)}
        .normalized();
  }
  Complex t = v / u;
  return SpherePoint{poly_eval(padded(r.num, true), t), poly_eval(padded(r.den, true), t)}
      .normalized();
}

inline SpherePoint eval_point(const AntiRationalMap& r, Complex z) {
  return eval_point(r, SpherePoint::finite(z));
}

struct CriticalPoint {
  SpherePoint position;
  int local_degree = 2;
  bool fixed = false;
};

struct CriticalPortrait {
  std::vector<CriticalPoint> points;
  int k = 0;  // number of distinct critical points
  bool critically_fixed = false;
};

/// Critical points from the Wronskian P'Q - PQ' of the holomorphic parts
/// (conjugated back), with a degree-drop check at infinity.
inline CriticalPortrait critical_points(const AntiRationalMap& r, uint64_t seed = 1) {
  int d = r.degree();
  if (d < 2) fail(ErrorCode::DegreeTooSmall, "critical points need degree >= 2");
  Poly<Complex> w = poly_add(poly_mul(poly_derivative(r.num), r.den),
                             poly_scale(poly_mul(r.num, poly_derivative(r.den)), Complex(-1, 0)));
  w = poly_trim(w, 1e-12);
  auto rr = find_roots(w, seed);
  if (rr.max_residual > 1e-8)
    fail(ErrorCode::RootFindingFailure, "Wronskian residual " + std::to_string(rr.max_residual));
  CriticalPortrait out;
  for (const auto& cl : cluster_roots(rr.roots, 1e-3)) {
    CriticalPoint c;
    Complex center = cl.multiplicity > 1 ? refine_multiple_root(w, cl.center, cl.multiplicity)
                                         : cl.center;
    c.position = SpherePoint::finite(std::conj(center));
    c.local_degree = cl.multiplicity + 1;
    out.points.push_back(c);
  }
  int inf_mult = (2 * d - 2) - poly_degree(w);
  if (inf_mult > 0) {
    CriticalPoint c;
    c.position = SpherePoint::infinity();
    c.local_degree = inf_mult + 1;
    out.points.push_back(c);
  }
  out.k = static_cast<int>(out.points.size());
  out.critically_fixed = true;
  for (auto& c : out.points) {
    c.fixed = chordal(eval_point(r, c.position), c.position) <= 1e-6;
    out.critically_fixed = out.critically_fixed && c.fixed;
  }
  int total = 0;
  for (auto& c : out.points) total += c.local_degree - 1;
  if (total != 2 * d - 2)
    fail(ErrorCode::CountMismatch, "critical multiplicities sum to " + std::to_string(total));
  return out;
}

struct FixedPoint {
  SpherePoint position;
  double multiplier_modulus = 0.0;
  bool repelling = false;
};

struct FixedPointPortrait {
  std::vector<FixedPoint> points;
  int total = 0;
  int repelling = 0;
  double max_root_residual = 0.0;
};

namespace detail {

inline bool integral_real(const Poly<Complex>& p) {
  for (const Complex& c : p) {
    if (std::abs(c.imag()) > 1e-12) return false;
    if (std::abs(c.real() - std::round(c.real())) > 1e-12) return false;
    if (std::abs(c.real()) > 9e15) return false;
  }
  return true;
}

inline Poly<BigInt> to_bigint(const Poly<Complex>& p) {
  Poly<BigInt> out;
  for (const Complex& c : p) out.push_back(BigInt(static_cast<long long>(std::llround(c.real()))));
  return out;
}

/// Numerator and denominator of the second iterate R(R(z)) = f(fbar(z)) as
/// polynomials in z.  Exact integer arithmetic when the coefficients allow
/// it; the coefficient range of the expansion can exceed double precision,
/// so the result is produced in extended precision.
inline std::pair<Poly<ComplexL>, Poly<ComplexL>> second_iterate_parts(const AntiRationalMap& r) {
  int d = std::max(poly_degree(r.num), poly_degree(r.den));
  auto conj_poly = [](const Poly<Complex>& p) {
    Poly<Complex> out = p;
    for (auto& c : out) c = std::conj(c);
    return out;
  };
  if (integral_real(r.num) && integral_real(r.den)) {
    Poly<BigInt> ai = to_bigint(conj_poly(r.num)), bi = to_bigint(conj_poly(r.den));
    Poly<BigInt> apow{BigInt(1)}, n(1, BigInt(0)), dn(1, BigInt(0));
    std::vector<Poly<BigInt>> bpow(d + 1);
    bpow[0] = {BigInt(1)};
    for (int k = 1; k <= d; ++k) bpow[k] = poly_mul(bpow[k - 1], bi);
    for (int k = 0; k <= d; ++k) {
      if (k > 0) apow = poly_mul(apow, ai);
      Poly<BigInt> term = poly_mul(apow, bpow[d - k]);
      if (k < static_cast<int>(r.num.size())) {
        BigInt pk(static_cast<long long>(std::llround(r.num[k].real())));
        for (size_t i = 0; i < term.size(); ++i) {
          if (n.size() <= i) n.resize(i + 1, BigInt(0));
          n[i] += pk * term[i];
        }
      }
      if (k < static_cast<int>(r.den.size())) {
        BigInt qk(static_cast<long long>(std::llround(r.den[k].real())));
        for (size_t i = 0; i < term.size(); ++i) {
          if (dn.size() <= i) dn.resize(i + 1, BigInt(0));
          dn[i] += qk * term[i];
        }
      }
    }
    Poly<BigInt> nt = poly_trim(n), dt = poly_trim(dn);
    long double scale = 0;
    for (const BigInt& c : nt) scale = std::max(scale, std::abs(static_cast<long double>(c)));
    for (const BigInt& c : dt) scale = std::max(scale, std::abs(static_cast<long double>(c)));
    Poly<ComplexL> nd, dd;
    for (const BigInt& c : nt) nd.emplace_back(static_cast<long double>(c) / scale, 0);
    for (const BigInt& c : dt) dd.emplace_back(static_cast<long double>(c) / scale, 0);
    return {nd, dd};
  }
  Poly<ComplexL> a = widen(conj_poly(r.num)), b = widen(conj_poly(r.den));
  Poly<ComplexL> apow{ComplexL(1, 0)}, n{ComplexL(0, 0)}, dn{ComplexL(0, 0)};
  std::vector<Poly<ComplexL>> bpow(d + 1);
  bpow[0] = {ComplexL(1, 0)};
  for (int k = 1; k <= d; ++k) bpow[k] = poly_mul(bpow[k - 1], b);
  for (int k = 0; k <= d; ++k) {
    if (k > 0) apow = poly_mul(apow, a);
    Poly<ComplexL> term = poly_mul(apow, bpow[d - k]);
    if (k < static_cast<int>(r.num.size()))
      n = poly_add(n, poly_scale(term, ComplexL(r.num[k].real(), r.num[k].imag())));
    if (k < static_cast<int>(r.den.size()))
      dn = poly_add(dn, poly_scale(term, ComplexL(r.den[k].real(), r.den[k].imag())));
  }
  return {n, dn};
}

}  // namespace detail

/// Fixed points of R via polynomial root finding on the holomorphic second
/// iterate, filtered down to the actual fixed points and classified by the
/// multiplier modulus.  Counts are checked against d + 2k - 1 / d + k - 1
/// when a critically fixed portrait is supplied.
inline FixedPointPortrait fixed_points(const AntiRationalMap& r,
                                       const CriticalPortrait* portrait = nullptr,
                                       uint64_t seed = 1) {
  int d = r.degree();
  auto [n, dn] = detail::second_iterate_parts(r);
  // fixed points of the second iterate: N(z) - z D(z) = 0
  Poly<ComplexL> shifted = dn;
  shifted.insert(shifted.begin(), ComplexL(0, 0));
  Poly<ComplexL> f = poly_add(n, poly_scale(shifted, ComplexL(-1, 0)));
  if (!(detail::integral_real(r.num) && detail::integral_real(r.den))) {
    // composed in floating point: discard rounding-level leading terms
    long double m = 0;
    for (auto& c : f) m = std::max(m, std::abs(c));
    while (f.size() > 1 && std::abs(f.back()) <= 3e-18L * m) f.pop_back();
  }
  auto rr = find_roots_extended(f, seed);
  FixedPointPortrait out;
  out.max_root_residual = rr.max_residual;
  if (rr.max_residual > 1e-8)
    fail(ErrorCode::RootFindingFailure, "fixed-point residual " + std::to_string(rr.max_residual));

  Poly<ComplexL> np = poly_derivative(n), dp = poly_derivative(dn);
  auto multiplier = [&](Complex zc) {
    ComplexL z(zc.real(), zc.imag());
    ComplexL nv = poly_eval(n, z), dv = poly_eval(dn, z);
    ComplexL nd = poly_eval(np, z), dd = poly_eval(dp, z);
    ComplexL sprime = (nd * dv - nv * dd) / (dv * dv);
    return static_cast<double>(std::sqrt(std::abs(sprime)));
  };

  std::vector<Complex> fixed;
  for (const Complex& z : rr.roots) {
    double lambda = multiplier(z);
    if (chordal(eval_point(r, z), SpherePoint::finite(z)) <= 1e-7 * (1.0 + lambda))
      fixed.push_back(z);
  }
  for (const auto& cl : cluster_roots(fixed, 1e-6)) {
    FixedPoint fp;
    fp.position = SpherePoint::finite(cl.center);
    fp.multiplier_modulus = multiplier(cl.center);
    out.points.push_back(fp);
  }
  // infinity is fixed exactly when deg P > deg Q
  int dp_deg = poly_degree(poly_trim(r.num)), dq_deg = poly_degree(poly_trim(r.den));
  if (dp_deg > dq_deg) {
    FixedPoint fp;
    fp.position = SpherePoint::infinity();
    fp.multiplier_modulus =
        (dp_deg == dq_deg + 1) ? std::abs(r.den[dq_deg] / r.num[dp_deg]) : 0.0;
    out.points.push_back(fp);
  }
  for (auto& fp : out.points) {
    if (std::abs(fp.multiplier_modulus - 1.0) <= 1e-6)
      fail(ErrorCode::NeutralDetected, "multiplier modulus too close to 1");
    fp.repelling = fp.multiplier_modulus > 1.0;
    if (fp.repelling) ++out.repelling;
  }
  out.total = static_cast<int>(out.points.size());
  if (portrait) {
    int k = portrait->k;
    if (out.total != d + 2 * k - 1)
      fail(ErrorCode::CountMismatch, "expected " + std::to_string(d + 2 * k - 1) +
                                         " fixed points, found " + std::to_string(out.total));
    if (out.repelling != d + k - 1)
      fail(ErrorCode::CountMismatch, "expected " + std::to_string(d + k - 1) +
                                         " repelling fixed points, found " +
                                         std::to_string(out.repelling));
  }
  return out;
}

// -- the five explicit maps ---------------------------------------------------

struct NamedMap {
  std::string name;
  AntiRationalMap map;
};

/// The critically fixed anti-rational maps attached to the Platonic solids.
inline std::vector<NamedMap> platonic_maps() {
  auto re = [](std::initializer_list<double> v) {
    Poly<Complex> out;
    for (double x : v) out.push_back(Complex(x, 0));
    return out;
  };
  std::vector<NamedMap> out;
  out.push_back({"tetrahedron", {re({0, 0, 3}), re({1, 0, 0, 2})}});
  out.push_back({"octahedron", {re({1, 0, 0, 0, 5}), re({0, 5, 0, 0, 0, 1})}});
  out.push_back({"cube", {re({0, 0, 0, 7, 0, 0, 0, 1}), re({1, 0, 0, 0, 7})}});
  out.push_back({"icosahedron",
                 {re({-1, 0, 0, 0, 0, 66, 0, 0, 0, 0, 11}),
                  re({0, -11, 0, 0, 0, 0, 66, 0, 0, 0, 0, 1})}});
  out.push_back({"dodecahedron",
                 {re({0, 0, 0, 0, 57, 0, 0, 0, 0, 247, 0, 0, 0, 0, -171, 0, 0, 0, 0, 1}),
                  re({1, 0, 0, 0, 0, 171, 0, 0, 0, 0, 247, 0, 0, 0, 0, -57})}});
  return out;
}

inline AntiRationalMap platonic_map(const std::string& name) {
  for (auto& m : platonic_maps())
    if (m.name == name) return m.map;
  fail(ErrorCode::NotFound, "unknown map name " + name);
}

// -- rendering ----------------------------------------------------------------

struct RenderResult {
  int width = 0, height = 0;
  std::vector<int> labels;  // basin index per pixel, -1 for Julia
  int basins = 0;
};

/// Per-pixel forward iteration until within chordal 1e-6 of a fixed critical
/// point; deterministic, parallel over pixel rows.
inline RenderResult julia_render(const AntiRationalMap& r, double xmin, double xmax, double ymin,
                                 double ymax, int res, int max_iters = 200, int threads = 2) {
  CriticalPortrait portrait = critical_points(r);
  std::vector<SpherePoint> targets;
  for (auto& c : portrait.points)
    if (c.fixed) targets.push_back(c.position);
  RenderResult out;
  out.width = res;
  out.height = res;
  out.basins = static_cast<int>(targets.size());
  out.labels.assign(static_cast<size_t>(res) * res, -1);
  auto rows = [&](int row0, int row1) {
    for (int j = row0; j < row1; ++j) {
      double y = ymax - (ymax - ymin) * (j + 0.5) / res;
      for (int i = 0; i < res; ++i) {
        double x = xmin + (xmax - xmin) * (i + 0.5) / res;
        SpherePoint z = SpherePoint::finite(Complex(x, y));
        int label = -1;
        for (int it = 0; it < max_iters && label < 0; ++it) {
          for (size_t t = 0; t < targets.size(); ++t)
            if (chordal(z, targets[t]) <= 1e-6) {
              label = static_cast<int>(t);
              break;
            }
          if (label < 0) z = eval_point(r, z);
        }
        out.labels[static_cast<size_t>(j) * res + i] = label;
      }
    }
  };
  int nthreads = std::max(1, threads);
  std::vector<std::thread> pool;
  int chunk = (res + nthreads - 1) / nthreads;
  for (int t = 0; t < nthreads; ++t) {
    int r0 = t * chunk, r1 = std::min(res, (t + 1) * chunk);
    if (r0 < r1) pool.emplace_back(rows, r0, r1);
  }
  for (auto& th : pool) th.join();
  return out;
}

// -- dictionary verification ----------------------------------------------------

struct DictionaryCheck {
  std::string item;
  bool pass = false;
  std::string detail;
};

struct DictionaryReport {
  std::vector<DictionaryCheck> checks;
  bool pass = true;

  void add(const std::string& item, bool ok, const std::string& detail) {
    checks.push_back({item, ok, detail});
    pass = pass && ok;
  }
};

/// Checks the combinatorial dictionary between a 2-connected simple plane
/// graph and a critically fixed anti-rational map: critical points match the
/// faces, valences match the face degrees, repelling fixed points match the
/// edges, and the degree matches the critical multiplicities.
inline DictionaryReport verify_dictionary(const PlaneGraph& g, const AntiRationalMap& r,
                                          uint64_t seed = 1) {
  DictionaryReport rep;
  CriticalPortrait cp = critical_points(r, seed);
  rep.add("critically_fixed", cp.critically_fixed, "every critical point is fixed");
  int faces = g.face_count();
  rep.add("critical_points_vs_faces", cp.k == faces,
          std::to_string(cp.k) + " critical points vs " + std::to_string(faces) + " faces");
  std::vector<int> valences;
  for (auto& c : cp.points) valences.push_back(c.local_degree + 1);
  std::vector<int> face_degrees;
  for (auto& f : g.faces()) face_degrees.push_back(static_cast<int>(f.size()));
  std::sort(valences.begin(), valences.end());
  std::sort(face_degrees.begin(), face_degrees.end());
  rep.add("valences_vs_face_degrees", valences == face_degrees,
          "critical valences must match the face degree multiset");
  int d = r.degree();
  int mult_sum = 0;
  for (auto& c : cp.points) mult_sum += c.local_degree - 1;
  rep.add("degree_from_multiplicities", mult_sum == 2 * d - 2,
          "sum of (m_i - 1) is " + std::to_string(mult_sum));
  FixedPointPortrait fp = fixed_points(r, nullptr, seed);
  rep.add("fixed_count", fp.total == d + 2 * cp.k - 1,
          std::to_string(fp.total) + " fixed points vs d+2k-1 = " +
              std::to_string(d + 2 * cp.k - 1));
  rep.add("repelling_vs_edges", fp.repelling == g.edge_count(),
          std::to_string(fp.repelling) + " repelling vs " + std::to_string(g.edge_count()) +
              " edges");
  return rep;
}

// -- the Platonic graphs --------------------------------------------------------

inline PlaneGraph tetrahedron_graph() {
  return PlaneGraph::from_rotation(4, {{1, 3, 2}, {2, 3, 0}, {0, 3, 1}, {0, 1, 2}});
}

inline PlaneGraph cube_plane_graph() {
  return PlaneGraph::from_rotation(
      8, {{1, 4, 3}, {2, 5, 0}, {3, 6, 1}, {0, 7, 2}, {0, 5, 7}, {1, 6, 4}, {2, 7, 5}, {3, 4, 6}});
}

inline PlaneGraph octahedron_plane_graph() { return planar_dual(cube_plane_graph()); }

inline PlaneGraph icosahedron_plane_graph() {
  // north pole 0, upper ring 1..5, lower ring 6..10 (offset half a step),
  // south pole 11
  auto next = [](int i) { return i % 5 + 1; };
  auto prev = [](int i) { return (i + 3) % 5 + 1; };
  std::vector<std::vector<int>> rot(12);
  rot[0] = {1, 2, 3, 4, 5};
  for (int i = 1; i <= 5; ++i) rot[i] = {0, prev(i), 5 + i, 5 + next(i), next(i)};
  for (int i = 1; i <= 5; ++i) rot[5 + i] = {i, prev(i), 5 + prev(i), 11, 5 + next(i)};
  rot[11] = {10, 9, 8, 7, 6};
  return PlaneGraph::from_rotation(12, rot);
}

inline PlaneGraph dodecahedron_plane_graph() { return planar_dual(icosahedron_plane_graph()); }

inline PlaneGraph platonic_graph(const std::string& name) {
  if (name == "tetrahedron") return tetrahedron_graph();
  if (name == "octahedron") return octahedron_plane_graph();
  if (name == "cube") return cube_plane_graph();
  if (name == "icosahedron") return icosahedron_plane_graph();
  if (name == "dodecahedron") return dodecahedron_plane_graph();
  fail(ErrorCode::NotFound, "unknown graph name " + name);
}

}  // namespace kissing
