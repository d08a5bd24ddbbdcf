#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "kissing/errors.hpp"
#include "kissing/geometry.hpp"
#include "kissing/rational.hpp"

namespace kissing {

/// Dense polynomial with ascending coefficients.
template <typename T>
using Poly = std::vector<T>;

using ComplexL = std::complex<long double>;

template <typename T>
inline Poly<T> poly_trim(Poly<T> p, double rel = 1e-14) {
  double m = 0;
  for (auto& c : p) m = std::max(m, static_cast<double>(std::abs(c)));
  while (p.size() > 1 && static_cast<double>(std::abs(p.back())) <= rel * m) p.pop_back();
  return p;
}

inline Poly<BigInt> poly_trim(Poly<BigInt> p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
  return p;
}

template <typename T>
inline int poly_degree(const Poly<T>& p) {
  return static_cast<int>(p.size()) - 1;
}

template <typename T, typename S>
inline auto poly_eval(const Poly<T>& p, S z) {
  using R = decltype(T{} * z);
  R acc{};
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + *it;
  return acc;
}

template <typename T>
inline Poly<T> poly_derivative(const Poly<T>& p) {
  Poly<T> out;
  for (size_t k = 1; k < p.size(); ++k) out.push_back(p[k] * T(static_cast<int>(k)));
  if (out.empty()) out.push_back(T(0));
  return out;
}

template <typename T>
inline Poly<T> poly_mul(const Poly<T>& a, const Poly<T>& b) {
  Poly<T> out(a.size() + b.size() - 1, T(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

template <typename T>
inline Poly<T> poly_add(const Poly<T>& a, const Poly<T>& b) {
  Poly<T> out(std::max(a.size(), b.size()), T(0));
  for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

template <typename T>
inline Poly<T> poly_scale(const Poly<T>& a, const T& s) {
  Poly<T> out = a;
  for (auto& c : out) c *= s;
  return out;
}

inline Poly<ComplexL> widen(const Poly<Complex>& p) {
  Poly<ComplexL> out;
  out.reserve(p.size());
  for (const Complex& c : p) out.emplace_back(c.real(), c.imag());
  return out;
}

struct RootResult {
  std::vector<Complex> roots;
  double max_residual = 0.0;  // scale-invariant residual after refinement
};

namespace detail {

inline long double scaled_residual(const Poly<ComplexL>& p, const Poly<ComplexL>& rev,
                                   ComplexL z) {
  // residual of the sup-normalized polynomial; for |z| > 1 judge through the
  // reversed polynomial at 1/z so the measure stays scale invariant
  long double fwd = std::abs(poly_eval(p, z));
  if (std::abs(z) <= 1.0L) return fwd;
  return std::min(fwd, std::abs(poly_eval(rev, ComplexL(1, 0) / z)));
}

}  // namespace detail

/// All complex roots by Aberth-Ehrlich simultaneous iteration in extended
/// precision, with seeded random restarts and a Newton polish.
inline RootResult find_roots_extended(const Poly<ComplexL>& input, uint64_t seed = 1) {
  // The caller is responsible for trimming spurious leading coefficients:
  // genuinely tiny leading terms still move far roots and must be kept.
  Poly<ComplexL> p = input;
  while (p.size() > 1 && std::abs(p.back()) == 0.0L) p.pop_back();
  {
    long double m = 0;
    for (auto& c : p) m = std::max(m, std::abs(c));
    if (m == 0.0L) return {};
    for (auto& c : p) c /= m;
  }
  RootResult out;
  if (poly_degree(p) <= 0) return out;
  // deflate exact zero roots
  size_t zero_roots = 0;
  while (p.size() > 1 && std::abs(p.front()) == 0.0L) {
    p.erase(p.begin());
    ++zero_roots;
  }
  int deg = poly_degree(p);
  std::vector<ComplexL> z(deg);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-0.05, 0.05);
  if (deg > 0) {
    // Newton-polygon initial radii: the upper convex hull of (k, log|c_k|)
    // splits the index range into annuli holding the corresponding roots.
    std::vector<std::pair<int, long double>> pts;
    for (int k = 0; k <= deg; ++k) {
      long double a = std::abs(p[k]);
      if (a > 0.0L) pts.push_back({k, std::log(a)});
    }
    std::vector<std::pair<int, long double>> hull;
    for (auto& pt : pts) {
      while (hull.size() >= 2) {
        auto& a = hull[hull.size() - 2];
        auto& b = hull[hull.size() - 1];
        // keep the hull upper-convex
        if ((b.second - a.second) * (pt.first - b.first) <=
            (pt.second - b.second) * (b.first - a.first))
          hull.pop_back();
        else
          break;
      }
      hull.push_back(pt);
    }
    int idx = 0;
    for (size_t h = 0; h + 1 < hull.size(); ++h) {
      int k1 = hull[h].first, k2 = hull[h + 1].first;
      long double r = std::exp((hull[h].second - hull[h + 1].second) / (k2 - k1));
      r = std::min(std::max(r, 1e-12L), 1e12L);
      for (int t = 0; t < k2 - k1 && idx < deg; ++t, ++idx) {
        double angle = 2.0 * kPi * idx / deg + 0.4 / deg + jitter(rng) / (10.0 + deg);
        z[idx] = std::polar(r * (1.0L + 0.05L * (t % 3)), (long double)angle);
      }
    }
    for (; idx < deg; ++idx)
      z[idx] = std::polar(1.0L + 0.1L * idx, (long double)(2.0 * kPi * idx / deg + 0.17));
  }
  Poly<ComplexL> dp = poly_derivative(p);
  std::vector<char> converged(deg, 0);
  int max_iters = 800;
  for (int iter = 0; iter < max_iters; ++iter) {
    bool all = true;
    for (int i = 0; i < deg; ++i) {
      if (converged[i]) continue;
      ComplexL pz = poly_eval(p, z[i]);
      ComplexL dz = poly_eval(dp, z[i]);
      if (std::abs(pz) == 0.0L) {
        converged[i] = 1;
        continue;
      }
      ComplexL newton = (std::abs(dz) > 0) ? pz / dz : ComplexL(1e-3, 0);
      ComplexL sum = 0;
      for (int j = 0; j < deg; ++j) {
        if (j == i) continue;
        ComplexL diff = z[i] - z[j];
        if (std::abs(diff) < 1e-40L) diff = ComplexL(1e-40L, 0);
        sum += ComplexL(1, 0) / diff;
      }
      ComplexL denom = ComplexL(1, 0) - newton * sum;
      ComplexL step = (std::abs(denom) > 1e-40L) ? newton / denom : newton;
      z[i] -= step;
      if (std::abs(step) <= 1e-18L * (1.0L + std::abs(z[i]))) converged[i] = 1;
      else all = false;
    }
    if (all) break;
    if (iter > 0 && iter % 250 == 0) {
      // random perturbation restart for stragglers
      for (int i = 0; i < deg; ++i)
        if (!converged[i]) z[i] *= ComplexL(1.0 + jitter(rng), jitter(rng));
    }
  }
  // Newton polish
  Poly<ComplexL> rev(p.rbegin(), p.rend());
  long double worst = 0.0L;
  for (int i = 0; i < deg; ++i) {
    for (int it = 0; it < 4; ++it) {
      ComplexL pz = poly_eval(p, z[i]);
      ComplexL dz = poly_eval(dp, z[i]);
      if (std::abs(dz) == 0.0L) break;
      ComplexL step = pz / dz;
      if (std::abs(step) > 0.5L * (1.0L + std::abs(z[i]))) break;  // multiple-root guard
      z[i] -= step;
    }
    worst = std::max(worst, detail::scaled_residual(p, rev, z[i]));
  }
  out.max_residual = static_cast<double>(worst);
  out.roots.assign(zero_roots, Complex(0, 0));
  for (auto& r : z) out.roots.push_back(Complex(static_cast<double>(r.real()),
                                                static_cast<double>(r.imag())));
  return out;
}

inline RootResult find_roots(const Poly<Complex>& input, uint64_t seed = 1) {
  return find_roots_extended(widen(poly_trim(input, 1e-14)), seed);
}

struct RootCluster {
  Complex center;
  int multiplicity = 1;
};

/// Groups numerically coincident roots (union by distance <= radius).
inline std::vector<RootCluster> cluster_roots(const std::vector<Complex>& roots, double radius) {
  std::vector<RootCluster> out;
  std::vector<char> used(roots.size(), 0);
  for (size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    std::vector<size_t> members{i};
    used[i] = 1;
    for (size_t k = 0; k < members.size(); ++k)
      for (size_t j = 0; j < roots.size(); ++j)
        if (!used[j] && std::abs(roots[j] - roots[members[k]]) <= radius) {
          used[j] = 1;
          members.push_back(j);
        }
    Complex sum = 0;
    for (size_t j : members) sum += roots[j];
    out.push_back({sum / static_cast<double>(members.size()), static_cast<int>(members.size())});
  }
  return out;
}

/// Sharpens a multiplicity-m cluster center: a root of multiplicity m is a
/// simple root of the (m-1)-th derivative, where Newton converges fast.
inline Complex refine_multiple_root(const Poly<Complex>& p, Complex center, int multiplicity) {
  Poly<ComplexL> q = widen(p);
  for (int k = 1; k < multiplicity; ++k) q = poly_derivative(q);
  Poly<ComplexL> dq = poly_derivative(q);
  ComplexL z(center.real(), center.imag());
  for (int it = 0; it < 60; ++it) {
    ComplexL qv = poly_eval(q, z);
    ComplexL dv = poly_eval(dq, z);
    if (std::abs(dv) == 0.0L) break;
    ComplexL step = qv / dv;
    z -= step;
    if (std::abs(step) <= 1e-18L * (1.0L + std::abs(z))) break;
  }
  return Complex(static_cast<double>(z.real()), static_cast<double>(z.imag()));
}

}  // namespace kissing
