#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

#include "kissing/packing.hpp"

namespace kissing {

/// Reduced word in the free product of the generating reflections: a sequence
/// of generator indices with no two consecutive entries equal.
using Word = std::vector<int>;

inline void check_reduced(const Word& w, int n_generators) {
  for (size_t i = 0; i < w.size(); ++i) {
    if (w[i] < 0 || w[i] >= n_generators)
      fail(ErrorCode::WordNotReduced, "generator index out of range");
    if (i > 0 && w[i] == w[i - 1])
      fail(ErrorCode::WordNotReduced, "adjacent letters repeat");
  }
}

/// g_{w_0} ∘ g_{w_1} ∘ ... ∘ g_{w_{l-1}} as a single transformation.
inline MoebiusLike word_element(const CirclePacking& p, const Word& w) {
  check_reduced(w, p.graph.n);
  MoebiusLike el = MoebiusLike::identity();
  for (int i : w) el = el.compose(reflection(p.circles[i]));
  return el;
}

inline Complex apply(const Word& w, const CirclePacking& p, Complex z) {
  return word_element(p, w).apply(z);
}

inline Circle apply(const Word& w, const CirclePacking& p, const Circle& c) {
  return word_element(p, w).apply(c);
}

struct DiskEntry {
  Word word;   // prefix word g_{s_0} ... g_{s_{l-1}}
  int vertex;  // the disk is word * closure(D_vertex)
  Circle disk;
};

struct DiskLevel {
  int level = 0;
  std::vector<DiskEntry> disks;
  double max_spherical_diameter = 0.0;
  bool pruned = false;
};

namespace detail {

struct OrbitNode {
  MoebiusLike transform;  // element of the prefix word
  Word word;
  int vertex;
  Circle disk;
};

inline std::vector<OrbitNode> orbit_children(const CirclePacking& p, const OrbitNode& node) {
  std::vector<OrbitNode> out;
  MoebiusLike next_transform = node.transform.compose(reflection(p.circles[node.vertex]));
  Word next_word = node.word;
  next_word.push_back(node.vertex);
  for (int j = 0; j < p.graph.n; ++j) {
    if (j == node.vertex) continue;
    out.push_back({next_transform, next_word, j, next_transform.apply(p.circles[j])});
  }
  return out;
}

inline std::vector<OrbitNode> orbit_roots(const CirclePacking& p) {
  std::vector<OrbitNode> roots;
  for (int j = 0; j < p.graph.n; ++j)
    roots.push_back({MoebiusLike::identity(), {}, j, p.circles[j]});
  return roots;
}

}  // namespace detail

/// The level-l disks D^l via the recursion that reflects the level-(l-1)
/// disks outside each generator's disk back into it; breadth-first over
/// reduced words.  Disk count is n(n-1)^l when unpruned.
inline DiskLevel level_disks(const CirclePacking& p, int level, double prune_below = 0.0,
                             size_t cap = 10'000'000) {
  DiskLevel out;
  out.level = level;
  std::vector<detail::OrbitNode> current = detail::orbit_roots(p);
  for (int l = 0; l < level; ++l) {
    std::vector<detail::OrbitNode> next;
    next.reserve(current.size() * std::max(1, p.graph.n - 1));
    for (const auto& node : current) {
      for (auto& child : detail::orbit_children(p, node)) {
        if (prune_below > 0.0 && child.disk.spherical_diameter() < prune_below) {
          out.pruned = true;
          continue;
        }
        next.push_back(std::move(child));
      }
      if (next.size() > cap) fail(ErrorCode::ExplosionGuard, "level disk cap exceeded");
    }
    current = std::move(next);
  }
  for (auto& node : current) {
    out.max_spherical_diameter =
        std::max(out.max_spherical_diameter, node.disk.spherical_diameter());
    out.disks.push_back({std::move(node.word), node.vertex, node.disk});
  }
  return out;
}

struct LimitSetCover {
  std::vector<DiskEntry> disks;
  int deepest_level = 0;
  double eps = 0.0;
};

/// Adaptive cover of the limit set by orbit disks of spherical diameter <= eps.
inline LimitSetCover limit_set_approx(const CirclePacking& p, double eps,
                                      size_t cap = 10'000'000) {
  if (eps <= 0.0) fail(ErrorCode::ExplosionGuard, "eps must be positive");
  LimitSetCover out;
  out.eps = eps;
  std::deque<std::pair<detail::OrbitNode, int>> work;
  for (auto& r : detail::orbit_roots(p)) work.push_back({r, 0});
  while (!work.empty()) {
    auto [node, lvl] = work.front();
    work.pop_front();
    if (node.disk.spherical_diameter() <= eps) {
      out.deepest_level = std::max(out.deepest_level, lvl);
      out.disks.push_back({std::move(node.word), node.vertex, node.disk});
      if (out.disks.size() > cap) fail(ErrorCode::ExplosionGuard, "cover cap exceeded");
      continue;
    }
    for (auto& child : detail::orbit_children(p, node)) work.push_back({std::move(child), lvl + 1});
    if (work.size() > cap) fail(ErrorCode::ExplosionGuard, "cover cap exceeded");
  }
  return out;
}

/// True when the tangency-adjacency graph of the level-l disks is connected.
inline bool level_connectivity(const CirclePacking& p, int level, size_t cap = 10'000'000) {
  DiskLevel dl = level_disks(p, level, 0.0, cap);
  size_t m = dl.disks.size();
  if (m <= 1) return true;
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j) {
      const Circle& a = dl.disks[i].disk;
      const Circle& b = dl.disks[j].disk;
      double scale = a.radius() + b.radius();
      double tol = std::max(p.tolerance, 1e-12) + 1e-6 * scale;
      if (tangency_residual(a, b) <= tol) {
        int ra = find(static_cast<int>(i)), rb = find(static_cast<int>(j));
        if (ra != rb) parent[ra] = rb;
      }
    }
  int root = find(0);
  for (size_t i = 1; i < m; ++i)
    if (find(static_cast<int>(i)) != root) return false;
  return true;
}

struct CuspPoint {
  int u = -1, v = -1;
  Complex point;
  double parabolic_defect = 0.0;  // | |trace| - 2 | of the composed reflections
};

/// One tangency point per edge, each fixed by the parabolic composition of
/// the two reflections.
inline std::vector<CuspPoint> cusp_points(const CirclePacking& p) {
  std::vector<CuspPoint> out;
  for (int d : p.graph.edge_darts()) {
    CuspPoint c;
    c.u = p.graph.origin[d];
    c.v = p.graph.target(d);
    c.point = tangency_point(p.circles[c.u], p.circles[c.v]);
    MoebiusLike m = reflection(p.circles[c.u]).compose(reflection(p.circles[c.v]));
    c.parabolic_defect = std::abs(m.abs_trace() - 2.0);
    out.push_back(c);
  }
  return out;
}

struct NielsenStep {
  SpherePoint point;  // the image may be the point at infinity
  int index = -1;
  bool boundary_tie = false;  // the input sat on at least one circle
};

/// One application of the Nielsen map: reflect in the (lowest-index) disk
/// containing the point.
inline NielsenStep nielsen_step(const CirclePacking& p, Complex z, int exclude = -1) {
  double scale = 1.0 + std::norm(z);
  double tol = std::max(1e-12, 100.0 * p.tolerance) * scale;
  int best = -1;
  int hits = 0;
  bool on_boundary = false;
  for (int j = 0; j < p.graph.n; ++j) {
    double s = p.circles[j].side(z);
    if (s <= tol) {
      ++hits;
      if (std::abs(s) <= tol) on_boundary = true;
      if (j != exclude && best < 0) best = j;
    }
  }
  if (hits == 0 || best < 0)
    fail(ErrorCode::OutsideDomain, "point lies in the fundamental domain region");
  NielsenStep step;
  step.index = best;
  step.boundary_tie = on_boundary;
  step.point = reflection(p.circles[best]).apply(SpherePoint::finite(z));
  return step;
}

struct NielsenItinerary {
  std::vector<int> symbols;
  bool hit_cusp = false;
};

/// First N symbols of the Nielsen itinerary.  At a cusp the next symbol is
/// the lowest admissible index different from the previous one, so the coding
/// keeps the reduced-word property.
inline NielsenItinerary nielsen_itinerary(const CirclePacking& p, Complex z, int steps) {
  NielsenItinerary out;
  Complex current = z;
  int prev = -1;
  for (int k = 0; k < steps; ++k) {
    NielsenStep step;
    try {
      step = nielsen_step(p, current, prev);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::OutsideDomain && k > 0)
        fail(ErrorCode::EscapedToOmega, "an iterate left the union of disks");
      throw;
    }
    if (step.boundary_tie) out.hit_cusp = true;
    out.symbols.push_back(step.index);
    if (step.point.at_infinity())
      fail(ErrorCode::EscapedToOmega, "an iterate left the union of disks");
    current = step.point.value();
    prev = step.index;
  }
  return out;
}

// -- fundamental-domain tiles -------------------------------------------------

/// Circular-arc boundary piece; the sweep from `from` to `to` passes through
/// `mid`, which pins one of the two arcs of the circle.
struct Arc {
  Circle circle;
  Complex from, mid, to;
};

struct Tile {
  std::vector<Arc> arcs;
  int face = -1;         // face of the contact graph at level 0
  int side = 0;          // +1 or -1
  Word word;             // transporting word
  bool contains_inf = false;
};

namespace detail {

inline double angle_toward(double base, double target, bool ccw) {
  double delta = target - base;
  double two_pi = 2.0 * kPi;
  delta = std::fmod(ccw ? delta : -delta, two_pi);
  if (delta < 0) delta += two_pi;
  return delta;
}

/// Samples the arc as a polyline (endpoints included).
inline std::vector<Complex> sample_arc(const Arc& arc, int min_pts = 8) {
  Complex c = arc.circle.center();
  double r = arc.circle.radius();
  double a0 = std::arg(arc.from - c);
  double am = std::arg(arc.mid - c);
  double a1 = std::arg(arc.to - c);
  // choose the sweep direction whose span contains the midpoint
  double span_ccw = angle_toward(a0, a1, true);
  double mid_ccw = angle_toward(a0, am, true);
  bool ccw = mid_ccw <= span_ccw + 1e-12;
  double span = ccw ? span_ccw : angle_toward(a0, a1, false);
  int pts = std::max(min_pts, static_cast<int>(span / 0.15) + 2);
  std::vector<Complex> out;
  out.reserve(pts + 1);
  for (int i = 0; i <= pts; ++i) {
    double t = span * i / pts;
    out.push_back(c + std::polar(r, ccw ? a0 + t : a0 - t));
  }
  return out;
}

inline double winding_number(const Tile& tile, Complex z) {
  double total = 0.0;
  for (const auto& arc : tile.arcs) {
    auto pts = sample_arc(arc);
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
      Complex a = pts[i] - z, b = pts[i + 1] - z;
      total += std::arg(b / a);
    }
  }
  return total / (2.0 * kPi);
}

}  // namespace detail

/// Point membership for a tile region (winding test; arcs bound the region).
inline bool tile_contains(const Tile& tile, Complex z) {
  bool wound = std::abs(detail::winding_number(tile, z)) > 0.5;
  return tile.contains_inf ? !wound : wound;
}

/// An interior point of the tile, just off the first arc.
inline Complex tile_probe(const Tile& tile) {
  const Arc& arc = tile.arcs.front();
  Complex c = arc.circle.center();
  double r = arc.circle.radius();
  Complex mid = arc.mid;
  return mid + (mid - c) / r * (0.05 * r);
}

/// The closed fundamental-domain component over face f, bounded by arcs of
/// the face's circles between consecutive tangency points.
inline Tile face_tile(const CirclePacking& p, int f) {
  const PlaneGraph& g = p.graph;
  const auto& cyc = g.faces()[f];
  int m = static_cast<int>(cyc.size());
  Tile tile;
  tile.face = f;
  for (int k = 0; k < m; ++k) {
    int v = g.origin[cyc[k]];
    int vn = g.target(cyc[k]);
    int vp = g.origin[cyc[(k + m - 1) % m]];
    const Circle& cv = p.circles[v];
    Arc arc;
    arc.circle = cv;
    arc.from = tangency_point(p.circles[vp], cv);
    arc.to = tangency_point(cv, p.circles[vn]);
    // the face's corner wedge at v sweeps counterclockwise from the direction
    // of the previous neighbor to the next one
    Complex c = cv.center();
    double a0 = std::arg(arc.from - c);
    double span = detail::angle_toward(a0, std::arg(arc.to - c), true);
    arc.mid = c + std::polar(cv.radius(), a0 + 0.5 * span);
    tile.arcs.push_back(arc);
  }
  double w = detail::winding_number(tile, tile_probe(tile));
  tile.contains_inf = std::abs(w) < 0.5;
  return tile;
}

inline Tile transport_tile(const Tile& tile, const MoebiusLike& m, const Word& w) {
  Tile out;
  out.face = tile.face;
  out.side = tile.side;
  out.word = w;
  out.contains_inf = false;  // images of tiles under nontrivial words stay in a disk
  for (const auto& arc : tile.arcs)
    out.arcs.push_back(Arc{m.apply(arc.circle), m.apply(arc.from), m.apply(arc.mid), m.apply(arc.to)});
  return out;
}

struct SideTiles {
  std::vector<Tile> plus, minus;
  int level = 0;
};

/// Splits the fundamental domain along a Hamiltonian cycle's cusp chain and
/// pushes both halves forward by every reduced word of the given length.
inline SideTiles omega_side_tiles(const CirclePacking& p, const std::vector<int>& cycle,
                                  int level, size_t cap = 1'000'000) {
  const PlaneGraph& g = p.graph;
  int m = g.n;
  if (static_cast<int>(cycle.size()) != m)
    fail(ErrorCode::NotHamiltonianCycle, "cycle must visit every vertex once");
  std::vector<int> pos(m, -1);
  for (int i = 0; i < m; ++i) {
    if (cycle[i] < 0 || cycle[i] >= m || pos[cycle[i]] >= 0)
      fail(ErrorCode::NotHamiltonianCycle, "cycle must visit every vertex once");
    pos[cycle[i]] = i;
  }
  for (int i = 0; i < m; ++i)
    if (!g.adjacent(cycle[i], cycle[(i + 1) % m]))
      fail(ErrorCode::NotHamiltonianCycle, "consecutive cycle vertices must be adjacent");

  auto is_cycle_edge = [&](int a, int b) {
    int gap = (pos[b] - pos[a] + m) % m;
    return gap == 1 || gap == m - 1;
  };
  // chord side as in unmate: +1 when the dart lies ccw-between the cycle
  // successor and predecessor
  auto side_at = [&](int v, int u) -> int {
    int succ = cycle[(pos[v] + 1) % m];
    int pred = cycle[(pos[v] + m - 1) % m];
    int d = g.next[g.dart_between(v, succ)];
    while (true) {
      int t = g.target(d);
      if (t == pred) return -1;
      if (t == u) return +1;
      d = g.next[d];
    }
  };

  // side of every face of the contact graph
  std::vector<int> face_side(g.faces().size(), 0);
  for (int f = 0; f < static_cast<int>(g.faces().size()); ++f) {
    int side = 0;
    bool cycle_only = true;
    for (int d : g.faces()[f]) {
      int a = g.origin[d], b = g.target(d);
      if (!is_cycle_edge(a, b)) {
        cycle_only = false;
        side = side_at(a, b);
        break;
      }
    }
    if (cycle_only) {
      // the face bounded by the cycle itself: right of a forward dart is the
      // minus side, right of a backward dart the plus side
      int d = g.faces()[f][0];
      int a = g.origin[d], b = g.target(d);
      side = ((pos[b] - pos[a] + m) % m == 1) ? -1 : +1;
    }
    face_side[f] = side;
  }

  std::vector<Tile> base;
  for (int f = 0; f < static_cast<int>(g.faces().size()); ++f) {
    Tile t = face_tile(p, f);
    t.side = face_side[f];
    base.push_back(std::move(t));
  }

  SideTiles out;
  out.level = level;
  if (level == 0) {
    for (auto& t : base) (t.side > 0 ? out.plus : out.minus).push_back(t);
    return out;
  }
  // all reduced words of the requested length, with their elements
  std::vector<std::pair<Word, MoebiusLike>> words;
  std::function<void(Word&, MoebiusLike)> rec = [&](Word& w, MoebiusLike el) {
    if (static_cast<int>(w.size()) == level) {
      words.push_back({w, el});
      return;
    }
    for (int j = 0; j < g.n; ++j) {
      if (!w.empty() && w.back() == j) continue;
      w.push_back(j);
      rec(w, el.compose(reflection(p.circles[j])));
      w.pop_back();
    }
  };
  Word w;
  rec(w, MoebiusLike::identity());
  if (words.size() * base.size() > cap)
    fail(ErrorCode::ExplosionGuard, "tile cap exceeded");
  for (auto& [word, el] : words)
    for (auto& t : base) {
      Tile moved = transport_tile(t, el, word);
      (moved.side > 0 ? out.plus : out.minus).push_back(std::move(moved));
    }
  return out;
}

}  // namespace kissing
