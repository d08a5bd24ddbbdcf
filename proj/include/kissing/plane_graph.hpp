#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kissing/errors.hpp"

namespace kissing {

// Combinatorial map on the sphere.  Darts are directed half-edges; `next`
// walks counterclockwise around the origin vertex.  Faces are the orbits of
// d -> next[twin[d]] and lie to the left of their darts.
class PlaneGraph {
 public:
  int n = 0;
  std::vector<int> origin;  // dart -> origin vertex
  std::vector<int> twin;    // dart -> opposite dart
  std::vector<int> next;    // dart -> next dart ccw at origin
  std::vector<int> prev;    // dart -> previous dart ccw at origin

  int dart_count() const { return static_cast<int>(origin.size()); }
  int edge_count() const { return dart_count() / 2; }
  int target(int d) const { return origin[twin[d]]; }

  const std::vector<std::vector<int>>& rotations() const { return rot_; }
  const std::vector<std::vector<int>>& faces() const { return faces_; }
  int face_count() const {
    // the one-vertex dartless graph still has its single face
    if (dart_count() == 0) return n == 1 ? 1 : 0;
    return static_cast<int>(faces_.size());
  }
  int face_of(int dart) const { return face_of_[dart]; }

  int degree(int v) const { return static_cast<int>(rot_[v].size()); }

  /// Dart from u to v (first in rotation order), or -1.
  int dart_between(int u, int v) const {
    for (int d : rot_[u])
      if (target(d) == v) return d;
    return -1;
  }

  bool adjacent(int u, int v) const { return dart_between(u, v) >= 0; }

  bool is_simple() const {
    for (int v = 0; v < n; ++v) {
      std::set<int> seen;
      for (int d : rot_[v]) {
        int u = target(d);
        if (u == v || seen.count(u)) return false;
        seen.insert(u);
      }
    }
    return true;
  }

  /// Neighbor lists in rotation order.
  std::vector<std::vector<int>> neighbor_lists() const {
    std::vector<std::vector<int>> out(n);
    for (int v = 0; v < n; ++v)
      for (int d : rot_[v]) out[v].push_back(target(d));
    return out;
  }

  /// One representative dart per edge, ordered by dart id.
  std::vector<int> edge_darts() const {
    std::vector<int> out;
    for (int d = 0; d < dart_count(); ++d)
      if (d < twin[d]) out.push_back(d);
    return out;
  }

  std::vector<int> face_vertices(int f) const {
    std::vector<int> out;
    for (int d : faces_[f]) out.push_back(origin[d]);
    return out;
  }

  // -- construction --------------------------------------------------------

  /// The one-vertex graph (one face, no darts).
  static PlaneGraph trivial() {
    PlaneGraph g;
    g.n = 1;
    g.rot_.assign(1, {});
    return g;
  }

  /// Builds from counterclockwise neighbor lists of a simple graph.
  static PlaneGraph from_rotation(int n, const std::vector<std::vector<int>>& rotation) {
    if (static_cast<int>(rotation.size()) != n)
      fail(ErrorCode::MalformedRotation, "rotation list size differs from n");
    std::vector<std::vector<int>> edge_ids(n);
    std::map<std::pair<int, int>, int> edge_of_pair;
    int next_edge = 0;
    for (int v = 0; v < n; ++v) {
      for (int u : rotation[v]) {
        if (u < 0 || u >= n) fail(ErrorCode::MalformedRotation, "neighbor out of range");
        if (u == v) fail(ErrorCode::MalformedRotation, "loop requires explicit edge ids");
        auto key = std::minmax(u, v);
        auto it = edge_of_pair.find(key);
        int e;
        if (it == edge_of_pair.end()) {
          e = next_edge++;
          edge_of_pair.emplace(key, e);
        } else {
          e = it->second;
        }
        edge_ids[v].push_back(e);
      }
    }
    // A repeated (v,u) entry would need edge ids to disambiguate the pairing.
    for (int v = 0; v < n; ++v) {
      std::set<int> seen;
      for (int u : rotation[v]) {
        if (seen.count(u))
          fail(ErrorCode::MalformedRotation, "parallel edges require explicit edge ids");
        seen.insert(u);
      }
    }
    return from_rotation_edges(n, rotation, edge_ids);
  }

  /// Builds from neighbor lists plus parallel-edge indices (multigraphs, loops).
  static PlaneGraph from_rotation_edges(int n, const std::vector<std::vector<int>>& rotation,
                                        const std::vector<std::vector<int>>& edge_ids) {
    PlaneGraph g;
    g.n = n;
    if (static_cast<int>(rotation.size()) != n || static_cast<int>(edge_ids.size()) != n)
      fail(ErrorCode::MalformedRotation, "rotation list size differs from n");
    std::vector<int> start(n + 1, 0);
    for (int v = 0; v < n; ++v) {
      if (rotation[v].size() != edge_ids[v].size())
        fail(ErrorCode::MalformedRotation, "edge-id list length mismatch");
      start[v + 1] = start[v] + static_cast<int>(rotation[v].size());
    }
    int m = start[n];
    if (m % 2 != 0) fail(ErrorCode::MalformedRotation, "odd number of darts");
    g.origin.resize(m);
    g.twin.assign(m, -1);
    g.next.resize(m);
    g.prev.resize(m);
    g.rot_.assign(n, {});
    std::map<int, std::vector<int>> darts_of_edge;
    for (int v = 0; v < n; ++v) {
      int deg = static_cast<int>(rotation[v].size());
      for (int i = 0; i < deg; ++i) {
        int d = start[v] + i;
        g.origin[d] = v;
        g.next[d] = start[v] + (i + 1) % deg;
        g.prev[d] = start[v] + (i + deg - 1) % deg;
        g.rot_[v].push_back(d);
        darts_of_edge[edge_ids[v][i]].push_back(d);
      }
    }
    for (auto& [e, ds] : darts_of_edge) {
      if (ds.size() != 2) fail(ErrorCode::MalformedRotation, "edge id must appear exactly twice");
      g.twin[ds[0]] = ds[1];
      g.twin[ds[1]] = ds[0];
    }
    // Cross-check declared targets against the twin pairing.
    for (int v = 0; v < n; ++v)
      for (size_t i = 0; i < rotation[v].size(); ++i) {
        int d = start[v] + static_cast<int>(i);
        if (g.origin[g.twin[d]] != rotation[v][i])
          fail(ErrorCode::MalformedRotation, "edge id endpoints disagree with neighbor list");
      }
    g.finalize();
    return g;
  }

  // -- internals ------------------------------------------------------------

  void finalize() {
    check_connected();
    trace_faces();
    int euler = n - edge_count() + face_count();
    if (euler != 2) fail(ErrorCode::EulerViolation, "V-E+F = " + std::to_string(euler));
  }

 private:
  std::vector<std::vector<int>> rot_;
  std::vector<std::vector<int>> faces_;
  std::vector<int> face_of_;

  void check_connected() const {
    if (n == 0) fail(ErrorCode::MalformedRotation, "empty graph");
    std::vector<char> vis(n, 0);
    std::vector<int> stack{0};
    vis[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int d : rot_[v]) {
        int u = origin[twin[d]];
        if (!vis[u]) {
          vis[u] = 1;
          ++count;
          stack.push_back(u);
        }
      }
    }
    if (count != n) fail(ErrorCode::Disconnected, "graph has multiple components");
  }

  void trace_faces() {
    int m = dart_count();
    faces_.clear();
    face_of_.assign(m, -1);
    for (int d0 = 0; d0 < m; ++d0) {
      if (face_of_[d0] >= 0) continue;
      std::vector<int> cycle;
      int d = d0;
      do {
        face_of_[d] = static_cast<int>(faces_.size());
        cycle.push_back(d);
        d = next[twin[d]];
      } while (d != d0);
      faces_.push_back(std::move(cycle));
    }
  }
};

// -- classification ---------------------------------------------------------

namespace detail {

inline bool connected_after_removal(const std::vector<std::vector<int>>& adj,
                                    const std::vector<char>& removed, int n) {
  int s = -1, keep = 0;
  for (int v = 0; v < n; ++v)
    if (!removed[v]) {
      if (s < 0) s = v;
      ++keep;
    }
  if (keep == 0) return true;
  std::vector<char> vis(n, 0);
  std::vector<int> stack{s};
  vis[s] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u : adj[v])
      if (!removed[u] && !vis[u]) {
        vis[u] = 1;
        ++count;
        stack.push_back(u);
      }
  }
  return count == keep;
}

}  // namespace detail

/// Exact k-connectivity for k in {2, 3}: more than k vertices and no
/// (k-1)-subset whose removal disconnects the graph.
inline bool is_k_connected(const PlaneGraph& g, int k) {
  if (!g.is_simple()) fail(ErrorCode::NotSimple, "k-connectivity is defined for simple graphs");
  if (g.n <= k) return false;
  auto adj = g.neighbor_lists();
  std::vector<char> removed(g.n, 0);
  if (k == 2) {
    for (int v = 0; v < g.n; ++v) {
      removed[v] = 1;
      if (!detail::connected_after_removal(adj, removed, g.n)) return false;
      removed[v] = 0;
    }
    return true;
  }
  if (k == 3) {
    if (!is_k_connected(g, 2)) return false;
    for (int v = 0; v < g.n; ++v)
      for (int w = v + 1; w < g.n; ++w) {
        removed[v] = removed[w] = 1;
        bool ok = detail::connected_after_removal(adj, removed, g.n);
        removed[v] = removed[w] = 0;
        if (!ok) return false;
      }
    return true;
  }
  fail(ErrorCode::MalformedRotation, "k must be 2 or 3");
}

/// Lowest face id whose boundary carries every vertex, if any.
inline std::optional<int> outerplanar_face(const PlaneGraph& g) {
  if (!g.is_simple()) fail(ErrorCode::NotSimple, "outerplanarity is defined for simple graphs");
  for (int f = 0; f < static_cast<int>(g.faces().size()); ++f) {
    std::set<int> verts;
    for (int d : g.faces()[f]) verts.insert(g.origin[d]);
    if (static_cast<int>(verts.size()) == g.n) return f;
  }
  return std::nullopt;
}

/// All Hamiltonian cycles up to rotation and reflection, lexicographic order.
inline std::vector<std::vector<int>> hamiltonian_cycles(const PlaneGraph& g) {
  if (!g.is_simple()) fail(ErrorCode::NotSimple, "Hamiltonian search needs a simple graph");
  if (g.n > 16) fail(ErrorCode::TooLarge, "vertex cap for cycle enumeration is 16");
  std::vector<std::vector<int>> cycles;
  if (g.n < 3) return cycles;
  auto adj = g.neighbor_lists();
  for (auto& a : adj) std::sort(a.begin(), a.end());
  std::vector<int> path{0};
  std::vector<char> used(g.n, 0);
  used[0] = 1;
  auto backtrack = [&](auto&& self) -> void {
    if (static_cast<int>(path.size()) == g.n) {
      if (g.adjacent(path.back(), 0) && path[1] < path.back()) cycles.push_back(path);
      return;
    }
    int v = path.back();
    for (int u : adj[v]) {
      if (used[u]) continue;
      used[u] = 1;
      path.push_back(u);
      self(self);
      path.pop_back();
      used[u] = 0;
    }
  };
  backtrack(backtrack);
  return cycles;
}

/// Planar dual: one vertex per face, one edge crossing each primal edge.
inline PlaneGraph planar_dual(const PlaneGraph& g) {
  int nf = static_cast<int>(g.faces().size());
  if (nf == 0) fail(ErrorCode::MalformedRotation, "dual of an edgeless graph");
  std::vector<std::vector<int>> rotation(nf), edge_ids(nf);
  for (int f = 0; f < nf; ++f) {
    for (int d : g.faces()[f]) {
      rotation[f].push_back(g.face_of(g.twin[d]));
      edge_ids[f].push_back(std::min(d, g.twin[d]));
    }
  }
  return PlaneGraph::from_rotation_edges(nf, rotation, edge_ids);
}

/// Cycle v_0 ... v_d on d+1 vertices.
inline PlaneGraph polygon_graph(int d) {
  if (d < 2) fail(ErrorCode::DegreeTooSmall, "polygon graph needs d >= 2");
  int m = d + 1;
  std::vector<std::vector<int>> rotation(m);
  for (int v = 0; v < m; ++v) rotation[v] = {(v + 1) % m, (v + m - 1) % m};
  return PlaneGraph::from_rotation(m, rotation);
}

// -- outerplanar build / glue / unmate ---------------------------------------

/// Canonical 2-connected outerplanar graph: outer cycle 0..m-1 counterclockwise
/// with the given chords embedded inside.
inline PlaneGraph outerplanar_graph(int m, const std::vector<std::pair<int, int>>& chords) {
  if (m < 3) fail(ErrorCode::DegreeTooSmall, "outer cycle needs at least 3 vertices");
  std::vector<std::vector<int>> rotation(m);
  for (int v = 0; v < m; ++v) {
    rotation[v].push_back((v + 1) % m);
    std::vector<int> at;
    for (auto [a, b] : chords) {
      if (a == v) at.push_back(b);
      if (b == v) at.push_back(a);
    }
    std::sort(at.begin(), at.end(),
              [&](int x, int y) { return (x - v + m) % m < (y - v + m) % m; });
    for (int u : at) rotation[v].push_back(u);
    rotation[v].push_back((v + m - 1) % m);
  }
  return PlaneGraph::from_rotation(m, rotation);
}

struct OuterplanarData {
  int m = 0;                               // outer cycle length
  std::vector<std::pair<int, int>> chords; // interior chords, endpoints sorted
  bool reversed = false;                   // outer walk ran d..0 in the input
};

/// Validates a simple 2-connected outerplanar plane graph labeled 0..m-1 along
/// the outer cycle and extracts its chord set.
inline OuterplanarData outerplanar_chords(const PlaneGraph& g) {
  if (!g.is_simple()) fail(ErrorCode::NotSimple, "outerplanar input must be simple");
  if (!is_k_connected(g, 2)) fail(ErrorCode::NotOuterplanar, "input must be 2-connected");
  auto face = outerplanar_face(g);
  if (!face) fail(ErrorCode::NotOuterplanar, "no face is incident to every vertex");
  std::vector<int> walk = g.face_vertices(*face);
  if (static_cast<int>(walk.size()) != g.n)
    fail(ErrorCode::NotOuterplanar, "outer boundary revisits a vertex");
  int m = g.n;
  int at0 = static_cast<int>(std::find(walk.begin(), walk.end(), 0) - walk.begin());
  std::rotate(walk.begin(), walk.begin() + at0, walk.end());
  bool forward = true, backward = true;
  for (int i = 0; i < m; ++i) {
    if (walk[i] != i) forward = false;
    if (walk[(m - i) % m] != i) backward = false;
  }
  if (!forward && !backward)
    fail(ErrorCode::NotOuterplanar, "vertices are not labeled 0..d along the outer cycle");
  OuterplanarData data;
  data.m = m;
  data.reversed = !forward;
  for (int d : g.edge_darts()) {
    int a = g.origin[d], b = g.target(d);
    int gap = (b - a + m) % m;
    if (gap != 1 && gap != m - 1) data.chords.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(data.chords.begin(), data.chords.end());
  return data;
}

/// Glues two outerplanar graphs along their outer cycles, identifying minus
/// vertex j with plus vertex (offset - j) mod (d+1).  Offset defaults to d.
inline PlaneGraph glue_along_outer(const PlaneGraph& plus, const PlaneGraph& minus,
                                   int offset = -1) {
  OuterplanarData p = outerplanar_chords(plus);
  OuterplanarData q = outerplanar_chords(minus);
  if (p.m != q.m) fail(ErrorCode::LengthMismatch, "outer cycles differ in length");
  int m = p.m;
  if (offset < 0) offset = m - 1;
  auto nu = [&](int j) { return ((offset - j) % m + m) % m; };
  std::vector<std::pair<int, int>> outside;
  for (auto [a, b] : q.chords) {
    int x = nu(a), y = nu(b);
    outside.emplace_back(std::min(x, y), std::max(x, y));
  }
  std::sort(outside.begin(), outside.end());

  // Rotation per vertex: cycle-next, inside chords sweeping toward cycle-prev,
  // cycle-prev, then outside chords sweeping back toward cycle-next.
  std::vector<std::vector<int>> rotation(m), edge_ids(m);
  int next_edge = m;  // 0..m-1 are the cycle edges, edge e joins e and e+1
  std::map<std::pair<std::pair<int, int>, int>, int> chord_edge;  // ((a,b), copy) -> id
  std::vector<std::pair<std::pair<int, int>, int>> inside_list, outside_list;
  for (auto& c : p.chords) inside_list.push_back({c, 0});
  for (auto& c : outside) outside_list.push_back({c, 1});
  for (auto& item : inside_list) chord_edge[item] = next_edge++;
  for (auto& item : outside_list) chord_edge[item] = next_edge++;

  for (int v = 0; v < m; ++v) {
    rotation[v].push_back((v + 1) % m);
    edge_ids[v].push_back(v);
    std::vector<std::pair<int, std::pair<std::pair<int, int>, int>>> at;  // (gap, chord item)
    for (auto& item : inside_list) {
      auto [a, b] = item.first;
      if (a == v) at.push_back({(b - v + m) % m, item});
      if (b == v) at.push_back({(a - v + m) % m, item});
    }
    std::sort(at.begin(), at.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    for (auto& [gap, item] : at) {
      int u = (v + gap) % m;
      rotation[v].push_back(u);
      edge_ids[v].push_back(chord_edge[item]);
    }
    rotation[v].push_back((v + m - 1) % m);
    edge_ids[v].push_back((v + m - 1) % m);
    std::vector<std::pair<int, std::pair<std::pair<int, int>, int>>> out_at;
    for (auto& item : outside_list) {
      auto [a, b] = item.first;
      if (a == v) out_at.push_back({(b - v + m) % m, item});
      if (b == v) out_at.push_back({(a - v + m) % m, item});
    }
    std::sort(out_at.begin(), out_at.end(),
              [](const auto& x, const auto& y) { return x.first > y.first; });
    for (auto& [gap, item] : out_at) {
      int u = (v + gap) % m;
      rotation[v].push_back(u);
      edge_ids[v].push_back(chord_edge[item]);
    }
  }
  return PlaneGraph::from_rotation_edges(m, rotation, edge_ids);
}

/// Splits a simple 2-connected graph along a Hamiltonian cycle into the two
/// outerplanar halves; glue_along_outer with the default offset reassembles it.
inline std::pair<PlaneGraph, PlaneGraph> unmate(const PlaneGraph& g,
                                                const std::vector<int>& cycle) {
  if (!g.is_simple()) fail(ErrorCode::NotSimple, "unmate needs a simple graph");
  int m = g.n;
  if (static_cast<int>(cycle.size()) != m || m < 3)
    fail(ErrorCode::NotHamiltonianCycle, "cycle must visit every vertex once");
  std::vector<int> pos(m, -1);
  for (int i = 0; i < m; ++i) {
    int v = cycle[i];
    if (v < 0 || v >= m || pos[v] >= 0)
      fail(ErrorCode::NotHamiltonianCycle, "cycle must visit every vertex once");
    pos[v] = i;
  }
  for (int i = 0; i < m; ++i)
    if (!g.adjacent(cycle[i], cycle[(i + 1) % m]))
      fail(ErrorCode::NotHamiltonianCycle, "consecutive cycle vertices must be adjacent");

  // A chord dart is on the + side when it appears strictly between the darts
  // toward the cycle successor and the cycle predecessor in ccw rotation.
  auto side_at = [&](int v, int u) -> int {
    int succ = cycle[(pos[v] + 1) % m];
    int pred = cycle[(pos[v] + m - 1) % m];
    int d_succ = g.dart_between(v, succ);
    int d = g.next[d_succ];
    while (true) {
      int t = g.target(d);
      if (t == pred) return -1;
      if (t == u) return +1;
      d = g.next[d];
    }
  };

  std::vector<std::pair<int, int>> chords_plus, chords_minus;
  auto nu = [&](int j) { return (m - 1 - j + m) % m; };
  for (int d : g.edge_darts()) {
    int a = g.origin[d], b = g.target(d);
    int ia = pos[a], ib = pos[b];
    int gap = (ib - ia + m) % m;
    if (gap == 1 || gap == m - 1) continue;  // cycle edge
    int sa = side_at(a, b), sb = side_at(b, a);
    if (sa != sb) fail(ErrorCode::NotHamiltonianCycle, "chord crosses the cycle");
    if (sa > 0) {
      chords_plus.emplace_back(std::min(ia, ib), std::max(ia, ib));
    } else {
      int x = nu(ia), y = nu(ib);
      chords_minus.emplace_back(std::min(x, y), std::max(x, y));
    }
  }
  std::sort(chords_plus.begin(), chords_plus.end());
  std::sort(chords_minus.begin(), chords_minus.end());
  return {outerplanar_graph(m, chords_plus), outerplanar_graph(m, chords_minus)};
}

// -- canonical form / isomorphism --------------------------------------------

namespace detail {

/// Breadth-first encoding from a root dart: vertices labeled in discovery
/// order, neighbor labels listed in rotation order starting from the entry
/// dart.  Returns false when the code is certainly lexicographically worse
/// than `best` (the traversal aborts early in that case).
inline bool bfs_code(const PlaneGraph& g, int root_dart, bool reflected, std::vector<int>& code,
                     const std::vector<int>* best, std::vector<int>& label) {
  code.clear();
  label.assign(g.n, -1);
  std::vector<int> entry;  // entry dart per discovered vertex
  entry.reserve(g.n);
  label[g.origin[root_dart]] = 0;
  entry.push_back(root_dart);
  size_t best_pos = 0;
  bool prefix_equal = best != nullptr;
  auto emit = [&](int sym) -> bool {
    code.push_back(sym);
    if (prefix_equal) {
      if (best_pos >= best->size() || sym > (*best)[best_pos]) return false;
      if (sym < (*best)[best_pos]) prefix_equal = false;
      ++best_pos;
    }
    return true;
  };
  for (size_t qi = 0; qi < entry.size(); ++qi) {
    int d0 = entry[qi];
    int d = d0;
    do {
      int u = g.target(d);
      if (label[u] < 0) {
        label[u] = static_cast<int>(entry.size());
        entry.push_back(g.twin[d]);
      }
      if (!emit(label[u])) return false;
      d = reflected ? g.prev[d] : g.next[d];
    } while (d != d0);
    if (!emit(-1)) return false;
  }
  return true;
}

}  // namespace detail

/// Rooted rotation-system canonical form minimized over all (dart, reflection)
/// roots; equal forms characterize plane-graph isomorphism.
inline std::vector<int> canonical_form(const PlaneGraph& g, bool include_reflection = true) {
  if (g.dart_count() == 0) return {g.n};
  std::vector<int> best, code, label;
  code.reserve(2 * g.dart_count());
  for (int refl = 0; refl < (include_reflection ? 2 : 1); ++refl) {
    for (int d = 0; d < g.dart_count(); ++d) {
      bool complete =
          detail::bfs_code(g, d, refl != 0, code, best.empty() ? nullptr : &best, label);
      if (complete && (best.empty() || code < best)) best = code;
    }
  }
  best.push_back(g.n);
  return best;
}

inline bool isomorphic(const PlaneGraph& a, const PlaneGraph& b, bool include_reflection = true) {
  if (a.n != b.n || a.dart_count() != b.dart_count()) return false;
  return canonical_form(a, include_reflection) == canonical_form(b, include_reflection);
}

struct GraphClassification {
  bool is_simple = false;
  int k_connectivity = 0;  // 0, 1, 2, or 3 meaning ">= 3"
  std::optional<int> outerplanar_face_id;
  std::vector<std::vector<int>> hamiltonian;
  bool is_polyhedral = false;
};

inline GraphClassification classify(const PlaneGraph& g) {
  GraphClassification c;
  c.is_simple = g.is_simple();
  if (!c.is_simple) return c;
  c.k_connectivity = 1;  // construction guarantees connectivity
  if (is_k_connected(g, 2)) c.k_connectivity = 2;
  if (c.k_connectivity == 2 && is_k_connected(g, 3)) c.k_connectivity = 3;
  c.outerplanar_face_id = outerplanar_face(g);
  if (g.n <= 16) c.hamiltonian = hamiltonian_cycles(g);
  c.is_polyhedral = c.is_simple && c.k_connectivity >= 3;
  return c;
}

}  // namespace kissing
