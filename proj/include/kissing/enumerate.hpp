#pragma once

#include <cstdint>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "kissing/plane_graph.hpp"

namespace kissing {

namespace detail {

struct CodeHash {
  size_t operator()(const std::vector<int>& v) const {
    uint64_t h = 1469598103934665603ull;
    for (int x : v) {
      h ^= static_cast<uint64_t>(x) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }
};

inline std::vector<std::vector<int>> neighbor_lists_with_leaf(const PlaneGraph& g, int v,
                                                              int pos) {
  auto rot = g.neighbor_lists();
  rot[v].insert(rot[v].begin() + pos, g.n);
  rot.push_back({v});
  return rot;
}

inline std::vector<std::vector<int>> neighbor_lists_with_chord(const PlaneGraph& g, int face,
                                                               int ca, int cb) {
  // Insert an edge across `face` between the corners at walk positions ca, cb.
  // The corner of a walk dart d sits immediately before d in the rotation at
  // its origin, so the new dart is inserted at d's rotation index.
  auto rot = g.neighbor_lists();
  int da = g.faces()[face][ca], db = g.faces()[face][cb];
  int u = g.origin[da], w = g.origin[db];
  auto index_of = [&](int vertex, int dart) {
    const auto& r = g.rotations()[vertex];
    for (size_t i = 0; i < r.size(); ++i)
      if (r[i] == dart) return static_cast<int>(i);
    return -1;
  };
  int iu = index_of(u, da), iw = index_of(w, db);
  if (u == w) {
    // both insertions in the same list; do the later position first
    if (iu < iw) std::swap(iu, iw);
    rot[u].insert(rot[u].begin() + iu, w);
    rot[w].insert(rot[w].begin() + iw, u);
  } else {
    rot[u].insert(rot[u].begin() + iu, w);
    rot[w].insert(rot[w].begin() + iw, u);
  }
  return rot;
}

}  // namespace detail

/// Exhaustively enumerates connected simple plane graphs with at most `max_n`
/// vertices, up to plane-graph isomorphism (reflections identified).
///
/// Every connected simple plane graph arises from the one-vertex graph by
/// repeatedly (a) attaching a new degree-1 vertex at a corner or (b) adding an
/// edge between two corners of a common face: reversing (a) removes a leaf and
/// reversing (b) deletes a non-bridge edge, which merges the two faces at that
/// edge, so induction on E + V applies.
inline std::vector<PlaneGraph> enumerate_plane_graphs(int max_n) {
  std::vector<PlaneGraph> out;
  std::unordered_set<std::vector<int>, detail::CodeHash> seen;
  auto add = [&](PlaneGraph&& g) -> bool {
    auto code = canonical_form(g, true);
    if (!seen.insert(std::move(code)).second) return false;
    out.push_back(std::move(g));
    return true;
  };
  {
    PlaneGraph k2 = PlaneGraph::from_rotation(2, {{1}, {0}});
    add(std::move(k2));
  }
  for (size_t i = 0; i < out.size(); ++i) {
    PlaneGraph g = out[i];  // copy: `out` may reallocate
    if (g.n < max_n) {
      for (int v = 0; v < g.n; ++v) {
        int deg = g.degree(v);
        for (int pos = 0; pos < std::max(1, deg); ++pos) {
          add(PlaneGraph::from_rotation(g.n + 1, detail::neighbor_lists_with_leaf(g, v, pos)));
        }
      }
    }
    int nf = static_cast<int>(g.faces().size());
    for (int f = 0; f < nf; ++f) {
      int len = static_cast<int>(g.faces()[f].size());
      for (int ca = 0; ca < len; ++ca)
        for (int cb = 0; cb < len; ++cb) {
          if (ca == cb) continue;
          int u = g.origin[g.faces()[f][ca]], w = g.origin[g.faces()[f][cb]];
          if (u == w || g.adjacent(u, w)) continue;
          add(PlaneGraph::from_rotation(g.n, detail::neighbor_lists_with_chord(g, f, ca, cb)));
        }
    }
  }
  // prepend the one-vertex graph for completeness
  std::vector<PlaneGraph> result;
  result.reserve(out.size() + 1);
  result.push_back(PlaneGraph::trivial());
  for (auto& g : out) result.push_back(std::move(g));
  return result;
}

/// The 2-connected members of enumerate_plane_graphs(max_n).
inline std::vector<PlaneGraph> enumerate_2connected_plane_graphs(int max_n) {
  std::vector<PlaneGraph> out;
  for (auto& g : enumerate_plane_graphs(max_n))
    if (g.n >= 3 && g.is_simple() && is_k_connected(g, 2)) out.push_back(std::move(g));
  return out;
}

/// All non-crossing chord sets of the convex (d+1)-gon, i.e. all labeled
/// 2-connected outerplanar graphs on vertices 0..d.
inline std::vector<std::vector<std::pair<int, int>>> noncrossing_chord_sets(int m) {
  std::vector<std::pair<int, int>> chords;
  for (int i = 0; i < m; ++i)
    for (int j = i + 2; j < m; ++j) {
      if (i == 0 && j == m - 1) continue;  // cycle edge
      chords.emplace_back(i, j);
    }
  auto crossing = [&](std::pair<int, int> a, std::pair<int, int> b) {
    auto inside = [&](int x, std::pair<int, int> c) { return c.first < x && x < c.second; };
    return (inside(b.first, a) != inside(b.second, a)) &&
           !(a.first == b.first || a.first == b.second || a.second == b.first ||
             a.second == b.second);
  };
  std::vector<std::vector<std::pair<int, int>>> sets;
  std::vector<std::pair<int, int>> current;
  auto rec = [&](auto&& self, size_t start) -> void {
    sets.push_back(current);
    for (size_t i = start; i < chords.size(); ++i) {
      bool ok = true;
      for (auto& c : current)
        if (crossing(c, chords[i])) {
          ok = false;
          break;
        }
      if (!ok) continue;
      current.push_back(chords[i]);
      self(self, i + 1);
      current.pop_back();
    }
  };
  rec(rec, 0);
  return sets;
}

}  // namespace kissing
