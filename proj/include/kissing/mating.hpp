#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "kissing/angle_dynamics.hpp"
#include "kissing/plane_graph.hpp"

namespace kissing {

// Ray-equivalence restricted to the principal angles: P identifies the two
// angles of each of its leaves, Q identifies theta ~ theta' when
// {-theta, -theta'} is one of its leaves (the equatorial mirror).  Classes of
// the joint relation become a bipartite graph whose vertices are P-classes
// and Q-classes and whose edges are the angles.
struct RayClassGraph {
  std::vector<Angle> angles;  // closure of the principal angles, sorted
  std::vector<int> p_class;   // per angle
  std::vector<int> q_class;   // per angle
  int p_classes = 0, q_classes = 0;
  std::vector<int> component;  // per angle: connected component of the class graph
  int components = 0;
  std::vector<int> comp_edges, comp_vertices;
};

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) {
    for (int i = 0; i < n; ++i) parent_[i] = i;
  }
  int find(int a) {
    while (parent_[a] != a) a = parent_[a] = parent_[parent_[a]];
    return a;
  }
  void unite(int a, int b) { parent_[find(a)] = find(b); }

 private:
  std::vector<int> parent_;
};

}  // namespace detail

inline RayClassGraph ray_classes(const Lamination& lp, const Lamination& lq) {
  if (lp.degree != lq.degree) fail(ErrorCode::DegreeMismatch, "laminations of different degree");
  validate_lamination(lp);
  validate_lamination(lq);
  Lamination mq = mirror(lq);

  std::set<Angle> closure;
  std::vector<Angle> queue;
  auto push = [&](const Angle& a) {
    if (closure.insert(a).second) queue.push_back(a);
  };
  for (const Angle& s : lp.singletons) push(s);
  for (const Leaf& l : lp.leaves) {
    push(l.a);
    push(l.b);
  }
  for (size_t i = 0; i < queue.size(); ++i) {
    Angle a = queue[i];
    for (const Leaf& l : lp.leaves) {
      if (l.a == a) push(l.b);
      if (l.b == a) push(l.a);
    }
    for (const Leaf& l : mq.leaves) {
      if (l.a == a) push(l.b);
      if (l.b == a) push(l.a);
    }
  }

  RayClassGraph out;
  out.angles.assign(closure.begin(), closure.end());
  int m = static_cast<int>(out.angles.size());
  auto index_of = [&](const Angle& a) {
    return static_cast<int>(std::lower_bound(out.angles.begin(), out.angles.end(), a) -
                            out.angles.begin());
  };
  detail::UnionFind pu(m), qu(m);
  for (const Leaf& l : lp.leaves) pu.unite(index_of(l.a), index_of(l.b));
  for (const Leaf& l : mq.leaves) {
    if (closure.count(l.a) && closure.count(l.b)) qu.unite(index_of(l.a), index_of(l.b));
  }
  std::map<int, int> pid, qid;
  out.p_class.resize(m);
  out.q_class.resize(m);
  for (int i = 0; i < m; ++i) {
    int pr = pu.find(i);
    auto [itp, newp] = pid.emplace(pr, static_cast<int>(pid.size()));
    out.p_class[i] = itp->second;
    int qr = qu.find(i);
    auto [itq, newq] = qid.emplace(qr, static_cast<int>(qid.size()));
    out.q_class[i] = itq->second;
  }
  out.p_classes = static_cast<int>(pid.size());
  out.q_classes = static_cast<int>(qid.size());

  detail::UnionFind cu(out.p_classes + out.q_classes);
  for (int i = 0; i < m; ++i) cu.unite(out.p_class[i], out.p_classes + out.q_class[i]);
  std::map<int, int> cid;
  std::vector<int> class_comp(out.p_classes + out.q_classes);
  for (int v = 0; v < out.p_classes + out.q_classes; ++v) {
    int r = cu.find(v);
    auto [it, isnew] = cid.emplace(r, static_cast<int>(cid.size()));
    class_comp[v] = it->second;
  }
  out.components = static_cast<int>(cid.size());
  out.comp_edges.assign(out.components, 0);
  out.comp_vertices.assign(out.components, 0);
  out.component.resize(m);
  for (int i = 0; i < m; ++i) {
    out.component[i] = class_comp[out.p_class[i]];
    out.comp_edges[out.component[i]]++;
  }
  for (int v = 0; v < out.p_classes + out.q_classes; ++v) out.comp_vertices[class_comp[v]]++;
  return out;
}

struct ObstructionReport {
  bool obstructed = false;
  std::vector<Angle> witness;  // angles along a cycle (even length)
  int principal_classes = 0;
  RayClassGraph graph;
};

/// Moore obstruction detection: the gluing fails exactly when some principal
/// ray class carries a cycle; the witness comes out of a back-pointer walk.
inline ObstructionReport detect_obstruction(const Lamination& lp, const Lamination& lq) {
  ObstructionReport rep;
  rep.graph = ray_classes(lp, lq);
  const RayClassGraph& g = rep.graph;
  rep.principal_classes = g.components;
  int cyc_comp = -1;
  for (int c = 0; c < g.components; ++c)
    if (g.comp_edges[c] >= g.comp_vertices[c]) {
      cyc_comp = c;
      break;
    }
  if (cyc_comp < 0) return rep;
  rep.obstructed = true;

  // find a cycle in the bipartite multigraph of that component
  int nv = g.p_classes + g.q_classes;
  std::vector<std::vector<std::pair<int, int>>> adj(nv);  // (other vertex, angle index)
  for (size_t i = 0; i < g.angles.size(); ++i) {
    if (g.component[i] != cyc_comp) continue;
    int a = g.p_class[i], b = g.p_classes + g.q_class[i];
    adj[a].push_back({b, static_cast<int>(i)});
    adj[b].push_back({a, static_cast<int>(i)});
  }
  std::vector<int> parent_vertex(nv, -1), parent_edge(nv, -1), state(nv, 0);
  std::vector<int> cycle_edges;
  std::function<bool(int)> dfs = [&](int v) -> bool {
    state[v] = 1;
    for (auto [u, e] : adj[v]) {
      if (e == parent_edge[v]) continue;
      if (state[u] == 0) {
        parent_vertex[u] = v;
        parent_edge[u] = e;
        if (dfs(u)) return true;
      } else if (state[u] == 1) {
        // back edge: walk from v up to u
        cycle_edges.push_back(e);
        int w = v;
        while (w != u) {
          cycle_edges.push_back(parent_edge[w]);
          w = parent_vertex[w];
        }
        return true;
      }
    }
    state[v] = 2;
    return false;
  };
  for (int v = 0; v < nv && cycle_edges.empty(); ++v)
    if (state[v] == 0 && !adj[v].empty()) dfs(v);
  for (int e : cycle_edges) rep.witness.push_back(g.angles[e]);
  std::sort(rep.witness.begin(), rep.witness.end());
  return rep;
}

/// True when the laminations share no leaf under the equatorial mirror.
inline bool non_parallel(const Lamination& lp, const Lamination& lq) {
  if (lp.degree != lq.degree) fail(ErrorCode::DegreeMismatch, "laminations of different degree");
  Lamination mq = mirror(lq);
  for (const Leaf& l : lp.leaves)
    if (std::binary_search(mq.leaves.begin(), mq.leaves.end(), l)) return false;
  return true;
}

struct MateVerdict {
  bool mateable = false;
  PlaneGraph glued;
  std::vector<std::pair<int, int>> duplicated_chords;  // witness when not mateable
  std::vector<Leaf> shared_leaves;
};

/// Glues the two outerplanar graphs and decides geometric mateability; the
/// graph-side verdict (simplicity of the glued graph) is cross-checked against
/// the lamination-side verdict (non-parallel after the offset rotation).
inline MateVerdict mate_graphs(const PlaneGraph& plus, const PlaneGraph& minus, int offset = -1) {
  OuterplanarData pd = outerplanar_chords(plus);
  int d = pd.m - 1;
  if (offset < 0) offset = d;
  MateVerdict verdict;
  verdict.glued = glue_along_outer(plus, minus, offset);
  verdict.mateable = verdict.glued.is_simple();
  // witness: chords present both inside and outside
  if (!verdict.mateable) {
    std::map<std::pair<int, int>, int> count;
    for (int dart : verdict.glued.edge_darts()) {
      int a = verdict.glued.origin[dart], b = verdict.glued.target(dart);
      count[std::minmax(a, b)]++;
    }
    for (auto& [e, c] : count)
      if (c > 1) {
        verdict.duplicated_chords.push_back(e);
        verdict.shared_leaves.push_back(leaf_for_chord(d, e.first, e.second));
      }
  }
  Lamination lp = lamination_of(plus);
  // With minus vertex j glued to plus vertex (offset - j), the minus arcs land
  // on the plus arcs through the mirror composed with a (d - offset)-step
  // rotation on the minus side.
  Lamination lq = rotate_lamination(lamination_of(minus), d - offset);
  bool lam_verdict = non_parallel(lp, lq);
  bool obstruction_verdict = !detect_obstruction(lp, lq).obstructed;
  if (lam_verdict != verdict.mateable || obstruction_verdict != verdict.mateable)
    fail(ErrorCode::CrossCheckMismatch,
         "graph gluing and lamination verdicts disagree");
  return verdict;
}

struct SharedMating {
  std::vector<int> cycle;
  PlaneGraph plus, minus;
};

enum class MatingDedup { PerCycle, OrderedIso, UnorderedIso };

/// One unmating per Hamiltonian cycle; each entry reassembles to the input
/// under glue_along_outer with the default offset.
inline std::vector<SharedMating> shared_matings(const PlaneGraph& g,
                                                MatingDedup dedup = MatingDedup::PerCycle) {
  if (!g.is_simple() || !is_k_connected(g, 2))
    fail(ErrorCode::NotHamiltonian, "shared matings need a simple 2-connected graph");
  auto cycles = hamiltonian_cycles(g);
  if (cycles.empty()) fail(ErrorCode::NotHamiltonian, "the graph has no Hamiltonian cycle");
  std::vector<SharedMating> out;
  std::set<std::pair<std::vector<int>, std::vector<int>>> seen;
  for (auto& cycle : cycles) {
    auto [plus, minus] = unmate(g, cycle);
    if (dedup != MatingDedup::PerCycle) {
      auto cp = canonical_form(plus), cm = canonical_form(minus);
      std::pair<std::vector<int>, std::vector<int>> key{cp, cm};
      if (dedup == MatingDedup::UnorderedIso && cm < cp) key = {cm, cp};
      if (!seen.insert(key).second) continue;
    }
    out.push_back({cycle, std::move(plus), std::move(minus)});
  }
  return out;
}

}  // namespace kissing
