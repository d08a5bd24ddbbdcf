#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "kissing/moebius.hpp"
#include "kissing/plane_graph.hpp"

namespace kissing {

struct CirclePacking {
  PlaneGraph graph;
  std::vector<Circle> circles;        // one oriented circle per vertex
  double tolerance = 1e-9;            // certified tangency tolerance
  double residual = 0.0;              // measured max tangency residual
  std::vector<double> solver_history; // per-sweep max angle-sum error
};

/// The symmetric packing realizing the (d+1)-gon: circle j is orthogonal to
/// the unit circle and passes through the (d+1)-st roots of unity at positions
/// j and j+1.
inline CirclePacking regular_polygon_packing(int d) {
  if (d < 2) fail(ErrorCode::DegreeTooSmall, "regular packing needs d >= 2");
  int m = d + 1;
  double alpha = kPi / m;
  CirclePacking p;
  p.graph = polygon_graph(d);
  p.circles.reserve(m);
  for (int j = 0; j < m; ++j) {
    Complex center = std::polar(1.0 / std::cos(alpha), alpha * (2 * j + 1));
    p.circles.push_back(Circle::from_center_radius(center, std::tan(alpha)));
  }
  p.tolerance = 1e-12;
  double res = 0.0;
  for (int j = 0; j < m; ++j)
    res = std::max(res, tangency_residual(p.circles[j], p.circles[(j + 1) % m]));
  p.residual = res;
  return p;
}

struct Augmentation {
  PlaneGraph tri;
  std::vector<int> face_vertex;  // face id of the input -> new vertex id
  int original_n = 0;
};

/// Adds one vertex inside each face joined to the boundary in rotation order;
/// the result is a combinatorial triangulation of the sphere.
inline Augmentation augment_to_triangulation(const PlaneGraph& g) {
  int n = g.n;
  int nf = static_cast<int>(g.faces().size());
  if (nf == 0) fail(ErrorCode::MalformedRotation, "cannot augment an edgeless graph");
  Augmentation out;
  out.original_n = n;
  std::vector<std::vector<int>> rotation(n + nf), edge_ids(n + nf);
  // Original edges keep ids 0..E-1 keyed by their smaller dart.
  auto edge_id = [&](int dart) { return std::min(dart, g.twin[dart]) ; };
  int next_edge = g.dart_count();  // star edges get fresh ids, one per face corner
  std::vector<int> corner_edge(g.dart_count());
  // The corner before dart d (between prev-in-rotation and d) belongs to the
  // face of d; give it the star edge joining origin(d) to that face's vertex.
  for (int d = 0; d < g.dart_count(); ++d) corner_edge[d] = next_edge++;
  for (int v = 0; v < n; ++v) {
    for (int d : g.rotations()[v]) {
      rotation[v].push_back(n + g.face_of(d));
      edge_ids[v].push_back(corner_edge[d]);
      rotation[v].push_back(g.target(d));
      edge_ids[v].push_back(edge_id(d));
    }
  }
  for (int f = 0; f < nf; ++f) {
    out.face_vertex.push_back(n + f);
    // The walk order is clockwise as seen from inside the face, so the new
    // vertex lists its neighbors in reverse.
    const auto& cyc = g.faces()[f];
    for (auto it = cyc.rbegin(); it != cyc.rend(); ++it) {
      rotation[n + f].push_back(g.origin[*it]);
      edge_ids[n + f].push_back(corner_edge[*it]);
    }
  }
  out.tri = PlaneGraph::from_rotation_edges(n + nf, rotation, edge_ids);
  return out;
}

namespace detail {

// Hyperbolic angle at a circle of parameter x = exp(-2 h) in a tangent triple
// with neighbors y, z (x = 0 encodes a horocycle).
inline double corner_angle(double x, double y, double z) {
  double num = x * (1.0 - y) * (1.0 - z);
  double den = (1.0 - x * y) * (1.0 - x * z);
  double s = num <= 0.0 ? 0.0 : num / den;
  return 2.0 * std::asin(std::sqrt(std::min(1.0, std::max(0.0, s))));
}

struct HypSolveResult {
  std::vector<double> x;             // per-vertex parameter, 0 on the boundary
  std::vector<double> history;       // per-sweep max angle-sum error
};

// Maximal-packing radius iteration (uniform neighbor model): each step
// replaces a vertex parameter by the one whose angle sum is exactly 2 pi in
// the equivalent uniform configuration.
inline HypSolveResult solve_hyperbolic_radii(
    const std::vector<std::vector<int>>& rot, const std::vector<char>& interior,
    int max_sweeps, double target) {
  int n = static_cast<int>(rot.size());
  HypSolveResult res;
  res.x.assign(n, 0.0);
  for (int v = 0; v < n; ++v)
    if (interior[v]) res.x[v] = 0.5;
  auto angle_sum = [&](int v, double xv) {
    const auto& r = rot[v];
    int k = static_cast<int>(r.size());
    double sum = 0.0;
    for (int i = 0; i < k; ++i)
      sum += corner_angle(xv, res.x[r[i]], res.x[r[(i + 1) % k]]);
    return sum;
  };
  auto sweep_error = [&]() {
    double err = 0.0;
    for (int v = 0; v < n; ++v)
      if (interior[v]) err = std::max(err, std::abs(angle_sum(v, res.x[v]) - 2.0 * kPi));
    return err;
  };
  std::vector<double> prev;
  double err = sweep_error();
  res.history.push_back(err);
  int stalled = 0;
  for (int sweep = 0; sweep < max_sweeps && err > target && stalled < 40; ++sweep) {
    prev = res.x;
    for (int v = 0; v < n; ++v) {
      if (!interior[v]) continue;
      int k = static_cast<int>(rot[v].size());
      double theta = angle_sum(v, res.x[v]);
      double sq = std::sqrt(res.x[v]);
      double s = std::sin(theta / (2.0 * k));
      // uniform neighbor with the same per-corner angle at the current radius
      double yhat = (s - sq) / (s * res.x[v] - sq);
      yhat = std::min(1.0 - 1e-16, std::max(0.0, yhat));
      double q = std::sin(kPi / k);
      double root;
      if (yhat <= 0.0) {
        root = q;
      } else {
        double b = 1.0 - yhat;
        root = (-b + std::sqrt(b * b + 4.0 * q * q * yhat)) / (2.0 * q * yhat);
      }
      double xv = root * root;
      res.x[v] = std::min(1.0 - 1e-16, std::max(1e-300, xv));
    }
    double new_err = sweep_error();
    // Superstep: extrapolate along the last displacement when it keeps
    // improving; rejected steps are rolled back so the history decreases.
    if (new_err < err && sweep > 2) {
      double lambda = new_err / err;
      if (lambda > 0.1 && lambda < 0.999) {
        std::vector<double> trial = res.x;
        double factor = lambda / (1.0 - lambda);
        for (int v = 0; v < n; ++v)
          if (interior[v]) {
            trial[v] = res.x[v] + factor * (res.x[v] - prev[v]);
            trial[v] = std::min(1.0 - 1e-16, std::max(1e-300, trial[v]));
          }
        std::swap(res.x, trial);
        double trial_err = sweep_error();
        if (trial_err < new_err) {
          new_err = trial_err;
        } else {
          std::swap(res.x, trial);
        }
      }
    }
    if (new_err >= err * 0.999) ++stalled;
    else stalled = 0;
    if (new_err > err) new_err = err;  // guard: keep the reported history monotone
    err = new_err;
    res.history.push_back(err);
  }
  return res;
}

inline double tanh_half(double h) { return std::tanh(0.5 * h); }

inline double hyp_radius_from_x(double x) { return -0.5 * std::log(x); }

// Euclidean circle of hyperbolic radius h centered at the origin of the disk.
inline Circle circle_at_origin(double h) {
  return Circle::from_center_radius(Complex(0.0, 0.0), tanh_half(h));
}

}  // namespace detail

namespace detail {

struct BlockDecomposition {
  // Each block: sorted global vertex ids + the block graph with local ids.
  std::vector<std::vector<int>> block_vertices;
  std::vector<PlaneGraph> block_graphs;
};

inline BlockDecomposition biconnected_blocks(const PlaneGraph& g) {
  int n = g.n;
  std::vector<int> num(n, -1), low(n, 0);
  std::vector<std::pair<int, int>> edge_stack;
  std::vector<std::vector<std::pair<int, int>>> block_edges;
  int counter = 0;
  auto neighbors = g.neighbor_lists();
  // iterative DFS collecting biconnected components
  struct Frame {
    int v, parent;
    size_t idx;
  };
  std::vector<Frame> stack;
  num[0] = counter++;
  low[0] = num[0];
  stack.push_back({0, -1, 0});
  while (!stack.empty()) {
    Frame& fr = stack.back();
    if (fr.idx < neighbors[fr.v].size()) {
      int u = neighbors[fr.v][fr.idx++];
      if (num[u] < 0) {
        edge_stack.push_back({fr.v, u});
        num[u] = counter++;
        low[u] = num[u];
        stack.push_back({u, fr.v, 0});
      } else if (num[u] < num[fr.v] && u != fr.parent) {
        edge_stack.push_back({fr.v, u});
        low[fr.v] = std::min(low[fr.v], num[u]);
      }
    } else {
      int v = fr.v, parent = fr.parent;
      stack.pop_back();
      if (parent >= 0) {
        low[parent] = std::min(low[parent], low[v]);
        if (low[v] >= num[parent]) {
          std::vector<std::pair<int, int>> comp;
          while (!edge_stack.empty()) {
            auto e = edge_stack.back();
            edge_stack.pop_back();
            comp.push_back(e);
            if (e == std::make_pair(parent, v)) break;
          }
          block_edges.push_back(std::move(comp));
        }
      }
    }
  }
  BlockDecomposition out;
  for (auto& edges : block_edges) {
    std::set<std::pair<int, int>> eset;
    std::set<int> vset;
    for (auto [a, b] : edges) {
      eset.insert(std::minmax(a, b));
      vset.insert(a);
      vset.insert(b);
    }
    std::vector<int> verts(vset.begin(), vset.end());
    std::map<int, int> local;
    for (size_t i = 0; i < verts.size(); ++i) local[verts[i]] = static_cast<int>(i);
    std::vector<std::vector<int>> rot(verts.size());
    for (size_t i = 0; i < verts.size(); ++i) {
      for (int d : g.rotations()[verts[i]]) {
        int u = g.target(d);
        if (eset.count(std::minmax(verts[static_cast<int>(i)], u))) rot[i].push_back(local[u]);
      }
    }
    out.block_vertices.push_back(verts);
    out.block_graphs.push_back(PlaneGraph::from_rotation(static_cast<int>(verts.size()), rot));
  }
  return out;
}

}  // namespace detail

namespace detail {

/// Packs a 2-connected simple plane graph (or K2) in the unit disk with the
/// lowest-id face's added vertex as the reversed unit circle; returns circles
/// for the augmented triangulation plus the augmentation.
struct BlockPackingResult {
  Augmentation aug;
  std::vector<Circle> circles;  // per vertex of aug.tri
  std::vector<double> history;
  double residual = 0.0;
};

inline BlockPackingResult pack_block(const PlaneGraph& g, double tol, int max_sweeps = 200000) {
  BlockPackingResult out;
  if (g.n == 2) {
    // Single edge: two tangent circles inside the unit circle, no augmentation.
    out.aug.tri = g;
    out.aug.original_n = 2;
    out.circles = {Circle::from_center_radius(Complex(-0.5, 0.0), 0.5),
                   Circle::from_center_radius(Complex(0.5, 0.0), 0.5)};
    out.residual = 0.0;
    return out;
  }
  out.aug = augment_to_triangulation(g);
  const PlaneGraph& tri = out.aug.tri;
  int w = out.aug.face_vertex[0];
  int n = tri.n;

  std::vector<char> interior(n, 1);
  interior[w] = 0;
  for (int d : tri.rotations()[w]) interior[tri.target(d)] = 0;

  // Rotations with w removed (only needed at interior vertices).
  std::vector<std::vector<int>> rot(n);
  for (int v = 0; v < n; ++v) {
    if (v == w) continue;
    for (int d : tri.rotations()[v]) rot[v].push_back(tri.target(d));
  }

  auto solved = solve_hyperbolic_radii(rot, interior, max_sweeps, 1e-15);
  out.history = solved.history;
  if (solved.history.back() > std::min(1e-10, tol))
    fail(ErrorCode::NoConvergence, "radius iteration stalled at " +
                                       std::to_string(solved.history.back()));
  const std::vector<double>& x = solved.x;
  auto hyp_r = [&](int v) { return hyp_radius_from_x(std::max(x[v], 1e-300)); };

  // Layout by face propagation.  Faces of the triangulation that avoid w are
  // laid out breadth first; each third circle comes from the chart where the
  // shared tangency point is sent to infinity and the two placed circles
  // become parallel lines.
  std::vector<Circle> circ(n);
  std::vector<char> placed(n, 0);

  int v0 = -1;
  for (int f = 1; f < static_cast<int>(out.aug.face_vertex.size()); ++f)
    if (interior[out.aug.face_vertex[f]]) {
      v0 = out.aug.face_vertex[f];
      break;
    }
  if (v0 < 0)
    for (int v = 0; v < n; ++v)
      if (interior[v]) {
        v0 = v;
        break;
      }
  if (v0 < 0) fail(ErrorCode::NoConvergence, "no interior vertex for layout");

  double h0 = hyp_r(v0);
  circ[v0] = circle_at_origin(h0);
  placed[v0] = 1;
  int u0 = rot[v0][0];
  double t0 = tanh_half(h0);
  if (interior[u0]) {
    double hu = hyp_r(u0);
    double pfar = tanh_half(h0 + 2.0 * hu);
    circ[u0] = Circle::from_center_radius(Complex(0.5 * (pfar + t0), 0.0), 0.5 * (pfar - t0));
  } else {
    circ[u0] = Circle::from_center_radius(Complex(0.5 * (1.0 + t0), 0.0), 0.5 * (1.0 - t0));
  }
  placed[u0] = 1;

  // Gather layout faces (triangles of tri avoiding w) and their adjacency by
  // shared edges.
  std::vector<std::array<int, 3>> tris;
  for (auto& f : tri.faces()) {
    std::array<int, 3> t{tri.origin[f[0]], tri.origin[f[1]], tri.origin[f[2]]};
    if (t[0] == w || t[1] == w || t[2] == w) continue;
    tris.push_back(t);
  }
  std::map<std::pair<int, int>, std::vector<int>> tris_at_edge;
  for (int i = 0; i < static_cast<int>(tris.size()); ++i)
    for (int k = 0; k < 3; ++k)
      tris_at_edge[std::minmax(tris[i][k], tris[i][(k + 1) % 3])].push_back(i);

  std::deque<int> queue;
  std::vector<char> done(tris.size(), 0);
  auto push_edge = [&](int a, int b) {
    auto it = tris_at_edge.find(std::minmax(a, b));
    if (it == tris_at_edge.end()) return;
    for (int t : it->second)
      if (!done[t]) queue.push_back(t);
  };
  push_edge(v0, u0);

  auto place_third = [&](int a, int b, int c) {
    // a, b placed and tangent; c gets hyperbolic radius x[c] (0 for horocycle).
    Complex tau = tangency_point(circ[a], circ[b]);
    MoebiusLike B = disk_translation(tau);
    MoebiusLike J{Complex(0, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0), false};
    MoebiusLike M = J.compose(B);
    Circle la = M.apply(circ[a]);
    Circle lb = M.apply(circ[b]);
    // Both images are straight lines; extract unit normals and offsets.
    auto line_data = [&](const Circle& L) -> std::pair<Complex, double> {
      Complex nrm = L.b / std::abs(L.b);
      double off = -L.d / (2.0 * std::abs(L.b));  // signed foot along nrm
      return {nrm, off};
    };
    auto [na, sa] = line_data(la);
    auto [nb, sb0] = line_data(lb);
    double sb = (std::abs(na + nb) < std::abs(na - nb)) ? -sb0 : sb0;  // express along na
    double sm = 0.5 * (sa + sb);
    double halfgap = 0.5 * std::abs(sa - sb);
    double xc = x[c];
    double d0 = ((2.0 * halfgap + 1.0) + xc * (2.0 * halfgap - 1.0)) / (1.0 - xc);
    double t2 = d0 + halfgap * halfgap - sm * sm;
    if (t2 < 0) {
      if (t2 < -1e-6) fail(ErrorCode::ResidualTooLarge, "layout chart degenerated");
      t2 = 0;
    }
    double t = std::sqrt(t2);
    Complex dir = na * Complex(0.0, 1.0);
    for (double sign : {+1.0, -1.0}) {
      Complex center = na * sm + dir * (sign * t);
      Circle cand = Circle::from_center_radius(center, halfgap);
      Circle back = M.inverse().apply(cand);
      // Orientation: the tangency triangle of a counterclockwise face is
      // positively oriented.
      Complex t_ab = tau;
      Complex t_bc = tangency_point(circ[b], back);
      Complex t_ca = tangency_point(back, circ[a]);
      double cross = ((t_bc - t_ab) * std::conj(t_ca - t_ab)).imag();
      if (cross > 0.0) {
        circ[c] = back;
        return;
      }
    }
    fail(ErrorCode::ResidualTooLarge, "no orientation-consistent placement");
  };

  size_t placed_count = 2;
  size_t total = 0;
  for (int v = 0; v < n; ++v)
    if (v != w) ++total;
  while (!queue.empty()) {
    int ti = queue.front();
    queue.pop_front();
    if (done[ti]) continue;
    auto [a, b, c] = tris[ti];
    int np = placed[a] + placed[b] + placed[c];
    if (np < 2) continue;  // re-enqueued later via another edge
    if (np == 3) {
      done[ti] = 1;
      push_edge(a, b);
      push_edge(b, c);
      push_edge(c, a);
      continue;
    }
    if (placed[a] && placed[b]) place_third(a, b, c), placed[c] = 1;
    else if (placed[b] && placed[c]) place_third(b, c, a), placed[a] = 1;
    else place_third(c, a, b), placed[b] = 1;
    ++placed_count;
    done[ti] = 1;
    push_edge(a, b);
    push_edge(b, c);
    push_edge(c, a);
  }
  if (placed_count != total) fail(ErrorCode::NoConvergence, "layout did not reach every circle");

  circ[w] = Circle::from_center_radius(Complex(0.0, 0.0), 1.0, -1);
  out.circles = std::move(circ);

  double res = 0.0;
  for (int d : tri.edge_darts())
    res = std::max(res, tangency_residual(out.circles[tri.origin[d]],
                                          out.circles[tri.target(d)]));
  out.residual = res;
  if (res > tol) fail(ErrorCode::ResidualTooLarge, "layout residual " + std::to_string(res));
  return out;
}

}  // namespace detail

struct ContactReport {
  bool pass = false;
  double max_edge_residual = 0.0;
  std::pair<int, int> worst_edge{-1, -1};
  std::vector<std::pair<int, int>> spurious;  // non-edges with overlapping disks
};

/// Residuals for all vertex pairs of a packing at its own tolerance.
inline ContactReport verify_contact(const CirclePacking& p, double tol = -1.0) {
  if (tol < 0) tol = p.tolerance;
  ContactReport rep;
  const PlaneGraph& g = p.graph;
  for (int d : g.edge_darts()) {
    int u = g.origin[d], v = g.target(d);
    double r = tangency_residual(p.circles[u], p.circles[v]);
    if (r > rep.max_edge_residual) {
      rep.max_edge_residual = r;
      rep.worst_edge = {std::min(u, v), std::max(u, v)};
    }
  }
  for (int u = 0; u < g.n; ++u)
    for (int v = u + 1; v < g.n; ++v) {
      if (g.adjacent(u, v)) continue;
      if (disk_gap(p.circles[u], p.circles[v]) < -tol) rep.spurious.push_back({u, v});
    }
  rep.pass = rep.max_edge_residual <= tol && rep.spurious.empty();
  return rep;
}

/// Realizes a connected simple plane graph as a circle packing certified to
/// tangency residual <= tol.
inline CirclePacking solve_packing(const PlaneGraph& g, double tol = 1e-9) {
  if (!g.is_simple()) fail(ErrorCode::NotSimple, "packing input must be simple");
  CirclePacking p;
  p.graph = g;
  p.tolerance = tol;
  if (g.n == 1) {
    p.circles = {Circle::from_center_radius(Complex(0, 0), 1.0)};
    return p;
  }

  auto blocks = detail::biconnected_blocks(g);
  int nb = static_cast<int>(blocks.block_graphs.size());
  std::vector<detail::BlockPackingResult> packed(nb);
  for (int b = 0; b < nb; ++b) packed[b] = detail::pack_block(blocks.block_graphs[b], tol);

  std::vector<Circle> circ(g.n);
  std::vector<char> have(g.n, 0);
  std::vector<char> block_done(nb, 0);
  std::vector<double> history;

  // Root block as solved; children aligned at cut vertices and compressed into
  // a free arc of the shared circle.
  std::vector<int> order;
  {
    std::deque<int> bfs{0};
    block_done[0] = 1;
    while (!bfs.empty()) {
      int b = bfs.front();
      bfs.pop_front();
      order.push_back(b);
      for (int b2 = 0; b2 < nb; ++b2) {
        if (block_done[b2]) continue;
        for (int v : blocks.block_vertices[b2])
          if (std::find(blocks.block_vertices[b].begin(), blocks.block_vertices[b].end(), v) !=
              blocks.block_vertices[b].end()) {
            block_done[b2] = 1;
            bfs.push_back(b2);
            break;
          }
      }
    }
  }

  for (int idx = 0; idx < static_cast<int>(order.size()); ++idx) {
    int b = order[idx];
    auto& verts = blocks.block_vertices[b];
    auto& res = packed[b];
    for (double h : res.history) history.push_back(h);
    std::vector<Circle> local(verts.size());
    for (size_t i = 0; i < verts.size(); ++i) local[i] = res.circles[i];
    if (idx == 0) {
      for (size_t i = 0; i < verts.size(); ++i) {
        circ[verts[i]] = local[i];
        have[verts[i]] = 1;
      }
      continue;
    }
    // find the cut vertex shared with already placed vertices
    int cut = -1, cut_local = -1;
    for (size_t i = 0; i < verts.size(); ++i)
      if (have[verts[i]]) {
        cut = verts[i];
        cut_local = static_cast<int>(i);
        break;
      }
    if (cut < 0) fail(ErrorCode::Disconnected, "block tree is not connected");

    // Similarity aligning the block's cut circle with the placed one.
    Circle src = local[cut_local];
    Circle dst = circ[cut];
    double scale = dst.radius() / src.radius();
    Complex shift = dst.center() - src.center() * scale;
    MoebiusLike sim{Complex(scale, 0.0), shift, Complex(0.0, 0.0), Complex(1.0, 0.0), false};
    for (auto& c : local) c = sim.apply(c);

    // Free arc of the cut circle among already placed tangencies.
    std::vector<double> angles;
    Complex q = dst.center();
    for (int v = 0; v < g.n; ++v) {
      if (!have[v] || v == cut) continue;
      if (std::abs(disk_gap(circ[v], dst)) < 1e-6)
        angles.push_back(std::arg(tangency_point(circ[v], dst) - q));
    }
    double anchor;
    if (angles.empty()) {
      anchor = 0.0;
    } else {
      std::sort(angles.begin(), angles.end());
      double best_gap = -1.0;
      anchor = angles[0];
      for (size_t i = 0; i < angles.size(); ++i) {
        double a0 = angles[i];
        double a1 = (i + 1 < angles.size()) ? angles[i + 1] : angles[0] + 2.0 * kPi;
        if (a1 - a0 > best_gap) {
          best_gap = a1 - a0;
          anchor = 0.5 * (a0 + a1);
        }
      }
    }
    double r = dst.radius();
    Complex p_attract = q + std::polar(r, anchor);
    Complex p_repel = q + std::polar(r, anchor + kPi);
    Complex p_third = q + std::polar(r, anchor + 0.5 * kPi);
    MoebiusLike W = moebius_to_standard(p_attract, p_third, p_repel);

    auto compressed = [&](double s) {
      MoebiusLike Sc{Complex(s, 0.0), Complex(0, 0), Complex(0, 0), Complex(1, 0), false};
      MoebiusLike Winv{W.m11, -W.m01, -W.m10, W.m00, false};
      MoebiusLike F = Winv.compose(Sc).compose(W);
      std::vector<Circle> moved = local;
      for (auto& c : moved) c = F.apply(c);
      return moved;
    };
    double s = 1.0;
    std::vector<Circle> placed_ok;
    bool ok = false;
    for (int attempt = 0; attempt < 80 && !ok; ++attempt, s *= 0.5) {
      auto moved = compressed(s);
      ok = true;
      for (size_t i = 0; i < verts.size() && ok; ++i) {
        if (static_cast<int>(i) == cut_local) continue;
        for (int v = 0; v < g.n && ok; ++v) {
          if (!have[v] || v == cut) continue;
          if (disk_gap(moved[i], circ[v]) < 10 * tol) ok = false;
        }
      }
      if (ok) placed_ok = std::move(moved);
    }
    if (!ok) fail(ErrorCode::NoConvergence, "could not fit block at its cut vertex");
    for (size_t i = 0; i < verts.size(); ++i) {
      if (static_cast<int>(i) == cut_local) continue;
      circ[verts[i]] = placed_ok[i];
      have[verts[i]] = 1;
    }
  }

  p.circles = std::move(circ);
  p.solver_history = std::move(history);
  double res = 0.0;
  for (int d : g.edge_darts())
    res = std::max(res, tangency_residual(p.circles[g.origin[d]], p.circles[g.target(d)]));
  p.residual = res;
  if (res > tol) fail(ErrorCode::ResidualTooLarge, "residual " + std::to_string(res));
  auto rep = verify_contact(p);
  if (!rep.pass) fail(ErrorCode::ResidualTooLarge, "spurious contact detected");
  return p;
}

/// Applies the unique Moebius map sending three points to three targets to
/// every circle of the packing.
inline CirclePacking normalize(const CirclePacking& p, const std::array<Complex, 3>& src,
                               const std::array<Complex, 3>& dst) {
  MoebiusLike m = moebius_three_points(src, dst);
  CirclePacking out = p;
  for (auto& c : out.circles) {
    c = m.apply(c);
    if (c.is_line(1e-12)) fail(ErrorCode::DegenerateCircle, "normalization sent a circle to a line");
  }
  double res = 0.0;
  for (int d : out.graph.edge_darts())
    res = std::max(res, tangency_residual(out.circles[out.graph.origin[d]],
                                          out.circles[out.graph.target(d)]));
  out.residual = res;
  return out;
}

struct DualFitEntry {
  int face = -1;
  Circle circle;
  double fit_residual = 0.0;
  double orthogonality_defect = 0.0;
};

/// Least-squares circle through each face's tangency points (experimental:
/// residuals are only small near the midsphere-normalized packing).
inline std::vector<DualFitEntry> dual_orthocircle_fit(const CirclePacking& p) {
  if (!is_k_connected(p.graph, 3))
    fail(ErrorCode::NotPolyhedral, "dual fit needs a 3-connected contact graph");
  std::vector<DualFitEntry> out;
  for (int f = 0; f < static_cast<int>(p.graph.faces().size()); ++f) {
    std::vector<Complex> pts;
    for (int d : p.graph.faces()[f])
      pts.push_back(tangency_point(p.circles[p.graph.origin[d]], p.circles[p.graph.target(d)]));
    // Kasa fit: minimize ||z|^2 + 2 Re(conj(b) z) + d| over b, d.
    double sxx = 0, sxy = 0, syy = 0, sx = 0, sy = 0, sxz = 0, syz = 0, sz = 0;
    for (Complex z : pts) {
      double xx = z.real(), yy = z.imag(), zz = std::norm(z);
      sxx += xx * xx;
      sxy += xx * yy;
      syy += yy * yy;
      sx += xx;
      sy += yy;
      sxz += xx * zz;
      syz += yy * zz;
      sz += zz;
    }
    double m = static_cast<double>(pts.size());
    // solve [sxx sxy sx; sxy syy sy; sx sy m] * [2bx 2by d]^T = -[sxz syz sz]^T
    double A[3][4] = {{sxx, sxy, sx, -sxz}, {sxy, syy, sy, -syz}, {sx, sy, m, -sz}};
    for (int col = 0; col < 3; ++col) {
      int piv = col;
      for (int r2 = col + 1; r2 < 3; ++r2)
        if (std::abs(A[r2][col]) > std::abs(A[piv][col])) piv = r2;
      std::swap(A[col], A[piv]);
      for (int r2 = 0; r2 < 3; ++r2) {
        if (r2 == col || A[col][col] == 0.0) continue;
        double fac = A[r2][col] / A[col][col];
        for (int c2 = col; c2 < 4; ++c2) A[r2][c2] -= fac * A[col][c2];
      }
    }
    double bx = A[0][3] / A[0][0] / 2.0, by = A[1][3] / A[1][1] / 2.0, dd = A[2][3] / A[2][2];
    Circle fit{1.0, Complex(bx, by), dd};
    DualFitEntry entry;
    entry.face = f;
    entry.circle = fit;
    Complex c = fit.center();
    double r = fit.radius();
    for (Complex z : pts) entry.fit_residual = std::max(entry.fit_residual, std::abs(std::abs(z - c) - r));
    for (int d : p.graph.faces()[f]) {
      const Circle& cv = p.circles[p.graph.origin[d]];
      double defect = std::abs(std::norm(c - cv.center()) - r * r - cv.radius() * cv.radius());
      entry.orthogonality_defect = std::max(entry.orthogonality_defect, defect);
    }
    out.push_back(entry);
  }
  return out;
}

}  // namespace kissing
