#include "jcn/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "jcn/format.hpp"
#include "jcn/gadgets.hpp"

namespace jcn {

namespace {

void require_k(int k) {
  if (k < 2) throw InstanceError("k must be >= 2");
}

Weight pow_w(const Weight& b, int e) {
  Weight r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

Weight gamma(int k) {
  require_k(k);
  Weight K = k;
  Weight num = 12 * pow_w(K, 5) - 11 * pow_w(K, 4) + 2 * pow_w(K, 3) - K * K - 2 * K;
  if (num % 12 != 0) throw InstanceError("internal: gamma numerator not divisible by 12");
  return num / 12;
}

Weight gamma_sum(int k) {
  require_k(k);
  Weight K = k, sum = 0;
  for (int j = 1; j < k; ++j) {
    Weight J = j;
    sum += 2 * pow_w(K, 4) + K * J * J + K * J - 2 * pow_w(K, 3) * J - pow_w(J, 3) - J * J;
  }
  return sum;
}

Weight beta(int k, const Weight& T) {
  require_k(k);
  return Weight(k) * (k + 1) * T * T + gamma(k) * T;
}

Weight beta_sum(int k, const Weight& T) {
  require_k(k);
  auto t = ladder_t(k);
  Weight sum = Weight(k) * (k + 1) * T * T;
  for (int j = 1; j < k; ++j) sum += 2 * Weight(k - j) * T * t[j];
  return sum;
}

Weight canonical_fa_count(int k, const Weight& T) {
  require_k(k);
  Weight K = k;
  return (4 * pow_w(K, 3) + K * K + K) * pow_w(T, 3) + beta(k, T);
}

Weight canonical_fa_count_from_cuts(int k, const Weight& T) {
  auto t = ladder_t(k);
  return (2 * t[0] + 2 * t[k]) * pow_w(T, 3) + beta_sum(k, T);
}

Weight canonical_fplus_count(int k, const Weight& T) { return 2 * canonical_fa_count(k, T); }

Weight ordering_gap(const std::vector<Weight>& a, const std::vector<Weight>& b, const std::vector<std::size_t>& perm) {
  const std::size_t n = a.size();
  if (b.size() != n || perm.size() != n) throw InstanceError("ordering_gap: lengths differ");
  for (std::size_t i = 1; i < n; ++i) {
    if (!(a[i - 1] < a[i])) throw InstanceError("ordering_gap: a is not strictly increasing");
    if (!(b[i - 1] > b[i])) throw InstanceError("ordering_gap: b is not strictly decreasing");
  }
  std::vector<bool> seen(n, false);
  for (auto p : perm) {
    if (p >= n || seen[p]) throw InstanceError("ordering_gap: not a permutation");
    seen[p] = true;
  }
  Weight gap = 0;
  for (std::size_t i = 0; i < n; ++i) gap += a[i] * b[perm[i]] - a[i] * b[i];
  return gap;
}

std::size_t CrossingPattern::size() const {
  std::size_t n = 0;
  for (const auto& c : crossings) n += c.size();
  return n;
}

// ---------------------------------------------------------------------------
// Straight-line planarization

namespace {

using Big = Weight;

struct Vec {
  Big x, y;
};

Big cross(const Vec& a, const Vec& b) { return a.x * b.y - a.y * b.x; }

Vec sub(const Point& a, const Point& b) { return {Big(a.x - b.x), Big(a.y - b.y)}; }

int sign(const Big& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

// t = num / den with den > 0.
struct Param {
  Big num, den;
};

bool param_less(const Param& a, const Param& b) { return a.num * b.den < b.num * a.den; }
bool param_equal(const Param& a, const Param& b) { return a.num * b.den == b.num * a.den; }

bool on_segment(const Point& p, const Point& a, const Point& b) {
  if (cross(sub(b, a), sub(p, a)) != 0) return false;
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

struct Segment {
  Point a, b;
  std::string label;
};

// Classifies the pair: 0 = disjoint, 1 = proper crossing (params set),
// throws on any touching or overlap not at a shared endpoint.
int intersect(const Segment& s, const Segment& t, bool shared_endpoint_ok, Param& ps, Param& pt) {
  Vec r = sub(s.b, s.a), q = sub(t.b, t.a), w = sub(t.a, s.a);
  Big den = cross(r, q);
  auto degenerate = [&]() {
    throw InstanceError("degenerate drawing: '" + s.label + "' and '" + t.label + "' touch or overlap");
  };
  if (den == 0) {
    if (cross(r, w) != 0) return 0;  // parallel, not collinear
    int touching = 0;
    for (const Point& p : {t.a, t.b}) touching += on_segment(p, s.a, s.b) ? 1 : 0;
    for (const Point& p : {s.a, s.b}) touching += on_segment(p, t.a, t.b) ? 1 : 0;
    if (touching == 0) return 0;
    bool share = s.a == t.a || s.a == t.b || s.b == t.a || s.b == t.b;
    if (shared_endpoint_ok && share && touching == 2) {
      // Collinear and sharing an endpoint: fine only if they point away from each other.
      Point common = (s.a == t.a || s.a == t.b) ? s.a : s.b;
      Point so = common == s.a ? s.b : s.a, to = common == t.a ? t.b : t.a;
      Vec u = sub(so, common), v = sub(to, common);
      if (u.x * v.x + u.y * v.y < 0) return 0;
    }
    degenerate();
  }
  Big tn = cross(w, q), un = cross(w, r);
  if (den < 0) {
    den = -den;
    tn = -tn;
    un = -un;
  }
  if (tn < 0 || tn > den || un < 0 || un > den) return 0;
  bool interior = tn > 0 && tn < den && un > 0 && un < den;
  if (interior) {
    ps = {tn, den};
    pt = {un, den};
    return 1;
  }
  bool share = s.a == t.a || s.a == t.b || s.b == t.a || s.b == t.b;
  if (shared_endpoint_ok && share) {
    // Meeting at the shared endpoint only.
    bool s_end = tn == 0 || tn == den, t_end = un == 0 || un == den;
    if (s_end && t_end) return 0;
  }
  degenerate();
  return 0;
}

struct PendingCrossing {
  EdgeIndex e1, e2;
  Param t1, t2;
};

}  // namespace

JointDrawing straight_line_drawing(const WeightedMultigraph& g1, const std::vector<Point>& coords1,
                                   const WeightedMultigraph& g2, const std::vector<Point>& coords2) {
  if (coords1.size() != g1.vertex_count() || coords2.size() != g2.vertex_count()) {
    throw InstanceError("coordinate count does not match the graph");
  }
  auto seg = [](const WeightedMultigraph& g, const std::vector<Point>& c, EdgeIndex e) {
    return Segment{c[g.edge(e).u], c[g.edge(e).v], g.edge(e).id};
  };
  std::set<std::pair<std::int64_t, std::int64_t>> occupied;
  for (const auto* c : {&coords1, &coords2}) {
    for (const Point& p : *c) {
      if (!occupied.insert({p.x, p.y}).second) throw InstanceError("degenerate drawing: two vertices share a point");
    }
  }
  // Vertices must not sit on foreign edges.
  for (int side = 1; side <= 2; ++side) {
    const auto& g = side == 1 ? g1 : g2;
    const auto& c = side == 1 ? coords1 : coords2;
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
      for (int other = 1; other <= 2; ++other) {
        const auto& h = other == 1 ? g1 : g2;
        const auto& hc = other == 1 ? coords1 : coords2;
        for (VertexIndex v = 0; v < h.vertex_count(); ++v) {
          if (other == side && (g.edge(e).u == v || g.edge(e).v == v)) continue;
          if (on_segment(hc[v], c[g.edge(e).u], c[g.edge(e).v])) {
            throw InstanceError("degenerate drawing: vertex '" + h.vertex_name(v) + "' lies on edge '" + g.edge(e).id + "'");
          }
        }
      }
    }
  }
  for (int side = 1; side <= 2; ++side) {
    const auto& g = side == 1 ? g1 : g2;
    const auto& c = side == 1 ? coords1 : coords2;
    for (EdgeIndex a = 0; a < g.edge_count(); ++a) {
      for (EdgeIndex b = a + 1; b < g.edge_count(); ++b) {
        Param pa, pb;
        if (intersect(seg(g, c, a), seg(g, c, b), true, pa, pb) != 0) {
          throw InstanceError("drawing is not plane: '" + g.edge(a).id + "' crosses '" + g.edge(b).id + "'");
        }
      }
    }
  }
  std::vector<PendingCrossing> pending;
  for (EdgeIndex a = 0; a < g1.edge_count(); ++a) {
    for (EdgeIndex b = 0; b < g2.edge_count(); ++b) {
      Param pa, pb;
      if (intersect(seg(g1, coords1, a), seg(g2, coords2, b), false, pa, pb) == 1) pending.push_back({a, b, pa, pb});
    }
  }

  JointDrawing d;
  auto& P = d.graph;
  std::vector<VertexIndex> at1(g1.vertex_count()), at2(g2.vertex_count());
  for (VertexIndex v = 0; v < g1.vertex_count(); ++v) {
    at1[v] = P.add_vertex("1:" + g1.vertex_name(v));
    d.vertex_side.push_back(1);
    d.vertex_origin.push_back(v);
  }
  for (VertexIndex v = 0; v < g2.vertex_count(); ++v) {
    at2[v] = P.add_vertex("2:" + g2.vertex_name(v));
    d.vertex_side.push_back(2);
    d.vertex_origin.push_back(v);
  }
  std::vector<VertexIndex> xv(pending.size());
  for (std::size_t i = 0; i < pending.size(); ++i) {
    xv[i] = P.add_vertex("x" + std::to_string(i));
    d.vertex_side.push_back(0);
    d.vertex_origin.push_back(i);
    d.crossings.push_back({pending[i].e1, pending[i].e2});
  }
  // Direction of every segment end, for the rotation.
  std::vector<std::vector<std::pair<Vec, EdgeIndex>>> ends(P.vertex_count());
  auto chain = [&](int side, const WeightedMultigraph& g, const std::vector<Point>& c, const std::vector<VertexIndex>& at,
                   EdgeIndex e) {
    std::vector<std::size_t> on;
    for (std::size_t i = 0; i < pending.size(); ++i) {
      if ((side == 1 ? pending[i].e1 : pending[i].e2) == e) on.push_back(i);
    }
    auto param = [&](std::size_t i) -> const Param& { return side == 1 ? pending[i].t1 : pending[i].t2; };
    std::sort(on.begin(), on.end(), [&](std::size_t x, std::size_t y) { return param_less(param(x), param(y)); });
    for (std::size_t j = 1; j < on.size(); ++j) {
      if (param_equal(param(on[j - 1]), param(on[j]))) throw InstanceError("degenerate drawing: concurrent crossings");
    }
    Vec dir = sub(c[g.edge(e).v], c[g.edge(e).u]);
    Vec back{-dir.x, -dir.y};
    std::vector<VertexIndex> stops{at[g.edge(e).u]};
    for (auto i : on) stops.push_back(xv[i]);
    stops.push_back(at[g.edge(e).v]);
    const std::string prefix = std::to_string(side) + ":" + g.edge(e).id + "#";
    for (std::size_t j = 0; j + 1 < stops.size(); ++j) {
      EdgeIndex s = P.add_edge(prefix + std::to_string(j), stops[j], stops[j + 1], g.edge(e).weight);
      d.edge_side.push_back(side);
      d.edge_origin.push_back(e);
      ends[stops[j]].push_back({dir, s});
      ends[stops[j + 1]].push_back({back, s});
    }
  };
  for (EdgeIndex e = 0; e < g1.edge_count(); ++e) chain(1, g1, coords1, at1, e);
  for (EdgeIndex e = 0; e < g2.edge_count(); ++e) chain(2, g2, coords2, at2, e);

  auto half = [](const Vec& v) { return v.y > 0 || (v.y == 0 && v.x > 0) ? 0 : 1; };
  d.rotation.order.resize(P.vertex_count());
  for (VertexIndex v = 0; v < P.vertex_count(); ++v) {
    auto& list = ends[v];
    std::sort(list.begin(), list.end(), [&](const auto& a, const auto& b) {
      int ha = half(a.first), hb = half(b.first);
      if (ha != hb) return ha < hb;
      return sign(cross(a.first, b.first)) > 0;
    });
    for (const auto& [dir, s] : list) d.rotation.order[v].push_back(s);
  }
  return d;
}

CrossingPattern crossing_pattern(const JointDrawing& d, std::size_t g2_edges) {
  CrossingPattern out;
  out.crossings.resize(g2_edges);
  const auto& P = d.graph;
  // Walk every G2 edge from its first endpoint.
  for (VertexIndex v = 0; v < P.vertex_count(); ++v) {
    if (d.vertex_side[v] != 2) continue;
    for (EdgeIndex s : P.incident(v)) {
      if (P.edge(s).u != v) continue;  // segments point away from the edge's first endpoint
      EdgeIndex origin = d.edge_origin[s];
      VertexIndex cur = P.edge(s).v;
      EdgeIndex seg = s;
      while (d.vertex_side[cur] == 0) {
        out.crossings[origin].push_back(d.crossings[d.vertex_origin[cur]].first);
        const auto& rot = d.rotation.order[cur];
        auto it = std::find(rot.begin(), rot.end(), seg);
        seg = rot[(it - rot.begin() + 2) % 4];
        cur = P.edge(seg).other(cur);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Witness validation

namespace {

[[noreturn]] void infeasible(const std::string& why) { throw InstanceError("infeasible drawing: " + why); }

struct DrawingIndex {
  std::vector<VertexIndex> at1, at2;  // original vertex -> planarization vertex
};

// Structural checks shared by both instance kinds; returns the vertex map.
DrawingIndex check_structure(const JointDrawing& d, const WeightedMultigraph& g1, const WeightedMultigraph& g2) {
  const auto& P = d.graph;
  const std::size_t n = P.vertex_count(), m = P.edge_count();
  if (d.vertex_side.size() != n || d.vertex_origin.size() != n || d.edge_side.size() != m || d.edge_origin.size() != m) {
    infeasible("annotation sizes do not match the planarization");
  }
  validate_rotation(P, d.rotation);
  DrawingIndex idx;
  idx.at1.assign(g1.vertex_count(), npos);
  idx.at2.assign(g2.vertex_count(), npos);
  for (VertexIndex v = 0; v < n; ++v) {
    int side = d.vertex_side[v];
    if (side == 0) continue;
    auto& at = side == 1 ? idx.at1 : idx.at2;
    if (d.vertex_origin[v] >= at.size() || at[d.vertex_origin[v]] != npos) infeasible("original vertex repeated");
    at[d.vertex_origin[v]] = v;
    for (EdgeIndex s : P.incident(v)) {
      if (d.edge_side[s] != side) infeasible("vertex touches an edge of the other graph");
    }
  }
  for (auto* at : {&idx.at1, &idx.at2}) {
    if (std::count(at->begin(), at->end(), npos) != 0) infeasible("original vertex missing");
  }
  for (VertexIndex v = 0; v < n; ++v) {
    if (d.vertex_side[v] != 0) continue;
    const auto& rot = d.rotation.order[v];
    if (rot.size() != 4 || d.vertex_origin[v] >= d.crossings.size()) infeasible("crossing vertex without degree 4");
    auto [e1, e2] = d.crossings[d.vertex_origin[v]];
    for (int j = 0; j < 4; ++j) {
      int want = j % 2 == 0 ? d.edge_side[rot[0]] : 3 - d.edge_side[rot[0]];
      if (d.edge_side[rot[j]] != want) infeasible("strands do not alternate at a crossing");
      if (d.edge_origin[rot[j]] != d.edge_origin[rot[(j + 2) % 4]]) infeasible("strand changes edge at a crossing");
    }
    EdgeIndex o1 = d.edge_side[rot[0]] == 1 ? d.edge_origin[rot[0]] : d.edge_origin[rot[1]];
    EdgeIndex o2 = d.edge_side[rot[0]] == 2 ? d.edge_origin[rot[0]] : d.edge_origin[rot[1]];
    if (o1 != e1 || o2 != e2) infeasible("crossing record does not match its strands");
  }
  // Every original edge is one chain of segments between its endpoints.
  std::vector<bool> used(m, false);
  for (int side = 1; side <= 2; ++side) {
    const auto& g = side == 1 ? g1 : g2;
    const auto& at = side == 1 ? idx.at1 : idx.at2;
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
      VertexIndex cur = at[g.edge(e).u];
      EdgeIndex seg = npos;
      for (EdgeIndex s : P.incident(cur)) {
        if (d.edge_side[s] == side && d.edge_origin[s] == e && !used[s]) {
          seg = s;
          break;
        }
      }
      if (seg == npos) infeasible("edge '" + g.edge(e).id + "' has no segment at its endpoint");
      while (true) {
        if (used[seg]) infeasible("segment reused");
        used[seg] = true;
        cur = P.edge(seg).other(cur);
        if (d.vertex_side[cur] != 0) break;
        const auto& rot = d.rotation.order[cur];
        auto it = std::find(rot.begin(), rot.end(), seg);
        seg = rot[(it - rot.begin() + 2) % 4];
      }
      if (cur != at[g.edge(e).v]) infeasible("edge '" + g.edge(e).id + "' ends at the wrong vertex");
    }
  }
  if (std::count(used.begin(), used.end(), false) != 0) infeasible("stray segment");
  return idx;
}

Weight crossing_sum(const JointDrawing& d, const WeightedMultigraph& g1, const WeightedMultigraph& g2) {
  Weight sum = 0;
  for (auto [e1, e2] : d.crossings) sum += g1.edge(e1).weight * g2.edge(e2).weight;
  return sum;
}

// The G1 face (as a sequence of original G1 vertices) that contains each
// planarization face.
struct G1FaceMap {
  WeightedMultigraph sub;                      // the planarization restricted to G1 segments
  std::vector<Face> g1_faces;                  // faces of `sub`
  std::vector<std::size_t> region_of_face;     // planarization face -> g1 face
  std::vector<std::size_t> face_of_dart;       // planarization darts
};

G1FaceMap map_g1_faces(const JointDrawing& d) {
  const auto& P = d.graph;
  auto faces = trace_faces(P, d.rotation);
  G1FaceMap out;
  out.face_of_dart = face_index_of_darts(P, faces);

  auto& sub = out.sub;
  for (const auto& name : P.vertex_names()) sub.add_vertex(name);
  std::vector<EdgeIndex> to_sub(P.edge_count(), npos);
  for (EdgeIndex e = 0; e < P.edge_count(); ++e) {
    if (d.edge_side[e] == 1) to_sub[e] = sub.add_edge(P.edge(e).id, P.edge(e).u, P.edge(e).v, P.edge(e).weight);
  }
  RotationSystem srs;
  srs.order.resize(P.vertex_count());
  for (VertexIndex v = 0; v < P.vertex_count(); ++v) {
    for (EdgeIndex e : d.rotation.order[v]) {
      if (to_sub[e] != npos) srs.order[v].push_back(to_sub[e]);
    }
  }
  out.g1_faces = trace_faces(sub, srs);
  auto sub_face_of_dart = face_index_of_darts(sub, out.g1_faces);

  UnionFind uf(faces.size());
  for (EdgeIndex e = 0; e < P.edge_count(); ++e) {
    if (d.edge_side[e] == 2) {
      uf.unite(out.face_of_dart[dart_code({e, true})], out.face_of_dart[dart_code({e, false})]);
    }
  }
  std::vector<std::size_t> region(faces.size(), npos);
  for (std::size_t f = 0; f < faces.size(); ++f) {
    for (Dart dt : faces[f].walk) {
      if (d.edge_side[dt.edge] != 1) continue;
      std::size_t r = sub_face_of_dart[dart_code({to_sub[dt.edge], dt.forward})];
      std::size_t& slot = region[uf.find(f)];
      if (slot == npos) slot = r;
      if (slot != r) infeasible("a G2 region touches two G1 faces without crossing");
    }
  }
  out.region_of_face.resize(faces.size());
  for (std::size_t f = 0; f < faces.size(); ++f) {
    out.region_of_face[f] = region[uf.find(f)];
    if (out.region_of_face[f] == npos) infeasible("face not bounded by G1");
  }
  return out;
}

}  // namespace

Weight witness_count(const FaJointInstance& inst, const JointDrawing& d) {
  auto idx = check_structure(d, inst.g1, inst.g2);
  if (!is_connected(d.graph)) infeasible("planarization is disconnected");
  if (euler_genus(d.graph, d.rotation) != 0) infeasible("planarization is not plane");
  auto map = map_g1_faces(d);
  for (const auto& a : inst.anchors) {
    VertexIndex v = idx.at2[a.anchor];
    if (d.graph.degree(v) == 0) infeasible("isolated anchor");
    EdgeIndex s = d.graph.incident(v)[0];
    Dart out_dart{s, d.graph.edge(s).u == v};
    const Face& region = map.g1_faces[map.region_of_face[map.face_of_dart[dart_code(out_dart)]]];
    std::vector<VertexIndex> boundary;
    for (VertexIndex w : region.vertices(map.sub)) {
      if (d.vertex_side[w] == 1) boundary.push_back(d.vertex_origin[w]);
    }
    if (!same_cyclic_sequence(boundary, a.cycle, true)) {
      infeasible("anchor '" + inst.g2.vertex_name(a.anchor) + "' is not in a face bounded by its cycle");
    }
  }
  return crossing_sum(d, inst.g1, inst.g2);
}

Weight witness_count(const SurfaceJointInstance& inst, const JointDrawing& d) {
  check_structure(d, inst.h1, inst.h2);
  if (!is_connected(d.graph)) infeasible("planarization is disconnected");
  if (euler_genus(d.graph, d.rotation) > inst.genus) infeasible("planarization does not fit the surface");
  return crossing_sum(d, inst.h1, inst.h2);
}

// ---------------------------------------------------------------------------
// Dual edge-width on the torus

std::size_t dual_edge_width_torus(const WeightedMultigraph& g, const RotationSystem& rs) {
  if (euler_genus(g, rs) != 1) throw InstanceError("dual_edge_width_torus needs an embedding of genus 1");
  auto faces = trace_faces(g, rs);
  auto face_of = face_index_of_darts(g, faces);
  const std::size_t n = g.vertex_count(), m = g.edge_count();

  // Tree-cotree split: BFS tree, then a dual spanning tree on the rest; the
  // two leftover edges close the homology basis.
  std::vector<EdgeIndex> parent_edge(n, npos);
  std::vector<std::size_t> depth(n, 0);
  std::vector<bool> in_tree(m, false), seen(n, false);
  std::deque<VertexIndex> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    VertexIndex v = queue.front();
    queue.pop_front();
    for (EdgeIndex e : g.incident(v)) {
      VertexIndex w = g.edge(e).other(v);
      if (seen[w]) continue;
      seen[w] = true;
      in_tree[e] = true;
      parent_edge[w] = e;
      depth[w] = depth[v] + 1;
      queue.push_back(w);
    }
  }
  UnionFind dual(faces.size());
  std::vector<EdgeIndex> leftover;
  for (EdgeIndex e = 0; e < m; ++e) {
    if (in_tree[e]) continue;
    std::size_t a = face_of[dart_code({e, true})], b = face_of[dart_code({e, false})];
    if (dual.find(a) != dual.find(b)) {
      dual.unite(a, b);
    } else {
      leftover.push_back(e);
    }
  }
  if (leftover.size() != 2) throw InstanceError("internal: tree-cotree left " + std::to_string(leftover.size()) + " edges");

  // signature bit j of edge e: e lies on the fundamental cycle of leftover[j].
  std::vector<unsigned> signature(m, 0);
  for (std::size_t j = 0; j < leftover.size(); ++j) {
    EdgeIndex x = leftover[j];
    signature[x] |= 1u << j;
    VertexIndex a = g.edge(x).u, b = g.edge(x).v;
    while (a != b) {
      if (depth[a] < depth[b]) std::swap(a, b);
      EdgeIndex pe = parent_edge[a];
      signature[pe] ^= 1u << j;
      a = g.edge(pe).other(a);
    }
  }
  // Shortest closed dual walk with nonzero total signature.
  std::size_t best = npos;
  const std::size_t F = faces.size();
  for (std::size_t start = 0; start < F; ++start) {
    std::vector<std::size_t> dist(F * 4, npos);
    std::deque<std::size_t> bfs{start * 4};
    dist[start * 4] = 0;
    while (!bfs.empty()) {
      std::size_t state = bfs.front();
      bfs.pop_front();
      std::size_t f = state / 4;
      unsigned mask = state % 4;
      if (dist[state] + 1 >= best) break;
      for (Dart dt : faces[f].walk) {
        std::size_t other = face_of[dart_code(reversed(dt))];
        std::size_t next = other * 4 + (mask ^ signature[dt.edge]);
        if (dist[next] != npos) continue;
        dist[next] = dist[state] + 1;
        bfs.push_back(next);
      }
    }
    for (unsigned mask = 1; mask < 4; ++mask) best = std::min(best, dist[start * 4 + mask]);
  }
  return best;
}

// ---------------------------------------------------------------------------
// Exhaustive face-anchored solver

// Every plane rotation system of a connected graph, each exactly once.
// Edges are inserted one at a time into cyclic orders that start empty. An
// edge to a new vertex may take any corner of its old end; an edge between
// two present vertices must join two corners of the same face, which is
// exactly when the result stays plane. Edges that close a cycle are
// preferred, and new vertices are reached depth first, so that few
// unconstrained choices pile up before faces pin them down.
std::vector<RotationSystem> plane_rotation_systems(const WeightedMultigraph& g) {
  const std::size_t n = g.vertex_count(), m = g.edge_count();
  std::vector<RotationSystem> out;
  if (m == 0) {
    out.push_back(RotationSystem{std::vector<std::vector<EdgeIndex>>(n)});
    return out;
  }
  // Static insertion order.
  std::vector<EdgeIndex> sequence;
  {
    std::vector<char> present(n, 0), used(m, 0);
    std::vector<VertexIndex> stack;
    present[g.edge(0).u] = 1;
    stack.push_back(g.edge(0).u);
    while (sequence.size() < m) {
      bool closed = false;
      for (EdgeIndex e = 0; e < m; ++e) {
        if (!used[e] && present[g.edge(e).u] && present[g.edge(e).v]) {
          used[e] = 1;
          sequence.push_back(e);
          closed = true;
        }
      }
      if (closed) continue;
      EdgeIndex step = npos;
      while (step == npos && !stack.empty()) {
        for (EdgeIndex e : g.incident(stack.back())) {
          if (!used[e]) {
            step = e;
            break;
          }
        }
        if (step == npos) stack.pop_back();
      }
      if (step == npos) throw InstanceError("plane_rotations: graph is not connected");
      used[step] = 1;
      sequence.push_back(step);
      VertexIndex fresh = present[g.edge(step).u] ? g.edge(step).v : g.edge(step).u;
      present[fresh] = 1;
      stack.push_back(fresh);
    }
  }

  std::vector<std::vector<EdgeIndex>> rot(n);
  // Face of every corner (v, i): the corner after rot[v][i].
  auto corner_faces = [&]() {
    std::vector<std::vector<std::size_t>> face(n);
    for (VertexIndex v = 0; v < n; ++v) face[v].assign(rot[v].size(), npos);
    auto position = [&](VertexIndex v, EdgeIndex e) {
      return static_cast<std::size_t>(std::find(rot[v].begin(), rot[v].end(), e) - rot[v].begin());
    };
    std::size_t next_id = 0;
    for (VertexIndex v = 0; v < n; ++v) {
      for (std::size_t i = 0; i < rot[v].size(); ++i) {
        if (face[v][i] != npos) continue;
        // Walk: arrive at v along rot[v][i], leave along rot[v][i + 1].
        VertexIndex at = v;
        std::size_t pos = i;
        while (face[at][pos] == npos) {
          face[at][pos] = next_id;
          EdgeIndex leave = rot[at][(pos + 1) % rot[at].size()];
          VertexIndex to = g.edge(leave).other(at);
          pos = position(to, leave);
          at = to;
        }
        ++next_id;
      }
    }
    return face;
  };
  auto insert_at = [&](VertexIndex v, std::size_t slot, EdgeIndex e) {
    rot[v].insert(rot[v].begin() + static_cast<std::ptrdiff_t>(rot[v].empty() ? 0 : slot + 1), e);
  };
  auto remove_from = [&](VertexIndex v, EdgeIndex e) { rot[v].erase(std::find(rot[v].begin(), rot[v].end(), e)); };
  // Slots worth trying at v: a single one while the cyclic order has at most
  // one entry, since every position gives the same cyclic order.
  auto slots = [&](VertexIndex v) { return rot[v].size() <= 1 ? std::size_t{1} : rot[v].size(); };

  std::function<void(std::size_t)> rec = [&](std::size_t at) {
    if (at == m) {
      out.push_back(RotationSystem{rot});
      return;
    }
    const EdgeIndex e = sequence[at];
    const VertexIndex u = g.edge(e).u, v = g.edge(e).v;
    const bool u_in = !rot[u].empty() || at == 0, v_in = !rot[v].empty();
    if (at == 0 || !(u_in && v_in)) {
      const VertexIndex old = at == 0 ? u : (u_in ? u : v);
      const VertexIndex fresh = g.edge(e).other(old);
      for (std::size_t i = 0; i < slots(old); ++i) {
        insert_at(old, i, e);
        rot[fresh].push_back(e);
        rec(at + 1);
        rot[fresh].pop_back();
        remove_from(old, e);
      }
      return;
    }
    const auto face = corner_faces();
    for (std::size_t i = 0; i < slots(u); ++i) {
      for (std::size_t j = 0; j < slots(v); ++j) {
        if (face[u][i % face[u].size()] != face[v][j % face[v].size()]) continue;
        insert_at(u, i, e);
        insert_at(v, j, e);
        rec(at + 1);
        remove_from(v, e);
        remove_from(u, e);
      }
    }
  };
  rec(0);
  return out;
}

namespace {

bool face_bounded_by(const WeightedMultigraph& g, const Face& f, const std::vector<VertexIndex>& cycle) {
  return same_cyclic_sequence(f.vertices(g), cycle, true);
}

struct Crossing {
  EdgeIndex e1, e2;
  bool left_to_right;  // seen along e1
};

class Solver {
 public:
  Solver(const FaJointInstance& inst, const OracleOptions& options) : inst_(inst), options_(options) {}

  OracleResult run(const Weight& max_crossings) {
    auto start = std::chrono::steady_clock::now();
    OracleResult result;
    embeddings_ = plane_rotation_systems(inst_.g1);
    // The drawing restricted to G2 is itself plane.
    embeddings2_ = plane_rotation_systems(inst_.g2);
    for (Weight c = 0; c <= max_crossings && !found_; ++c) {
      level_ = c;
      for (const auto& rs : embeddings_) {
        if (c == 0 ? try_zero(rs) : try_level(rs)) break;
      }
    }
    if (found_) result.value = level_;
    result.patterns_examined = examined_;
    result.drawing = best_;
    result.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return result;
  }

 private:
  const FaJointInstance& inst_;
  OracleOptions options_;
  std::vector<RotationSystem> embeddings_;
  std::vector<RotationSystem> embeddings2_;
  Weight level_ = 0;
  bool found_ = false;
  std::uint64_t examined_ = 0;
  std::optional<JointDrawing> best_;

  // Current G1 embedding.
  const RotationSystem* rs1_ = nullptr;
  std::vector<Face> faces_;
  std::vector<std::size_t> face_of_;
  std::vector<std::size_t> vertex_face_;
  std::vector<std::vector<Dart>> walks_;
  std::map<std::pair<EdgeIndex, EdgeIndex>, int> multiplicity_;
  std::vector<std::vector<Weight>> dist_;
  std::vector<Weight> rest_bound_;  // sum of edge_bound over edges f.. onwards

  bool try_zero(const RotationSystem& rs) {
    ++examined_;
    auto faces = trace_faces(inst_.g1, rs);
    for (const auto& f : faces) {
      bool all = std::all_of(inst_.anchors.begin(), inst_.anchors.end(),
                             [&](const FaceAnchor& a) { return face_bounded_by(inst_.g1, f, a.cycle); });
      if (all) {
        found_ = true;
        return true;
      }
    }
    return false;
  }

  bool try_level(const RotationSystem& rs) {
    if (inst_.g2.edge_count() == 0) return false;
    rs1_ = &rs;
    faces_ = trace_faces(inst_.g1, rs);
    face_of_ = face_index_of_darts(inst_.g1, faces_);
    vertex_face_.assign(inst_.g2.vertex_count(), npos);
    dual_distances();
    return assign_faces(0, 0);
  }

  // Cheapest weighted dual path between every two faces: a lower bound on
  // the cost of a unit-weight G2 edge joining them.
  void dual_distances() {
    const std::size_t F = faces_.size();
    dist_.assign(F, std::vector<Weight>(F, -1));
    for (std::size_t s = 0; s < F; ++s) {
      auto& d = dist_[s];
      std::vector<char> done(F, 0);
      d[s] = 0;
      for (;;) {
        std::size_t best = npos;
        for (std::size_t f = 0; f < F; ++f) {
          if (!done[f] && d[f] >= 0 && (best == npos || d[f] < d[best])) best = f;
        }
        if (best == npos) break;
        done[best] = 1;
        for (Dart dt : faces_[best].walk) {
          std::size_t o = face_of_[dart_code(reversed(dt))];
          Weight c = d[best] + inst_.g1.edge(dt.edge).weight;
          if (d[o] < 0 || c < d[o]) d[o] = c;
        }
      }
    }
  }

  Weight edge_bound(EdgeIndex f) const {
    const Edge& e = inst_.g2.edge(f);
    return e.weight * dist_[vertex_face_[e.u]][vertex_face_[e.v]];
  }

  std::vector<std::size_t> allowed_faces(VertexIndex v) const {
    std::vector<std::size_t> out;
    const FaceAnchor* anchor = nullptr;
    for (const auto& a : inst_.anchors) {
      if (a.anchor == v) anchor = &a;
    }
    for (std::size_t f = 0; f < faces_.size(); ++f) {
      if (!anchor || face_bounded_by(inst_.g1, faces_[f], anchor->cycle)) out.push_back(f);
    }
    return out;
  }

  // `bound`: least cost of the G2 edges whose ends are both placed.
  bool assign_faces(VertexIndex v, const Weight& bound) {
    const auto& g2 = inst_.g2;
    if (v == g2.vertex_count()) {
      walks_.assign(g2.edge_count(), {});
      multiplicity_.clear();
      rest_bound_.assign(g2.edge_count() + 1, 0);
      for (EdgeIndex f = g2.edge_count(); f-- > 0;) rest_bound_[f] = rest_bound_[f + 1] + edge_bound(f);
      return route(0, level_);
    }
    for (std::size_t f : allowed_faces(v)) {
      vertex_face_[v] = f;
      Weight b = bound;
      for (EdgeIndex e : g2.incident(v)) {
        if (g2.edge(e).other(v) <= v) b += edge_bound(e);
      }
      if (b <= level_ && assign_faces(v + 1, b)) return true;
    }
    vertex_face_[v] = npos;
    return false;
  }

  // Dual walks for G2 edge `f` onwards, spending exactly `budget` in total.
  bool route(EdgeIndex f, const Weight& budget) {
    if (f == inst_.g2.edge_count()) return budget == 0 && realize();
    const Edge& e2 = inst_.g2.edge(f);
    return extend(f, vertex_face_[e2.u], vertex_face_[e2.v], budget);
  }

  bool extend(EdgeIndex f, std::size_t cur, std::size_t target, const Weight& budget) {
    const Weight& w2 = inst_.g2.edge(f).weight;
    if (w2 * dist_[cur][target] + rest_bound_[f + 1] > budget) return false;
    if (cur == target && route(f + 1, budget)) return true;
    for (Dart d : faces_[cur].walk) {
      Weight cost = inst_.g1.edge(d.edge).weight * w2;
      if (cost > budget) continue;
      int& mult = multiplicity_[{f, d.edge}];
      if (mult >= options_.multiplicity_cap) continue;
      ++mult;
      walks_[f].push_back(d);
      bool ok = extend(f, face_of_[dart_code(reversed(d))], target, budget - cost);
      walks_[f].pop_back();
      --mult;
      if (ok) return true;
    }
    return false;
  }

  // Orders of crossings along G1 edges and rotations at G2 vertices.
  bool realize() {
    const auto& g1 = inst_.g1;
    const auto& g2 = inst_.g2;
    std::vector<Crossing> crossings;
    std::vector<std::vector<std::size_t>> along2(g2.edge_count());
    std::vector<std::vector<std::size_t>> along1(g1.edge_count());
    for (EdgeIndex f = 0; f < g2.edge_count(); ++f) {
      for (Dart d : walks_[f]) {
        along2[f].push_back(crossings.size());
        along1[d.edge].push_back(crossings.size());
        // the walk leaves the face on the right of d
        crossings.push_back({d.edge, f, !d.forward});
      }
    }
    return permute_g1(0, crossings, along1, along2);
  }

  bool permute_g1(EdgeIndex e, const std::vector<Crossing>& crossings, std::vector<std::vector<std::size_t>>& along1,
                  const std::vector<std::vector<std::size_t>>& along2) {
    if (e == along1.size()) {
      return std::any_of(embeddings2_.begin(), embeddings2_.end(),
                         [&](const RotationSystem& rs2) { return check(crossings, along1, along2, rs2.order); });
    }
    auto& list = along1[e];
    std::sort(list.begin(), list.end());
    do {
      if (permute_g1(e + 1, crossings, along1, along2)) return true;
    } while (std::next_permutation(list.begin(), list.end()));
    return false;
  }

  bool check(const std::vector<Crossing>& crossings, const std::vector<std::vector<std::size_t>>& along1,
             const std::vector<std::vector<std::size_t>>& along2, const std::vector<std::vector<EdgeIndex>>& rot2) {
    ++examined_;
    const auto& g1 = inst_.g1;
    const auto& g2 = inst_.g2;
    JointDrawing d;
    auto& P = d.graph;
    std::vector<VertexIndex> at1(g1.vertex_count()), at2(g2.vertex_count()), xv(crossings.size());
    for (VertexIndex v = 0; v < g1.vertex_count(); ++v) {
      at1[v] = P.add_vertex("1:" + g1.vertex_name(v));
      d.vertex_side.push_back(1);
      d.vertex_origin.push_back(v);
    }
    for (VertexIndex v = 0; v < g2.vertex_count(); ++v) {
      at2[v] = P.add_vertex("2:" + g2.vertex_name(v));
      d.vertex_side.push_back(2);
      d.vertex_origin.push_back(v);
    }
    for (std::size_t i = 0; i < crossings.size(); ++i) {
      xv[i] = P.add_vertex("x" + std::to_string(i));
      d.vertex_side.push_back(0);
      d.vertex_origin.push_back(i);
      d.crossings.push_back({crossings[i].e1, crossings[i].e2});
    }
    // back/forward segment of each crossing on each strand
    std::vector<EdgeIndex> back1(crossings.size()), fwd1(crossings.size()), back2(crossings.size()), fwd2(crossings.size());
    std::vector<EdgeIndex> first1(g1.edge_count()), last1(g1.edge_count()), first2(g2.edge_count()), last2(g2.edge_count());
    auto chain = [&](int side, const Edge& edge, EdgeIndex origin, const std::vector<VertexIndex>& at,
                     const std::vector<std::size_t>& stops, std::vector<EdgeIndex>& back, std::vector<EdgeIndex>& fwd,
                     EdgeIndex& first, EdgeIndex& last) {
      VertexIndex prev = at[edge.u];
      for (std::size_t j = 0; j <= stops.size(); ++j) {
        VertexIndex next = j < stops.size() ? xv[stops[j]] : at[edge.v];
        EdgeIndex s = P.add_edge(std::to_string(side) + ":" + edge.id + "#" + std::to_string(j), prev, next, edge.weight);
        d.edge_side.push_back(side);
        d.edge_origin.push_back(origin);
        if (j == 0) first = s;
        if (j == stops.size()) last = s;
        if (j > 0) fwd[stops[j - 1]] = s;
        if (j < stops.size()) back[stops[j]] = s;
        prev = next;
      }
    };
    for (EdgeIndex e = 0; e < g1.edge_count(); ++e) chain(1, g1.edge(e), e, at1, along1[e], back1, fwd1, first1[e], last1[e]);
    for (EdgeIndex f = 0; f < g2.edge_count(); ++f) chain(2, g2.edge(f), f, at2, along2[f], back2, fwd2, first2[f], last2[f]);
    d.rotation.order.resize(P.vertex_count());
    for (VertexIndex v = 0; v < g1.vertex_count(); ++v) {
      for (EdgeIndex e : rs1_->order[v]) d.rotation.order[at1[v]].push_back(g1.edge(e).u == v ? first1[e] : last1[e]);
    }
    for (VertexIndex v = 0; v < g2.vertex_count(); ++v) {
      for (EdgeIndex f : rot2[v]) d.rotation.order[at2[v]].push_back(g2.edge(f).u == v ? first2[f] : last2[f]);
    }
    for (std::size_t i = 0; i < crossings.size(); ++i) {
      auto& rot = d.rotation.order[xv[i]];
      if (crossings[i].left_to_right) {
        rot = {fwd1[i], back2[i], back1[i], fwd2[i]};
      } else {
        rot = {fwd1[i], fwd2[i], back1[i], back2[i]};
      }
    }
    if (euler_genus(P, d.rotation) != 0) return false;
    try {
      witness_count(inst_, d);
    } catch (const InstanceError&) {
      return false;
    }
    found_ = true;
    best_ = std::move(d);
    return true;
  }
};

}  // namespace

OracleResult fa_joint_planar_oracle(const FaJointInstance& inst, const Weight& max_crossings, const OracleOptions& options) {
  validate(inst);
  if (!is_connected(inst.g1) || !is_connected(inst.g2)) throw InstanceError("oracle needs connected graphs");
  if (inst.g1.edge_count() * inst.g2.edge_count() > options.max_edge_product) {
    throw InstanceError("instance too large for the oracle: |E1|*|E2| = " +
                        std::to_string(inst.g1.edge_count() * inst.g2.edge_count()) + " exceeds " +
                        std::to_string(options.max_edge_product));
  }
  Solver solver(inst, options);
  return solver.run(max_crossings);
}

std::string oracle_report_line(const FaJointInstance& inst, const OracleResult& result) {
  std::ostringstream out;
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(instance_hash(Instance{inst})));
  out << "oracle " << hash << ' ' << (result.value ? to_decimal(*result.value) : std::string("EXCEEDS")) << ' '
      << result.patterns_examined << ' ' << static_cast<long long>(result.elapsed_ms);
  return out.str();
}

}  // namespace jcn
