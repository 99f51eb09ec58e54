// Acceptance run: one PASS/FAIL line per criterion with its runtime.
// Expected values come from oracles written here, independent of the
// library code under test (closed forms, defining sums, own face tracing,
// brute-force connectivity, Euler-bound nonplanarity, exhaustive search).

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <deque>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "jcn/flow.hpp"
#include "jcn/gadgets.hpp"
#include "jcn/oracle.hpp"
#include "jcn/planarity.hpp"
#include "jcn/reductions.hpp"

using namespace jcn;

namespace {

// ---------------------------------------------------------------------------
// Reporting

struct Tally {
  std::size_t checks = 0;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures.size() < 8) failures.push_back(what);
    if (!ok && failures.size() == 8) failures.push_back("...");
  }
};

struct Criterion {
  int id;
  std::string title;
  double limit_s;
  std::function<std::string(Tally&)> body;  // returns a short note
};

std::string str(const Weight& w) { return to_decimal(w); }

// ---------------------------------------------------------------------------
// Independent graph oracles

WeightedMultigraph graph_of(const std::vector<std::string>& names, const std::vector<std::pair<int, int>>& pairs,
                            const std::vector<int>& weights = {}) {
  WeightedMultigraph g;
  for (const auto& n : names) g.add_vertex(n);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    g.add_edge("e" + std::to_string(i), pairs[i].first, pairs[i].second, weights.empty() ? 1 : weights[i]);
  }
  return g;
}

std::vector<VertexIndex> ids(const WeightedMultigraph& g, const std::vector<std::string>& names) {
  std::vector<VertexIndex> out;
  for (const auto& n : names) out.push_back(g.vertex(n));
  return out;
}

// Face count by walking darts: arrive along e at v, leave along the
// successor of e in v's cyclic order.
std::size_t own_face_count(const WeightedMultigraph& g, const RotationSystem& rs) {
  const std::size_t m = g.edge_count();
  std::vector<std::vector<std::size_t>> pos(g.vertex_count());
  std::vector<std::size_t> at_u(m), at_v(m);
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    for (std::size_t i = 0; i < rs.order[v].size(); ++i) {
      EdgeIndex e = rs.order[v][i];
      (g.edge(e).u == v ? at_u : at_v)[e] = i;
    }
  }
  std::vector<char> seen(2 * m, 0);  // 2e: u->v, 2e+1: v->u
  std::size_t faces = 0;
  for (std::size_t s = 0; s < 2 * m; ++s) {
    if (seen[s]) continue;
    ++faces;
    std::size_t d = s;
    while (!seen[d]) {
      seen[d] = 1;
      EdgeIndex e = d / 2;
      VertexIndex h = d % 2 == 0 ? g.edge(e).v : g.edge(e).u;
      std::size_t i = d % 2 == 0 ? at_v[e] : at_u[e];
      EdgeIndex next = rs.order[h][(i + 1) % rs.order[h].size()];
      d = 2 * next + (g.edge(next).u == h ? 0 : 1);
    }
  }
  return faces;
}

// Orientable genus of a connected embedded graph from Euler's formula.
long own_genus(const WeightedMultigraph& g, const RotationSystem& rs) {
  long chi = static_cast<long>(g.vertex_count()) - static_cast<long>(g.edge_count()) +
             static_cast<long>(own_face_count(g, rs));
  return (2 - chi) / 2;
}

std::vector<std::vector<VertexIndex>> adjacency(const WeightedMultigraph& g) {
  std::vector<std::vector<VertexIndex>> adj(g.vertex_count());
  for (const auto& e : g.edges()) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  return adj;
}

bool own_simple(const WeightedMultigraph& g) {
  std::set<std::pair<VertexIndex, VertexIndex>> seen;
  for (const auto& e : g.edges()) {
    if (e.u == e.v || !seen.insert({std::min(e.u, e.v), std::max(e.u, e.v)}).second) return false;
  }
  return true;
}

bool connected_without(const std::vector<std::vector<VertexIndex>>& adj, VertexIndex a, VertexIndex b) {
  const std::size_t n = adj.size();
  VertexIndex start = npos;
  std::size_t alive = 0;
  for (VertexIndex v = 0; v < n; ++v) {
    if (v == a || v == b) continue;
    ++alive;
    if (start == npos) start = v;
  }
  if (alive == 0) return true;
  std::vector<char> seen(n, 0);
  seen[start] = 1;
  std::deque<VertexIndex> q{start};
  std::size_t reached = 1;
  while (!q.empty()) {
    VertexIndex v = q.front();
    q.pop_front();
    for (VertexIndex w : adj[v]) {
      if (!seen[w] && w != a && w != b) {
        seen[w] = 1;
        ++reached;
        q.push_back(w);
      }
    }
  }
  return reached == alive;
}

// Removes every set of at most two vertices. Quadratic in n times a BFS.
bool brute_three_connected(const WeightedMultigraph& g) {
  const auto adj = adjacency(g);
  if (g.vertex_count() < 4 || !connected_without(adj, npos, npos)) return false;
  for (VertexIndex a = 0; a < g.vertex_count(); ++a) {
    for (VertexIndex b = a; b < g.vertex_count(); ++b) {
      if (!connected_without(adj, a, b == a ? npos : b)) return false;
    }
  }
  return true;
}

// Iterative low-point search for a cut vertex of g - skip.
bool has_cut_vertex(const std::vector<std::vector<VertexIndex>>& adj, VertexIndex skip) {
  const std::size_t n = adj.size();
  std::vector<std::size_t> disc(n, 0), low(n, 0), it(n, 0);
  std::vector<VertexIndex> parent(n, npos);
  std::size_t timer = 0;
  VertexIndex root = skip == 0 ? 1 : 0;
  std::vector<VertexIndex> stack{root};
  disc[root] = low[root] = ++timer;
  std::size_t root_children = 0;
  while (!stack.empty()) {
    VertexIndex v = stack.back();
    if (it[v] < adj[v].size()) {
      VertexIndex w = adj[v][it[v]++];
      if (w == skip) continue;
      if (disc[w] == 0) {
        parent[w] = v;
        disc[w] = low[w] = ++timer;
        if (v == root) ++root_children;
        stack.push_back(w);
      } else if (w != parent[v]) {
        low[v] = std::min(low[v], disc[w]);
      }
    } else {
      stack.pop_back();
      VertexIndex p = parent[v];
      if (p != npos) {
        low[p] = std::min(low[p], low[v]);
        if (p != root && low[v] >= disc[p]) return true;
      }
    }
  }
  for (VertexIndex v = 0; v < n; ++v) {
    if (v != skip && disc[v] == 0) return true;  // disconnected
  }
  return root_children > 1;
}

// 3-connected iff connected, no cut vertex, and no cut vertex after deleting
// any single vertex. Works for simple graphs of a few thousand vertices.
bool lowpoint_three_connected(const WeightedMultigraph& g) {
  if (g.vertex_count() < 4) return false;
  const auto adj = adjacency(g);
  if (has_cut_vertex(adj, npos)) return false;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (has_cut_vertex(adj, v)) return false;
  }
  return true;
}

bool own_three_connected(const WeightedMultigraph& g) {
  return g.vertex_count() <= 120 ? brute_three_connected(g) : lowpoint_three_connected(g);
}

bool triangle_free(const WeightedMultigraph& g) {
  auto adj = adjacency(g);
  for (auto& a : adj) std::sort(a.begin(), a.end());
  for (const auto& e : g.edges()) {
    std::vector<VertexIndex> common;
    std::set_intersection(adj[e.u].begin(), adj[e.u].end(), adj[e.v].begin(), adj[e.v].end(),
                          std::back_inserter(common));
    if (!common.empty()) return false;
  }
  return true;
}

bool own_connected(const WeightedMultigraph& g) { return connected_without(adjacency(g), npos, npos); }

// Simple, connected, triangle-free and more than 2V - 4 edges: no plane
// embedding exists, since every face would need four sides.
bool euler_nonplanar(const WeightedMultigraph& g) {
  return own_simple(g) && own_connected(g) && triangle_free(g) &&
         static_cast<long>(g.edge_count()) > 2 * static_cast<long>(g.vertex_count()) - 4;
}

// Dual BFS distance between the faces bounded by two vertex cycles, on the
// own face walk.
std::size_t dual_distance(const WeightedMultigraph& g, const RotationSystem& rs, const std::vector<VertexIndex>& a,
                          const std::vector<VertexIndex>& b) {
  auto faces = trace_faces(g, rs);
  auto face_of = face_index_of_darts(g, faces);
  std::size_t fa = find_face_with_cycle(g, faces, a), fb = find_face_with_cycle(g, faces, b);
  std::vector<std::size_t> dist(faces.size(), npos);
  std::deque<std::size_t> q{fa};
  dist[fa] = 0;
  while (!q.empty()) {
    auto f = q.front();
    q.pop_front();
    for (Dart d : faces[f].walk) {
      auto o = face_of[dart_code(reversed(d))];
      if (dist[o] == npos) {
        dist[o] = dist[f] + 1;
        q.push_back(o);
      }
    }
  }
  return dist[fb];
}

// Smallest dual cycle whose crossed edges leave the graph connected, by
// listing simple dual cycles of increasing length.
std::size_t exhaustive_edge_width(const WeightedMultigraph& g, const RotationSystem& rs, std::size_t limit) {
  auto faces = trace_faces(g, rs);
  auto face_of = face_index_of_darts(g, faces);
  auto nonseparating = [&](const std::vector<EdgeIndex>& cut) {
    WeightedMultigraph h;
    for (const auto& n : g.vertex_names()) h.add_vertex(n);
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
      if (std::find(cut.begin(), cut.end(), e) == cut.end()) h.add_edge(g.edge(e).id, g.edge(e).u, g.edge(e).v);
    }
    return own_connected(h);
  };
  for (std::size_t len = 1; len <= limit; ++len) {
    for (std::size_t s = 0; s < faces.size(); ++s) {
      std::vector<EdgeIndex> used;
      std::vector<bool> on_path(faces.size(), false);
      bool hit = false;
      std::function<void(std::size_t)> dfs = [&](std::size_t f) {
        if (hit) return;
        for (Dart d : faces[f].walk) {
          if (std::find(used.begin(), used.end(), d.edge) != used.end()) continue;
          std::size_t o = face_of[dart_code(reversed(d))];
          used.push_back(d.edge);
          if (o == s && used.size() == len) {
            if (nonseparating(used)) hit = true;
          } else if (o > s && !on_path[o] && used.size() < len) {
            on_path[o] = true;
            dfs(o);
            on_path[o] = false;
          }
          used.pop_back();
          if (hit) return;
        }
      };
      on_path[s] = true;
      dfs(s);
      if (hit) return len;
    }
  }
  return npos;
}

Weight own_crossing_sum(const WeightedMultigraph& g1, const WeightedMultigraph& g2, const JointDrawing& d) {
  Weight sum = 0;
  for (auto [e1, e2] : d.crossings) sum += g1.edge(e1).weight * g2.edge(e2).weight;
  return sum;
}

SurfaceJointInstance plane_surface(const WeightedMultigraph& g1, const std::vector<Point>& c1, const WeightedMultigraph& g2,
                                   const std::vector<Point>& c2) {
  SurfaceJointInstance s;
  s.genus = 0;
  s.h1 = g1;
  s.h2 = g2;
  s.rotation1 = rotation_from_coordinates(g1, c1);
  s.rotation2 = rotation_from_coordinates(g2, c2);
  return s;
}

WeightedMultigraph k4(const std::vector<int>& w = {}) {
  return graph_of({"1", "2", "3", "4"}, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}, w);
}

WeightedMultigraph cube() {
  std::vector<std::string> names;
  for (int v = 0; v < 8; ++v) names.push_back(std::string{char('0' + (v >> 2 & 1)), char('0' + (v >> 1 & 1)), char('0' + (v & 1))});
  std::vector<std::pair<int, int>> pairs;
  for (int v = 0; v < 8; ++v)
    for (int b = 0; b < 3; ++b)
      if (v < (v ^ (1 << b))) pairs.push_back({v, v ^ (1 << b)});
  return graph_of(names, pairs);
}

// ---------------------------------------------------------------------------
// Criteria

std::string formulas(Tally& t) {
  auto gamma_def = [](int k) {
    Weight K = k, s = 0;
    for (int j = 1; j < k; ++j) {
      Weight J = j;
      s += 2 * K * K * K * K + K * J * J + K * J - 2 * K * K * K * J - J * J * J - J * J;
    }
    return s;
  };
  t.expect(gamma(2) == 18 && gamma_def(2) == 18, "gamma(2) = 18");
  t.expect(gamma(3) == 172 && gamma_def(3) == 172, "gamma(3) = 172");
  for (int k = 2; k <= 200; ++k) {
    Weight K = k;
    Weight num = 12 * K * K * K * K * K - 11 * K * K * K * K + 2 * K * K * K - K * K - 2 * K;
    t.expect(num % 12 == 0, "closed form divisible by 12 at k=" + std::to_string(k));
    t.expect(gamma(k) == gamma_def(k) && num / 12 == gamma_def(k), "gamma at k=" + std::to_string(k));
  }
  for (int k = 2; k <= 50; ++k) {
    Weight K = k;
    auto t_j = [&](int j) { return K * K * K + Weight(j) * (j + 1) / 2; };
    for (Weight T : {Weight(1), Weight(10), Weight(1000), Weight(1000000)}) {
      Weight beta_def = K * (K + 1) * T * T;
      for (int j = 1; j < k; ++j) beta_def += 2 * Weight(k - j) * T * t_j(j);
      t.expect(beta(k, T) == beta_def, "beta(" + std::to_string(k) + ", " + str(T) + ")");
      t.expect(beta_def == K * (K + 1) * T * T + gamma_def(k) * T, "beta closed form at k=" + std::to_string(k));
      Weight fa_def = (4 * K * K * K + K * K + K) * T * T * T + beta_def;
      Weight fa_cuts = (2 * t_j(0) + 2 * t_j(k)) * T * T * T + beta_def;
      t.expect(canonical_fa_count(k, T) == fa_def && fa_def == fa_cuts,
               "canonical count at k=" + std::to_string(k) + ", T=" + str(T));
    }
  }
  t.expect(beta(2, 10) == 780 && canonical_fa_count(2, 10) == 38780, "spot values at k=2, T=10");
  return "gamma for k <= 200, beta and canonical count for k <= 50 and four T";
}

std::string cuts(Tally& t) {
  for (int k = 2; k <= 30; ++k) {
    auto f2 = build_f2({k, 1});
    const auto& g = f2.embedded.graph;
    const Weight t0 = Weight(k) * k * k, tk = t0 + Weight(k) * (k + 1) / 2;
    for (int i = 0; i < 4; ++i) {
      std::vector<VertexIndex> rest;
      for (int j = 0; j < 4; ++j)
        if (j != i) rest.push_back(f2.anchors[j]);
      const Weight want = (i == 1 || i == 2) ? t0 : tk;
      const Weight got = min_cut_weight(g, {f2.anchors[i]}, rest);
      t.expect(got == want, "k=" + std::to_string(k) + " a" + std::to_string(i + 1) + ": " + str(got) + " vs " + str(want));
    }
  }
  return "k = 2..30, all four anchors";
}

std::string genus_suite(Tally& t) {
  for (int k = 2; k <= 10; ++k) {
    auto fa = build_fa_instance({k, 10});
    t.expect(own_genus(fa.instance.g1, *fa.instance.promise1) == 0, "F1 plane at k=" + std::to_string(k));
    t.expect(own_genus(fa.instance.g2, *fa.instance.promise2) == 0, "F2 plane at k=" + std::to_string(k));
    auto plus = mirror_join(fa);
    t.expect(own_genus(plus.instance.g1, *plus.instance.promise1) == 0, "F1+ plane at k=" + std::to_string(k));
    t.expect(own_genus(plus.instance.g2, *plus.instance.promise2) == 0, "F2+ plane at k=" + std::to_string(k));
    t.expect(euler_genus(plus.instance.g1, *plus.instance.promise1) == 0, "library agrees on F1+");
  }
  for (int p = 3; p <= 8; ++p) {
    for (int q = 3; q <= 8; ++q) {
      auto grid = toroidal_grid(p, q);
      t.expect(own_genus(grid.graph, grid.rotation) == 1, "grid " + std::to_string(p) + "x" + std::to_string(q));
    }
  }
  auto q = cube();
  auto faces = trace_faces(q, is_planar(q).witness);
  for (int h = 1; h <= 6; ++h) {
    FaJointInstance inst;
    inst.g1 = q;
    auto z = inst.g2.add_vertex("z");
    for (int i = 0; i < h; ++i) {
      auto leaf = inst.g2.add_vertex("l" + std::to_string(i));
      inst.g2.add_edge("zl" + std::to_string(i), z, leaf, i + 1);
      inst.anchors.push_back({faces[i].vertices(q), leaf});
    }
    auto s = fa_to_surface(inst);
    t.expect(s.genus == h, "declared genus " + std::to_string(h));
    t.expect(own_genus(s.h1, s.rotation1) == h, "H1 genus at h=" + std::to_string(h));
    t.expect(own_genus(s.h2, s.rotation2) == h, "H2 genus at h=" + std::to_string(h));
  }
  return "F and F+ for k <= 10, grids up to 8x8, surface outputs h = 1..6";
}

std::string edge_width(Tally& t) {
  for (int p = 3; p <= 6; ++p) {
    for (int q = 3; q <= 6; ++q) {
      auto grid = toroidal_grid(p, q);
      std::size_t w = dual_edge_width_torus(grid.graph, grid.rotation);
      std::size_t brute = exhaustive_edge_width(grid.graph, grid.rotation, 6);
      std::string tag = std::to_string(p) + "x" + std::to_string(q);
      t.expect(w == std::size_t(std::min(p, q)), "grid " + tag + " gives " + std::to_string(w));
      t.expect(brute == w, "exhaustive search disagrees on " + tag);
    }
  }
  auto gadget = torus_gadget({1, 1}, 4);
  std::size_t w = dual_edge_width_torus(gadget.embedded.graph, gadget.embedded.rotation);
  t.expect(w == 6, "torus gadget edge-width " + std::to_string(w));
  t.expect(exhaustive_edge_width(gadget.embedded.graph, gadget.embedded.rotation, 6) == 6,
           "exhaustive search on the torus gadget");
  return "grids 3..6 x 3..6 and the i=1, h=1 torus gadget, each confirmed by exhaustive dual cycles";
}

std::string ordering(Tally& t) {
  std::mt19937_64 rng(20261015);
  std::uniform_int_distribution<int> step(1, 20), start(-50, 50), len(1, 6);
  std::size_t permutations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = len(rng);
    std::vector<Weight> a(n), b(n);
    Weight x = start(rng), y = start(rng);
    for (int i = 0; i < n; ++i) {
      a[i] = x;
      b[i] = y;
      x += step(rng);
      y -= step(rng);
    }
    Weight least = -1;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) {
          Weight d = a[i] > a[j] ? a[i] - a[j] : a[j] - a[i];
          if (least < 0 || d < least) least = d;
        }
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      ++permutations;
      Weight own = 0;
      for (int i = 0; i < n; ++i) own += a[i] * b[perm[i]] - a[i] * b[i];
      Weight gap = ordering_gap(a, b, perm);
      t.expect(gap == own, "gap differs from the direct sum");
      bool identity = std::is_sorted(perm.begin(), perm.end());
      t.expect(identity ? gap == 0 : gap >= least, "ordering bound violated");
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return "1000 random pairs, " + std::to_string(permutations) + " permutations";
}

std::string oracle_suite(Tally& t) {
  auto edge_instance = [](const WeightedMultigraph& g1, const std::vector<std::string>& cu, const std::vector<std::string>& cv) {
    FaJointInstance inst;
    inst.g1 = g1;
    inst.g2.add_vertex("u");
    inst.g2.add_vertex("v");
    inst.g2.add_edge("uv", 0, 1);
    inst.anchors = {{ids(g1, cu), 0}, {ids(g1, cv), 1}};
    return inst;
  };
  // Straight-line coordinates fix the embeddings, unique up to mirroring.
  auto g = k4();
  auto rs_k4 = rotation_from_coordinates(g, {{0, 0}, {12, 0}, {6, 10}, {6, 4}});
  auto q = cube();
  std::vector<Point> cube_xy;
  for (int v = 0; v < 8; ++v) {
    const bool outer = (v >> 2 & 1) == 0;
    const int s = outer ? 3 : 1;
    cube_xy.push_back({(v >> 1 & 1) ? s : -s, (v & 1) ? s : -s});
  }
  // Outer square 0xx, inner square 1xx, matched corner to corner.
  auto rs_cube = rotation_from_coordinates(q, cube_xy);

  FaJointInstance same;
  same.g1 = g;
  same.g2.add_vertex("a");
  same.g2.add_vertex("b");
  same.g2.add_edge("ab", 0, 1);
  same.anchors = {{ids(g, {"1", "2", "3"}), 0}, {ids(g, {"1", "2", "3"}), 1}};
  auto adjacent = edge_instance(g, {"1", "2", "3"}, {"1", "2", "4"});
  auto opposite = edge_instance(q, {"000", "001", "011", "010"}, {"100", "101", "111", "110"});

  struct Row {
    const char* name;
    const FaJointInstance* inst;
    const RotationSystem* rs;
  } rows[] = {{"K4 same face", &same, &rs_k4}, {"K4 adjacent faces", &adjacent, &rs_k4}, {"cube opposite faces", &opposite, &rs_cube}};
  std::ostringstream note;
  for (const auto& row : rows) {
    const auto& a = row.inst->anchors;
    const std::size_t expected = dual_distance(row.inst->g1, *row.rs, a[0].cycle, a[1].cycle);
    auto r = fa_joint_planar_oracle(*row.inst, 4);
    t.expect(r.value && *r.value == Weight(expected), std::string(row.name) + " value");
    if (r.value && r.drawing) t.expect(witness_count(*row.inst, *r.drawing) == *r.value, std::string(row.name) + " witness");
    note << row.name << " " << (r.value ? str(*r.value) : "EXCEEDS") << " (dual distance " << expected << "); ";
  }
  std::string s = note.str();
  return s.substr(0, s.size() - 2);
}

// Weighted toy corpus: G1 is the theta graph (K4 minus an edge) or K4, with
// anchors in two faces sharing the edge 1-2; G2 is an edge or a two-edge
// path with a free middle vertex. Every weighting with weights in {1,2,3}.
struct Toy {
  std::string shape;
  FaJointInstance inst;
  Weight expected;  // min G2 weight times the weighted dual distance
  std::vector<Point> c1, c2;
};

std::vector<Toy> toy_corpus() {
  std::vector<Toy> out;
  const std::vector<Point> theta_xy{{0, 0}, {10, 0}, {5, 5}, {5, -5}};
  const std::vector<Point> k4_xy{{0, 0}, {12, 0}, {6, 3}, {6, 20}};  // 3 inside 124
  auto add = [&](const std::string& shape, const WeightedMultigraph& g1, const Weight& dist, const std::vector<int>& w2,
                 const std::vector<Point>& c1) {
    Toy toy;
    toy.shape = shape;
    toy.inst.g1 = g1;
    auto& g2 = toy.inst.g2;
    g2.add_vertex("u");
    g2.add_vertex("w");
    if (w2.size() == 1) {
      g2.add_edge("uw", 0, 1, w2[0]);
      toy.c2 = {{5, 1}, {5, -1}};
    } else {
      g2.add_vertex("m");
      g2.add_edge("um", 0, 2, w2[0]);
      g2.add_edge("mw", 2, 1, w2[1]);
      toy.c2 = {{4, 1}, {6, -1}, {5, -2}};
    }
    toy.inst.anchors = {{ids(g1, {"1", "2", "3"}), 0}, {ids(g1, {"1", "2", "4"}), 1}};
    toy.expected = *std::min_element(w2.begin(), w2.end()) * dist;
    toy.c1 = c1;
    out.push_back(std::move(toy));
  };
  auto weightings = [](int n) {
    std::vector<std::vector<int>> all{{}};
    for (int i = 0; i < n; ++i) {
      std::vector<std::vector<int>> next;
      for (const auto& w : all)
        for (int x = 1; x <= 3; ++x) {
          next.push_back(w);
          next.back().push_back(x);
        }
      all = std::move(next);
    }
    return all;
  };
  // Theta: edges 12, 13, 32, 14, 42. Faces 123 and 124 share 12; the outer
  // face 1324 touches both through the two paths.
  for (const auto& w : weightings(5)) {
    auto g1 = graph_of({"1", "2", "3", "4"}, {{0, 1}, {0, 2}, {2, 1}, {0, 3}, {3, 1}}, w);
    Weight d = std::min<Weight>(w[0], std::min(w[1], w[2]) + std::min(w[3], w[4]));
    for (const auto& w2 : weightings(1)) add("theta+edge", g1, d, w2, theta_xy);
    for (const auto& w2 : weightings(2)) add("theta+path", g1, d, w2, theta_xy);
  }
  // K4: edges 12, 13, 14, 23, 24, 34. Faces A=123, B=124, C=134, D=234 with
  // A-B across 12, A-C across 13, A-D across 23, B-C across 14, B-D across
  // 24, C-D across 34.
  for (const auto& w : weightings(6)) {
    auto g1 = k4(w);
    const int w12 = w[0], w13 = w[1], w14 = w[2], w23 = w[3], w24 = w[4], w34 = w[5];
    Weight d = std::min({w12, w13 + w14, w23 + w24, w13 + w34 + w24, w23 + w34 + w14});
    for (const auto& w2 : weightings(1)) add("K4+edge", g1, d, w2, k4_xy);
  }
  return out;
}

void equivalence_case(Tally& t, const Toy& toy, const OracleOptions& opts, const std::string& tag) {
  auto weighted = fa_joint_planar_oracle(toy.inst, 27, opts);
  auto unit = fa_joint_planar_oracle(expand_weights(toy.inst, ExpandOptions{true}), 27, opts);
  t.expect(weighted.value && *weighted.value == toy.expected, tag + ": weighted oracle vs dual distance");
  t.expect(unit.value && weighted.value && *unit.value == *weighted.value, tag + ": expanded oracle vs weighted");

  // 9x blow-up of a straight-line witness.
  auto base = plane_surface(toy.inst.g1, toy.c1, toy.inst.g2, toy.c2);
  auto drawing = straight_line_drawing(toy.inst.g1, toy.c1, toy.inst.g2, toy.c2);
  auto blown = three_connectify(base);
  auto big = blow_up_drawing(base, drawing, blown);
  const Weight base_sum = own_crossing_sum(base.h1, base.h2, drawing);
  const Weight big_sum = own_crossing_sum(blown.h1, blown.h2, big);
  t.expect(big.crossings.size() == 9 * drawing.crossings.size(), tag + ": crossing count not 9x");
  t.expect(big_sum == 9 * base_sum && witness_count(blown, big) == big_sum, tag + ": weighted witness not 9x");
}

std::string reduction_equivalence(Tally& t) {
  OracleOptions opts;
  opts.max_edge_product = 2000;
  std::size_t count = 0;
  std::map<std::string, std::size_t> per_shape;
  const auto corpus = toy_corpus();
  for (const auto& toy : corpus) {
    ++count;
    ++per_shape[toy.shape];
    const std::string tag = toy.shape + " #" + std::to_string(count);
    try {
      equivalence_case(t, toy, opts, tag);
    } catch (const std::exception& e) {
      t.expect(false, tag + ": " + e.what());
    }
  }

  // Simplicity and 3-connectivity of the wheel blow-up, on every toy shape
  // (the structure does not depend on weights) both as drawn in the plane
  // and after the surface reduction, plus a few extra embedded graphs.
  std::size_t structural = 0;
  auto check_blowup = [&](const SurfaceJointInstance& s, const std::string& tag) {
    auto out = three_connectify(s);
    ++structural;
    t.expect(own_simple(out.h1) && own_simple(out.h2), tag + ": blow-up not simple");
    t.expect(own_three_connected(out.h1) && own_three_connected(out.h2), tag + ": blow-up not 3-connected");
    t.expect(own_genus(out.h1, out.rotation1) == s.genus && own_genus(out.h2, out.rotation2) == s.genus,
             tag + ": blow-up changed the genus");
  };
  std::set<std::string> done;
  for (const auto& toy : corpus) {
    if (!done.insert(toy.shape).second) continue;
    check_blowup(plane_surface(toy.inst.g1, toy.c1, toy.inst.g2, toy.c2), toy.shape + " plane");
    check_blowup(fa_to_surface(toy.inst), toy.shape + " surface");
  }
  auto grid = toroidal_grid(3, 4);
  SurfaceJointInstance torus;
  torus.genus = 1;
  torus.h1 = grid.graph;
  torus.h2 = grid.graph;
  torus.rotation1 = grid.rotation;
  torus.rotation2 = grid.rotation;
  check_blowup(torus, "toroidal grid");
  auto q = cube();
  auto g = k4();
  check_blowup(plane_surface(q, {{-3, -3}, {-3, 3}, {3, -3}, {3, 3}, {-1, -1}, {-1, 1}, {1, -1}, {1, 1}}, g,
                             {{0, 0}, {12, 0}, {6, 10}, {6, 4}}),
               "cube and K4");

  std::ostringstream note;
  note << count << " weighted instances (";
  bool first = true;
  for (const auto& [shape, n] : per_shape) {
    note << (first ? "" : ", ") << shape << " " << n;
    first = false;
  }
  note << "), " << structural << " blow-ups checked by brute-force connectivity";
  return note.str();
}

AnchoredInstance star_instance(const std::vector<int>& leaf_weights) {
  AnchoredInstance s;
  s.g1.add_vertex("a");
  s.g1.add_vertex("b");
  s.g1.add_edge("ab", 0, 1);
  auto z = s.g2.add_vertex("z");
  for (int i = 1; i <= 4; ++i) {
    auto y = s.g2.add_vertex("y" + std::to_string(i));
    s.g2.add_edge("zy" + std::to_string(i), z, y, leaf_weights[i - 1]);
    s.partition[i - 1] = {y};
  }
  s.sigma = {{2, s.g2.vertex("y1")}, {1, 0}, {2, s.g2.vertex("y2")}, {2, s.g2.vertex("y3")}, {1, 1}, {2, s.g2.vertex("y4")}};
  return s;
}

std::string receipts(Tally& t) {
  std::vector<ReductionReceipt> all;
  for (const auto& w : std::vector<std::vector<int>>{{1, 1, 1, 1}, {2, 3, 1, 4}, {1, 2, 2, 1}}) {
    auto fa6 = anchored_to_fa6(star_instance(w));
    all.push_back(fa6.receipt);
    for (int extra : {0, 1}) {
      auto hosts = fplus_dummy_hosts(fa6);
      hosts.resize(extra);
      auto padded = add_dummy_anchors(fa6.instance, hosts);
      auto surface = fa_to_surface(padded.instance, fa6.receipt);
      all.push_back(surface.receipt);
      all.push_back(three_connectify(surface).receipt);
    }
  }
  auto q = cube();
  auto faces = trace_faces(q, is_planar(q).witness);
  for (int h = 1; h <= 6; ++h) {
    FaJointInstance inst;
    inst.g1 = q;
    auto z = inst.g2.add_vertex("z");
    for (int i = 0; i < h; ++i) {
      auto leaf = inst.g2.add_vertex("l" + std::to_string(i));
      inst.g2.add_edge("zl" + std::to_string(i), z, leaf, i + 1);
      inst.anchors.push_back({faces[i].vertices(q), leaf});
    }
    all.push_back(fa_to_surface(inst).receipt);
  }

  // Target values recomputed from the raw receipt fields.
  for (std::size_t i = 0; i < all.size(); ++i) {
    const auto& r = all[i];
    const std::string tag = "receipt " + std::to_string(i);
    Weight floor_value = 0, anchors = 0;
    for (std::size_t j = 0; j < r.t_list.size(); ++j) floor_value += Weight(r.g_list[j]) * r.t_list[j];
    for (const auto& w : r.w_list) anchors += w;
    if (r.has_stage("anchored_to_fa6")) {
      t.expect(r.crgj == canonical_fplus_count(*r.k, r.T), tag + ": crgj is not the canonical F+ count");
    }
    if (r.has_stage("fa_to_surface")) {
      t.expect(r.p == 8 * r.m && r.t == (r.m + 1) * r.p * r.p, tag + ": p or t");
    }
    for (int s : {0, 1, 2, 5}) {
      Weight v = s, lo = s, hi = s;
      for (const auto& stage : r.stages) {
        if (stage == "anchored_to_fa6") {
          v = r.crgj + anchors * r.T * r.T + v;
          lo = hi = v;
        } else if (stage == "fa_to_surface") {
          const Weight p2 = r.p * r.p;
          lo = p2 * v + floor_value;
          hi = lo + p2 - 1;
          v = lo + p2 / 2;
        } else if (stage == "three_connectify") {
          v *= r.scale;
          lo *= r.scale;
          hi = (hi + 1) * r.scale - 1;
        }
      }
      t.expect(forward_chain(s, r) == v, tag + ": forward value for s=" + std::to_string(s));
      t.expect(recover_chain(v, r) == s, tag + ": recovery for s=" + std::to_string(s));
      t.expect(recover_chain(lo, r) == s && recover_chain(hi, r) == s, tag + ": recovery window for s=" + std::to_string(s));
    }
  }

  // Canonical witness of F+ laid out as drawn, counted crossing by crossing.
  for (int k : {2, 3}) {
    auto plus = mirror_join(build_fa_instance({k, 10}));
    auto d = straight_line_drawing(plus.instance.g1, plus.coords1, plus.instance.g2, plus.coords2);
    const Weight count = own_crossing_sum(plus.instance.g1, plus.instance.g2, d);
    t.expect(count == canonical_fplus_count(k, 10), "F+ witness at k=" + std::to_string(k) + ": " + str(count));
    t.expect(witness_count(plus.instance, d) == count, "F+ witness rejected at k=" + std::to_string(k));
  }
  return std::to_string(all.size()) + " receipts, s in {0,1,2,5} with full recovery windows; F+ witnesses " +
         str(canonical_fplus_count(2, 10)) + " and " + str(canonical_fplus_count(3, 10));
}

std::string nonplanarity(Tally& t) {
  std::size_t parts = 0;
  for (int h = 1; h <= 6; ++h) {
    for (int i = 1; i <= h; ++i) {
      auto gadget = torus_gadget({i, h}, 4);
      auto part = remove_vertices(gadget.embedded.graph, gadget.cycle);
      const std::string tag = "T" + std::to_string(i) + " (h=" + std::to_string(h) + ")";
      ++parts;
      t.expect(!is_planar(part).planar, tag + ": library calls it planar");
      t.expect(euler_nonplanar(part), tag + ": Euler bound does not certify nonplanarity");
    }
  }
  auto l = l_gadget(5);
  t.expect(!is_planar(l.embedded.graph).planar, "L gadget: library calls it planar");
  t.expect(euler_nonplanar(l.embedded.graph), "L gadget: Euler bound does not certify nonplanarity");
  return std::to_string(parts) + " torus parts and the L gadget, each certified by E > 2V - 4 on a triangle-free graph";
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "formula suite", 5, formulas},
      {2, "cut suite", 10, cuts},
      {3, "genus suite", 10, genus_suite},
      {4, "edge-width suite", 30, edge_width},
      {5, "ordering lemma", 5, ordering},
      {6, "oracle suite", 60, oracle_suite},
      {7, "reduction equivalence", 300, reduction_equivalence},
      {8, "receipt algebra", 30, receipts},
      {9, "nonplanarity gadgets", 5, nonplanarity},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Tally tally;
    std::string note;
    auto start = std::chrono::steady_clock::now();
    try {
      note = c.body(tally);
    } catch (const std::exception& e) {
      tally.failures.push_back(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.limit_s;
    const bool pass = tally.failures.empty() && in_time;
    failed += !pass;
    std::printf("criterion %d %s  %-22s %8.2f s (limit %g s)  %zu checks  %s\n", c.id, pass ? "PASS" : "FAIL",
                c.title.c_str(), secs, c.limit_s, tally.checks, note.c_str());
    for (const auto& f : tally.failures) std::printf("    failed: %s\n", f.c_str());
    if (!in_time) std::printf("    over the time limit\n");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
