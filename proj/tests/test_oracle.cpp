#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <deque>
#include <functional>
#include <random>
#include <set>

#include "jcn/gadgets.hpp"
#include "jcn/oracle.hpp"
#include "jcn/planarity.hpp"

using namespace jcn;

namespace {

WeightedMultigraph from_pairs(const std::vector<std::string>& names, const std::vector<std::pair<int, int>>& pairs) {
  WeightedMultigraph g;
  for (const auto& n : names) g.add_vertex(n);
  int id = 0;
  for (auto [a, b] : pairs) g.add_edge("e" + std::to_string(id++), a, b, 1);
  return g;
}

WeightedMultigraph k4() { return from_pairs({"1", "2", "3", "4"}, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }

WeightedMultigraph cube() {
  std::vector<std::string> names;
  for (int v = 0; v < 8; ++v) names.push_back(std::string{char('0' + (v >> 2 & 1)), char('0' + (v >> 1 & 1)), char('0' + (v & 1))});
  std::vector<std::pair<int, int>> pairs;
  for (int v = 0; v < 8; ++v)
    for (int b = 0; b < 3; ++b)
      if (v < (v ^ (1 << b))) pairs.push_back({v, v ^ (1 << b)});
  return from_pairs(names, pairs);
}

std::vector<VertexIndex> ids(const WeightedMultigraph& g, const std::vector<std::string>& names) {
  std::vector<VertexIndex> out;
  for (const auto& n : names) out.push_back(g.vertex(n));
  return out;
}

FaJointInstance edge_instance(const WeightedMultigraph& g1, const std::vector<std::string>& cu, const std::vector<std::string>& cv) {
  FaJointInstance inst;
  inst.g1 = g1;
  inst.g2.add_vertex("u");
  inst.g2.add_vertex("v");
  inst.g2.add_edge("uv", 0, 1);
  inst.anchors = {{ids(g1, cu), 0}, {ids(g1, cv), 1}};
  return inst;
}

// Dual BFS distance between the faces bounded by two cycles.
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

// Smallest dual cycle whose crossed edges do not disconnect the graph,
// by listing simple dual cycles of increasing length.
std::size_t exhaustive_edge_width(const WeightedMultigraph& g, const RotationSystem& rs, std::size_t limit) {
  auto faces = trace_faces(g, rs);
  auto face_of = face_index_of_darts(g, faces);
  auto nonseparating = [&](const std::vector<EdgeIndex>& cut) {
    WeightedMultigraph h;
    for (const auto& n : g.vertex_names()) h.add_vertex(n);
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
      if (std::find(cut.begin(), cut.end(), e) == cut.end()) h.add_edge(g.edge(e).id, g.edge(e).u, g.edge(e).v);
    }
    return is_connected(h);
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

// Each cyclic order rotated to start at its smallest edge.
std::vector<std::vector<EdgeIndex>> canonical(const RotationSystem& rs) {
  auto out = rs.order;
  for (auto& o : out) {
    if (!o.empty()) std::rotate(o.begin(), std::min_element(o.begin(), o.end()), o.end());
  }
  return out;
}

// Plane rotation systems by trying every cyclic order at every vertex.
std::set<std::vector<std::vector<EdgeIndex>>> brute_plane_rotations(const WeightedMultigraph& g) {
  std::set<std::vector<std::vector<EdgeIndex>>> out;
  RotationSystem rs;
  rs.order.resize(g.vertex_count());
  std::function<void(VertexIndex)> go = [&](VertexIndex v) {
    if (v == g.vertex_count()) {
      if (euler_genus(g, rs) == 0) out.insert(canonical(rs));
      return;
    }
    auto rot = g.incident(v);
    std::sort(rot.begin(), rot.end());
    do {
      rs.order[v] = rot;
      go(v + 1);
    } while (rot.size() > 2 && std::next_permutation(rot.begin() + 1, rot.end()));
  };
  go(0);
  return out;
}

}  // namespace

TEST_CASE("plane rotation systems match brute force") {
  std::vector<WeightedMultigraph> graphs;
  graphs.push_back(k4());
  graphs.push_back(cube());
  graphs.push_back(from_pairs({"a", "b", "c", "d", "e"}, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {2, 3}, {3, 4}, {4, 1}}));
  graphs.push_back(from_pairs({"a", "b", "c", "d"}, {{0, 1}, {0, 1}, {0, 1}, {1, 2}, {2, 0}, {2, 3}}));
  graphs.push_back(from_pairs({"a", "b", "c", "d", "e"}, {{0, 1}, {0, 2}, {0, 3}, {3, 4}}));
  graphs.push_back(from_pairs({"a", "b", "c", "d", "e", "f"}, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {0, 3}, {1, 4}, {2, 5}}));
  graphs.push_back(from_pairs({"a", "b", "c", "d", "e"}, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}}));
  for (const auto& g : graphs) {
    auto fast = plane_rotation_systems(g);
    std::set<std::vector<std::vector<EdgeIndex>>> seen;
    for (const auto& rs : fast) {
      CHECK(euler_genus(g, rs) == 0);
      CHECK(seen.insert(canonical(rs)).second);
    }
    CHECK(seen == brute_plane_rotations(g));
  }
  CHECK(plane_rotation_systems(k4()).size() == 2);
  CHECK(plane_rotation_systems(cube()).size() == 2);
}

TEST_CASE("gamma closed form against the sum") {
  CHECK(gamma(2) == 18);
  CHECK(gamma(3) == 172);
  CHECK(gamma_sum(2) == 18);
  CHECK(gamma_sum(3) == 172);
  for (int k = 2; k <= 200; ++k) CHECK(gamma(k) == gamma_sum(k));
  CHECK_THROWS_AS(gamma(1), InstanceError);
}

TEST_CASE("beta and canonical counts") {
  CHECK(beta(2, 10) == 780);
  CHECK(beta(2, 1) == 24);
  CHECK(beta(2, 0) == 0);
  CHECK(canonical_fa_count(2, 10) == 38780);
  CHECK(canonical_fplus_count(2, 10) == 77560);
  for (int k = 2; k <= 50; ++k) {
    auto t = ladder_t(k);
    CHECK(4 * Weight(k) * k * k + k * k + k == 2 * t[0] + 2 * t[k]);
    for (Weight T : {Weight(1), Weight(10), Weight(1000), Weight(1000000)}) {
      CHECK(beta(k, T) == beta_sum(k, T));
      CHECK(canonical_fa_count(k, T) == canonical_fa_count_from_cuts(k, T));
      CHECK(canonical_fplus_count(k, T) % 2 == 0);
    }
    CHECK(canonical_fa_count(k, 11) > canonical_fa_count(k, 10));
  }
}

TEST_CASE("ordering gap") {
  CHECK(ordering_gap({1, 3, 4}, {9, 5, 2}, {1, 0, 2}) == 8);
  CHECK(ordering_gap({1, 3, 4}, {9, 5, 2}, {0, 1, 2}) == 0);
  CHECK_THROWS_AS(ordering_gap({1, 1}, {2, 1}, {0, 1}), InstanceError);
  CHECK_THROWS_AS(ordering_gap({1, 2}, {1, 2}, {0, 1}), InstanceError);
  CHECK_THROWS_AS(ordering_gap({1, 2}, {2, 1}, {0, 0}), InstanceError);
}

TEST_CASE("canonical layout is a witness with the canonical count") {
  for (int k : {2, 3, 4}) {
    auto fa = build_fa_instance({k, 10});
    auto d = straight_line_drawing(fa.instance.g1, fa.coords1, fa.instance.g2, fa.coords2);
    CHECK(witness_count(fa.instance, d) == canonical_fa_count(k, 10));
    auto pattern = crossing_pattern(d, fa.instance.g2.edge_count());
    CHECK(pattern.size() == d.crossings.size());
  }
}

TEST_CASE("mirror layout is a witness with twice the count") {
  for (int k : {2, 3}) {
    auto plus = mirror_join(build_fa_instance({k, 10}));
    auto d = straight_line_drawing(plus.instance.g1, plus.coords1, plus.instance.g2, plus.coords2);
    CHECK(witness_count(plus.instance, d) == canonical_fplus_count(k, 10));
  }
}

TEST_CASE("witness validation rejects broken drawings") {
  auto fa = build_fa_instance({2, 10});
  auto d = straight_line_drawing(fa.instance.g1, fa.coords1, fa.instance.g2, fa.coords2);
  auto swapped = fa.instance;
  std::swap(swapped.anchors[0].anchor, swapped.anchors[1].anchor);
  CHECK_THROWS_AS(witness_count(swapped, d), InstanceError);
  auto bent = d;
  for (auto& rot : bent.rotation.order) {
    if (rot.size() == 4 && bent.vertex_side[&rot - &bent.rotation.order[0]] == 0) {
      std::swap(rot[0], rot[1]);
      break;
    }
  }
  CHECK_THROWS_AS(witness_count(fa.instance, bent), InstanceError);
  // Moving a2 onto an F1 edge is degenerate.
  auto coords = fa.coords2;
  coords[1] = {2, 1};
  CHECK_THROWS_AS(straight_line_drawing(fa.instance.g1, fa.coords1, fa.instance.g2, coords), InstanceError);
}

TEST_CASE("edge width of toroidal grids") {
  for (int p = 3; p <= 6; ++p) {
    for (int q = 3; q <= 6; ++q) {
      auto t = toroidal_grid(p, q);
      std::size_t w = dual_edge_width_torus(t.graph, t.rotation);
      CHECK(w == std::size_t(std::min(p, q)));
      if (p <= 4 && q <= 4) CHECK(exhaustive_edge_width(t.graph, t.rotation, 4) == w);
    }
  }
  auto k4g = k4();
  auto planar = is_planar(k4g);
  CHECK_THROWS_AS(dual_edge_width_torus(k4g, planar.witness), InstanceError);
}

TEST_CASE("torus gadget edge width equals g_1") {
  auto t = torus_gadget({1, 1}, 4);
  CHECK(dual_edge_width_torus(t.embedded.graph, t.embedded.rotation) == 6);
  auto t2 = torus_gadget({2, 3}, 5);
  CHECK(dual_edge_width_torus(t2.embedded.graph, t2.embedded.rotation) == 7);
}

TEST_CASE("oracle on small anchored instances") {
  auto g = k4();
  FaJointInstance single;
  single.g1 = g;
  single.g2.add_vertex("a");
  single.anchors = {{ids(g, {"1", "2", "3"}), 0}};
  auto r0 = fa_joint_planar_oracle(single, 3);
  REQUIRE(r0.value);
  CHECK(*r0.value == 0);

  auto adjacent = edge_instance(g, {"1", "2", "3"}, {"1", "2", "4"});
  auto r1 = fa_joint_planar_oracle(adjacent, 3);
  REQUIRE(r1.value);
  CHECK(*r1.value == 1);
  auto emb = is_planar(g).witness;
  CHECK(dual_distance(g, emb, adjacent.anchors[0].cycle, adjacent.anchors[1].cycle) == 1);
  REQUIRE(r1.drawing);
  CHECK(witness_count(adjacent, *r1.drawing) == 1);

  auto q = cube();
  auto opposite = edge_instance(q, {"000", "001", "011", "010"}, {"100", "101", "111", "110"});
  auto r2 = fa_joint_planar_oracle(opposite, 3);
  REQUIRE(r2.value);
  CHECK(*r2.value == 2);
  CHECK(dual_distance(q, is_planar(q).witness, opposite.anchors[0].cycle, opposite.anchors[1].cycle) == 2);

  auto low = fa_joint_planar_oracle(opposite, 1);
  CHECK_FALSE(low.value);
  CHECK(oracle_report_line(opposite, low).find(" EXCEEDS ") != std::string::npos);
  CHECK(oracle_report_line(opposite, r2).rfind("oracle ", 0) == 0);
}

TEST_CASE("oracle is monotone in weights and invariant under relabeling") {
  auto g = k4();
  auto base = edge_instance(g, {"1", "2", "3"}, {"1", "2", "4"});
  auto heavy = base;
  for (EdgeIndex e = 0; e < heavy.g1.edge_count(); ++e) heavy.g1.set_weight(e, 2);
  auto rb = fa_joint_planar_oracle(base, 6);
  auto rh = fa_joint_planar_oracle(heavy, 6);
  REQUIRE(rb.value);
  REQUIRE(rh.value);
  CHECK(*rh.value >= *rb.value);
  CHECK(*rh.value == 2);

  // Same instance with vertices listed in reverse order.
  WeightedMultigraph rev;
  for (VertexIndex v = 4; v-- > 0;) rev.add_vertex(g.vertex_name(v));
  for (const auto& e : g.edges()) rev.add_edge(e.id, g.vertex_name(e.u), g.vertex_name(e.v), e.weight);
  auto relabeled = edge_instance(rev, {"1", "2", "3"}, {"1", "2", "4"});
  auto rr = fa_joint_planar_oracle(relabeled, 6);
  REQUIRE(rr.value);
  CHECK(*rr.value == *rb.value);
}

TEST_CASE("oracle guard") {
  auto q = cube();
  FaJointInstance big = edge_instance(q, {"000", "001", "011", "010"}, {"100", "101", "111", "110"});
  big.g2.add_vertex("w");
  big.g2.add_edge("vw", 1, 2);
  big.g2.add_edge("wu", 2, 0);
  CHECK_THROWS_AS(fa_joint_planar_oracle(big, 2), InstanceError);
}
