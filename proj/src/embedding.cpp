#include "jcn/embedding.hpp"

#include <algorithm>
#include <set>

namespace jcn {

std::vector<VertexIndex> Face::vertices(const WeightedMultigraph& g) const {
  std::vector<VertexIndex> out;
  out.reserve(walk.size());
  for (Dart d : walk) out.push_back(tail(g, d));
  return out;
}

void validate_rotation(const WeightedMultigraph& g, const RotationSystem& rs) {
  if (rs.order.size() != g.vertex_count()) throw InstanceError("rotation system covers the wrong number of vertices");
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    std::vector<EdgeIndex> got = rs.order[v];
    std::vector<EdgeIndex> want = g.incident(v);
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    if (got != want) {
      throw InstanceError("rotation at '" + g.vertex_name(v) + "' does not list each incident edge exactly once");
    }
  }
}

namespace {

// position of every edge-end inside its vertex rotation, by dart_code of the
// dart leaving that vertex.
std::vector<std::size_t> rotation_positions(const WeightedMultigraph& g, const RotationSystem& rs) {
  std::vector<std::size_t> pos(2 * g.edge_count(), npos);
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    const auto& rot = rs.order[v];
    for (std::size_t i = 0; i < rot.size(); ++i) {
      Dart d{rot[i], g.edge(rot[i]).u == v};
      pos[dart_code(d)] = i;
    }
  }
  return pos;
}

}  // namespace

std::vector<Face> trace_faces(const WeightedMultigraph& g, const RotationSystem& rs) {
  validate_rotation(g, rs);
  auto pos = rotation_positions(g, rs);
  std::vector<bool> used(2 * g.edge_count(), false);
  std::vector<Face> faces;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    for (bool fwd : {true, false}) {
      Dart start{e, fwd};
      if (used[dart_code(start)]) continue;
      Face f;
      Dart d = start;
      do {
        used[dart_code(d)] = true;
        f.walk.push_back(d);
        VertexIndex v = head(g, d);
        // the same edge leaving v, then its successor in v's rotation
        Dart back = reversed(d);
        const auto& rot = rs.order[v];
        EdgeIndex next = rot[(pos[dart_code(back)] + 1) % rot.size()];
        d = Dart{next, g.edge(next).u == v};
      } while (!(d == start));
      faces.push_back(std::move(f));
    }
  }
  return faces;
}

std::vector<std::size_t> face_index_of_darts(const WeightedMultigraph& g, const std::vector<Face>& faces) {
  std::vector<std::size_t> out(2 * g.edge_count(), npos);
  for (std::size_t i = 0; i < faces.size(); ++i) {
    for (Dart d : faces[i].walk) out[dart_code(d)] = i;
  }
  return out;
}

int euler_genus(const WeightedMultigraph& g, const RotationSystem& rs) {
  if (!is_connected(g)) throw InstanceError("euler_genus of a disconnected graph");
  if (g.edge_count() == 0) return 0;
  auto faces = trace_faces(g, rs);
  long long chi = static_cast<long long>(g.vertex_count()) - static_cast<long long>(g.edge_count()) +
                  static_cast<long long>(faces.size());
  return static_cast<int>((2 - chi) / 2);
}

int total_genus(const WeightedMultigraph& g, const RotationSystem& rs) {
  std::vector<std::size_t> label;
  std::size_t comps = connected_components(g, label);
  auto faces = g.edge_count() ? trace_faces(g, rs) : std::vector<Face>{};
  // isolated vertices contribute one face each
  std::size_t isolated = 0;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) isolated += g.degree(v) == 0;
  long long chi = static_cast<long long>(g.vertex_count()) - static_cast<long long>(g.edge_count()) +
                  static_cast<long long>(faces.size() + isolated);
  return static_cast<int>((2 * static_cast<long long>(comps) - chi) / 2);
}

RotationSystem mirror(const RotationSystem& rs) {
  RotationSystem out = rs;
  for (auto& rot : out.order) std::reverse(rot.begin(), rot.end());
  return out;
}

bool angle_less(Point a, Point b) {
  auto half = [](Point p) { return p.y < 0 || (p.y == 0 && p.x < 0); };
  bool ha = half(a), hb = half(b);
  if (ha != hb) return !ha;
  // cross(a, b) > 0 means b is counterclockwise from a; 128-bit to stay exact
  __int128 cross = static_cast<__int128>(a.x) * b.y - static_cast<__int128>(a.y) * b.x;
  return cross > 0;
}

RotationSystem rotation_from_coordinates(const WeightedMultigraph& g, const std::vector<Point>& coords) {
  if (coords.size() != g.vertex_count()) throw InstanceError("coordinate count does not match vertex count");
  RotationSystem rs;
  rs.order.resize(g.vertex_count());
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    auto rot = g.incident(v);
    auto dir = [&](EdgeIndex e) {
      VertexIndex w = g.edge(e).other(v);
      return Point{coords[w].x - coords[v].x, coords[w].y - coords[v].y};
    };
    std::stable_sort(rot.begin(), rot.end(), [&](EdgeIndex a, EdgeIndex b) { return angle_less(dir(a), dir(b)); });
    rs.order[v] = std::move(rot);
  }
  return rs;
}

RotationSystem restrict_rotation(const WeightedMultigraph& g, const RotationSystem& rs,
                                 const std::vector<bool>& keep_edge) {
  RotationSystem out;
  out.order.resize(g.vertex_count());
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    for (EdgeIndex e : rs.order[v]) {
      if (keep_edge[e]) out.order[v].push_back(e);
    }
  }
  return out;
}

void insert_after(RotationSystem& rs, VertexIndex at, EdgeIndex after, EdgeIndex edge) {
  auto& rot = rs.order.at(at);
  auto it = std::find(rot.begin(), rot.end(), after);
  if (it == rot.end()) throw InstanceError("insert_after: edge is not incident to the vertex");
  rot.insert(it + 1, edge);
}

namespace {

bool matching_cyclic_order(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  // a must be cyclically increasing and b cyclically decreasing
  auto descents = [](const std::vector<std::size_t>& xs, bool increasing) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      std::size_t x = xs[i], y = xs[(i + 1) % xs.size()];
      if (increasing ? (y <= x) : (y >= x)) ++count;
    }
    return count;
  };
  if (a.size() <= 1) return true;
  return descents(a, true) == 1 && descents(b, false) == 1;
}

}  // namespace

std::vector<EdgeIndex> join_faces(WeightedMultigraph& g, RotationSystem& rs, const Face& a, const Face& b,
                                  const std::vector<FaceLink>& links) {
  std::vector<std::size_t> pa, pb;
  std::set<std::size_t> seen_a, seen_b;
  for (const auto& l : links) {
    if (l.pos_a >= a.walk.size() || l.pos_b >= b.walk.size()) throw InstanceError("join_faces: corner out of range");
    if (!seen_a.insert(l.pos_a).second || !seen_b.insert(l.pos_b).second) {
      throw InstanceError("join_faces: a corner is used twice");
    }
    pa.push_back(l.pos_a);
    pb.push_back(l.pos_b);
  }
  if (!matching_cyclic_order(pa, pb)) throw InstanceError("join_faces: corners are not in matching cyclic order");
  std::vector<EdgeIndex> added;
  for (const auto& l : links) {
    Dart da = a.walk[l.pos_a];
    Dart db = b.walk[l.pos_b];
    VertexIndex x = head(g, da), y = head(g, db);
    EdgeIndex e = g.add_edge(l.id, x, y, l.weight);
    rs.order.resize(g.vertex_count());
    insert_after(rs, x, da.edge, e);
    insert_after(rs, y, db.edge, e);
    added.push_back(e);
  }
  return added;
}

ContractResult contract_matching(const WeightedMultigraph& g, const RotationSystem& rs,
                                 const std::vector<Contraction>& contractions) {
  std::vector<bool> contracted(g.edge_count(), false);
  std::vector<VertexIndex> merged_into(g.vertex_count(), npos);
  RotationSystem work = rs;
  for (const auto& c : contractions) {
    const Edge& e = g.edge(c.edge);
    if (c.keep != e.u && c.keep != e.v) throw InstanceError("contraction keeps a non-endpoint");
    VertexIndex gone = e.other(c.keep);
    if (merged_into[gone] != npos || merged_into[c.keep] != npos || contracted[c.edge]) {
      throw InstanceError("contractions do not form a matching");
    }
    auto& keep_rot = work.order[c.keep];
    const auto& gone_rot = work.order[gone];
    auto it = std::find(keep_rot.begin(), keep_rot.end(), c.edge);
    auto jt = std::find(gone_rot.begin(), gone_rot.end(), c.edge);
    std::vector<EdgeIndex> splice;
    std::size_t j = static_cast<std::size_t>(jt - gone_rot.begin());
    for (std::size_t s = 1; s < gone_rot.size(); ++s) splice.push_back(gone_rot[(j + s) % gone_rot.size()]);
    std::size_t i = static_cast<std::size_t>(it - keep_rot.begin());
    keep_rot.erase(keep_rot.begin() + static_cast<std::ptrdiff_t>(i));
    keep_rot.insert(keep_rot.begin() + static_cast<std::ptrdiff_t>(i), splice.begin(), splice.end());
    work.order[gone].clear();
    merged_into[gone] = c.keep;
    merged_into[c.keep] = c.keep;
    contracted[c.edge] = true;
  }
  ContractResult out;
  out.vertex_map.assign(g.vertex_count(), npos);
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (merged_into[v] == npos || merged_into[v] == v) out.vertex_map[v] = out.graph.add_vertex(g.vertex_name(v));
  }
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (merged_into[v] != npos && merged_into[v] != v) out.vertex_map[v] = out.vertex_map[merged_into[v]];
  }
  out.edge_map.assign(g.edge_count(), npos);
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    if (contracted[e]) continue;
    const Edge& ed = g.edge(e);
    out.edge_map[e] = out.graph.add_edge(ed.id, out.vertex_map[ed.u], out.vertex_map[ed.v], ed.weight);
  }
  out.rotation.order.resize(out.graph.vertex_count());
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (merged_into[v] != npos && merged_into[v] != v) continue;
    auto& rot = out.rotation.order[out.vertex_map[v]];
    for (EdgeIndex e : work.order[v]) rot.push_back(out.edge_map[e]);
  }
  return out;
}

EmbeddedUnion embedded_union(const EmbeddedGraph& a, const EmbeddedGraph& b, const std::string& prefix_a,
                             const std::string& prefix_b) {
  auto u = disjoint_union(a.graph, b.graph, prefix_a, prefix_b);
  EmbeddedUnion out;
  out.result.graph = std::move(u.graph);
  out.left = std::move(u.left);
  out.right = std::move(u.right);
  out.result.rotation.order.resize(out.result.graph.vertex_count());
  auto carry = [&](const EmbeddedGraph& src, const Relabeling& map) {
    for (VertexIndex v = 0; v < src.graph.vertex_count(); ++v) {
      auto& rot = out.result.rotation.order[map.vertex_map[v]];
      for (EdgeIndex e : src.rotation.order.at(v)) rot.push_back(map.edge_map[e]);
    }
  };
  carry(a, out.left);
  carry(b, out.right);
  return out;
}

bool same_cyclic_sequence(const std::vector<VertexIndex>& a, const std::vector<VertexIndex>& b, bool allow_reversal) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  const std::size_t n = a.size();
  for (int dir = 0; dir < (allow_reversal ? 2 : 1); ++dir) {
    for (std::size_t shift = 0; shift < n; ++shift) {
      bool ok = true;
      for (std::size_t i = 0; i < n && ok; ++i) {
        std::size_t j = dir == 0 ? (shift + i) % n : (shift + n - i) % n;
        ok = a[i] == b[j];
      }
      if (ok) return true;
    }
  }
  return false;
}

std::size_t find_face_with_cycle(const WeightedMultigraph& g, const std::vector<Face>& faces,
                                 const std::vector<VertexIndex>& cycle) {
  for (std::size_t i = 0; i < faces.size(); ++i) {
    if (same_cyclic_sequence(faces[i].vertices(g), cycle, true)) return i;
  }
  return npos;
}

}  // namespace jcn
