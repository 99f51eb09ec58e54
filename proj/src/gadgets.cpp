#include "jcn/gadgets.hpp"

#include "jcn/planarity.hpp"

#include <algorithm>
#include <set>

namespace jcn {

std::string grid_vertex(const std::string& prefix, int r, int c) {
  return prefix + "g" + std::to_string(r) + "_" + std::to_string(c);
}

namespace {

int wrap(int x, int n) { return ((x % n) + n) % n; }

std::string edge_name(const std::string& prefix, char kind, int r, int c) {
  return prefix + kind + std::to_string(r) + "_" + std::to_string(c);
}

// Grid with the listed horizontal edges (r, c)-(r, c+1) left out.
EmbeddedGraph grid_without(int p, int q, const std::string& prefix, const std::set<std::pair<int, int>>& removed) {
  if (p < 3 || q < 3) throw InstanceError("toroidal grid needs both sides >= 3");
  EmbeddedGraph out;
  auto& g = out.graph;
  for (int r = 0; r < p; ++r)
    for (int c = 0; c < q; ++c) g.add_vertex(grid_vertex(prefix, r, c));
  auto id = [q](int r, int c) { return static_cast<VertexIndex>(r * q + c); };
  const EdgeIndex none = npos;
  std::vector<EdgeIndex> hor(p * q, none), ver(p * q, none);
  for (int r = 0; r < p; ++r) {
    for (int c = 0; c < q; ++c) {
      if (!removed.count({r, c})) hor[id(r, c)] = g.add_edge(edge_name(prefix, 'h', r, c), id(r, c), id(r, wrap(c + 1, q)));
      ver[id(r, c)] = g.add_edge(edge_name(prefix, 'v', r, c), id(r, c), id(wrap(r + 1, p), c));
    }
  }
  out.rotation.order.resize(g.vertex_count());
  for (int r = 0; r < p; ++r) {
    for (int c = 0; c < q; ++c) {
      auto& rot = out.rotation.order[id(r, c)];
      for (EdgeIndex e : {hor[id(r, c)], ver[id(r, c)], hor[id(r, wrap(c - 1, q))], ver[id(wrap(r - 1, p), c)]}) {
        if (e != none) rot.push_back(e);
      }
    }
  }
  return out;
}

}  // namespace

EmbeddedGraph toroidal_grid(int p, int q, const std::string& prefix) { return grid_without(p, q, prefix, {}); }

TorusAttachment attach_torus_gadget(WeightedMultigraph& g, RotationSystem& rs, const Face& face,
                                    const TorusGadgetParams& params, const std::string& prefix) {
  if (params.i < 1 || params.i > params.h) throw InstanceError("torus gadget index outside 1..h");
  if (face.walk.size() < 4) throw InstanceError("torus gadget needs a face of length >= 4");
  const int rows = gadget_rows(params), cols = gadget_columns(params);
  // e = (0,0)-(0,1) and e' = (1,0)-(1,1): on two distinct (h+6)-cycles, same quadrangle.
  EmbeddedGraph t0 = grid_without(rows, cols, prefix, {{0, 0}, {1, 0}});
  auto faces = trace_faces(t0.graph, t0.rotation);
  auto eight = std::find_if(faces.begin(), faces.end(), [](const Face& f) { return f.walk.size() == 8; });
  if (eight == faces.end()) throw InstanceError("internal: torus gadget has no 8-face");

  TorusAttachment out;
  std::vector<VertexIndex> vmap(t0.graph.vertex_count());
  for (VertexIndex v = 0; v < t0.graph.vertex_count(); ++v) vmap[v] = g.add_vertex(t0.graph.vertex_name(v));
  std::vector<EdgeIndex> emap(t0.graph.edge_count());
  for (EdgeIndex e = 0; e < t0.graph.edge_count(); ++e) {
    const Edge& ed = t0.graph.edge(e);
    emap[e] = g.add_edge(ed.id, vmap[ed.u], vmap[ed.v], ed.weight);
  }
  rs.order.resize(g.vertex_count());
  for (VertexIndex v = 0; v < t0.graph.vertex_count(); ++v) {
    for (EdgeIndex e : t0.rotation.order[v]) rs.order[vmap[v]].push_back(emap[e]);
  }
  out.grid_vertices = vmap;

  Face mapped;
  std::vector<std::size_t> corners;
  for (std::size_t pos = 0; pos < eight->walk.size(); ++pos) {
    Dart d = eight->walk[pos];
    mapped.walk.push_back(Dart{emap[d.edge], d.forward});
    if (t0.graph.degree(head(t0.graph, d)) == 3) corners.push_back(pos);
  }
  if (corners.size() != 4) throw InstanceError("internal: 8-face does not have four degree-3 corners");

  const std::size_t L = face.walk.size();
  std::array<std::size_t, 4> spots{};
  for (std::size_t q = 0; q < 4; ++q) spots[q] = q * L / 4;
  // Matching cyclic order: the 8-face corners in walk order meet the target
  // corners in reverse walk order.
  std::vector<FaceLink> links;
  for (std::size_t q = 0; q < 4; ++q) {
    links.push_back({corners[q], spots[(4 - q) % 4], prefix + "conn" + std::to_string(q), 1});
  }
  auto added = join_faces(g, rs, mapped, face, links);
  for (std::size_t q = 0; q < 4; ++q) {
    out.connectors[q] = added[q];
    out.endpoints[q] = head(g, mapped.walk[corners[q]]);
    out.targets[q] = head(g, face.walk[spots[(4 - q) % 4]]);
  }
  return out;
}

TorusGadget torus_gadget(const TorusGadgetParams& params, std::size_t cycle_length) {
  if (cycle_length < 4) throw InstanceError("torus gadget needs |C'| >= 4");
  TorusGadget out;
  auto& g = out.embedded.graph;
  auto& rs = out.embedded.rotation;
  std::string prefix = "T" + std::to_string(params.i) + ".";
  for (std::size_t j = 0; j < cycle_length; ++j) out.cycle.push_back(g.add_vertex(prefix + "cp" + std::to_string(j)));
  for (std::size_t j = 0; j < cycle_length; ++j) {
    g.add_edge(prefix + "cpe" + std::to_string(j), out.cycle[j], out.cycle[(j + 1) % cycle_length]);
  }
  rs.order.resize(cycle_length);
  for (std::size_t j = 0; j < cycle_length; ++j) rs.order[j] = {(j + cycle_length - 1) % cycle_length, j};
  auto faces = trace_faces(g, rs);
  out.attachment = attach_torus_gadget(g, rs, faces[0], params, prefix);
  return out;
}

std::vector<std::vector<EdgeIndex>> torus_subdivision_witness(const TorusGadget& t) {
  const auto& g = t.embedded.graph;
  const auto& a = t.attachment;
  // Grid dimensions from the vertex list: rows * cols grid vertices, cols = h + 6.
  std::string prefix = g.vertex_name(a.grid_vertices[0]);
  prefix = prefix.substr(0, prefix.size() - std::string("g0_0").size());
  int rows = 0, cols = 0;
  while (g.has_vertex(grid_vertex(prefix, 0, cols))) ++cols;
  while (g.has_vertex(grid_vertex(prefix, rows, 0))) ++rows;
  auto vid = [&](int r, int c) { return g.vertex(grid_vertex(prefix, r, c)); };
  auto connector_at = [&](VertexIndex v) {
    for (std::size_t q = 0; q < 4; ++q) {
      if (a.endpoints[q] == v) return q;
    }
    throw InstanceError("internal: no connector at grid vertex");
  };
  auto arc = [&](VertexIndex from, VertexIndex to, const std::set<VertexIndex>& avoid) {
    const auto& cyc = t.cycle;
    const std::size_t n = cyc.size();
    std::size_t s = std::find(cyc.begin(), cyc.end(), from) - cyc.begin();
    for (int dir : {1, -1}) {
      std::vector<EdgeIndex> path;
      bool ok = true;
      std::size_t cur = s;
      while (cyc[cur] != to) {
        std::size_t nxt = (cur + n + dir) % n;
        path.push_back(find_edge(g, cyc[cur], cyc[nxt]));
        if (cyc[nxt] != to && avoid.count(cyc[nxt])) ok = false;
        cur = nxt;
      }
      if (ok) return path;
    }
    throw InstanceError("internal: no free arc on C'");
  };
  std::vector<std::vector<EdgeIndex>> out;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      for (char kind : {'h', 'v'}) {
        std::string id = edge_name(prefix, kind, r, c);
        if (g.has_edge(id)) {
          out.push_back({g.edge_index(id)});
          continue;
        }
        std::size_t qa = connector_at(vid(r, c)), qb = connector_at(vid(r, wrap(c + 1, cols)));
        std::set<VertexIndex> avoid;
        for (std::size_t q = 0; q < 4; ++q) {
          if (q != qa && q != qb) avoid.insert(a.targets[q]);
        }
        std::vector<EdgeIndex> path{a.connectors[qa]};
        auto mid = arc(a.targets[qa], a.targets[qb], avoid);
        path.insert(path.end(), mid.begin(), mid.end());
        path.push_back(a.connectors[qb]);
        out.push_back(std::move(path));
      }
    }
  }
  return out;
}

LGadget l_gadget(const Weight& thick_weight, const std::string& prefix) {
  if (thick_weight < 2) throw InstanceError("thick weight must be >= 2");
  LGadget out;
  auto& g = out.embedded.graph;
  for (int s = 0; s < 3; ++s) g.add_vertex(prefix + "l" + std::to_string(s));
  for (int s = 0; s < 3; ++s) g.add_vertex(prefix + "r" + std::to_string(s));
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      bool thin = a == 0 && b < 2;
      g.add_edge(prefix + "l" + std::to_string(a) + "r" + std::to_string(b), a, 3 + b, thin ? Weight(1) : thick_weight);
    }
  }
  out.attach = 1;
  // Each vertex has degree 3, so two cyclic orders apiece; take the first
  // toroidal choice.
  auto& rs = out.embedded.rotation;
  for (int mask = 0; mask < 64; ++mask) {
    rs.order.assign(6, {});
    for (VertexIndex v = 0; v < 6; ++v) {
      rs.order[v] = g.incident(v);
      if (mask >> v & 1) std::swap(rs.order[v][1], rs.order[v][2]);
    }
    if (euler_genus(g, rs) == 1) return out;
  }
  throw InstanceError("internal: no toroidal rotation of K_{3,3} found");
}

Weight default_T(int k, const Weight& w1, const Weight& w2) {
  Weight kk = k;
  return kk * kk * kk * kk * kk * kk + w1 * w2 + 1;
}

std::vector<Weight> ladder_t(int k) {
  std::vector<Weight> t(k + 1);
  t[0] = Weight(k) * k * k;
  for (int j = 1; j <= k; ++j) t[j] = t[j - 1] + j;
  return t;
}

namespace {

void check_params(const LadderParams& params) {
  if (params.k < 2) throw InstanceError("ladder parameter k must be >= 2");
  if (params.T < 1) throw InstanceError("weight base T must be >= 1");
}

std::string f1_name(int i, int col, int k) {
  std::string row = std::to_string(i);
  if (col == 0) return "x" + row + "_1";
  if (col == 1) return "x" + row + "_2";
  if (col == k + 1) return "x" + row + "_3";
  if (col == k + 2) return "x" + row + "_4";
  return "c" + row + "_" + std::to_string(col - 1);
}

}  // namespace

F1Gadget build_f1(const LadderParams& params) {
  check_params(params);
  const int k = params.k;
  const Weight& T = params.T;
  const Weight T2 = T * T, T3 = T2 * T, T4 = T3 * T;
  F1Gadget out;
  auto& g = out.embedded.graph;
  const int cols = k + 3;
  for (int i = 1; i <= 3; ++i) {
    for (int col = 0; col < cols; ++col) {
      g.add_vertex(f1_name(i, col, k));
      out.coords.push_back({2 * col, 2 * (3 - i)});
    }
  }
  auto vid = [cols](int i, int col) { return static_cast<VertexIndex>((i - 1) * cols + col); };
  for (int i = 1; i <= 3; ++i) {
    for (int col = 0; col + 1 < cols; ++col) {
      Weight w = (col == 0 || col == k + 1) ? T4 : T2;
      g.add_edge("h" + std::to_string(i) + "_" + std::to_string(col), vid(i, col), vid(i, col + 1), w);
    }
  }
  for (int i = 1; i <= 2; ++i) {
    for (int col = 0; col < cols; ++col) {
      Weight w;
      if (col == 0) {
        w = T4;
      } else if (col == 1 || col >= k + 1) {
        w = T3;
      } else {
        int j = col - 1;
        w = (i == 1 ? Weight(j) : Weight(k - j)) * T;
      }
      g.add_edge("v" + std::to_string(i) + "_" + std::to_string(col), vid(i, col), vid(i + 1, col), w);
    }
  }
  out.embedded.rotation = rotation_from_coordinates(g, out.coords);
  out.cycles[0] = {vid(1, 0), vid(1, 1), vid(2, 1), vid(2, 0)};
  out.cycles[1] = {vid(2, 0), vid(2, 1), vid(3, 1), vid(3, 0)};
  out.cycles[2] = {vid(1, k + 1), vid(1, k + 2), vid(2, k + 2), vid(2, k + 1)};
  out.cycles[3] = {vid(2, k + 1), vid(2, k + 2), vid(3, k + 2), vid(3, k + 1)};
  return out;
}

F2Gadget build_f2(const LadderParams& params) {
  check_params(params);
  const int k = params.k;
  auto t = ladder_t(k);
  F2Gadget out;
  auto& g = out.embedded.graph;
  const std::int64_t right = 2 * k + 3;
  out.anchors[0] = g.add_vertex("a1");
  out.coords.push_back({1, 3});
  out.anchors[1] = g.add_vertex("a2");
  out.coords.push_back({1, 1});
  out.anchors[2] = g.add_vertex("a3");
  out.coords.push_back({right, 3});
  out.anchors[3] = g.add_vertex("a4");
  out.coords.push_back({right, 1});
  std::vector<VertexIndex> top{out.anchors[0]}, bottom{out.anchors[1]};
  for (int j = 1; j <= k; ++j) {
    top.push_back(g.add_vertex("b" + std::to_string(j)));
    out.coords.push_back({2 * j + 1, 3});
  }
  for (int j = 1; j <= k; ++j) {
    bottom.push_back(g.add_vertex("bp" + std::to_string(j)));
    out.coords.push_back({2 * j + 1, 1});
  }
  top.push_back(out.anchors[2]);
  bottom.push_back(out.anchors[3]);
  for (int j = 1; j <= k + 1; ++j) g.add_edge("q1_" + std::to_string(j), top[j - 1], top[j], t[k + 1 - j]);
  for (int j = 1; j <= k + 1; ++j) g.add_edge("q2_" + std::to_string(j), bottom[j - 1], bottom[j], t[j - 1]);
  for (int j = 1; j <= k; ++j) g.add_edge("r" + std::to_string(j), top[j], bottom[j], k + 1);
  out.embedded.rotation = rotation_from_coordinates(g, out.coords);
  out.q1 = top;
  out.q2 = bottom;
  return out;
}

FaGadget build_fa_instance(const LadderParams& params) {
  auto f1 = build_f1(params);
  auto f2 = build_f2(params);
  FaGadget out;
  out.params = params;
  auto& inst = out.instance;
  inst.name1 = "F1";
  inst.name2 = "F2";
  inst.g1 = f1.embedded.graph;
  inst.g2 = f2.embedded.graph;
  for (int i = 0; i < 4; ++i) inst.anchors.push_back({f1.cycles[i], f2.anchors[i]});
  inst.promise1 = f1.embedded.rotation;
  inst.promise2 = f2.embedded.rotation;
  out.coords1 = f1.coords;
  out.coords2 = f2.coords;
  return out;
}

namespace {

struct Joined {
  WeightedMultigraph graph;
  std::vector<Point> coords;
  std::vector<VertexIndex> ident;
};

// Union of `g` with its mirror copy (prefix "m", reflected at x = width / 2),
// glued along `pairs` (original, mirror). Mirror edges that duplicate an
// original edge between glued vertices are dropped.
Joined glue_mirror(const WeightedMultigraph& g, const std::vector<Point>& coords, std::int64_t width,
                   const std::vector<std::pair<std::string, std::string>>& pairs) {
  auto u = disjoint_union(g, g, "", "m");
  std::vector<std::pair<VertexIndex, VertexIndex>> ids;
  for (const auto& [a, b] : pairs) ids.push_back({u.graph.vertex(a), u.graph.vertex("m" + b)});
  auto glued = identify_vertices(u.graph, ids);
  std::vector<bool> is_glued(glued.graph.vertex_count(), false);
  for (const auto& [a, b] : ids) is_glued[glued.vertex_map[a]] = true;

  Joined out;
  for (const auto& name : glued.graph.vertex_names()) out.graph.add_vertex(name);
  std::set<std::pair<VertexIndex, VertexIndex>> original_glued_edges;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = glued.graph.edge(u.left.edge_map[e]);
    out.graph.add_edge(ed.id, ed.u, ed.v, ed.weight);
    if (is_glued[ed.u] && is_glued[ed.v]) original_glued_edges.insert(std::minmax(ed.u, ed.v));
  }
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = glued.graph.edge(u.right.edge_map[e]);
    if (is_glued[ed.u] && is_glued[ed.v]) {
      EdgeIndex twin = find_edge(out.graph, ed.u, ed.v);
      if (twin == npos || out.graph.edge(twin).weight != ed.weight) {
        throw InstanceError("internal: mirror edge '" + ed.id + "' has no matching original");
      }
      continue;
    }
    out.graph.add_edge(ed.id, ed.u, ed.v, ed.weight);
  }
  out.coords.assign(out.graph.vertex_count(), Point{});
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    out.coords[glued.vertex_map[u.left.vertex_map[v]]] = coords[v];
  }
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    VertexIndex w = glued.vertex_map[u.right.vertex_map[v]];
    if (!is_glued[w]) out.coords[w] = Point{width - coords[v].x, coords[v].y};
  }
  out.ident = glued.vertex_map;
  return out;
}

}  // namespace

FPlusGadget mirror_join(const FaGadget& fa) {
  const auto& src = fa.instance;
  const int k = fa.params.k;
  if (src.anchors.size() != 4 || !src.g1.has_vertex("x1_3") || !src.g2.has_vertex("a3") ||
      src.g1.vertex_count() != static_cast<std::size_t>(3 * (k + 3)) ||
      src.g2.vertex_count() != static_cast<std::size_t>(2 * (k + 2))) {
    throw InstanceError("mirror_join expects an F_{k,T} instance");
  }
  const std::int64_t width = 4 * k + 6;
  std::vector<std::pair<std::string, std::string>> p1;
  for (int i = 1; i <= 3; ++i) {
    std::string r = std::to_string(i);
    p1.push_back({"x" + r + "_3", "x" + r + "_4"});
    p1.push_back({"x" + r + "_4", "x" + r + "_3"});
  }
  auto j1 = glue_mirror(src.g1, fa.coords1, width, p1);
  auto j2 = glue_mirror(src.g2, fa.coords2, width, {{"a3", "a3"}, {"a4", "a4"}});

  FPlusGadget out;
  out.params = fa.params;
  auto& inst = out.instance;
  inst.name1 = "F1plus";
  inst.name2 = "F2plus";
  inst.g1 = j1.graph;
  inst.g2 = j2.graph;
  out.coords1 = j1.coords;
  out.coords2 = j2.coords;
  out.ident1 = j1.ident;
  out.ident2 = j2.ident;
  auto cyc = [&](int idx, const std::string& prefix) {
    std::vector<VertexIndex> c;
    for (auto v : src.anchors[idx].cycle) c.push_back(inst.g1.vertex(prefix + src.g1.vertex_name(v)));
    return c;
  };
  auto anc = [&](int idx, const std::string& prefix) {
    return inst.g2.vertex(prefix + src.g2.vertex_name(src.anchors[idx].anchor));
  };
  inst.anchors = {{cyc(0, ""), anc(0, "")},  {cyc(1, ""), anc(1, "")},   {cyc(2, ""), anc(2, "")},
                  {cyc(3, ""), anc(3, "")},  {cyc(0, "m"), anc(0, "m")}, {cyc(1, "m"), anc(1, "m")}};
  inst.promise1 = rotation_from_coordinates(inst.g1, out.coords1);
  inst.promise2 = rotation_from_coordinates(inst.g2, out.coords2);

  auto row = [&](int i, const std::string& prefix) {
    std::vector<VertexIndex> r;
    r.push_back(inst.g1.vertex(prefix + "x" + std::to_string(i) + "_2"));
    for (int j = 1; j < k; ++j) r.push_back(inst.g1.vertex(prefix + "c" + std::to_string(i) + "_" + std::to_string(j)));
    // The mirror's x_3 column is glued to the original x_4 column.
    r.push_back(inst.g1.vertex("x" + std::to_string(i) + (prefix.empty() ? "_3" : "_4")));
    return r;
  };
  out.r1 = row(1, "");
  out.r3 = row(3, "");
  out.r1_bar = row(1, "m");
  out.r3_bar = row(3, "m");
  auto path = [&](const std::string& start, const std::string& inner, const std::string& end, const std::string& prefix) {
    std::vector<VertexIndex> q{inst.g2.vertex(prefix + start)};
    for (int j = 1; j <= k; ++j) q.push_back(inst.g2.vertex(prefix + inner + std::to_string(j)));
    q.push_back(inst.g2.vertex(end));
    return q;
  };
  out.q1 = path("a1", "b", "a3", "");
  out.q2 = path("a2", "bp", "a4", "");
  out.q1_bar = path("a1", "b", "a3", "m");
  out.q2_bar = path("a2", "bp", "a4", "m");
  return out;
}

}  // namespace jcn
