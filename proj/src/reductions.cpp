#include "jcn/reductions.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>

#include "jcn/flow.hpp"
#include "jcn/planarity.hpp"

namespace jcn {

namespace {

std::string side_key(int side, const std::string& id) { return std::to_string(side) + ":" + id; }

std::string fresh_vertex(const WeightedMultigraph& g, std::string name) {
  while (g.has_vertex(name)) name += "'";
  return name;
}

std::string fresh_edge(const WeightedMultigraph& g, std::string id) {
  while (g.has_edge(id)) id += "'";
  return id;
}

// ---------------------------------------------------------------------------
// Unary expansion

struct Expansion {
  WeightedMultigraph graph;
  std::optional<RotationSystem> rotation;
  // Per original edge, the lane of each copy: the edge at the u end and at
  // the v end (the same edge unless subdivided), and the subdivision vertex.
  std::vector<std::vector<EdgeIndex>> at_u, at_v;
  std::vector<std::vector<VertexIndex>> middle;
};

Weight checked_weight(const Edge& e, const ExpandOptions& options) {
  if (e.weight > options.unary_bound) {
    throw InstanceError("weight " + to_decimal(e.weight) + " of edge '" + e.id + "' exceeds the unary bound " +
                        to_decimal(options.unary_bound));
  }
  return e.weight;
}

// Copies are numbered 1..w counterclockwise at u, hence clockwise at v; the
// subdivision path runs from copy 1 to copy w.
Expansion expand_graph(const WeightedMultigraph& g, const RotationSystem* rs, const ExpandOptions& options, int side,
                       ReductionReceipt* receipt) {
  Expansion out;
  for (const auto& name : g.vertex_names()) out.graph.add_vertex(name);
  const std::size_t m = g.edge_count();
  out.at_u.resize(m);
  out.at_v.resize(m);
  out.middle.resize(m);
  std::vector<std::vector<EdgeIndex>> path(m);
  for (EdgeIndex e = 0; e < m; ++e) {
    const Edge& ed = g.edge(e);
    const std::size_t w = static_cast<std::size_t>(checked_weight(ed, options));
    if (w == 0) throw InstanceError("edge '" + ed.id + "' has weight 0");
    std::vector<std::string> ids;
    if (w == 1) {
      EdgeIndex c = out.graph.add_edge(ed.id, ed.u, ed.v);
      out.at_u[e].push_back(c);
      out.at_v[e].push_back(c);
      ids.push_back(ed.id);
    } else if (!options.preserve_simple_3conn) {
      for (std::size_t j = 1; j <= w; ++j) {
        EdgeIndex c = out.graph.add_edge(fresh_edge(g, ed.id + "/" + std::to_string(j)), ed.u, ed.v);
        out.at_u[e].push_back(c);
        out.at_v[e].push_back(c);
        ids.push_back(out.graph.edge(c).id);
      }
    } else {
      for (std::size_t j = 1; j <= w; ++j) {
        std::string base = ed.id + "/" + std::to_string(j);
        VertexIndex s = out.graph.add_vertex(fresh_vertex(g, base));
        EdgeIndex a = out.graph.add_edge(fresh_edge(g, base + "u"), ed.u, s);
        EdgeIndex b = out.graph.add_edge(fresh_edge(g, base + "v"), s, ed.v);
        out.middle[e].push_back(s);
        out.at_u[e].push_back(a);
        out.at_v[e].push_back(b);
        ids.push_back(out.graph.edge(a).id);
        ids.push_back(out.graph.edge(b).id);
      }
      for (std::size_t j = 1; j < w; ++j) {
        EdgeIndex pe = out.graph.add_edge(fresh_edge(g, ed.id + "/p" + std::to_string(j)), out.middle[e][j - 1],
                                          out.middle[e][j]);
        path[e].push_back(pe);
        ids.push_back(out.graph.edge(pe).id);
      }
    }
    if (receipt) receipt->bunches[side_key(side, ed.id)] = ids;
  }
  if (rs) {
    RotationSystem r;
    r.order.resize(out.graph.vertex_count());
    for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
      for (EdgeIndex e : rs->order[v]) {
        if (g.edge(e).u == v) {
          r.order[v].insert(r.order[v].end(), out.at_u[e].begin(), out.at_u[e].end());
        } else {
          r.order[v].insert(r.order[v].end(), out.at_v[e].rbegin(), out.at_v[e].rend());
        }
      }
    }
    // Subdivision vertex j: towards v, up the path, towards u, down the path.
    for (EdgeIndex e = 0; e < m; ++e) {
      const auto& mid = out.middle[e];
      for (std::size_t j = 0; j < mid.size(); ++j) {
        auto& rot = r.order[mid[j]];
        rot.push_back(out.at_v[e][j]);
        if (j + 1 < mid.size()) rot.push_back(path[e][j]);
        rot.push_back(out.at_u[e][j]);
        if (j > 0) rot.push_back(path[e][j - 1]);
      }
    }
    out.rotation = std::move(r);
  }
  return out;
}

void note_expansion(ReductionReceipt* receipt, const ExpandOptions& options) {
  if (!receipt) return;
  receipt->stages.push_back("expand_weights");
  receipt->subdivided = options.preserve_simple_3conn;
}

}  // namespace

FaJointInstance expand_weights(const FaJointInstance& inst, const ExpandOptions& options, ReductionReceipt* receipt) {
  validate(inst);
  note_expansion(receipt, options);
  // The anchor faces must be tracked through the subdivision, which needs an
  // embedding; without subdivision the cycles keep their vertex sequences.
  RotationSystem rs1 = anchored_embedding(inst);
  auto x1 = expand_graph(inst.g1, &rs1, options, 1, receipt);
  auto x2 = expand_graph(inst.g2, inst.promise2 ? &*inst.promise2 : nullptr, options, 2, receipt);
  FaJointInstance out;
  out.name1 = inst.name1;
  out.name2 = inst.name2;
  out.g1 = x1.graph;
  out.g2 = x2.graph;
  if (inst.promise1) out.promise1 = x1.rotation;
  out.promise2 = x2.rotation;
  auto faces = trace_faces(inst.g1, rs1);
  for (const auto& a : inst.anchors) {
    FaceAnchor na{a.cycle, a.anchor};
    if (options.preserve_simple_3conn) {
      // The face on the right of u -> v runs along copy 1 of the bunch, the
      // face on the right of v -> u along copy w.
      const Face& f = faces.at(find_face_with_cycle(inst.g1, faces, a.cycle));
      na.cycle.clear();
      for (Dart d : f.walk) {
        na.cycle.push_back(tail(inst.g1, d));
        const auto& mid = x1.middle[d.edge];
        if (!mid.empty()) na.cycle.push_back(d.forward ? mid.front() : mid.back());
      }
    }
    out.anchors.push_back(na);
  }
  return out;
}

AnchoredInstance expand_weights(const AnchoredInstance& inst, const ExpandOptions& options, ReductionReceipt* receipt) {
  validate(inst);
  note_expansion(receipt, options);
  auto x1 = expand_graph(inst.g1, inst.promise1 ? &*inst.promise1 : nullptr, options, 1, receipt);
  auto x2 = expand_graph(inst.g2, inst.promise2 ? &*inst.promise2 : nullptr, options, 2, receipt);
  AnchoredInstance out = inst;
  out.g1 = x1.graph;
  out.g2 = x2.graph;
  out.promise1 = x1.rotation;
  out.promise2 = x2.rotation;
  return out;
}

GraphInstance expand_weights(const GraphInstance& inst, const ExpandOptions& options, ReductionReceipt* receipt) {
  validate(inst);
  note_expansion(receipt, options);
  auto x = expand_graph(inst.graph, inst.rotation ? &*inst.rotation : nullptr, options, 1, receipt);
  GraphInstance out;
  out.name = inst.name;
  out.graph = x.graph;
  out.rotation = x.rotation;
  return out;
}

SurfaceJointInstance expand_weights(const SurfaceJointInstance& inst, const ExpandOptions& options) {
  validate(inst);
  SurfaceJointInstance out;
  out.name1 = inst.name1;
  out.name2 = inst.name2;
  out.genus = inst.genus;
  out.receipt = inst.receipt;
  note_expansion(&out.receipt, options);
  auto x1 = expand_graph(inst.h1, &inst.rotation1, options, 1, &out.receipt);
  auto x2 = expand_graph(inst.h2, &inst.rotation2, options, 2, &out.receipt);
  out.h1 = x1.graph;
  out.h2 = x2.graph;
  out.rotation1 = *x1.rotation;
  out.rotation2 = *x2.rotation;
  return out;
}

Instance expand_weights(const Instance& inst, const ExpandOptions& options, ReductionReceipt* receipt) {
  return std::visit(
      [&](const auto& x) -> Instance {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, SurfaceJointInstance>) {
          auto out = expand_weights(x, options);
          if (receipt) *receipt = out.receipt;
          return out;
        } else {
          return expand_weights(x, options, receipt);
        }
      },
      inst);
}

// ---------------------------------------------------------------------------
// Wheel blow-up

namespace {

struct Wheels {
  EmbeddedGraph embedded;
  std::vector<VertexIndex> hub;
  std::vector<std::vector<VertexIndex>> rim;
  std::vector<std::array<EdgeIndex, 3>> strands;
};

Wheels blow_up(const WeightedMultigraph& g, const RotationSystem& rs, const Weight& wheel_weight) {
  Wheels out;
  auto& b = out.embedded.graph;
  const std::size_t n = g.vertex_count();
  out.hub.resize(n);
  out.rim.resize(n);
  std::vector<std::vector<EdgeIndex>> rim_edges(n), spokes(n);
  for (VertexIndex v = 0; v < n; ++v) {
    const std::size_t d = g.degree(v);
    if (d == 0) throw InstanceError("vertex '" + g.vertex_name(v) + "' has degree 0");
    const std::string& name = g.vertex_name(v);
    out.hub[v] = b.add_vertex(name + ".hub");
    for (std::size_t i = 0; i < 3 * d; ++i) out.rim[v].push_back(b.add_vertex(name + ".r" + std::to_string(i)));
    for (std::size_t i = 0; i < 3 * d; ++i) {
      rim_edges[v].push_back(
          b.add_edge(name + ".rim" + std::to_string(i), out.rim[v][i], out.rim[v][(i + 1) % (3 * d)], wheel_weight));
    }
    for (std::size_t i = 0; i < 3 * d; ++i) {
      spokes[v].push_back(b.add_edge(name + ".sp" + std::to_string(i), out.hub[v], out.rim[v][i], wheel_weight));
    }
  }
  auto position = [&](VertexIndex v, EdgeIndex e) {
    const auto& rot = rs.order[v];
    return static_cast<std::size_t>(std::find(rot.begin(), rot.end(), e) - rot.begin());
  };
  std::vector<EdgeIndex> ext(b.vertex_count(), npos);
  out.strands.resize(g.edge_count());
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    std::size_t ju = position(ed.u, e), jv = position(ed.v, e);
    // Strand 0 is the rightmost one seen from u towards v.
    for (int q = 0; q < 3; ++q) {
      VertexIndex a = out.rim[ed.u][3 * ju + q];
      VertexIndex c = out.rim[ed.v][3 * jv + 2 - q];
      EdgeIndex s = b.add_edge(ed.id + ".s" + std::to_string(q), a, c, ed.weight);
      out.strands[e][q] = s;
      ext[a] = s;
      ext[c] = s;
    }
  }
  auto& r = out.embedded.rotation;
  r.order.resize(b.vertex_count());
  for (VertexIndex v = 0; v < n; ++v) {
    const std::size_t len = out.rim[v].size();
    r.order[out.hub[v]] = spokes[v];
    for (std::size_t i = 0; i < len; ++i) {
      r.order[out.rim[v][i]] = {ext[out.rim[v][i]], rim_edges[v][i], spokes[v][i], rim_edges[v][(i + len - 1) % len]};
    }
  }
  return out;
}

}  // namespace

SurfaceJointInstance three_connectify(const SurfaceJointInstance& inst) {
  validate(inst);
  if (!is_connected(inst.h1) || !is_connected(inst.h2)) throw InstanceError("three_connectify needs connected graphs");
  Weight wheel = 10 * inst.h1.total_weight() * inst.h2.total_weight();
  auto w1 = blow_up(inst.h1, inst.rotation1, wheel);
  auto w2 = blow_up(inst.h2, inst.rotation2, wheel);
  SurfaceJointInstance out;
  out.name1 = inst.name1;
  out.name2 = inst.name2;
  out.genus = inst.genus;
  out.h1 = w1.embedded.graph;
  out.h2 = w2.embedded.graph;
  out.rotation1 = w1.embedded.rotation;
  out.rotation2 = w2.embedded.rotation;
  out.receipt = inst.receipt;
  out.receipt.stages.push_back("three_connectify");
  out.receipt.scale = 9;
  out.receipt.wheel_weight = wheel;
  return out;
}

namespace {

// One original edge as drawn: its crossings in order from the first endpoint,
// with the segments before and after each.
struct Chain {
  std::vector<std::size_t> crossings;
  EdgeIndex first = npos, last = npos;
};

std::vector<Chain> trace_chains(const JointDrawing& d, const WeightedMultigraph& g, int side,
                                const std::vector<VertexIndex>& at, std::vector<EdgeIndex>& back,
                                std::vector<EdgeIndex>& fwd) {
  const auto& P = d.graph;
  std::vector<Chain> out(g.edge_count());
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    VertexIndex cur = at[g.edge(e).u];
    EdgeIndex seg = npos;
    for (EdgeIndex s : P.incident(cur)) {
      if (d.edge_side[s] == side && d.edge_origin[s] == e && P.edge(s).u == cur) seg = s;
    }
    if (seg == npos) throw InstanceError("drawing has no segment of '" + g.edge(e).id + "'");
    out[e].first = seg;
    while (true) {
      cur = P.edge(seg).other(cur);
      if (d.vertex_side[cur] != 0) break;
      std::size_t c = d.vertex_origin[cur];
      back[c] = seg;
      const auto& rot = d.rotation.order[cur];
      auto it = std::find(rot.begin(), rot.end(), seg);
      seg = rot[(it - rot.begin() + 2) % 4];
      fwd[c] = seg;
      out[e].crossings.push_back(c);
    }
    out[e].last = seg;
  }
  return out;
}

bool cyclic_equal(const std::vector<EdgeIndex>& a, const std::vector<EdgeIndex>& b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  for (std::size_t s = 0; s < a.size(); ++s) {
    bool same = true;
    for (std::size_t i = 0; i < a.size() && same; ++i) same = a[(s + i) % a.size()] == b[i];
    if (same) return true;
  }
  return false;
}

}  // namespace

JointDrawing blow_up_drawing(const SurfaceJointInstance& base, const JointDrawing& drawing,
                             const SurfaceJointInstance& blown) {
  const auto& P = drawing.graph;
  std::array<const WeightedMultigraph*, 2> g{&base.h1, &base.h2};
  std::array<const WeightedMultigraph*, 2> bg{&blown.h1, &blown.h2};
  std::array<const RotationSystem*, 2> brs{&blown.rotation1, &blown.rotation2};
  std::array<std::vector<VertexIndex>, 2> at;
  for (int s = 0; s < 2; ++s) at[s].assign(g[s]->vertex_count(), npos);
  for (VertexIndex v = 0; v < P.vertex_count(); ++v) {
    if (drawing.vertex_side[v] != 0) at[drawing.vertex_side[v] - 1].at(drawing.vertex_origin[v]) = v;
  }
  const std::size_t nx = drawing.crossings.size();
  std::array<std::vector<EdgeIndex>, 2> back{std::vector<EdgeIndex>(nx), std::vector<EdgeIndex>(nx)};
  std::array<std::vector<EdgeIndex>, 2> fwd = back;
  std::array<std::vector<Chain>, 2> chains;
  for (int s = 0; s < 2; ++s) chains[s] = trace_chains(drawing, *g[s], s + 1, at[s], back[s], fwd[s]);

  // The drawing must turn around each vertex like the instance does.
  const std::array<const RotationSystem*, 2> rs{&base.rotation1, &base.rotation2};
  for (int s = 0; s < 2; ++s) {
    for (VertexIndex v = 0; v < g[s]->vertex_count(); ++v) {
      std::vector<EdgeIndex> seen;
      for (EdgeIndex seg : drawing.rotation.order[at[s][v]]) seen.push_back(drawing.edge_origin[seg]);
      if (!cyclic_equal(seen, rs[s]->order[v])) {
        throw InstanceError("drawing rotation at '" + g[s]->vertex_name(v) + "' differs from the instance");
      }
    }
  }

  // f crosses e from right to left when the rotation reads e+, f+, e-, f-.
  std::vector<bool> right_to_left(nx);
  for (std::size_t c = 0; c < nx; ++c) {
    std::vector<EdgeIndex> want{fwd[0][c], fwd[1][c], back[0][c], back[1][c]};
    VertexIndex xv = npos;
    for (VertexIndex v = 0; v < P.vertex_count(); ++v) {
      if (drawing.vertex_side[v] == 0 && drawing.vertex_origin[v] == c) xv = v;
    }
    right_to_left[c] = cyclic_equal(drawing.rotation.order[xv], want);
  }

  JointDrawing out;
  auto& Q = out.graph;
  std::array<std::vector<VertexIndex>, 2> bat;
  for (int s = 0; s < 2; ++s) {
    for (VertexIndex v = 0; v < bg[s]->vertex_count(); ++v) {
      bat[s].push_back(Q.add_vertex(std::to_string(s + 1) + ":" + bg[s]->vertex_name(v)));
      out.vertex_side.push_back(s + 1);
      out.vertex_origin.push_back(v);
    }
  }
  // Grid crossing (c, a, b): strand a of the G1 edge meets strand b of the G2 edge.
  auto grid = [](std::size_t c, int a, int b) { return 9 * c + 3 * static_cast<std::size_t>(a) + b; };
  std::vector<VertexIndex> xv(9 * nx);
  for (std::size_t c = 0; c < nx; ++c) {
    auto [e1, e2] = drawing.crossings[c];
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        std::size_t id = grid(c, a, b);
        xv[id] = Q.add_vertex("x" + std::to_string(c) + "." + std::to_string(a) + std::to_string(b));
        out.vertex_side.push_back(0);
        out.vertex_origin.push_back(id);
      }
    }
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        out.crossings.push_back({bg[0]->edge_index(g[0]->edge(e1).id + ".s" + std::to_string(a)),
                                 bg[1]->edge_index(g[1]->edge(e2).id + ".s" + std::to_string(b))});
      }
    }
  }

  // Segments; per grid crossing the segment before and after on each strand.
  std::array<std::vector<EdgeIndex>, 2> xback{std::vector<EdgeIndex>(9 * nx), std::vector<EdgeIndex>(9 * nx)};
  std::array<std::vector<EdgeIndex>, 2> xfwd = xback;
  std::array<std::vector<EdgeIndex>, 2> first, last;
  for (int s = 0; s < 2; ++s) {
    first[s].assign(bg[s]->edge_count(), npos);
    last[s].assign(bg[s]->edge_count(), npos);
  }
  auto lay = [&](int s, EdgeIndex be, const std::vector<std::size_t>& stops) {
    const Edge& ed = bg[s]->edge(be);
    VertexIndex prev = bat[s][ed.u];
    for (std::size_t j = 0; j <= stops.size(); ++j) {
      VertexIndex next = j < stops.size() ? xv[stops[j]] : bat[s][ed.v];
      EdgeIndex seg = Q.add_edge(std::to_string(s + 1) + ":" + ed.id + "#" + std::to_string(j), prev, next, ed.weight);
      out.edge_side.push_back(s + 1);
      out.edge_origin.push_back(be);
      if (j == 0) first[s][be] = seg;
      if (j == stops.size()) last[s][be] = seg;
      if (j > 0) xfwd[s][stops[j - 1]] = seg;
      if (j < stops.size()) xback[s][stops[j]] = seg;
      prev = next;
    }
  };
  for (int s = 0; s < 2; ++s) {
    std::vector<bool> strand(bg[s]->edge_count(), false);
    for (EdgeIndex e = 0; e < g[s]->edge_count(); ++e) {
      for (int q = 0; q < 3; ++q) {
        EdgeIndex be = bg[s]->edge_index(g[s]->edge(e).id + ".s" + std::to_string(q));
        strand[be] = true;
        std::vector<std::size_t> stops;
        for (std::size_t c : chains[s][e].crossings) {
          bool rl = right_to_left[c];
          for (int i = 0; i < 3; ++i) {
            if (s == 0) {
              int b = rl ? 2 - i : i;  // strand q of the G1 edge meets these G2 strands
              stops.push_back(grid(c, q, b));
            } else {
              int a = rl ? i : 2 - i;
              stops.push_back(grid(c, a, q));
            }
          }
        }
        lay(s, be, stops);
      }
    }
    for (EdgeIndex be = 0; be < bg[s]->edge_count(); ++be) {
      if (!strand[be]) lay(s, be, {});
    }
  }
  out.rotation.order.resize(Q.vertex_count());
  for (int s = 0; s < 2; ++s) {
    for (VertexIndex v = 0; v < bg[s]->vertex_count(); ++v) {
      for (EdgeIndex be : brs[s]->order[v]) {
        out.rotation.order[bat[s][v]].push_back(bg[s]->edge(be).u == v ? first[s][be] : last[s][be]);
      }
    }
  }
  for (std::size_t c = 0; c < nx; ++c) {
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        std::size_t id = grid(c, a, b);
        auto& rot = out.rotation.order[xv[id]];
        if (right_to_left[c]) {
          rot = {xfwd[0][id], xfwd[1][id], xback[0][id], xback[1][id]};
        } else {
          rot = {xfwd[0][id], xback[1][id], xback[0][id], xfwd[1][id]};
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Face anchors -> surface

DummyPadding add_dummy_anchors(const FaJointInstance& inst, const std::vector<DummyHost>& hosts) {
  validate(inst);
  DummyPadding out;
  out.instance = inst;
  out.count = static_cast<int>(hosts.size());
  if (hosts.empty()) return out;
  auto faces = trace_faces(inst.g1, anchored_embedding(inst));
  auto& g2 = out.instance.g2;
  for (std::size_t d = 0; d < hosts.size(); ++d) {
    const auto& host = hosts[d];
    if (find_face_with_cycle(inst.g1, faces, host.cycle) == npos) throw InstanceError("dummy host cycle is not facial");
    for (const auto& a : out.instance.anchors) {
      if (same_cyclic_sequence(a.cycle, host.cycle, true)) throw InstanceError("dummy host cycle is already anchored");
    }
    if (host.vertex >= inst.g2.vertex_count()) throw InstanceError("dummy host vertex out of range");
    const std::string name = "dummy" + std::to_string(d + 1);
    VertexIndex leaf = g2.add_vertex(fresh_vertex(g2, name));
    EdgeIndex stem = g2.add_edge(fresh_edge(g2, name + ".stem"), host.vertex, leaf);
    out.instance.anchors.push_back({host.cycle, leaf});
    if (out.instance.promise2) {
      auto& r = *out.instance.promise2;
      r.order.resize(g2.vertex_count());
      r.order[host.vertex].push_back(stem);
      r.order[leaf] = {stem};
    }
  }
  validate(out.instance);
  return out;
}

namespace {

RotationSystem plane_rotation(const WeightedMultigraph& g, const std::optional<RotationSystem>& promise,
                              const std::string& name) {
  if (promise) return *promise;
  auto res = is_planar(g);
  if (!res.planar) throw InstanceError(name + " is not planar");
  return res.witness;
}

}  // namespace

SurfaceJointInstance fa_to_surface(const FaJointInstance& inst, const ReductionReceipt& upstream) {
  validate(inst);
  const int h = static_cast<int>(inst.anchors.size());
  if (h < 1) throw InstanceError("fa_to_surface needs at least one face anchor");
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < i; ++j) {
      if (same_cyclic_sequence(inst.anchors[i].cycle, inst.anchors[j].cycle, true)) {
        throw InstanceError("two face anchors share an anchor cycle");
      }
    }
  }
  RotationSystem rs1 = anchored_embedding(inst);
  RotationSystem rs2 = plane_rotation(inst.g2, inst.promise2, inst.name2);

  SurfaceJointInstance out;
  out.genus = h;
  auto& r = out.receipt;
  r = upstream;
  r.stages.push_back("fa_to_surface");
  r.h = h;
  r.m = inst.g1.total_weight() * inst.g2.total_weight();
  r.p = 8 * r.m;
  r.t = (r.m + 1) * r.p * r.p;
  r.t_list.clear();
  r.g_list.clear();
  for (int i = 1; i <= h; ++i) {
    r.t_list.push_back((h + 1 - i) * r.t);
    r.g_list.push_back(5 + i);
  }

  // H1: G1 scaled, every anchor face framed by C_i' carrying T_i.
  auto& H1 = out.h1;
  H1 = inst.g1;
  for (EdgeIndex e = 0; e < H1.edge_count(); ++e) H1.set_weight(e, H1.edge(e).weight * r.p);
  RotationSystem& R1 = out.rotation1;
  R1 = rs1;
  auto faces = trace_faces(inst.g1, rs1);
  for (int i = 1; i <= h; ++i) {
    const auto& cycle = inst.anchors[i - 1].cycle;
    const Face f = faces.at(find_face_with_cycle(inst.g1, faces, cycle));
    const std::size_t L = f.walk.size(), Lc = std::max<std::size_t>(L, 4);
    std::string prefix = "F" + std::to_string(i) + ".";
    std::vector<VertexIndex> copy;
    for (std::size_t j = 0; j < Lc; ++j) copy.push_back(H1.add_vertex(fresh_vertex(H1, prefix + "c" + std::to_string(j))));
    std::vector<EdgeIndex> ce;
    for (std::size_t j = 0; j < Lc; ++j) {
      ce.push_back(H1.add_edge(fresh_edge(H1, prefix + "ce" + std::to_string(j)), copy[j], copy[(j + 1) % Lc]));
    }
    R1.order.resize(H1.vertex_count());
    for (std::size_t j = 0; j < Lc; ++j) R1.order[copy[j]] = {ce[(j + Lc - 1) % Lc], ce[j]};
    // Walk `along` visits copy j+1 after edge j; walk `against` meets the
    // copies in decreasing order, matching the face of C_i cyclically.
    Face along, against;
    for (std::size_t j = 0; j < Lc; ++j) along.walk.push_back(Dart{ce[j], true});
    for (std::size_t q = 0; q < Lc; ++q) against.walk.push_back(Dart{ce[(2 * Lc - 1 - q) % Lc], false});
    // Corner q of `against` is at copy Lc - 1 - q; copy p pairs with corner p of f.
    std::vector<FaceLink> links;
    for (std::size_t p = 0; p < L; ++p) {
      links.push_back({p, Lc - 1 - p, fresh_edge(H1, prefix + "m" + std::to_string(p)), 1});
    }
    join_faces(H1, R1, f, against, links);
    attach_torus_gadget(H1, R1, along, {i, h}, "T" + std::to_string(i) + ".");
  }

  // H2: G2 scaled, an L gadget hung at every anchor.
  auto& H2 = out.h2;
  H2 = inst.g2;
  for (EdgeIndex e = 0; e < H2.edge_count(); ++e) H2.set_weight(e, H2.edge(e).weight * r.p);
  RotationSystem& R2 = out.rotation2;
  R2 = rs2;
  for (int i = 1; i <= h; ++i) {
    auto L = l_gadget(r.t_list[i - 1], "L" + std::to_string(i) + ".");
    const auto& lg = L.embedded.graph;
    const VertexIndex a = inst.anchors[i - 1].anchor;
    std::vector<VertexIndex> vmap(lg.vertex_count());
    for (VertexIndex v = 0; v < lg.vertex_count(); ++v) {
      vmap[v] = v == L.attach ? a : H2.add_vertex(fresh_vertex(H2, lg.vertex_name(v)));
    }
    std::vector<EdgeIndex> emap(lg.edge_count());
    for (EdgeIndex e = 0; e < lg.edge_count(); ++e) {
      const Edge& ed = lg.edge(e);
      emap[e] = H2.add_edge(fresh_edge(H2, ed.id), vmap[ed.u], vmap[ed.v], ed.weight);
    }
    R2.order.resize(H2.vertex_count());
    for (VertexIndex v = 0; v < lg.vertex_count(); ++v) {
      for (EdgeIndex e : L.embedded.rotation.order[v]) R2.order[vmap[v]].push_back(emap[e]);
    }
  }
  if (euler_genus(H1, R1) != h || euler_genus(H2, R2) != h) {
    throw InstanceError("internal: fa_to_surface embeddings do not have genus " + std::to_string(h));
  }
  return out;
}

SurfaceFrames surface_frames(const FaJointInstance& inst, const SurfaceJointInstance& out) {
  SurfaceFrames f;
  const auto& H1 = out.h1;
  const auto& H2 = out.h2;
  const std::size_t h = inst.anchors.size();
  for (std::size_t i = 1; i <= h; ++i) {
    std::string fp = "F" + std::to_string(i) + ".", tp = "T" + std::to_string(i) + ".", lp = "L" + std::to_string(i) + ".";
    std::vector<VertexIndex> cycle, copy, torus, lpart;
    std::vector<EdgeIndex> matching;
    for (VertexIndex v : inst.anchors[i - 1].cycle) cycle.push_back(H1.vertex(inst.g1.vertex_name(v)));
    for (std::size_t j = 0; H1.has_vertex(fp + "c" + std::to_string(j)); ++j) copy.push_back(H1.vertex(fp + "c" + std::to_string(j)));
    for (std::size_t j = 0; H1.has_edge(fp + "m" + std::to_string(j)); ++j) matching.push_back(H1.edge_index(fp + "m" + std::to_string(j)));
    for (VertexIndex v = 0; v < H1.vertex_count(); ++v) {
      if (H1.vertex_name(v).rfind(tp, 0) == 0) torus.push_back(v);
    }
    lpart.push_back(inst.anchors[i - 1].anchor);
    for (VertexIndex v = 0; v < H2.vertex_count(); ++v) {
      if (H2.vertex_name(v).rfind(lp, 0) == 0) lpart.push_back(v);
    }
    f.cycles.push_back(cycle);
    f.copies.push_back(copy);
    f.matchings.push_back(matching);
    f.torus_parts.push_back(torus);
    f.l_parts.push_back(lpart);
  }
  return f;
}

// ---------------------------------------------------------------------------
// Anchored -> six face anchors

A2Report validate_a2(const AnchoredInstance& inst) {
  validate(inst);
  A2Report report;
  report.ok = true;
  for (int i = 0; i < 4; ++i) {
    auto& g = report.groups[i];
    g.group = i + 1;
    const auto& group = inst.partition[i];
    std::vector<VertexIndex> rest;
    for (int j = 0; j < 4; ++j) {
      if (j != i) rest.insert(rest.end(), inst.partition[j].begin(), inst.partition[j].end());
    }
    g.incident = boundary_weight(inst.g2, group);
    g.min_cut = rest.empty() ? Weight(0) : min_cut_weight(inst.g2, group, rest);
    g.ok = !group.empty() && !rest.empty() && g.min_cut == g.incident;
    report.ok = report.ok && g.ok;
  }
  return report;
}

std::vector<BoundarySlot> fplus_boundary(const FPlusGadget& fp) {
  const int k = fp.params.k;
  std::vector<BoundarySlot> out;
  for (int j = k; j >= 0; --j) {
    out.push_back({0, fp.r1[j]});
    if (j >= 1) out.push_back({1, fp.q1[j]});
  }
  for (int j = 0; j <= k; ++j) {
    out.push_back({0, fp.r3[j]});
    if (j < k) out.push_back({2, fp.q2[j + 1]});
  }
  for (int j = k; j >= 0; --j) {
    out.push_back({0, fp.r3_bar[j]});
    if (j >= 1) out.push_back({3, fp.q2_bar[j]});
  }
  for (int j = 0; j <= k; ++j) {
    out.push_back({0, fp.r1_bar[j]});
    if (j < k) out.push_back({4, fp.q1_bar[j + 1]});
  }
  return out;
}

namespace {

/// Rotation of `g` drawn in a disc with `anchors` on the boundary, met in
/// the given order when walking the boundary with the disc on the right.
/// For each anchor, the edges of `g` at it in counterclockwise order
/// starting next to the boundary.
struct DiscEmbedding {
  RotationSystem rotation;
  std::vector<std::vector<EdgeIndex>> blocks;
};

DiscEmbedding disc_embedding(const WeightedMultigraph& g, const std::vector<VertexIndex>& anchors,
                             const std::string& name) {
  DiscEmbedding out;
  const std::size_t n = anchors.size();
  WeightedMultigraph aug = g;
  std::vector<VertexIndex> ring;
  for (std::size_t i = 0; i < n; ++i) {
    ring.push_back(anchors[i]);
    for (int q = 0; q < 2; ++q) ring.push_back(aug.add_vertex(fresh_vertex(aug, "boundary." + std::to_string(i) + "." + std::to_string(q))));
  }
  for (std::size_t i = 0; i < ring.size(); ++i) {
    aug.add_edge(fresh_edge(aug, "boundary.e" + std::to_string(i)), ring[i], ring[(i + 1) % ring.size()]);
  }
  std::optional<RotationSystem> rs;
  if (n == 0) {
    auto res = is_planar(g);
    if (res.planar) rs = res.witness;
  } else {
    rs = planar_embedding_with_facial_cycles(aug, {ring});
  }
  if (!rs) throw InstanceError(name + " has no planar drawing with its anchors on the boundary in the given order");
  if (n == 0) {
    out.rotation = *rs;
    return out;
  }
  auto find_ring_face = [&](const RotationSystem& r) {
    auto faces = trace_faces(aug, r);
    std::size_t idx = find_face_with_cycle(aug, faces, ring);
    if (idx == npos) throw InstanceError("internal: boundary cycle of " + name + " is not facial");
    return faces[idx];
  };
  Face f = find_ring_face(*rs);
  // The ring face lies outside the disc, so its walk meets the anchors in
  // reverse order.
  if (n >= 3) {
    std::vector<VertexIndex> met;
    for (Dart d : f.walk) {
      if (head(aug, d) < g.vertex_count()) met.push_back(head(aug, d));
    }
    std::vector<VertexIndex> want(anchors.rbegin(), anchors.rend());
    if (!same_cyclic_sequence(met, want, false)) {
      rs = mirror(*rs);
      f = find_ring_face(*rs);
    }
  }
  out.blocks.resize(n);
  for (std::size_t pos = 0; pos < f.walk.size(); ++pos) {
    const Dart in = f.walk[pos], leave = f.walk[(pos + 1) % f.walk.size()];
    const VertexIndex a = head(aug, in);
    if (a >= g.vertex_count()) continue;
    const auto& order = rs->order[a];
    std::size_t i = std::find(order.begin(), order.end(), leave.edge) - order.begin();
    std::vector<EdgeIndex> block;
    for (std::size_t s = 1; s < order.size(); ++s) {
      EdgeIndex e = order[(i + s) % order.size()];
      if (e == in.edge) break;
      block.push_back(e);
    }
    std::size_t which = std::find(anchors.begin(), anchors.end(), a) - anchors.begin();
    out.blocks[which] = block;
  }
  out.rotation.order.assign(g.vertex_count(), {});
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    for (EdgeIndex e : rs->order[v]) {
      if (e < g.edge_count()) out.rotation.order[v].push_back(e);
    }
  }
  return out;
}

/// Glues `g` into the outer face of the gadget graph `host`: each anchor
/// becomes its image, and its edges go in at the corner facing away from
/// the gadget.
void glue_outside(WeightedMultigraph& host, RotationSystem& host_rs, const std::vector<Point>& coords,
                  const WeightedMultigraph& g, const DiscEmbedding& disc, const std::vector<VertexIndex>& anchors,
                  const std::vector<VertexIndex>& images, std::int64_t top_y) {
  std::vector<VertexIndex> vmap(g.vertex_count(), npos);
  for (std::size_t i = 0; i < anchors.size(); ++i) vmap[anchors[i]] = images[i];
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (vmap[v] == npos) vmap[v] = host.add_vertex(fresh_vertex(host, "g." + g.vertex_name(v)));
  }
  std::vector<EdgeIndex> emap(g.edge_count());
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    emap[e] = host.add_edge(fresh_edge(host, "g." + ed.id), vmap[ed.u], vmap[ed.v], ed.weight);
  }
  host_rs.order.resize(host.vertex_count());
  std::vector<bool> anchor(g.vertex_count(), false);
  for (VertexIndex a : anchors) anchor[a] = true;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (anchor[v]) continue;
    for (EdgeIndex e : disc.rotation.order[v]) host_rs.order[vmap[v]].push_back(emap[e]);
  }
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    const VertexIndex at = images[i];
    const Point here = coords[at];
    const Point outward{0, here.y >= top_y ? 1 : -1};
    auto& order = host_rs.order[at];
    auto direction = [&](EdgeIndex e) {
      const Edge& ed = host.edge(e);
      const Point there = coords[ed.u == at ? ed.v : ed.u];
      return Point{there.x - here.x, there.y - here.y};
    };
    // After the edge with the largest direction below `outward`, or the
    // largest overall when none is below.
    std::optional<std::size_t> best;
    for (std::size_t s = 0; s < order.size(); ++s) {
      Point d = direction(order[s]);
      bool below = angle_less(d, outward);
      if (!best) {
        best = s;
        continue;
      }
      Point b = direction(order[*best]);
      bool best_below = angle_less(b, outward);
      if (below != best_below ? below : angle_less(b, d)) best = s;
    }
    std::vector<EdgeIndex> block;
    for (EdgeIndex e : disc.blocks[i]) block.push_back(emap[e]);
    order.insert(order.begin() + static_cast<std::ptrdiff_t>(*best + 1), block.begin(), block.end());
  }
}

}  // namespace

Fa6Result anchored_to_fa6(const AnchoredInstance& src) {
  validate(src);
  auto a2 = validate_a2(src);
  if (!a2.ok) {
    std::string bad;
    for (const auto& g : a2.groups) {
      if (!g.ok) bad += " " + std::to_string(g.group);
    }
    throw InstanceError("condition (A2) fails for group(s)" + bad);
  }
  const auto& sigma = src.sigma;
  auto group_of = [&](VertexIndex v) {
    for (int i = 0; i < 4; ++i) {
      if (std::find(src.partition[i].begin(), src.partition[i].end(), v) != src.partition[i].end()) return i;
    }
    throw InstanceError("A2 vertex '" + src.g2.vertex_name(v) + "' is in no group");
  };
  // Start the boundary order at the first group's block.
  std::size_t start = sigma.size();
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (sigma[i].side == 2 && group_of(sigma[i].v) == 0) {
      start = i;
      break;
    }
  }
  if (start == sigma.size()) throw InstanceError("the first A2 group does not occur in the boundary order");
  std::vector<BoundaryVertex> order(sigma.begin() + static_cast<std::ptrdiff_t>(start), sigma.end());
  order.insert(order.end(), sigma.begin(), sigma.begin() + static_cast<std::ptrdiff_t>(start));

  Fa6Result res;
  // Slots follow the order in which the groups come up.
  std::vector<int> seen;
  for (const auto& b : order) {
    if (b.side != 2) continue;
    int g = group_of(b.v);
    if (seen.empty() || seen.back() != g) {
      if (std::find(seen.begin(), seen.end(), g) != seen.end()) {
        throw InstanceError("A2 group " + std::to_string(g + 1) + " is not contiguous in the boundary order");
      }
      seen.push_back(g);
    }
  }
  for (int g = 0; g < 4; ++g) {
    if (std::find(seen.begin(), seen.end(), g) == seen.end()) seen.push_back(g);
  }
  for (int s = 0; s < 4; ++s) res.slot_of_group[seen[s]] = s + 1;

  std::size_t largest = src.a1().size();
  for (const auto& p : src.partition) largest = std::max(largest, p.size());
  const Weight W1 = src.g1.total_weight(), W2 = src.g2.total_weight();
  int k = static_cast<int>(largest) + 4;
  std::vector<VertexIndex> image(order.size());
  for (;; ++k) {
    if (k > static_cast<int>(largest + order.size()) + 8) {
      throw InstanceError("internal: no room for the anchors on the F+ boundary");
    }
    const LadderParams params{k, default_T(k, W1, W2)};
    res.fplus = mirror_join(build_fa_instance(params));
    const auto slots = fplus_boundary(res.fplus);
    std::size_t at = 0;
    bool fits = true;
    for (std::size_t i = 0; i < order.size() && fits; ++i) {
      const int want = order[i].side == 1 ? 0 : res.slot_of_group[group_of(order[i].v)];
      while (at < slots.size() && slots[at].group != want) ++at;
      if (at == slots.size()) {
        fits = false;
      } else {
        image[i] = slots[at++].vertex;
      }
    }
    if (fits) break;
  }

  const auto& fp = res.fplus;
  const auto& F = fp.instance;
  FaJointInstance& out = res.instance;
  out = F;
  out.name1 = "H1";
  out.name2 = "H2";
  std::vector<VertexIndex> anchors1, anchors2, images1, images2;
  for (std::size_t i = 0; i < order.size(); ++i) {
    (order[i].side == 1 ? anchors1 : anchors2).push_back(order[i].v);
    (order[i].side == 1 ? images1 : images2).push_back(image[i]);
  }
  auto disc1 = disc_embedding(src.g1, anchors1, src.name1);
  auto disc2 = disc_embedding(src.g2, anchors2, src.name2);
  glue_outside(out.g1, *out.promise1, fp.coords1, src.g1, disc1, anchors1, images1, 3);
  glue_outside(out.g2, *out.promise2, fp.coords2, src.g2, disc2, anchors2, images2, 2);

  if (!is_connected(out.g1) || !is_connected(out.g2)) {
    throw InstanceError("a component of the input carries no anchor");
  }
  if (euler_genus(out.g1, *out.promise1) != 0 || euler_genus(out.g2, *out.promise2) != 0) {
    throw InstanceError("internal: glued embedding is not plane");
  }
  auto faces = trace_faces(out.g1, *out.promise1);
  for (const auto& a : out.anchors) {
    if (find_face_with_cycle(out.g1, faces, a.cycle) == npos) {
      throw InstanceError("internal: an F+ anchor cycle stopped being facial");
    }
  }
  validate(out);

  auto& r = res.receipt;
  r.stages.push_back("anchored_to_fa6");
  r.k = k;
  r.T = fp.params.T;
  r.crgj = canonical_fplus_count(k, r.T);
  r.w_list.assign(4, 0);
  for (int g = 0; g < 4; ++g) r.w_list[res.slot_of_group[g] - 1] = boundary_weight(src.g2, src.partition[g]);
  for (std::size_t i = 0; i < anchors1.size(); ++i) r.alpha[src.g1.vertex_name(anchors1[i])] = F.g1.vertex_name(images1[i]);
  for (std::size_t i = 0; i < anchors2.size(); ++i) r.beta[src.g2.vertex_name(anchors2[i])] = F.g2.vertex_name(images2[i]);
  return res;
}

std::vector<DummyHost> fplus_dummy_hosts(const Fa6Result& fa6) {
  const auto& fp = fa6.fplus;
  const auto& F = fp.instance;
  auto faces = trace_faces(F.g1, *F.promise1);
  std::vector<DummyHost> out;
  for (const auto* path : {&fp.q1, &fp.q2, &fp.q2_bar, &fp.q1_bar}) {
    for (std::size_t j = 1; j + 1 < path->size(); ++j) {
      const Point p = fp.coords2[(*path)[j]];
      for (const auto& f : faces) {
        auto cyc = f.vertices(F.g1);
        if (cyc.size() != 4) continue;
        std::int64_t x0 = INT64_MAX, x1 = INT64_MIN, y0 = INT64_MAX, y1 = INT64_MIN;
        for (VertexIndex v : cyc) {
          x0 = std::min(x0, fp.coords1[v].x);
          x1 = std::max(x1, fp.coords1[v].x);
          y0 = std::min(y0, fp.coords1[v].y);
          y1 = std::max(y1, fp.coords1[v].y);
        }
        if (!(x0 < p.x && p.x < x1 && y0 < p.y && p.y < y1)) continue;
        bool anchored = false;
        for (const auto& a : F.anchors) anchored = anchored || same_cyclic_sequence(a.cycle, cyc, true);
        if (!anchored) out.push_back({cyc, (*path)[j]});
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pipeline

SurfaceJointInstance full_pipeline(const AnchoredInstance& src, const PipelineOptions& options) {
  if (options.genus < 6) throw InstanceError("the pipeline targets genus 6 or more");
  auto fa6 = anchored_to_fa6(src);
  ReductionReceipt receipt = fa6.receipt;
  auto hosts = fplus_dummy_hosts(fa6);
  const auto extra = static_cast<std::size_t>(options.genus - 6);
  if (extra > hosts.size()) throw InstanceError("not enough room in F+ for " + std::to_string(extra) + " dummy anchors");
  hosts.resize(extra);
  auto padded = add_dummy_anchors(fa6.instance, hosts);
  receipt.dummy_anchors = padded.count;
  auto surface = fa_to_surface(padded.instance, receipt);
  auto blown = three_connectify(surface);
  bool expand = options.expand == ExpandMode::always;
  if (options.expand == ExpandMode::within_bound) {
    expand = true;
    for (const auto* g : {&blown.h1, &blown.h2}) {
      for (const auto& e : g->edges()) expand = expand && e.weight <= options.expand_options.unary_bound;
    }
  }
  return expand ? expand_weights(blown, options.expand_options) : blown;
}

}  // namespace jcn
