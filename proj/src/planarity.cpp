#include "jcn/planarity.hpp"

#include <algorithm>
#include <map>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/graph/graph_traits.hpp>

namespace jcn {

namespace {

using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                         boost::property<boost::vertex_index_t, int>,
                                         boost::property<boost::edge_index_t, int>>;
using BoostEdge = boost::graph_traits<BoostGraph>::edge_descriptor;

}  // namespace

EdgeIndex find_edge(const WeightedMultigraph& g, VertexIndex a, VertexIndex b) {
  for (EdgeIndex e : g.incident(a)) {
    if (g.edge(e).other(a) == b) return e;
  }
  return npos;
}

PlanarityResult is_planar(const WeightedMultigraph& g) {
  // Boyer-Myrvold on the simple underlying graph; parallel classes are
  // re-expanded afterwards, ascending at the smaller endpoint and descending
  // at the larger one so the copies bound empty 2-gons.
  std::map<std::pair<VertexIndex, VertexIndex>, std::vector<EdgeIndex>> classes;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    auto [a, b] = std::minmax(g.edge(e).u, g.edge(e).v);
    classes[{a, b}].push_back(e);
  }
  BoostGraph bg(g.vertex_count());
  std::vector<std::pair<VertexIndex, VertexIndex>> simple_edges;
  for (const auto& [key, members] : classes) {
    boost::add_edge(key.first, key.second, bg);
    simple_edges.push_back(key);
  }
  auto edge_index = boost::get(boost::edge_index, bg);
  int next = 0;
  boost::graph_traits<BoostGraph>::edge_iterator ei, ei_end;
  for (boost::tie(ei, ei_end) = boost::edges(bg); ei != ei_end; ++ei) boost::put(edge_index, *ei, next++);

  std::vector<std::vector<BoostEdge>> storage(boost::num_vertices(bg));
  auto embedding = boost::make_iterator_property_map(storage.begin(), boost::get(boost::vertex_index, bg));
  PlanarityResult out;
  out.planar = boost::boyer_myrvold_planarity_test(boost::boyer_myrvold_params::graph = bg,
                                                   boost::boyer_myrvold_params::embedding = embedding);
  if (!out.planar) return out;
  out.witness.order.resize(g.vertex_count());
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    for (const BoostEdge& be : storage[v]) {
      auto key = simple_edges[static_cast<std::size_t>(boost::get(edge_index, be))];
      const auto& members = classes.at(key);
      if (v == key.first) {
        out.witness.order[v].insert(out.witness.order[v].end(), members.begin(), members.end());
      } else {
        out.witness.order[v].insert(out.witness.order[v].end(), members.rbegin(), members.rend());
      }
    }
  }
  return out;
}

namespace {

// Auxiliary graph for the facial-cycle search. Every anchor edge is
// subdivided and each cycle gets an apex joined to its vertices and to its
// subdivision vertices. Edge e of g keeps index e as the half at its u end.
struct ApexGraph {
  WeightedMultigraph aug;
  std::vector<EdgeIndex> far_half;           // per g edge: half at the v end, or npos
  std::vector<EdgeIndex> original;           // per aug edge: g edge it stands for, or npos
  std::vector<std::size_t> spoke_cycle;      // per aug edge: cycle of a spoke to a g vertex, or npos
  std::vector<std::vector<EdgeIndex>> cycle_edges;
};

std::string unused_prefix(const WeightedMultigraph& g) {
  std::string prefix = "__apex";
  auto clashes = [&](const std::string& p) {
    for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
      if (g.vertex_name(v).rfind(p, 0) == 0) return true;
    }
    for (const auto& e : g.edges()) {
      if (e.id.rfind(p, 0) == 0) return true;
    }
    return false;
  };
  while (clashes(prefix)) prefix += "_";
  return prefix;
}

ApexGraph build_apex_graph(const WeightedMultigraph& g, const std::vector<std::vector<VertexIndex>>& cycles) {
  ApexGraph a;
  const std::string prefix = unused_prefix(g);
  a.cycle_edges.resize(cycles.size());
  std::vector<bool> on_cycle(g.edge_count(), false);
  // Parallel copies go round-robin to the cycles using a pair, so two faces
  // through the pair need not share one copy.
  std::map<std::pair<VertexIndex, VertexIndex>, std::size_t> used;
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    const auto& c = cycles[i];
    for (std::size_t j = 0; j < c.size(); ++j) {
      const VertexIndex x = c[j], y = c[(j + 1) % c.size()];
      std::vector<EdgeIndex> copies;
      for (EdgeIndex e : g.incident(x)) {
        if (g.edge(e).other(x) == y) copies.push_back(e);
      }
      const EdgeIndex e = copies.empty() ? npos : copies[used[std::minmax(x, y)]++ % copies.size()];
      if (e == npos) {
        throw InstanceError("anchor cycle is not a cycle: '" + g.vertex_name(c[j]) + "' and '" +
                            g.vertex_name(c[(j + 1) % c.size()]) + "' are not adjacent");
      }
      a.cycle_edges[i].push_back(e);
      on_cycle[e] = true;
    }
  }
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) a.aug.add_vertex(g.vertex_name(v));
  std::vector<VertexIndex> middle(g.edge_count(), npos);
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    if (on_cycle[e]) middle[e] = a.aug.add_vertex(prefix + "_s" + std::to_string(e));
  }
  auto add = [&](const std::string& id, VertexIndex u, VertexIndex v, EdgeIndex orig, std::size_t cycle) {
    EdgeIndex f = a.aug.add_edge(id, u, v);
    a.original.push_back(orig);
    a.spoke_cycle.push_back(cycle);
    return f;
  };
  a.far_half.assign(g.edge_count(), npos);
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const auto& ed = g.edge(e);
    add(ed.id, ed.u, middle[e] == npos ? ed.v : middle[e], e, npos);
  }
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    if (middle[e] != npos) a.far_half[e] = add(prefix + "_h" + std::to_string(e), middle[e], g.edge(e).v, e, npos);
  }
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    VertexIndex z = a.aug.add_vertex(prefix + std::to_string(i));
    const std::string id = prefix + std::to_string(i) + "_";
    for (std::size_t j = 0; j < cycles[i].size(); ++j) {
      add(id + "v" + std::to_string(j), z, cycles[i][j], npos, i);
      add(id + "s" + std::to_string(j), z, middle[a.cycle_edges[i][j]], npos, npos);
    }
  }
  return a;
}

// Half of g edge e incident to g vertex v in the auxiliary graph.
EdgeIndex half_at(const WeightedMultigraph& g, const ApexGraph& a, EdgeIndex e, VertexIndex v) {
  return g.edge(e).u == v || a.far_half[e] == npos ? e : a.far_half[e];
}

// Anything drawn inside an apex triangle at a g vertex hangs off that vertex
// alone, so it can move to any corner outside the triangles. Returns false
// when no such corner exists.
bool clear_triangles_at(const WeightedMultigraph& g, const ApexGraph& a, const std::vector<std::vector<VertexIndex>>& cycles,
                        VertexIndex v, std::vector<EdgeIndex>& rot) {
  // The two cycle halves flanking spoke `sp`.
  auto flanks = [&](EdgeIndex sp) {
    const std::size_t i = a.spoke_cycle[sp];
    const auto& c = cycles[i];
    const std::size_t j = static_cast<std::size_t>(std::find(c.begin(), c.end(), v) - c.begin());
    return std::pair{half_at(g, a, a.cycle_edges[i][j], v), half_at(g, a, a.cycle_edges[i][(j + c.size() - 1) % c.size()], v)};
  };
  auto is_flank = [&](EdgeIndex sp, EdgeIndex e) {
    auto [x, y] = flanks(sp);
    return e == x || e == y;
  };
  for (std::size_t guard = 0; guard <= rot.size(); ++guard) {
    const std::size_t n = rot.size();
    // First spoke with something between it and a flank.
    std::size_t lo = 0, len = 0;
    for (std::size_t k = 0; k < n && len == 0; ++k) {
      if (a.spoke_cycle[rot[k]] == npos) continue;
      std::size_t fwd = 1;
      while (!is_flank(rot[k], rot[(k + fwd) % n])) ++fwd;
      if (fwd > 1) {
        lo = k + 1, len = fwd - 1;
        break;
      }
      std::size_t back = 1;
      while (!is_flank(rot[k], rot[(k + n - back) % n])) ++back;
      if (back > 1) lo = k + n - back + 1, len = back - 1;
    }
    if (len == 0) return true;
    std::vector<EdgeIndex> block, rest;
    for (std::size_t t = 0; t < len; ++t) block.push_back(rot[(lo + t) % n]);
    for (std::size_t t = 0; t < n - len; ++t) rest.push_back(rot[(lo + len + t) % n]);
    // A corner is free unless it joins a spoke to one of its flanks.
    const std::size_t m = rest.size();
    std::size_t corner = npos;
    for (std::size_t k = 0; k < m && corner == npos; ++k) {
      EdgeIndex x = rest[k], y = rest[(k + 1) % m];
      bool inside = (a.spoke_cycle[x] != npos && is_flank(x, y)) || (a.spoke_cycle[y] != npos && is_flank(y, x));
      if (!inside) corner = k;
    }
    if (corner == npos) return false;
    rot.assign(rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(corner) + 1);
    rot.insert(rot.end(), block.begin(), block.end());
    rot.insert(rot.end(), rest.begin() + static_cast<std::ptrdiff_t>(corner) + 1, rest.end());
  }
  throw InstanceError("internal: apex triangles did not settle");
}

}  // namespace

std::optional<RotationSystem> planar_embedding_with_facial_cycles(const WeightedMultigraph& g,
                                                                  const std::vector<std::vector<VertexIndex>>& cycles) {
  // One apex per distinct cycle; duplicates share a face.
  std::vector<std::vector<VertexIndex>> distinct;
  for (const auto& c : cycles) {
    if (c.size() < 3) throw InstanceError("anchor cycle shorter than 3");
    std::vector<VertexIndex> sorted = c;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InstanceError("anchor cycle repeats a vertex");
    }
    bool dup = std::any_of(distinct.begin(), distinct.end(),
                           [&](const auto& d) { return same_cyclic_sequence(c, d, true); });
    if (!dup) distinct.push_back(c);
  }
  const ApexGraph a = build_apex_graph(g, distinct);
  auto res = is_planar(a.aug);
  if (!res.planar) return std::nullopt;
  RotationSystem rs = res.witness;
  RotationSystem out;
  out.order.resize(g.vertex_count());
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (!clear_triangles_at(g, a, distinct, v, rs.order[v])) return std::nullopt;
    for (EdgeIndex e : rs.order[v]) {
      if (a.original[e] != npos) out.order[v].push_back(a.original[e]);
    }
  }
  auto faces = trace_faces(g, out);
  for (const auto& c : distinct) {
    if (find_face_with_cycle(g, faces, c) == npos) {
      throw InstanceError("internal: could not realize an anchor cycle as a face");
    }
  }
  return out;
}

}  // namespace jcn
