#include "jcn/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>

namespace jcn {

std::string to_decimal(const Weight& w) { return w.str(); }

Weight parse_decimal(const std::string& text) {
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw InstanceError("not a non-negative decimal integer: '" + text + "'");
  }
  return Weight(text);
}

VertexIndex WeightedMultigraph::add_vertex(const std::string& name) {
  if (name.empty()) throw InstanceError("empty vertex id");
  auto [it, fresh] = vindex_.emplace(name, names_.size());
  if (!fresh) throw InstanceError("duplicate vertex id '" + name + "'");
  names_.push_back(name);
  incidence_.emplace_back();
  return it->second;
}

EdgeIndex WeightedMultigraph::add_edge(const std::string& id, const std::string& u, const std::string& v,
                                       Weight weight) {
  auto iu = vindex_.find(u);
  auto iv = vindex_.find(v);
  if (iu == vindex_.end()) throw InstanceError("edge '" + id + "' references unknown vertex '" + u + "'");
  if (iv == vindex_.end()) throw InstanceError("edge '" + id + "' references unknown vertex '" + v + "'");
  return add_edge(id, iu->second, iv->second, std::move(weight));
}

EdgeIndex WeightedMultigraph::add_edge(const std::string& id, VertexIndex u, VertexIndex v, Weight weight) {
  if (id.empty()) throw InstanceError("empty edge id");
  if (u >= names_.size() || v >= names_.size()) throw InstanceError("edge '" + id + "' has a dangling endpoint");
  if (u == v) throw InstanceError("edge '" + id + "' is a loop at '" + names_[u] + "'");
  if (weight < 1) throw InstanceError("edge '" + id + "' has non-positive weight");
  auto [it, fresh] = eindex_.emplace(id, edges_.size());
  if (!fresh) throw InstanceError("duplicate edge id '" + id + "'");
  edges_.push_back(Edge{id, u, v, std::move(weight)});
  incidence_[u].push_back(it->second);
  incidence_[v].push_back(it->second);
  return it->second;
}

void WeightedMultigraph::set_weight(EdgeIndex e, Weight weight) {
  if (weight < 1) throw InstanceError("edge '" + edges_.at(e).id + "' has non-positive weight");
  edges_.at(e).weight = std::move(weight);
}

VertexIndex WeightedMultigraph::vertex(const std::string& name) const {
  auto it = vindex_.find(name);
  if (it == vindex_.end()) throw InstanceError("unknown vertex '" + name + "'");
  return it->second;
}

EdgeIndex WeightedMultigraph::edge_index(const std::string& id) const {
  auto it = eindex_.find(id);
  if (it == eindex_.end()) throw InstanceError("unknown edge '" + id + "'");
  return it->second;
}

Weight WeightedMultigraph::total_weight() const {
  Weight sum = 0;
  for (const auto& e : edges_) sum += e.weight;
  return sum;
}

bool WeightedMultigraph::is_unit_weighted() const {
  return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.weight == 1; });
}

UnionResult disjoint_union(const WeightedMultigraph& g, const WeightedMultigraph& h, const std::string& prefix_g,
                           const std::string& prefix_h) {
  UnionResult out;
  auto copy = [&out](const WeightedMultigraph& src, const std::string& prefix, Relabeling& map) {
    map.vertex_map.resize(src.vertex_count());
    map.edge_map.resize(src.edge_count());
    for (VertexIndex v = 0; v < src.vertex_count(); ++v) {
      map.vertex_map[v] = out.graph.add_vertex(prefix + src.vertex_name(v));
    }
    for (EdgeIndex e = 0; e < src.edge_count(); ++e) {
      const Edge& ed = src.edge(e);
      map.edge_map[e] = out.graph.add_edge(prefix + ed.id, map.vertex_map[ed.u], map.vertex_map[ed.v], ed.weight);
    }
  };
  copy(g, prefix_g, out.left);
  copy(h, prefix_h, out.right);
  return out;
}

namespace {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent[b] = a;  // smallest index represents the class
  }
};

}  // namespace

IdentifyResult identify_vertices(const WeightedMultigraph& g,
                                 const std::vector<std::pair<VertexIndex, VertexIndex>>& pairs) {
  DisjointSets sets(g.vertex_count());
  for (auto [a, b] : pairs) {
    if (a >= g.vertex_count() || b >= g.vertex_count()) throw InstanceError("identification of unknown vertex");
    sets.unite(a, b);
  }
  for (const auto& e : g.edges()) {
    if (sets.find(e.u) == sets.find(e.v)) {
      throw InstanceError("identifying '" + g.vertex_name(e.u) + "' and '" + g.vertex_name(e.v) +
                          "' turns edge '" + e.id + "' into a loop");
    }
  }
  IdentifyResult out;
  out.vertex_map.assign(g.vertex_count(), npos);
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (sets.find(v) == v) out.vertex_map[v] = out.graph.add_vertex(g.vertex_name(v));
  }
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) out.vertex_map[v] = out.vertex_map[sets.find(v)];
  for (const auto& e : g.edges()) out.graph.add_edge(e.id, out.vertex_map[e.u], out.vertex_map[e.v], e.weight);
  return out;
}

WeightedMultigraph remove_vertices(const WeightedMultigraph& g, const std::vector<VertexIndex>& drop) {
  std::vector<bool> gone(g.vertex_count(), false);
  for (auto v : drop) gone.at(v) = true;
  WeightedMultigraph out;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (!gone[v]) out.add_vertex(g.vertex_name(v));
  }
  for (const auto& e : g.edges()) {
    if (!gone[e.u] && !gone[e.v]) out.add_edge(e.id, g.vertex_name(e.u), g.vertex_name(e.v), e.weight);
  }
  return out;
}

std::size_t connected_components(const WeightedMultigraph& g, std::vector<std::size_t>& label) {
  label.assign(g.vertex_count(), npos);
  std::size_t count = 0;
  for (VertexIndex s = 0; s < g.vertex_count(); ++s) {
    if (label[s] != npos) continue;
    std::queue<VertexIndex> q;
    q.push(s);
    label[s] = count;
    while (!q.empty()) {
      VertexIndex x = q.front();
      q.pop();
      for (EdgeIndex e : g.incident(x)) {
        VertexIndex y = g.edge(e).other(x);
        if (label[y] == npos) {
          label[y] = count;
          q.push(y);
        }
      }
    }
    ++count;
  }
  return count;
}

bool is_connected(const WeightedMultigraph& g) {
  std::vector<std::size_t> label;
  return connected_components(g, label) <= 1;
}

bool is_simple(const WeightedMultigraph& g) {
  std::set<std::pair<VertexIndex, VertexIndex>> seen;
  for (const auto& e : g.edges()) {
    auto key = std::minmax(e.u, e.v);
    if (!seen.insert({key.first, key.second}).second) return false;
  }
  return true;
}

namespace {

// Iterative Hopcroft-Tarjan low-link; `skip` is a vertex treated as deleted.
bool has_articulation_point(const WeightedMultigraph& g, VertexIndex skip) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> disc(n, npos), low(n, 0);
  std::size_t timer = 0;
  VertexIndex root = 0;
  while (root < n && root == skip) ++root;
  if (root >= n) return false;

  struct Frame {
    VertexIndex v;
    EdgeIndex parent_edge;
    std::size_t next;
  };
  std::vector<Frame> stack;
  stack.push_back({root, npos, 0});
  disc[root] = low[root] = timer++;
  std::size_t root_children = 0;
  while (!stack.empty()) {
    Frame& f = stack.back();
    const auto& inc = g.incident(f.v);
    if (f.next < inc.size()) {
      EdgeIndex e = inc[f.next++];
      if (e == f.parent_edge) continue;
      VertexIndex w = g.edge(e).other(f.v);
      if (w == skip) continue;
      if (disc[w] == npos) {
        disc[w] = low[w] = timer++;
        if (f.v == root) ++root_children;
        stack.push_back({w, e, 0});
      } else {
        low[f.v] = std::min(low[f.v], disc[w]);
      }
    } else {
      VertexIndex v = f.v;
      stack.pop_back();
      if (!stack.empty()) {
        VertexIndex p = stack.back().v;
        low[p] = std::min(low[p], low[v]);
        if (p != root && low[v] >= disc[p]) return true;
      }
    }
  }
  for (VertexIndex v = 0; v < n; ++v) {
    if (v != skip && disc[v] == npos) return true;  // disconnected counts as separable
  }
  return root_children > 1;
}

}  // namespace

bool is_biconnected(const WeightedMultigraph& g) {
  if (g.vertex_count() < 3) return false;
  return !has_articulation_point(g, npos);
}

bool is_three_connected(const WeightedMultigraph& g) {
  if (g.vertex_count() < 4) return false;
  if (has_articulation_point(g, npos)) return false;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (has_articulation_point(g, v)) return false;
  }
  return true;
}

}  // namespace jcn
