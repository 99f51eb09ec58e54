#ifndef JCN_GRAPH_HPP
#define JCN_GRAPH_HPP

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace jcn {

/// Edge weights and crossing values. The reductions produce T^4-scale weights
/// with T = Omega(k^6), so every quantity is an exact big integer.
using Weight = boost::multiprecision::cpp_int;

using VertexIndex = std::size_t;
using EdgeIndex = std::size_t;

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

/// Raised for every structural violation of an instance or graph invariant.
class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string to_decimal(const Weight& w);
Weight parse_decimal(const std::string& text);

struct Edge {
  std::string id;
  VertexIndex u = 0;
  VertexIndex v = 0;
  Weight weight = 1;

  VertexIndex other(VertexIndex x) const { return x == u ? v : u; }
};

/// Loop-free weighted multigraph with opaque string vertex and edge ids.
/// Indices are dense and stable: vertices and edges are append-only.
class WeightedMultigraph {
 public:
  WeightedMultigraph() = default;

  VertexIndex add_vertex(const std::string& name);
  EdgeIndex add_edge(const std::string& id, const std::string& u, const std::string& v, Weight weight = 1);
  EdgeIndex add_edge(const std::string& id, VertexIndex u, VertexIndex v, Weight weight = 1);
  void set_weight(EdgeIndex e, Weight weight);

  std::size_t vertex_count() const { return names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const std::string& vertex_name(VertexIndex v) const { return names_.at(v); }
  const std::vector<std::string>& vertex_names() const { return names_; }
  bool has_vertex(const std::string& name) const { return vindex_.count(name) != 0; }
  VertexIndex vertex(const std::string& name) const;

  const Edge& edge(EdgeIndex e) const { return edges_.at(e); }
  const std::vector<Edge>& edges() const { return edges_; }
  bool has_edge(const std::string& id) const { return eindex_.count(id) != 0; }
  EdgeIndex edge_index(const std::string& id) const;

  const std::vector<EdgeIndex>& incident(VertexIndex v) const { return incidence_.at(v); }
  std::size_t degree(VertexIndex v) const { return incidence_.at(v).size(); }

  Weight total_weight() const;
  bool is_unit_weighted() const;

  friend bool operator==(const WeightedMultigraph& a, const WeightedMultigraph& b) {
    return a.names_ == b.names_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, VertexIndex> vindex_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, EdgeIndex> eindex_;
  std::vector<std::vector<EdgeIndex>> incidence_;
};

inline bool operator==(const Edge& a, const Edge& b) {
  return a.id == b.id && a.u == b.u && a.v == b.v && a.weight == b.weight;
}

/// Result of a relabeling operation: where each input vertex/edge ended up.
struct Relabeling {
  std::vector<VertexIndex> vertex_map;
  std::vector<EdgeIndex> edge_map;
};

/// Disjoint union. Names of `g` get `prefix_g`, names of `h` get `prefix_h`;
/// the union must have distinct names afterwards.
struct UnionResult {
  WeightedMultigraph graph;
  Relabeling left;
  Relabeling right;
};
UnionResult disjoint_union(const WeightedMultigraph& g, const WeightedMultigraph& h,
                           const std::string& prefix_g = "", const std::string& prefix_h = "");

/// Quotient by the equivalence generated by `pairs`. The surviving vertex of
/// each class is the first member in vertex order; edge ids are preserved.
struct IdentifyResult {
  WeightedMultigraph graph;
  std::vector<VertexIndex> vertex_map;  // old -> new
};
IdentifyResult identify_vertices(const WeightedMultigraph& g,
                                 const std::vector<std::pair<VertexIndex, VertexIndex>>& pairs);

/// Copy of `g` without the listed vertices (and their incident edges).
WeightedMultigraph remove_vertices(const WeightedMultigraph& g, const std::vector<VertexIndex>& drop);

/// Component label per vertex; returns number of components.
std::size_t connected_components(const WeightedMultigraph& g, std::vector<std::size_t>& label);
bool is_connected(const WeightedMultigraph& g);
bool is_simple(const WeightedMultigraph& g);

/// Articulation-point based: no vertex whose removal disconnects, n >= 3.
bool is_biconnected(const WeightedMultigraph& g);
/// Vertex removal followed by a biconnectivity test; n >= 4.
bool is_three_connected(const WeightedMultigraph& g);

}  // namespace jcn

#endif
