#ifndef JCN_EMBEDDING_HPP
#define JCN_EMBEDDING_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "jcn/graph.hpp"

namespace jcn {

/// Cyclic order of incident edges around every vertex. Loops are excluded
/// from the whole library, so an edge index names an edge-end unambiguously
/// once the vertex is fixed.
///
/// Convention: rotations are counterclockwise, and a face is traced by
/// arriving at a vertex along an edge and leaving along the edge that follows
/// it in that vertex's rotation, so a face lies to the right of its darts
/// (bounded faces of a plane drawing come out clockwise). Orientation
/// preserving vs reversing is therefore only metadata; `mirror` flips every
/// rotation.
struct RotationSystem {
  std::vector<std::vector<EdgeIndex>> order;

  friend bool operator==(const RotationSystem&, const RotationSystem&) = default;
};

/// Directed edge-end: an edge traversed away from one endpoint.
struct Dart {
  EdgeIndex edge = 0;
  bool forward = true;  // true: u -> v

  friend bool operator==(const Dart&, const Dart&) = default;
  friend auto operator<=>(const Dart&, const Dart&) = default;
};

inline VertexIndex tail(const WeightedMultigraph& g, Dart d) { return d.forward ? g.edge(d.edge).u : g.edge(d.edge).v; }
inline VertexIndex head(const WeightedMultigraph& g, Dart d) { return d.forward ? g.edge(d.edge).v : g.edge(d.edge).u; }
inline Dart reversed(Dart d) { return Dart{d.edge, !d.forward}; }
inline std::size_t dart_code(Dart d) { return 2 * d.edge + (d.forward ? 0 : 1); }

struct Face {
  std::vector<Dart> walk;  // closed boundary walk
  std::vector<VertexIndex> vertices(const WeightedMultigraph& g) const;
};

/// Throws InstanceError unless every incident edge-end appears exactly once.
void validate_rotation(const WeightedMultigraph& g, const RotationSystem& rs);

std::vector<Face> trace_faces(const WeightedMultigraph& g, const RotationSystem& rs);

/// face index of every dart, indexed by dart_code.
std::vector<std::size_t> face_index_of_darts(const WeightedMultigraph& g, const std::vector<Face>& faces);

/// Orientable genus h with V - E + F = 2 - 2h. Rejects disconnected graphs.
int euler_genus(const WeightedMultigraph& g, const RotationSystem& rs);

/// Sum of per-component genera; accepts disconnected graphs.
int total_genus(const WeightedMultigraph& g, const RotationSystem& rs);

RotationSystem mirror(const RotationSystem& rs);

/// Rotation of a straight-line drawing with integer coordinates, sorted
/// counterclockwise by direction.
struct Point {
  std::int64_t x = 0;
  std::int64_t y = 0;
  friend bool operator==(const Point&, const Point&) = default;
};
RotationSystem rotation_from_coordinates(const WeightedMultigraph& g, const std::vector<Point>& coords);

/// Counterclockwise angular order of direction vectors (exact).
bool angle_less(Point a, Point b);

/// Sub-rotation on the edges kept by `keep_edge`, vertices unchanged.
RotationSystem restrict_rotation(const WeightedMultigraph& g, const RotationSystem& rs,
                                 const std::vector<bool>& keep_edge);

/// Inserts `edge` into the rotation at `at`, directly after `after`.
void insert_after(RotationSystem& rs, VertexIndex at, EdgeIndex after, EdgeIndex edge);

/// A corner of a face: the angle at head(walk[pos]) between walk[pos] and
/// walk[pos + 1].
inline VertexIndex corner_vertex(const WeightedMultigraph& g, const Face& f, std::size_t pos) {
  return head(g, f.walk.at(pos));
}

/// Joins two faces with new edges, one per corner pair (pos in `a`, pos in
/// `b`). Pairs must be listed with `a` positions increasing and `b`
/// positions decreasing cyclically (matching cyclic order); the first edge
/// merges the two faces, every further edge splits the merged face, so the
/// genus of the union is the sum of the genera when `a` and `b` come from
/// different components. Appends edges to `g` and their ends to `rs`.
struct FaceLink {
  std::size_t pos_a;
  std::size_t pos_b;
  std::string id;
  Weight weight = 1;
};
std::vector<EdgeIndex> join_faces(WeightedMultigraph& g, RotationSystem& rs, const Face& a, const Face& b,
                                  const std::vector<FaceLink>& links);

/// Contracts the listed edges (which must form a matching of the graph),
/// keeping the name of the endpoint `keep` of each. The embedding genus is
/// preserved.
struct Contraction {
  EdgeIndex edge;
  VertexIndex keep;
};
struct ContractResult {
  WeightedMultigraph graph;
  RotationSystem rotation;
  std::vector<VertexIndex> vertex_map;  // old -> new
  std::vector<EdgeIndex> edge_map;      // old -> new (npos for contracted)
};
ContractResult contract_matching(const WeightedMultigraph& g, const RotationSystem& rs,
                                 const std::vector<Contraction>& contractions);

/// A graph with an embedding.
struct EmbeddedGraph {
  WeightedMultigraph graph;
  RotationSystem rotation;
};

/// Disjoint union of two embedded graphs (rotations carried over).
struct EmbeddedUnion {
  EmbeddedGraph result;
  Relabeling left;
  Relabeling right;
};
EmbeddedUnion embedded_union(const EmbeddedGraph& a, const EmbeddedGraph& b, const std::string& prefix_a = "",
                             const std::string& prefix_b = "");

/// Finds a face whose boundary vertex sequence equals `cycle` cyclically,
/// in either direction. Returns npos when none exists.
std::size_t find_face_with_cycle(const WeightedMultigraph& g, const std::vector<Face>& faces,
                                 const std::vector<VertexIndex>& cycle);

bool same_cyclic_sequence(const std::vector<VertexIndex>& a, const std::vector<VertexIndex>& b,
                          bool allow_reversal);

}  // namespace jcn

#endif
