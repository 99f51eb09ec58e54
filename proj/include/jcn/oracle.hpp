#ifndef JCN_ORACLE_HPP
#define JCN_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jcn/embedding.hpp"
#include "jcn/graph.hpp"
#include "jcn/instance.hpp"

namespace jcn {

/// gamma(k) = (12k^5 - 11k^4 + 2k^3 - k^2 - 2k) / 12.
Weight gamma(int k);
/// sum_{j=1}^{k-1} (2k^4 + kj^2 + kj - 2k^3 j - j^3 - j^2).
Weight gamma_sum(int k);

/// k(k+1) T^2 + gamma(k) T.
Weight beta(int k, const Weight& T);
/// k(k+1) T^2 + 2 sum_{j=1}^{k-1} (k-j) T t_j.
Weight beta_sum(int k, const Weight& T);

/// (4k^3 + k^2 + k) T^3 + beta(k, T).
Weight canonical_fa_count(int k, const Weight& T);
/// (2 t_0 + 2 t_k) T^3 + beta_sum(k, T), from the ladder cut values.
Weight canonical_fa_count_from_cuts(int k, const Weight& T);
Weight canonical_fplus_count(int k, const Weight& T);

/// sum a_i b_{perm(i)} - sum a_i b_i for a strictly increasing and b strictly
/// decreasing.
Weight ordering_gap(const std::vector<Weight>& a, const std::vector<Weight>& b, const std::vector<std::size_t>& perm);

/// Per G2 edge, the G1 edges it crosses in order from its first endpoint.
struct CrossingPattern {
  std::vector<std::vector<EdgeIndex>> crossings;

  std::size_t size() const;
  friend bool operator==(const CrossingPattern&, const CrossingPattern&) = default;
};

/// Planarization of a joint drawing: every crossing is a degree-4 vertex.
/// Segments are oriented like the edge they come from.
struct JointDrawing {
  WeightedMultigraph graph;
  RotationSystem rotation;
  std::vector<int> vertex_side;            // 1 or 2; 0 for a crossing
  std::vector<VertexIndex> vertex_origin;  // original vertex, or crossing index
  std::vector<int> edge_side;
  std::vector<EdgeIndex> edge_origin;
  std::vector<std::pair<EdgeIndex, EdgeIndex>> crossings;  // (G1 edge, G2 edge)
};

/// Planarization of two straight-line drawings laid on top of each other.
/// Throws InstanceError on degenerate input: touching, overlapping, concurrent
/// crossings, or crossings inside one graph.
JointDrawing straight_line_drawing(const WeightedMultigraph& g1, const std::vector<Point>& coords1,
                                   const WeightedMultigraph& g2, const std::vector<Point>& coords2);

CrossingPattern crossing_pattern(const JointDrawing& d, std::size_t g2_edges);

/// Sum of w1 * w2 over the crossings, after checking that the drawing is a
/// valid joint drawing of the instance: every original edge is a chain of
/// segments, strands alternate at crossings, the planarization is plane, and
/// every anchor lies in a face bounded by its cycle. Throws InstanceError.
Weight witness_count(const FaJointInstance& inst, const JointDrawing& d);
/// Same for a surface instance: the planarization must fit the genus.
Weight witness_count(const SurfaceJointInstance& inst, const JointDrawing& d);

/// Length of a shortest noncontractible cycle in the dual of a toroidal
/// embedding.
std::size_t dual_edge_width_torus(const WeightedMultigraph& g, const RotationSystem& rs);

/// Every genus-0 rotation system of a connected graph, each exactly once.
std::vector<RotationSystem> plane_rotation_systems(const WeightedMultigraph& g);

struct OracleOptions {
  std::size_t max_edge_product = 24;
  int multiplicity_cap = 2;
};

struct OracleResult {
  std::optional<Weight> value;  // empty when above the bound
  std::uint64_t patterns_examined = 0;
  double elapsed_ms = 0;
  std::optional<JointDrawing> drawing;  // an optimal drawing when found
};

/// Minimum weighted crossing count over joint plane drawings honoring every
/// face anchor, by exhaustive search over increasing cost.
OracleResult fa_joint_planar_oracle(const FaJointInstance& inst, const Weight& max_crossings,
                                    const OracleOptions& options = {});

/// `oracle <instance-hash> <value|EXCEEDS> <patterns-examined> <elapsed-ms>`
std::string oracle_report_line(const FaJointInstance& inst, const OracleResult& result);

}  // namespace jcn

#endif
