#ifndef JCN_REDUCTIONS_HPP
#define JCN_REDUCTIONS_HPP

#include <array>
#include <string>
#include <vector>

#include "jcn/gadgets.hpp"
#include "jcn/graph.hpp"
#include "jcn/instance.hpp"
#include "jcn/oracle.hpp"
#include "jcn/receipt.hpp"

namespace jcn {

// ---------------------------------------------------------------------------
// Weighted -> unweighted

struct ExpandOptions {
  /// Subdivide every bunch edge and chain the subdivision vertices by a path.
  /// The output is simple, and anchor cycles run through a fixed copy so
  /// face anchors keep their meaning. The two ends of a bunch with two or
  /// more copies separate it, so 3-connectivity is not kept. Bunches of a
  /// single edge are left alone.
  bool preserve_simple_3conn = false;
  /// Largest weight that may be written out in unary.
  Weight unary_bound = 10'000'000;
};

/// Every edge of weight w becomes w unit edges routed side by side. Vertex
/// indices of the input are kept; new vertices and edges are appended. The
/// receipt (when given) gets the stage name and the bunch of every edge.
/// Throws InstanceError when a weight exceeds the unary bound.
FaJointInstance expand_weights(const FaJointInstance& inst, const ExpandOptions& options,
                               ReductionReceipt* receipt = nullptr);
AnchoredInstance expand_weights(const AnchoredInstance& inst, const ExpandOptions& options,
                                ReductionReceipt* receipt = nullptr);
GraphInstance expand_weights(const GraphInstance& inst, const ExpandOptions& options,
                             ReductionReceipt* receipt = nullptr);
/// The surface instance carries its own receipt, which is extended.
SurfaceJointInstance expand_weights(const SurfaceJointInstance& inst, const ExpandOptions& options);
Instance expand_weights(const Instance& inst, const ExpandOptions& options, ReductionReceipt* receipt = nullptr);

// ---------------------------------------------------------------------------
// Wheel blow-up

/// Every vertex v becomes a wheel with hub "<v>.hub" and rim "<v>.r<i>",
/// i < 3 deg(v), of weight 10 * W1 * W2 (W = total weight of each graph).
/// The edge at rotation position j of v uses rim vertices 3j .. 3j+2, and
/// each edge turns into three strands "<e>.s<q>" of the original weight.
SurfaceJointInstance three_connectify(const SurfaceJointInstance& inst);

/// Blows a joint drawing of `base` up into one of `three_connectify(base)`:
/// wheels sit at the vertices, strands run next to their edge, and every
/// crossing turns into a 3 x 3 grid of crossings. The drawing's rotation at
/// each original vertex must agree with the instance rotation.
JointDrawing blow_up_drawing(const SurfaceJointInstance& base, const JointDrawing& drawing,
                             const SurfaceJointInstance& blown);

// ---------------------------------------------------------------------------
// Face anchors -> surface

/// Where a dummy anchor goes: a facial cycle of G1 that is no anchor cycle
/// yet, and a vertex of G2 lying in that face in the intended drawing.
struct DummyHost {
  std::vector<VertexIndex> cycle;
  VertexIndex vertex = 0;
};
/// Extra face anchors for a higher target genus: per host, a new leaf of G2
/// hangs off the host vertex by a weight-1 edge and is anchored in the host
/// face. A drawing with every host vertex in its face extends at no cost.
struct DummyPadding {
  FaJointInstance instance;
  int count = 0;
};
DummyPadding add_dummy_anchors(const FaJointInstance& inst, const std::vector<DummyHost>& hosts);

/// H1 = G1 (weights times p) framed by weight-1 copies C_i' of the anchor
/// cycles, each carrying a torus gadget T_i; H2 = G2 (weights times p) with
/// an L gadget of thick weight t_i hung at every anchor a_i. Both come with
/// their embeddings in the surface of genus h. `upstream` is the receipt of
/// earlier stages; the result's receipt extends it.
SurfaceJointInstance fa_to_surface(const FaJointInstance& inst, const ReductionReceipt& upstream = {});

/// Named handles into an fa_to_surface output, for audits.
struct SurfaceFrames {
  std::vector<std::vector<VertexIndex>> cycles;       // C_i in H1
  std::vector<std::vector<VertexIndex>> copies;       // C_i' in H1 (may be longer than C_i)
  std::vector<std::vector<EdgeIndex>> matchings;      // C_i[j] - C_i'[j]
  std::vector<std::vector<VertexIndex>> torus_parts;  // V(T_i) - V(C_i')
  std::vector<std::vector<VertexIndex>> l_parts;      // V(L_i), anchor included
};
SurfaceFrames surface_frames(const FaJointInstance& inst, const SurfaceJointInstance& out);

// ---------------------------------------------------------------------------
// Anchored -> six face anchors

struct A2GroupReport {
  int group = 0;  // 1-based
  Weight min_cut = 0;
  Weight incident = 0;
  bool ok = false;
};
struct A2Report {
  bool ok = false;
  std::array<A2GroupReport, 4> groups;
};
/// For every group, the minimum cut between it and the rest of A2 against
/// the weight of the edges at the group.
A2Report validate_a2(const AnchoredInstance& inst);

/// One slot of the F+ boundary, in boundary order. `group` is 0 for a
/// position on R^1, R^3 or their mirrors (images of A1), and 1..4 for the
/// paths Q_1, Q_2, mirror Q_2, mirror Q_1 (images of the A2 groups).
struct BoundarySlot {
  int group = 0;
  VertexIndex vertex = 0;  // in F1+ for group 0, in F2+ otherwise
};
/// The cyclic boundary order of F+: top side right to left, bottom side left
/// to right, as drawn.
std::vector<BoundarySlot> fplus_boundary(const FPlusGadget& fplus);

struct Fa6Result {
  FaJointInstance instance;
  ReductionReceipt receipt;
  FPlusGadget fplus;
  std::array<int, 4> slot_of_group{};  // partition index -> boundary group 1..4
};
/// Builds F+ and glues G1 into the outer face of F1+ at the A1 images and G2
/// into the outer face of F2+ at the A2 images, so that the images follow the
/// boundary order. The boundary order lists the anchors clockwise around the
/// disc of the anchored drawing. The embeddings of G1 and G2 are derived
/// from the boundary order (any promise is ignored), and the glued ones
/// become the promises of the result.
Fa6Result anchored_to_fa6(const AnchoredInstance& src);

/// Dummy hosts inside F+: the ladder cells of F1+ around the inner vertices
/// of the Q paths, in the order Q_1, Q_2, mirror Q_2, mirror Q_1.
std::vector<DummyHost> fplus_dummy_hosts(const Fa6Result& fa6);

// ---------------------------------------------------------------------------
// Pipeline

enum class ExpandMode { always, never, within_bound };

struct PipelineOptions {
  int genus = 6;  // >= 6; every extra handle is a dummy anchor
  ExpandMode expand = ExpandMode::always;
  ExpandOptions expand_options{true};
};
/// anchored_to_fa6, dummy padding, fa_to_surface, three_connectify and the
/// unary expansion, with one receipt covering every stage.
SurfaceJointInstance full_pipeline(const AnchoredInstance& src, const PipelineOptions& options = {});

}  // namespace jcn

#endif
