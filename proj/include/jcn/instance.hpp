#ifndef JCN_INSTANCE_HPP
#define JCN_INSTANCE_HPP

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "jcn/embedding.hpp"
#include "jcn/graph.hpp"
#include "jcn/receipt.hpp"

namespace jcn {

struct FaceAnchor {
  std::vector<VertexIndex> cycle;  // in g1
  VertexIndex anchor = 0;          // in g2

  friend bool operator==(const FaceAnchor&, const FaceAnchor&) = default;
};

struct FaJointInstance {
  std::string name1 = "G1";
  std::string name2 = "G2";
  WeightedMultigraph g1;
  WeightedMultigraph g2;
  std::vector<FaceAnchor> anchors;
  std::optional<RotationSystem> promise1;
  std::optional<RotationSystem> promise2;

  friend bool operator==(const FaJointInstance&, const FaJointInstance&) = default;
};

/// Entry of the boundary order: which graph (1 or 2) and the vertex.
struct BoundaryVertex {
  int side = 1;
  VertexIndex v = 0;

  friend bool operator==(const BoundaryVertex&, const BoundaryVertex&) = default;
};

struct AnchoredInstance {
  std::string name1 = "G1";
  std::string name2 = "G2";
  WeightedMultigraph g1;
  WeightedMultigraph g2;
  std::vector<BoundaryVertex> sigma;
  std::array<std::vector<VertexIndex>, 4> partition;  // groups of A2
  std::optional<RotationSystem> promise1;
  std::optional<RotationSystem> promise2;

  std::vector<VertexIndex> a1() const;
  std::vector<VertexIndex> a2() const;

  friend bool operator==(const AnchoredInstance&, const AnchoredInstance&) = default;
};

struct SurfaceJointInstance {
  std::string name1 = "H1";
  std::string name2 = "H2";
  int genus = 0;
  WeightedMultigraph h1;
  WeightedMultigraph h2;
  RotationSystem rotation1;
  RotationSystem rotation2;
  ReductionReceipt receipt;  // travels in a sidecar file, not in the instance text

  friend bool operator==(const SurfaceJointInstance&, const SurfaceJointInstance&) = default;
};

/// A single graph, optionally embedded; what the gadget generators emit.
struct GraphInstance {
  std::string name = "G";
  WeightedMultigraph graph;
  std::optional<RotationSystem> rotation;

  friend bool operator==(const GraphInstance&, const GraphInstance&) = default;
};

using Instance = std::variant<AnchoredInstance, FaJointInstance, SurfaceJointInstance, GraphInstance>;

void validate(const FaJointInstance& inst);
void validate(const AnchoredInstance& inst);
void validate(const SurfaceJointInstance& inst);
void validate(const GraphInstance& inst);
void validate(const Instance& inst);

/// Planar embedding of g1 with every anchor cycle facial: the promise when
/// present, otherwise one derived by the planarity machinery.
RotationSystem anchored_embedding(const FaJointInstance& inst);

}  // namespace jcn

#endif
