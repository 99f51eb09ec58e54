#include "jcn/instance.hpp"

#include <algorithm>
#include <set>

#include "jcn/planarity.hpp"

namespace jcn {

std::vector<VertexIndex> AnchoredInstance::a1() const {
  std::vector<VertexIndex> out;
  for (const auto& b : sigma) {
    if (b.side == 1) out.push_back(b.v);
  }
  return out;
}

std::vector<VertexIndex> AnchoredInstance::a2() const {
  std::vector<VertexIndex> out;
  for (const auto& b : sigma) {
    if (b.side == 2) out.push_back(b.v);
  }
  return out;
}

namespace {

void check_cycle(const WeightedMultigraph& g, const std::vector<VertexIndex>& cycle) {
  if (cycle.size() < 3) throw InstanceError("anchor cycle has fewer than 3 vertices");
  std::set<VertexIndex> seen;
  for (auto v : cycle) {
    if (v >= g.vertex_count()) throw InstanceError("anchor cycle references an unknown vertex");
    if (!seen.insert(v).second) throw InstanceError("anchor cycle repeats vertex '" + g.vertex_name(v) + "'");
  }
  for (std::size_t j = 0; j < cycle.size(); ++j) {
    VertexIndex a = cycle[j], b = cycle[(j + 1) % cycle.size()];
    if (find_edge(g, a, b) == npos) {
      throw InstanceError("anchor cycle is not a cycle: '" + g.vertex_name(a) + "' and '" + g.vertex_name(b) +
                          "' are not adjacent");
    }
  }
}

void check_planar_rotation(const WeightedMultigraph& g, const RotationSystem& rs, const std::string& what) {
  validate_rotation(g, rs);
  if (total_genus(g, rs) != 0) throw InstanceError(what + " is not a planar embedding");
}

}  // namespace

RotationSystem anchored_embedding(const FaJointInstance& inst) {
  std::vector<std::vector<VertexIndex>> cycles;
  for (const auto& a : inst.anchors) cycles.push_back(a.cycle);
  if (inst.promise1) {
    check_planar_rotation(inst.g1, *inst.promise1, "promise embedding of " + inst.name1);
    auto faces = trace_faces(inst.g1, *inst.promise1);
    for (const auto& c : cycles) {
      if (find_face_with_cycle(inst.g1, faces, c) == npos) {
        throw InstanceError("anchor cycle through '" + inst.g1.vertex_name(c[0]) +
                            "' is not facial in the promise embedding");
      }
    }
    return *inst.promise1;
  }
  auto rs = planar_embedding_with_facial_cycles(inst.g1, cycles);
  if (!rs) throw InstanceError("no planar embedding of " + inst.name1 + " has every anchor cycle facial");
  return *rs;
}

void validate(const FaJointInstance& inst) {
  std::set<VertexIndex> anchors;
  for (const auto& a : inst.anchors) {
    check_cycle(inst.g1, a.cycle);
    if (a.anchor >= inst.g2.vertex_count()) throw InstanceError("anchor vertex out of range");
    if (!anchors.insert(a.anchor).second) {
      throw InstanceError("anchor vertex '" + inst.g2.vertex_name(a.anchor) + "' used twice");
    }
  }
  anchored_embedding(inst);
  if (inst.promise2) check_planar_rotation(inst.g2, *inst.promise2, "promise embedding of " + inst.name2);
}

void validate(const AnchoredInstance& inst) {
  std::set<std::pair<int, VertexIndex>> seen;
  for (const auto& b : inst.sigma) {
    if (b.side != 1 && b.side != 2) throw InstanceError("boundary entry on unknown side");
    const auto& g = b.side == 1 ? inst.g1 : inst.g2;
    if (b.v >= g.vertex_count()) throw InstanceError("boundary entry out of range");
    if (!seen.insert({b.side, b.v}).second) {
      throw InstanceError("boundary order repeats '" + g.vertex_name(b.v) + "'");
    }
  }
  auto a2 = inst.a2();
  std::vector<int> group(inst.g2.vertex_count(), -1);
  for (int i = 0; i < 4; ++i) {
    if (inst.partition[i].empty()) throw InstanceError("partition group " + std::to_string(i + 1) + " is empty");
    for (auto v : inst.partition[i]) {
      if (v >= inst.g2.vertex_count()) throw InstanceError("partition references an unknown vertex");
      if (!seen.count({2, v})) {
        throw InstanceError("partition vertex '" + inst.g2.vertex_name(v) + "' is not on the boundary");
      }
      if (group[v] != -1) throw InstanceError("partition vertex '" + inst.g2.vertex_name(v) + "' listed twice");
      group[v] = i;
    }
  }
  for (auto v : a2) {
    if (group[v] == -1) throw InstanceError("boundary vertex '" + inst.g2.vertex_name(v) + "' is in no group");
  }
  // Each group is one cyclic run of the boundary order restricted to A2.
  std::size_t changes = 0;
  for (std::size_t i = 0; i < a2.size(); ++i) {
    if (group[a2[i]] != group[a2[(i + 1) % a2.size()]]) ++changes;
  }
  if (changes != 4) throw InstanceError("partition groups are not consecutive in the boundary order");
  if (!is_connected(inst.g1) || !is_connected(inst.g2)) throw InstanceError("anchored instance graphs must be connected");
  if (!is_planar(inst.g1).planar || !is_planar(inst.g2).planar) {
    throw InstanceError("anchored instance graphs must be planar");
  }
  if (inst.promise1) validate_rotation(inst.g1, *inst.promise1);
  if (inst.promise2) validate_rotation(inst.g2, *inst.promise2);
}

void validate(const SurfaceJointInstance& inst) {
  if (inst.genus < 0) throw InstanceError("negative genus");
  validate_rotation(inst.h1, inst.rotation1);
  validate_rotation(inst.h2, inst.rotation2);
  if (euler_genus(inst.h1, inst.rotation1) != inst.genus) {
    throw InstanceError("embedding of " + inst.name1 + " does not have genus " + std::to_string(inst.genus));
  }
  if (euler_genus(inst.h2, inst.rotation2) != inst.genus) {
    throw InstanceError("embedding of " + inst.name2 + " does not have genus " + std::to_string(inst.genus));
  }
}

void validate(const GraphInstance& inst) {
  if (inst.rotation) validate_rotation(inst.graph, *inst.rotation);
}

void validate(const Instance& inst) {
  std::visit([](const auto& x) { validate(x); }, inst);
}

}  // namespace jcn
