#ifndef JCN_PLANARITY_HPP
#define JCN_PLANARITY_HPP

#include <optional>
#include <vector>

#include "jcn/embedding.hpp"
#include "jcn/graph.hpp"

namespace jcn {

struct PlanarityResult {
  bool planar = false;
  RotationSystem witness;  // genus 0 on every component when planar
};

PlanarityResult is_planar(const WeightedMultigraph& g);

/// Planar embedding of `g` in which every listed cycle (vertex sequence,
/// length >= 3, consecutive vertices adjacent) bounds a face. Distinct cycles
/// get distinct faces. nullopt when no such embedding exists.
std::optional<RotationSystem> planar_embedding_with_facial_cycles(const WeightedMultigraph& g,
                                                                  const std::vector<std::vector<VertexIndex>>& cycles);

/// First edge joining a and b, or npos.
EdgeIndex find_edge(const WeightedMultigraph& g, VertexIndex a, VertexIndex b);

}  // namespace jcn

#endif
