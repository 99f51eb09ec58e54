#ifndef JCN_FLOW_HPP
#define JCN_FLOW_HPP

#include <vector>

#include "jcn/graph.hpp"

namespace jcn {

/// Weight of a minimum edge cut separating S from T (max-flow value; each
/// undirected edge carries its weight in both directions).
Weight min_cut_weight(const WeightedMultigraph& g, const std::vector<VertexIndex>& S,
                      const std::vector<VertexIndex>& T);

/// Total weight of edges with exactly one endpoint in `side`.
Weight boundary_weight(const WeightedMultigraph& g, const std::vector<VertexIndex>& side);

}  // namespace jcn

#endif
