#ifndef JCN_GADGETS_HPP
#define JCN_GADGETS_HPP

#include <array>
#include <string>
#include <vector>

#include "jcn/embedding.hpp"
#include "jcn/graph.hpp"
#include "jcn/instance.hpp"

namespace jcn {

/// p x q toroidal grid: vertex "g<r>_<c>" for r in Z_p, c in Z_q. Edge
/// "h<r>_<c>" joins (r,c)-(r,c+1) and "v<r>_<c>" joins (r,c)-(r+1,c).
/// Canonical rotation at every vertex: right, up, left, down.
EmbeddedGraph toroidal_grid(int p, int q, const std::string& prefix = "");

/// Name of grid vertex (r, c) under `prefix`.
std::string grid_vertex(const std::string& prefix, int r, int c);

struct TorusGadgetParams {
  int i = 1;  // anchor index, 1-based
  int h = 1;  // number of anchors (target genus)
};

inline int gadget_rows(const TorusGadgetParams& p) { return 5 + p.i; }
inline int gadget_columns(const TorusGadgetParams& p) { return p.h + 6; }

/// Result of gluing the torus part of T_i into a face.
struct TorusAttachment {
  std::vector<VertexIndex> grid_vertices;  // row-major, (r, c) at r * columns + c
  std::array<EdgeIndex, 4> connectors{};
  std::array<VertexIndex, 4> targets{};   // face vertices the connectors reach
  std::array<VertexIndex, 4> endpoints{}; // degree-3 grid vertices, same order
};

/// Adds T_i^0 (the g_i x (h+6) toroidal grid without (0,0)-(0,1) and
/// (1,0)-(1,1)) inside `face`, joined to four face corners at evenly spaced
/// positions in matching cyclic order. Genus grows by one.
TorusAttachment attach_torus_gadget(WeightedMultigraph& g, RotationSystem& rs, const Face& face,
                                    const TorusGadgetParams& params, const std::string& prefix);

/// Standalone T_i: a cycle C_i' of the given length plus the attached torus
/// part. The C_i' face away from the torus stays a disk face.
struct TorusGadget {
  EmbeddedGraph embedded;
  std::vector<VertexIndex> cycle;  // C_i'
  TorusAttachment attachment;
};
TorusGadget torus_gadget(const TorusGadgetParams& params, std::size_t cycle_length = 4);

/// For each edge of the full g_i x (h+6) toroidal grid, a path in T_i
/// realizing it: a single edge for the kept ones, connector + C_i' arc +
/// connector for the two removed ones.
std::vector<std::vector<EdgeIndex>> torus_subdivision_witness(const TorusGadget& t);

/// K_{3,3} on {l0,l1,l2} x {r0,r1,r2}; l0r0 and l0r1 have weight 1, the
/// other seven `thick_weight`. `attach` is l1. The rotation embeds it in
/// the torus.
struct LGadget {
  EmbeddedGraph embedded;
  VertexIndex attach = 0;
};
LGadget l_gadget(const Weight& thick_weight, const std::string& prefix = "");

struct LadderParams {
  int k = 2;
  Weight T = 1;
};

/// Default weight base used by the reductions: k^6 + W1 * W2 + 1.
Weight default_T(int k, const Weight& w1, const Weight& w2);

/// t_0 = k^3, t_j = t_{j-1} + j.
std::vector<Weight> ladder_t(int k);

/// F_1: the 3 x (k+3) grid. Row i = 1..3 (top to bottom), columns
/// x_1, x_2, c_1 .. c_{k-1}, x_3, x_4. Names "x<i>_<j>" and "c<i>_<j>".
struct F1Gadget {
  EmbeddedGraph embedded;
  std::vector<Point> coords;
  std::array<std::vector<VertexIndex>, 4> cycles;  // C_1 .. C_4
};
F1Gadget build_f1(const LadderParams& params);

/// F_2: the ladder with top path a_1 b_1 .. b_k a_3 and bottom path
/// a_2 b'_1 .. b'_k a_4. Names "a<i>", "b<j>", "bp<j>".
struct F2Gadget {
  EmbeddedGraph embedded;
  std::vector<Point> coords;
  std::array<VertexIndex, 4> anchors{};
  std::vector<VertexIndex> q1;  // a_1 .. a_3
  std::vector<VertexIndex> q2;  // a_2 .. a_4
};
F2Gadget build_f2(const LadderParams& params);

/// The instance F_{k,T} together with the drawing coordinates of both graphs
/// (the canonical joint drawing places them on top of each other).
struct FaGadget {
  LadderParams params;
  FaJointInstance instance;
  std::vector<Point> coords1;
  std::vector<Point> coords2;
};
FaGadget build_fa_instance(const LadderParams& params);

/// F^+: F_{k,T} joined with its horizontal mirror copy. Mirror names carry
/// the prefix "m". Columns 3 and 4 of F_1 are glued to columns 4 and 3 of
/// the mirror; a_3, a_4 are glued to their copies.
struct FPlusGadget {
  LadderParams params;
  FaJointInstance instance;
  std::vector<Point> coords1;
  std::vector<Point> coords2;
  std::vector<VertexIndex> ident1;  // union index -> F_1^+ vertex
  std::vector<VertexIndex> ident2;  // union index -> F_2^+ vertex
  std::vector<VertexIndex> r1, r3, r1_bar, r3_bar;  // in F_1^+, each from x_2 side to x_3 side
  std::vector<VertexIndex> q1, q2, q1_bar, q2_bar;  // in F_2^+, each from its a_1/a_2 end to a_3/a_4
};
FPlusGadget mirror_join(const FaGadget& fa);

}  // namespace jcn

#endif
