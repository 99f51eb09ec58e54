#ifndef JCN_RECEIPT_HPP
#define JCN_RECEIPT_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jcn/graph.hpp"

namespace jcn {

/// Parameters derived by the reductions, enough to recompute target values
/// and map a claimed crossing value back to the source instance. Sections
/// are filled by the stage that owns them; `stages` records the order.
struct ReductionReceipt {
  std::vector<std::string> stages;

  // face-anchored -> surface
  std::optional<int> h;
  Weight m = 0;
  Weight p = 0;
  Weight t = 0;
  std::vector<Weight> t_list;
  std::vector<int> g_list;
  int dummy_anchors = 0;

  // anchored -> six face anchors
  std::optional<int> k;
  Weight T = 0;
  std::vector<Weight> w_list;
  Weight crgj = 0;
  std::map<std::string, std::string> alpha;  // A1 vertex -> F1+ vertex
  std::map<std::string, std::string> beta;   // A2 vertex -> F2+ vertex

  // wheel blow-up
  Weight scale = 1;
  Weight wheel_weight = 0;

  // unary expansion: original edge id -> copies
  bool subdivided = false;
  std::map<std::string, std::vector<std::string>> bunches;

  bool has_stage(const std::string& name) const;
  Weight gadget_floor() const;  // sum of g_i * t_i
  Weight anchor_weight() const; // sum of w_i

  friend bool operator==(const ReductionReceipt&, const ReductionReceipt&) = default;
};

std::string serialize_receipt(const ReductionReceipt& r);
ReductionReceipt parse_receipt(const std::string& text);

/// Floor of (r - sum g_i t_i) / p^2.
Weight recover_s(const Weight& r, const ReductionReceipt& receipt);

/// Upper bound on the surface value produced from a face-anchored solution
/// with s weighted crossings: s p^2 + sum g_i t_i + p^2 / 2.
Weight surface_upper_bound(const Weight& s, const ReductionReceipt& receipt);

/// crgj + (w_1 + ... + w_4) T^2 + s.
Weight anchored_target(const Weight& s, const ReductionReceipt& receipt);

/// r - (w_1 + ... + w_4) T^2 - crgj.
Weight recover_anchored(const Weight& r, const ReductionReceipt& receipt);

/// Maps a value of the final instance back through every recorded stage to
/// a value for the source instance.
Weight recover_chain(const Weight& r, const ReductionReceipt& receipt);

/// Forward image of a source value through every recorded stage, using the
/// upper bound at the surface stage.
Weight forward_chain(const Weight& s, const ReductionReceipt& receipt);

}  // namespace jcn

#endif
