#include "jcn/flow.hpp"

#include <queue>

namespace jcn {

namespace {

struct Arc {
  std::size_t to;
  Weight cap;
  std::size_t rev;
};

class Network {
 public:
  explicit Network(std::size_t n) : adj_(n) {}

  void add_undirected(std::size_t a, std::size_t b, const Weight& cap) {
    adj_[a].push_back({b, cap, adj_[b].size()});
    adj_[b].push_back({a, cap, adj_[a].size() - 1});
  }

  void add_directed(std::size_t a, std::size_t b, const Weight& cap) {
    adj_[a].push_back({b, cap, adj_[b].size()});
    adj_[b].push_back({a, 0, adj_[a].size() - 1});
  }

  // Edmonds-Karp.
  Weight max_flow(std::size_t s, std::size_t t) {
    Weight total = 0;
    const std::size_t n = adj_.size();
    while (true) {
      std::vector<std::pair<std::size_t, std::size_t>> via(n, {npos, npos});
      std::queue<std::size_t> q;
      q.push(s);
      via[s] = {s, 0};
      while (!q.empty() && via[t].first == npos) {
        std::size_t x = q.front();
        q.pop();
        for (std::size_t i = 0; i < adj_[x].size(); ++i) {
          const Arc& a = adj_[x][i];
          if (a.cap > 0 && via[a.to].first == npos) {
            via[a.to] = {x, i};
            q.push(a.to);
          }
        }
      }
      if (via[t].first == npos) return total;
      Weight push = -1;
      for (std::size_t y = t; y != s; y = via[y].first) {
        const Arc& a = adj_[via[y].first][via[y].second];
        if (push < 0 || a.cap < push) push = a.cap;
      }
      for (std::size_t y = t; y != s; y = via[y].first) {
        Arc& a = adj_[via[y].first][via[y].second];
        a.cap -= push;
        adj_[a.to][a.rev].cap += push;
      }
      total += push;
    }
  }

 private:
  std::vector<std::vector<Arc>> adj_;
};

}  // namespace

Weight min_cut_weight(const WeightedMultigraph& g, const std::vector<VertexIndex>& S,
                      const std::vector<VertexIndex>& T) {
  if (S.empty() || T.empty()) throw InstanceError("min cut needs nonempty source and sink sets");
  std::vector<int> side(g.vertex_count(), 0);
  for (auto v : S) {
    if (v >= g.vertex_count()) throw InstanceError("min cut: unknown vertex");
    side[v] = 1;
  }
  for (auto v : T) {
    if (v >= g.vertex_count()) throw InstanceError("min cut: unknown vertex");
    if (side[v] == 1) throw InstanceError("min cut: source and sink sets overlap at '" + g.vertex_name(v) + "'");
    side[v] = 2;
  }
  const std::size_t n = g.vertex_count();
  const std::size_t source = n, sink = n + 1;
  Network net(n + 2);
  for (const auto& e : g.edges()) net.add_undirected(e.u, e.v, e.weight);
  Weight infinite = g.total_weight() + 1;
  for (VertexIndex v = 0; v < n; ++v) {
    if (side[v] == 1) net.add_directed(source, v, infinite);
    if (side[v] == 2) net.add_directed(v, sink, infinite);
  }
  return net.max_flow(source, sink);
}

Weight boundary_weight(const WeightedMultigraph& g, const std::vector<VertexIndex>& side) {
  std::vector<bool> in(g.vertex_count(), false);
  for (auto v : side) in.at(v) = true;
  Weight sum = 0;
  for (const auto& e : g.edges()) {
    if (in[e.u] != in[e.v]) sum += e.weight;
  }
  return sum;
}

}  // namespace jcn
