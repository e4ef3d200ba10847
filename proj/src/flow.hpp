#pragma once

// Internal max-flow machinery shared by the connectivity operations.
// Plain BFS augmentation (Edmonds-Karp): capacities here are tiny (most arcs
// carry one unit, flows are bounded by the vertex count), augmenting paths are
// shortest-first, and everything is deterministic because arcs are scanned in
// insertion order.

#include <vector>

namespace bnt::detail {

constexpr int kInfCap = 1 << 29;

class FlowNetwork {
 public:
  explicit FlowNetwork(int node_count);

  int add_node();
  // Adds a directed arc plus its zero-capacity reverse (paired at index^1).
  // Residual trick: pushing f units does cap[i] -= f, cap[i^1] += f, so the
  // net flow on a forward arc equals the residual of its reverse.
  void add_arc(int from, int to, int cap);

  // Augments until `limit` units flow from s to t or no path remains.
  int max_flow(int s, int t, int limit);

  // Nodes reachable from s in the residual graph (call after max_flow).
  std::vector<char> source_side(int s) const;

  // Shortest s->t path through forward arcs that carry flow; removes one unit
  // along it. Empty result when none remains. Used to decompose unit flows
  // into vertex-disjoint paths, shortest first.
  std::vector<int> extract_unit_path(int s, int t);

 private:
  struct Arc {
    int to;
    int cap;  // remaining (residual) capacity
  };

  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> out_;  // node -> arc indices
};

}  // namespace bnt::detail
