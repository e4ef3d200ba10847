#include "flow.hpp"

#include <algorithm>
#include <queue>

namespace bnt::detail {

FlowNetwork::FlowNetwork(int node_count) : out_(node_count) {}

int FlowNetwork::add_node() {
  out_.emplace_back();
  return static_cast<int>(out_.size()) - 1;
}

void FlowNetwork::add_arc(int from, int to, int cap) {
  out_[from].push_back(static_cast<int>(arcs_.size()));
  arcs_.push_back({to, cap});
  out_[to].push_back(static_cast<int>(arcs_.size()));
  arcs_.push_back({from, 0});
}

int FlowNetwork::max_flow(int s, int t, int limit) {
  int total = 0;
  std::vector<int> parent_arc(out_.size());
  while (total < limit) {
    // BFS for the shortest augmenting path.
    std::fill(parent_arc.begin(), parent_arc.end(), -1);
    std::queue<int> frontier;
    frontier.push(s);
    parent_arc[s] = -2;
    while (!frontier.empty() && parent_arc[t] == -1) {
      int v = frontier.front();
      frontier.pop();
      for (int idx : out_[v]) {
        const Arc& arc = arcs_[idx];
        if (arc.cap > 0 && parent_arc[arc.to] == -1) {
          parent_arc[arc.to] = idx;
          frontier.push(arc.to);
        }
      }
    }
    if (parent_arc[t] == -1) break;
    int bottleneck = limit - total;
    for (int v = t; v != s;) {
      int idx = parent_arc[v];
      bottleneck = std::min(bottleneck, arcs_[idx].cap);
      v = arcs_[idx ^ 1].to;
    }
    for (int v = t; v != s;) {
      int idx = parent_arc[v];
      arcs_[idx].cap -= bottleneck;
      arcs_[idx ^ 1].cap += bottleneck;
      v = arcs_[idx ^ 1].to;
    }
    total += bottleneck;
  }
  return total;
}

std::vector<char> FlowNetwork::source_side(int s) const {
  std::vector<char> seen(out_.size(), 0);
  std::queue<int> frontier;
  frontier.push(s);
  seen[s] = 1;
  while (!frontier.empty()) {
    int v = frontier.front();
    frontier.pop();
    for (int idx : out_[v]) {
      const Arc& arc = arcs_[idx];
      if (arc.cap > 0 && !seen[arc.to]) {
        seen[arc.to] = 1;
        frontier.push(arc.to);
      }
    }
  }
  return seen;
}

std::vector<int> FlowNetwork::extract_unit_path(int s, int t) {
  std::vector<int> parent_arc(out_.size(), -1);
  std::queue<int> frontier;
  frontier.push(s);
  parent_arc[s] = -2;
  while (!frontier.empty() && parent_arc[t] == -1) {
    int v = frontier.front();
    frontier.pop();
    for (int idx : out_[v]) {
      // Forward arcs are at even indices; flow on one equals the residual
      // capacity accumulated on its paired reverse arc.
      if ((idx & 1) != 0) continue;
      if (arcs_[idx ^ 1].cap <= 0) continue;
      int to = arcs_[idx].to;
      if (parent_arc[to] == -1) {
        parent_arc[to] = idx;
        frontier.push(to);
      }
    }
  }
  if (parent_arc[t] == -1) return {};
  std::vector<int> nodes;
  for (int v = t; v != s;) {
    int idx = parent_arc[v];
    nodes.push_back(v);
    arcs_[idx ^ 1].cap -= 1;
    arcs_[idx].cap += 1;
    v = arcs_[idx ^ 1].to;
  }
  nodes.push_back(s);
  std::reverse(nodes.begin(), nodes.end());
  return nodes;
}

}  // namespace bnt::detail
