#include "bnt/graph.hpp"

#include <algorithm>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace bnt {

VertexSet::VertexSet(std::vector<Vertex> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

VertexSet::VertexSet(std::initializer_list<Vertex> members)
    : VertexSet(std::vector<Vertex>(members)) {}

bool VertexSet::contains(Vertex v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

void VertexSet::insert(Vertex v) {
  auto it = std::lower_bound(members_.begin(), members_.end(), v);
  if (it == members_.end() || *it != v) members_.insert(it, v);
}

void VertexSet::erase(Vertex v) {
  auto it = std::lower_bound(members_.begin(), members_.end(), v);
  if (it != members_.end() && *it == v) members_.erase(it);
}

VertexSet VertexSet::set_union(const VertexSet& other) const {
  std::vector<Vertex> out;
  out.reserve(size() + other.size());
  std::set_union(members_.begin(), members_.end(), other.members_.begin(),
                 other.members_.end(), std::back_inserter(out));
  VertexSet result;
  result.members_ = std::move(out);
  return result;
}

VertexSet VertexSet::set_difference(const VertexSet& other) const {
  std::vector<Vertex> out;
  std::set_difference(members_.begin(), members_.end(), other.members_.begin(),
                      other.members_.end(), std::back_inserter(out));
  VertexSet result;
  result.members_ = std::move(out);
  return result;
}

bool VertexSet::intersects(const VertexSet& other) const {
  auto a = members_.begin();
  auto b = other.members_.begin();
  while (a != members_.end() && b != other.members_.end()) {
    if (*a == *b) return true;
    if (*a < *b) ++a; else ++b;
  }
  return false;
}

std::string VertexSet::to_string() const {
  std::ostringstream out;
  out << '{';
  for (size_t i = 0; i < members_.size(); ++i) {
    if (i) out << ' ';
    out << members_[i];
  }
  out << '}';
  return out.str();
}

Network::Network(int vertex_count, const std::vector<std::pair<Vertex, Vertex>>& edge_list)
    : n_(vertex_count), adj_(std::max(vertex_count, 0)) {
  if (vertex_count < 0) throw std::invalid_argument("negative vertex count");
  for (auto [u, v] : edge_list) {
    if (u < 0 || u >= n_ || v < 0 || v >= n_)
      throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop not allowed");
    if (u > v) std::swap(u, v);
    edges_.emplace_back(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  for (auto [u, v] : edges_) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& list : adj_) std::sort(list.begin(), list.end());
}

void Network::check_vertex(Vertex v) const {
  if (v < 0 || v >= n_) throw std::invalid_argument("vertex out of range");
}

bool Network::has_edge(Vertex u, Vertex v) const {
  check_vertex(u);
  check_vertex(v);
  const auto& list = adj_[u];
  return std::binary_search(list.begin(), list.end(), v);
}

const std::vector<Vertex>& Network::neighbors(Vertex v) const {
  check_vertex(v);
  return adj_[v];
}

bool Network::is_connected() const {
  if (n_ <= 1) return true;
  std::vector<char> seen(n_, 0);
  std::queue<Vertex> frontier;
  frontier.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!frontier.empty()) {
    Vertex v = frontier.front();
    frontier.pop();
    for (Vertex w : adj_[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        frontier.push(w);
      }
    }
  }
  return reached == n_;
}

bool Network::is_complete() const {
  return edge_count() == static_cast<size_t>(n_) * (n_ - 1) / 2;
}

bool SimplePath::contains(Vertex v) const {
  return std::find(nodes.begin(), nodes.end(), v) != nodes.end();
}

bool SimplePath::touches(const VertexSet& set) const {
  for (Vertex v : nodes)
    if (set.contains(v)) return true;
  return false;
}

bool SimplePath::valid_in(const Network& g) const {
  if (nodes.empty()) return false;
  std::unordered_set<Vertex> seen;
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i] < 0 || nodes[i] >= g.vertex_count()) return false;
    if (!seen.insert(nodes[i]).second) return false;
    if (i > 0 && !g.has_edge(nodes[i - 1], nodes[i])) return false;
  }
  return true;
}

std::string SimplePath::to_string() const {
  std::ostringstream out;
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (i) out << '-';
    out << nodes[i];
  }
  return out.str();
}

}  // namespace bnt
