#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace bnt {

using Vertex = int;

// Sorted, duplicate-free set of vertex ids. Small value type; all the
// identifiability machinery passes these around by const reference.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::vector<Vertex> members);
  VertexSet(std::initializer_list<Vertex> members);

  bool contains(Vertex v) const;
  void insert(Vertex v);
  void erase(Vertex v);

  size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const std::vector<Vertex>& members() const { return members_; }
  std::vector<Vertex>::const_iterator begin() const { return members_.begin(); }
  std::vector<Vertex>::const_iterator end() const { return members_.end(); }

  VertexSet set_union(const VertexSet& other) const;
  VertexSet set_difference(const VertexSet& other) const;
  bool intersects(const VertexSet& other) const;

  bool operator==(const VertexSet& other) const { return members_ == other.members_; }
  bool operator!=(const VertexSet& other) const { return members_ != other.members_; }
  bool operator<(const VertexSet& other) const { return members_ < other.members_; }

  std::string to_string() const;

 private:
  std::vector<Vertex> members_;
};

// Undirected simple graph with contiguous vertex ids 0..n-1.
// Adjacency lists are kept sorted so every traversal is deterministic.
class Network {
 public:
  Network() = default;
  Network(int vertex_count, const std::vector<std::pair<Vertex, Vertex>>& edge_list);

  int vertex_count() const { return n_; }
  size_t edge_count() const { return edges_.size(); }
  bool has_edge(Vertex u, Vertex v) const;
  const std::vector<Vertex>& neighbors(Vertex v) const;
  int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }
  // Edges normalized to u < v, sorted.
  const std::vector<std::pair<Vertex, Vertex>>& edges() const { return edges_; }

  bool is_connected() const;
  bool is_complete() const;

 private:
  void check_vertex(Vertex v) const;

  int n_ = 0;
  std::vector<std::vector<Vertex>> adj_;
  std::vector<std::pair<Vertex, Vertex>> edges_;
};

// A walk with no repeated vertices. `nodes` lists them in path order.
struct SimplePath {
  std::vector<Vertex> nodes;

  bool contains(Vertex v) const;
  bool touches(const VertexSet& set) const;
  // True when consecutive nodes are adjacent in g and no vertex repeats.
  bool valid_in(const Network& g) const;
  std::string to_string() const;
};

}  // namespace bnt
