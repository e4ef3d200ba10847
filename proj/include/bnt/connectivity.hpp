#pragma once

#include <optional>
#include <vector>

#include "bnt/graph.hpp"

namespace bnt {

struct ConnectivityReport {
  int kappa = 0;
  VertexSet min_separator;  // empty for complete or disconnected graphs
  int min_degree = 0;
  bool complete = false;
  bool disconnected = false;
};

// Smallest degree over all vertices. Throws on an empty network.
int min_degree(const Network& g);

// Global vertex connectivity. Complete graphs report kappa = n-1 with the
// `complete` flag (no separator exists); disconnected graphs report kappa = 0
// with the `disconnected` flag. Otherwise `min_separator` is a minimum vertex
// cut realizing kappa, found by max-flow between one minimum-degree vertex and
// its non-neighbors plus a sweep over non-adjacent neighbor pairs.
ConnectivityReport vertex_connectivity(const Network& g);

struct StSeparator {
  // True when no separator disjoint from S and T exists: the sets intersect
  // or some S-T edge bypasses every candidate cut.
  bool unbounded = false;
  VertexSet separator;

  int size() const { return static_cast<int>(separator.size()); }
};

// Minimum vertex separator between vertex sets S and T, restricted to
// vertices outside S union T. Size 0 with an empty separator means S and T
// are already disconnected.
StSeparator st_separator(const Network& g, const VertexSet& s_set, const VertexSet& t_set);

// Up to `want` pairwise internally-vertex-disjoint u-v paths avoiding
// `forbidden`, extracted from an integral unit-capacity flow, shortest first.
std::vector<SimplePath> disjoint_paths(const Network& g, Vertex u, Vertex v,
                                       const VertexSet& forbidden, int want);

// A simple path with one endpoint in S, the other in T, passing through v and
// avoiding every vertex of `avoid`. Modeled as a 2-unit flow out of v toward
// two unit-capacity virtual sinks (one absorbing S, one absorbing T); the two
// legs are decomposed and concatenated. nullopt when no such path exists.
std::optional<SimplePath> path_through_avoiding(const Network& g, const VertexSet& s_set,
                                                const VertexSet& t_set, Vertex v,
                                                const VertexSet& avoid);

}  // namespace bnt
