#pragma once

#include <map>
#include <optional>
#include <vector>

#include "bnt/graph.hpp"

namespace bnt {

// Placement of the two monitor classes. S hosts probe sources, T probe
// destinations; they must be disjoint and nonempty.
struct MonitorPlacement {
  VertexSet s_set;
  VertexSet t_set;
};

// Assignment of vertices to distinct points of the integer cube {1..n}^d.
// Two vertices are line-of-sight neighbors when their points differ in
// exactly one coordinate by less than omega.
class LosEmbedding {
 public:
  LosEmbedding(int dimension, int side, int omega,
               std::vector<std::vector<int>> coordinates);

  int dimension() const { return d_; }
  int side() const { return n_; }
  int omega() const { return omega_; }
  int vertex_count() const { return static_cast<int>(coords_.size()); }
  const std::vector<int>& coords_of(Vertex v) const;
  std::optional<Vertex> vertex_at(const std::vector<int>& point) const;
  // True when every point of the cube is occupied.
  bool full_grid() const;

 private:
  int d_;
  int n_;
  int omega_;
  std::vector<std::vector<int>> coords_;
  std::map<std::vector<int>, Vertex> index_;
};

struct EmbeddedNetwork {
  Network network;
  LosEmbedding embedding;
};

// Full cube with nearest-lattice-neighbor edges (omega = 2). Vertex i decodes
// to coordinates mixed-radix: axis a holds (i / n^a) % n + 1.
EmbeddedNetwork build_hypergrid(int side, int dimension);

// Full cube where same-line vertices within distance omega-1 are adjacent.
// Requires omega > 2 (omega = 2 is the plain hypergrid).
EmbeddedNetwork build_augmented_hypergrid(int side, int dimension, int omega);

// Line-of-sight network on an arbitrary occupied subset of the cube, one
// vertex per point in the order given.
EmbeddedNetwork build_los_network(int side, int dimension, int omega,
                                  const std::vector<std::vector<int>>& occupied);

// Deterministic monitor placement on a full augmented hypergrid: d*omega-1
// sources on the low borders anchored at the all-ones corner (corner, then
// axis-line points round-robin by distance, then remaining border points by
// L1 distance and lexicographic order), and the coordinate mirror of that as
// destinations at the all-n corner.
MonitorPlacement canonical_placement(const EmbeddedNetwork& emb);

// Signed axis direction: moving along `axis` by `sign` (+1 or -1) per step.
struct Direction {
  int axis = 0;
  int sign = 1;
};

struct SaturationReport {
  // All omega-1 cells after u in this direction exist and sit in w_set.
  bool saturated = false;
  // Every existing cell within reach lies in w_set (covers the
  // border-truncated case; vacuously true when no cell exists at all).
  bool blocked = false;
};

SaturationReport is_w_saturated(const EmbeddedNetwork& emb, Vertex u, Direction dir,
                                const VertexSet& w_set);

enum class Corner { low, high };

// Greedy monotone walk from u to the all-ones (low) or all-n (high) corner:
// repeatedly take the first axis, in axis order, whose direction toward the
// corner is not blocked, hopping to the nearest vertex outside w_set within
// distance omega-1. Returned reversed, i.e. running corner -> u. nullopt when
// every direction is blocked before the corner is reached.
std::optional<SimplePath> monotone_path(const EmbeddedNetwork& emb, Vertex u,
                                        Corner corner, const VertexSet& w_set);

enum class Region { nw, se };

// Componentwise-dominance region of u: nw collects vertices whose coordinates
// are all <= u's, se those with all >= u's (u included in both).
VertexSet region(const EmbeddedNetwork& emb, Vertex u, Region which);

}  // namespace bnt
