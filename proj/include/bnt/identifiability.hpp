#pragma once

#include <cstdint>
#include <list>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bnt/connectivity.hpp"
#include "bnt/graph.hpp"
#include "bnt/topology.hpp"

namespace bnt {

// A network probed end-to-end between two disjoint monitor classes. The probe
// universe is every simple path with one endpoint in S and the other in T.
struct ProbingScheme {
  Network network;
  MonitorPlacement placement;

  ProbingScheme(Network g, MonitorPlacement p);
};

struct FailureScenario {
  VertexSet failed;
};

// One boolean per probe path: true when the path crosses a failed node.
struct Syndrome {
  std::vector<bool> path_failed;

  bool operator==(const Syndrome& other) const = default;
};

Syndrome evaluate_syndrome(const ProbingScheme& scheme,
                           const std::vector<SimplePath>& paths,
                           const FailureScenario& scenario);

// Every simple S-T path, DFS order from ascending S endpoints. Throws
// "path universe too large" when more than `cap` paths exist.
std::vector<SimplePath> enumerate_paths(const ProbingScheme& scheme, size_t cap);

struct SeparabilityVerdict {
  bool separable = false;
  // A probe path crossing exactly one of the two sets, present iff separable.
  std::optional<SimplePath> witness_path;
  enum class Side { u_side, w_side };
  Side witness_side = Side::u_side;
};

// Bounded memo for (vertex, avoid-set) path queries; identical queries recur
// heavily across the subset-pair sweep. Evicts least-recently-used entries.
class PathQueryCache {
 public:
  explicit PathQueryCache(size_t capacity = 1u << 20) : capacity_(capacity) {}

  static std::vector<uint64_t> pack(const std::vector<Vertex>& sorted_members);
  // Allocation-free variant for the sweep hot path.
  static void pack_into(const std::vector<Vertex>& sorted_members,
                        std::vector<uint64_t>& out);
  std::optional<bool> lookup(Vertex v, const std::vector<uint64_t>& packed_avoid);
  void store(Vertex v, const std::vector<uint64_t>& packed_avoid, bool result);

 private:
  using Key = std::pair<Vertex, std::vector<uint64_t>>;
  struct KeyHash {
    size_t operator()(const Key& key) const;
  };

  size_t capacity_;
  std::list<Key> order_;
  std::unordered_map<Key, std::pair<bool, std::list<Key>::iterator>, KeyHash> map_;
};

// Two failure sets are separable when their probe-path unions differ, i.e.
// some path runs through one set while avoiding the other. Decided by flow
// queries, one per vertex of the symmetric difference. Throws on U == W.
SeparabilityVerdict separable(const ProbingScheme& scheme, const VertexSet& u_set,
                              const VertexSet& w_set, PathQueryCache* cache = nullptr);

struct KIdentifiability {
  bool identifiable = false;
  // First failing pair in sweep order (by max set size, then lexicographic).
  std::optional<std::pair<VertexSet, VertexSet>> failing_pair;
};

// True when every pair of distinct subsets of `nodes` with both sizes <= k is
// separable (the empty set counts as a candidate failure set).
KIdentifiability is_k_identifiable(const ProbingScheme& scheme, const VertexSet& nodes,
                                   int k, PathQueryCache* cache = nullptr);

struct IdentifiabilityBounds {
  int delta = 0;
  int kappa = 0;
  std::optional<int> kappa_st;  // nullopt = unbounded (no separator exists)
  int lower_general = 0;        // min(kappa, |S|, |T|) - 2
  std::optional<int> upper_separator;  // kappa_st when bounded
};

struct IdentifiabilityReport {
  int mu = 0;
  // False when the search stopped at k_max without finding a failing pair,
  // meaning mu is only known to be >= the reported value.
  bool exact = true;
  std::optional<std::pair<VertexSet, VertexSet>> failing_pair;
  IdentifiabilityBounds bounds;
  double runtime_ms = 0.0;
};

// Maximal identifiability over the nodes covered by at least one probe path:
// the largest k for which the scheme is k-identifiable. k_max <= 0 defaults
// to min_degree + 1, which pins mu exactly whenever some minimum-degree
// vertex is path-covered (its neighborhood with and without it are never
// separable); passing k_max >= the covered-node count always gives an exact
// answer, capped at that count since larger subsets add no new pairs.
IdentifiabilityReport max_identifiability(const ProbingScheme& scheme, int k_max = 0);

// Nodes sitting on at least one probe path.
VertexSet path_covered_nodes(const ProbingScheme& scheme);

// The classic upper-bound witness: U = a minimum S-T separator K, W = K plus
// the lowest-numbered neighbor of K outside it. The pair is non-separable,
// certifying mu <= |K|. Throws when no separator exists (unbounded) or S and
// T are already disconnected.
std::pair<VertexSet, VertexSet> upper_bound_witness(const ProbingScheme& scheme);

// Monitor placement used by the kappa <= n/3 sandwich construction: both
// classes sized kappa, S filling the smallest component of G minus a minimum
// separator (topped up from the others when short), T drawn from the
// remaining components. Throws "connectivity too high for this construction"
// when 3*kappa > n.
MonitorPlacement separator_placement(const Network& g);

// Simple s-t path through u avoiding w_set, built the Menger way: two
// internally disjoint s-u paths and two u-t paths in G - W, concatenated
// directly when some pair only shares u, otherwise stitched at the first
// intersection point along an s-u path. Requires |w_set| <= kappa - 2.
SimplePath menger_stitch(const Network& g, Vertex s, Vertex t, Vertex u,
                         const VertexSet& w_set);

}  // namespace bnt
