#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "bnt/graph.hpp"

namespace bnt {

// Configuration-model state: n buckets of r half-edge points, with a perfect
// (or, while a procedure is still running, partial) pairing of the points.
// Projecting a simple configuration yields an r-regular graph on the buckets.
struct Configuration {
  int buckets = 0;
  int points_per_bucket = 0;
  std::vector<int> partner;  // per point; -1 while unmatched

  Configuration() = default;
  Configuration(int n, int r);

  int point_count() const { return buckets * points_per_bucket; }
  int bucket_of(int point) const { return point / points_per_bucket; }
  // Every point matched, pairing involutive, no point matched to itself.
  bool perfect() const;
  // No pair inside one bucket and no two pairs joining the same two buckets.
  bool is_simple() const;
  // Some existing pair joins buckets a and b.
  bool buckets_adjacent(int a, int b) const;
  // Collapses buckets to vertices. Throws unless perfect and simple.
  Network project() const;
};

// Each unordered pair becomes an edge independently with probability p.
Network gen_gnp(int n, double p, uint64_t seed);

struct RegularSample {
  Network network;
  Configuration config;
  int attempts = 0;  // uniform pairings drawn until one projected simple
};

// Rejection-samples uniform configurations until simple; the acceptance rate
// tends to e^{-(r*r-1)/4} for large n. Requires n*r even, r >= 3, n > r.
RegularSample gen_random_regular(int n, int r, uint64_t seed);

enum class FailureReason { none, revisited_bucket, hit_forbidden, shooting_missed };

struct TrialOutcome {
  bool success = false;
  FailureReason reason = FailureReason::none;
  // On success: the two bucket walks, each extended by the monitor bucket its
  // shot landed in, so both are v -> ... -> monitor paths in the projection.
  std::optional<std::pair<SimplePath, SimplePath>> paths;
  Configuration config;
  int useful_s = 0;  // unmatched walk points available to shoot, (r-2)*ell+1
  int useful_t = 0;
};

// Reveals a random configuration incrementally: grows two bucket walks of
// lengths ell_s and ell_t from v (pairing the lowest free point of the
// current bucket with a uniform free point; a walk aborts when it re-enters a
// visited bucket or lands in w_set or a monitor set), then pairs the walks'
// leftover points uniformly against the whole pool. Success means the s-walk
// shot a point into s_set and the t-walk one into t_set. The returned
// configuration is always completed to a perfect pairing. `shape` supplies
// (n, r) and must be unpaired.
TrialOutcome pathfinder(const Configuration& shape, Vertex v, int ell_s, int ell_t,
                        const VertexSet& w_set, const VertexSet& s_set,
                        const VertexSet& t_set, uint64_t seed);

// Closed-form bound on the probability that some pair of node sets of size
// <= k in G(n,p) with gamma monitors per class is non-separable:
// 2k * C(n,k)^2 * e^{(2k-gamma)p}. Evaluated in log space.
double gnp_failure_bound(int n, int k, int gamma, double p);

// Single-pair bound: 2 (1-p)^{gamma-2k}.
double gnp_pair_failure_bound(double p, int gamma, int k);

// Shooting success probability (1-(1-gamma/n)^{q_s})(1-(1-gamma/n)^{q_t})
// with q = (r-2)*ell + 1 useful points per walk.
double regular_success_probability(int n, int gamma, int ell_s, int ell_t, int r);

struct RateEstimate {
  double frequency = 0.0;
  double ci_low = 0.0;  // 95% Wilson interval
  double ci_high = 0.0;
};
RateEstimate wilson_interval(int hits, int trials);

enum class RandomModel { gnp, regular };

struct ExperimentConfig {
  uint64_t seed = 0;
  int trials = 0;
  int n = 0;
  double p = 0.5;  // binomial edge probability
  int r = 3;       // regular-model degree
  int gamma = 0;   // monitors per class, |S| = |T|
  int k = 0;       // failure-set size
  int ell_s = 0;   // walk lengths (pathfinder experiments)
  int ell_t = 0;
};

struct SeparabilityExperiment {
  std::vector<uint8_t> failed;  // per trial: 1 = sampled pair non-separable
  int failures = 0;
  RateEstimate rate;
  std::optional<double> bound;  // gnp closed-form bound when applicable
};

// Per trial: sample a graph, uniform disjoint monitor classes of size gamma,
// uniform disjoint failure sets U, W of size k outside the monitors, then
// decide separability exactly. Trials draw independent RNG substreams, so
// results are identical at any worker count.
SeparabilityExperiment monte_carlo_separability(const ExperimentConfig& cfg,
                                                RandomModel model);

struct PathfinderExperiment {
  std::vector<uint8_t> success;  // per trial, conditioned on completed walks
  long long walk_attempts = 0;   // total runs including abandoned walks
  int successes = 0;
  RateEstimate rate;
  double predicted = 0.0;  // closed-form shooting success probability
};

// Estimates the shooting success rate given that the walks complete: each
// trial fixes monitors, v and a forbidden set of size k, then reruns
// pathfinder until the walk phase finishes. The closed form models only the
// shooting phase, so the estimate conditions the same way.
PathfinderExperiment pathfinder_experiment(const ExperimentConfig& cfg);

// Worker threads for `jobs` independent tasks; BNT_THREADS caps the count.
int worker_count(int jobs);

}  // namespace bnt
