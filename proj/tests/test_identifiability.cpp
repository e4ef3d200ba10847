#include <algorithm>
#include <vector>

#include "bnt/connectivity.hpp"
#include "bnt/graph.hpp"
#include "bnt/identifiability.hpp"
#include "bnt/random_models.hpp"
#include "bnt/rng.hpp"
#include "bnt/topology.hpp"
#include "doctest.h"
#include "oracle.hpp"

using bnt::MonitorPlacement;
using bnt::Network;
using bnt::ProbingScheme;
using bnt::SimplePath;
using bnt::Vertex;
using bnt::VertexSet;

namespace {

Network cycle(int n) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
  return Network(n, edges);
}

ProbingScheme path3() {
  return ProbingScheme(Network(3, {{0, 1}, {1, 2}}),
                       MonitorPlacement{VertexSet{0}, VertexSet{2}});
}

}  // namespace

TEST_CASE("probing scheme validates its placement") {
  Network g(4, {{0, 1}, {1, 2}, {2, 3}});
  CHECK_THROWS(ProbingScheme(g, MonitorPlacement{VertexSet{0}, VertexSet{0}}));
  CHECK_THROWS(ProbingScheme(g, MonitorPlacement{VertexSet{}, VertexSet{3}}));
  CHECK_THROWS(ProbingScheme(g, MonitorPlacement{VertexSet{0}, VertexSet{4}}));
}

TEST_CASE("path enumeration and syndromes") {
  ProbingScheme scheme(cycle(4), MonitorPlacement{VertexSet{0}, VertexSet{2}});
  auto paths = bnt::enumerate_paths(scheme, 100);
  REQUIRE(paths.size() == 2);  // the two arcs
  for (const auto& p : paths) {
    CHECK(p.nodes.front() == 0);
    CHECK(p.nodes.back() == 2);
    CHECK(p.valid_in(scheme.network));
  }

  bnt::Syndrome one = bnt::evaluate_syndrome(scheme, paths, {VertexSet{1}});
  bnt::Syndrome other = bnt::evaluate_syndrome(scheme, paths, {VertexSet{3}});
  bnt::Syndrome endpoint = bnt::evaluate_syndrome(scheme, paths, {VertexSet{0}});
  bnt::Syndrome none = bnt::evaluate_syndrome(scheme, paths, {VertexSet{}});
  CHECK(std::count(one.path_failed.begin(), one.path_failed.end(), true) == 1);
  CHECK(one != other);
  CHECK(std::count(endpoint.path_failed.begin(), endpoint.path_failed.end(), true) == 2);
  CHECK(std::count(none.path_failed.begin(), none.path_failed.end(), true) == 0);

  // Foreign paths are rejected.
  CHECK_THROWS(bnt::evaluate_syndrome(scheme, {SimplePath{{0, 1}}}, {VertexSet{}}));
  CHECK_THROWS(bnt::evaluate_syndrome(scheme, {SimplePath{{0, 3, 2, 9}}}, {VertexSet{}}));
}

TEST_CASE("path enumeration respects its cap") {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (int u = 0; u < 9; ++u)
    for (int v = u + 1; v < 9; ++v) edges.push_back({u, v});
  ProbingScheme dense(Network(9, edges), MonitorPlacement{VertexSet{0}, VertexSet{8}});
  CHECK_THROWS(bnt::enumerate_paths(dense, 50));
}

TEST_CASE("separability on a three node path") {
  ProbingScheme scheme = path3();
  auto verdict = bnt::separable(scheme, VertexSet{}, VertexSet{1});
  CHECK(verdict.separable);
  REQUIRE(verdict.witness_path.has_value());
  CHECK(verdict.witness_path->contains(1));
  CHECK(verdict.witness_side == bnt::SeparabilityVerdict::Side::w_side);

  // Node 1 sits on the only path, just like endpoint 0: not separable.
  CHECK_FALSE(bnt::separable(scheme, VertexSet{0}, VertexSet{1}).separable);
  CHECK_THROWS(bnt::separable(scheme, VertexSet{1}, VertexSet{1}));
}

TEST_CASE("k-identifiability sweep finds the first failing pair") {
  ProbingScheme scheme = path3();
  VertexSet universe = bnt::path_covered_nodes(scheme);
  CHECK(universe == VertexSet{0, 1, 2});

  auto k1 = bnt::is_k_identifiable(scheme, universe, 1);
  CHECK_FALSE(k1.identifiable);
  REQUIRE(k1.failing_pair.has_value());
  CHECK(k1.failing_pair->first == VertexSet{0});
  CHECK(k1.failing_pair->second == VertexSet{1});

  CHECK_THROWS(bnt::is_k_identifiable(scheme, universe, 0));
  CHECK_THROWS(bnt::is_k_identifiable(scheme, VertexSet{7}, 1));
}

TEST_CASE("maximal identifiability on fixed instances") {
  bnt::IdentifiabilityReport path_report = bnt::max_identifiability(path3(), 3);
  CHECK(path_report.mu == 0);
  CHECK(path_report.exact);
  REQUIRE(path_report.failing_pair.has_value());
  CHECK(path_report.failing_pair->first == VertexSet{0});
  CHECK(path_report.failing_pair->second == VertexSet{1});
  CHECK(path_report.bounds.delta == 1);
  CHECK(path_report.bounds.kappa == 1);
  REQUIRE(path_report.bounds.kappa_st.has_value());
  CHECK(*path_report.bounds.kappa_st == 1);
  CHECK(path_report.bounds.lower_general == -1);

  // Both cycle monitors lie on every probe path, so even size-1 sets collide.
  ProbingScheme c4(cycle(4), MonitorPlacement{VertexSet{0}, VertexSet{2}});
  bnt::IdentifiabilityReport c4_report = bnt::max_identifiability(c4, 4);
  CHECK(c4_report.mu == 0);
  REQUIRE(c4_report.failing_pair.has_value());
  CHECK(c4_report.failing_pair->first == VertexSet{0});
  CHECK(c4_report.failing_pair->second == VertexSet{2});

  // Default sweep cap: min degree + 1.
  bnt::IdentifiabilityReport capped = bnt::max_identifiability(path3());
  CHECK(capped.mu == 0);
  CHECK(capped.exact);
}

TEST_CASE("identifiability cap: separated monitors on a complete block") {
  // K5 with S and T split 2/2 and one pendant vertex: every probe path has
  // an endpoint in both classes, so the pair (S, T) collides at level 2.
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (int u = 0; u < 5; ++u)
    for (int v = u + 1; v < 5; ++v) edges.push_back({u, v});
  edges.push_back({0, 5});
  ProbingScheme scheme(Network(6, edges),
                       MonitorPlacement{VertexSet{0, 1}, VertexSet{2, 3}});
  bnt::IdentifiabilityReport report = bnt::max_identifiability(scheme, 6);
  CHECK(report.mu == 1);
  CHECK(report.exact);
  CHECK(oracle::mu_exact(scheme.network, scheme.placement) == 1);
}

TEST_CASE("requesting a sweep past the covered universe stays exact") {
  ProbingScheme scheme = path3();
  bnt::IdentifiabilityReport report = bnt::max_identifiability(scheme, 50);
  CHECK(report.mu == 0);
  CHECK(report.exact);
}

TEST_CASE("maximal identifiability matches the exhaustive oracle") {
  bnt::Rng rng(37);
  for (int i = 0; i < 40; ++i) {
    int n = 4 + static_cast<int>(rng.uniform_index(5));
    double p = 0.3 + 0.2 * static_cast<double>(rng.uniform_index(3));
    Network g = bnt::gen_gnp(n, p, rng.next_u64());
    int gs = 1 + static_cast<int>(rng.uniform_index(2));
    int gt = 1 + static_cast<int>(rng.uniform_index(2));
    std::vector<int> mix = rng.sample_distinct(n, gs + gt);
    rng.shuffle(mix);
    MonitorPlacement placement{
        VertexSet(std::vector<Vertex>(mix.begin(), mix.begin() + gs)),
        VertexSet(std::vector<Vertex>(mix.begin() + gs, mix.end()))};
    ProbingScheme scheme(g, placement);

    bnt::IdentifiabilityReport report = bnt::max_identifiability(scheme, n);
    CHECK(report.exact);
    CHECK(report.mu == oracle::mu_exact(g, placement));

    VertexSet covered = bnt::path_covered_nodes(scheme);
    CHECK(covered.members() == oracle::covered_nodes(oracle::all_paths(
                                   g, placement.s_set, placement.t_set)));

    if (report.failing_pair) {
      const auto& [u, w] = *report.failing_pair;
      CHECK_FALSE(oracle::separable(g, placement, u.members(), w.members()));
      CHECK(static_cast<int>(std::max(u.size(), w.size())) == report.mu + 1);
    }
  }
}

TEST_CASE("upper bound witness is a certified collision") {
  ProbingScheme scheme = path3();
  auto [k_set, k_plus] = bnt::upper_bound_witness(scheme);
  CHECK(k_set == VertexSet{1});
  CHECK(k_plus == VertexSet{0, 1});
  CHECK_FALSE(bnt::separable(scheme, k_set, k_plus).separable);
  CHECK_FALSE(oracle::separable(scheme.network, scheme.placement, k_set.members(),
                                k_plus.members()));

  // Adjacent monitor classes admit no separator at all.
  ProbingScheme tight(Network(2, {{0, 1}}), MonitorPlacement{VertexSet{0}, VertexSet{1}});
  CHECK_THROWS(bnt::upper_bound_witness(tight));
}

TEST_CASE("separator placement satisfies the connectivity sandwich") {
  Network c6 = cycle(6);
  MonitorPlacement placement = bnt::separator_placement(c6);
  CHECK(placement.s_set.size() == 2);
  CHECK(placement.t_set.size() == 2);
  CHECK_FALSE(placement.s_set.intersects(placement.t_set));
  bnt::IdentifiabilityReport report =
      bnt::max_identifiability(ProbingScheme(c6, placement), 6);
  int kappa = bnt::vertex_connectivity(c6).kappa;
  CHECK(report.mu <= kappa);
  CHECK(report.mu >= kappa - 2);

  CHECK_THROWS(bnt::separator_placement(Network(4, {{0, 1}, {2, 3}})));  // disconnected
  std::vector<std::pair<Vertex, Vertex>> k4;
  for (int u = 0; u < 4; ++u)
    for (int v = u + 1; v < 4; ++v) k4.push_back({u, v});
  CHECK_THROWS(bnt::separator_placement(Network(4, k4)));  // kappa > n/3
}

TEST_CASE("menger stitching routes through the requested vertex") {
  Network c6 = cycle(6);
  SimplePath via = bnt::menger_stitch(c6, 0, 3, 5, VertexSet{});
  CHECK(via.valid_in(c6));
  CHECK(via.nodes.front() == 0);
  CHECK(via.nodes.back() == 3);
  CHECK(via.contains(5));

  std::vector<std::pair<Vertex, Vertex>> edges;
  for (int u = 0; u < 5; ++u)
    for (int v = u + 1; v < 5; ++v) edges.push_back({u, v});
  Network k5(5, edges);
  SimplePath dodged = bnt::menger_stitch(k5, 0, 1, 2, VertexSet{3, 4});
  CHECK(dodged.valid_in(k5));
  CHECK(dodged.contains(2));
  CHECK_FALSE(dodged.touches(VertexSet{3, 4}));

  CHECK_THROWS(bnt::menger_stitch(c6, 0, 3, 5, VertexSet{1}));  // |W| > kappa-2
  CHECK_THROWS(bnt::menger_stitch(c6, 0, 0, 5, VertexSet{}));
  CHECK_THROWS(bnt::menger_stitch(c6, 0, 3, 3, VertexSet{}));

  bnt::Rng rng(41);
  int done = 0;
  while (done < 60) {
    Network g = bnt::gen_gnp(8, 0.6, rng.next_u64());
    bnt::ConnectivityReport conn = bnt::vertex_connectivity(g);
    if (conn.kappa < 2) continue;
    std::vector<int> picks = rng.sample_distinct(8, 3);
    rng.shuffle(picks);
    std::vector<Vertex> rest;
    for (Vertex v = 0; v < 8; ++v)
      if (v != picks[0] && v != picks[1] && v != picks[2]) rest.push_back(v);
    rng.shuffle(rest);
    rest.resize(rng.uniform_index(conn.kappa - 1));
    VertexSet w(rest);
    SimplePath path = bnt::menger_stitch(g, picks[0], picks[1], picks[2], w);
    CHECK(path.valid_in(g));
    CHECK(path.nodes.front() == picks[0]);
    CHECK(path.nodes.back() == picks[1]);
    CHECK(path.contains(picks[2]));
    CHECK_FALSE(path.touches(w));
    ++done;
  }
}

TEST_CASE("path query cache evicts least recently used entries") {
  bnt::PathQueryCache cache(2);
  auto a = bnt::PathQueryCache::pack({1, 2});
  auto b = bnt::PathQueryCache::pack({3});
  auto c = bnt::PathQueryCache::pack({1, 2, 64});
  CHECK_FALSE(cache.lookup(0, a).has_value());
  cache.store(0, a, true);
  cache.store(0, b, false);
  CHECK(cache.lookup(0, a) == std::optional<bool>{true});   // refreshes a
  cache.store(1, c, true);                                  // evicts b
  CHECK(cache.lookup(0, a) == std::optional<bool>{true});
  CHECK_FALSE(cache.lookup(0, b).has_value());
  CHECK(cache.lookup(1, c) == std::optional<bool>{true});
  // Same members, different vertex: distinct entry.
  CHECK_FALSE(cache.lookup(2, c).has_value());
  cache.store(1, c, false);  // overwrite in place
  CHECK(cache.lookup(1, c) == std::optional<bool>{false});
}
