#include <vector>

#include "bnt/connectivity.hpp"
#include "bnt/graph.hpp"
#include "bnt/topology.hpp"
#include "doctest.h"

using bnt::Corner;
using bnt::Direction;
using bnt::EmbeddedNetwork;
using bnt::Network;
using bnt::Region;
using bnt::Vertex;
using bnt::VertexSet;

namespace {

Vertex at(const EmbeddedNetwork& emb, std::vector<int> point) {
  auto v = emb.embedding.vertex_at(point);
  REQUIRE(v.has_value());
  return *v;
}

}  // namespace

TEST_CASE("hypergrid structure") {
  EmbeddedNetwork emb = bnt::build_hypergrid(3, 2);
  CHECK(emb.network.vertex_count() == 9);
  CHECK(emb.network.edge_count() == 12);
  CHECK(emb.embedding.full_grid());
  // Coordinates round-trip through the embedding.
  for (Vertex v = 0; v < 9; ++v) CHECK(at(emb, emb.embedding.coords_of(v)) == v);
  Vertex center = at(emb, {2, 2});
  CHECK(emb.network.degree(center) == 4);
  Vertex corner = at(emb, {1, 1});
  CHECK(emb.network.degree(corner) == 2);
  CHECK(emb.network.has_edge(at(emb, {1, 1}), at(emb, {1, 2})));
  CHECK_FALSE(emb.network.has_edge(at(emb, {1, 1}), at(emb, {2, 2})));

  EmbeddedNetwork line = bnt::build_hypergrid(4, 1);
  CHECK(line.network.vertex_count() == 4);
  CHECK(line.network.edge_count() == 3);

  EmbeddedNetwork cube = bnt::build_hypergrid(2, 3);
  CHECK(cube.network.vertex_count() == 8);
  CHECK(cube.network.edge_count() == 12);
}

TEST_CASE("augmented hypergrid adds all axis edges within the sight range") {
  EmbeddedNetwork emb = bnt::build_augmented_hypergrid(4, 2, 3);
  CHECK(emb.network.vertex_count() == 16);
  // Axis-aligned pairs at distance <= omega-1 are now edges.
  CHECK(emb.network.has_edge(at(emb, {1, 1}), at(emb, {3, 1})));
  CHECK_FALSE(emb.network.has_edge(at(emb, {1, 1}), at(emb, {4, 1})));
  CHECK_FALSE(emb.network.has_edge(at(emb, {1, 1}), at(emb, {2, 2})));
  // Minimum degree d*(omega-1) is met at the corners.
  CHECK(bnt::min_degree(emb.network) == 2 * (3 - 1));
  CHECK(emb.network.degree(at(emb, {1, 1})) == 4);

  CHECK(bnt::min_degree(bnt::build_augmented_hypergrid(5, 2, 4).network) == 2 * 3);
  CHECK(bnt::min_degree(bnt::build_augmented_hypergrid(3, 3, 3).network) == 3 * 2);

  CHECK_THROWS(bnt::build_augmented_hypergrid(4, 2, 2));
  CHECK_THROWS(bnt::build_augmented_hypergrid(0, 2, 3));
  CHECK_THROWS(bnt::build_augmented_hypergrid(4, 0, 3));
}

TEST_CASE("line of sight network on a partial grid") {
  // 3x3 grid with the center empty.
  std::vector<std::vector<int>> occupied;
  for (int x = 1; x <= 3; ++x)
    for (int y = 1; y <= 3; ++y)
      if (!(x == 2 && y == 2)) occupied.push_back({x, y});
  EmbeddedNetwork emb = bnt::build_los_network(3, 2, 3, occupied);
  CHECK(emb.network.vertex_count() == 8);
  CHECK_FALSE(emb.embedding.full_grid());
  CHECK_FALSE(emb.embedding.vertex_at({2, 2}).has_value());
  // Aligned across the hole, within sight range: still an edge.
  CHECK(emb.network.has_edge(at(emb, {1, 2}), at(emb, {3, 2})));
  // Not axis-aligned: never an edge.
  CHECK_FALSE(emb.network.has_edge(at(emb, {1, 1}), at(emb, {2, 3})));

  CHECK_THROWS(bnt::build_los_network(3, 2, 3, {{1, 1}, {1, 1}}));  // duplicate
  CHECK_THROWS(bnt::build_los_network(3, 2, 3, {{0, 1}}));          // off grid
  CHECK_THROWS(bnt::build_los_network(3, 2, 3, {{1}}));             // wrong arity
}

TEST_CASE("canonical monitor placement on the 4x4 augmented grid") {
  EmbeddedNetwork emb = bnt::build_augmented_hypergrid(4, 2, 3);
  bnt::MonitorPlacement placement = bnt::canonical_placement(emb);
  CHECK(placement.s_set.size() == 5);  // d*omega - 1
  CHECK(placement.t_set.size() == 5);
  VertexSet expected_s{at(emb, {1, 1}), at(emb, {2, 1}), at(emb, {1, 2}),
                       at(emb, {3, 1}), at(emb, {1, 3})};
  VertexSet expected_t{at(emb, {4, 4}), at(emb, {3, 4}), at(emb, {4, 3}),
                       at(emb, {2, 4}), at(emb, {4, 2})};
  CHECK(placement.s_set == expected_s);
  CHECK(placement.t_set == expected_t);
}

TEST_CASE("canonical placement spills onto interior border points in 3d") {
  EmbeddedNetwork emb = bnt::build_augmented_hypergrid(3, 3, 3);
  bnt::MonitorPlacement placement = bnt::canonical_placement(emb);
  CHECK(placement.s_set.size() == 8);  // d*omega - 1 = 8 > axis points available
  CHECK(placement.s_set.contains(at(emb, {1, 1, 1})));
  CHECK(placement.s_set.contains(at(emb, {1, 2, 2})));  // first off-axis border point
  CHECK(placement.t_set.contains(at(emb, {3, 2, 2})));
  CHECK_FALSE(placement.s_set.intersects(placement.t_set));
}

TEST_CASE("canonical placement rejects grids whose monitor borders collide") {
  EmbeddedNetwork emb = bnt::build_augmented_hypergrid(3, 2, 3);
  CHECK_THROWS(bnt::canonical_placement(emb));  // n < omega: borders overlap
  std::vector<std::vector<int>> some{{1, 1}, {2, 2}};
  CHECK_THROWS(bnt::canonical_placement(bnt::build_los_network(4, 2, 3, some)));
}

TEST_CASE("saturation report distinguishes full and border-truncated reach") {
  EmbeddedNetwork emb = bnt::build_augmented_hypergrid(4, 2, 3);
  Direction right{0, +1};
  Vertex origin = at(emb, {1, 1});

  auto clear = bnt::is_w_saturated(emb, origin, right, VertexSet{});
  CHECK_FALSE(clear.saturated);
  CHECK_FALSE(clear.blocked);

  VertexSet wall{at(emb, {2, 1}), at(emb, {3, 1})};
  auto sat = bnt::is_w_saturated(emb, origin, right, wall);
  CHECK(sat.saturated);
  CHECK(sat.blocked);

  VertexSet partial{at(emb, {2, 1})};
  auto half = bnt::is_w_saturated(emb, origin, right, partial);
  CHECK_FALSE(half.saturated);
  CHECK_FALSE(half.blocked);

  // One step from the border only one cell exists; covering it blocks the
  // direction but cannot saturate it.
  Vertex near_edge = at(emb, {3, 1});
  auto truncated = bnt::is_w_saturated(emb, near_edge, right, VertexSet{at(emb, {4, 1})});
  CHECK_FALSE(truncated.saturated);
  CHECK(truncated.blocked);

  // Against the border no cell exists at all: vacuously blocked.
  auto outside = bnt::is_w_saturated(emb, at(emb, {4, 1}), right, VertexSet{});
  CHECK_FALSE(outside.saturated);
  CHECK(outside.blocked);
}

TEST_CASE("monotone path walks corner to vertex dodging the avoid set") {
  EmbeddedNetwork emb = bnt::build_augmented_hypergrid(4, 2, 3);
  Vertex target = at(emb, {3, 3});

  auto free = bnt::monotone_path(emb, target, Corner::low, VertexSet{});
  REQUIRE(free.has_value());
  CHECK(free->valid_in(emb.network));
  CHECK(free->nodes.front() == at(emb, {1, 1}));
  CHECK(free->nodes.back() == target);
  // Corner-to-target coordinates never decrease along the walk.
  for (size_t i = 1; i < free->nodes.size(); ++i) {
    const auto& prev = emb.embedding.coords_of(free->nodes[i - 1]);
    const auto& cur = emb.embedding.coords_of(free->nodes[i]);
    CHECK(prev[0] <= cur[0]);
    CHECK(prev[1] <= cur[1]);
  }

  VertexSet dodge{at(emb, {2, 3}), at(emb, {3, 2})};
  auto around = bnt::monotone_path(emb, target, Corner::low, dodge);
  REQUIRE(around.has_value());
  CHECK_FALSE(around->touches(dodge));
  CHECK(around->nodes.back() == target);

  auto high = bnt::monotone_path(emb, at(emb, {2, 2}), Corner::high, VertexSet{});
  REQUIRE(high.has_value());
  CHECK(high->nodes.front() == at(emb, {4, 4}));
  CHECK(high->nodes.back() == at(emb, {2, 2}));

  // Sealing every cell around the target in both low directions stalls it.
  VertexSet seal{at(emb, {1, 3}), at(emb, {2, 3}), at(emb, {3, 1}), at(emb, {3, 2})};
  CHECK_FALSE(bnt::monotone_path(emb, target, Corner::low, seal).has_value());
}

TEST_CASE("dominance regions") {
  EmbeddedNetwork emb = bnt::build_hypergrid(3, 2);
  Vertex u = at(emb, {2, 2});
  VertexSet nw = bnt::region(emb, u, Region::nw);
  CHECK(nw == VertexSet{at(emb, {1, 1}), at(emb, {1, 2}), at(emb, {2, 1}), u});
  VertexSet se = bnt::region(emb, u, Region::se);
  CHECK(se == VertexSet{u, at(emb, {2, 3}), at(emb, {3, 2}), at(emb, {3, 3})});
  CHECK(bnt::region(emb, at(emb, {1, 1}), Region::nw) == VertexSet{at(emb, {1, 1})});
}
