#include "bnt/topology.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace bnt {
namespace {

long long int_pow(int base, int exp) {
  long long out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

void check_grid_params(int side, int dimension, int omega) {
  if (side < 1) throw std::invalid_argument("side must be positive");
  if (dimension < 1) throw std::invalid_argument("dimension must be positive");
  if (omega < 2) throw std::invalid_argument("omega must be at least 2");
  if (int_pow(side, dimension) > (1LL << 24))
    throw std::invalid_argument("grid too large");
}

std::vector<int> decode_point(long long index, int side, int dimension) {
  std::vector<int> coords(dimension);
  for (int a = 0; a < dimension; ++a) {
    coords[a] = static_cast<int>(index % side) + 1;
    index /= side;
  }
  return coords;
}

EmbeddedNetwork build_full_grid(int side, int dimension, int omega) {
  check_grid_params(side, dimension, omega);
  long long count = int_pow(side, dimension);
  std::vector<std::vector<int>> coords(count);
  for (long long i = 0; i < count; ++i) coords[i] = decode_point(i, side, dimension);

  LosEmbedding emb(dimension, side, omega, coords);
  std::vector<std::pair<Vertex, Vertex>> edge_list;
  for (long long i = 0; i < count; ++i) {
    // Step along each axis; same-line points within distance omega-1 are
    // visible. Emitting only the +delta side lists each edge once.
    for (int a = 0; a < dimension; ++a) {
      std::vector<int> pt = coords[i];
      for (int delta = 1; delta < omega && pt[a] + 1 <= side; ++delta) {
        pt[a] += 1;
        auto other = emb.vertex_at(pt);
        if (!other) break;
        edge_list.emplace_back(static_cast<Vertex>(i), *other);
      }
    }
  }
  return {Network(static_cast<int>(count), edge_list), std::move(emb)};
}

// Low border = some coordinate equals 1 (mirror: equals n).
bool on_low_border(const std::vector<int>& pt) {
  return std::find(pt.begin(), pt.end(), 1) != pt.end();
}

int l1_from_low_corner(const std::vector<int>& pt) {
  int dist = 0;
  for (int c : pt) dist += c - 1;
  return dist;
}

}  // namespace

LosEmbedding::LosEmbedding(int dimension, int side, int omega,
                           std::vector<std::vector<int>> coordinates)
    : d_(dimension), n_(side), omega_(omega), coords_(std::move(coordinates)) {
  if (d_ < 1 || n_ < 1 || omega_ < 2) throw std::invalid_argument("bad embedding parameters");
  for (size_t v = 0; v < coords_.size(); ++v) {
    const auto& pt = coords_[v];
    if (static_cast<int>(pt.size()) != d_)
      throw std::invalid_argument("coordinate arity mismatch");
    for (int c : pt)
      if (c < 1 || c > n_) throw std::invalid_argument("point outside the cube");
    if (!index_.emplace(pt, static_cast<Vertex>(v)).second)
      throw std::invalid_argument("duplicate occupied point");
  }
}

const std::vector<int>& LosEmbedding::coords_of(Vertex v) const {
  if (v < 0 || v >= vertex_count()) throw std::invalid_argument("vertex out of range");
  return coords_[v];
}

std::optional<Vertex> LosEmbedding::vertex_at(const std::vector<int>& point) const {
  auto it = index_.find(point);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool LosEmbedding::full_grid() const {
  return static_cast<long long>(coords_.size()) == int_pow(n_, d_);
}

EmbeddedNetwork build_hypergrid(int side, int dimension) {
  return build_full_grid(side, dimension, 2);
}

EmbeddedNetwork build_augmented_hypergrid(int side, int dimension, int omega) {
  if (omega <= 2)
    throw std::invalid_argument("augmented hypergrid needs omega > 2");
  return build_full_grid(side, dimension, omega);
}

EmbeddedNetwork build_los_network(int side, int dimension, int omega,
                                  const std::vector<std::vector<int>>& occupied) {
  check_grid_params(side, dimension, omega);
  LosEmbedding emb(dimension, side, omega, occupied);
  int count = emb.vertex_count();
  std::vector<std::pair<Vertex, Vertex>> edge_list;
  for (Vertex u = 0; u < count; ++u) {
    for (Vertex v = u + 1; v < count; ++v) {
      const auto& a = emb.coords_of(u);
      const auto& b = emb.coords_of(v);
      int differing = -1;
      bool line_of_sight = true;
      for (int ax = 0; ax < dimension; ++ax) {
        if (a[ax] == b[ax]) continue;
        if (differing >= 0) {
          line_of_sight = false;
          break;
        }
        differing = ax;
      }
      if (!line_of_sight || differing < 0) continue;
      if (std::abs(a[differing] - b[differing]) < omega) edge_list.emplace_back(u, v);
    }
  }
  return {Network(count, edge_list), std::move(emb)};
}

MonitorPlacement canonical_placement(const EmbeddedNetwork& emb) {
  const LosEmbedding& e = emb.embedding;
  if (!e.full_grid() || e.omega() <= 2)
    throw std::invalid_argument("canonical placement requires a full augmented hypergrid");
  int d = e.dimension();
  int n = e.side();
  int omega = e.omega();
  int count = d * omega - 1;
  if (n < omega)
    throw std::invalid_argument("n too small to host the border monitors");

  std::vector<std::vector<int>> chosen;
  auto already = [&](const std::vector<int>& pt) {
    return std::find(chosen.begin(), chosen.end(), pt) != chosen.end();
  };

  // All-ones corner, then the axis-line walk round-robin by distance.
  std::vector<int> corner(d, 1);
  chosen.push_back(corner);
  for (int dist = 1; dist < omega && static_cast<int>(chosen.size()) < count; ++dist) {
    for (int a = 0; a < d && static_cast<int>(chosen.size()) < count; ++a) {
      if (1 + dist > n) continue;
      std::vector<int> pt(d, 1);
      pt[a] = 1 + dist;
      chosen.push_back(pt);
    }
  }

  // Lines alone are short of d*omega-1 for d > 2 (and when truncated at the
  // far side); extend with the remaining low-border points nearest the
  // corner, lexicographic within equal distance.
  if (static_cast<int>(chosen.size()) < count) {
    std::vector<std::vector<int>> rest;
    for (Vertex v = 0; v < e.vertex_count(); ++v) {
      const auto& pt = e.coords_of(v);
      if (on_low_border(pt) && !already(pt)) rest.push_back(pt);
    }
    std::sort(rest.begin(), rest.end(), [](const auto& a, const auto& b) {
      int da = l1_from_low_corner(a), db = l1_from_low_corner(b);
      if (da != db) return da < db;
      return a < b;
    });
    for (const auto& pt : rest) {
      if (static_cast<int>(chosen.size()) >= count) break;
      chosen.push_back(pt);
    }
  }
  if (static_cast<int>(chosen.size()) < count)
    throw std::invalid_argument("n too small to host the border monitors");

  std::vector<Vertex> s_nodes, t_nodes;
  for (const auto& pt : chosen) {
    std::vector<int> mirror(d);
    for (int a = 0; a < d; ++a) mirror[a] = n + 1 - pt[a];
    s_nodes.push_back(*e.vertex_at(pt));
    t_nodes.push_back(*e.vertex_at(mirror));
  }
  MonitorPlacement placement{VertexSet(s_nodes), VertexSet(t_nodes)};
  if (placement.s_set.intersects(placement.t_set))
    throw std::invalid_argument("n too small to host the border monitors");
  return placement;
}

SaturationReport is_w_saturated(const EmbeddedNetwork& emb, Vertex u, Direction dir,
                                const VertexSet& w_set) {
  const LosEmbedding& e = emb.embedding;
  if (dir.axis < 0 || dir.axis >= e.dimension() || (dir.sign != 1 && dir.sign != -1))
    throw std::invalid_argument("invalid axis");
  std::vector<int> pt = e.coords_of(u);

  SaturationReport report;
  int existing = 0;
  bool all_in_w = true;
  for (int step = 1; step < e.omega(); ++step) {
    pt[dir.axis] += dir.sign;
    if (pt[dir.axis] < 1 || pt[dir.axis] > e.side()) continue;
    auto cell = e.vertex_at(pt);
    if (!cell) continue;
    ++existing;
    if (!w_set.contains(*cell)) all_in_w = false;
  }
  report.saturated = existing == e.omega() - 1 && all_in_w;
  report.blocked = all_in_w;  // vacuous when nothing exists in reach
  return report;
}

std::optional<SimplePath> monotone_path(const EmbeddedNetwork& emb, Vertex u,
                                        Corner corner, const VertexSet& w_set) {
  const LosEmbedding& e = emb.embedding;
  if (w_set.contains(u)) throw std::invalid_argument("start vertex is in the avoid set");
  int target_coord = corner == Corner::low ? 1 : e.side();
  int sign = corner == Corner::low ? -1 : 1;
  std::vector<int> corner_pt(e.dimension(), target_coord);
  auto corner_vertex = e.vertex_at(corner_pt);
  if (!corner_vertex) return std::nullopt;
  if (w_set.contains(*corner_vertex))
    throw std::invalid_argument("target corner is in the avoid set");

  SimplePath path;
  Vertex cur = u;
  path.nodes.push_back(cur);
  while (cur != *corner_vertex) {
    std::optional<Vertex> hop;
    for (int a = 0; a < e.dimension() && !hop; ++a) {
      std::vector<int> pt = e.coords_of(cur);
      for (int step = 1; step < e.omega(); ++step) {
        pt[a] += sign;
        if (pt[a] < 1 || pt[a] > e.side()) break;
        auto cell = e.vertex_at(pt);
        if (!cell) continue;
        if (!w_set.contains(*cell)) {
          hop = *cell;  // nearest non-avoided cell in the first open axis
          break;
        }
      }
    }
    if (!hop) return std::nullopt;
    cur = *hop;
    path.nodes.push_back(cur);
  }
  std::reverse(path.nodes.begin(), path.nodes.end());
  return path;
}

VertexSet region(const EmbeddedNetwork& emb, Vertex u, Region which) {
  const LosEmbedding& e = emb.embedding;
  const auto& anchor = e.coords_of(u);
  std::vector<Vertex> members;
  for (Vertex v = 0; v < e.vertex_count(); ++v) {
    const auto& pt = e.coords_of(v);
    bool inside = true;
    for (int a = 0; a < e.dimension() && inside; ++a)
      inside = which == Region::nw ? pt[a] <= anchor[a] : pt[a] >= anchor[a];
    if (inside) members.push_back(v);
  }
  return VertexSet(members);
}

}  // namespace bnt
