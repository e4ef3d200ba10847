#include "bnt/identifiability.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <functional>
#include <queue>
#include <stdexcept>
#include <unordered_set>

namespace bnt {
namespace {

void validate_placement(const Network& g, const MonitorPlacement& placement) {
  if (placement.s_set.empty() || placement.t_set.empty())
    throw std::invalid_argument("monitor sets must be nonempty");
  if (placement.s_set.intersects(placement.t_set))
    throw std::invalid_argument("monitor sets must be disjoint");
  for (Vertex v : placement.s_set.set_union(placement.t_set))
    if (v < 0 || v >= g.vertex_count())
      throw std::invalid_argument("monitor out of range");
}

bool query_path(const ProbingScheme& scheme, Vertex v, const std::vector<Vertex>& avoid,
                PathQueryCache* cache) {
  if (cache) {
    std::vector<uint64_t> packed = PathQueryCache::pack(avoid);
    if (auto hit = cache->lookup(v, packed)) return *hit;
    bool found = path_through_avoiding(scheme.network, scheme.placement.s_set,
                                       scheme.placement.t_set, v, VertexSet(avoid))
                     .has_value();
    cache->store(v, packed, found);
    return found;
  }
  return path_through_avoiding(scheme.network, scheme.placement.s_set,
                               scheme.placement.t_set, v, VertexSet(avoid))
      .has_value();
}

// Sorted-vector set difference into a small scratch buffer.
void diff_into(const std::vector<Vertex>& a, const std::vector<Vertex>& b,
               std::vector<Vertex>& out) {
  out.clear();
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
}

// Core of separable(): true when some vertex of one set reaches both monitor
// classes while dodging the other set entirely. Packs each avoid set once and
// reuses thread-local buffers; the sweep visits millions of pairs.
bool separable_pair(const ProbingScheme& scheme, const std::vector<Vertex>& u_set,
                    const std::vector<Vertex>& w_set, PathQueryCache* cache) {
  static thread_local std::vector<Vertex> diff;
  static thread_local std::vector<uint64_t> packed;
  assert(cache);

  auto probe_side = [&](const std::vector<Vertex>& probe, const std::vector<Vertex>& avoid) {
    diff_into(probe, avoid, diff);
    if (diff.empty()) return false;
    PathQueryCache::pack_into(avoid, packed);
    for (Vertex v : diff) {
      if (auto hit = cache->lookup(v, packed)) {
        if (*hit) return true;
        continue;
      }
      bool found = path_through_avoiding(scheme.network, scheme.placement.s_set,
                                         scheme.placement.t_set, v, VertexSet(avoid))
                       .has_value();
      cache->store(v, packed, found);
      if (found) return true;
    }
    return false;
  };

  return probe_side(u_set, w_set) || probe_side(w_set, u_set);
}

// Subsets of `universe` of size m, lexicographic by member list.
std::vector<std::vector<Vertex>> combinations(const std::vector<Vertex>& universe, int m) {
  std::vector<std::vector<Vertex>> out;
  int n = static_cast<int>(universe.size());
  if (m < 0 || m > n) return out;
  std::vector<int> idx(m);
  for (int i = 0; i < m; ++i) idx[i] = i;
  while (true) {
    std::vector<Vertex> subset(m);
    for (int i = 0; i < m; ++i) subset[i] = universe[idx[i]];
    out.push_back(std::move(subset));
    int i = m - 1;
    while (i >= 0 && idx[i] == n - m + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

// Sweeps every unordered subset pair with max size exactly m (smaller sizes
// first as U, then same-size lexicographically smaller U), in deterministic
// order. Returns the first failing pair.
std::optional<std::pair<VertexSet, VertexSet>> sweep_level(
    const ProbingScheme& scheme, const std::vector<std::vector<std::vector<Vertex>>>& by_size,
    int m, PathQueryCache* cache) {
  for (const auto& w : by_size[m]) {
    for (int su = 0; su < m; ++su)
      for (const auto& u : by_size[su])
        if (!separable_pair(scheme, u, w, cache))
          return std::make_pair(VertexSet(u), VertexSet(w));
    for (const auto& u : by_size[m]) {
      if (!(u < w)) break;
      if (!separable_pair(scheme, u, w, cache))
        return std::make_pair(VertexSet(u), VertexSet(w));
    }
  }
  return std::nullopt;
}

}  // namespace

ProbingScheme::ProbingScheme(Network g, MonitorPlacement p)
    : network(std::move(g)), placement(std::move(p)) {
  validate_placement(network, placement);
}

Syndrome evaluate_syndrome(const ProbingScheme& scheme,
                           const std::vector<SimplePath>& paths,
                           const FailureScenario& scenario) {
  Syndrome syndrome;
  syndrome.path_failed.reserve(paths.size());
  for (const auto& path : paths) {
    bool endpoints_ok =
        !path.nodes.empty() &&
        ((scheme.placement.s_set.contains(path.nodes.front()) &&
          scheme.placement.t_set.contains(path.nodes.back())) ||
         (scheme.placement.t_set.contains(path.nodes.front()) &&
          scheme.placement.s_set.contains(path.nodes.back())));
    if (!endpoints_ok || !path.valid_in(scheme.network))
      throw std::invalid_argument("invalid path");
    syndrome.path_failed.push_back(path.touches(scenario.failed));
  }
  return syndrome;
}

std::vector<SimplePath> enumerate_paths(const ProbingScheme& scheme, size_t cap) {
  const Network& g = scheme.network;
  std::vector<SimplePath> results;
  std::vector<char> on_path(g.vertex_count(), 0);
  std::vector<Vertex> path;

  std::function<void(Vertex)> dfs = [&](Vertex v) {
    on_path[v] = 1;
    path.push_back(v);
    if (scheme.placement.t_set.contains(v)) {
      if (results.size() >= cap) throw std::runtime_error("path universe too large");
      results.push_back(SimplePath{path});
    }
    for (Vertex w : g.neighbors(v))
      if (!on_path[w]) dfs(w);
    path.pop_back();
    on_path[v] = 0;
  };

  for (Vertex s : scheme.placement.s_set) dfs(s);
  return results;
}

std::vector<uint64_t> PathQueryCache::pack(const std::vector<Vertex>& sorted_members) {
  std::vector<uint64_t> blocks;
  pack_into(sorted_members, blocks);
  return blocks;
}

void PathQueryCache::pack_into(const std::vector<Vertex>& sorted_members,
                               std::vector<uint64_t>& out) {
  out.clear();
  if (sorted_members.empty()) return;
  out.resize(static_cast<size_t>(sorted_members.back() / 64) + 1, 0);
  for (Vertex v : sorted_members) out[v / 64] |= uint64_t{1} << (v % 64);
}

size_t PathQueryCache::KeyHash::operator()(const Key& key) const {
  uint64_t h = 0xcbf29ce484222325ULL ^ static_cast<uint64_t>(key.first);
  for (uint64_t block : key.second) {
    h ^= block;
    h *= 0x100000001b3ULL;
  }
  return static_cast<size_t>(h);
}

std::optional<bool> PathQueryCache::lookup(Vertex v, const std::vector<uint64_t>& packed) {
  auto it = map_.find({v, packed});
  if (it == map_.end()) return std::nullopt;
  order_.splice(order_.begin(), order_, it->second.second);
  return it->second.first;
}

void PathQueryCache::store(Vertex v, const std::vector<uint64_t>& packed, bool result) {
  Key key{v, packed};
  auto it = map_.find(key);
  if (it != map_.end()) {
    it->second.first = result;
    order_.splice(order_.begin(), order_, it->second.second);
    return;
  }
  order_.push_front(key);
  map_.emplace(std::move(key), std::make_pair(result, order_.begin()));
  if (map_.size() > capacity_) {
    map_.erase(order_.back());
    order_.pop_back();
  }
}

SeparabilityVerdict separable(const ProbingScheme& scheme, const VertexSet& u_set,
                              const VertexSet& w_set, PathQueryCache* cache) {
  if (u_set == w_set) throw std::invalid_argument("identical sets");
  SeparabilityVerdict verdict;
  auto try_side = [&](const VertexSet& probe, const VertexSet& avoid,
                      SeparabilityVerdict::Side side) {
    for (Vertex v : probe.set_difference(avoid)) {
      if (query_path(scheme, v, avoid.members(), cache)) {
        verdict.separable = true;
        verdict.witness_side = side;
        verdict.witness_path = path_through_avoiding(
            scheme.network, scheme.placement.s_set, scheme.placement.t_set, v, avoid);
        return true;
      }
    }
    return false;
  };
  if (try_side(u_set, w_set, SeparabilityVerdict::Side::u_side)) return verdict;
  if (try_side(w_set, u_set, SeparabilityVerdict::Side::w_side)) return verdict;
  return verdict;
}

KIdentifiability is_k_identifiable(const ProbingScheme& scheme, const VertexSet& nodes,
                                   int k, PathQueryCache* cache) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  for (Vertex v : nodes)
    if (v < 0 || v >= scheme.network.vertex_count())
      throw std::invalid_argument("node out of range");

  PathQueryCache local_cache;
  if (!cache) cache = &local_cache;
  const auto& universe = nodes.members();
  std::vector<std::vector<std::vector<Vertex>>> by_size(k + 1);
  for (int m = 0; m <= k; ++m) by_size[m] = combinations(universe, m);

  KIdentifiability result;
  for (int m = 1; m <= k; ++m) {
    if (auto failing = sweep_level(scheme, by_size, m, cache)) {
      result.identifiable = false;
      result.failing_pair = std::move(failing);
      return result;
    }
  }
  result.identifiable = true;
  return result;
}

VertexSet path_covered_nodes(const ProbingScheme& scheme) {
  std::vector<Vertex> covered;
  for (Vertex v = 0; v < scheme.network.vertex_count(); ++v)
    if (path_through_avoiding(scheme.network, scheme.placement.s_set,
                              scheme.placement.t_set, v, VertexSet{}))
      covered.push_back(v);
  return VertexSet(covered);
}

IdentifiabilityReport max_identifiability(const ProbingScheme& scheme, int k_max) {
  auto started = std::chrono::steady_clock::now();
  IdentifiabilityReport report;

  report.bounds.delta = min_degree(scheme.network);
  ConnectivityReport conn = vertex_connectivity(scheme.network);
  report.bounds.kappa = conn.kappa;
  StSeparator sep =
      st_separator(scheme.network, scheme.placement.s_set, scheme.placement.t_set);
  if (!sep.unbounded) {
    report.bounds.kappa_st = sep.size();
    report.bounds.upper_separator = sep.size();
  }
  report.bounds.lower_general =
      std::min(conn.kappa, static_cast<int>(std::min(scheme.placement.s_set.size(),
                                                     scheme.placement.t_set.size()))) -
      2;

  if (k_max <= 0) k_max = report.bounds.delta + 1;

  VertexSet universe = path_covered_nodes(scheme);
  // Levels past the covered-node count contribute no subsets, so mu caps
  // there and the answer is exact once the whole range has been swept.
  int covered = static_cast<int>(universe.size());
  int top = std::min(k_max, covered);

  PathQueryCache cache;
  std::vector<std::vector<std::vector<Vertex>>> by_size(top + 1);
  for (int m = 0; m <= top; ++m) by_size[m] = combinations(universe.members(), m);

  report.mu = top;
  report.exact = k_max >= covered;
  for (int m = 1; m <= top; ++m) {
    if (auto failing = sweep_level(scheme, by_size, m, &cache)) {
      report.mu = m - 1;
      report.exact = true;
      report.failing_pair = std::move(failing);
      break;
    }
  }

  report.runtime_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - started)
                          .count();
  return report;
}

std::pair<VertexSet, VertexSet> upper_bound_witness(const ProbingScheme& scheme) {
  StSeparator sep =
      st_separator(scheme.network, scheme.placement.s_set, scheme.placement.t_set);
  if (sep.unbounded || sep.separator.empty())
    throw std::runtime_error("no separator exists");

  Vertex lowest_neighbor = -1;
  for (Vertex k : sep.separator)
    for (Vertex w : scheme.network.neighbors(k))
      if (!sep.separator.contains(w) && (lowest_neighbor < 0 || w < lowest_neighbor))
        lowest_neighbor = w;
  assert(lowest_neighbor >= 0);

  VertexSet with_neighbor = sep.separator;
  with_neighbor.insert(lowest_neighbor);
  return {sep.separator, with_neighbor};
}

MonitorPlacement separator_placement(const Network& g) {
  ConnectivityReport conn = vertex_connectivity(g);
  if (conn.disconnected) throw std::invalid_argument("network must be connected");
  if (3 * conn.kappa > g.vertex_count())
    throw std::runtime_error("connectivity too high for this construction");
  // Complete graphs always trip the guard above (kappa = n-1).
  assert(!conn.complete);

  // Components of G minus the separator, smallest first (ties by lowest id).
  std::vector<std::vector<Vertex>> components;
  std::vector<char> seen(g.vertex_count(), 0);
  for (Vertex v : conn.min_separator) seen[v] = 1;
  for (Vertex start = 0; start < g.vertex_count(); ++start) {
    if (seen[start]) continue;
    std::vector<Vertex> comp;
    std::queue<Vertex> frontier;
    frontier.push(start);
    seen[start] = 1;
    while (!frontier.empty()) {
      Vertex v = frontier.front();
      frontier.pop();
      comp.push_back(v);
      for (Vertex w : g.neighbors(v))
        if (!seen[w]) {
          seen[w] = 1;
          frontier.push(w);
        }
    }
    std::sort(comp.begin(), comp.end());
    components.push_back(std::move(comp));
  }
  std::sort(components.begin(), components.end(),
            [](const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a.front() < b.front();
            });
  assert(components.size() >= 2);

  const std::vector<Vertex>& smallest = components.front();
  std::vector<Vertex> others;
  for (size_t i = 1; i < components.size(); ++i)
    others.insert(others.end(), components[i].begin(), components[i].end());
  std::sort(others.begin(), others.end());

  int k = conn.kappa;
  std::vector<Vertex> s_nodes, t_nodes;
  if (static_cast<int>(smallest.size()) >= k) {
    s_nodes.assign(smallest.begin(), smallest.begin() + k);
    t_nodes.assign(others.begin(), others.begin() + k);
  } else {
    // Top up S from the other components; T comes after those, so the
    // smallest component stays all-S.
    int need = k - static_cast<int>(smallest.size());
    s_nodes = smallest;
    s_nodes.insert(s_nodes.end(), others.begin(), others.begin() + need);
    t_nodes.assign(others.begin() + need, others.begin() + need + k);
  }
  MonitorPlacement placement{VertexSet(s_nodes), VertexSet(t_nodes)};
  assert(static_cast<int>(placement.s_set.size()) == k);
  assert(static_cast<int>(placement.t_set.size()) == k);
  assert(!placement.s_set.intersects(placement.t_set));
  return placement;
}

SimplePath menger_stitch(const Network& g, Vertex s, Vertex t, Vertex u,
                         const VertexSet& w_set) {
  if (s == t || s == u || t == u)
    throw std::invalid_argument("s, t, u must be distinct");
  if (w_set.contains(s) || w_set.contains(t) || w_set.contains(u))
    throw std::invalid_argument("endpoint inside the avoid set");
  ConnectivityReport conn = vertex_connectivity(g);
  if (static_cast<int>(w_set.size()) > conn.kappa - 2)
    throw std::runtime_error("Menger precondition violated");

  std::vector<SimplePath> from_s = disjoint_paths(g, s, u, w_set, 2);  // s -> u
  std::vector<SimplePath> to_t = disjoint_paths(g, u, t, w_set, 2);    // u -> t
  if (from_s.size() < 2 || to_t.size() < 2)
    throw std::logic_error("disjoint path guarantee failed");

  auto finish = [&](SimplePath path) {
    assert(path.valid_in(g));
    assert(path.nodes.front() == s && path.nodes.back() == t);
    assert(path.contains(u));
    assert(!path.touches(w_set));
    return path;
  };

  // Clean case: some s-u path meets some u-t path only at u.
  for (const auto& ps : from_s) {
    for (const auto& pt : to_t) {
      std::unordered_set<Vertex> in_pt(pt.nodes.begin(), pt.nodes.end());
      bool clean = true;
      for (Vertex v : ps.nodes)
        if (v != u && in_pt.count(v)) {
          clean = false;
          break;
        }
      if (clean) {
        SimplePath path = ps;
        path.nodes.insert(path.nodes.end(), pt.nodes.begin() + 1, pt.nodes.end());
        return finish(std::move(path));
      }
    }
  }

  // Stitch: walk an s-u path from s to its first vertex z on either u-t path
  // (ordering along the stored path, nearer u is later), ride that u-t path
  // backwards from z to u, then take the other u-t path out to t. At most one
  // s-u path can run through t itself; skip it and use the other.
  std::unordered_set<Vertex> in_pt0(to_t[0].nodes.begin(), to_t[0].nodes.end());
  std::unordered_set<Vertex> in_pt1(to_t[1].nodes.begin(), to_t[1].nodes.end());
  for (const auto& ps : from_s) {
    size_t zi = 0;
    while (!in_pt0.count(ps.nodes[zi]) && !in_pt1.count(ps.nodes[zi])) ++zi;
    Vertex z = ps.nodes[zi];
    assert(z != u);  // would have been a clean pair
    if (z == t) continue;

    const SimplePath& ride = in_pt0.count(z) ? to_t[0] : to_t[1];
    const SimplePath& out = in_pt0.count(z) ? to_t[1] : to_t[0];
    size_t pos = 0;
    while (ride.nodes[pos] != z) ++pos;

    SimplePath path;
    path.nodes.assign(ps.nodes.begin(), ps.nodes.begin() + zi + 1);  // s .. z
    for (size_t i = pos; i-- > 0;) path.nodes.push_back(ride.nodes[i]);  // z .. u
    path.nodes.insert(path.nodes.end(), out.nodes.begin() + 1, out.nodes.end());
    return finish(std::move(path));
  }
  throw std::logic_error("stitch construction failed");
}

}  // namespace bnt
