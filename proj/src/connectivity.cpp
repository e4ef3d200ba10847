#include "bnt/connectivity.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "flow.hpp"

namespace bnt {
namespace {

using detail::FlowNetwork;
using detail::kInfCap;

// Vertex-split digraph: vertex v becomes arc in(v) -> out(v) carrying v's
// capacity, undirected edge {u,v} becomes out(u) -> in(v) and out(v) -> in(u).
// Vertices in `removed` keep their node ids but get no arcs at all.
struct SplitGraph {
  FlowNetwork net;
  int n;

  static int in(Vertex v) { return 2 * v; }
  static int out(Vertex v) { return 2 * v + 1; }

  // vertex_cap < 0 leaves the in->out arc off entirely (used for the query
  // vertex of path_through_avoiding, which is sourced at out(v) and must not
  // be re-entered).
  SplitGraph(const Network& g, const VertexSet& removed, const VertexSet& uncapped,
             int edge_cap, std::optional<Vertex> no_self_arc = std::nullopt)
      : net(2 * g.vertex_count()), n(g.vertex_count()) {
    for (Vertex v = 0; v < n; ++v) {
      if (removed.contains(v)) continue;
      if (no_self_arc && *no_self_arc == v) continue;
      net.add_arc(in(v), out(v), uncapped.contains(v) ? kInfCap : 1);
    }
    for (auto [u, v] : g.edges()) {
      if (removed.contains(u) || removed.contains(v)) continue;
      net.add_arc(out(u), in(v), edge_cap);
      net.add_arc(out(v), in(u), edge_cap);
    }
  }
};

void require_nonempty(const Network& g) {
  if (g.vertex_count() == 0) throw std::invalid_argument("empty network");
}

// Max-flow between two distinct non-adjacent vertices with unit interior
// capacities equals their local vertex connectivity (Menger). Optionally
// reports the cut realizing it.
int local_connectivity(const Network& g, Vertex a, Vertex b, VertexSet* cut_out) {
  SplitGraph sg(g, VertexSet{}, VertexSet{}, kInfCap);
  int value = sg.net.max_flow(SplitGraph::out(a), SplitGraph::in(b), g.vertex_count());
  if (cut_out) {
    std::vector<char> reach = sg.net.source_side(SplitGraph::out(a));
    std::vector<Vertex> cut;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
      if (reach[SplitGraph::in(v)] && !reach[SplitGraph::out(v)]) cut.push_back(v);
    *cut_out = VertexSet(cut);
    assert(static_cast<int>(cut_out->size()) == value);
  }
  return value;
}

// Translate a split-graph node sequence back to vertices: keep a vertex once
// when its in-node (or, for the first node, its out-node) appears.
std::vector<Vertex> collapse_split_nodes(const std::vector<int>& nodes) {
  std::vector<Vertex> verts;
  for (int node : nodes) {
    Vertex v = node / 2;
    if (verts.empty() || verts.back() != v) verts.push_back(v);
  }
  return verts;
}

}  // namespace

int min_degree(const Network& g) {
  require_nonempty(g);
  int best = g.degree(0);
  for (Vertex v = 1; v < g.vertex_count(); ++v) best = std::min(best, g.degree(v));
  return best;
}

ConnectivityReport vertex_connectivity(const Network& g) {
  require_nonempty(g);
  if (g.vertex_count() < 2) throw std::invalid_argument("network too small");

  ConnectivityReport report;
  report.min_degree = min_degree(g);
  if (!g.is_connected()) {
    report.disconnected = true;
    return report;
  }
  if (g.is_complete()) {
    report.complete = true;
    report.kappa = g.vertex_count() - 1;
    return report;
  }

  // Minimum-degree anchor: a minimum cut either separates it from some
  // non-neighbor, or contains it, in which case two of its neighbors end up
  // in different components and are non-adjacent.
  Vertex anchor = 0;
  for (Vertex v = 1; v < g.vertex_count(); ++v)
    if (g.degree(v) < g.degree(anchor)) anchor = v;

  int best = g.vertex_count();
  VertexSet best_cut;
  auto consider = [&](Vertex a, Vertex b) {
    VertexSet cut;
    int value = local_connectivity(g, a, b, &cut);
    if (value < best) {
      best = value;
      best_cut = cut;
    }
  };

  for (Vertex w = 0; w < g.vertex_count(); ++w)
    if (w != anchor && !g.has_edge(anchor, w)) consider(anchor, w);
  const auto& nbrs = g.neighbors(anchor);
  for (size_t i = 0; i < nbrs.size(); ++i)
    for (size_t j = i + 1; j < nbrs.size(); ++j)
      if (!g.has_edge(nbrs[i], nbrs[j])) consider(nbrs[i], nbrs[j]);

  report.kappa = best;
  report.min_separator = best_cut;
  assert(report.kappa <= report.min_degree);
  return report;
}

StSeparator st_separator(const Network& g, const VertexSet& s_set, const VertexSet& t_set) {
  require_nonempty(g);
  if (s_set.empty() || t_set.empty())
    throw std::invalid_argument("monitor sets must be nonempty");
  StSeparator result;
  if (s_set.intersects(t_set)) {
    result.unbounded = true;
    return result;
  }
  for (Vertex s : s_set)
    for (Vertex t : t_set)
      if (g.has_edge(s, t)) {
        result.unbounded = true;
        return result;
      }

  // Terminals get infinite capacity so the min cut lives strictly outside
  // S and T; every S-T path crosses some interior vertex because direct
  // S-T edges were ruled out above.
  VertexSet terminals = s_set.set_union(t_set);
  SplitGraph sg(g, VertexSet{}, terminals, kInfCap);
  int source = sg.net.add_node();
  int sink = sg.net.add_node();
  for (Vertex s : s_set) sg.net.add_arc(source, SplitGraph::out(s), kInfCap);
  for (Vertex t : t_set) sg.net.add_arc(SplitGraph::in(t), sink, kInfCap);

  int value = sg.net.max_flow(source, sink, g.vertex_count());
  std::vector<char> reach = sg.net.source_side(source);
  std::vector<Vertex> cut;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (reach[SplitGraph::in(v)] && !reach[SplitGraph::out(v)]) cut.push_back(v);
  result.separator = VertexSet(cut);
  assert(result.size() == value);
  (void)value;
  return result;
}

std::vector<SimplePath> disjoint_paths(const Network& g, Vertex u, Vertex v,
                                       const VertexSet& forbidden, int want) {
  require_nonempty(g);
  if (u == v) throw std::invalid_argument("endpoints must differ");
  if (forbidden.contains(u) || forbidden.contains(v))
    throw std::invalid_argument("endpoint is forbidden");
  if (want <= 0) return {};

  // Unit arcs everywhere so the integral flow decomposes into one path per
  // unit; endpoints get infinite vertex capacity to carry all of them.
  SplitGraph sg(g, forbidden, VertexSet{u, v}, 1);
  int source = SplitGraph::out(u);
  int sink = SplitGraph::in(v);
  int value = sg.net.max_flow(source, sink, want);

  std::vector<SimplePath> paths;
  for (int i = 0; i < value; ++i) {
    std::vector<int> nodes = sg.net.extract_unit_path(source, sink);
    assert(!nodes.empty());
    SimplePath path{collapse_split_nodes(nodes)};
    assert(path.nodes.front() == u && path.nodes.back() == v);
    paths.push_back(std::move(path));
  }
  return paths;
}

std::optional<SimplePath> path_through_avoiding(const Network& g, const VertexSet& s_set,
                                                const VertexSet& t_set, Vertex v,
                                                const VertexSet& avoid) {
  require_nonempty(g);
  if (v < 0 || v >= g.vertex_count()) throw std::invalid_argument("vertex out of range");
  if (avoid.contains(v)) throw std::invalid_argument("query vertex is avoided");
  if (s_set.intersects(t_set))
    throw std::invalid_argument("monitor sets must be disjoint");
  if (s_set.empty() || t_set.empty()) return std::nullopt;

  // Two units leave out(v); one must drain into the S-sink, one into the
  // T-sink (each capped at a single unit). v's own in->out arc is omitted so
  // neither leg can pass through v again. A monitor reached as a leg's
  // endpoint spends its out-node arc into the matching sink; if v itself is a
  // monitor the corresponding leg is the zero-length one.
  SplitGraph sg(g, avoid, VertexSet{}, 1, v);
  int sink_s = sg.net.add_node();
  int sink_t = sg.net.add_node();
  int sink = sg.net.add_node();
  int source = sg.net.add_node();
  for (Vertex s : s_set)
    if (!avoid.contains(s)) sg.net.add_arc(SplitGraph::out(s), sink_s, 1);
  for (Vertex t : t_set)
    if (!avoid.contains(t)) sg.net.add_arc(SplitGraph::out(t), sink_t, 1);
  sg.net.add_arc(sink_s, sink, 1);
  sg.net.add_arc(sink_t, sink, 1);
  sg.net.add_arc(source, SplitGraph::out(v), 2);

  if (sg.net.max_flow(source, sink, 2) != 2) return std::nullopt;

  SimplePath leg_s, leg_t;
  for (int i = 0; i < 2; ++i) {
    std::vector<int> nodes = sg.net.extract_unit_path(source, sink);
    assert(nodes.size() >= 4);
    bool via_s = nodes[nodes.size() - 2] == sink_s;
    // Strip source and the two sink hops, keep the vertex leg from v.
    nodes.erase(nodes.begin());
    nodes.resize(nodes.size() - 2);
    SimplePath leg{collapse_split_nodes(nodes)};
    (via_s ? leg_s : leg_t) = std::move(leg);
  }
  assert(!leg_s.nodes.empty() && !leg_t.nodes.empty());
  assert(leg_s.nodes.front() == v && leg_t.nodes.front() == v);

  SimplePath path;
  path.nodes.assign(leg_s.nodes.rbegin(), leg_s.nodes.rend());
  path.nodes.insert(path.nodes.end(), leg_t.nodes.begin() + 1, leg_t.nodes.end());
  assert(path.valid_in(g));
  assert(s_set.contains(path.nodes.front()) && t_set.contains(path.nodes.back()));
  return path;
}

}  // namespace bnt
