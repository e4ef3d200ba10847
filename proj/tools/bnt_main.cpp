#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bnt/connectivity.hpp"
#include "bnt/graph.hpp"
#include "bnt/identifiability.hpp"
#include "bnt/io.hpp"
#include "bnt/random_models.hpp"
#include "bnt/rng.hpp"
#include "bnt/topology.hpp"

using nlohmann::ordered_json;

namespace {

constexpr const char* kToolVersion = "bnt 1.0.0";

std::string hex64(uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void write_manifest(const std::string& path, const std::string& command,
                    const std::map<std::string, std::string>& parameters,
                    uint64_t seed, double wall_ms,
                    const std::vector<std::string>& outputs) {
  ordered_json manifest;
  manifest["command"] = command;
  manifest["parameters"] = parameters;
  manifest["seed"] = seed;
  manifest["tool_version"] = kToolVersion;
  manifest["wall_ms"] = wall_ms;
  ordered_json digests = ordered_json::object();
  for (const auto& out : outputs) digests[out] = hex64(bnt::file_digest(out));
  manifest["outputs"] = digests;
  bnt::write_text(path, manifest.dump(2) + "\n");
}

ordered_json set_to_json(const bnt::VertexSet& set) {
  ordered_json arr = ordered_json::array();
  for (bnt::Vertex v : set) arr.push_back(v);
  return arr;
}

// Occupied-point file for LoS generation: one comma-separated point per line.
std::vector<std::vector<int>> read_points(const std::string& path) {
  std::istringstream in(bnt::slurp(path));
  std::string line;
  std::vector<std::vector<int>> points;
  while (std::getline(in, line)) {
    std::string body = line.substr(0, line.find('#'));
    std::replace(body.begin(), body.end(), ',', ' ');
    std::istringstream row(body);
    std::vector<int> point;
    int c;
    while (row >> c) point.push_back(c);
    if (!point.empty()) points.push_back(std::move(point));
  }
  return points;
}

// ---------------------------------------------------------------------------
// generate

struct GenerateArgs {
  std::string kind;
  int n = 4, d = 2, omega = 3, r = 3;
  double p = 0.5;
  uint64_t seed = 0;
  std::string points_path;
  std::string out = "";
};

int run_generate(const GenerateArgs& args) {
  auto started = std::chrono::steady_clock::now();
  std::string out = args.out.empty() ? args.kind + ".edges" : args.out;

  bnt::Network g;
  std::map<std::string, std::string> params{{"kind", args.kind}};
  std::vector<std::string> outputs;
  bool embedded = false;
  bnt::EmbeddedNetwork emb{bnt::Network(0, {}), bnt::LosEmbedding(1, 1, 2, {})};

  if (args.kind == "hypergrid") {
    emb = bnt::build_hypergrid(args.n, args.d);
    g = emb.network;
    embedded = true;
    params["n"] = std::to_string(args.n);
    params["d"] = std::to_string(args.d);
  } else if (args.kind == "aug-hypergrid") {
    emb = bnt::build_augmented_hypergrid(args.n, args.d, args.omega);
    g = emb.network;
    embedded = true;
    params["n"] = std::to_string(args.n);
    params["d"] = std::to_string(args.d);
    params["omega"] = std::to_string(args.omega);
  } else if (args.kind == "los") {
    if (args.points_path.empty())
      throw std::runtime_error("los generation needs --points");
    emb = bnt::build_los_network(args.n, args.d, args.omega, read_points(args.points_path));
    g = emb.network;
    embedded = true;
    params["n"] = std::to_string(args.n);
    params["d"] = std::to_string(args.d);
    params["omega"] = std::to_string(args.omega);
    params["points"] = args.points_path;
  } else if (args.kind == "gnp") {
    g = bnt::gen_gnp(args.n, args.p, args.seed);
    params["n"] = std::to_string(args.n);
    params["p"] = std::to_string(args.p);
  } else if (args.kind == "regular") {
    g = bnt::gen_random_regular(args.n, args.r, args.seed).network;
    params["n"] = std::to_string(args.n);
    params["r"] = std::to_string(args.r);
  } else {
    throw std::runtime_error("unknown kind: " + args.kind);
  }

  bnt::write_edge_list(g, out);
  outputs.push_back(out);
  if (embedded) {
    bnt::write_embedding(emb.embedding, out + ".embedding.csv");
    outputs.push_back(out + ".embedding.csv");
  }
  double wall = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - started)
                    .count();
  write_manifest(out + ".manifest.json", "generate " + args.kind, params, args.seed,
                 wall, outputs);
  std::cout << "wrote " << out << " (" << g.vertex_count() << " vertices, "
            << g.edge_count() << " edges)\n";
  return 0;
}

// ---------------------------------------------------------------------------
// identifiability

struct IdentifiabilityArgs {
  std::string graph_path;
  std::string placement_path;
  std::string strategy;  // canonical | separator
  std::string embedding_path;
  int kmax = 0;
  std::string out;
};

int run_identifiability(const IdentifiabilityArgs& args) {
  auto started = std::chrono::steady_clock::now();
  bnt::Network g = bnt::read_edge_list(args.graph_path);

  bnt::MonitorPlacement placement;
  if (!args.placement_path.empty()) {
    placement = bnt::read_placement(args.placement_path);
  } else if (args.strategy == "canonical") {
    if (args.embedding_path.empty())
      throw std::runtime_error("canonical placement needs --embedding");
    bnt::LosEmbedding embedding = bnt::read_embedding(args.embedding_path);
    placement = bnt::canonical_placement(bnt::EmbeddedNetwork{g, std::move(embedding)});
  } else if (args.strategy == "separator") {
    placement = bnt::separator_placement(g);
  } else {
    throw std::runtime_error("need --placement or --strategy canonical|separator");
  }

  bnt::ProbingScheme scheme(std::move(g), placement);
  bnt::IdentifiabilityReport report = bnt::max_identifiability(scheme, args.kmax);
  bnt::StSeparator sep =
      bnt::st_separator(scheme.network, placement.s_set, placement.t_set);

  ordered_json j;
  j["mu"] = report.mu;
  j["exact"] = report.exact;
  ordered_json bounds;
  bounds["delta"] = report.bounds.delta;
  bounds["kappa"] = report.bounds.kappa;
  bounds["kappa_st"] =
      report.bounds.kappa_st ? ordered_json(*report.bounds.kappa_st) : ordered_json();
  bounds["lower_general"] = report.bounds.lower_general;
  bounds["upper_separator"] = report.bounds.upper_separator
                                  ? ordered_json(*report.bounds.upper_separator)
                                  : ordered_json();
  j["bounds"] = bounds;
  if (report.failing_pair) {
    ordered_json pair;
    pair["u"] = set_to_json(report.failing_pair->first);
    pair["w"] = set_to_json(report.failing_pair->second);
    j["failing_pair"] = pair;
  } else {
    j["failing_pair"] = ordered_json();
  }
  j["min_st_separator"] = sep.unbounded ? ordered_json() : set_to_json(sep.separator);
  ordered_json pl;
  pl["s"] = set_to_json(placement.s_set);
  pl["t"] = set_to_json(placement.t_set);
  j["placement"] = pl;
  j["runtime_ms"] = report.runtime_ms;

  std::cout << j.dump(2) << "\n";
  if (!args.out.empty()) {
    bnt::write_text(args.out, j.dump(2) + "\n");
    double wall = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - started)
                      .count();
    std::map<std::string, std::string> params{{"graph", args.graph_path},
                                              {"kmax", std::to_string(args.kmax)}};
    if (!args.placement_path.empty()) params["placement"] = args.placement_path;
    if (!args.strategy.empty()) params["strategy"] = args.strategy;
    if (!args.embedding_path.empty()) params["embedding"] = args.embedding_path;
    write_manifest(args.out + ".manifest.json", "identifiability", params, 0, wall,
                   {args.out});
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  std::string id;
  std::string suite = "small";
  int graphs = -1;
  int queries = 200;
  int pairs = 1500;
  int n = -1, d = -1, omega = -1;
  double p = 0.5;
  int r = 3, gamma = -1, k = -1;
  int ell = -1, ell_s = -1, ell_t = -1;
  int trials = -1;
  uint64_t seed = 1;
  std::string out;
};

struct SuiteInstance {
  std::string name;
  bnt::Network g;
  bnt::MonitorPlacement placement;
};

// Seeded random instances: G(n,p) with n in [n_lo, n_lo+n_span), p in
// {0.3,0.5,0.7}, and uniform disjoint monitor classes of up to max_side nodes.
std::vector<SuiteInstance> random_suite(int count, uint64_t seed, bool connected_only,
                                        int n_lo, int n_span, int max_side) {
  std::vector<SuiteInstance> out;
  for (int i = 0; i < count; ++i) {
    bnt::Rng rng(seed, static_cast<uint64_t>(i));
    for (int attempt = 0;; ++attempt) {
      if (attempt > 500) throw std::runtime_error("suite sampling stalled");
      int n = n_lo + static_cast<int>(rng.uniform_index(n_span));
      double p = 0.3 + 0.2 * static_cast<double>(rng.uniform_index(3));
      bnt::Network g = bnt::gen_gnp(n, p, rng.next_u64());
      if (connected_only && !g.is_connected()) continue;
      int cap = std::min(max_side, n / 2);
      int gs = 1 + static_cast<int>(rng.uniform_index(cap));
      int gt = 1 + static_cast<int>(rng.uniform_index(cap));
      std::vector<int> mix = rng.sample_distinct(n, gs + gt);
      rng.shuffle(mix);
      bnt::VertexSet s(std::vector<bnt::Vertex>(mix.begin(), mix.begin() + gs));
      bnt::VertexSet t(std::vector<bnt::Vertex>(mix.begin() + gs, mix.end()));
      out.push_back({"rand-" + std::to_string(i), std::move(g),
                     bnt::MonitorPlacement{std::move(s), std::move(t)}});
      break;
    }
  }
  return out;
}

std::vector<SuiteInstance> topology_suite() {
  std::vector<SuiteInstance> out;
  {
    bnt::EmbeddedNetwork emb = bnt::build_augmented_hypergrid(4, 2, 3);
    bnt::MonitorPlacement placement = bnt::canonical_placement(emb);
    out.push_back({"aug-4-2-3", emb.network, placement});
  }
  {
    bnt::EmbeddedNetwork emb = bnt::build_augmented_hypergrid(3, 3, 3);
    bnt::MonitorPlacement placement = bnt::canonical_placement(emb);
    out.push_back({"aug-3-3-3", emb.network, placement});
  }
  {
    bnt::EmbeddedNetwork emb = bnt::build_hypergrid(3, 2);
    bnt::MonitorPlacement placement = bnt::separator_placement(emb.network);
    out.push_back({"grid-3-2", emb.network, placement});
  }
  return out;
}

int exact_mu(const bnt::ProbingScheme& scheme) {
  return bnt::max_identifiability(scheme, scheme.network.vertex_count()).mu;
}

struct VerifyResult {
  std::string csv;
  ordered_json summary;
  int violations = 0;
};

VerifyResult verify_ub(const VerifyArgs& args) {
  int count = args.graphs >= 0 ? args.graphs : (args.suite == "full" ? 48 : 16);
  std::vector<SuiteInstance> suite = random_suite(count, args.seed, false, 4, 6, 2);
  size_t random_count = suite.size();
  std::vector<SuiteInstance> tops = topology_suite();
  suite.insert(suite.end(), tops.begin(), tops.end());

  std::ostringstream csv;
  csv << "instance,n,mu,kappa_st,mu_within_bound,witness_non_separable,pass\n";
  int violations = 0;
  for (size_t idx = 0; idx < suite.size(); ++idx) {
    const SuiteInstance& inst = suite[idx];
    bnt::ProbingScheme scheme(inst.g, inst.placement);
    // Exact mu is only tractable on the small random graphs; on the larger
    // topologies the witness pair is itself the upper-bound certificate.
    bool small = idx < random_count;
    int mu = small ? exact_mu(scheme) : -1;
    bnt::StSeparator sep =
        bnt::st_separator(inst.g, inst.placement.s_set, inst.placement.t_set);
    bool bound_ok = true;
    bool witness_ok = true;
    std::string kst = "inf";
    if (!sep.unbounded) {
      kst = std::to_string(sep.size());
      bound_ok = !small || mu <= sep.size();
      if (sep.size() > 0) {
        auto pair = bnt::upper_bound_witness(scheme);
        witness_ok = !bnt::separable(scheme, pair.first, pair.second).separable;
      }
    }
    bool pass = bound_ok && witness_ok;
    if (!pass) ++violations;
    csv << inst.name << "," << inst.g.vertex_count() << ","
        << (small ? std::to_string(mu) : std::string("-")) << "," << kst << ","
        << bound_ok << "," << witness_ok << "," << pass << "\n";
  }
  ordered_json summary;
  summary["id"] = "ub";
  summary["instances"] = static_cast<int>(suite.size());
  summary["violations"] = violations;
  return {csv.str(), summary, violations};
}

VerifyResult verify_lb_gen(const VerifyArgs& args) {
  int count = args.graphs >= 0 ? args.graphs : (args.suite == "full" ? 48 : 16);
  std::vector<SuiteInstance> suite = random_suite(count, args.seed, true, 6, 4, 3);
  std::vector<SuiteInstance> tops = topology_suite();
  suite.insert(suite.end(), tops.begin(), tops.end());

  std::ostringstream csv;
  csv << "instance,kappa,s_size,t_size,lower_bound,identifiable_at_bound,pass\n";
  int violations = 0;
  for (const auto& inst : suite) {
    bnt::ProbingScheme scheme(inst.g, inst.placement);
    int kappa = bnt::vertex_connectivity(inst.g).kappa;
    int bound = std::min(kappa, static_cast<int>(std::min(inst.placement.s_set.size(),
                                                          inst.placement.t_set.size()))) -
                2;
    bool pass = true;
    if (bound >= 1) {
      bnt::VertexSet universe = bnt::path_covered_nodes(scheme);
      pass = bnt::is_k_identifiable(scheme, universe, bound).identifiable;
    }
    if (!pass) ++violations;
    csv << inst.name << "," << kappa << "," << inst.placement.s_set.size() << ","
        << inst.placement.t_set.size() << "," << bound << "," << pass << "," << pass
        << "\n";
  }

  // Menger stitching spot checks on the connected instances.
  int done = 0, valid = 0;
  bnt::Rng rng(args.seed, 0x6d656e676572ULL);
  int guard = 0;
  while (done < args.queries && guard++ < args.queries * 50) {
    const SuiteInstance& inst = suite[rng.uniform_index(suite.size())];
    const bnt::Network& g = inst.g;
    bnt::ConnectivityReport conn = bnt::vertex_connectivity(g);
    if (conn.kappa < 2) continue;
    int n = g.vertex_count();
    std::vector<int> picks = rng.sample_distinct(n, 3);
    rng.shuffle(picks);
    bnt::Vertex s = picks[0], t = picks[1], u = picks[2];
    int wsize = static_cast<int>(rng.uniform_index(conn.kappa - 1));  // 0..kappa-2
    std::vector<bnt::Vertex> rest;
    for (bnt::Vertex v = 0; v < n; ++v)
      if (v != s && v != t && v != u) rest.push_back(v);
    rng.shuffle(rest);
    rest.resize(wsize);
    bnt::VertexSet w(rest);
    bnt::SimplePath path = bnt::menger_stitch(g, s, t, u, w);
    ++done;
    bool ok = path.valid_in(g) && path.nodes.front() == s && path.nodes.back() == t &&
              path.contains(u) && !path.touches(w);
    if (ok) ++valid;
  }
  csv << "menger-queries," << done << ",,," << valid << "," << done << ","
      << (valid == done) << "\n";
  if (valid != done) ++violations;

  ordered_json summary;
  summary["id"] = "lb-gen";
  summary["instances"] = static_cast<int>(suite.size());
  summary["menger_queries"] = done;
  summary["menger_valid"] = valid;
  summary["violations"] = violations;
  return {csv.str(), summary, violations};
}

VerifyResult verify_kappa3(const VerifyArgs& args) {
  int count = args.graphs >= 0 ? args.graphs : 12;
  std::ostringstream csv;
  csv << "instance,n,kappa,mu,pass\n";
  int violations = 0;
  for (int i = 0; i < count; ++i) {
    bnt::Rng rng(args.seed, 0x6b61707061ULL + i);
    bnt::Network g;
    int kappa = 0;
    for (int attempt = 0;; ++attempt) {
      if (attempt > 500) throw std::runtime_error("kappa3 sampling stalled");
      int n = 8 + static_cast<int>(rng.uniform_index(5));  // 8..12
      g = bnt::gen_gnp(n, 0.35, rng.next_u64());
      if (!g.is_connected()) continue;
      bnt::ConnectivityReport conn = bnt::vertex_connectivity(g);
      if (conn.kappa < 1 || 3 * conn.kappa > n) continue;
      kappa = conn.kappa;
      break;
    }
    bnt::MonitorPlacement placement = bnt::separator_placement(g);
    bnt::ProbingScheme scheme(g, placement);
    int mu = exact_mu(scheme);
    bool pass = kappa - 2 <= mu && mu <= kappa;
    if (!pass) ++violations;
    csv << "kappa3-" << i << "," << g.vertex_count() << "," << kappa << "," << mu << ","
        << pass << "\n";
  }
  ordered_json summary;
  summary["id"] = "kappa3";
  summary["instances"] = count;
  summary["violations"] = violations;
  return {csv.str(), summary, violations};
}

VerifyResult verify_los2(const VerifyArgs& args) {
  int n = args.n > 0 ? args.n : 4;
  int omega = args.omega > 0 ? args.omega : 3;
  bnt::EmbeddedNetwork emb = bnt::build_augmented_hypergrid(n, 2, omega);
  bnt::MonitorPlacement placement = bnt::canonical_placement(emb);
  bnt::ProbingScheme scheme(emb.network, placement);

  int k_low = 2 * (omega - 1) - 1;
  bnt::KIdentifiability low =
      bnt::is_k_identifiable(scheme, bnt::path_covered_nodes(scheme), k_low);

  // A corner that carries no monitor: its neighborhood with and without it
  // can never be told apart, pinning mu below 2(omega-1)+1.
  bnt::Vertex corner = -1;
  for (bnt::Vertex v = 0; v < emb.network.vertex_count(); ++v) {
    const auto& c = emb.embedding.coords_of(v);
    bool is_corner = true;
    for (int x : c) is_corner = is_corner && (x == 1 || x == n);
    if (is_corner && !placement.s_set.contains(v) && !placement.t_set.contains(v)) {
      corner = v;
      break;
    }
  }
  bool witness_ok = false;
  int witness_size = 0;
  if (corner >= 0) {
    bnt::VertexSet hood(emb.network.neighbors(corner));
    bnt::VertexSet hood_plus = hood;
    hood_plus.insert(corner);
    witness_size = static_cast<int>(hood_plus.size());
    witness_ok = !bnt::separable(scheme, hood, hood_plus).separable;
  }

  std::ostringstream csv;
  csv << "check,value,pass\n";
  csv << "k_identifiable_at," << k_low << "," << low.identifiable << "\n";
  csv << "corner_witness_size," << witness_size << "," << witness_ok << "\n";
  int violations = (low.identifiable ? 0 : 1) + (witness_ok ? 0 : 1);
  ordered_json summary;
  summary["id"] = "los2";
  summary["k"] = k_low;
  summary["k_identifiable"] = low.identifiable;
  summary["witness_pair_size"] = witness_size;
  summary["witness_non_separable"] = witness_ok;
  summary["violations"] = violations;
  return {csv.str(), summary, violations};
}

VerifyResult verify_los_d(const VerifyArgs& args) {
  int n = args.n > 0 ? args.n : 3;
  int d = args.d > 0 ? args.d : 3;
  int omega = args.omega > 0 ? args.omega : 3;
  bnt::EmbeddedNetwork emb = bnt::build_augmented_hypergrid(n, d, omega);
  bnt::MonitorPlacement placement = bnt::canonical_placement(emb);
  bnt::ProbingScheme scheme(emb.network, placement);
  int k = d * (omega - 1) - 1;
  bnt::VertexSet universe = bnt::path_covered_nodes(scheme);

  bnt::PathQueryCache cache;
  bnt::Rng rng(args.seed, 0x6c6f7364ULL);
  int failures = 0;
  int sampled = 0;
  while (sampled < args.pairs) {
    int sw = 1 + static_cast<int>(rng.uniform_index(k));
    int su = static_cast<int>(rng.uniform_index(sw + 1));
    std::vector<int> wi = rng.sample_distinct(static_cast<int>(universe.size()), sw);
    std::vector<int> ui = rng.sample_distinct(static_cast<int>(universe.size()), su);
    std::vector<bnt::Vertex> wv, uv;
    for (int i : wi) wv.push_back(universe.members()[i]);
    for (int i : ui) uv.push_back(universe.members()[i]);
    bnt::VertexSet w(wv), u(uv);
    if (u == w) continue;
    ++sampled;
    if (!bnt::separable(scheme, u, w, &cache).separable) ++failures;
  }

  std::ostringstream csv;
  csv << "check,value,pass\n";
  csv << "sampled_pairs," << sampled << ",1\n";
  csv << "non_separable_pairs," << failures << "," << (failures == 0) << "\n";
  ordered_json summary;
  summary["id"] = "los-d";
  summary["k"] = k;
  summary["pairs"] = sampled;
  summary["failures"] = failures;
  summary["violations"] = failures == 0 ? 0 : 1;
  return {csv.str(), summary, failures == 0 ? 0 : 1};
}

VerifyResult verify_gnp_bound(const VerifyArgs& args) {
  bnt::ExperimentConfig cfg;
  cfg.seed = args.seed;
  cfg.trials = args.trials > 0 ? args.trials : 2000;
  cfg.n = args.n > 0 ? args.n : 40;
  cfg.p = args.p;
  cfg.gamma = args.gamma > 0 ? args.gamma : 15;
  cfg.k = args.k > 0 ? args.k : 2;
  bnt::SeparabilityExperiment exp =
      bnt::monte_carlo_separability(cfg, bnt::RandomModel::gnp);

  double bound = std::min(1.0, *exp.bound);
  double pair_bound = bnt::gnp_pair_failure_bound(cfg.p, cfg.gamma, cfg.k);
  double sigma = std::sqrt(std::max(pair_bound * (1.0 - pair_bound), 1e-12) / cfg.trials);
  bool below_bound = exp.rate.frequency <= bound;
  bool below_pair = exp.rate.frequency <= pair_bound + 3.0 * sigma;
  int violations = (below_bound ? 0 : 1) + (below_pair ? 0 : 1);

  std::ostringstream csv;
  csv << "seed,trial,success,reason\n";
  for (int t = 0; t < cfg.trials; ++t)
    csv << cfg.seed << "," << t << "," << (exp.failed[t] ? 0 : 1) << ","
        << (exp.failed[t] ? "pair_non_separable" : "none") << "\n";

  ordered_json summary;
  summary["id"] = "gnp-bound";
  summary["trials"] = cfg.trials;
  summary["freq"] = exp.rate.frequency;
  summary["ci_low"] = exp.rate.ci_low;
  summary["ci_high"] = exp.rate.ci_high;
  summary["bound"] = bound;
  summary["pair_bound"] = pair_bound;
  summary["violations"] = violations;
  return {csv.str(), summary, violations};
}

VerifyResult verify_pathfinder(const VerifyArgs& args) {
  bnt::ExperimentConfig cfg;
  cfg.seed = args.seed;
  cfg.trials = args.trials > 0 ? args.trials : 2000;
  cfg.n = args.n > 0 ? args.n : 200;
  cfg.r = args.r;
  cfg.gamma = args.gamma > 0 ? args.gamma : 20;
  int ell = args.ell >= 0 ? args.ell : 10;
  cfg.ell_s = args.ell_s >= 0 ? args.ell_s : ell;
  cfg.ell_t = args.ell_t >= 0 ? args.ell_t : ell;
  cfg.k = args.k >= 0 ? args.k : 1;
  bnt::PathfinderExperiment exp = bnt::pathfinder_experiment(cfg);

  // 0.10 is the tolerance at the default 2000 trials; widen for small runs
  // where binomial noise alone exceeds it.
  double sigma =
      std::sqrt(std::max(exp.predicted * (1.0 - exp.predicted), 1e-12) / cfg.trials);
  double tol = std::max(0.10, 4.0 * sigma);
  bool close = std::abs(exp.rate.frequency - exp.predicted) <= tol;
  std::ostringstream csv;
  csv << "seed,trial,success,reason\n";
  for (int t = 0; t < cfg.trials; ++t)
    csv << cfg.seed << "," << t << "," << static_cast<int>(exp.success[t]) << ","
        << (exp.success[t] ? "none" : "shooting_missed") << "\n";

  ordered_json summary;
  summary["id"] = "pathfinder";
  summary["trials"] = cfg.trials;
  summary["freq"] = exp.rate.frequency;
  summary["ci_low"] = exp.rate.ci_low;
  summary["ci_high"] = exp.rate.ci_high;
  summary["predicted"] = exp.predicted;
  summary["walk_attempts"] = exp.walk_attempts;
  summary["violations"] = close ? 0 : 1;
  return {csv.str(), summary, close ? 0 : 1};
}

int run_verify(const VerifyArgs& args) {
  auto started = std::chrono::steady_clock::now();
  VerifyResult result;
  if (args.id == "ub") result = verify_ub(args);
  else if (args.id == "lb-gen") result = verify_lb_gen(args);
  else if (args.id == "kappa3") result = verify_kappa3(args);
  else if (args.id == "los2") result = verify_los2(args);
  else if (args.id == "los-d") result = verify_los_d(args);
  else if (args.id == "gnp-bound") result = verify_gnp_bound(args);
  else if (args.id == "pathfinder") result = verify_pathfinder(args);
  else throw std::runtime_error("unknown theorem id: " + args.id);

  std::string prefix = args.out.empty() ? "bnt-verify-" + args.id : args.out;
  bnt::write_text(prefix + ".csv", result.csv);
  bnt::write_text(prefix + ".summary.json", result.summary.dump(2) + "\n");
  double wall = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - started)
                    .count();
  std::map<std::string, std::string> params{{"id", args.id},
                                            {"suite", args.suite}};
  params["graphs"] = std::to_string(args.graphs);
  params["trials"] = std::to_string(args.trials);
  write_manifest(prefix + ".manifest.json", "verify " + args.id, params, args.seed,
                 wall, {prefix + ".csv", prefix + ".summary.json"});
  std::cout << result.summary.dump(2) << "\n";
  return result.violations == 0 ? 0 : 1;
}

void apply_config_defaults(const CLI::App* sub, const std::string& config_path,
                           VerifyArgs& args) {
  if (config_path.empty()) return;
  std::map<std::string, std::string> conf = bnt::read_config(config_path);
  auto take = [&](const char* flag, const char* key, auto& target) {
    const CLI::Option* opt = sub->get_option(flag);
    auto it = conf.find(key);
    if (opt->count() == 0 && it != conf.end()) {
      std::istringstream in(it->second);
      in >> target;
      if (in.fail()) throw std::runtime_error("bad config value for " + std::string(key));
    }
  };
  take("--trials", "trials", args.trials);
  take("--seed", "seed", args.seed);
  take("--n", "n", args.n);
  take("--d", "d", args.d);
  take("--omega", "omega", args.omega);
  take("--p", "p", args.p);
  take("--r", "r", args.r);
  take("--gamma", "gamma", args.gamma);
  take("--k", "k", args.k);
  take("--ell", "ell", args.ell);
  take("--graphs", "graphs", args.graphs);
  take("--queries", "queries", args.queries);
  take("--pairs", "pairs", args.pairs);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boolean network tomography: identifiability toolkit"};
  app.require_subcommand(1);

  GenerateArgs gen;
  CLI::App* generate = app.add_subcommand("generate", "emit a topology as an edge list");
  generate->add_option("kind", gen.kind, "hypergrid|aug-hypergrid|los|gnp|regular")
      ->required()
      ->check(CLI::IsMember({"hypergrid", "aug-hypergrid", "los", "gnp", "regular"}));
  generate->add_option("--n", gen.n, "side length / vertex count");
  generate->add_option("--d", gen.d, "dimension");
  generate->add_option("--omega", gen.omega, "line-of-sight range");
  generate->add_option("--p", gen.p, "edge probability");
  generate->add_option("--r", gen.r, "regular degree");
  generate->add_option("--seed", gen.seed, "random seed");
  generate->add_option("--points", gen.points_path, "occupied points file (los)");
  generate->add_option("--out", gen.out, "edge list output path");

  IdentifiabilityArgs ident;
  CLI::App* identifiability =
      app.add_subcommand("identifiability", "compute maximal identifiability");
  identifiability->add_option("--graph", ident.graph_path, "edge list path")->required();
  identifiability->add_option("--placement", ident.placement_path, "placement file");
  identifiability->add_option("--strategy", ident.strategy,
                              "placement strategy: canonical|separator");
  identifiability->add_option("--embedding", ident.embedding_path,
                              "embedding CSV (canonical strategy)");
  identifiability->add_option("--kmax", ident.kmax,
                              "sweep cap; 0 = min degree + 1");
  identifiability->add_option("--out", ident.out, "JSON report path");

  VerifyArgs ver;
  std::string config_path;
  CLI::App* verify = app.add_subcommand("verify", "run a theorem verification suite");
  verify->add_option("id", ver.id, "ub|lb-gen|kappa3|los2|los-d|gnp-bound|pathfinder")
      ->required()
      ->check(CLI::IsMember(
          {"ub", "lb-gen", "kappa3", "los2", "los-d", "gnp-bound", "pathfinder"}));
  verify->add_option("--suite", ver.suite, "small|full")
      ->check(CLI::IsMember({"small", "full"}));
  verify->add_option("--graphs", ver.graphs, "random instances");
  verify->add_option("--queries", ver.queries, "menger queries (lb-gen)");
  verify->add_option("--pairs", ver.pairs, "sampled pairs (los-d)");
  verify->add_option("--n", ver.n, "vertices / side length");
  verify->add_option("--d", ver.d, "dimension");
  verify->add_option("--omega", ver.omega, "line-of-sight range");
  verify->add_option("--p", ver.p, "edge probability");
  verify->add_option("--r", ver.r, "regular degree");
  verify->add_option("--gamma", ver.gamma, "monitors per class");
  verify->add_option("--k", ver.k, "failure-set size");
  verify->add_option("--ell", ver.ell, "walk length (both sides)");
  verify->add_option("--ell-s", ver.ell_s, "s-walk length");
  verify->add_option("--ell-t", ver.ell_t, "t-walk length");
  verify->add_option("--trials", ver.trials, "Monte Carlo trials");
  verify->add_option("--seed", ver.seed, "random seed");
  verify->add_option("--config", config_path, "key=value defaults file");
  verify->add_option("--out", ver.out, "output prefix");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(generate)) return run_generate(gen);
    if (app.got_subcommand(identifiability)) return run_identifiability(ident);
    if (app.got_subcommand(verify)) {
      apply_config_defaults(verify, config_path, ver);
      return run_verify(ver);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
