#include "bnt/random_models.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include "bnt/identifiability.hpp"
#include "bnt/rng.hpp"

namespace bnt {
namespace {

// Pairs off a pool of free points: repeatedly match the front point with a
// uniform other one. Any fixed pick order gives a uniform perfect matching.
void pair_random(std::vector<int>& pool, std::vector<int>& partner, Rng& rng) {
  assert(pool.size() % 2 == 0);
  while (!pool.empty()) {
    size_t j = 1 + rng.uniform_index(pool.size() - 1);
    int a = pool[0];
    int b = pool[j];
    partner[a] = b;
    partner[b] = a;
    pool[j] = pool.back();
    pool.pop_back();
    pool[0] = pool.back();
    pool.pop_back();
  }
}

// Reusable buffers for pathfinder runs; epoch stamps make per-run resets O(1).
struct PathfinderScratch {
  std::vector<uint32_t> matched;  // per point: epoch when consumed
  std::vector<uint32_t> visited;  // per bucket: epoch when walked through
  uint32_t epoch = 0;
  std::vector<Vertex> walk_s, walk_t;
  std::vector<int> useful_s_pts, useful_t_pts;
};

// One pathfinder run. `in_block` flags buckets that abort a walk (forbidden
// set plus both monitor classes). With full=false only the outcome fields are
// produced (no configuration, no witness paths) so retry loops stay cheap.
TrialOutcome run_pathfinder_core(int n, int r, Vertex v, int ell_s, int ell_t,
                                 const std::vector<uint8_t>& in_block,
                                 const std::vector<uint8_t>& in_s,
                                 const std::vector<uint8_t>& in_t, Rng& rng,
                                 PathfinderScratch& sc, bool full) {
  const int total = n * r;
  if (sc.matched.size() != static_cast<size_t>(total)) {
    sc.matched.assign(total, 0);
    sc.visited.assign(n, 0);
    sc.epoch = 0;
  }
  if (++sc.epoch == 0) {  // stamp wrapped; hard reset
    sc.matched.assign(total, 0);
    sc.visited.assign(n, 0);
    sc.epoch = 1;
  }
  const uint32_t e = sc.epoch;
  auto is_matched = [&](int p) { return sc.matched[p] == e; };
  auto consume = [&](int p) { sc.matched[p] = e; };

  TrialOutcome out;
  if (full) out.config = Configuration(n, r);
  auto record_pair = [&](int a, int b) {
    if (full) {
      out.config.partner[a] = b;
      out.config.partner[b] = a;
    }
  };
  // Few points are matched before completion, so rejection sampling is cheap.
  auto uniform_free_point = [&]() {
    int b;
    do {
      b = static_cast<int>(rng.uniform_index(static_cast<size_t>(total)));
    } while (is_matched(b));
    return b;
  };

  sc.visited[v] = e;
  auto grow = [&](int ell, std::vector<Vertex>& walk) {
    walk.clear();
    walk.push_back(v);
    int cur = v;
    for (int step = 0; step < ell; ++step) {
      int a = -1;
      for (int p = cur * r; p < (cur + 1) * r; ++p)
        if (!is_matched(p)) {
          a = p;
          break;
        }
      assert(a >= 0);  // walked-through buckets keep r-2 >= 1 free points
      consume(a);
      int b = uniform_free_point();
      consume(b);
      record_pair(a, b);
      int nb = b / r;
      if (sc.visited[nb] == e) return FailureReason::revisited_bucket;
      if (in_block[nb]) return FailureReason::hit_forbidden;
      sc.visited[nb] = e;
      walk.push_back(nb);
      cur = nb;
    }
    return FailureReason::none;
  };

  FailureReason why = grow(ell_s, sc.walk_s);
  if (why == FailureReason::none) why = grow(ell_t, sc.walk_t);
  if (why != FailureReason::none) {
    out.reason = why;
  } else {
    // Useful points: every free point on the walks past v itself; a
    // zero-length walk gets one designated point of v instead.
    auto collect = [&](const std::vector<Vertex>& walk, std::vector<int>& pts) {
      pts.clear();
      for (size_t i = 1; i < walk.size(); ++i)
        for (int p = walk[i] * r; p < (walk[i] + 1) * r; ++p)
          if (!is_matched(p)) pts.push_back(p);
    };
    collect(sc.walk_s, sc.useful_s_pts);
    collect(sc.walk_t, sc.useful_t_pts);
    int designated_s = -1;
    if (ell_s == 0)
      for (int p = v * r; p < (v + 1) * r; ++p)
        if (!is_matched(p)) {
          designated_s = p;
          sc.useful_s_pts.push_back(p);
          break;
        }
    if (ell_t == 0)
      for (int p = v * r; p < (v + 1) * r; ++p)
        if (!is_matched(p) && p != designated_s) {
          sc.useful_t_pts.push_back(p);
          break;
        }
    out.useful_s = static_cast<int>(sc.useful_s_pts.size());
    out.useful_t = static_cast<int>(sc.useful_t_pts.size());
    assert(out.useful_s == (r - 2) * ell_s + 1);
    assert(out.useful_t == (r - 2) * ell_t + 1);

    // Shooting: pair off useful points in ascending order against the whole
    // free pool (possibly each other); a side scores when its point draws a
    // partner inside its monitor class.
    bool s_hit = false, t_hit = false;
    int s_from = -1, s_into = -1, t_from = -1, t_into = -1;
    size_t is = 0, it = 0;
    while (is < sc.useful_s_pts.size() || it < sc.useful_t_pts.size()) {
      bool take_s = it >= sc.useful_t_pts.size() ||
                    (is < sc.useful_s_pts.size() &&
                     sc.useful_s_pts[is] < sc.useful_t_pts[it]);
      int p = take_s ? sc.useful_s_pts[is++] : sc.useful_t_pts[it++];
      if (is_matched(p)) continue;  // already drawn by an earlier useful point
      consume(p);
      int b = uniform_free_point();
      consume(b);
      record_pair(p, b);
      int nb = b / r;
      if (take_s && !s_hit && in_s[nb]) {
        s_hit = true;
        s_from = p;
        s_into = nb;
      }
      if (!take_s && !t_hit && in_t[nb]) {
        t_hit = true;
        t_from = p;
        t_into = nb;
      }
      if (!full && s_hit && t_hit) break;  // outcome decided
    }
    out.success = s_hit && t_hit;
    out.reason = out.success ? FailureReason::none : FailureReason::shooting_missed;
    if (full && out.success) {
      auto prefix_to = [&](const std::vector<Vertex>& walk, int from_pt, int into) {
        SimplePath path;
        int hit_bucket = from_pt / r;
        for (Vertex b : walk) {
          path.nodes.push_back(b);
          if (b == hit_bucket) break;
        }
        assert(path.nodes.back() == hit_bucket);
        path.nodes.push_back(into);
        return path;
      };
      out.paths = std::make_pair(prefix_to(sc.walk_s, s_from, s_into),
                                 prefix_to(sc.walk_t, t_from, t_into));
    }
  }

  if (full) {
    std::vector<int> pool;
    for (int p = 0; p < total; ++p)
      if (!is_matched(p)) pool.push_back(p);
    pair_random(pool, out.config.partner, rng);
    assert(out.config.perfect());
  }
  return out;
}

template <typename Fn>
void run_strided(int jobs, int workers, Fn&& fn) {
  if (workers <= 1) {
    for (int t = 0; t < jobs; ++t) fn(0, t);
    return;
  }
  std::vector<std::thread> crew;
  crew.reserve(workers);
  for (int w = 0; w < workers; ++w)
    crew.emplace_back([&fn, w, jobs, workers]() {
      for (int t = w; t < jobs; t += workers) fn(w, t);
    });
  for (auto& th : crew) th.join();
}

VertexSet slice_set(const std::vector<Vertex>& perm, int from, int len) {
  return VertexSet(std::vector<Vertex>(perm.begin() + from, perm.begin() + from + len));
}

void check_experiment_common(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("trials must be positive");
  if (cfg.n < 1) throw std::invalid_argument("vertex count must be positive");
  if (cfg.gamma < 1) throw std::invalid_argument("gamma must be positive");
}

}  // namespace

Configuration::Configuration(int n, int r) : buckets(n), points_per_bucket(r) {
  if (n < 1) throw std::invalid_argument("bucket count must be positive");
  if (r < 3) throw std::invalid_argument("points per bucket must be at least 3");
  if (n % 2 != 0 && r % 2 != 0) throw std::invalid_argument("point total must be even");
  partner.assign(point_count(), -1);
}

bool Configuration::perfect() const {
  if (partner.size() != static_cast<size_t>(point_count())) return false;
  for (int p = 0; p < point_count(); ++p) {
    int q = partner[p];
    if (q < 0 || q >= point_count() || q == p || partner[q] != p) return false;
  }
  return true;
}

bool Configuration::is_simple() const {
  std::unordered_set<long long> seen;
  for (int p = 0; p < static_cast<int>(partner.size()); ++p) {
    int q = partner[p];
    if (q < 0 || q < p) continue;
    int a = bucket_of(p), b = bucket_of(q);
    if (a == b) return false;
    long long key = static_cast<long long>(std::min(a, b)) * buckets + std::max(a, b);
    if (!seen.insert(key).second) return false;
  }
  return true;
}

bool Configuration::buckets_adjacent(int a, int b) const {
  for (int p = a * points_per_bucket; p < (a + 1) * points_per_bucket; ++p)
    if (partner[p] >= 0 && bucket_of(partner[p]) == b) return true;
  return false;
}

Network Configuration::project() const {
  if (!perfect()) throw std::runtime_error("configuration is incomplete");
  if (!is_simple()) throw std::runtime_error("configuration is not simple");
  std::vector<std::pair<Vertex, Vertex>> edges;
  edges.reserve(partner.size() / 2);
  for (int p = 0; p < static_cast<int>(partner.size()); ++p)
    if (partner[p] > p) edges.emplace_back(bucket_of(p), bucket_of(partner[p]));
  return Network(buckets, edges);
}

Network gen_gnp(int n, double p, uint64_t seed) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("probability out of range");
  Rng rng(seed, 0);
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.uniform01() < p) edges.emplace_back(u, v);
  return Network(n, edges);
}

RegularSample gen_random_regular(int n, int r, uint64_t seed) {
  Configuration shape(n, r);
  if (n <= r) throw std::invalid_argument("no simple r-regular graph on so few vertices");
  Rng rng(seed, 0);
  int attempts = 0;
  while (true) {
    ++attempts;
    Configuration cfg = shape;
    std::vector<int> pool(cfg.point_count());
    std::iota(pool.begin(), pool.end(), 0);
    pair_random(pool, cfg.partner, rng);
    if (!cfg.is_simple()) continue;
    Network g = cfg.project();
    return RegularSample{std::move(g), std::move(cfg), attempts};
  }
}

TrialOutcome pathfinder(const Configuration& shape, Vertex v, int ell_s, int ell_t,
                        const VertexSet& w_set, const VertexSet& s_set,
                        const VertexSet& t_set, uint64_t seed) {
  const int n = shape.buckets, r = shape.points_per_bucket;
  if (n < 1 || r < 3 || shape.partner.size() != static_cast<size_t>(n) * r)
    throw std::invalid_argument("malformed configuration shape");
  for (int p : shape.partner)
    if (p != -1) throw std::invalid_argument("configuration already paired");
  if (v < 0 || v >= n) throw std::invalid_argument("bucket out of range");
  if (ell_s < 0 || ell_t < 0 || ell_s >= n || ell_t >= n)
    throw std::invalid_argument("walk length must be below bucket count");
  if (s_set.empty() || t_set.empty())
    throw std::invalid_argument("monitor sets must be nonempty");
  if (s_set.intersects(t_set))
    throw std::invalid_argument("monitor sets must be disjoint");
  if (w_set.contains(v)) throw std::invalid_argument("query bucket is forbidden");
  if (s_set.contains(v) || t_set.contains(v))
    throw std::invalid_argument("query bucket is a monitor");

  std::vector<uint8_t> in_block(n, 0), in_s(n, 0), in_t(n, 0);
  auto mark = [&](const VertexSet& set, std::vector<uint8_t>* side) {
    for (Vertex b : set) {
      if (b < 0 || b >= n) throw std::invalid_argument("bucket out of range");
      in_block[b] = 1;
      if (side) (*side)[b] = 1;
    }
  };
  mark(w_set, nullptr);
  mark(s_set, &in_s);
  mark(t_set, &in_t);

  Rng rng(seed, 0);
  PathfinderScratch sc;
  return run_pathfinder_core(n, r, v, ell_s, ell_t, in_block, in_s, in_t, rng, sc,
                             /*full=*/true);
}

double gnp_failure_bound(int n, int k, int gamma, double p) {
  if (n < 1 || k < 1 || gamma < 1) throw std::invalid_argument("parameters must be positive");
  if (k > n) throw std::invalid_argument("k exceeds n");
  if (p < 0.0 || p > 0.5) throw std::invalid_argument("probability out of range");
  double log_choose = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
  return std::exp(std::log(2.0 * k) + 2.0 * log_choose + (2.0 * k - gamma) * p);
}

double gnp_pair_failure_bound(double p, int gamma, int k) {
  if (gamma < 1 || k < 1) throw std::invalid_argument("parameters must be positive");
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("probability out of range");
  return 2.0 * std::pow(1.0 - p, gamma - 2.0 * k);
}

double regular_success_probability(int n, int gamma, int ell_s, int ell_t, int r) {
  if (n < 1) throw std::invalid_argument("vertex count must be positive");
  if (gamma < 0 || gamma > n) throw std::invalid_argument("gamma out of range");
  if (ell_s < 0 || ell_t < 0 || r < 2) throw std::invalid_argument("bad walk parameters");
  double miss = 1.0 - static_cast<double>(gamma) / n;
  auto side = [&](int ell) { return 1.0 - std::pow(miss, (r - 2.0) * ell + 1.0); };
  return side(ell_s) * side(ell_t);
}

RateEstimate wilson_interval(int hits, int trials) {
  if (trials < 1) throw std::invalid_argument("trials must be positive");
  if (hits < 0 || hits > trials) throw std::invalid_argument("hits out of range");
  const double z = 1.959963984540054;  // 95%
  double nd = trials;
  double ph = hits / nd;
  double z2 = z * z;
  double denom = 1.0 + z2 / nd;
  double center = (ph + z2 / (2.0 * nd)) / denom;
  double half = z * std::sqrt(ph * (1.0 - ph) / nd + z2 / (4.0 * nd * nd)) / denom;
  RateEstimate est;
  est.frequency = ph;
  est.ci_low = std::max(0.0, center - half);
  est.ci_high = std::min(1.0, center + half);
  return est;
}

int worker_count(int jobs) {
  if (jobs < 1) return 1;
  long budget = static_cast<long>(std::thread::hardware_concurrency());
  if (budget < 1) budget = 1;
  if (const char* env = std::getenv("BNT_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) budget = std::min(v, 1024L);
  }
  return static_cast<int>(std::min<long>(budget, jobs));
}

SeparabilityExperiment monte_carlo_separability(const ExperimentConfig& cfg,
                                                RandomModel model) {
  check_experiment_common(cfg);
  if (cfg.k < 1) throw std::invalid_argument("k must be positive");
  if (2 * (cfg.gamma + cfg.k) > cfg.n)
    throw std::invalid_argument("monitor and failure sets exceed vertex count");
  if (model == RandomModel::gnp) {
    if (cfg.p < 0.0 || cfg.p > 1.0) throw std::invalid_argument("probability out of range");
  } else {
    Configuration shape(cfg.n, cfg.r);  // validates r and parity
    (void)shape;
    if (cfg.n <= cfg.r)
      throw std::invalid_argument("no simple r-regular graph on so few vertices");
  }

  SeparabilityExperiment out;
  out.failed.assign(cfg.trials, 0);
  run_strided(cfg.trials, worker_count(cfg.trials), [&](int, int t) {
    Rng rng(cfg.seed, static_cast<uint64_t>(t));
    uint64_t graph_seed = rng.next_u64();
    Network g = model == RandomModel::gnp
                    ? gen_gnp(cfg.n, cfg.p, graph_seed)
                    : gen_random_regular(cfg.n, cfg.r, graph_seed).network;
    std::vector<Vertex> perm(cfg.n);
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);
    ProbingScheme scheme(std::move(g),
                         MonitorPlacement{slice_set(perm, 0, cfg.gamma),
                                          slice_set(perm, cfg.gamma, cfg.gamma)});
    VertexSet u = slice_set(perm, 2 * cfg.gamma, cfg.k);
    VertexSet w = slice_set(perm, 2 * cfg.gamma + cfg.k, cfg.k);
    out.failed[t] = separable(scheme, u, w).separable ? 0 : 1;
  });
  out.failures = std::accumulate(out.failed.begin(), out.failed.end(), 0);
  out.rate = wilson_interval(out.failures, cfg.trials);
  if (model == RandomModel::gnp)
    out.bound = gnp_failure_bound(cfg.n, cfg.k, cfg.gamma, cfg.p);
  return out;
}

PathfinderExperiment pathfinder_experiment(const ExperimentConfig& cfg) {
  check_experiment_common(cfg);
  Configuration shape(cfg.n, cfg.r);  // validates r and parity
  (void)shape;
  if (cfg.k < 0) throw std::invalid_argument("k must be non-negative");
  if (cfg.ell_s < 0 || cfg.ell_t < 0 || cfg.ell_s >= cfg.n || cfg.ell_t >= cfg.n)
    throw std::invalid_argument("walk length must be below bucket count");
  if (2 * cfg.gamma + cfg.k + 1 > cfg.n)
    throw std::invalid_argument("parameters exceed bucket count");

  const int workers = worker_count(cfg.trials);
  PathfinderExperiment out;
  out.success.assign(cfg.trials, 0);
  out.predicted =
      regular_success_probability(cfg.n, cfg.gamma, cfg.ell_s, cfg.ell_t, cfg.r);

  std::vector<PathfinderScratch> scratch(workers);
  std::vector<long long> attempts(workers, 0);
  run_strided(cfg.trials, workers, [&](int w, int t) {
    Rng rng(cfg.seed, static_cast<uint64_t>(t));
    std::vector<Vertex> perm(cfg.n);
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);
    std::vector<uint8_t> in_block(cfg.n, 0), in_s(cfg.n, 0), in_t(cfg.n, 0);
    for (int i = 0; i < cfg.gamma; ++i) in_s[perm[i]] = in_block[perm[i]] = 1;
    for (int i = cfg.gamma; i < 2 * cfg.gamma; ++i) in_t[perm[i]] = in_block[perm[i]] = 1;
    Vertex v = perm[2 * cfg.gamma];
    for (int i = 0; i < cfg.k; ++i) in_block[perm[2 * cfg.gamma + 1 + i]] = 1;

    // The closed form models the shooting phase only, so condition on the
    // walks completing: rerun until the attempt gets as far as shooting.
    for (long long tries = 1;; ++tries) {
      TrialOutcome o =
          run_pathfinder_core(cfg.n, cfg.r, v, cfg.ell_s, cfg.ell_t, in_block, in_s,
                              in_t, rng, scratch[w], /*full=*/false);
      if (o.reason == FailureReason::none ||
          o.reason == FailureReason::shooting_missed) {
        out.success[t] = o.success ? 1 : 0;
        attempts[w] += tries;
        break;
      }
      if (tries >= 50'000'000LL)
        throw std::runtime_error("walk retry budget exhausted");
    }
  });
  out.successes = std::accumulate(out.success.begin(), out.success.end(), 0);
  out.walk_attempts = std::accumulate(attempts.begin(), attempts.end(), 0LL);
  out.rate = wilson_interval(out.successes, cfg.trials);
  return out;
}

}  // namespace bnt
