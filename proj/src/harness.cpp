#include "cuttree/harness.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>
#include <set>

#include "cuttree/manifest.hpp"
#include "cuttree/maxflow.hpp"

namespace cuttree {

namespace {

using EdgeSet = std::set<std::pair<Vertex, Vertex>>;

void add_edge(EdgeSet& edges, Vertex u, Vertex v) {
  if (u == v) return;
  edges.emplace(std::min(u, v), std::max(u, v));
}

int find(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

// Components in order of their smallest vertex.
std::vector<Vertex> component_roots(int n, const EdgeSet& edges) {
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (auto [u, v] : edges) {
    int a = find(parent, u), b = find(parent, v);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<Vertex> roots;
  for (int v = 0; v < n; ++v)
    if (find(parent, v) == v) roots.push_back(v);
  return roots;
}

void bridge_components(int n, EdgeSet& edges) {
  auto roots = component_roots(n, edges);
  for (std::size_t i = 1; i < roots.size(); ++i) add_edge(edges, roots[i - 1], roots[i]);
}

SimpleGraph finish(int n, const EdgeSet& edges) {
  return SimpleGraph(n, std::vector<std::pair<Vertex, Vertex>>(edges.begin(), edges.end()));
}

void clique(EdgeSet& edges, Vertex first, int size) {
  for (Vertex u = first; u < first + size; ++u)
    for (Vertex v = u + 1; v < first + size; ++v) add_edge(edges, u, v);
}

SimpleGraph gnp(const GeneratorSpec& spec) {
  if (!(spec.p >= 0 && spec.p <= 1)) throw InfeasibleParameters("gnp: p must lie in [0, 1]");
  std::mt19937_64 rng(spec.seed);
  std::bernoulli_distribution coin(spec.p);
  for (int attempt = 0; attempt < std::max(1, spec.retries); ++attempt) {
    EdgeSet edges;
    for (Vertex u = 0; u < spec.n; ++u)
      for (Vertex v = u + 1; v < spec.n; ++v)
        if (coin(rng)) add_edge(edges, u, v);
    if (component_roots(spec.n, edges).size() == 1) return finish(spec.n, edges);
  }
  throw InfeasibleParameters("gnp: no connected sample within " + std::to_string(spec.retries) +
                             " attempts");
}

SimpleGraph planted(const GeneratorSpec& spec) {
  auto clusters = planted_clusters(spec);
  if (!(spec.intra_p >= 0 && spec.intra_p <= 1))
    throw InfeasibleParameters("planted-expanders: intra_p must lie in [0, 1]");
  std::mt19937_64 rng(spec.seed ^ 0x9e3779b97f4a7c15ULL);
  std::bernoulli_distribution coin(spec.intra_p);
  EdgeSet edges;
  std::vector<int> owner(spec.n);
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    const auto& cl = clusters[c];
    for (Vertex v : cl) owner[v] = static_cast<int>(c);
    for (std::size_t i = 0; i < cl.size(); ++i) {
      if (i + 1 < cl.size()) add_edge(edges, cl[i], cl[i + 1]);
      for (std::size_t j = i + 2; j < cl.size(); ++j)
        if (coin(rng)) add_edge(edges, cl[i], cl[j]);
    }
  }
  if (clusters.size() > 1) {
    const int want = spec.inter_edges < 0 ? static_cast<int>(clusters.size()) : spec.inter_edges;
    std::uniform_int_distribution<Vertex> pick(0, spec.n - 1);
    for (int added = 0, tries = 0; added < want && tries < 100 * (want + 1); ++tries) {
      Vertex u = pick(rng), v = pick(rng);
      if (owner[u] == owner[v]) continue;
      if (edges.emplace(std::min(u, v), std::max(u, v)).second) ++added;
    }
  }
  bridge_components(spec.n, edges);
  return finish(spec.n, edges);
}

SimpleGraph powerlaw(const GeneratorSpec& spec) {
  if (spec.attach < 1) throw InfeasibleParameters("powerlaw: attach must be positive");
  std::mt19937_64 rng(spec.seed);
  EdgeSet edges;
  const int core = std::min(spec.n, spec.attach + 1);
  clique(edges, 0, core);
  std::vector<Vertex> endpoints;
  for (auto [u, v] : edges) {
    endpoints.push_back(u);
    endpoints.push_back(v);
  }
  for (Vertex v = core; v < spec.n; ++v) {
    std::set<Vertex> targets;
    while (static_cast<int>(targets.size()) < std::min(spec.attach, v)) {
      if (endpoints.empty()) {
        targets.insert(0);
        continue;
      }
      std::uniform_int_distribution<std::size_t> pick(0, endpoints.size() - 1);
      targets.insert(endpoints[pick(rng)]);
    }
    for (Vertex t : targets) {
      add_edge(edges, v, t);
      endpoints.push_back(v);
      endpoints.push_back(t);
    }
  }
  bridge_components(spec.n, edges);
  return finish(spec.n, edges);
}

}  // namespace

const char* to_string(Family f) {
  switch (f) {
    case Family::kGnp: return "gnp";
    case Family::kClique: return "clique";
    case Family::kStar: return "star";
    case Family::kPath: return "path";
    case Family::kCycle: return "cycle";
    case Family::kBarbell: return "barbell";
    case Family::kPlantedExpanders: return "planted-expanders";
    case Family::kPowerlaw: return "powerlaw";
  }
  return "?";
}

std::vector<Family> all_families() {
  return {Family::kGnp,     Family::kClique,           Family::kStar,
          Family::kPath,    Family::kCycle,            Family::kBarbell,
          Family::kPlantedExpanders, Family::kPowerlaw};
}

Family parse_family(const std::string& s) {
  for (Family f : all_families())
    if (s == to_string(f)) return f;
  throw std::invalid_argument("unknown graph family '" + s + "'");
}

std::vector<VertexSet> planted_clusters(const GeneratorSpec& spec) {
  if (spec.cluster_min < 1 || spec.cluster_max < spec.cluster_min)
    throw InfeasibleParameters("planted-expanders: invalid cluster size range");
  std::mt19937_64 rng(spec.seed);
  std::uniform_int_distribution<int> size(spec.cluster_min, spec.cluster_max);
  std::vector<VertexSet> out;
  Vertex next = 0;
  while (next < spec.n) {
    int s = std::min(size(rng), spec.n - next);
    if (s < spec.cluster_min && !out.empty()) {
      for (Vertex v = next; v < spec.n; ++v) out.back().push_back(v);
      break;
    }
    VertexSet cl(s);
    std::iota(cl.begin(), cl.end(), next);
    out.push_back(std::move(cl));
    next += s;
  }
  return out;
}

SimpleGraph generate(const GeneratorSpec& spec) {
  if (spec.n < 1 && !(spec.family == Family::kBarbell && spec.a > 0 && spec.b > 0))
    throw InfeasibleParameters("generator: n must be positive");
  EdgeSet edges;
  switch (spec.family) {
    case Family::kGnp: return gnp(spec);
    case Family::kPlantedExpanders: return planted(spec);
    case Family::kPowerlaw: return powerlaw(spec);
    case Family::kClique:
      clique(edges, 0, spec.n);
      return finish(spec.n, edges);
    case Family::kStar:
      for (Vertex v = 1; v < spec.n; ++v) add_edge(edges, 0, v);
      return finish(spec.n, edges);
    case Family::kPath:
      for (Vertex v = 1; v < spec.n; ++v) add_edge(edges, v - 1, v);
      return finish(spec.n, edges);
    case Family::kCycle:
      if (spec.n < 3) throw InfeasibleParameters("cycle: n must be at least 3");
      for (Vertex v = 0; v < spec.n; ++v) add_edge(edges, v, (v + 1) % spec.n);
      return finish(spec.n, edges);
    case Family::kBarbell: {
      const int a = spec.a > 0 ? spec.a : spec.n / 2;
      const int b = spec.b > 0 ? spec.b : (spec.a > 0 ? a : spec.n - a);
      if (a < 1 || b < 1) throw InfeasibleParameters("barbell: both cliques need a vertex");
      clique(edges, 0, a);
      clique(edges, a, b);
      add_edge(edges, a - 1, a);
      return finish(a + b, edges);
    }
  }
  throw std::logic_error("unhandled family");
}

VerifyMode VerifyMode::automatic(int n, std::uint64_t seed) {
  return n <= 60 ? all() : sampled(2000, seed);
}

VerificationReport verify_tree(const SimpleGraph& g, const PartitionTree& tree, VerifyMode mode) {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport rep;
  const int n = g.num_vertices();
  if (tree.num_vertices() != n) throw std::invalid_argument("verify: tree and graph sizes differ");

  std::vector<std::pair<Vertex, Vertex>> pairs;
  const std::int64_t total = static_cast<std::int64_t>(n) * (n - 1) / 2;
  if (mode.all_pairs || mode.sample >= total) {
    for (Vertex a = 0; a < n; ++a)
      for (Vertex b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  } else {
    std::mt19937_64 rng(mode.seed);
    std::uniform_int_distribution<Vertex> pick(0, n - 1);
    std::set<std::pair<Vertex, Vertex>> chosen;
    while (static_cast<std::int64_t>(chosen.size()) < mode.sample) {
      Vertex a = pick(rng), b = pick(rng);
      if (a != b) chosen.emplace(std::min(a, b), std::max(a, b));
    }
    pairs.assign(chosen.begin(), chosen.end());
  }

  const FlowNetwork net = identity_network(g);
  for (auto [a, b] : pairs) {
    ++rep.pairs_checked;
    const Capacity graph_value = max_flow(net, a, b);
    const Capacity tree_value =
        tree.node_of(a) == tree.node_of(b) ? -1 : tree_min_cut_query(tree, a, b).value;
    if (tree_value != graph_value) rep.mismatches.push_back({a, b, tree_value, graph_value});
  }

  const auto edges = tree.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const VertexSet side = tree_side(tree, edges[i], edges[i].a);
    if (boundary(g, side) != edges[i].weight) {
      rep.cut_side_valid = false;
      rep.bad_edges.push_back(static_cast<int>(i));
    }
  }
  rep.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

BruteForceCuts brute_force_all_cuts(const SimpleGraph& g) {
  const int n = g.num_vertices();
  if (n > 14) throw std::invalid_argument("brute force: n must be at most 14");
  BruteForceCuts out;
  out.values = Eigen::MatrixXi::Zero(n, n);
  out.latest.assign(n, std::vector<std::uint32_t>(n, 0));
  if (n < 2) return out;

  constexpr int kUnset = std::numeric_limits<int>::max();
  Eigen::MatrixXi best = Eigen::MatrixXi::Constant(n, n, kUnset);
  std::vector<std::vector<int>> ties(n, std::vector<int>(n, 0));
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    int cut = 0;
    for (auto [u, v] : g.edges()) cut += ((mask >> u) & 1) != ((mask >> v) & 1);
    for (int s = 0; s < n; ++s) {
      if (!((mask >> s) & 1)) continue;
      for (int t = 0; t < n; ++t) {
        if ((mask >> t) & 1) continue;
        std::uint32_t& cur = out.latest[s][t];
        if (cut < best(s, t)) {
          best(s, t) = cut;
          cur = mask;
          ties[s][t] = 0;
        } else if (cut == best(s, t)) {
          const int pc = std::popcount(mask), pcur = std::popcount(cur);
          if (pc < pcur) {
            cur = mask;
            ties[s][t] = 0;
          } else if (pc == pcur) {
            ties[s][t] = 1;
          }
        }
      }
    }
  }
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      if (s == t) continue;
      out.values(s, t) = best(s, t);
      if (ties[s][t]) out.latest_unique = false;
    }
  return out;
}

const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kClassic: return "classic";
    case Algorithm::kCond: return "cond";
    case Algorithm::kUncond: return "uncond";
  }
  return "?";
}

Algorithm parse_algorithm(const std::string& s) {
  for (Algorithm a : {Algorithm::kClassic, Algorithm::kCond, Algorithm::kUncond})
    if (s == to_string(a)) return a;
  throw std::invalid_argument("unknown algorithm '" + s + "'");
}

BuildResult build(const SimpleGraph& g, Algorithm algo, const AlgoParams& params) {
  switch (algo) {
    case Algorithm::kClassic: return classic_build(g);
    case Algorithm::kCond: return cond_gomory_hu(g, params);
    case Algorithm::kUncond: return uncond_gomory_hu(g, params);
  }
  throw std::logic_error("unhandled algorithm");
}

BenchResult bench(const SimpleGraph& g, Algorithm algo, const AlgoParams& params) {
  const auto start = std::chrono::steady_clock::now();
  BuildResult res = build(g, algo, params);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  nlohmann::json report = to_json(res.manifest);
  std::map<std::string, std::int64_t> nodes, splits;
  for (const auto& r : res.manifest.rounds)
    for (const auto& rec : r.nodes) {
      ++nodes[rec.branch];
      splits[rec.branch] += rec.splits;
    }
  report["wall_clock_seconds"] = wall;
  report["round_count"] = res.manifest.rounds.size();
  report["branch_nodes"] = nodes;
  report["branch_splits"] = splits;
  return {std::move(res), std::move(report)};
}

}  // namespace cuttree
