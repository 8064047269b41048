#include "cuttree/fast_gh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace cuttree {

namespace {

constexpr std::int64_t kSaturated = std::numeric_limits<std::int64_t>::max() / 4;

std::int64_t saturate(double x) {
  if (!(x < static_cast<double>(kSaturated))) return kSaturated;
  return static_cast<std::int64_t>(x);
}

double log2n(int n) { return std::log2(std::max(2, n)); }

VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool is_subset(const std::vector<int>& inner, const std::vector<int>& outer) {
  return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

bool intersects(const std::vector<int>& a, const std::vector<int>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    (*i < *j) ? ++i : ++j;
  }
  return false;
}

// vol_G of the kept vertices on an aux-graph side.
std::int64_t kept_volume(const SimpleGraph& g, const AuxiliaryGraph& aux, const std::vector<int>& side) {
  std::int64_t vol = 0;
  for (int x : side)
    if (aux.is_kept(x)) vol += g.degree(aux.kept[x]);
  return vol;
}

Cut singleton_cut(const AuxiliaryGraph& aux, int x) {
  Cut c;
  c.side = {x};
  c.value = aux.net.weighted_degree(x);
  c.original_side = aux.net.expand(c.side);
  return c;
}

}  // namespace

// -- parameters ----------------------------------------------------------------

AlgoParams AlgoParams::desk(std::uint64_t seed) {
  AlgoParams p;
  p.seed = seed;
  p.init_partial_k = 2;
  return p;
}

AlgoParams AlgoParams::paper_asymptotic(int n, std::uint64_t seed, double paper_const) {
  AlgoParams p;
  p.preset = Preset::kPaperAsymptotic;
  p.seed = seed;
  p.paper_const = paper_const;
  const double lg = log2n(n);
  p.phi = 1.0 / (10.0 * std::pow(lg, paper_const + 10.0));
  p.r = saturate(std::ceil(10.0 * std::pow(lg, 5)));
  p.size_threshold = saturate(20.0 * static_cast<double>(p.r));
  p.prep_rounds = saturate(std::ceil(10.0 * lg / p.phi));
  p.cap_small_large = saturate(std::floor(2.0 / p.phi));
  p.min_cluster_work = saturate(std::ceil(10.0 / (p.phi * p.phi)));
  return p;
}

void AlgoParams::validate() const {
  if (!(phi > 0 && phi <= 1)) throw std::invalid_argument("phi must be in (0, 1]");
  if (r < 1 || size_threshold < 1 || prep_rounds < 0 || cap_small_large < 1 ||
      min_cluster_work < 1 || max_rounds < 0 || init_partial_k < 0 || !(d_threshold_exp > 0))
    throw std::invalid_argument("algorithm parameters must be positive");
  if (min_cluster_work <= 2 * cap_small_large)
    throw std::invalid_argument("min_cluster_work must exceed 2 * cap_small_large");
}

int AlgoParams::init_k(int n) const {
  return init_partial_k > 0 ? init_partial_k : static_cast<int>(std::ceil(std::sqrt(n)));
}

const char* to_string(Preset p) { return p == Preset::kDesk ? "desk" : "paper-asymptotic"; }

Preset parse_preset(const std::string& s) {
  if (s == "desk") return Preset::kDesk;
  if (s == "paper-asymptotic") return Preset::kPaperAsymptotic;
  throw std::invalid_argument("unknown preset '" + s + "'");
}

const char* to_string(ExploreTermination t) {
  switch (t) {
    case ExploreTermination::kBypass: return "bypass";
    case ExploreTermination::kAllSmall: return "all-small";
    case ExploreTermination::kLowestLarge: return "lowest-large";
    case ExploreTermination::kFallback: return "fallback";
  }
  return "?";
}

// -- class selection -----------------------------------------------------------

std::vector<int> degree_classes(int n) {
  std::vector<int> out;
  for (long long k = 1; k <= n; k *= 2) out.push_back(static_cast<int>(k));
  return out;
}

VertexSet sample_pivots(const SimpleGraph& g, const VertexSet& node, std::int64_t r, Rng& rng) {
  if (node.empty()) throw std::invalid_argument("sample_pivots: empty node");
  if (node.size() == 1) return node;
  std::vector<double> weights;
  weights.reserve(node.size());
  for (Vertex v : node) weights.push_back(static_cast<double>(g.degree(v)));
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  VertexSet out;
  for (std::int64_t i = 0; i < 10 * r; ++i) out.push_back(node[pick(rng)]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

NodeContext select_classes(const SimpleGraph& g, const ExpanderDecomposition& dec,
                           const PartitionTree& tree, NodeId node, Vertex pivot,
                           std::int64_t parent_volume) {
  NodeContext ctx;
  ctx.node = node;
  ctx.pivot = pivot;
  ctx.parent_volume = parent_volume;
  const VertexSet& members = tree.node_set(node);
  std::int64_t best = -1;
  for (int k : degree_classes(g.num_vertices())) {
    std::int64_t count = 0;
    for (Vertex v : members) count += g.degree(v) >= k && g.degree(v) < 2 * k;
    if (static_cast<std::int64_t>(k) * count > best) {
      best = static_cast<std::int64_t>(k) * count;
      ctx.d = k;
    }
  }
  for (Vertex v : members)
    if (g.degree(v) >= ctx.d && g.degree(v) < 2 * ctx.d) ctx.u_d.push_back(v);
  for (Vertex v : ctx.u_d) ++ctx.cnt[size_class_of(dec, dec.cluster_of[v])];
  int best_cnt = -1;
  for (auto [i, c] : ctx.cnt) {
    if (c > best_cnt) {
      best_cnt = c;
      ctx.size_class = i;
    }
  }
  return ctx;
}

VertexClass classify_vertex(const VertexSet& side, const VertexSet& targets, std::int64_t cap) {
  const auto inside = static_cast<std::int64_t>(set_intersection(side, targets).size());
  const auto outside = static_cast<std::int64_t>(targets.size()) - inside;
  if (outside <= cap) return VertexClass::kLarge;
  if (inside <= cap) return VertexClass::kSmall;
  throw DichotomyViolation("cut holds " + std::to_string(inside) + " targets and misses " +
                           std::to_string(outside) + ", both above " + std::to_string(cap));
}

// -- exploration ---------------------------------------------------------------

std::map<Vertex, Prepared> explore_prepare(const AuxiliaryGraph& aux, Vertex pivot,
                                           const VertexSet& targets, const AlgoParams& params,
                                           Rng& rng, FlowStats* stats) {
  const int p = aux.super_of(pivot);
  if (p < 0) throw std::invalid_argument("explore_prepare: pivot not in node");
  std::map<Vertex, Prepared> best;
  for (Vertex u : targets) {
    if (u == pivot || aux.super_of(u) < 0)
      throw std::invalid_argument("explore_prepare: bad target");
    best[u].a = singleton_cut(aux, aux.super_of(u));
  }
  std::bernoulli_distribution coin(params.phi);
  for (std::int64_t round = 0; round < params.prep_rounds; ++round) {
    std::vector<int> chosen;
    for (Vertex u : targets)
      if (coin(rng)) chosen.push_back(aux.super_of(u));
    if (chosen.empty()) continue;
    IsolatingResult iso = isolating_cuts(aux.net, p, chosen, stats);
    for (auto& [x, cut] : iso.per_terminal) {
      Prepared& cur = best[aux.kept[x]];
      if (cut.value < cur.a.value ||
          (cut.value == cur.a.value && cut.side.size() < cur.a.side.size()))
        cur.a = std::move(cut);
    }
  }
  for (auto& [u, prep] : best) {
    auto held = set_intersection(prep.a.original_side, targets).size();
    if (static_cast<std::int64_t>(held) > params.cap_small_large)
      throw ExploreAbort("A_u of vertex " + std::to_string(u) + " holds " + std::to_string(held) +
                         " targets");
  }
  return best;
}

namespace {

ExploreResult direct_cuts(const SimpleGraph& g, const AuxiliaryGraph& aux, Vertex pivot,
                          const VertexSet& targets, std::int64_t parent_volume,
                          ExploreTermination why, FlowStats* stats) {
  ExploreResult res;
  res.termination = why;
  const int p = aux.super_of(pivot);
  for (Vertex u : targets) {
    Cut l = latest_min_cut(aux.net, aux.super_of(u), p, stats);
    if (2 * kept_volume(g, aux, l.side) <= parent_volume)
      res.w.push_back({u, std::move(l), true});
  }
  return res;
}

}  // namespace

ExploreResult explore_tree(const SimpleGraph& g, const AuxiliaryGraph& aux, Vertex pivot,
                           const VertexSet& targets, std::int64_t parent_volume,
                           const AlgoParams& params, Rng& rng, FlowStats* stats,
                           ExploreTrace* trace) {
  const std::int64_t cap = params.cap_small_large;
  if (static_cast<std::int64_t>(targets.size()) < params.min_cluster_work)
    return direct_cuts(g, aux, pivot, targets, parent_volume, ExploreTermination::kBypass, stats);

  ExploreResult res;
  std::map<Vertex, Prepared> prepared;
  bool ok = false;
  for (int attempt = 0; attempt < 2 && !ok; ++attempt) {
    if (trace) trace->prepare_attempts = attempt + 1;
    try {
      prepared = explore_prepare(aux, pivot, targets, params, rng, stats);
      ok = true;
    } catch (const ExploreAbort&) {
      ++res.aborts;
    }
  }
  if (!ok) {
    auto fb = direct_cuts(g, aux, pivot, targets, parent_volume, ExploreTermination::kFallback, stats);
    fb.aborts = res.aborts;
    return fb;
  }
  if (trace) trace->prepared = prepared;

  const int p = aux.super_of(pivot);
  VertexSet s = targets;
  VertexSet q;
  std::map<Vertex, Cut> latest;
  const std::int64_t iteration_cap = 2 * cap + 2;
  auto outside = [&] { return static_cast<std::int64_t>(targets.size() - s.size()); };

  try {
    while (std::max<std::int64_t>(outside(), static_cast<std::int64_t>(q.size())) <= cap) {
      if (res.loop_flows >= iteration_cap)
        throw ExploreAbort("exploration exceeded its iteration budget");
      VertexSet open = set_difference(s, q);
      if (open.empty()) throw ExploreAbort("exploration ran out of candidates");
      Vertex u = open.front();
      for (Vertex v : open)
        if (prepared.at(v).a.value > prepared.at(u).a.value) u = v;

      ExploreIteration it;
      if (trace) {
        it.s = s;
        it.q = q;
        it.u = u;
      }
      Cut l = latest_min_cut(aux.net, aux.super_of(u), p, stats);
      ++res.loop_flows;
      VertexClass label = classify_vertex(l.original_side, targets, cap);
      VertexSet l_targets = set_intersection(l.original_side, targets);
      if (label == VertexClass::kSmall) {
        VertexSet drop;
        std::set_union(q.begin(), q.end(), l_targets.begin(), l_targets.end(),
                       std::back_inserter(drop));
        s = set_difference(s, drop);
        q.clear();
      } else if (l_targets == s) {
        q.insert(std::upper_bound(q.begin(), q.end(), u), u);
      } else {
        s = l_targets;
        q = {u};
      }
      if (trace) {
        it.l_u = l;
        it.label = label;
        trace->iterations.push_back(std::move(it));
      }
      latest[u] = std::move(l);
    }
  } catch (const DichotomyViolation&) {
    ++res.dichotomy_violations;
    auto fb = direct_cuts(g, aux, pivot, targets, parent_volume, ExploreTermination::kFallback, stats);
    fb.aborts = res.aborts;
    fb.dichotomy_violations = res.dichotomy_violations;
    fb.loop_flows = res.loop_flows;
    return fb;
  } catch (const ExploreAbort&) {
    ++res.aborts;
    auto fb = direct_cuts(g, aux, pivot, targets, parent_volume, ExploreTermination::kFallback, stats);
    fb.aborts = res.aborts;
    fb.loop_flows = res.loop_flows;
    return fb;
  }
  if (trace) {
    trace->final_s = s;
    trace->final_q = q;
  }

  auto light = [&](const Cut& c) { return 2 * kept_volume(g, aux, c.side) <= parent_volume; };
  if (outside() > cap) {
    res.termination = ExploreTermination::kAllSmall;
    for (Vertex u : s)
      if (light(prepared.at(u).a)) res.w.push_back({u, prepared.at(u).a, false});
    return res;
  }

  res.termination = ExploreTermination::kLowestLarge;
  const Vertex v = q.front();
  const Cut& lowest = latest.at(v);
  VertexSet excluded;
  for (Vertex u : s)
    if (prepared.at(u).a.value > lowest.value) excluded.push_back(u);
  for (Vertex u : set_difference(s, excluded))
    if (light(prepared.at(u).a)) res.w.push_back({u, prepared.at(u).a, false});
  if (light(lowest)) {
    auto pos = std::find_if(res.w.begin(), res.w.end(), [&](const auto& c) { return c.u >= v; });
    if (pos != res.w.end() && pos->u == v)
      *pos = {v, lowest, true};
    else
      res.w.insert(pos, {v, lowest, true});
  }
  if (trace) {
    trace->representative = v;
    trace->lowest_cut = lowest;
    trace->excluded = excluded;
  }
  return res;
}

// -- driver ----------------------------------------------------------------------

namespace {

enum class Variant { kConditional, kUnconditional };

struct Builder {
  const SimpleGraph& g;
  const AlgoParams& params;
  Variant variant;
  Rng rng;
  ExpanderDecomposition dec;
  PartitionTree tree;
  RunManifest manifest;

  Builder(const SimpleGraph& graph, const AlgoParams& p, Variant v)
      : g(graph), params(p), variant(v), rng(p.seed), tree(graph.num_vertices()) {}

  void process_node(NodeId u_node, Vertex pivot, std::int64_t parent_volume, RoundRecord& round) {
    NodeContext ctx = select_classes(g, dec, tree, u_node, pivot, parent_volume);
    NodeRecord rec;
    rec.node = u_node;
    rec.size = static_cast<int>(tree.node_set(u_node).size());
    rec.volume = volume(g, tree.node_set(u_node));
    rec.parent_volume = parent_volume;
    rec.pivot = pivot;
    rec.d = ctx.d;
    rec.u_d_size = static_cast<int>(ctx.u_d.size());
    rec.size_class = ctx.size_class;

    const double n = g.num_vertices();
    const double bound = std::pow(n, params.d_threshold_exp);
    const double s = std::ldexp(1.0, ctx.size_class);
    const bool expander_branch = variant == Variant::kConditional || ctx.d >= bound ||
                                 s > bound / std::sqrt(static_cast<double>(ctx.d));
    const int nodes_before = tree.num_nodes();
    if (!expander_branch) {
      rec.branch = "k-partial";
      k_partial_tree(g, tree, u_node, 2 * ctx.d, &round.flows);
      rec.splits = tree.num_nodes() - nodes_before;
      rec.remaining_volume_ratio =
          static_cast<double>(volume(g, tree.node_set(u_node))) / static_cast<double>(rec.volume);
      round.nodes.push_back(std::move(rec));
      return;
    }
    rec.branch = "explore";
    AuxiliaryGraph aux = auxiliary_graph(g, tree, u_node);
    if (params.diagnostics) envelope(ctx, aux, rec);

    std::vector<ExploreCandidate> candidates;
    for (int c : dec.size_classes.at(ctx.size_class)) {
      VertexSet targets = set_intersection(dec.clusters[c].vertices, ctx.u_d);
      targets.erase(std::remove(targets.begin(), targets.end(), pivot), targets.end());
      if (targets.empty()) continue;
      ++rec.clusters_explored;
      ExploreResult er = explore_tree(g, aux, pivot, targets, parent_volume, params, rng,
                                      &round.flows);
      ++rec.terminations[to_string(er.termination)];
      rec.aborts += er.aborts;
      rec.dichotomy_violations += er.dichotomy_violations;
      for (auto& cand : er.w) candidates.push_back(std::move(cand));
    }
    rec.candidates = static_cast<int>(candidates.size());

    // Maximal sides first; nested ones are covered by their container.
    std::stable_sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
      if (a.k.side.size() != b.k.side.size()) return a.k.side.size() > b.k.side.size();
      return a.u < b.u;
    });
    std::vector<Cut> accepted;
    const int p = aux.super_of(pivot);
    for (auto& cand : candidates) {
      bool nested = false, crossing = false;
      for (const Cut& a : accepted) {
        if (is_subset(cand.k.side, a.side)) nested = true;
        else if (intersects(cand.k.side, a.side)) crossing = true;
      }
      if (nested) continue;
      if (crossing) {
        ++rec.laminar_violations;
        continue;
      }
      if (params.certify_splits && !cand.exact) {
        Cut check = latest_min_cut(aux.net, aux.super_of(cand.u), p, &round.flows);
        if (check.side != cand.k.side || check.value != cand.k.value) {
          ++rec.certification_rejections;
          continue;
        }
      }
      accepted.push_back(std::move(cand.k));
    }
    for (const Cut& a : accepted) {
      const std::int64_t vol = kept_volume(g, aux, a.side);
      rec.max_split_volume = std::max(rec.max_split_volume, vol);
      if (2 * vol > parent_volume) rec.split_volume_ok = false;
      split_along(tree, aux, a.side, a.value);
    }
    rec.splits = static_cast<int>(accepted.size());
    rec.remaining_volume_ratio =
        static_cast<double>(volume(g, tree.node_set(u_node))) / static_cast<double>(rec.volume);
    round.nodes.push_back(std::move(rec));
  }

  // Counts targets of U_d whose latest cut carries more than half of vol(N).
  void envelope(const NodeContext& ctx, const AuxiliaryGraph& aux, NodeRecord& rec) {
    int heavy = 0;
    const int p = aux.super_of(ctx.pivot);
    for (Vertex u : ctx.u_d) {
      if (u == ctx.pivot) continue;
      Cut l = latest_min_cut(aux.net, aux.super_of(u), p, &manifest.diagnostic_flows);
      if (2 * kept_volume(g, aux, l.side) > ctx.parent_volume) ++heavy;
    }
    const double lg = log2n(g.num_vertices());
    rec.heavy_targets = heavy;
    rec.envelope = 4.0 * static_cast<double>(ctx.u_d.size()) * lg * lg / static_cast<double>(params.r);
  }

  BuildResult run() {
    params.validate();
    const int n = g.num_vertices();
    manifest.algorithm = variant == Variant::kConditional ? "cond" : "uncond";
    manifest.preset = to_string(params.preset);
    manifest.seed = params.seed;
    manifest.params = params;
    manifest.n = n;
    manifest.m = g.num_edges();
    const double lg = log2n(n);
    manifest.contraction_target = 1.0 - 1.0 / (2.0 * lg * lg);

    DecompositionConfig cfg;
    cfg.phi = params.phi;
    cfg.alpha = params.phi;
    dec = decompose(g, cfg);
    manifest.clusters = static_cast<int>(dec.clusters.size());
    manifest.decomposition_best_effort = dec.best_effort();
    manifest.decomposition_boundary = dec.total_boundary();

    manifest.init_k = params.init_k(n);
    k_partial_tree(g, tree, 0, manifest.init_k, &manifest.init_flows);

    auto big_nodes = [&] {
      std::vector<NodeId> out;
      for (NodeId x = 0; x < tree.num_nodes(); ++x)
        if (static_cast<std::int64_t>(tree.node_set(x).size()) >= params.size_threshold)
          out.push_back(x);
      return out;
    };
    for (auto big = big_nodes(); !big.empty(); big = big_nodes()) {
      if (static_cast<int>(manifest.rounds.size()) >= params.max_rounds) {
        manifest.round_cap_hit = true;
        break;
      }
      RoundRecord round;
      round.round = static_cast<int>(manifest.rounds.size()) + 1;
      const int nodes_before = tree.num_nodes();
      for (NodeId big_node : big) {
        const VertexSet members = tree.node_set(big_node);
        const std::int64_t vol_n = volume(g, members);
        VertexSet pivots = sample_pivots(g, members, params.r, rng);
        refine(g, tree, big_node, pivots, &round.flows);
        ++round.nodes_divided;
        for (Vertex p : pivots) {
          NodeId u_node = tree.node_of(p);
          tree.meta(u_node).parent_volume = vol_n;
          if (2 * volume(g, tree.node_set(u_node)) > vol_n) process_node(u_node, p, vol_n, round);
        }
      }
      round.nodes_created = tree.num_nodes() - nodes_before;
      manifest.rounds.push_back(std::move(round));
    }

    const int frozen = tree.num_nodes();
    for (NodeId x = 0; x < frozen; ++x) {
      const VertexSet members = tree.node_set(x);
      if (members.size() > 1) refine(g, tree, x, members, &manifest.tail_flows);
    }

    manifest.total_flows = manifest.init_flows;
    for (const auto& r : manifest.rounds) manifest.total_flows += r.flows;
    manifest.total_flows += manifest.tail_flows;
    return {std::move(tree), std::move(manifest)};
  }
};

}  // namespace

BuildResult cond_gomory_hu(const SimpleGraph& g, const AlgoParams& params) {
  return Builder(g, params, Variant::kConditional).run();
}

BuildResult uncond_gomory_hu(const SimpleGraph& g, const AlgoParams& params) {
  return Builder(g, params, Variant::kUnconditional).run();
}

BuildResult classic_build(const SimpleGraph& g) {
  BuildResult out{PartitionTree(g.num_vertices()), {}};
  out.manifest.algorithm = "classic";
  out.manifest.n = g.num_vertices();
  out.manifest.m = g.num_edges();
  out.tree = classic_gomory_hu(g, &out.manifest.tail_flows);
  out.manifest.total_flows = out.manifest.tail_flows;
  return out;
}

}  // namespace cuttree
