#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "cuttree/expander.hpp"
#include "cuttree/fast_gh.hpp"
#include "cuttree/harness.hpp"
#include "cuttree/maxflow.hpp"

namespace cuttree::testing {

// One exploration instance on a planted-cluster graph with the whole vertex
// set as the tree node.
struct ExploreInstance {
  SimpleGraph g;
  ExpanderDecomposition dec;
  PartitionTree tree;
  AuxiliaryGraph aux;
  Vertex pivot = -1;
  int cluster = -1;
  VertexSet targets;  // C n U_d without the pivot
  std::int64_t parent_volume = 0;
  AlgoParams params;
};

inline VertexSet intersect(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool subset(const VertexSet& a, const VertexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Parameters with the isolating-cut repetition count of the analysis, so the
// high-probability events of the exploration hold at test scale.
inline AlgoParams lemma_params(int n, std::uint64_t seed) {
  AlgoParams p = AlgoParams::desk(seed);
  p.prep_rounds = static_cast<std::int64_t>(std::ceil(10.0 * std::log2(n) / p.phi));
  return p;
}

// Builds instance `index`: even indices put the pivot inside the explored
// cluster, odd ones outside it. Returns nullopt when no cluster has enough
// targets for a non-bypassed exploration.
inline std::optional<ExploreInstance> make_explore_instance(int index) {
  GeneratorSpec spec;
  spec.family = Family::kPlantedExpanders;
  spec.n = 36 + index % 25;
  spec.cluster_min = 10;
  spec.cluster_max = 16;
  spec.intra_p = index % 3 == 2 ? 0.9 : 1.0;
  spec.seed = 5000 + static_cast<std::uint64_t>(index);
  ExploreInstance in{generate(spec), {}, PartitionTree(spec.n), {}, -1, -1, {}, 0,
                     lemma_params(spec.n, spec.seed)};
  DecompositionConfig cfg;
  cfg.phi = cfg.alpha = in.params.phi;
  in.dec = decompose(in.g, cfg);
  in.aux = auxiliary_graph(in.g, in.tree, 0);
  in.parent_volume = 2 * static_cast<std::int64_t>(in.g.num_edges());

  const bool inside = index % 2 == 0;
  for (int c = 0; c < static_cast<int>(in.dec.clusters.size()); ++c) {
    const ClusterInfo& cl = in.dec.clusters[c];
    if (cl.flagged || static_cast<std::int64_t>(cl.vertices.size()) <= in.params.min_cluster_work)
      continue;
    Vertex anchor = inside ? cl.vertices[index % cl.vertices.size()] : -1;
    for (Vertex v = 0; anchor < 0 && v < in.g.num_vertices(); ++v)
      if (!std::binary_search(cl.vertices.begin(), cl.vertices.end(), v)) anchor = v;
    if (anchor < 0) continue;
    NodeContext ctx = select_classes(in.g, in.dec, in.tree, 0, anchor, in.parent_volume);
    VertexSet targets = intersect(cl.vertices, ctx.u_d);
    targets.erase(std::remove(targets.begin(), targets.end(), anchor), targets.end());
    if (static_cast<std::int64_t>(targets.size()) < in.params.min_cluster_work) continue;
    in.pivot = anchor;
    in.cluster = c;
    in.targets = std::move(targets);
    return in;
  }
  return std::nullopt;
}

struct LemmaReport {
  int dichotomy = 0;           // oracle cuts violating the large/small dichotomy
  int kappa = 0;               // oracle-large u with lambda_u >= kappa_u
  int q_membership = 0;        // loop heads where some u in Q has L_u n X != S
  int large_inside_s = 0;      // loop heads where some oracle-large v in S has L_v n X not within S
  int progress = 0;            // iterations without strict progress, or over the flow budget
  int lowest_large = 0;        // case-2 results whose L differs from the lowest large cut
  int small_exact = 0;         // case-1 results whose K_u differs from L_u
  int large_count = 0;
  int checked_heads = 0;
  std::vector<std::string> notes;

  bool hard_ok() const {
    return dichotomy == 0 && kappa == 0 && q_membership == 0 && large_inside_s == 0 &&
           progress == 0 && lowest_large == 0;
  }
};

inline LemmaReport check_explore_lemmas(const ExploreInstance& in, const ExploreResult& res,
                                        const ExploreTrace& trace) {
  LemmaReport rep;
  const auto& x = in.targets;
  const std::int64_t cap = in.params.cap_small_large;
  const int p = in.aux.super_of(in.pivot);
  std::map<Vertex, Cut> oracle;
  std::map<Vertex, bool> large;
  for (Vertex u : x) {
    Cut l = latest_min_cut(in.aux.net, in.aux.super_of(u), p);
    const auto inside = static_cast<std::int64_t>(intersect(l.original_side, x).size());
    const auto outside = static_cast<std::int64_t>(x.size()) - inside;
    if (outside > cap && inside > cap) ++rep.dichotomy;
    large[u] = outside <= cap;
    rep.large_count += large[u];
    oracle.emplace(u, std::move(l));
  }
  if (res.termination == ExploreTermination::kBypass ||
      res.termination == ExploreTermination::kFallback) {
    rep.notes.push_back(std::string("termination ") + to_string(res.termination));
    return rep;
  }
  for (Vertex u : x)
    if (large[u] && !(oracle.at(u).value < trace.prepared.at(u).a.value)) ++rep.kappa;

  auto potential = [&](const VertexSet& s, const VertexSet& q) {
    return static_cast<std::int64_t>(x.size() - s.size() + q.size());
  };
  std::int64_t last = -1;
  for (const ExploreIteration& it : trace.iterations) {
    ++rep.checked_heads;
    for (Vertex u : it.q)
      if (intersect(oracle.at(u).original_side, x) != it.s) {
        ++rep.q_membership;
        break;
      }
    for (Vertex v : it.s)
      if (large[v] && !subset(intersect(oracle.at(v).original_side, x), it.s)) {
        ++rep.large_inside_s;
        break;
      }
    const std::int64_t now = potential(it.s, it.q);
    if (now <= last) ++rep.progress;
    last = now;
  }
  if (potential(trace.final_s, trace.final_q) <= last) ++rep.progress;
  if (res.loop_flows > 2 * cap + 2) ++rep.progress;

  if (res.termination == ExploreTermination::kLowestLarge) {
    std::optional<Vertex> lowest;
    for (Vertex u : x)
      if (large[u] && (!lowest || oracle.at(u).original_side.size() <
                                      oracle.at(*lowest).original_side.size()))
        lowest = u;
    if (!lowest || !trace.lowest_cut ||
        trace.lowest_cut->original_side != oracle.at(*lowest).original_side ||
        trace.lowest_cut->value != oracle.at(*lowest).value)
      ++rep.lowest_large;
  } else {
    for (const ExploreCandidate& c : res.w)
      if (c.k.side != oracle.at(c.u).side) ++rep.small_exact;
  }
  return rep;
}

}  // namespace cuttree::testing
