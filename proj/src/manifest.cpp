#include "cuttree/manifest.hpp"

#include <ostream>

namespace cuttree {

using nlohmann::json;

json to_json(const FlowStats& s) { return {{"calls", s.calls}, {"volume", s.volume}}; }

json to_json(const AlgoParams& p) {
  return {{"preset", to_string(p.preset)},
          {"phi", p.phi},
          {"r", p.r},
          {"size_threshold", p.size_threshold},
          {"prep_rounds", p.prep_rounds},
          {"cap_small_large", p.cap_small_large},
          {"min_cluster_work", p.min_cluster_work},
          {"d_threshold_exp", p.d_threshold_exp},
          {"init_partial_k", p.init_partial_k},
          {"max_rounds", p.max_rounds},
          {"certify_splits", p.certify_splits},
          {"diagnostics", p.diagnostics},
          {"paper_const", p.paper_const},
          {"seed", p.seed}};
}

namespace {

json node_json(const NodeRecord& r) {
  json j = {{"node", r.node},
            {"size", r.size},
            {"volume", r.volume},
            {"parent_volume", r.parent_volume},
            {"pivot", r.pivot + 1},
            {"d", r.d},
            {"u_d_size", r.u_d_size},
            {"size_class", r.size_class},
            {"branch", r.branch},
            {"clusters_explored", r.clusters_explored},
            {"terminations", r.terminations},
            {"candidates", r.candidates},
            {"splits", r.splits},
            {"max_split_volume", r.max_split_volume},
            {"split_volume_ok", r.split_volume_ok},
            {"remaining_volume_ratio", r.remaining_volume_ratio},
            {"certification_rejections", r.certification_rejections},
            {"laminar_violations", r.laminar_violations},
            {"aborts", r.aborts},
            {"dichotomy_violations", r.dichotomy_violations}};
  if (r.heavy_targets) j["heavy_targets"] = *r.heavy_targets;
  if (r.envelope) j["envelope"] = *r.envelope;
  return j;
}

}  // namespace

json to_json(const RunManifest& m) {
  json rounds = json::array();
  for (const auto& r : m.rounds) {
    json nodes = json::array();
    for (const auto& n : r.nodes) nodes.push_back(node_json(n));
    rounds.push_back({{"round", r.round},
                      {"nodes_divided", r.nodes_divided},
                      {"nodes_created", r.nodes_created},
                      {"flows", to_json(r.flows)},
                      {"nodes", std::move(nodes)}});
  }
  json j = {{"algorithm", m.algorithm},
            {"n", m.n},
            {"m", m.m},
            {"total_flows", to_json(m.total_flows)},
            {"tail_flows", to_json(m.tail_flows)}};
  if (m.algorithm == "classic") return j;
  j["preset"] = m.preset;
  j["seed"] = m.seed;
  j["params"] = to_json(m.params);
  j["clusters"] = m.clusters;
  j["decomposition_best_effort"] = m.decomposition_best_effort;
  j["decomposition_boundary"] = m.decomposition_boundary;
  j["init_k"] = m.init_k;
  j["init_flows"] = to_json(m.init_flows);
  j["rounds"] = std::move(rounds);
  j["round_cap_hit"] = m.round_cap_hit;
  j["diagnostic_flows"] = to_json(m.diagnostic_flows);
  j["contraction_target"] = m.contraction_target;
  return j;
}

void write_manifest(std::ostream& out, const RunManifest& m) { out << to_json(m).dump(2) << '\n'; }

}  // namespace cuttree
