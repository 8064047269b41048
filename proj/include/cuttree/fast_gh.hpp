#pragma once

#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "cuttree/expander.hpp"
#include "cuttree/isolating_cuts.hpp"
#include "cuttree/graph.hpp"
#include "cuttree/maxflow.hpp"
#include "cuttree/partition_tree.hpp"

namespace cuttree {

using Rng = std::mt19937_64;

enum class Preset { kDesk, kPaperAsymptotic };

/// Parameters of the expander-based constructions. The desk preset shrinks
/// every threshold so that all branches run on graphs with tens of vertices;
/// the paper-asymptotic preset evaluates the asymptotic formulas (with log
/// base 2) and in practice degenerates to the initial partial tree plus
/// generic Gomory-Hu steps for any graph that fits in memory.
struct AlgoParams {
  Preset preset = Preset::kDesk;
  double phi = 0.5;               // conductance of the decomposition, sampling rate of T
  std::int64_t r = 1;             // 10 r pivot draws per node
  std::int64_t size_threshold = 8;   // nodes with at least this many vertices are divided
  std::int64_t prep_rounds = 8;      // isolating-cut repetitions per cluster
  std::int64_t cap_small_large = 4;  // the 2/phi large/small threshold
  std::int64_t min_cluster_work = 9; // below this many targets a cluster is solved directly
  double d_threshold_exp = 0.75;     // unconditional branch exponent
  int init_partial_k = 0;            // 0: ceil(sqrt n)
  int max_rounds = 64;
  bool certify_splits = true;        // confirm explored cuts by one max-flow before splitting
  bool diagnostics = false;          // extra oracle flows for the pivot envelope statistic
  double paper_const = 1.0;          // exponent constant of the decomposition routine
  std::uint64_t seed = 1;

  static AlgoParams desk(std::uint64_t seed = 1);
  static AlgoParams paper_asymptotic(int n, std::uint64_t seed = 1, double paper_const = 1.0);

  /// Throws std::invalid_argument on non-positive fields or when
  /// min_cluster_work <= 2 * cap_small_large (the exploration lemmas need
  /// strictly more targets than two large-side allowances).
  void validate() const;
  int init_k(int n) const;
};

const char* to_string(Preset p);
Preset parse_preset(const std::string& s);

/// Degree classes: every power of two in [1, n].
std::vector<int> degree_classes(int n);

/// 10 r degree-proportional draws with replacement from `node`; distinct results, sorted.
VertexSet sample_pivots(const SimpleGraph& g, const VertexSet& node, std::int64_t r, Rng& rng);

struct NodeContext {
  NodeId node = -1;
  std::int64_t parent_volume = 0;  // vol_G(N) of the node refined this round
  Vertex pivot = -1;
  int d = 0;
  VertexSet u_d;                   // vertices of the node with degree in [d, 2d)
  int size_class = 0;              // i_U
  std::map<int, int> cnt;          // size class -> vertices of u_d in clusters of that class
};

/// Picks d maximizing d |U_d| and the size class maximizing cnt (ties: smallest).
NodeContext select_classes(const SimpleGraph& g, const ExpanderDecomposition& dec,
                           const PartitionTree& tree, NodeId node, Vertex pivot,
                           std::int64_t parent_volume);

enum class VertexClass { kLarge, kSmall };

class DichotomyViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Large when at most `cap` targets lie outside the cut side, otherwise small
/// when at most `cap` lie inside. Throws DichotomyViolation if neither holds.
VertexClass classify_vertex(const VertexSet& side, const VertexSet& targets, std::int64_t cap);

class ExploreAbort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A_u and kappa_u for one target.
struct Prepared {
  Cut a;  // aux-graph side and value
};

/// Repeated isolating cuts on random subsets of `targets` against the pivot.
/// Throws ExploreAbort when some A_u holds more than cap targets.
std::map<Vertex, Prepared> explore_prepare(const AuxiliaryGraph& aux, Vertex pivot,
                                           const VertexSet& targets, const AlgoParams& params,
                                           Rng& rng, FlowStats* stats = nullptr);

enum class ExploreTermination { kBypass, kAllSmall, kLowestLarge, kFallback };
const char* to_string(ExploreTermination t);

struct ExploreIteration {
  VertexSet s;  // at loop head
  VertexSet q;  // at loop head
  Vertex u = -1;
  Cut l_u;
  VertexClass label = VertexClass::kSmall;
};

/// Everything the exploration computed, for lemma-level checks.
struct ExploreTrace {
  std::map<Vertex, Prepared> prepared;
  std::vector<ExploreIteration> iterations;
  VertexSet final_s;
  VertexSet final_q;
  std::optional<Vertex> representative;  // v drawn from Q in the lowest-large case
  std::optional<Cut> lowest_cut;         // L = L_v
  VertexSet excluded;                    // B
  int prepare_attempts = 0;
};

struct ExploreCandidate {
  Vertex u = -1;
  Cut k;            // aux-graph cut separating u from the pivot
  bool exact = false;  // computed directly by max-flow (no certification needed)
};

struct ExploreResult {
  std::vector<ExploreCandidate> w;  // sorted by vertex
  ExploreTermination termination = ExploreTermination::kBypass;
  int loop_flows = 0;
  int aborts = 0;
  int dichotomy_violations = 0;
};

/// Exploration of one cluster's targets (C n U_d without the pivot) inside
/// node U. Candidates returned all satisfy vol_G(K_u n U) <= parent_volume / 2.
ExploreResult explore_tree(const SimpleGraph& g, const AuxiliaryGraph& aux, Vertex pivot,
                           const VertexSet& targets, std::int64_t parent_volume,
                           const AlgoParams& params, Rng& rng, FlowStats* stats = nullptr,
                           ExploreTrace* trace = nullptr);

// -- run manifest ------------------------------------------------------------

struct NodeRecord {
  NodeId node = -1;
  int size = 0;
  std::int64_t volume = 0;
  std::int64_t parent_volume = 0;
  Vertex pivot = -1;
  int d = 0;
  int u_d_size = 0;
  int size_class = 0;
  std::string branch;  // "explore" or "k-partial"
  int clusters_explored = 0;
  std::map<std::string, int> terminations;
  int candidates = 0;
  int splits = 0;
  std::int64_t max_split_volume = 0;     // max vol_G(K_u n U) over splits
  bool split_volume_ok = true;           // every split side <= parent_volume / 2
  double remaining_volume_ratio = 1.0;   // vol(P) / vol(U)
  int certification_rejections = 0;
  int laminar_violations = 0;
  int aborts = 0;
  int dichotomy_violations = 0;
  // pivot envelope statistic, diagnostics only
  std::optional<int> heavy_targets;
  std::optional<double> envelope;
};

struct RoundRecord {
  int round = 0;
  int nodes_divided = 0;
  int nodes_created = 0;
  FlowStats flows;
  std::vector<NodeRecord> nodes;
};

struct RunManifest {
  std::string algorithm;
  std::string preset;
  std::uint64_t seed = 0;
  AlgoParams params;
  int n = 0;
  int m = 0;
  int clusters = 0;
  bool decomposition_best_effort = false;
  std::int64_t decomposition_boundary = 0;
  int init_k = 0;
  FlowStats init_flows;
  std::vector<RoundRecord> rounds;
  bool round_cap_hit = false;
  FlowStats tail_flows;
  FlowStats total_flows;
  FlowStats diagnostic_flows;
  double contraction_target = 0.0;  // 1 - 1 / (2 log^2 n)
};

struct BuildResult {
  PartitionTree tree;
  RunManifest manifest;
};

/// Expander-search construction.
BuildResult cond_gomory_hu(const SimpleGraph& g, const AlgoParams& params);

/// As cond_gomory_hu, but nodes with d < n^e and s <= n^e / sqrt(d) are
/// handled by a 2d-partial tree instead of expander search.
BuildResult uncond_gomory_hu(const SimpleGraph& g, const AlgoParams& params);

/// Classic construction wrapped with a manifest (no rounds).
BuildResult classic_build(const SimpleGraph& g);

}  // namespace cuttree
