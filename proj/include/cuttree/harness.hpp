#pragma once

#include <Eigen/Core>

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "cuttree/fast_gh.hpp"
#include "cuttree/graph.hpp"
#include "cuttree/partition_tree.hpp"

namespace cuttree {

enum class Family { kGnp, kClique, kStar, kPath, kCycle, kBarbell, kPlantedExpanders, kPowerlaw };

const char* to_string(Family f);
Family parse_family(const std::string& s);
std::vector<Family> all_families();

struct GeneratorSpec {
  Family family = Family::kGnp;
  int n = 10;
  double p = 0.3;          // gnp edge probability
  double intra_p = 1.0;    // planted-expanders intra-cluster density
  int a = 0;               // barbell left clique (0: n / 2)
  int b = 0;               // barbell right clique (0: n - a)
  int cluster_min = 10;    // planted-expanders cluster sizes
  int cluster_max = 16;
  int inter_edges = -1;    // planted-expanders inter-cluster edges (-1: one per cluster)
  int attach = 2;          // powerlaw edges per new vertex
  int retries = 64;        // gnp resampling budget
  std::uint64_t seed = 1;
};

class InfeasibleParameters : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Connected simple graph, deterministic in the spec. Families other than gnp
/// are joined by bridge edges between the smallest vertices of their components.
SimpleGraph generate(const GeneratorSpec& spec);

/// Cluster assignment used by the planted-expanders family, for tests.
std::vector<VertexSet> planted_clusters(const GeneratorSpec& spec);

struct Mismatch {
  Vertex a;
  Vertex b;
  Capacity tree_value;  // -1 when a and b share a tree node
  Capacity graph_value;
};

struct VerificationReport {
  std::int64_t pairs_checked = 0;
  std::vector<Mismatch> mismatches;
  bool cut_side_valid = true;  // every tree edge's bipartition has boundary equal to its weight
  std::vector<int> bad_edges;
  double elapsed_seconds = 0.0;

  bool accepted() const { return mismatches.empty() && cut_side_valid; }
};

struct VerifyMode {
  bool all_pairs = true;
  std::int64_t sample = 2000;  // pairs drawn when !all_pairs
  std::uint64_t seed = 1;

  static VerifyMode all() { return {}; }
  static VerifyMode sampled(std::int64_t k, std::uint64_t seed = 1) { return {false, k, seed}; }
  /// All pairs for n <= 60, otherwise min(all, 2000) sampled pairs.
  static VerifyMode automatic(int n, std::uint64_t seed = 1);
};

VerificationReport verify_tree(const SimpleGraph& g, const PartitionTree& tree, VerifyMode mode);

/// Exhaustive minimum cuts for n <= 14.
struct BruteForceCuts {
  Eigen::MatrixXi values;
  // latest[s][t]: bitmask of the minimum-cardinality s-side among minimum (s, t)-cuts
  std::vector<std::vector<std::uint32_t>> latest;
  bool latest_unique = true;
};

BruteForceCuts brute_force_all_cuts(const SimpleGraph& g);

enum class Algorithm { kClassic, kCond, kUncond };
const char* to_string(Algorithm a);
Algorithm parse_algorithm(const std::string& s);

BuildResult build(const SimpleGraph& g, Algorithm algo, const AlgoParams& params);

struct BenchResult {
  BuildResult build;
  nlohmann::json report;  // manifest plus wall clock and branch summary
};

BenchResult bench(const SimpleGraph& g, Algorithm algo, const AlgoParams& params);

}  // namespace cuttree
