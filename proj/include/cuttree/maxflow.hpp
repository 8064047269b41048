#pragma once

#include <Eigen/Core>

#include <span>
#include <vector>

#include "cuttree/graph.hpp"

namespace cuttree {

/// Counts flow computations and the size of the networks they ran on.
struct FlowStats {
  std::int64_t calls = 0;
  std::int64_t volume = 0;  // sum over calls of distinct edges in the solved network

  void record(std::int64_t edges) {
    ++calls;
    volume += edges;
  }
  FlowStats& operator+=(const FlowStats& o) {
    calls += o.calls;
    volume += o.volume;
    return *this;
  }
};

/// One side of a bipartition of a FlowNetwork together with its value.
struct Cut {
  std::vector<int> side;  // super-vertex ids, sorted
  Capacity value = 0;
  VertexSet original_side;  // union of the members of `side`, sorted
};

/// Dinic blocking-flow solver over a private residual copy of a network.
/// After run(), the residual graph stays available for cut extraction.
class MaxFlowSolver {
 public:
  explicit MaxFlowSolver(const FlowNetwork& net);

  /// Appends a super-source and super-sink joined to `sources` and `sinks`
  /// with capacity total_capacity + 1. Returns {source, sink} ids.
  std::pair<int, int> add_terminals(std::span<const int> sources, std::span<const int> sinks);

  Capacity run(int s, int t);

  /// Vertices reachable from the last source in the residual graph, sorted;
  /// restricted to ids of the underlying network.
  std::vector<int> source_side() const;

  int num_nodes() const { return static_cast<int>(head_.size()); }
  std::int64_t num_edges() const { return static_cast<std::int64_t>(to_.size() / 2); }

 private:
  void add_edge(int u, int v, Capacity cap_uv, Capacity cap_vu);
  bool bfs(int s, int t);
  Capacity dfs(int v, int t, Capacity limit);

  int base_nodes_;
  Capacity infinity_;
  std::vector<std::vector<int>> head_;  // arc ids per node
  std::vector<int> to_;
  std::vector<Capacity> residual_;
  std::vector<int> level_;
  std::vector<std::size_t> iter_;
  int last_source_ = -1;
};

/// Value of a maximum s-t flow. Throws std::invalid_argument if s == t.
Capacity max_flow(const FlowNetwork& net, int s, int t, FlowStats* stats = nullptr);

/// The minimum s-t cut whose s-side has minimum cardinality.
Cut latest_min_cut(const FlowNetwork& net, int s, int t, FlowStats* stats = nullptr);

/// All-pairs minimum cut values of g by one max-flow per unordered pair.
Eigen::MatrixXi min_cut_value_matrix(const SimpleGraph& g, FlowStats* stats = nullptr);

/// The uncontracted network of g (one super-vertex per vertex, capacities 1).
FlowNetwork identity_network(const SimpleGraph& g);

}  // namespace cuttree
