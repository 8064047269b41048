#pragma once

#include <Eigen/Core>

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "cuttree/graph.hpp"
#include "cuttree/maxflow.hpp"

namespace cuttree {

using NodeId = int;

struct TreeEdge {
  NodeId a;
  NodeId b;
  Capacity weight;
};

struct NodeMeta {
  std::optional<Vertex> pivot;
  std::optional<std::int64_t> parent_volume;  // vol_G of the node this one was refined from
};

/// A tree whose nodes are disjoint vertex sets covering V. Node ids are dense
/// and stable: splitting a node keeps its id for one part and appends a new
/// id for the other.
class PartitionTree {
 public:
  /// Single node holding all n vertices.
  explicit PartitionTree(int n);

  /// Validates that `nodes` partition 0..n-1 and `edges` form a tree.
  static PartitionTree from_parts(int n, std::vector<VertexSet> nodes, std::vector<TreeEdge> edges);

  int num_vertices() const { return static_cast<int>(node_of_.size()); }
  int num_nodes() const { return static_cast<int>(sets_.size()); }
  const VertexSet& node_set(NodeId x) const { return sets_.at(x); }
  NodeId node_of(Vertex v) const { return node_of_.at(v); }
  std::span<const TreeEdge> edges() const { return edges_; }
  /// (neighbor, edge index) pairs of x.
  std::span<const std::pair<NodeId, int>> incident(NodeId x) const { return adj_.at(x); }

  const NodeMeta& meta(NodeId x) const { return meta_.at(x); }
  NodeMeta& meta(NodeId x) { return meta_.at(x); }

  bool all_singletons() const { return num_nodes() == num_vertices(); }

  /// Moves `moved` (a proper nonempty subset of x) into a new node joined to x
  /// by an edge of `weight`; neighbors listed in `moved_neighbors` are
  /// reattached to the new node. Returns the new node id.
  NodeId split(NodeId x, std::span<const Vertex> moved, std::span<const NodeId> moved_neighbors,
               Capacity weight);

  /// Throws std::logic_error when the partition or tree structure is broken.
  void validate() const;

 private:
  std::vector<VertexSet> sets_;
  std::vector<NodeId> node_of_;
  std::vector<TreeEdge> edges_;
  std::vector<std::vector<std::pair<NodeId, int>>> adj_;
  std::vector<NodeMeta> meta_;
};

/// G_T[U]: the vertices of U kept, every component of T minus U contracted.
struct AuxiliaryGraph {
  NodeId node = -1;
  FlowNetwork net;
  VertexSet kept;                     // == node_set(node); super-vertex i is kept[i]
  std::vector<NodeId> group_neighbor; // super-vertex kept.size() + j contracts the
                                      // component hanging off neighbor group_neighbor[j]

  int super_of(Vertex v) const;       // -1 if v is not kept
  bool is_kept(int x) const { return x < static_cast<int>(kept.size()); }
};

AuxiliaryGraph auxiliary_graph(const SimpleGraph& g, const PartitionTree& tree, NodeId node);

/// Applies the split described by an aux-graph cut side (which must contain
/// at least one and miss at least one kept vertex). Returns the new node id,
/// which holds the kept vertices of `side`.
NodeId split_along(PartitionTree& tree, const AuxiliaryGraph& aux, std::span<const int> side,
                   Capacity weight);

struct GhStepResult {
  NodeId new_node;  // holds s
  Capacity weight;
};

/// One Gomory-Hu step on `node` with the latest minimum (s, t)-cut of G_T[node].
GhStepResult gh_step(const SimpleGraph& g, PartitionTree& tree, NodeId node, Vertex s, Vertex t,
                     FlowStats* stats = nullptr);

/// Gomory-Hu steps on the lowest-index pair of R-vertices sharing a node until
/// no node holds two of them. Each resulting node holding an R-vertex records
/// it as pivot. R must be a subset of `node`.
void refine(const SimpleGraph& g, PartitionTree& tree, NodeId node, std::span<const Vertex> r,
            FlowStats* stats = nullptr);

/// Full construction with n - 1 max-flows.
PartitionTree classic_gomory_hu(const SimpleGraph& g, FlowStats* stats = nullptr);

/// Makes every vertex of `node` with degree <= k a singleton node.
void k_partial_tree(const SimpleGraph& g, PartitionTree& tree, NodeId node, int k,
                    FlowStats* stats = nullptr);

struct TreeCutQuery {
  Capacity value;
  TreeEdge edge;
};

/// Minimum-weight edge on the tree path between the nodes of a and b; ties go
/// to the edge closest to a. Throws std::invalid_argument if a and b share a node.
TreeCutQuery tree_min_cut_query(const PartitionTree& tree, Vertex a, Vertex b);

/// Path minima between all vertex pairs in distinct nodes (0 on the diagonal
/// and for pairs sharing a node).
Eigen::MatrixXi all_pairs_tree_values(const PartitionTree& tree);

/// Vertices on the `from` side after removing `edge`.
VertexSet tree_side(const PartitionTree& tree, const TreeEdge& edge, NodeId from);

void write_tree(std::ostream& out, const PartitionTree& tree);
PartitionTree read_tree(std::istream& in);

}  // namespace cuttree
