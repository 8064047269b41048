#pragma once

#include <cstdint>
#include <istream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cuttree {

using Vertex = int;
using Capacity = std::int64_t;
using VertexSet = std::vector<Vertex>;  // sorted, duplicate free

/// Raised for malformed edge-list documents; carries the 1-based line number
/// (0 when the error is not tied to a line).
class GraphFormatError : public std::runtime_error {
 public:
  GraphFormatError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Raised when a graph that must be connected is not.
class DisconnectedGraphError : public std::runtime_error {
 public:
  explicit DisconnectedGraphError(int components);
  int components() const { return components_; }

 private:
  int components_;
};

/// Raw parse of an edge-list document, 0-based ids, validated for format,
/// self-loops and duplicates but not for connectivity.
struct EdgeList {
  int n = 0;
  std::vector<std::pair<Vertex, Vertex>> edges;
};

/// Immutable connected simple graph with sorted adjacency lists.
class SimpleGraph {
 public:
  /// Validates simplicity and connectivity; throws GraphFormatError or
  /// DisconnectedGraphError.
  SimpleGraph(int n, std::vector<std::pair<Vertex, Vertex>> edges);
  explicit SimpleGraph(EdgeList list) : SimpleGraph(list.n, std::move(list.edges)) {}

  int num_vertices() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }
  int max_degree() const;
  std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
  /// Edges as (u, v) with u < v, lexicographically sorted.
  std::span<const std::pair<Vertex, Vertex>> edges() const { return edges_; }
  bool has_edge(Vertex u, Vertex v) const;
  bool contains(Vertex v) const { return v >= 0 && v < n_; }

 private:
  int n_;
  std::vector<std::pair<Vertex, Vertex>> edges_;
  std::vector<std::vector<Vertex>> adj_;
};

EdgeList parse_edge_list(std::istream& in);
EdgeList parse_edge_list(const std::string& text);

/// Parse and validate; the result is connected and simple.
SimpleGraph load_graph(const std::string& text);
SimpleGraph read_graph_file(const std::string& path);

/// Writes the `p`/`e` edge-list format (1-based ids).
void write_graph(std::ostream& out, const SimpleGraph& g);

/// Connected components of a raw edge list, as sorted vertex sets ordered by
/// smallest member.
std::vector<VertexSet> connected_components(const EdgeList& list);

/// Restricts to the largest component (ties: the one holding the smallest id)
/// and relabels densely, preserving relative order.
EdgeList largest_component(const EdgeList& list);

/// Sum of degrees over `s`. Throws std::out_of_range on unknown ids.
std::int64_t volume(const SimpleGraph& g, std::span<const Vertex> s);

/// Number of edges with exactly one endpoint in `s`.
std::int64_t boundary(const SimpleGraph& g, std::span<const Vertex> s);

/// Number of edges with both endpoints in `s`.
std::int64_t internal_edges(const SimpleGraph& g, std::span<const Vertex> s);

/// Membership mask of `s` over the vertices of `g`.
std::vector<char> membership(const SimpleGraph& g, std::span<const Vertex> s);

// -- flow networks ---------------------------------------------------------

/// Undirected capacitated multigraph whose vertices are disjoint sets of
/// original vertices. Parallel edges are collapsed into integer capacities and
/// edges inside a super-vertex are dropped.
class FlowNetwork {
 public:
  struct Arc {
    int to;
    Capacity cap;
  };

  FlowNetwork() = default;

  /// Builds the quotient of `g` where original vertex v maps to super-vertex
  /// label[v] (or is dropped when label[v] < 0). Super-vertex members are
  /// listed in increasing order.
  static FlowNetwork from_labels(const SimpleGraph& g, std::span<const int> label,
                                 int num_labels);

  /// Quotient of this network: super-vertex x maps to label[x].
  FlowNetwork quotient(std::span<const int> label, int num_labels) const;

  int num_vertices() const { return static_cast<int>(members_.size()); }
  /// Number of distinct adjacent super-vertex pairs.
  std::int64_t num_edges() const { return num_edges_; }
  /// Sum of capacities over all distinct pairs.
  Capacity total_capacity() const { return total_capacity_; }

  std::span<const Arc> arcs(int x) const { return adj_[x]; }
  std::span<const Vertex> members(int x) const { return members_[x]; }
  Capacity capacity(int x, int y) const;
  /// Sum of capacities incident to x.
  Capacity weighted_degree(int x) const;
  /// Cut value of the bipartition (side, rest); `side` lists super-vertices.
  Capacity cut_value(std::span<const int> side) const;
  /// Union of the members of `side`, sorted.
  VertexSet expand(std::span<const int> side) const;

 private:
  std::vector<std::vector<Vertex>> members_;
  std::vector<std::vector<Arc>> adj_;  // sorted by target
  std::int64_t num_edges_ = 0;
  Capacity total_capacity_ = 0;
};

/// One super-vertex per kept vertex (in the order given) followed by one per
/// group. keep and groups must partition V.
FlowNetwork contract(const SimpleGraph& g, std::span<const Vertex> keep,
                     const std::vector<VertexSet>& groups);

/// Induced subgraph G[S] where every boundary edge at v adds ceil(x) units of
/// self-loop volume to v. Local ids index `vertices`.
struct AugmentedSubgraph {
  VertexSet vertices;                         // original ids, sorted
  std::vector<std::vector<int>> adj;          // local ids
  std::vector<std::int64_t> loop_weight;      // per local vertex
  std::int64_t loops_per_boundary_edge = 0;   // ceil(x)

  int size() const { return static_cast<int>(vertices.size()); }
  int inner_degree(int i) const { return static_cast<int>(adj[i].size()); }
  std::int64_t volume(int i) const { return inner_degree(i) + loop_weight[i]; }
};

AugmentedSubgraph augment(const SimpleGraph& g, std::span<const Vertex> s, double x);

/// The whole graph as an augmented subgraph with no loops.
AugmentedSubgraph as_augmented(const SimpleGraph& g);

}  // namespace cuttree
