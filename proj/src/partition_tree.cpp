#include "cuttree/partition_tree.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace cuttree {

PartitionTree::PartitionTree(int n) : node_of_(n, 0), adj_(1), meta_(1) {
  if (n <= 0) throw std::invalid_argument("partition tree needs at least one vertex");
  VertexSet all(n);
  std::iota(all.begin(), all.end(), 0);
  sets_.push_back(std::move(all));
}

PartitionTree PartitionTree::from_parts(int n, std::vector<VertexSet> nodes,
                                        std::vector<TreeEdge> edges) {
  PartitionTree t(n);
  t.sets_ = std::move(nodes);
  for (auto& s : t.sets_) std::sort(s.begin(), s.end());
  t.edges_ = std::move(edges);
  t.adj_.assign(t.sets_.size(), {});
  t.meta_.assign(t.sets_.size(), {});
  std::fill(t.node_of_.begin(), t.node_of_.end(), -1);
  for (NodeId x = 0; x < t.num_nodes(); ++x) {
    for (Vertex v : t.sets_[x]) {
      if (v < 0 || v >= n) throw std::invalid_argument("tree node holds unknown vertex");
      if (t.node_of_[v] >= 0) throw std::invalid_argument("vertex in two tree nodes");
      t.node_of_[v] = x;
    }
  }
  for (int e = 0; e < static_cast<int>(t.edges_.size()); ++e) {
    const auto& te = t.edges_[e];
    if (te.a < 0 || te.b < 0 || te.a >= t.num_nodes() || te.b >= t.num_nodes() || te.a == te.b)
      throw std::invalid_argument("tree edge with invalid endpoints");
    t.adj_[te.a].emplace_back(te.b, e);
    t.adj_[te.b].emplace_back(te.a, e);
  }
  try {
    t.validate();
  } catch (const std::logic_error& err) {
    throw std::invalid_argument(err.what());
  }
  return t;
}

NodeId PartitionTree::split(NodeId x, std::span<const Vertex> moved,
                            std::span<const NodeId> moved_neighbors, Capacity weight) {
  VertexSet& src = sets_.at(x);
  VertexSet mv(moved.begin(), moved.end());
  std::sort(mv.begin(), mv.end());
  mv.erase(std::unique(mv.begin(), mv.end()), mv.end());
  if (mv.empty() || mv.size() >= src.size())
    throw std::invalid_argument("split must move a proper nonempty subset");
  for (Vertex v : mv)
    if (node_of_.at(v) != x) throw std::invalid_argument("split moves a vertex outside the node");

  const NodeId y = num_nodes();
  VertexSet rest;
  std::set_difference(src.begin(), src.end(), mv.begin(), mv.end(), std::back_inserter(rest));
  src = std::move(rest);
  for (Vertex v : mv) node_of_[v] = y;
  adj_.emplace_back();
  meta_.emplace_back();
  if (auto p = meta_[x].pivot; p && std::binary_search(mv.begin(), mv.end(), *p)) {
    meta_[y].pivot = p;
    meta_[x].pivot.reset();
  }
  sets_.push_back(std::move(mv));

  for (NodeId w : moved_neighbors) {
    auto& ax = adj_[x];
    auto it = std::find_if(ax.begin(), ax.end(), [&](const auto& p) { return p.first == w; });
    if (it == ax.end()) throw std::invalid_argument("split reattaches a non-neighbor");
    int e = it->second;
    ax.erase(it);
    TreeEdge& te = edges_[e];
    (te.a == x ? te.a : te.b) = y;
    adj_[y].emplace_back(w, e);
    for (auto& p : adj_[w])
      if (p.second == e) p.first = y;
  }
  const int e = static_cast<int>(edges_.size());
  edges_.push_back({x, y, weight});
  adj_[x].emplace_back(y, e);
  adj_[y].emplace_back(x, e);
  return y;
}

void PartitionTree::validate() const {
  std::vector<int> count(num_vertices(), 0);
  for (NodeId x = 0; x < num_nodes(); ++x) {
    if (sets_[x].empty()) throw std::logic_error("empty tree node");
    for (Vertex v : sets_[x]) {
      if (node_of_[v] != x) throw std::logic_error("node_of out of sync");
      ++count[v];
    }
  }
  for (int c : count)
    if (c != 1) throw std::logic_error("tree nodes do not partition V");
  if (static_cast<int>(edges_.size()) != num_nodes() - 1)
    throw std::logic_error("tree has wrong edge count");
  std::vector<char> seen(num_nodes(), 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    NodeId x = stack.back();
    stack.pop_back();
    for (auto [w, e] : adj_[x]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  if (reached != num_nodes()) throw std::logic_error("tree is disconnected");
}

// -- auxiliary graphs --------------------------------------------------------

int AuxiliaryGraph::super_of(Vertex v) const {
  auto it = std::lower_bound(kept.begin(), kept.end(), v);
  return (it != kept.end() && *it == v) ? static_cast<int>(it - kept.begin()) : -1;
}

AuxiliaryGraph auxiliary_graph(const SimpleGraph& g, const PartitionTree& tree, NodeId node) {
  AuxiliaryGraph aux;
  aux.node = node;
  aux.kept = tree.node_set(node);
  std::vector<int> label(g.num_vertices(), -1);
  int next = 0;
  for (Vertex v : aux.kept) label[v] = next++;

  std::vector<std::pair<NodeId, int>> nbrs(tree.incident(node).begin(), tree.incident(node).end());
  std::sort(nbrs.begin(), nbrs.end());
  std::vector<NodeId> stack;
  std::vector<char> seen(tree.num_nodes(), 0);
  seen[node] = 1;
  for (auto [w, e] : nbrs) {
    aux.group_neighbor.push_back(w);
    const int group = next++;
    stack.push_back(w);
    seen[w] = 1;
    while (!stack.empty()) {
      NodeId x = stack.back();
      stack.pop_back();
      for (Vertex v : tree.node_set(x)) label[v] = group;
      for (auto [y, ey] : tree.incident(x)) {
        if (!seen[y]) {
          seen[y] = 1;
          stack.push_back(y);
        }
      }
    }
  }
  aux.net = FlowNetwork::from_labels(g, label, next);
  return aux;
}

NodeId split_along(PartitionTree& tree, const AuxiliaryGraph& aux, std::span<const int> side,
                   Capacity weight) {
  VertexSet moved;
  std::vector<NodeId> moved_nbrs;
  for (int x : side) {
    if (aux.is_kept(x))
      moved.push_back(aux.kept[x]);
    else
      moved_nbrs.push_back(aux.group_neighbor[x - aux.kept.size()]);
  }
  return tree.split(aux.node, moved, moved_nbrs, weight);
}

GhStepResult gh_step(const SimpleGraph& g, PartitionTree& tree, NodeId node, Vertex s, Vertex t,
                     FlowStats* stats) {
  if (s == t) throw std::invalid_argument("gh_step: s equals t");
  if (!g.contains(s) || !g.contains(t) || tree.node_of(s) != node || tree.node_of(t) != node)
    throw std::invalid_argument("gh_step: s and t must lie in the node");
  AuxiliaryGraph aux = auxiliary_graph(g, tree, node);
  Cut cut = latest_min_cut(aux.net, aux.super_of(s), aux.super_of(t), stats);
  NodeId created = split_along(tree, aux, cut.side, cut.value);
  return {created, cut.value};
}

void refine(const SimpleGraph& g, PartitionTree& tree, NodeId node, std::span<const Vertex> r,
            FlowStats* stats) {
  VertexSet rs(r.begin(), r.end());
  std::sort(rs.begin(), rs.end());
  rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
  for (Vertex v : rs)
    if (!g.contains(v) || tree.node_of(v) != node)
      throw std::invalid_argument("refine: R is not a subset of the node");

  std::map<NodeId, std::vector<Vertex>> by_node;
  while (true) {
    by_node.clear();
    for (Vertex v : rs) by_node[tree.node_of(v)].push_back(v);
    // lowest-index pair: smallest first element, then its smallest partner
    Vertex s = -1, t = -1;
    for (Vertex v : rs) {
      const auto& members = by_node[tree.node_of(v)];
      if (members.size() >= 2) {
        s = members[0];
        t = members[1];
        break;
      }
    }
    if (s < 0) break;
    gh_step(g, tree, tree.node_of(s), s, t, stats);
  }
  for (Vertex v : rs) tree.meta(tree.node_of(v)).pivot = v;
}

PartitionTree classic_gomory_hu(const SimpleGraph& g, FlowStats* stats) {
  PartitionTree tree(g.num_vertices());
  VertexSet all(g.num_vertices());
  std::iota(all.begin(), all.end(), 0);
  refine(g, tree, 0, all, stats);
  return tree;
}

void k_partial_tree(const SimpleGraph& g, PartitionTree& tree, NodeId node, int k,
                    FlowStats* stats) {
  const VertexSet members = tree.node_set(node);
  VertexSet r;
  Vertex anchor = -1;
  for (Vertex v : members) {
    if (g.degree(v) <= k)
      r.push_back(v);
    else if (anchor < 0)
      anchor = v;
  }
  if (r.empty()) return;
  if (anchor >= 0) {
    r.push_back(anchor);
    std::sort(r.begin(), r.end());
  }
  refine(g, tree, node, r, stats);
  // Refinement leaves at most one R-vertex per node; low-degree vertices that
  // still share a node with high-degree ones are peeled off by further steps.
  for (Vertex v : r) {
    if (g.degree(v) > k) continue;
    while (tree.node_set(tree.node_of(v)).size() > 1) {
      NodeId x = tree.node_of(v);
      const VertexSet& set = tree.node_set(x);
      Vertex other = set[0] == v ? set[1] : set[0];
      gh_step(g, tree, x, v, other, stats);
    }
  }
}

// -- queries ---------------------------------------------------------------

namespace {

// Parent edge index of every node in a traversal rooted at `root`.
std::vector<int> parent_edges(const PartitionTree& tree, NodeId root, std::vector<NodeId>* parent) {
  std::vector<int> pedge(tree.num_nodes(), -1);
  parent->assign(tree.num_nodes(), -1);
  std::vector<NodeId> stack{root};
  std::vector<char> seen(tree.num_nodes(), 0);
  seen[root] = 1;
  while (!stack.empty()) {
    NodeId x = stack.back();
    stack.pop_back();
    for (auto [y, e] : tree.incident(x)) {
      if (!seen[y]) {
        seen[y] = 1;
        (*parent)[y] = x;
        pedge[y] = e;
        stack.push_back(y);
      }
    }
  }
  return pedge;
}

}  // namespace

TreeCutQuery tree_min_cut_query(const PartitionTree& tree, Vertex a, Vertex b) {
  NodeId na = tree.node_of(a), nb = tree.node_of(b);
  if (na == nb) throw std::invalid_argument("tree query: vertices share a node");
  // Rooting at b makes the parent walk from a run along the path a -> b.
  std::vector<NodeId> parent;
  auto pedge = parent_edges(tree, nb, &parent);
  int best = -1;
  for (NodeId x = na; x != nb; x = parent[x]) {
    int e = pedge[x];
    if (best < 0 || tree.edges()[e].weight < tree.edges()[best].weight) best = e;
  }
  const TreeEdge& te = tree.edges()[best];
  return {te.weight, te};
}

Eigen::MatrixXi all_pairs_tree_values(const PartitionTree& tree) {
  const int k = tree.num_nodes();
  Eigen::MatrixXi node_min = Eigen::MatrixXi::Zero(k, k);
  for (NodeId root = 0; root < k; ++root) {
    std::vector<Capacity> best(k, -1);
    best[root] = 0;
    std::vector<NodeId> stack{root};
    while (!stack.empty()) {
      NodeId x = stack.back();
      stack.pop_back();
      for (auto [y, e] : tree.incident(x)) {
        if (best[y] >= 0 || y == root) continue;
        Capacity w = tree.edges()[e].weight;
        best[y] = (x == root) ? w : std::min(best[x], w);
        stack.push_back(y);
      }
    }
    for (NodeId y = 0; y < k; ++y) node_min(root, y) = static_cast<int>(y == root ? 0 : best[y]);
  }
  const int n = tree.num_vertices();
  Eigen::MatrixXi out(n, n);
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = 0; b < n; ++b) out(a, b) = node_min(tree.node_of(a), tree.node_of(b));
  return out;
}

VertexSet tree_side(const PartitionTree& tree, const TreeEdge& edge, NodeId from) {
  NodeId other = from == edge.a ? edge.b : edge.a;
  if (from != edge.a && from != edge.b) throw std::invalid_argument("tree_side: node not on edge");
  VertexSet out;
  std::vector<char> seen(tree.num_nodes(), 0);
  seen[from] = seen[other] = 1;
  std::vector<NodeId> stack{from};
  while (!stack.empty()) {
    NodeId x = stack.back();
    stack.pop_back();
    out.insert(out.end(), tree.node_set(x).begin(), tree.node_set(x).end());
    for (auto [y, e] : tree.incident(x)) {
      if (!seen[y]) {
        seen[y] = 1;
        stack.push_back(y);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// -- serialization -----------------------------------------------------------

void write_tree(std::ostream& out, const PartitionTree& tree) {
  for (NodeId x = 0; x < tree.num_nodes(); ++x) {
    out << "n " << x;
    for (Vertex v : tree.node_set(x)) out << ' ' << v + 1;
    out << '\n';
  }
  std::vector<TreeEdge> edges(tree.edges().begin(), tree.edges().end());
  for (auto& e : edges)
    if (e.a > e.b) std::swap(e.a, e.b);
  std::sort(edges.begin(), edges.end(),
            [](const TreeEdge& l, const TreeEdge& r) { return std::tie(l.a, l.b) < std::tie(r.a, r.b); });
  for (const auto& e : edges) out << "t " << e.a << ' ' << e.b << ' ' << e.weight << '\n';
}

PartitionTree read_tree(std::istream& in) {
  std::map<NodeId, VertexSet> nodes;
  std::vector<TreeEdge> edges;
  std::string raw;
  std::size_t lineno = 0;
  int n = 0;
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("tree line " + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, raw)) {
    ++lineno;
    std::istringstream ls(raw);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    if (tag == "n") {
      NodeId id;
      if (!(ls >> id) || id < 0) fail("expected 'n <node-id> <vertices...>'");
      if (nodes.count(id)) fail("duplicate node id");
      VertexSet vs;
      long long v;
      while (ls >> v) {
        if (v < 1) fail("vertex ids are 1-based");
        vs.push_back(static_cast<Vertex>(v - 1));
      }
      if (!ls.eof()) fail("malformed vertex id");
      if (vs.empty()) fail("empty node");
      n += static_cast<int>(vs.size());
      nodes.emplace(id, std::move(vs));
    } else if (tag == "t") {
      TreeEdge e{};
      if (!(ls >> e.a >> e.b >> e.weight)) fail("expected 't <idA> <idB> <weight>'");
      edges.push_back(e);
    } else {
      fail("unknown line tag '" + tag + "'");
    }
  }
  if (nodes.empty()) throw std::invalid_argument("tree file has no nodes");
  std::vector<VertexSet> sets;
  for (auto& [id, vs] : nodes) {
    if (id != static_cast<NodeId>(sets.size())) throw std::invalid_argument("tree node ids must be 0..k-1");
    sets.push_back(std::move(vs));
  }
  return PartitionTree::from_parts(n, std::move(sets), std::move(edges));
}

}  // namespace cuttree
