#include "cuttree/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <tuple>

namespace cuttree {

namespace {

std::string line_prefix(std::size_t line) {
  return line == 0 ? std::string("edge list: ") : "edge list line " + std::to_string(line) + ": ";
}

void check_vertex(const SimpleGraph& g, Vertex v) {
  if (!g.contains(v)) throw std::out_of_range("unknown vertex id " + std::to_string(v));
}

std::vector<std::vector<Vertex>> build_adjacency(int n,
                                                 std::span<const std::pair<Vertex, Vertex>> edges) {
  std::vector<std::vector<Vertex>> adj(n);
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

std::vector<int> component_labels(int n, const std::vector<std::vector<Vertex>>& adj,
                                  int* count) {
  std::vector<int> comp(n, -1);
  int c = 0;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = c;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : adj[v]) {
        if (comp[w] < 0) {
          comp[w] = c;
          stack.push_back(w);
        }
      }
    }
    ++c;
  }
  *count = c;
  return comp;
}

}  // namespace

GraphFormatError::GraphFormatError(std::size_t line, const std::string& what)
    : std::runtime_error(line_prefix(line) + what), line_(line) {}

DisconnectedGraphError::DisconnectedGraphError(int components)
    : std::runtime_error("graph is disconnected (" + std::to_string(components) +
                         " components)"),
      components_(components) {}

SimpleGraph::SimpleGraph(int n, std::vector<std::pair<Vertex, Vertex>> edges) : n_(n) {
  if (n <= 0) throw GraphFormatError(0, "graph must have at least one vertex");
  for (auto& [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw GraphFormatError(0, "edge endpoint out of range");
    if (u == v) throw GraphFormatError(0, "self-loop at vertex " + std::to_string(u + 1));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  auto dup = std::adjacent_find(edges.begin(), edges.end());
  if (dup != edges.end())
    throw GraphFormatError(0, "duplicate edge " + std::to_string(dup->first + 1) + "-" +
                                  std::to_string(dup->second + 1));
  edges_ = std::move(edges);
  adj_ = build_adjacency(n_, edges_);
  int comps = 0;
  component_labels(n_, adj_, &comps);
  if (comps != 1) throw DisconnectedGraphError(comps);
}

int SimpleGraph::max_degree() const {
  int best = 0;
  for (const auto& a : adj_) best = std::max(best, static_cast<int>(a.size()));
  return best;
}

bool SimpleGraph::has_edge(Vertex u, Vertex v) const {
  if (!contains(u) || !contains(v)) return false;
  return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

EdgeList parse_edge_list(std::istream& in) {
  EdgeList out;
  bool have_header = false;
  long long declared_m = 0;
  std::string raw;
  std::size_t lineno = 0;
  std::vector<std::size_t> seen_line;
  while (std::getline(in, raw)) {
    ++lineno;
    std::istringstream ls(raw);
    std::string tag;
    if (!(ls >> tag)) continue;  // blank
    if (tag == "c") continue;
    if (tag == "p") {
      if (have_header) throw GraphFormatError(lineno, "duplicate 'p' line");
      long long n = 0;
      if (!(ls >> n >> declared_m) || n <= 0 || declared_m < 0)
        throw GraphFormatError(lineno, "expected 'p <n> <m>' with n >= 1, m >= 0");
      if (n > (1LL << 30)) throw GraphFormatError(lineno, "vertex count too large");
      out.n = static_cast<int>(n);
      have_header = true;
    } else if (tag == "e") {
      if (!have_header) throw GraphFormatError(lineno, "'e' line before 'p' line");
      long long u = 0, v = 0;
      if (!(ls >> u >> v)) throw GraphFormatError(lineno, "expected 'e <u> <v>'");
      if (u < 1 || v < 1 || u > out.n || v > out.n)
        throw GraphFormatError(lineno, "vertex id out of range 1.." + std::to_string(out.n));
      if (u == v) throw GraphFormatError(lineno, "self-loop at vertex " + std::to_string(u));
      if (u > v) std::swap(u, v);
      out.edges.emplace_back(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1));
      seen_line.push_back(lineno);
    } else {
      throw GraphFormatError(lineno, "unknown line tag '" + tag + "'");
    }
    std::string extra;
    if (ls >> extra) throw GraphFormatError(lineno, "trailing token '" + extra + "'");
  }
  if (!have_header) throw GraphFormatError(0, "missing 'p <n> <m>' line");
  if (static_cast<long long>(out.edges.size()) != declared_m)
    throw GraphFormatError(0, "header declares " + std::to_string(declared_m) + " edges, found " +
                                  std::to_string(out.edges.size()));

  std::vector<std::size_t> order(out.edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return out.edges[a] < out.edges[b]; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (out.edges[order[i]] == out.edges[order[i - 1]]) {
      auto [u, v] = out.edges[order[i]];
      throw GraphFormatError(seen_line[order[i]], "duplicate edge " + std::to_string(u + 1) +
                                                      "-" + std::to_string(v + 1));
    }
  }
  return out;
}

EdgeList parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in);
}

SimpleGraph load_graph(const std::string& text) { return SimpleGraph(parse_edge_list(text)); }

SimpleGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file '" + path + "'");
  return SimpleGraph(parse_edge_list(in));
}

void write_graph(std::ostream& out, const SimpleGraph& g) {
  out << "p " << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (auto [u, v] : g.edges()) out << "e " << u + 1 << ' ' << v + 1 << '\n';
}

std::vector<VertexSet> connected_components(const EdgeList& list) {
  auto adj = build_adjacency(list.n, list.edges);
  int count = 0;
  auto comp = component_labels(list.n, adj, &count);
  std::vector<VertexSet> out(count);
  for (Vertex v = 0; v < list.n; ++v) out[comp[v]].push_back(v);
  return out;
}

EdgeList largest_component(const EdgeList& list) {
  auto comps = connected_components(list);
  std::size_t best = 0;
  for (std::size_t i = 1; i < comps.size(); ++i)
    if (comps[i].size() > comps[best].size()) best = i;
  std::vector<int> relabel(list.n, -1);
  for (std::size_t i = 0; i < comps[best].size(); ++i) relabel[comps[best][i]] = static_cast<int>(i);
  EdgeList out;
  out.n = static_cast<int>(comps[best].size());
  for (auto [u, v] : list.edges)
    if (relabel[u] >= 0) out.edges.emplace_back(relabel[u], relabel[v]);
  return out;
}

std::vector<char> membership(const SimpleGraph& g, std::span<const Vertex> s) {
  std::vector<char> in(g.num_vertices(), 0);
  for (Vertex v : s) {
    check_vertex(g, v);
    in[v] = 1;
  }
  return in;
}

std::int64_t volume(const SimpleGraph& g, std::span<const Vertex> s) {
  std::int64_t vol = 0;
  for (Vertex v : s) {
    check_vertex(g, v);
    vol += g.degree(v);
  }
  return vol;
}

std::int64_t boundary(const SimpleGraph& g, std::span<const Vertex> s) {
  auto in = membership(g, s);
  std::int64_t out = 0;
  for (auto [u, v] : g.edges()) out += in[u] != in[v];
  return out;
}

std::int64_t internal_edges(const SimpleGraph& g, std::span<const Vertex> s) {
  auto in = membership(g, s);
  std::int64_t out = 0;
  for (auto [u, v] : g.edges()) out += in[u] && in[v];
  return out;
}

// -- FlowNetwork -----------------------------------------------------------

namespace {

// Aggregates (x, y, cap) triples with x != y into sorted symmetric adjacency.
void assemble(std::vector<std::tuple<int, int, Capacity>>& pairs, int count,
              std::vector<std::vector<FlowNetwork::Arc>>& adj, std::int64_t& num_edges,
              Capacity& total) {
  for (auto& [x, y, c] : pairs)
    if (x > y) std::swap(x, y);
  std::sort(pairs.begin(), pairs.end());
  adj.assign(count, {});
  num_edges = 0;
  total = 0;
  for (std::size_t i = 0; i < pairs.size();) {
    auto [x, y, c] = pairs[i];
    Capacity sum = 0;
    std::size_t j = i;
    while (j < pairs.size() && std::get<0>(pairs[j]) == x && std::get<1>(pairs[j]) == y) {
      sum += std::get<2>(pairs[j]);
      ++j;
    }
    adj[x].push_back({y, sum});
    adj[y].push_back({x, sum});
    ++num_edges;
    total += sum;
    i = j;
  }
  for (auto& a : adj)
    std::sort(a.begin(), a.end(), [](const auto& l, const auto& r) { return l.to < r.to; });
}

}  // namespace

FlowNetwork FlowNetwork::from_labels(const SimpleGraph& g, std::span<const int> label,
                                     int num_labels) {
  if (static_cast<int>(label.size()) != g.num_vertices())
    throw std::invalid_argument("label size does not match vertex count");
  FlowNetwork net;
  net.members_.assign(num_labels, {});
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (label[v] >= num_labels) throw std::invalid_argument("label out of range");
    if (label[v] >= 0) net.members_[label[v]].push_back(v);
  }
  for (const auto& m : net.members_)
    if (m.empty()) throw std::invalid_argument("empty super-vertex");
  std::vector<std::tuple<int, int, Capacity>> pairs;
  for (auto [u, v] : g.edges()) {
    int a = label[u], b = label[v];
    if (a < 0 || b < 0 || a == b) continue;
    pairs.emplace_back(a, b, 1);
  }
  assemble(pairs, num_labels, net.adj_, net.num_edges_, net.total_capacity_);
  return net;
}

FlowNetwork FlowNetwork::quotient(std::span<const int> label, int num_labels) const {
  if (static_cast<int>(label.size()) != num_vertices())
    throw std::invalid_argument("label size does not match super-vertex count");
  FlowNetwork net;
  net.members_.assign(num_labels, {});
  for (int x = 0; x < num_vertices(); ++x) {
    if (label[x] >= num_labels) throw std::invalid_argument("label out of range");
    if (label[x] < 0) continue;
    auto& m = net.members_[label[x]];
    m.insert(m.end(), members_[x].begin(), members_[x].end());
  }
  for (auto& m : net.members_) {
    if (m.empty()) throw std::invalid_argument("empty super-vertex");
    std::sort(m.begin(), m.end());
  }
  std::vector<std::tuple<int, int, Capacity>> pairs;
  for (int x = 0; x < num_vertices(); ++x) {
    for (const Arc& a : adj_[x]) {
      if (a.to < x) continue;
      int lx = label[x], ly = label[a.to];
      if (lx < 0 || ly < 0 || lx == ly) continue;
      pairs.emplace_back(lx, ly, a.cap);
    }
  }
  assemble(pairs, num_labels, net.adj_, net.num_edges_, net.total_capacity_);
  return net;
}

Capacity FlowNetwork::capacity(int x, int y) const {
  const auto& a = adj_.at(x);
  auto it = std::lower_bound(a.begin(), a.end(), y,
                             [](const Arc& arc, int target) { return arc.to < target; });
  return (it != a.end() && it->to == y) ? it->cap : 0;
}

Capacity FlowNetwork::weighted_degree(int x) const {
  Capacity sum = 0;
  for (const Arc& a : adj_.at(x)) sum += a.cap;
  return sum;
}

Capacity FlowNetwork::cut_value(std::span<const int> side) const {
  std::vector<char> in(num_vertices(), 0);
  for (int x : side) in.at(x) = 1;
  Capacity sum = 0;
  for (int x : side)
    for (const Arc& a : adj_[x])
      if (!in[a.to]) sum += a.cap;
  return sum;
}

VertexSet FlowNetwork::expand(std::span<const int> side) const {
  VertexSet out;
  for (int x : side) out.insert(out.end(), members_.at(x).begin(), members_.at(x).end());
  std::sort(out.begin(), out.end());
  return out;
}

FlowNetwork contract(const SimpleGraph& g, std::span<const Vertex> keep,
                     const std::vector<VertexSet>& groups) {
  const int n = g.num_vertices();
  std::vector<int> label(n, -1);
  int next = 0;
  auto assign = [&](Vertex v, int l) {
    if (!g.contains(v)) throw std::out_of_range("unknown vertex id " + std::to_string(v));
    if (label[v] >= 0)
      throw std::invalid_argument("vertex " + std::to_string(v) + " appears in two parts");
    label[v] = l;
  };
  for (Vertex v : keep) assign(v, next++);
  for (const auto& grp : groups) {
    if (grp.empty()) throw std::invalid_argument("empty contraction group");
    for (Vertex v : grp) assign(v, next);
    ++next;
  }
  for (Vertex v = 0; v < n; ++v)
    if (label[v] < 0)
      throw std::invalid_argument("vertex " + std::to_string(v) + " not covered by contraction");
  return FlowNetwork::from_labels(g, label, next);
}

AugmentedSubgraph augment(const SimpleGraph& g, std::span<const Vertex> s, double x) {
  if (s.empty()) throw std::invalid_argument("augment: empty vertex set");
  if (!(x > 0)) throw std::invalid_argument("augment: x must be positive");
  AugmentedSubgraph h;
  h.vertices.assign(s.begin(), s.end());
  std::sort(h.vertices.begin(), h.vertices.end());
  h.vertices.erase(std::unique(h.vertices.begin(), h.vertices.end()), h.vertices.end());
  h.loops_per_boundary_edge = static_cast<std::int64_t>(std::ceil(x));
  std::vector<int> local(g.num_vertices(), -1);
  for (std::size_t i = 0; i < h.vertices.size(); ++i) {
    check_vertex(g, h.vertices[i]);
    local[h.vertices[i]] = static_cast<int>(i);
  }
  h.adj.assign(h.vertices.size(), {});
  h.loop_weight.assign(h.vertices.size(), 0);
  for (std::size_t i = 0; i < h.vertices.size(); ++i) {
    for (Vertex w : g.neighbors(h.vertices[i])) {
      if (local[w] >= 0)
        h.adj[i].push_back(local[w]);
      else
        h.loop_weight[i] += h.loops_per_boundary_edge;
    }
  }
  return h;
}

AugmentedSubgraph as_augmented(const SimpleGraph& g) {
  VertexSet all(g.num_vertices());
  std::iota(all.begin(), all.end(), 0);
  return augment(g, all, 1.0);
}

}  // namespace cuttree
