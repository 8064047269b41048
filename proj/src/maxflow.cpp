#include "cuttree/maxflow.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace cuttree {

MaxFlowSolver::MaxFlowSolver(const FlowNetwork& net)
    : base_nodes_(net.num_vertices()),
      infinity_(net.total_capacity() + 1),
      head_(net.num_vertices()) {
  to_.reserve(2 * net.num_edges());
  residual_.reserve(2 * net.num_edges());
  for (int x = 0; x < net.num_vertices(); ++x)
    for (const auto& a : net.arcs(x))
      if (a.to > x) add_edge(x, a.to, a.cap, a.cap);
}

void MaxFlowSolver::add_edge(int u, int v, Capacity cap_uv, Capacity cap_vu) {
  head_[u].push_back(static_cast<int>(to_.size()));
  to_.push_back(v);
  residual_.push_back(cap_uv);
  head_[v].push_back(static_cast<int>(to_.size()));
  to_.push_back(u);
  residual_.push_back(cap_vu);
}

std::pair<int, int> MaxFlowSolver::add_terminals(std::span<const int> sources,
                                                 std::span<const int> sinks) {
  int s = static_cast<int>(head_.size());
  int t = s + 1;
  head_.resize(head_.size() + 2);
  for (int x : sources) add_edge(s, x, infinity_, 0);
  for (int x : sinks) add_edge(x, t, infinity_, 0);
  return {s, t};
}

bool MaxFlowSolver::bfs(int s, int t) {
  level_.assign(head_.size(), -1);
  std::vector<int> queue{s};
  level_[s] = 0;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    int v = queue[qi];
    for (int e : head_[v]) {
      if (residual_[e] > 0 && level_[to_[e]] < 0) {
        level_[to_[e]] = level_[v] + 1;
        queue.push_back(to_[e]);
      }
    }
  }
  return level_[t] >= 0;
}

Capacity MaxFlowSolver::dfs(int v, int t, Capacity limit) {
  if (v == t) return limit;
  for (std::size_t& i = iter_[v]; i < head_[v].size(); ++i) {
    int e = head_[v][i];
    int w = to_[e];
    if (residual_[e] <= 0 || level_[w] != level_[v] + 1) continue;
    Capacity pushed = dfs(w, t, std::min(limit, residual_[e]));
    if (pushed > 0) {
      residual_[e] -= pushed;
      residual_[e ^ 1] += pushed;
      return pushed;
    }
  }
  return 0;
}

Capacity MaxFlowSolver::run(int s, int t) {
  if (s == t) throw std::invalid_argument("max flow: source equals sink");
  if (s < 0 || t < 0 || s >= num_nodes() || t >= num_nodes())
    throw std::out_of_range("max flow: terminal out of range");
  last_source_ = s;
  Capacity flow = 0;
  while (bfs(s, t)) {
    iter_.assign(head_.size(), 0);
    while (Capacity f = dfs(s, t, std::numeric_limits<Capacity>::max())) flow += f;
  }
  return flow;
}

std::vector<int> MaxFlowSolver::source_side() const {
  std::vector<char> seen(head_.size(), 0);
  std::vector<int> stack{last_source_};
  seen[last_source_] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int e : head_[v]) {
      if (residual_[e] > 0 && !seen[to_[e]]) {
        seen[to_[e]] = 1;
        stack.push_back(to_[e]);
      }
    }
  }
  std::vector<int> side;
  for (int x = 0; x < base_nodes_; ++x)
    if (seen[x]) side.push_back(x);
  return side;
}

namespace {

void check_terminals(const FlowNetwork& net, int s, int t) {
  if (s == t) throw std::invalid_argument("max flow: source equals sink");
  if (s < 0 || t < 0 || s >= net.num_vertices() || t >= net.num_vertices())
    throw std::out_of_range("max flow: terminal out of range");
}

}  // namespace

Capacity max_flow(const FlowNetwork& net, int s, int t, FlowStats* stats) {
  check_terminals(net, s, t);
  MaxFlowSolver solver(net);
  if (stats) stats->record(net.num_edges());
  return solver.run(s, t);
}

Cut latest_min_cut(const FlowNetwork& net, int s, int t, FlowStats* stats) {
  check_terminals(net, s, t);
  MaxFlowSolver solver(net);
  if (stats) stats->record(net.num_edges());
  Cut cut;
  cut.value = solver.run(s, t);
  cut.side = solver.source_side();
  cut.original_side = net.expand(cut.side);
  return cut;
}

FlowNetwork identity_network(const SimpleGraph& g) {
  std::vector<int> label(g.num_vertices());
  std::iota(label.begin(), label.end(), 0);
  return FlowNetwork::from_labels(g, label, g.num_vertices());
}

Eigen::MatrixXi min_cut_value_matrix(const SimpleGraph& g, FlowStats* stats) {
  const int n = g.num_vertices();
  FlowNetwork net = identity_network(g);
  Eigen::MatrixXi values = Eigen::MatrixXi::Zero(n, n);
  for (int s = 0; s < n; ++s) {
    for (int t = s + 1; t < n; ++t) {
      auto v = static_cast<int>(max_flow(net, s, t, stats));
      values(s, t) = v;
      values(t, s) = v;
    }
  }
  return values;
}

}  // namespace cuttree
