#include "cuttree/expander.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace cuttree {

namespace {

constexpr double kEigenSlack = 1e-9;

// Components of the inner graph of h, as local id lists.
std::vector<std::vector<int>> inner_components(const AugmentedSubgraph& h) {
  std::vector<int> comp(h.size(), -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < h.size(); ++s) {
    if (comp[s] >= 0) continue;
    out.emplace_back();
    std::vector<int> stack{s};
    comp[s] = static_cast<int>(out.size()) - 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      out.back().push_back(v);
      for (int w : h.adj[v]) {
        if (comp[w] < 0) {
          comp[w] = comp[s];
          stack.push_back(w);
        }
      }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

std::int64_t total_volume(const AugmentedSubgraph& h) {
  std::int64_t t = 0;
  for (int i = 0; i < h.size(); ++i) t += h.volume(i);
  return t;
}

// a/b < c/d for nonnegative numerators and positive denominators
bool ratio_less(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  return static_cast<__int128>(a) * d < static_cast<__int128>(c) * b;
}

ConductanceResult exact_conductance(const AugmentedSubgraph& h) {
  const int k = h.size();
  std::vector<std::uint32_t> adj_mask(k, 0);
  for (int v = 0; v < k; ++v)
    for (int w : h.adj[v]) adj_mask[v] |= 1u << w;
  const std::int64_t total = total_volume(h);

  // The last vertex stays outside S; Phi(S) = Phi(complement).
  const int free_bits = k - 1;
  std::uint32_t mask = 0;
  std::int64_t cut = 0, vol = 0;
  std::int64_t best_num = 1, best_den = 0;
  std::uint32_t best_mask = 0;
  bool have = false;
  for (std::uint64_t i = 1; i < (std::uint64_t{1} << free_bits); ++i) {
    const int v = std::countr_zero(i);
    const auto bit = std::uint32_t{1} << v;
    const int inside = std::popcount(adj_mask[v] & mask);
    if (mask & bit) {
      mask &= ~bit;
      cut -= h.inner_degree(v) - 2 * inside;
      vol -= h.volume(v);
    } else {
      mask |= bit;
      cut += h.inner_degree(v) - 2 * inside;
      vol += h.volume(v);
    }
    const std::int64_t den = std::min(vol, total - vol);
    const std::int64_t num = den == 0 ? 0 : cut;
    const std::int64_t den_safe = den == 0 ? 1 : den;
    if (!have || ratio_less(num, den_safe, best_num, best_den)) {
      best_num = num;
      best_den = den_safe;
      best_mask = mask;
      have = true;
    }
  }
  ConductanceResult r;
  r.exact = true;
  r.cut_edges = best_num;
  r.cut_volume = best_den;
  r.lower = r.upper = static_cast<double>(best_num) / static_cast<double>(best_den);
  for (int v = 0; v < k; ++v)
    if (best_mask & (1u << v)) r.best_side.push_back(v);
  return r;
}

ConductanceResult spectral_conductance(const AugmentedSubgraph& h) {
  const int k = h.size();
  ConductanceResult r;
  r.exact = false;
  const std::int64_t total = total_volume(h);

  auto comps = inner_components(h);
  if (comps.size() > 1) {
    // Disconnected: a component is a zero-crossing cut.
    r.lower = r.upper = 0.0;
    r.best_side = comps.front();
    std::int64_t vol = 0;
    for (int v : r.best_side) vol += h.volume(v);
    r.cut_edges = 0;
    r.cut_volume = std::max<std::int64_t>(1, std::min(vol, total - vol));
    return r;
  }

  Eigen::VectorXd inv_sqrt(k);
  for (int v = 0; v < k; ++v) inv_sqrt(v) = 1.0 / std::sqrt(static_cast<double>(h.volume(v)));
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(k, k);
  for (int v = 0; v < k; ++v) {
    lap(v, v) = static_cast<double>(h.inner_degree(v)) * inv_sqrt(v) * inv_sqrt(v);
    for (int w : h.adj[v]) lap(v, w) = -inv_sqrt(v) * inv_sqrt(w);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap);
  const double lambda2 = solver.eigenvalues()(1);
  r.lower = std::max(0.0, lambda2 / 2.0 - kEigenSlack);

  Eigen::VectorXd fiedler = solver.eigenvectors().col(1).cwiseProduct(inv_sqrt);
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return fiedler(a) < fiedler(b); });
  std::vector<char> in(k, 0);
  std::int64_t cut = 0, vol = 0;
  std::int64_t best_num = 1, best_den = 0;
  int best_prefix = -1;
  for (int i = 0; i + 1 < k; ++i) {
    const int v = order[i];
    int inside = 0;
    for (int w : h.adj[v]) inside += in[w];
    in[v] = 1;
    cut += h.inner_degree(v) - 2 * inside;
    vol += h.volume(v);
    const std::int64_t den = std::max<std::int64_t>(1, std::min(vol, total - vol));
    if (best_prefix < 0 || ratio_less(cut, den, best_num, best_den)) {
      best_num = cut;
      best_den = den;
      best_prefix = i;
    }
  }
  r.cut_edges = best_num;
  r.cut_volume = best_den;
  r.upper = static_cast<double>(best_num) / static_cast<double>(best_den);
  r.best_side.assign(order.begin(), order.begin() + best_prefix + 1);
  std::sort(r.best_side.begin(), r.best_side.end());
  return r;
}

}  // namespace

ConductanceResult conductance(const AugmentedSubgraph& h, int exact_limit) {
  if (h.size() < 2) throw std::invalid_argument("conductance needs at least two vertices");
  if (h.size() <= std::min(exact_limit, 31)) return exact_conductance(h);
  return spectral_conductance(h);
}

ConductanceResult conductance(const SimpleGraph& g, int exact_limit) {
  return conductance(as_augmented(g), exact_limit);
}

bool ExpanderDecomposition::best_effort() const {
  if (std::any_of(clusters.begin(), clusters.end(), [](const auto& c) { return c.flagged; }))
    return true;
  std::int64_t vol = 0;
  for (const auto& c : clusters) vol += c.volume;
  // vol counts each edge twice
  return static_cast<double>(total_boundary()) > b1 * phi * static_cast<double>(vol / 2) + 1e-9;
}

std::int64_t ExpanderDecomposition::total_boundary() const {
  std::int64_t t = 0;
  for (const auto& c : clusters) t += c.boundary;
  return t;
}

std::pair<double, double> decomposition_budgets(const DecompositionConfig& cfg, int n) {
  if (cfg.form == BudgetForm::kConstant) return {cfg.b1_constant, cfg.b2_constant};
  const double lg = std::log2(std::max(2, n));
  return {std::pow(lg, 4), std::pow(lg, 7)};
}

int size_class_of(const ExpanderDecomposition& dec, int index) {
  if (index < 0 || index >= static_cast<int>(dec.clusters.size()))
    throw std::out_of_range("unknown cluster index");
  return std::bit_width(dec.clusters[index].vertices.size()) - 1;
}

namespace {

void finalize(ExpanderDecomposition& dec, int n) {
  std::sort(dec.clusters.begin(), dec.clusters.end(),
            [](const ClusterInfo& a, const ClusterInfo& b) { return a.vertices[0] < b.vertices[0]; });
  dec.cluster_of.assign(n, -1);
  dec.size_classes.clear();
  for (int i = 0; i < static_cast<int>(dec.clusters.size()); ++i) {
    for (Vertex v : dec.clusters[i].vertices) dec.cluster_of[v] = i;
    dec.size_classes[size_class_of(dec, i)].push_back(i);
  }
}

}  // namespace

ExpanderDecomposition decompose(const SimpleGraph& g, const DecompositionConfig& cfg) {
  if (!(cfg.phi > 0 && cfg.phi <= 1)) throw std::invalid_argument("decompose: phi must be in (0, 1]");
  if (!(cfg.alpha > 0)) throw std::invalid_argument("decompose: alpha must be positive");
  ExpanderDecomposition dec;
  dec.phi = cfg.phi;
  dec.alpha = cfg.alpha;
  std::tie(dec.b1, dec.b2) = decomposition_budgets(cfg, g.num_vertices());
  const double loops = cfg.alpha / cfg.phi;

  struct Item {
    VertexSet set;
    int depth;
  };
  VertexSet all(g.num_vertices());
  std::iota(all.begin(), all.end(), 0);
  std::vector<Item> work{{std::move(all), 0}};
  while (!work.empty()) {
    Item item = std::move(work.back());
    work.pop_back();
    if (item.depth > cfg.max_depth)
      throw DecompositionError("expander decomposition exceeded recursion depth " +
                               std::to_string(cfg.max_depth));
    ClusterInfo info;
    info.vertices = item.set;
    info.boundary = boundary(g, item.set);
    info.volume = volume(g, item.set);
    const bool fits = static_cast<double>(info.boundary) <=
                      dec.b2 * cfg.phi * static_cast<double>(info.volume);
    if (item.set.size() == 1) {
      info.flagged = !fits;
      dec.clusters.push_back(std::move(info));
      continue;
    }
    AugmentedSubgraph h = augment(g, item.set, loops);
    ConductanceResult res = conductance(h, cfg.exact_limit);
    if (res.lower >= cfg.phi && fits) {
      info.exact = res.exact;
      info.certified_conductance = res.lower;
      dec.clusters.push_back(std::move(info));
      continue;
    }
    std::vector<char> in(h.size(), 0);
    for (int v : res.best_side) in[v] = 1;
    VertexSet left, right;
    for (int i = 0; i < h.size(); ++i) (in[i] ? left : right).push_back(h.vertices[i]);
    work.push_back({std::move(right), item.depth + 1});
    work.push_back({std::move(left), item.depth + 1});
  }
  finalize(dec, g.num_vertices());
  return dec;
}

DecompositionReport certify_decomposition(const SimpleGraph& g, const ExpanderDecomposition& dec,
                                          int exact_limit) {
  DecompositionReport rep;
  std::vector<int> count(g.num_vertices(), 0);
  for (const auto& c : dec.clusters)
    for (Vertex v : c.vertices)
      if (g.contains(v)) ++count[v];
  rep.partition = std::all_of(count.begin(), count.end(), [](int c) { return c == 1; });

  rep.total_budget = dec.b1 * dec.phi * g.num_edges();
  rep.expansion_ok = true;
  rep.cluster_boundary_ok = true;
  for (int i = 0; i < static_cast<int>(dec.clusters.size()); ++i) {
    const auto& c = dec.clusters[i];
    const std::int64_t out = boundary(g, c.vertices);
    rep.total_boundary += out;
    if (c.vertices.size() >= 2) {
      auto res = conductance(augment(g, c.vertices, dec.alpha / dec.phi), exact_limit);
      if (res.lower < dec.phi) {
        rep.expansion_ok = false;
        rep.expansion_failures.push_back(i);
      }
    }
    const bool fits =
        static_cast<double>(out) <= dec.b2 * dec.phi * static_cast<double>(volume(g, c.vertices));
    if (c.flagged) {
      ++rep.flagged;
      if (c.vertices.size() != 1) rep.flagged_only_singletons = false;
    } else if (!fits) {
      rep.cluster_boundary_ok = false;
      rep.boundary_failures.push_back(i);
    }
  }
  rep.total_boundary_ok = static_cast<double>(rep.total_boundary) <= rep.total_budget;
  return rep;
}

void write_decomposition(std::ostream& out, const ExpanderDecomposition& dec) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "h phi %.17g alpha %.17g b1 %.17g b2 %.17g\n", dec.phi, dec.alpha,
                dec.b1, dec.b2);
  out << buf;
  for (std::size_t i = 0; i < dec.clusters.size(); ++i) {
    out << "C " << i;
    for (Vertex v : dec.clusters[i].vertices) out << ' ' << v + 1;
    out << '\n';
  }
  for (std::size_t i = 0; i < dec.clusters.size(); ++i)
    if (dec.clusters[i].flagged) out << "F " << i << '\n';
}

ExpanderDecomposition read_decomposition(std::istream& in, const SimpleGraph& g) {
  ExpanderDecomposition dec;
  std::string raw;
  bool header = false;
  std::vector<int> flagged;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("decomposition line " + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, raw)) {
    ++lineno;
    std::istringstream ls(raw);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    if (tag == "h") {
      std::string k1, k2, k3, k4;
      if (!(ls >> k1 >> dec.phi >> k2 >> dec.alpha >> k3 >> dec.b1 >> k4 >> dec.b2) ||
          k1 != "phi" || k2 != "alpha" || k3 != "b1" || k4 != "b2")
        fail("expected 'h phi <x> alpha <x> b1 <x> b2 <x>'");
      header = true;
    } else if (tag == "C") {
      std::size_t id;
      if (!(ls >> id) || id != dec.clusters.size()) fail("cluster ids must be 0..k-1 in order");
      ClusterInfo c;
      long long v;
      while (ls >> v) {
        if (v < 1 || v > g.num_vertices()) fail("vertex id out of range");
        c.vertices.push_back(static_cast<Vertex>(v - 1));
      }
      if (c.vertices.empty()) fail("empty cluster");
      std::sort(c.vertices.begin(), c.vertices.end());
      dec.clusters.push_back(std::move(c));
    } else if (tag == "F") {
      int id;
      if (!(ls >> id)) fail("expected 'F <cluster-id>'");
      flagged.push_back(id);
    } else {
      fail("unknown line tag '" + tag + "'");
    }
  }
  if (!header) throw std::invalid_argument("decomposition file has no header");
  for (int id : flagged) {
    if (id < 0 || id >= static_cast<int>(dec.clusters.size()))
      throw std::invalid_argument("flag for unknown cluster");
    dec.clusters[id].flagged = true;
  }
  for (auto& c : dec.clusters) {
    c.boundary = boundary(g, c.vertices);
    c.volume = volume(g, c.vertices);
    if (c.vertices.size() >= 2) {
      auto res = conductance(augment(g, c.vertices, dec.alpha / dec.phi));
      c.exact = res.exact;
      c.certified_conductance = res.lower;
    }
  }
  finalize(dec, g.num_vertices());
  return dec;
}

}  // namespace cuttree
