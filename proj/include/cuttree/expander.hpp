#pragma once

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <vector>

#include "cuttree/graph.hpp"

namespace cuttree {

/// Conductance of an augmented subgraph. `exact` results come from
/// enumerating every cut; otherwise [lower, upper] brackets the conductance
/// with lower = lambda_2 / 2 of the normalized Laplacian (Cheeger) and upper
/// the best sweep cut of the Fiedler vector.
struct ConductanceResult {
  bool exact = false;
  double lower = 0.0;
  double upper = 0.0;
  // Numerator and denominator of the best cut found (the minimizer when exact).
  std::int64_t cut_edges = 0;
  std::int64_t cut_volume = 0;
  std::vector<int> best_side;  // local ids of the subgraph
};

/// Throws std::invalid_argument for fewer than two vertices.
ConductanceResult conductance(const AugmentedSubgraph& h, int exact_limit = 20);
ConductanceResult conductance(const SimpleGraph& g, int exact_limit = 20);

enum class BudgetForm { kConstant, kPaperLog };

struct DecompositionConfig {
  double phi = 0.1;
  double alpha = 0.1;
  BudgetForm form = BudgetForm::kConstant;
  double b1_constant = 4.0;
  double b2_constant = 8.0;
  int exact_limit = 20;
  int max_depth = 4096;
};

struct ClusterInfo {
  VertexSet vertices;
  std::int64_t boundary = 0;  // out_G(C)
  std::int64_t volume = 0;    // vol_G(C)
  bool exact = true;          // certificate kind; singletons count as exact
  double certified_conductance = 1.0;  // lower bound on Phi(G[C]^{alpha/phi})
  bool flagged = false;       // violates the per-cluster boundary budget, cannot split further
};

struct ExpanderDecomposition {
  double phi = 0.0;
  double alpha = 0.0;
  double b1 = 0.0;  // total boundary budget is b1 * phi * m
  double b2 = 0.0;  // per-cluster boundary budget is b2 * phi * vol(C)
  std::vector<ClusterInfo> clusters;  // sorted by smallest vertex
  std::vector<int> cluster_of;        // per vertex
  std::map<int, std::vector<int>> size_classes;  // i -> clusters with |C| in [2^i, 2^{i+1})

  bool best_effort() const;
  std::int64_t total_boundary() const;
};

class DecompositionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Resolved budget multipliers for a graph with n vertices.
std::pair<double, double> decomposition_budgets(const DecompositionConfig& cfg, int n);

/// Recursive certify-or-split decomposition. A cluster is emitted once the
/// conductance of G[C]^{alpha/phi} is certified >= phi and its boundary fits
/// the per-cluster budget; otherwise it is split along the best cut found
/// (exact minimizer up to exact_limit vertices, Fiedler sweep above).
ExpanderDecomposition decompose(const SimpleGraph& g, const DecompositionConfig& cfg);

/// floor(log2 |C|) of cluster `index`.
int size_class_of(const ExpanderDecomposition& dec, int index);

struct DecompositionReport {
  bool partition = false;
  bool total_boundary_ok = false;   // property (1)
  bool expansion_ok = false;        // property (2)
  bool cluster_boundary_ok = false; // property (3), flagged clusters excluded
  bool flagged_only_singletons = true;
  std::int64_t total_boundary = 0;
  double total_budget = 0.0;
  int flagged = 0;
  std::vector<int> expansion_failures;
  std::vector<int> boundary_failures;

  bool ok() const {
    return partition && total_boundary_ok && expansion_ok && cluster_boundary_ok &&
           flagged_only_singletons;
  }
};

/// Recomputes every property from scratch against g.
DecompositionReport certify_decomposition(const SimpleGraph& g, const ExpanderDecomposition& dec,
                                          int exact_limit = 20);

void write_decomposition(std::ostream& out, const ExpanderDecomposition& dec);
/// Rebuilds cluster statistics from g.
ExpanderDecomposition read_decomposition(std::istream& in, const SimpleGraph& g);

}  // namespace cuttree
