#pragma once

#include <map>
#include <span>

#include "cuttree/graph.hpp"
#include "cuttree/maxflow.hpp"

namespace cuttree {

/// Candidate latest cuts of every terminal against a common pivot. Sides are
/// pairwise disjoint and never contain the pivot.
struct IsolatingResult {
  int pivot = -1;
  std::vector<int> terminals;     // sorted super-vertex ids
  std::map<int, Cut> per_terminal;
};

/// Isolating cuts of `terminals` against `pivot` in `net` (ids are
/// super-vertices). Each element of T + {p} gets a distinct binary code;
/// one multi-source flow per bit separates the code classes, the regions
/// left for each terminal are disjoint, and one flow per terminal inside its
/// region (everything else contracted) yields a minimal-side isolating cut.
///
/// When the latest (u, p) cut K_u satisfies K_u n T = {u}, the returned cut
/// for u is exactly K_u.
IsolatingResult isolating_cuts(const FlowNetwork& net, int pivot, std::span<const int> terminals,
                               FlowStats* stats = nullptr);

/// Number of bipartition flows used for |T| terminals: ceil(log2(|T| + 1)).
int isolating_bit_count(std::size_t num_terminals);

}  // namespace cuttree
