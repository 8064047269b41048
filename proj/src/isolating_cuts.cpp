#include "cuttree/isolating_cuts.hpp"

#include <algorithm>
#include <stdexcept>

namespace cuttree {

int isolating_bit_count(std::size_t num_terminals) {
  int bits = 0;
  while ((std::size_t{1} << bits) < num_terminals + 1) ++bits;
  return bits;
}

IsolatingResult isolating_cuts(const FlowNetwork& net, int pivot, std::span<const int> terminals,
                               FlowStats* stats) {
  const int nv = net.num_vertices();
  if (terminals.empty()) throw std::invalid_argument("isolating cuts: empty terminal set");
  if (pivot < 0 || pivot >= nv) throw std::out_of_range("isolating cuts: pivot out of range");

  IsolatingResult result;
  result.pivot = pivot;
  result.terminals.assign(terminals.begin(), terminals.end());
  std::sort(result.terminals.begin(), result.terminals.end());
  result.terminals.erase(std::unique(result.terminals.begin(), result.terminals.end()),
                         result.terminals.end());
  for (int u : result.terminals) {
    if (u < 0 || u >= nv) throw std::out_of_range("isolating cuts: terminal out of range");
    if (u == pivot) throw std::invalid_argument("isolating cuts: pivot is a terminal");
  }

  // Codes by rank in sorted order of T + {p}.
  std::vector<int> elements = result.terminals;
  elements.insert(std::upper_bound(elements.begin(), elements.end(), pivot), pivot);
  std::vector<int> code(nv, -1);
  for (std::size_t i = 0; i < elements.size(); ++i) code[elements[i]] = static_cast<int>(i);

  // region[x] ends as the code of the unique element whose side holds x in
  // every bipartition, or -1.
  const int bits = isolating_bit_count(result.terminals.size());
  std::vector<int> region(nv, 0);
  std::vector<int> agree(nv, 0);  // bitmask of the side x sits on, per bit
  for (int b = 0; b < bits; ++b) {
    std::vector<int> ones, zeros;
    for (int x : elements) ((code[x] >> b) & 1 ? ones : zeros).push_back(x);
    MaxFlowSolver solver(net);
    auto [s, t] = solver.add_terminals(ones, zeros);
    if (stats) stats->record(solver.num_edges());
    solver.run(s, t);
    std::vector<char> in_ones(nv, 0);
    for (int x : solver.source_side()) in_ones[x] = 1;
    for (int x = 0; x < nv; ++x)
      if (in_ones[x]) agree[x] |= 1 << b;
  }
  for (int x = 0; x < nv; ++x) {
    int c = agree[x];
    region[x] = (c < static_cast<int>(elements.size())) ? c : -1;
  }

  for (int u : result.terminals) {
    const int cu = code[u];
    std::vector<int> label(nv, 0);
    std::vector<int> local_to_super;
    // label 0 is the contracted outside; region members get 1..k
    int next = 1;
    for (int x = 0; x < nv; ++x) {
      if (region[x] == cu) {
        label[x] = next++;
        local_to_super.push_back(x);
      }
    }
    FlowNetwork sub = net.quotient(label, next);
    const int local_u = 1 + static_cast<int>(std::lower_bound(local_to_super.begin(),
                                                               local_to_super.end(), u) -
                                             local_to_super.begin());
    MaxFlowSolver solver(sub);
    if (stats) stats->record(sub.num_edges());
    Cut cut;
    cut.value = solver.run(local_u, 0);
    for (int lx : solver.source_side()) cut.side.push_back(local_to_super[lx - 1]);
    cut.original_side = net.expand(cut.side);
    result.per_terminal.emplace(u, std::move(cut));
  }
  return result;
}

}  // namespace cuttree
