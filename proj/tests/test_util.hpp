#pragma once

#include <random>

#include "cuttree/graph.hpp"
#include "cuttree/harness.hpp"

namespace cuttree::testing {

inline SimpleGraph make(Family f, int n, std::uint64_t seed = 1, double p = 0.3) {
  GeneratorSpec spec;
  spec.family = f;
  spec.n = n;
  spec.p = p;
  spec.seed = seed;
  return generate(spec);
}

inline SimpleGraph k(int n) { return make(Family::kClique, n); }
inline SimpleGraph path(int n) { return make(Family::kPath, n); }
inline SimpleGraph star(int n) { return make(Family::kStar, n); }

inline SimpleGraph barbell(int a, int b) {
  GeneratorSpec spec;
  spec.family = Family::kBarbell;
  spec.a = a;
  spec.b = b;
  return generate(spec);
}

// Connected gnp-like graph that never fails: sparse samples are bridged.
inline SimpleGraph random_graph(int n, std::uint64_t seed, double p = 0.35) {
  GeneratorSpec spec;
  spec.n = n;
  spec.p = p;
  spec.seed = seed;
  spec.retries = 200;
  return generate(spec);
}

inline VertexSet random_subset(int n, std::mt19937_64& rng, double p = 0.5) {
  std::bernoulli_distribution coin(p);
  VertexSet s;
  for (Vertex v = 0; v < n; ++v)
    if (coin(rng)) s.push_back(v);
  return s;
}

inline VertexSet from_mask(std::uint32_t mask, int n) {
  VertexSet s;
  for (int v = 0; v < n; ++v)
    if ((mask >> v) & 1) s.push_back(v);
  return s;
}

}  // namespace cuttree::testing
