#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "cuttree/harness.hpp"
#include "cuttree/partition_tree.hpp"
#include "test_util.hpp"

namespace cuttree {
namespace {

// After refining with respect to r, path minima between r-vertices equal
// their min-cut values in g, and every tree edge weighs its induced cut.
void expect_gh_equivalent(const SimpleGraph& g, const PartitionTree& tree,
                          const Eigen::MatrixXi& oracle, const VertexSet& r) {
  for (Vertex a : r)
    for (Vertex b : r)
      if (a < b) EXPECT_EQ(tree_min_cut_query(tree, a, b).value, oracle(a, b)) << a << ' ' << b;
  for (const TreeEdge& e : tree.edges())
    EXPECT_EQ(boundary(g, tree_side(tree, e, e.a)), e.weight);
}

TEST(AuxiliaryGraph, SingleNodeIsIdentity) {
  SimpleGraph g = testing::random_graph(9, 1);
  PartitionTree tree(9);
  AuxiliaryGraph aux = auxiliary_graph(g, tree, 0);
  EXPECT_EQ(aux.net.num_vertices(), 9);
  EXPECT_EQ(aux.net.num_edges(), g.num_edges());
  EXPECT_TRUE(aux.group_neighbor.empty());
}

TEST(AuxiliaryGraph, PathTwoNodes) {
  SimpleGraph g = testing::path(3);
  PartitionTree tree = PartitionTree::from_parts(3, {{0}, {1, 2}}, {{0, 1, 1}});
  AuxiliaryGraph aux = auxiliary_graph(g, tree, 1);
  EXPECT_EQ(aux.kept, (VertexSet{1, 2}));
  EXPECT_EQ(aux.net.num_vertices(), 3);
  EXPECT_EQ(aux.net.capacity(aux.super_of(1), 2), 1);
  EXPECT_EQ(aux.super_of(0), -1);
}

TEST(AuxiliaryGraph, CapacityMassMatchesHandContraction) {
  for (int trial = 0; trial < 20; ++trial) {
    SimpleGraph g = testing::random_graph(10, 700 + trial);
    PartitionTree tree(10);
    std::vector<Vertex> r{0, 3, 6, 9};
    refine(g, tree, 0, r);
    for (NodeId x = 0; x < tree.num_nodes(); ++x) {
      AuxiliaryGraph aux = auxiliary_graph(g, tree, x);
      std::vector<int> label(10, -1);
      for (int y = 0; y < aux.net.num_vertices(); ++y)
        for (Vertex v : aux.net.members(y)) label[v] = y;
      for (Vertex v = 0; v < 10; ++v) ASSERT_GE(label[v], 0);
      Capacity expected = 0;
      for (auto [u, v] : g.edges()) expected += label[u] != label[v];
      EXPECT_EQ(aux.net.total_capacity(), expected);
    }
  }
}

TEST(GhStep, K4) {
  SimpleGraph g = testing::k(4);
  PartitionTree tree(4);
  GhStepResult r = gh_step(g, tree, 0, 2, 1);
  EXPECT_EQ(r.weight, 3);
  EXPECT_EQ(tree.node_set(r.new_node), (VertexSet{2}));
  EXPECT_EQ(tree.node_set(0), (VertexSet{0, 1, 3}));
}

TEST(GhStep, StarLeaf) {
  SimpleGraph g = testing::star(5);
  PartitionTree tree(5);
  GhStepResult r = gh_step(g, tree, 0, 0, 3);  // latest cut from the center keeps it minimal
  EXPECT_EQ(r.weight, 1);
  EXPECT_EQ(tree.node_set(0), (VertexSet{3}));
}

TEST(GhStep, BarbellSplitsTriangles) {
  SimpleGraph g = testing::barbell(3, 3);
  PartitionTree tree(6);
  GhStepResult r = gh_step(g, tree, 0, 0, 5);
  EXPECT_EQ(r.weight, 1);
  EXPECT_EQ(tree.node_set(r.new_node), (VertexSet{0, 1, 2}));
  EXPECT_EQ(tree.node_set(0), (VertexSet{3, 4, 5}));
}

TEST(GhStep, RejectsVerticesOutsideNode) {
  SimpleGraph g = testing::k(4);
  PartitionTree tree(4);
  gh_step(g, tree, 0, 0, 1);
  EXPECT_THROW(gh_step(g, tree, 0, 0, 2), std::invalid_argument);
  EXPECT_THROW(gh_step(g, tree, 0, 2, 2), std::invalid_argument);
}

TEST(Refine, SingleVertexNoop) {
  SimpleGraph g = testing::k(5);
  PartitionTree tree(5);
  FlowStats stats;
  refine(g, tree, 0, std::vector<Vertex>{2}, &stats);
  EXPECT_EQ(tree.num_nodes(), 1);
  EXPECT_EQ(stats.calls, 0);
}

TEST(Refine, StarCenterAndLeaf) {
  SimpleGraph g = testing::star(5);
  PartitionTree tree(5);
  refine(g, tree, 0, std::vector<Vertex>{0, 1});
  ASSERT_EQ(tree.num_nodes(), 2);
  EXPECT_EQ(tree.node_set(tree.node_of(1)), (VertexSet{1}));
  EXPECT_EQ(tree.node_set(tree.node_of(0)), (VertexSet{0, 2, 3, 4}));
  EXPECT_EQ(tree.meta(tree.node_of(0)).pivot, 0);
  EXPECT_EQ(tree.meta(tree.node_of(1)).pivot, 1);
}

TEST(Refine, RejectsForeignVertices) {
  SimpleGraph g = testing::k(4);
  PartitionTree tree(4);
  gh_step(g, tree, 0, 0, 1);
  EXPECT_THROW(refine(g, tree, 0, std::vector<Vertex>{0, 1}), std::invalid_argument);
}

TEST(Refine, AllVerticesGivesFullTree) {
  for (int trial = 0; trial < 20; ++trial) {
    SimpleGraph g = testing::random_graph(10, 800 + trial);
    PartitionTree tree(10);
    std::vector<Vertex> all(10);
    std::iota(all.begin(), all.end(), 0);
    refine(g, tree, 0, all);
    ASSERT_TRUE(tree.all_singletons());
    EXPECT_EQ(all_pairs_tree_values(tree), min_cut_value_matrix(g));
  }
}

TEST(Refine, OnePivotPerNodeAndEquivalence) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 12 + trial % 19;
    SimpleGraph g = testing::random_graph(n, 900 + trial, 0.25);
    Eigen::MatrixXi oracle = min_cut_value_matrix(g);
    PartitionTree tree(n);
    VertexSet r = testing::random_subset(n, rng, 0.3);
    refine(g, tree, 0, r);
    tree.validate();
    std::vector<int> count(tree.num_nodes(), 0);
    for (Vertex v : r) ++count[tree.node_of(v)];
    for (int c : count) EXPECT_LE(c, 1);
    expect_gh_equivalent(g, tree, oracle, r);
    // a second refinement inside the largest node keeps equivalence
    NodeId big = 0;
    for (NodeId x = 0; x < tree.num_nodes(); ++x)
      if (tree.node_set(x).size() > tree.node_set(big).size()) big = x;
    VertexSet inner = testing::random_subset(n, rng, 0.5);
    VertexSet r2;
    std::set_intersection(inner.begin(), inner.end(), tree.node_set(big).begin(),
                          tree.node_set(big).end(), std::back_inserter(r2));
    refine(g, tree, big, r2);
    tree.validate();
    expect_gh_equivalent(g, tree, oracle, r2);
    for (Vertex v : r2) EXPECT_EQ(tree.meta(tree.node_of(v)).pivot, v);
    for (NodeId x = 0; x < tree.num_nodes(); ++x)
      if (auto p = tree.meta(x).pivot) EXPECT_EQ(tree.node_of(*p), x);
  }
}

TEST(Classic, CompleteGraphWeights) {
  FlowStats stats;
  PartitionTree tree = classic_gomory_hu(testing::k(7), &stats);
  EXPECT_EQ(stats.calls, 6);
  for (const TreeEdge& e : tree.edges()) EXPECT_EQ(e.weight, 6);
}

TEST(Classic, StarGivesStarTree) {
  PartitionTree tree = classic_gomory_hu(testing::star(6));
  const NodeId center = tree.node_of(0);
  EXPECT_EQ(tree.incident(center).size(), 5u);
  for (const TreeEdge& e : tree.edges()) EXPECT_EQ(e.weight, 1);
}

TEST(Classic, RandomMatchesOracle) {
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 20 + 3 * trial;
    SimpleGraph g = testing::random_graph(n, 1000 + trial, 0.15);
    FlowStats stats;
    PartitionTree tree = classic_gomory_hu(g, &stats);
    EXPECT_EQ(stats.calls, n - 1);
    EXPECT_EQ(all_pairs_tree_values(tree), min_cut_value_matrix(g));
  }
}

TEST(KPartial, LargeKRefinesEverything) {
  SimpleGraph g = testing::random_graph(15, 5);
  PartitionTree tree(15);
  k_partial_tree(g, tree, 0, g.max_degree());
  EXPECT_TRUE(tree.all_singletons());
}

TEST(KPartial, StarLeaves) {
  SimpleGraph g = testing::star(7);
  PartitionTree tree(7);
  k_partial_tree(g, tree, 0, 1);
  for (Vertex v = 1; v < 7; ++v) EXPECT_EQ(tree.node_set(tree.node_of(v)).size(), 1u);
}

TEST(KPartial, LowDegreeSingletonsMatchOracle) {
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 16 + trial;
    SimpleGraph g = testing::random_graph(n, 1100 + trial, 0.3);
    const int kk = static_cast<int>(std::ceil(std::sqrt(n)));
    PartitionTree tree(n);
    k_partial_tree(g, tree, 0, kk);
    tree.validate();
    Eigen::MatrixXi oracle = min_cut_value_matrix(g);
    std::vector<Vertex> low;
    for (Vertex v = 0; v < n; ++v)
      if (g.degree(v) <= kk) {
        EXPECT_EQ(tree.node_set(tree.node_of(v)).size(), 1u);
        low.push_back(v);
      }
    expect_gh_equivalent(g, tree, oracle, low);
  }
}

TEST(TreeQuery, Examples) {
  PartitionTree star = classic_gomory_hu(testing::star(5));
  EXPECT_EQ(tree_min_cut_query(star, 1, 2).value, 1);
  PartitionTree k4 = classic_gomory_hu(testing::k(4));
  for (Vertex a = 0; a < 4; ++a)
    for (Vertex b = a + 1; b < 4; ++b) EXPECT_EQ(tree_min_cut_query(k4, a, b).value, 3);
  PartitionTree coarse(4);
  EXPECT_THROW(tree_min_cut_query(coarse, 0, 1), std::invalid_argument);
}

TEST(TreeQuery, TiesGoToEdgeNearestA) {
  // path tree 0 - 1 - 2 with equal weights
  PartitionTree tree = PartitionTree::from_parts(3, {{0}, {1}, {2}}, {{0, 1, 1}, {1, 2, 1}});
  TreeCutQuery q = tree_min_cut_query(tree, 0, 2);
  EXPECT_EQ(std::minmax(q.edge.a, q.edge.b), std::minmax(NodeId{0}, NodeId{1}));
  TreeCutQuery r = tree_min_cut_query(tree, 2, 0);
  EXPECT_EQ(std::minmax(r.edge.a, r.edge.b), std::minmax(NodeId{1}, NodeId{2}));
}

TEST(TreeIo, RoundTrip) {
  SimpleGraph g = testing::random_graph(14, 12);
  PartitionTree tree(14);
  refine(g, tree, 0, std::vector<Vertex>{1, 5, 9, 13});
  std::ostringstream out;
  write_tree(out, tree);
  std::istringstream in(out.str());
  PartitionTree back = read_tree(in);
  std::ostringstream again;
  write_tree(again, back);
  EXPECT_EQ(out.str(), again.str());
  EXPECT_EQ(back.num_nodes(), tree.num_nodes());
}

TEST(TreeIo, RejectsBrokenTrees) {
  std::istringstream dup("n 0 1 2\nn 1 2 3\nt 0 1 1\n");
  EXPECT_THROW(read_tree(dup), std::exception);
  std::istringstream cyc("n 0 1\nn 1 2\nn 2 3\nt 0 1 1\nt 1 2 1\nt 0 2 1\n");
  EXPECT_THROW(read_tree(cyc), std::exception);
}

}  // namespace
}  // namespace cuttree
