#include <gtest/gtest.h>

#include <sstream>

#include "cuttree/harness.hpp"
#include "cuttree/partition_tree.hpp"
#include "test_util.hpp"

namespace cuttree {
namespace {

TEST(Generate, Examples) {
  SimpleGraph k4 = testing::k(4);
  EXPECT_EQ(k4.num_edges(), 6);
  SimpleGraph bar = testing::barbell(3, 3);
  EXPECT_EQ(bar.num_vertices(), 6);
  EXPECT_EQ(bar.num_edges(), 7);
  GeneratorSpec spec;
  spec.n = 30;
  spec.p = 0.3;
  spec.seed = 17;
  SimpleGraph a = generate(spec), b = generate(spec);
  EXPECT_EQ(std::vector(a.edges().begin(), a.edges().end()),
            std::vector(b.edges().begin(), b.edges().end()));
}

TEST(Generate, EveryFamilyConnectedAndDeterministic) {
  for (Family f : all_families())
    for (int n : {3, 12, 45}) {
      GeneratorSpec spec;
      spec.family = f;
      spec.n = n;
      spec.p = 0.4;
      spec.seed = 5;
      SimpleGraph g = generate(spec);  // constructor rejects disconnected output
      EXPECT_EQ(g.num_vertices(), n) << to_string(f);
      std::ostringstream x, y;
      write_graph(x, g);
      write_graph(y, generate(spec));
      EXPECT_EQ(x.str(), y.str());
      EXPECT_EQ(parse_family(to_string(f)), f);
    }
}

TEST(Generate, InfeasibleParameters) {
  GeneratorSpec spec;
  spec.n = 40;
  spec.p = 0.001;
  spec.retries = 5;
  EXPECT_THROW(generate(spec), InfeasibleParameters);
  spec.family = Family::kCycle;
  spec.n = 2;
  EXPECT_THROW(generate(spec), InfeasibleParameters);
  EXPECT_THROW(parse_family("grid"), std::invalid_argument);
}

TEST(Generate, PlantedClustersPartition) {
  GeneratorSpec spec;
  spec.family = Family::kPlantedExpanders;
  spec.n = 57;
  spec.seed = 3;
  auto clusters = planted_clusters(spec);
  std::vector<int> seen(57, 0);
  for (const auto& c : clusters) {
    EXPECT_GE(static_cast<int>(c.size()), spec.cluster_min);
    for (Vertex v : c) ++seen[v];
  }
  for (int s : seen) EXPECT_EQ(s, 1);
  SimpleGraph g = generate(spec);
  for (const auto& c : clusters)
    EXPECT_EQ(internal_edges(g, c), static_cast<std::int64_t>(c.size() * (c.size() - 1) / 2));
}

TEST(VerifyTree, ClassicIsClean) {
  for (Family f : all_families()) {
    SimpleGraph g = testing::make(f, 25, 2, 0.3);
    VerificationReport rep = verify_tree(g, classic_gomory_hu(g), VerifyMode::all());
    EXPECT_TRUE(rep.accepted()) << to_string(f);
    EXPECT_EQ(rep.pairs_checked, 25 * 24 / 2);
  }
}

TEST(VerifyTree, InjectedWeightFaultIsFlagged) {
  SimpleGraph g = testing::random_graph(12, 6);
  PartitionTree good = classic_gomory_hu(g);
  std::vector<VertexSet> nodes;
  for (NodeId x = 0; x < good.num_nodes(); ++x) nodes.push_back(good.node_set(x));
  std::vector<TreeEdge> edges(good.edges().begin(), good.edges().end());
  edges[0].weight += 1;
  PartitionTree bad = PartitionTree::from_parts(12, nodes, edges);
  VerificationReport rep = verify_tree(g, bad, VerifyMode::all());
  EXPECT_FALSE(rep.accepted());
  EXPECT_FALSE(rep.cut_side_valid);
  const Vertex a = nodes[edges[0].a][0], b = nodes[edges[0].b][0];
  bool flagged = false;
  for (const Mismatch& m : rep.mismatches)
    flagged |= std::minmax(m.a, m.b) == std::minmax(a, b);
  EXPECT_TRUE(flagged);
}

TEST(VerifyTree, StarTreeAccepted) {
  SimpleGraph g = testing::star(6);
  std::vector<VertexSet> nodes{{0}, {1}, {2}, {3}, {4}, {5}};
  std::vector<TreeEdge> edges;
  for (NodeId x = 1; x < 6; ++x) edges.push_back({0, x, 1});
  EXPECT_TRUE(verify_tree(g, PartitionTree::from_parts(6, nodes, edges), VerifyMode::all())
                  .accepted());
}

TEST(VerifyTree, SampledModeDrawsDistinctPairs) {
  SimpleGraph g = testing::random_graph(70, 3, 0.1);
  PartitionTree t = classic_gomory_hu(g);
  VerificationReport rep = verify_tree(g, t, VerifyMode::automatic(70, 5));
  EXPECT_EQ(rep.pairs_checked, 2000);
  EXPECT_TRUE(rep.accepted());
  EXPECT_EQ(verify_tree(g, t, VerifyMode::sampled(10, 1)).pairs_checked, 10);
}

TEST(VerifyTree, CoarseTreeReportsSharedNodes) {
  SimpleGraph g = testing::k(5);
  PartitionTree coarse(5);
  VerificationReport rep = verify_tree(g, coarse, VerifyMode::all());
  EXPECT_FALSE(rep.accepted());
  EXPECT_EQ(rep.mismatches.size(), 10u);
  EXPECT_EQ(rep.mismatches[0].tree_value, -1);
}

TEST(BruteForce, Examples) {
  BruteForceCuts k4 = brute_force_all_cuts(testing::k(4));
  for (int s = 0; s < 4; ++s)
    for (int t = 0; t < 4; ++t)
      if (s != t) {
        EXPECT_EQ(k4.values(s, t), 3);
        EXPECT_EQ(k4.latest[s][t], 1u << s);
      }
  BruteForceCuts p3 = brute_force_all_cuts(testing::path(3));
  EXPECT_EQ(p3.values(0, 2), 1);
  EXPECT_THROW(brute_force_all_cuts(testing::path(15)), std::invalid_argument);
}

TEST(BruteForce, MatchesMaxFlowMatrix) {
  for (int trial = 0; trial < 10; ++trial) {
    SimpleGraph g = testing::random_graph(10, 60 + trial);
    EXPECT_EQ(brute_force_all_cuts(g).values, min_cut_value_matrix(g));
  }
}

TEST(Bench, ClassicUsesNMinusOneFlows) {
  SimpleGraph g = testing::random_graph(30, 8, 0.2);
  BenchResult res = bench(g, Algorithm::kClassic, AlgoParams::desk());
  EXPECT_EQ(res.report["total_flows"]["calls"], 29);
  EXPECT_TRUE(res.report.contains("wall_clock_seconds"));
}

TEST(Bench, CondBelowThresholdHasClassicShape) {
  SimpleGraph g = testing::random_graph(7, 8, 0.5);
  BenchResult cond = bench(g, Algorithm::kCond, AlgoParams::desk());
  EXPECT_EQ(cond.report["total_flows"]["calls"], 6);
  EXPECT_EQ(cond.report["round_count"], 0);
}

TEST(Bench, CondAndUncondAgreeOnDenseGraphs) {
  SimpleGraph g = testing::random_graph(40, 4, 0.7);
  BenchResult a = bench(g, Algorithm::kCond, AlgoParams::desk(3));
  BenchResult b = bench(g, Algorithm::kUncond, AlgoParams::desk(3));
  EXPECT_EQ(all_pairs_tree_values(a.build.tree), all_pairs_tree_values(b.build.tree));
  EXPECT_EQ(parse_algorithm("uncond"), Algorithm::kUncond);
  EXPECT_THROW(parse_algorithm("gusfield"), std::invalid_argument);
}

TEST(OracleTriangle, SmallGraphsAgree) {
  for (int i = 0; i < 40; ++i) {
    Family f = all_families()[i % 8];
    SimpleGraph g = testing::make(f, 4 + i % 9, i + 1, 0.45);
    EXPECT_EQ(brute_force_all_cuts(g).values, min_cut_value_matrix(g));
    EXPECT_EQ(min_cut_value_matrix(g), all_pairs_tree_values(classic_gomory_hu(g)));
  }
}

}  // namespace
}  // namespace cuttree
