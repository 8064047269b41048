#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "cuttree/expander.hpp"
#include "cuttree/fast_gh.hpp"
#include "cuttree/harness.hpp"
#include "cuttree/manifest.hpp"

using namespace cuttree;

namespace {

SimpleGraph load(const std::string& path, bool largest) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  EdgeList list = parse_edge_list(in);
  if (largest) list = largest_component(list);
  return SimpleGraph(std::move(list));
}

// Writes through `write` to `path`, or stdout for "-" / empty.
template <class F>
void emit(const std::string& path, F&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write(out);
}

AlgoParams make_params(const std::string& preset, std::uint64_t seed, int n) {
  return parse_preset(preset) == Preset::kDesk ? AlgoParams::desk(seed)
                                               : AlgoParams::paper_asymptotic(n, seed);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gomory-Hu tree construction and verification"};
  app.require_subcommand(1);

  GeneratorSpec spec;
  std::string family = "gnp", gen_out;
  auto* gen = app.add_subcommand("gen", "generate a connected simple graph");
  gen->add_option("--family", family, "gnp|clique|star|path|cycle|barbell|planted-expanders|powerlaw");
  gen->add_option("--n", spec.n, "number of vertices");
  gen->add_option("--p", spec.p, "gnp edge probability");
  gen->add_option("--intra-p", spec.intra_p, "planted-expanders intra-cluster density");
  gen->add_option("--a", spec.a, "barbell left clique size");
  gen->add_option("--b", spec.b, "barbell right clique size");
  gen->add_option("--cluster-min", spec.cluster_min);
  gen->add_option("--cluster-max", spec.cluster_max);
  gen->add_option("--inter", spec.inter_edges, "inter-cluster edges");
  gen->add_option("--attach", spec.attach, "powerlaw edges per new vertex");
  gen->add_option("--seed", spec.seed);
  gen->add_option("-o,--output", gen_out, "output file (default stdout)");

  std::string algo = "cond", preset = "desk", in_path, out_path, manifest_path;
  std::uint64_t seed = 1;
  bool largest = false, diagnostics = false;
  auto* bld = app.add_subcommand("build", "build a cut-equivalent tree");
  bld->add_option("--algo", algo, "classic|cond|uncond");
  bld->add_option("--preset", preset, "desk|paper-asymptotic");
  bld->add_option("--seed", seed);
  bld->add_option("-i,--input", in_path)->required();
  bld->add_option("-o,--output", out_path, "tree file (default stdout)");
  bld->add_option("--manifest", manifest_path, "run manifest (JSON)");
  bld->add_flag("--largest-component", largest, "keep only the largest component of the input");
  bld->add_flag("--diagnostics", diagnostics, "compute the pivot envelope statistic");

  std::string tree_path;
  bool all_pairs = false;
  std::int64_t sample = 0;
  auto* ver = app.add_subcommand("verify", "check a tree against max-flow values");
  ver->add_option("-i,--input", in_path)->required();
  ver->add_option("-t,--tree", tree_path)->required();
  auto* all_flag = ver->add_flag("--all-pairs", all_pairs);
  ver->add_option("--sample", sample, "number of sampled pairs")->excludes(all_flag);
  ver->add_option("--seed", seed);

  double phi = 0.1, alpha = -1;
  std::string budget = "constant";
  auto* dec = app.add_subcommand("decompose", "boundary-linked expander decomposition");
  dec->add_option("--phi", phi);
  dec->add_option("--alpha", alpha, "default: phi");
  dec->add_option("--budget", budget, "constant|paper-log");
  dec->add_option("-i,--input", in_path)->required();
  dec->add_option("-o,--output", out_path, "decomposition file (default stdout)");

  bool bench_verify = false;
  auto* ben = app.add_subcommand("bench", "run one build and report counters and wall clock");
  ben->add_option("--algo", algo, "classic|cond|uncond");
  ben->add_option("--preset", preset, "desk|paper-asymptotic");
  ben->add_option("--seed", seed);
  ben->add_option("-i,--input", in_path)->required();
  ben->add_option("-o,--output", out_path, "report file (default stdout)");
  ben->add_flag("--largest-component", largest);
  ben->add_flag("--verify", bench_verify, "also verify the tree");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      spec.family = parse_family(family);
      SimpleGraph g = generate(spec);
      emit(gen_out, [&](std::ostream& o) { write_graph(o, g); });
      return 0;
    }
    if (*bld) {
      SimpleGraph g = load(in_path, largest);
      AlgoParams params = make_params(preset, seed, g.num_vertices());
      params.diagnostics = diagnostics;
      BuildResult res = build(g, parse_algorithm(algo), params);
      emit(out_path, [&](std::ostream& o) { write_tree(o, res.tree); });
      if (!manifest_path.empty())
        emit(manifest_path, [&](std::ostream& o) { write_manifest(o, res.manifest); });
      return res.tree.all_singletons() ? 0 : 1;
    }
    if (*ver) {
      SimpleGraph g = load(in_path, false);
      std::ifstream tin(tree_path);
      if (!tin) throw std::runtime_error("cannot open " + tree_path);
      PartitionTree tree = read_tree(tin);
      VerifyMode mode = all_pairs ? VerifyMode::all()
                        : sample > 0 ? VerifyMode::sampled(sample, seed)
                                     : VerifyMode::automatic(g.num_vertices(), seed);
      VerificationReport rep = verify_tree(g, tree, mode);
      std::cout << "pairs " << rep.pairs_checked << " mismatches " << rep.mismatches.size()
                << " cut_sides " << (rep.cut_side_valid ? "valid" : "invalid") << " elapsed "
                << rep.elapsed_seconds << "s\n";
      for (const auto& mm : rep.mismatches)
        std::cout << "mismatch " << mm.a + 1 << ' ' << mm.b + 1 << " tree " << mm.tree_value
                  << " graph " << mm.graph_value << '\n';
      for (int e : rep.bad_edges) std::cout << "bad tree edge " << e << '\n';
      return rep.accepted() ? 0 : 1;
    }
    if (*dec) {
      SimpleGraph g = load(in_path, false);
      DecompositionConfig cfg;
      cfg.phi = phi;
      cfg.alpha = alpha < 0 ? phi : alpha;
      if (budget == "paper-log") cfg.form = BudgetForm::kPaperLog;
      else if (budget != "constant") throw std::invalid_argument("unknown budget form " + budget);
      ExpanderDecomposition d = decompose(g, cfg);
      emit(out_path, [&](std::ostream& o) { write_decomposition(o, d); });
      DecompositionReport rep = certify_decomposition(g, d, cfg.exact_limit);
      std::cerr << "clusters " << d.clusters.size() << " boundary " << rep.total_boundary
                << " budget " << rep.total_budget << " flagged " << rep.flagged
                << (rep.ok() ? " certified" : " NOT certified") << '\n';
      return rep.ok() ? 0 : 1;
    }
    if (*ben) {
      SimpleGraph g = load(in_path, largest);
      AlgoParams params = make_params(preset, seed, g.num_vertices());
      BenchResult res = bench(g, parse_algorithm(algo), params);
      bool ok = res.build.tree.all_singletons();
      if (bench_verify) {
        VerificationReport rep =
            verify_tree(g, res.build.tree, VerifyMode::automatic(g.num_vertices(), seed));
        res.report["verification"] = {{"pairs", rep.pairs_checked},
                                      {"mismatches", rep.mismatches.size()},
                                      {"cut_side_valid", rep.cut_side_valid}};
        ok = ok && rep.accepted();
      }
      emit(out_path, [&](std::ostream& o) { o << res.report.dump(2) << '\n'; });
      return ok ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
