#include "cli.hpp"

#include "interlace/composition.hpp"
#include "interlace/expansion.hpp"
#include "interlace/graph_file.hpp"
#include "interlace/recursion.hpp"
#include "interlace/reduction.hpp"
#include "interlace/selftest.hpp"
#include "interlace/trees.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <map>

namespace interlace::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ComputeArgs {
  std::string file;
  std::string poly = "q";
  std::string method = "auto";
  std::string strategy = "first";
  bool ternary = false;
  std::string record_tree;
  bool report = false;
};

struct ComposeArgs {
  std::string h_file;
  std::string k_file;
  std::string shared;
};

struct StatsArgs {
  std::string file;
};

struct SelftestArgs {
  std::size_t max_n = 7;
  std::size_t samples = 200;
  std::uint64_t seed = 1;
  bool inject_pivot_fault = false;
};

PolyKind poly_kind(const std::string& name) {
  if (name == "qn") return PolyKind::qn;
  if (name == "qr") return PolyKind::qr;
  return PolyKind::q;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + path + "'");
  f << text;
}

Strategy recursion_strategy(const ComputeArgs& a, const GraphFile& file) {
  if (a.strategy != "tree") return Strategy::first_vertex();
  if (!file.root) throw StrategyError("tree strategy needs a 'root' directive");
  return Strategy::tree(*file.root, file.child_order);
}

int compute(const ComputeArgs& a, std::ostream& out, std::ostream& err) {
  if (!a.record_tree.empty() && (a.method == "expand" || a.method == "tree")) {
    throw UsageError("--record-tree needs a recursive method (recurse, reduce or auto)");
  }
  if (a.strategy == "tree" && a.method != "recurse") throw UsageError("--strategy tree applies to --method recurse");
  const GraphFile file = read_graph_file(a.file);
  const auto start = std::chrono::steady_clock::now();

  Poly q;
  std::string trace;
  if (a.method == "expand") {
    q = expand(file.graph, PolyKind::q);
  } else if (a.method == "tree") {
    if (!file.root) throw TreeError("method tree needs a 'root' directive");
    q = q_tree(OrderedRootedTree(file.graph, *file.root, file.child_order));
  } else {
    RecursionOptions opts;
    opts.ternary = a.ternary;
    opts.record_tree = !a.record_tree.empty();
    WeightedGraph core = file.graph;
    Strategy strategy = Strategy::first_vertex();
    if (a.method == "recurse") {
      strategy = recursion_strategy(a, file);
    } else if (a.method == "reduce") {
      ReductionTrace rt = reduce_fully(file.graph);
      trace = rt.to_text();
      core = rt.terminal;
    } else {
      strategy = Strategy::reduce_first();
      opts.edgeless_closure = true;
    }
    if (a.method == "reduce" && !core.has_non_loop_edges()) {
      q = edgeless_closure(core);
      trace += "EdgelessClosure value=" + q.to_string() + "\n";
    } else {
      RecursionResult r = q_recursive(core, strategy, opts);
      q = std::move(r.value);
      if (r.tree) trace += r.tree->to_text();
    }
  }
  q = specialize(q, poly_kind(a.poly));
  const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  if (!a.record_tree.empty()) write_text(a.record_tree, trace);
  out << q.to_string() << '\n';
  if (a.report) err << "method=" << a.method << " poly=" << a.poly << " vertices=" << file.graph.size()
                    << " time_ms=" << ms << '\n';
  return kOk;
}

int compose_cmd(const ComposeArgs& a, std::ostream& out, std::ostream& err) {
  const GraphFile h = read_graph_file(a.h_file);
  const GraphFile k = read_graph_file(a.k_file);
  const WeightedGraph g = compose(h.graph, k.graph, a.shared);
  const CompositionWeights w = composition_weights(h.graph, a.shared);
  const Poly via_weights = q_composed(h.graph, a.shared, k.graph);
  const Poly via_expansion = q_expand(g);
  if (via_weights != via_expansion) {
    err << "error: composed q " << via_weights.to_string() << " differs from expansion " << via_expansion.to_string()
        << '\n';
    return kCheckFailed;
  }
  out << via_weights.to_string() << '\n';
  out << "alpha(" << a.shared << ")=" << w.alpha_a.to_string() << '\n';
  out << "beta(" << a.shared << ")=" << w.beta_a.to_string() << '\n';
  out << "beta(" << complement_marker(k.graph, a.shared) << ")=" << w.beta_ac.to_string() << '\n';
  return kOk;
}

int stats_cmd(const StatsArgs& a, std::ostream& out) {
  const GraphFile file = read_graph_file(a.file);
  const WeightedGraph& g = file.graph;
  out << "vertices=" << g.size() << " edges=" << g.edge_count() << " simple=" << (is_simple(g) ? "yes" : "no")
      << '\n';
  if (is_simple(g)) {
    out << "gamma=" << gamma(g) << '\n';
  } else {
    out << "gamma=n/a\n";
  }
  out << "epsilon=" << epsilon(g) << '\n';
  std::vector<std::pair<std::string, Strategy>> strategies{{"first", Strategy::first_vertex()},
                                                           {"reduce-first", Strategy::reduce_first()}};
  if (file.root) strategies.emplace_back("tree", Strategy::tree(*file.root, file.child_order));
  bool all = true;
  for (const auto& [name, s] : strategies) {
    for (bool ternary : {false, true}) {
      const LeafBoundReport r = check_leaf_bound(g, s, ternary);
      all = all && r.satisfied;
      out << "strategy=" << name << " branching=" << (ternary ? "ternary" : "binary") << " leaves=" << r.leaves
          << " active=" << r.active_nodes << " connected_leaves=" << r.connected_leaves
          << " bound=" << (r.satisfied ? "ok" : "violated") << '\n';
    }
  }
  return all ? kOk : kCheckFailed;
}

int selftest_cmd(const SelftestArgs& a, std::ostream& out) {
  SelftestOptions opts;
  opts.max_n = a.max_n;
  opts.samples = a.samples;
  opts.seed = a.seed;
  opts.inject_pivot_fault = a.inject_pivot_fault;
  const SelftestReport report = run_selftest(opts);
  out << report.summary();
  if (report.passed()) {
    out << "all suites passed\n";
    return kOk;
  }
  for (const auto& s : report.suites) {
    if (s.failures == 0 || !s.reproducer) continue;
    out << "# reproducer for " << s.name << ": " << s.first_failure << '\n' << *s.reproducer;
  }
  return kCheckFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted interlace polynomials of looped graphs"};
  app.require_subcommand(1);

  ComputeArgs compute_args;
  auto* c = app.add_subcommand("compute", "Print the canonical polynomial of a graph file");
  c->add_option("file", compute_args.file, "Graph file")->required()->check(CLI::ExistingFile);
  c->add_option("--poly", compute_args.poly, "q, qn (x = 2) or qr (y = 2)")
      ->check(CLI::IsMember({"q", "qn", "qr"}))
      ->capture_default_str();
  c->add_option("--method", compute_args.method, "expand, recurse, reduce, tree or auto")
      ->check(CLI::IsMember({"expand", "recurse", "reduce", "tree", "auto"}))
      ->capture_default_str();
  c->add_option("--strategy", compute_args.strategy, "Vertex choice for --method recurse: first or tree")
      ->check(CLI::IsMember({"first", "tree"}))
      ->capture_default_str();
  c->add_flag("--ternary", compute_args.ternary, "Use the three-term pivot step");
  c->add_option("--record-tree", compute_args.record_tree, "Write the computation trace to this path");
  c->add_flag("--report", compute_args.report, "Print method and timing on standard error");

  ComposeArgs compose_args;
  auto* m = app.add_subcommand("compose", "q of a composition H*K, by re-weighting and by expansion");
  m->add_option("H", compose_args.h_file, "Graph file for H")->required()->check(CLI::ExistingFile);
  m->add_option("K", compose_args.k_file, "Graph file for K")->required()->check(CLI::ExistingFile);
  m->add_option("--shared", compose_args.shared, "The shared marker vertex")->required();

  StatsArgs stats_args;
  auto* s = app.add_subcommand("stats", "Vertex-nullity invariants and computation-tree leaf bounds");
  s->add_option("file", stats_args.file, "Graph file")->required()->check(CLI::ExistingFile);

  SelftestArgs selftest_args;
  auto* t = app.add_subcommand("selftest", "Run the invariant suites");
  t->add_option("--max-n", selftest_args.max_n, "Largest random instance")->capture_default_str();
  t->add_option("--samples", selftest_args.samples, "Random instances per suite")->capture_default_str();
  t->add_option("--seed", selftest_args.seed, "Random seed")->capture_default_str();
  t->add_flag("--inject-pivot-fault", selftest_args.inject_pivot_fault)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (c->parsed()) return compute(compute_args, out, err);
    if (m->parsed()) return compose_cmd(compose_args, out, err);
    if (s->parsed()) return stats_cmd(stats_args, out);
    return selftest_cmd(selftest_args, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const GraphFileError& e) {
    err << e.what() << '\n';
    return e.kind() == GraphFileError::Kind::Syntax ? kParse : kSemantic;
  } catch (const GraphError& e) {
    err << "error: " << e.what() << '\n';
    return kSemantic;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kCheckFailed;
  }
}

}  // namespace interlace::cli
