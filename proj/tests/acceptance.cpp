// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Counts and time limits are fixed here; seeds are fixed so reruns match.

#include "../tools/cli.hpp"
#include "interlace/composition.hpp"
#include "interlace/expansion.hpp"
#include "interlace/graph_file.hpp"
#include "interlace/identities.hpp"
#include "interlace/random_graphs.hpp"
#include "interlace/recursion.hpp"
#include "interlace/reduction.hpp"
#include "interlace/selftest.hpp"
#include "interlace/trees.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace interlace;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Verdict {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = "first failure: " + what;
    pass = pass && ok;
  }
};

// Adds k copies of v that are pairwise twins of v of the requested kind.
std::vector<std::string> add_twins(WeightedGraph& g, std::size_t v, std::size_t k, bool fraternal, Rng& rng) {
  std::vector<std::string> cls{g.label(v)};
  const bool looped = g.looped(v);
  // Identical: unlooped non-adjacent or looped adjacent. Fraternal: the other two.
  const bool adjacent = fraternal ? !looped : looped;
  const auto outside = g.neighbors(v);
  for (std::size_t i = 0; i < k; ++i) {
    const std::string label = "t" + std::to_string(i);
    const auto t = g.add_vertex(label, looped, random_weight(rng, 10 + i, true), random_weight(rng, 10 + i, false));
    for (auto u : outside) g.set_edge(t, u, true);
    for (const auto& other : cls) g.set_edge(t, g.index_of(other), adjacent);
    cls.push_back(label);
  }
  return cls;
}

// Recursion against subset expansion.
Verdict oracle_equivalence() {
  Verdict r;
  const auto start = Clock::now();
  std::size_t exhaustive = 0, random = 0;
  for (std::size_t n = 0; n <= 4; ++n) {
    for (std::uint64_t c = 0; c < graph_code_count(n); ++c, ++exhaustive) {
      const WeightedGraph g = graph_from_code(n, c);
      const Poly q = q_expand(g);
      for (bool ternary : {false, true}) {
        RecursionOptions o;
        o.ternary = ternary;
        r.require(q_recursive(g, Strategy::first_vertex(), o).value == q, write_graph_file(g));
        r.require(q_recursive(g, Strategy::reduce_first(), o).value == q, write_graph_file(g));
      }
    }
  }
  Rng rng(1001);
  for (; random < 500; ++random) {
    const WeightedGraph g = random_graph(rng, 5 + random % 5);
    const Poly q = q_expand(g);
    RecursionOptions o;
    o.ternary = random % 2 == 1;
    r.require(q_recursive(g, Strategy::first_vertex(), o).value == q, write_graph_file(g));
    r.require(q_recursive(g, Strategy::reduce_first(), o).value == q, write_graph_file(g));
  }
  const double s = seconds_since(start);
  r.require(exhaustive == 1 + 2 + 8 + 64 + 1024, "exhaustive count");
  r.require(s < 60.0, "time limit 60 s exceeded");
  std::ostringstream d;
  d << exhaustive << " exhaustive + " << random << " random graphs, " << s << " s (limit 60 s)";
  if (r.pass) r.detail = d.str();
  return r;
}

// Pendant, identical-twin and fraternal-twin reductions keep q.
Verdict reduction_soundness() {
  Verdict r;
  Rng rng(1002);
  std::size_t pendant = 0, identical = 0, fraternal = 0, kfold = 0;
  for (int i = 0; pendant < 200; ++i) {
    WeightedGraph g = random_graph(rng, 1 + i % 6);
    const std::string anchor = g.label(i % g.size());
    g.add_vertex("p", false, random_weight(rng, 20, true), random_weight(rng, 20, false));
    g.add_edge("p", anchor);
    r.require(q_expand(pendant_reduce(g, anchor, "p")) == q_expand(g), "pendant\n" + write_graph_file(g));
    ++pendant;
  }
  for (bool frat : {false, true}) {
    std::size_t& count = frat ? fraternal : identical;
    for (int i = 0; count < 200; ++i) {
      WeightedGraph g = random_graph(rng, 1 + i % 5);
      const std::size_t k = 1 + i % 4;  // class size k + 1: pairwise, then k-fold
      const auto cls = add_twins(g, i % g.size(), k, frat, rng);
      const WeightedGraph red = frat ? fraternal_twin_reduce(g, cls) : identical_twin_reduce(g, cls);
      r.require(q_expand(red) == q_expand(g), (frat ? "fraternal\n" : "identical\n") + write_graph_file(g));
      ++count;
      if (k > 1) ++kfold;
    }
  }
  std::ostringstream d;
  d << pendant << " pendant, " << identical << " identical, " << fraternal << " fraternal instances (" << kfold
    << " k-fold)";
  if (r.pass) r.detail = d.str();
  return r;
}

// Trees and pendant-twin graphs reduce to edgeless graphs.
Verdict reduction_closure() {
  Verdict r;
  Rng rng(1003);
  std::size_t graphs = 0, checked = 0;
  double worst_25 = 0, worst_12 = 0;
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = 1 + i % 25;
    const WeightedGraph g = i % 2 ? random_tree(rng, n) : random_pendant_twin_graph(rng, n);
    const auto start = Clock::now();
    const ReductionTrace t = reduce_fully(g);
    const double s = seconds_since(start);
    if (n == 25) worst_25 = std::max(worst_25, s);
    if (n == 12) worst_12 = std::max(worst_12, s);
    ++graphs;
    r.require(t.reduced_to_edgeless(), "not reduced\n" + write_graph_file(g));
    if (n <= 12) {
      const auto q = closed_form_q(t);
      r.require(q && *q == q_expand(g), "closed form\n" + write_graph_file(g));
      ++checked;
    }
  }
  r.require(worst_25 < 1.0, "reduction at 25 vertices took over 1 s");
  // The symbolic runs are dominated by weight arithmetic; unweighted runs time
  // the search alone.
  std::ostringstream scaling;
  for (std::size_t n : {6, 12, 25}) {
    double worst = 0;
    for (int i = 0; i < 20; ++i) {
      const WeightedGraph g = random_pendant_twin_graph(rng, n, {0.5, 0.3, false, false});
      const auto start = Clock::now();
      r.require(reduce_fully(g).reduced_to_edgeless(), "not reduced\n" + write_graph_file(g));
      worst = std::max(worst, seconds_since(start));
    }
    scaling << " " << n << ":" << worst * 1e3 << "ms";
  }
  std::ostringstream d;
  d << graphs << " graphs reduced, " << checked << " closed forms checked, worst weighted reduction " << worst_12
    << " s at 12 and " << worst_25 << " s at 25 vertices (limit 1 s); unweighted search" << scaling.str();
  if (r.pass) r.detail = d.str();
  return r;
}

// Composition through the type-sum weights.
Verdict composition() {
  Verdict r;
  Rng rng(1004);
  std::size_t looped_branch = 0, loopless_branch = 0;
  for (int i = 0; looped_branch + loopless_branch < 120 || looped_branch < 40 || loopless_branch < 40; ++i) {
    const std::size_t hn = 1 + i % 5, kn = 1 + i % 4;  // |H| <= 6, |K| <= 5 with the marker
    WeightedGraph h = random_graph(rng, hn, {0.5, i % 2 ? 0.4 : 0.0, true, true});
    WeightedGraph k;
    const WeightedGraph kb = random_graph(rng, kn);
    for (std::size_t v = 0; v < kn; ++v) k.add_vertex("k" + std::to_string(v), kb.looped(v), kb.alpha(v), kb.beta(v));
    for (std::size_t u = 0; u < kn; ++u) {
      for (std::size_t v = u + 1; v < kn; ++v) k.set_edge(u, v, kb.adjacent(u, v));
    }
    const auto ha = h.add_vertex("a");
    const auto ka = k.add_vertex("a");
    std::bernoulli_distribution coin(0.5);
    for (std::size_t v = 0; v < hn; ++v) h.set_edge(ha, v, v == 0 || coin(rng));
    for (std::size_t v = 0; v < kn; ++v) k.set_edge(ka, v, v == 0 || coin(rng));

    const std::string repro = write_graph_file(h) + "--\n" + write_graph_file(k);
    try {
      const CompositionWeights w = composition_weights(h, "a");
      r.require(q_composed(h, "a", k) == q_expand(compose(h, k, "a")), "q_composed\n" + repro);
      r.require(check_type_sum_identities(h, "a").all(), "type-sum identities\n" + repro);
      if (delete_vertex(h, "a").has_loops()) {
        ++looped_branch;
      } else {
        r.require(w.beta_ac.is_zero(), "beta(a_c) nonzero without loops\n" + repro);
        ++loopless_branch;
      }
    } catch (const std::logic_error& e) {
      r.require(false, std::string("guard fired: ") + e.what() + "\n" + repro);
      ++loopless_branch;
    }
  }
  std::ostringstream d;
  d << looped_branch + loopless_branch << " pairs (" << looped_branch << " with loops in H-a, " << loopless_branch
    << " without)";
  if (r.pass) r.detail = d.str();
  return r;
}

// Trees.
Verdict trees() {
  Verdict r;
  Rng rng(1005);
  std::size_t count = 0;
  for (; count < 200; ++count) {
    const auto t = random_ordered_tree(rng, 1 + count % 10);
    const std::string repro = write_graph_file(GraphFile{t.graph(), t.root_label(), t.child_order()});
    r.require(q_tree(t) == q_expand(t.graph()), "weighted tree\n" + repro);
    const OrderedRootedTree tu(unweighted(t.graph()), t.root_label(), t.child_order());
    r.require(q_tree_unweighted(tu) == q_expand(tu.graph()), "unweighted tree\n" + repro);
    std::set<std::set<std::string>> covers;
    for (const auto& c : es_covers(t)) {
      const auto l = c.labels(t);
      covers.emplace(l.begin(), l.end());
    }
    r.require(covers == oracle::es_covers_by_leaf_removal(t), "leaf-removal recursion\n" + repro);
    r.require(verify_tree_strategy_bijection(t), "leaf/cover bijection\n" + repro);
  }
  if (r.pass) r.detail = std::to_string(count) + " ordered trees with up to 10 vertices";
  return r;
}

// Leaf bounds, for every strategy.
Verdict leaf_bounds() {
  Verdict r;
  std::size_t graphs = 0, runs = 0, simple = 0;
  auto check = [&](const WeightedGraph& g) {
    ++graphs;
    simple += is_simple(g) ? 1 : 0;
    auto reports = check_leaf_bound(g);
    const bool tree = !g.empty() && !g.has_loops() && g.edge_count() + 1 == g.size() && connected_components(g).size() == 1;
    if (tree) {
      for (bool ternary : {false, true}) reports.push_back(check_leaf_bound(g, Strategy::tree(g.label(0)), ternary));
    }
    for (const auto& rep : reports) {
      ++runs;
      r.require(rep.satisfied, "bound violated\n" + write_graph_file(g));
    }
  };
  for (std::size_t n = 0; n <= 4; ++n) {
    for (std::uint64_t c = 0; c < graph_code_count(n); ++c) check(graph_from_code(n, c));
  }
  Rng rng(1006);
  for (int i = 0; i < 300; ++i) check(random_graph(rng, 5 + i % 3, {0.5, 0.3, false, false}));
  for (int i = 0; i < 60; ++i) check(unweighted(random_tree(rng, 5 + i % 3)));
  std::ostringstream d;
  d << graphs << " graphs (" << simple << " simple), " << runs << " strategy runs";
  if (r.pass) r.detail = d.str();
  return r;
}

// Characterizations through the vertex-nullity invariants.
Verdict characterizations() {
  Verdict r;
  std::size_t graphs = 0;
  auto check = [&](const WeightedGraph& g) {
    ++graphs;
    bool simple_component = false;
    for (const auto& comp : connected_components(g)) {
      simple_component |= std::none_of(comp.begin(), comp.end(), [&](std::size_t v) { return g.looped(v); });
    }
    const Integer eps = epsilon(g);
    r.require((eps > 0) == !simple_component, "epsilon sign\n" + write_graph_file(g));
    if (!g.empty() && g.has_loops() && connected_components(g).size() == 1) {
      r.require(eps > 1, "connected looped epsilon\n" + write_graph_file(g));
    }
    r.require(simplicity_test(g).consistent(), "simplicity verdicts\n" + write_graph_file(g));
  };
  for (std::size_t n = 0; n <= 4; ++n) {
    for (std::uint64_t c = 0; c < graph_code_count(n); ++c) check(graph_from_code(n, c));
  }
  Rng rng(1007);
  for (int i = 0; i < 300; ++i) check(random_graph(rng, 1 + i % 7, {0.4, 0.25, false, false}));
  if (r.pass) r.detail = std::to_string(graphs) + " graphs";
  return r;
}

// Polynomial identities.
Verdict identities() {
  Verdict r;
  Rng rng(1008);
  std::size_t lc = 0, pv = 0, un = 0, piv = 0, lin = 0, add = 0, sub = 0;
  while (lc < 100 || pv < 100 || piv < 100) {
    const WeightedGraph g = random_graph(rng, 2 + (lc + pv) % 6);
    for (std::size_t a = 0; a < g.size(); ++a) {
      if (g.looped(a)) continue;
      r.require(local_complement_identity(g, g.label(a)), "local complement\n" + write_graph_file(g));
      ++lc;
      for (std::size_t b = 0; b < g.size(); ++b) {
        if (b == a || g.looped(b) || !g.adjacent(a, b)) continue;
        r.require(pivot_deletion_identity(g, g.label(a), g.label(b)), "pivot deletion\n" + write_graph_file(g));
        ++pv;
        if (a < b) {
          r.require(pivot_reweight_identity_check(g, g.label(a), g.label(b)), "pivot reweighting\n" + write_graph_file(g));
          ++piv;
        }
      }
    }
  }
  for (; un < 100; ++un) {
    const WeightedGraph g1 = random_graph(rng, 1 + un % 4);
    WeightedGraph g2;
    const WeightedGraph b = random_graph(rng, 1 + un % 3);
    for (std::size_t v = 0; v < b.size(); ++v) g2.add_vertex("w" + std::to_string(v), b.looped(v), b.alpha(v), b.beta(v));
    for (std::size_t u = 0; u < b.size(); ++u) {
      for (std::size_t v = u + 1; v < b.size(); ++v) g2.set_edge(u, v, b.adjacent(u, v));
    }
    r.require(union_multiplicativity(g1, g2), "union\n" + write_graph_file(g1) + "--\n" + write_graph_file(g2));
  }
  for (; lin < 100; ++lin) {
    const WeightedGraph g = random_graph(rng, 1 + lin % 6);
    r.require(linear_reweight_identity(g, g.label(lin % g.size()), random_weight(rng, 30, true),
                                       random_weight(rng, 31, false)),
              "linear reweighting\n" + write_graph_file(g));
  }
  for (; add < 100; ++add) {
    const WeightedGraph g = random_graph(rng, 1 + add % 6);
    r.require(weight_additivity(g, g.label(0), random_weight(rng, 40, true), random_weight(rng, 40, false),
                                random_weight(rng, 41, true), random_weight(rng, 41, false)),
              "weight additivity\n" + write_graph_file(g));
  }
  for (; sub < 100; ++sub) {
    const WeightedGraph g = random_graph(rng, sub % 6);
    r.require(nullity_substitution_identity(g), "q/q_N substitution\n" + write_graph_file(g));
  }
  std::ostringstream d;
  d << "local complement " << lc << ", pivot deletion " << pv << ", union " << un << ", pivot reweighting " << piv
    << ", linear reweighting " << lin << ", additivity " << add << ", substitution " << sub;
  if (r.pass) r.detail = d.str();
  return r;
}

std::pair<int, std::string> run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "interlace");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str()};
}

// Byte-identical compute output and reproducible selftest.
Verdict determinism() {
  Verdict r;
  const auto dir = std::filesystem::temp_directory_path() / "interlace_acceptance";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "g.txt").string();
  Rng rng(1009);
  std::size_t files = 0, runs = 0;
  for (; files < 40; ++files) {
    GraphFile f;
    if (files % 2 == 0) {
      const auto t = random_ordered_tree(rng, 1 + files % 9);
      f = GraphFile{t.graph(), t.root_label(), t.child_order()};
    } else {
      f.graph = random_graph(rng, files % 9);
    }
    std::ofstream(path) << write_graph_file(f);
    for (const char* poly : {"q", "qn", "qr"}) {
      const auto ref = run_cli({"compute", "--method", "expand", "--poly", poly, path});
      r.require(ref.first == cli::kOk, "expand failed\n" + write_graph_file(f));
      std::vector<std::vector<std::string>> methods{{"--method", "expand"},
                                                    {"--method", "recurse"},
                                                    {"--method", "recurse", "--ternary"},
                                                    {"--method", "reduce"},
                                                    {"--method", "auto"}};
      if (f.root) {
        methods.push_back({"--method", "tree"});
        methods.push_back({"--method", "recurse", "--strategy", "tree"});
      }
      for (const auto& m : methods) {
        std::vector<std::string> args{"compute", "--poly", poly, path};
        args.insert(args.end(), m.begin(), m.end());
        const auto got = run_cli(args);
        ++runs;
        r.require(got == ref, m[1] + " output differs\n" + write_graph_file(f));
      }
    }
  }
  std::filesystem::remove_all(dir);
  const std::vector<std::string> st{"selftest", "--max-n", "6", "--samples", "40", "--seed", "7"};
  const auto first = run_cli(st);
  const auto second = run_cli(st);
  r.require(first.first == cli::kOk && first == second, "selftest not reproducible");
  std::ostringstream d;
  d << files << " files, " << runs << " compute runs matched, selftest output identical across two runs";
  if (r.pass) r.detail = d.str();
  return r;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"oracle equivalence", oracle_equivalence},
      {"reduction soundness", reduction_soundness},
      {"reduction to edgeless", reduction_closure},
      {"composition", composition},
      {"trees", trees},
      {"leaf-count bounds", leaf_bounds},
      {"characterizations", characterizations},
      {"identities", identities},
      {"determinism", determinism},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    all = all && v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << ": " << v.detail
              << std::endl;
  }
  return all ? 0 : 1;
}
