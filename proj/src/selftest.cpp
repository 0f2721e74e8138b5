#include "interlace/selftest.hpp"

#include "interlace/composition.hpp"
#include "interlace/expansion.hpp"
#include "interlace/graph_file.hpp"
#include "interlace/identities.hpp"
#include "interlace/random_graphs.hpp"
#include "interlace/recursion.hpp"
#include "interlace/reduction.hpp"
#include "interlace/trees.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <sstream>

namespace interlace {

bool SelftestReport::passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.failures == 0; });
}

std::string SelftestReport::summary() const {
  std::ostringstream out;
  for (const auto& s : suites) {
    out << s.name << ": " << s.checks << " checks, " << s.failures << " failures";
    if (s.failures) out << " (first: " << s.first_failure << ')';
    out << '\n';
  }
  return out.str();
}

namespace {

using GraphCheck = std::function<bool(const WeightedGraph&)>;

bool holds(const GraphCheck& check, const WeightedGraph& g) {
  try {
    return check(g);
  } catch (const std::exception&) {
    return false;
  }
}

// Greedily drops vertices and resets weights while the check keeps failing.
WeightedGraph shrink(const GraphCheck& check, WeightedGraph g) {
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t v = 0; v < g.size(); ++v) {
      WeightedGraph smaller = delete_vertex(g, g.label(v));
      if (!holds(check, smaller)) {
        g = std::move(smaller);
        progress = true;
        break;
      }
    }
  }
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (g.alpha(v).is_one() && g.beta(v).is_one()) continue;
    WeightedGraph plain = g;
    plain.set_weights(v, 1, 1);
    if (!holds(check, plain)) g = std::move(plain);
  }
  return g;
}

class Suite {
 public:
  explicit Suite(std::string name) { result_.name = std::move(name); }

  void graph(const std::string& what, const WeightedGraph& g, const GraphCheck& check) {
    ++result_.checks;
    if (holds(check, g)) return;
    fail(what, write_graph_file(shrink(check, g)));
  }

  // For checks whose instance is not a single graph.
  void record(const std::string& what, bool ok, const std::function<std::string()>& reproducer) {
    ++result_.checks;
    if (!ok) fail(what, reproducer());
  }

  SuiteResult take() { return std::move(result_); }

 private:
  void fail(const std::string& what, std::string text) {
    if (result_.failures++ == 0) {
      result_.first_failure = what;
      result_.reproducer = std::move(text);
    } else if (result_.reproducer && text.size() < result_.reproducer->size()) {
      result_.reproducer = std::move(text);
    }
  }

  SuiteResult result_;
};

struct RecursionConfig {
  const char* name;
  Strategy strategy;
  RecursionOptions options;
};

std::vector<RecursionConfig> recursion_configs() {
  std::vector<RecursionConfig> out;
  for (bool ternary : {false, true}) {
    RecursionOptions o;
    o.ternary = ternary;
    out.push_back({ternary ? "first/ternary" : "first/binary", Strategy::first_vertex(), o});
    out.push_back({ternary ? "reduce-first/ternary" : "reduce-first/binary", Strategy::reduce_first(), o});
    o.edgeless_closure = true;
    o.record_tree = true;
    out.push_back({ternary ? "reduce-first/ternary/closure" : "reduce-first/binary/closure",
                   Strategy::reduce_first(), o});
  }
  return out;
}

void recursion_checks(Suite& s, const WeightedGraph& g) {
  s.graph("serial and parallel expansion agree", g,
          [](const WeightedGraph& h) { return serial::expand(h, PolyKind::q) == q_expand(h); });
  for (const auto& c : recursion_configs()) {
    s.graph(std::string("recursion ") + c.name + " equals expansion", g, [&c](const WeightedGraph& h) {
      auto r = q_recursive(h, c.strategy, c.options);
      if (r.tree && r.tree->evaluate() != r.value) return false;
      return r.value == q_expand(h);
    });
  }
}

void reduction_checks(Suite& s, const WeightedGraph& g) {
  s.graph("full reduction preserves q", g, [](const WeightedGraph& h) {
    auto trace = reduce_fully(h);
    Poly value = trace.reduced_to_edgeless() ? *closed_form_q(trace) : q_recursive(trace.terminal).value;
    return value == q_expand(h);
  });
  for (auto first : {ReductionKind::Pendant, ReductionKind::IdenticalTwin, ReductionKind::FraternalTwin}) {
    s.graph(std::string("single ") + std::string(to_string(first)) + " step preserves q", g,
            [first](const WeightedGraph& h) {
              ReductionScan scan;
              scan.kind_order = {first, ReductionKind::Pendant, ReductionKind::IdenticalTwin};
              if (first != ReductionKind::FraternalTwin) scan.kind_order[2] = ReductionKind::FraternalTwin;
              auto step = find_reduction(h, scan);
              return !step || q_expand(apply_reduction(h, *step)) == q_expand(h);
            });
  }
  s.graph("whole twin classes reduce in one step", g, [](const WeightedGraph& h) {
    for (auto kind : {ReductionKind::IdenticalTwin, ReductionKind::FraternalTwin}) {
      for (std::size_t a = 0; a < h.size(); ++a) {
        std::vector<std::size_t> cls{a};
        for (std::size_t b = a + 1; b < h.size(); ++b) {
          bool all = std::all_of(cls.begin(), cls.end(), [&](std::size_t c) {
            return kind == ReductionKind::IdenticalTwin ? identical_twins(h, c, b) : fraternal_twins(h, c, b);
          });
          if (all) cls.push_back(b);
        }
        if (cls.size() < 2) continue;
        std::vector<std::string> labels;
        for (auto c : cls) labels.push_back(h.label(c));
        WeightedGraph r = kind == ReductionKind::IdenticalTwin ? identical_twin_reduce(h, labels)
                                                               : fraternal_twin_reduce(h, labels);
        if (q_expand(r) != q_expand(h)) return false;
        break;
      }
    }
    return true;
  });
}

std::optional<std::size_t> first_unlooped(const WeightedGraph& g) {
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (!g.looped(v)) return v;
  }
  return std::nullopt;
}

std::optional<std::pair<std::size_t, std::size_t>> first_unlooped_edge(const WeightedGraph& g) {
  for (std::size_t a = 0; a < g.size(); ++a) {
    for (std::size_t b = a + 1; b < g.size(); ++b) {
      if (!g.looped(a) && !g.looped(b) && g.adjacent(a, b)) return std::pair{a, b};
    }
  }
  return std::nullopt;
}

void identity_checks(Suite& s, const WeightedGraph& g) {
  s.graph("local complement deletion identity", g, [](const WeightedGraph& h) {
    auto a = first_unlooped(h);
    return !a || local_complement_identity(h, h.label(*a));
  });
  s.graph("pivot deletion identity", g, [](const WeightedGraph& h) {
    auto e = first_unlooped_edge(h);
    return !e || pivot_deletion_identity(h, h.label(e->first), h.label(e->second));
  });
  s.graph("pivot with swapped weights scales q by (x-1)^2", g, [](const WeightedGraph& h) {
    auto e = first_unlooped_edge(h);
    return !e || pivot_reweight_identity_check(h, h.label(e->first), h.label(e->second));
  });
  s.graph("q of a disjoint union is the product", g, [](const WeightedGraph& h) {
    WeightedGraph other;
    other.add_vertex("w_0", true, Poly::variable("p"), 2);
    other.add_vertex("w_1");
    other.add_edge("w_0", "w_1");
    return union_multiplicativity(h, other);
  });
  s.graph("linear re-weighting of one vertex", g, [](const WeightedGraph& h) {
    return h.empty() || linear_reweight_identity(h, h.label(0), Poly::variable("r1"), Poly::variable("r2"));
  });
  s.graph("weights add at one vertex", g, [](const WeightedGraph& h) {
    return h.empty() || weight_additivity(h, h.label(h.size() - 1), Poly::variable("a1"), Poly::variable("b1"),
                                          Poly::variable("a2"), Poly::variable("b2"));
  });
  s.graph("cleared vertex-nullity substitution", g, [](const WeightedGraph& h) {
    return nullity_substitution_identity(h);
  });
}

void bound_checks(Suite& s, const WeightedGraph& g) {
  s.graph("leaf counts meet epsilon/2 and gamma/2", g, [](const WeightedGraph& h) {
    auto reports = check_leaf_bound(h);
    return std::all_of(reports.begin(), reports.end(), [](const LeafBoundReport& r) { return r.satisfied; });
  });
}

void characterization_checks(Suite& s, const WeightedGraph& g) {
  s.graph("epsilon is positive exactly without simple components", g, [](const WeightedGraph& h) {
    bool simple_component = false;
    for (const auto& comp : connected_components(h)) {
      simple_component |= std::none_of(comp.begin(), comp.end(), [&](std::size_t v) { return h.looped(v); });
    }
    return (epsilon(h) > 0) == !simple_component;
  });
  s.graph("connected looped graphs have epsilon above 1", g, [](const WeightedGraph& h) {
    if (h.empty() || !h.has_loops() || connected_components(h).size() != 1) return true;
    return epsilon(h) > 1;
  });
  s.graph("simplicity verdicts coincide", g, [](const WeightedGraph& h) { return simplicity_test(h).consistent(); });
}

void file_checks(Suite& s, const WeightedGraph& g) {
  s.graph("graph file round trip", g, [](const WeightedGraph& h) {
    return parse_graph_file(write_graph_file(h)).graph == h;
  });
}

void composition_check(Suite& s, const WeightedGraph& h, const WeightedGraph& k) {
  auto repro = [&] { return "# H\n" + write_graph_file(h) + "# K\n" + write_graph_file(k); };
  bool ok = false;
  bool identities = false;
  try {
    ok = q_composed(h, "a", k) == q_expand(compose(h, k, "a"));
    identities = check_type_sum_identities(h, "a").all();
  } catch (const std::exception&) {
    ok = false;
  }
  s.record("composed q equals expansion of the composition", ok, repro);
  s.record("type-sum identities", identities, repro);
}

void tree_check(Suite& s, const OrderedRootedTree& t) {
  auto repro = [&] {
    GraphFile f{t.graph(), t.root_label(), t.child_order()};
    return write_graph_file(f);
  };
  bool ok = false;
  try {
    const Poly q = q_expand(t.graph());
    ok = q_tree(t) == q && q_tree_unweighted(t) == q_expand(unweighted(t.graph())) &&
         verify_tree_strategy_bijection(t);
  } catch (const std::exception&) {
    ok = false;
  }
  s.record("tree formulas and strategy bijection", ok, repro);
}

// H on h0.. plus an unlooped, unweighted marker "a".
WeightedGraph with_marker(const WeightedGraph& base, const std::string& prefix, Rng* rng) {
  WeightedGraph g;
  for (std::size_t v = 0; v < base.size(); ++v) {
    g.add_vertex(prefix + std::to_string(v), base.looped(v), base.alpha(v), base.beta(v));
  }
  for (std::size_t u = 0; u < base.size(); ++u) {
    for (std::size_t v = u + 1; v < base.size(); ++v) {
      if (base.adjacent(u, v)) g.set_edge(u, v, true);
    }
  }
  const auto a = g.add_vertex("a");
  for (std::size_t v = 0; v + 1 < g.size(); ++v) {
    if (rng ? std::bernoulli_distribution(0.6)(*rng) : true) g.set_edge(a, v, true);
  }
  return g;
}

}  // namespace

SelftestReport run_selftest(const SelftestOptions& opts) {
  std::unique_ptr<fault::ScopedPivotFault> fault_guard;
  if (opts.inject_pivot_fault) fault_guard = std::make_unique<fault::ScopedPivotFault>();

  Suite recursion("recursion"), reductions("reductions"), identities("identities"), bounds("leaf-bounds"),
      characterizations("characterizations"), files("graph-files"), composition("composition"), trees("trees");

  auto all_graph_suites = [&](const WeightedGraph& g) {
    recursion_checks(recursion, g);
    reduction_checks(reductions, g);
    identity_checks(identities, g);
    bound_checks(bounds, g);
    characterization_checks(characterizations, g);
    file_checks(files, g);
  };

  const std::size_t exhaustive_n = std::min<std::size_t>(4, opts.max_n);
  for (std::size_t n = 0; n <= exhaustive_n; ++n) {
    for (std::uint64_t code = 0; code < graph_code_count(n); ++code) {
      const WeightedGraph g = graph_from_code(n, code);
      all_graph_suites(g);
      if (n >= 1 && !g.has_loops() && g.edge_count() + 1 == n && connected_components(g).size() == 1) {
        for (std::size_t r = 0; r < n; ++r) tree_check(trees, OrderedRootedTree(g, g.label(r)));
      }
      if (n >= 1 && n <= 3) {
        const WeightedGraph h = with_marker(g, "h", nullptr);
        WeightedGraph k;
        k.add_vertex("a");
        k.add_vertex("k0", true);
        k.add_vertex("k1");
        k.add_edge("a", "k0");
        k.add_edge("k0", "k1");
        composition_check(composition, h, k);
      }
    }
  }

  if (opts.max_n >= 1) {
    Rng rng(opts.seed);
    auto size = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
    for (std::size_t i = 0; i < opts.samples; ++i) {
      all_graph_suites(random_graph(rng, size(1, opts.max_n)));
      tree_check(trees, random_ordered_tree(rng, size(1, std::min<std::size_t>(opts.max_n, 10))));
      if (opts.max_n >= 2) {
        const WeightedGraph hb = random_graph(rng, size(1, std::min<std::size_t>(opts.max_n, 6) - 1));
        const WeightedGraph kb = random_graph(rng, size(0, std::min<std::size_t>(opts.max_n, 5) - 1));
        composition_check(composition, with_marker(hb, "h", &rng), with_marker(kb, "k", &rng));
      }
    }
  }

  if (opts.max_n == 0) {
    recursion.record("empty graph has q = 1", q_recursive(WeightedGraph{}).value.is_one(),
                     [] { return std::string(); });
  }

  SelftestReport report;
  for (Suite* s : {&recursion, &reductions, &identities, &bounds, &characterizations, &files, &composition, &trees}) {
    report.suites.push_back(s->take());
  }
  return report;
}

}  // namespace interlace
