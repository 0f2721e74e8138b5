#include "../tools/cli.hpp"
#include "interlace/graph_file.hpp"
#include "interlace/random_graphs.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace interlace;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "interlace");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("interlace_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& text) {
    const auto p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  std::filesystem::path dir_;
};

}  // namespace

TEST_F(CliTest, SingleEdge) {
  const auto g = file("k2.txt", "vertex a\nvertex b\nedge a b\n");
  const auto r = run_cli({"compute", g});
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_EQ(r.out, "-2*x + 2*y + x^2\n");
}

TEST_F(CliTest, EdgelessVertexNullity) {
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto g = file("e.txt", write_graph_file(edgeless_graph(n)));
    const auto r = run_cli({"compute", "--poly", "qn", g});
    EXPECT_EQ(r.out, (n == 1 ? std::string("y") : "y^" + std::to_string(n)) + "\n");
  }
}

TEST_F(CliTest, MethodsPrintIdenticalBytes) {
  Rng rng(81);
  for (int i = 0; i < 25; ++i) {
    const auto t = random_ordered_tree(rng, 1 + i % 8);
    const auto g = file("t.txt", write_graph_file(GraphFile{t.graph(), t.root_label(), t.child_order()}));
    for (const char* poly : {"q", "qn", "qr"}) {
      const auto ref = run_cli({"compute", "--method", "expand", "--poly", poly, g});
      ASSERT_EQ(ref.code, cli::kOk) << ref.err;
      for (std::vector<std::string> extra : {std::vector<std::string>{"--method", "recurse"},
                                             {"--method", "recurse", "--ternary"},
                                             {"--method", "recurse", "--strategy", "tree"},
                                             {"--method", "reduce"},
                                             {"--method", "tree"},
                                             {"--method", "auto"}}) {
        std::vector<std::string> args{"compute", "--poly", poly, g};
        args.insert(args.end(), extra.begin(), extra.end());
        EXPECT_EQ(run_cli(args).out, ref.out) << extra[1];
      }
    }
  }
}

TEST_F(CliTest, RecordTreeWritesTrace) {
  const auto g = file("k2.txt", "vertex a\nvertex b\nedge a b\n");
  const auto trace = (dir_ / "trace.txt").string();
  const auto r = run_cli({"compute", "--method", "recurse", "--record-tree", trace, g});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  std::ifstream in(trace);
  std::string first;
  std::getline(in, first);
  EXPECT_EQ(first, "BinaryPivot [a,b] coef=1");
  EXPECT_EQ(run_cli({"compute", "--method", "expand", "--record-tree", trace, g}).code, cli::kUsage);
}

TEST_F(CliTest, ExitCodes) {
  const auto good = file("g.txt", "vertex a\n");
  EXPECT_EQ(run_cli({}).code, cli::kUsage);
  EXPECT_EQ(run_cli({"compute", "--poly", "zz", good}).code, cli::kUsage);
  EXPECT_EQ(run_cli({"compute", (dir_ / "missing.txt").string()}).code, cli::kUsage);

  const auto syntax = run_cli({"compute", file("s.txt", "vertex a\nvertex b$\n")});
  EXPECT_EQ(syntax.code, cli::kParse);
  EXPECT_NE(syntax.err.find("s.txt:2:"), std::string::npos) << syntax.err;

  const auto semantic = run_cli({"compute", file("m.txt", "vertex a\nedge a b\n")});
  EXPECT_EQ(semantic.code, cli::kSemantic);
  EXPECT_NE(semantic.err.find("m.txt:2:8"), std::string::npos) << semantic.err;

  EXPECT_EQ(run_cli({"compute", "--method", "tree", good}).code, cli::kSemantic);
  EXPECT_EQ(run_cli({"compute", "--method", "recurse", "--strategy", "tree", file("c.txt", write_graph_file(cycle_graph(3)))}).code,
            cli::kSemantic);
}

TEST_F(CliTest, StatsForTwoAdjacentLoopedVertices) {
  const auto g = file("l.txt", "vertex a loop\nvertex b loop\nedge a b\n");
  const auto r = run_cli({"stats", g});
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_NE(r.out.find("vertices=2 edges=1 simple=no\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("gamma=n/a\n"), std::string::npos);
  EXPECT_NE(r.out.find("epsilon=2\n"), std::string::npos);
  EXPECT_EQ(r.out.find("violated"), std::string::npos);
}

TEST_F(CliTest, StatsForSimpleGraph) {
  const auto r = run_cli({"stats", file("k2.txt", "vertex a\nvertex b\nedge a b\nroot a\n")});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_NE(r.out.find("gamma=2\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("strategy=tree branching=binary"), std::string::npos);
}

TEST_F(CliTest, ComposePrintsWeights) {
  const auto h = file("h.txt", "vertex v loop\nvertex a\nedge v a\n");
  const auto k = file("k.txt", "vertex a\nvertex w\nedge a w\n");
  const auto r = run_cli({"compose", h, k, "--shared", "a"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  // H * K is the edge v-w with v looped.
  EXPECT_EQ(r.out, "-x + y + x^2\nalpha(a)=0\nbeta(a)=1\nbeta(a~c)=-1 + x\n");
  EXPECT_EQ(run_cli({"compose", h, h, "--shared", "a"}).code, cli::kSemantic);
}

TEST_F(CliTest, SelftestPassesAndCatchesAFault) {
  const auto ok = run_cli({"selftest", "--max-n", "5", "--samples", "20", "--seed", "3"});
  EXPECT_EQ(ok.code, cli::kOk) << ok.out;
  EXPECT_NE(ok.out.find("all suites passed"), std::string::npos);
  const auto bad = run_cli({"selftest", "--max-n", "5", "--samples", "20", "--inject-pivot-fault"});
  EXPECT_EQ(bad.code, cli::kCheckFailed);
  EXPECT_NE(bad.out.find("# reproducer"), std::string::npos) << bad.out;
}
