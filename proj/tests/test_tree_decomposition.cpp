#include <gtest/gtest.h>

#include "dfvs/tree_decomposition.hpp"
#include "oracles.hpp"

using namespace dfvs;

namespace {

DiGraph triangle() { return DiGraph(3, {{1, 2}, {2, 3}, {3, 1}}); }

DiGraph grid3() {
  std::vector<Arc> arcs;
  auto id = [](int r, int c) { return r * 3 + c + 1; };
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      if (c + 1 < 3) arcs.push_back({id(r, c), id(r, c + 1)});
      if (r + 1 < 3) arcs.push_back({id(r, c), id(r + 1, c)});
    }
  return DiGraph(9, arcs);
}

DiGraph cycle(int n) {
  std::vector<Arc> arcs;
  for (int i = 1; i <= n; ++i) arcs.push_back({i, i % n + 1});
  return DiGraph(n, arcs);
}

}  // namespace

TEST(ParseTd, OneBagTriangle) {
  auto td = parse_td("s td 1 3 3\nb 1 1 2 3\n", triangle());
  EXPECT_EQ(td.width(), 2);
  EXPECT_EQ(td.node_count(), 1);
}

TEST(ParseTd, MissingArcIsNamed) {
  try {
    parse_td("s td 2 2 3\nb 1 2 3\nb 2 3 1\n1 2\n", triangle());
    FAIL();
  } catch (const DecompositionError& e) {
    EXPECT_NE(std::string(e.what()).find("(1,2)"), std::string::npos);
  }
}

TEST(ParseTd, PathOfFourVertices) {
  DiGraph path(4, {{1, 2}, {2, 3}, {3, 4}});
  auto td = parse_td("s td 3 2 4\nb 1 1 2\nb 2 2 3\nb 3 3 4\n1 2\n2 3\n", path);
  EXPECT_EQ(td.width(), 1);
}

TEST(ParseTd, AxiomViolations) {
  // vertex 1 in two non-adjacent bags
  EXPECT_THROW(parse_td("s td 3 2 3\nb 1 1 2\nb 2 2 3\nb 3 3 1\n1 2\n2 3\n", triangle()), DecompositionError);
  EXPECT_THROW(parse_td("s td 1 2 3\nb 1 1 2\n", triangle()), DecompositionError);
  EXPECT_THROW(parse_td("s td 2 3 3\nb 1 1 2 3\nb 2 1\n", triangle()), DecompositionError);
  EXPECT_THROW(parse_td("s tw 1 3 3\nb 1 1 2 3\n"), ParseError);
  EXPECT_THROW(parse_td("s td 1 3 3\nb 2 1 2 3\n"), ParseError);
}

TEST(ParseTd, WriteRoundTrip) {
  auto td = td_heuristic(grid3());
  std::ostringstream out;
  write_td(out, td, 9);
  auto back = parse_td(out.str(), grid3());
  EXPECT_EQ(back.bags, td.bags);
  EXPECT_EQ(back.edges, td.edges);
}

TEST(ExactTd, Examples) {
  auto t = td_exact_small(triangle());
  validate_td(triangle(), t);
  EXPECT_EQ(t.width(), 2);
  DiGraph tree(6, {{1, 2}, {1, 3}, {3, 4}, {3, 5}, {5, 6}});
  auto tt = td_exact_small(tree);
  validate_td(tree, tt);
  EXPECT_EQ(tt.width(), 1);
  auto g = td_exact_small(grid3());
  validate_td(grid3(), g);
  EXPECT_EQ(g.width(), 3);
  EXPECT_THROW(td_exact_small(DiGraph(13, {})), CapExceeded);
}

TEST(ExactTd, GridWidthMatchesAllOrders) { EXPECT_EQ(testing_oracles::treewidth_by_all_orders(grid3()), 3); }

TEST(ExactTd, MatchesAllOrdersOnRandomGraphs) {
  SplitMix64 rng(17);
  for (int it = 0; it < 40; ++it) {
    DiGraph g = testing_oracles::random_digraph(rng, rng.range(1, 7), 1, 4);
    auto td = td_exact_small(g);
    validate_td(g, td);
    EXPECT_EQ(std::max(td.width(), 0), testing_oracles::treewidth_by_all_orders(g));
  }
}

TEST(HeuristicTd, ValidOnExamples) {
  for (const DiGraph& g : {triangle(), grid3(), DiGraph(4, {{1, 2}, {2, 3}, {3, 4}})}) validate_td(g, td_heuristic(g));
  auto c = td_heuristic(cycle(6));
  validate_td(cycle(6), c);
  EXPECT_EQ(c.width(), 2);
}

TEST(MakeNice, TriangleChain) {
  auto nd = make_nice(td_exact_small(triangle()));
  validate_nice(triangle(), nd);
  ASSERT_EQ(nd.nodes.size(), 7u);
  EXPECT_EQ(nd.nodes[0].kind, NodeKind::Leaf);
  for (int i = 1; i <= 3; ++i) EXPECT_EQ(nd.nodes[i].kind, NodeKind::Introduce);
  for (int i = 4; i <= 6; ++i) EXPECT_EQ(nd.nodes[i].kind, NodeKind::Forget);
  EXPECT_EQ(nd.root, 6);
  EXPECT_EQ(nd.width(), 2);
}

TEST(MakeNice, NiceInputStaysNice) {
  auto nd = make_nice(td_exact_small(grid3()));
  auto again = make_nice(nd.plain());
  validate_nice(grid3(), again);
  EXPECT_EQ(again.width(), nd.width());
}

TEST(MakeNice, PreservesWidthOnRandomGraphs) {
  SplitMix64 rng(23);
  for (int it = 0; it < 60; ++it) {
    DiGraph g = testing_oracles::random_digraph(rng, rng.range(1, 9), 1, 4);
    auto td = td_heuristic(g);
    for (int root = 0; root < td.node_count(); root += 3) {
      auto nd = make_nice(td, root);
      validate_nice(g, nd);
      EXPECT_EQ(nd.width(), td.width());
    }
  }
}

TEST(MakeNice, ValidatorRejectsBrokenKinds) {
  auto nd = make_nice(td_exact_small(triangle()));
  auto bad = nd;
  bad.nodes[2].vertex = 3;
  EXPECT_THROW(validate_nice(triangle(), bad), DecompositionError);
  bad = nd;
  bad.nodes[0].bag = {1};
  EXPECT_THROW(validate_nice(triangle(), bad), DecompositionError);
}
