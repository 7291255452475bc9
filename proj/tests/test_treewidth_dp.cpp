#include <gtest/gtest.h>

#include <functional>

#include "dfvs/oracle.hpp"
#include "dfvs/treewidth_dp.hpp"
#include "oracles.hpp"

using namespace dfvs;

namespace {

DiGraph triangle() { return DiGraph(3, {{1, 2}, {2, 3}, {3, 1}}); }

std::size_t table_law(int b) {
  std::size_t total = 0, choose = 1;
  for (int j = 0; j <= b; ++j) {
    total += choose * detail::factorial(j);
    choose = choose * (b - j) / (j + 1);
  }
  return total;
}

/// Vertices of the subtree below node i.
VertexSet subtree_vertices(const NiceTreeDecomposition& nd, int i) {
  VertexSet out = nd.nodes[i].bag;
  for (int c : nd.nodes[i].children) {
    auto sub = subtree_vertices(nd, c);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return normalized(out);
}

/// T_x[X, sigma] straight from its definition: smallest Y among forgotten
/// vertices such that G_x - (X + Y) has a topological order extending sigma.
int brute_entry(const DiGraph& g, const VertexSet& vx, const VertexSet& bag, const VertexSet& x,
                const Ordering& sigma) {
  VertexSet outside;
  for (Vertex v = 1; v <= g.n(); ++v)
    if (!std::binary_search(vx.begin(), vx.end(), v)) outside.push_back(v);
  VertexSet forgotten;
  for (Vertex v : vx)
    if (!std::binary_search(bag.begin(), bag.end(), v)) forgotten.push_back(v);
  const int f = static_cast<int>(forgotten.size());
  int best = kInfinity;
  for (unsigned y = 0; y < (1u << f); ++y) {
    if (std::popcount(y) >= best) continue;
    VertexSet del = outside;
    del.insert(del.end(), x.begin(), x.end());
    for (int i = 0; i < f; ++i)
      if (y >> i & 1) del.push_back(forgotten[i]);
    if (extendable_ordering(without(g, normalized(del), {}), sigma)) best = std::popcount(y);
  }
  return best;
}

}  // namespace

TEST(TwDfvs, IntroduceExample) {
  DiGraph g(2, {{1, 2}});
  DfvsTable child = dfvs_introduce(g, dfvs_leaf(), {1}, 1);
  DfvsTable t = dfvs_introduce(g, child, {1, 2}, 2);
  EXPECT_EQ(t.at({}, {1, 2}), child.at({}, {1}));
  EXPECT_EQ(t.at({}, {1, 2}), 0);
  EXPECT_EQ(t.at({}, {2, 1}), kInfinity);
  EXPECT_EQ(t.at({2}, {1}), 0);
  EXPECT_EQ(t.size(), table_law(2));
}

TEST(TwDfvs, ForgetExample) {
  DiGraph g(2, {{1, 2}, {2, 1}});
  DfvsTable a = dfvs_introduce(g, dfvs_leaf(), {1}, 1);
  DfvsTable b = dfvs_introduce(g, a, {1, 2}, 2);
  DfvsTable f = dfvs_forget(b, {1}, 2);
  const int expect = std::min({b.at({2}, {1}) + 1, b.at({}, {1, 2}), b.at({}, {2, 1})});
  EXPECT_EQ(f.at({}, {1}), expect);
  EXPECT_EQ(f.at({}, {1}), 1);
}

TEST(TwDfvs, JoinAddsValues) {
  DfvsTable a(VertexSet{1}), b(VertexSet{1});
  a.value = {1, 5};
  b.value = {2, kInfinity};
  auto j = dfvs_join(a, b);
  EXPECT_EQ(j.at({}, {1}), 3);
  EXPECT_EQ(j.at({1}, {}), kInfinity);
}

TEST(TwDfvs, TableSizeLaw) {
  for (int b = 0; b <= 6; ++b) {
    VertexSet bag(b);
    std::iota(bag.begin(), bag.end(), 1);
    EXPECT_EQ(DfvsTable(bag).size(), table_law(b));
  }
}

TEST(TwSolve, Examples) {
  auto nd = make_nice(td_exact_small(triangle()));
  EXPECT_EQ(solve_dfvs_tw(triangle(), nd).optimum, 1);
  EXPECT_EQ(solve_dfas_tw(triangle(), nd).optimum, 1);
  DiGraph dag(4, {{1, 2}, {2, 3}, {1, 3}, {3, 4}});
  EXPECT_EQ(solve_dfvs_tw(dag, auto_nice(dag)).optimum, 0);
  DiGraph anti(2, {{1, 2}, {2, 1}});
  EXPECT_EQ(solve_dfas_tw(anti, auto_nice(anti)).optimum, 1);
}

TEST(TwSolve, RejectsForeignDecomposition) {
  auto nd = make_nice(td_exact_small(DiGraph(3, {{1, 2}})));
  EXPECT_THROW(solve_dfvs_tw(triangle(), nd), DecompositionError);
}

TEST(TwSolve, EntriesMatchDefinition) {
  SplitMix64 rng(41);
  for (int it = 0; it < 25; ++it) {
    DiGraph g = testing_oracles::random_digraph(rng, rng.range(2, 6), 1, 3);
    auto nd = make_nice(td_heuristic(g));
    auto tables = dfvs_tables(g, nd);
    for (int i = 0; i < static_cast<int>(nd.nodes.size()); ++i) {
      const VertexSet vx = subtree_vertices(nd, i);
      const VertexSet& bag = nd.nodes[i].bag;
      tables[i].for_each([&](unsigned mask, const std::vector<int>& order, std::size_t idx) {
        VertexSet x;
        for (int q = 0; q < static_cast<int>(bag.size()); ++q)
          if (mask >> q & 1) x.push_back(bag[q]);
        Ordering sigma;
        for (int q : order) sigma.push_back(bag[q]);
        ASSERT_EQ(tables[i].value[idx], brute_entry(g, vx, bag, x, sigma)) << "node " << i;
      });
    }
  }
}

TEST(TwSolve, MatchesOracleRandom) {
  SplitMix64 rng(1234);
  for (int it = 0; it < 60; ++it) {
    DiGraph g = testing_oracles::random_digraph(rng, rng.range(2, 7), 1, 3);
    auto nd = auto_nice(g);
    auto v = solve_dfvs_tw(g, nd);
    auto a = solve_dfas_tw(g, nd);
    EXPECT_EQ(v.optimum, min_dfvs_bruteforce(g).optimum);
    EXPECT_EQ(a.optimum, min_dfas_bruteforce(g).optimum);
  }
}

TEST(TwSolve, HeuristicAndExactDecompositionsAgree) {
  SplitMix64 rng(77);
  for (int it = 0; it < 30; ++it) {
    DiGraph g = testing_oracles::random_digraph(rng, 7, 1, 3);
    EXPECT_EQ(solve_dfvs_tw(g, make_nice(td_heuristic(g))).optimum, solve_dfvs_tw(g, auto_nice(g)).optimum);
    EXPECT_EQ(solve_dfas_tw(g, make_nice(td_heuristic(g))).optimum, solve_dfas_tw(g, auto_nice(g)).optimum);
  }
}
