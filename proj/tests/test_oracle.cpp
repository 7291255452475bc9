#include <gtest/gtest.h>

#include "dfvs/oracle.hpp"
#include "oracles.hpp"

using namespace dfvs;

TEST(OracleDfvs, Examples) {
  auto tri = min_dfvs_bruteforce(DiGraph(3, {{1, 2}, {2, 3}, {3, 1}}));
  EXPECT_EQ(tri.optimum, 1);
  EXPECT_EQ(tri.witness, (std::vector<int>{1}));
  auto dag = min_dfvs_bruteforce(DiGraph(3, {{1, 2}, {2, 3}, {1, 3}}));
  EXPECT_EQ(dag.optimum, 0);
  EXPECT_TRUE(dag.witness.empty());
}

TEST(OracleDfvs, LexicographicallySmallestWitness) {
  // two disjoint 2-cycles: {1,3} is the smallest optimum
  auto r = min_dfvs_bruteforce(DiGraph(4, {{3, 4}, {4, 3}, {1, 2}, {2, 1}}));
  EXPECT_EQ(r.witness, (std::vector<int>{1, 3}));
}

TEST(OracleDfvs, CapIsEnforced) { EXPECT_THROW(min_dfvs_bruteforce(DiGraph(25, {})), CapExceeded); }

TEST(OracleDfas, Examples) {
  EXPECT_EQ(min_dfas_bruteforce(DiGraph(3, {{1, 2}, {2, 3}, {3, 1}})).optimum, 1);
  EXPECT_EQ(min_dfas_bruteforce(DiGraph(2, {{1, 2}, {2, 1}})).optimum, 1);
  std::vector<Arc> many;
  for (int i = 1; i <= 12; ++i)
    for (int j = 1; j <= 12; ++j)
      if (i < j) many.push_back({i, j});
  EXPECT_THROW(min_dfas_bruteforce(DiGraph(12, many)), CapExceeded);
}

TEST(OracleProperties, SingleVertexRecurrenceAndZeroIffAcyclic) {
  SplitMix64 rng(3);
  for (int it = 0; it < 100; ++it) {
    DiGraph g = testing_oracles::random_digraph(rng, rng.range(2, 6), 1, 3);
    const int opt = min_dfvs_bruteforce(g).optimum;
    int best = 1 << 20;
    for (Vertex v : g.vertices()) best = std::min(best, 1 + min_dfvs_bruteforce(without(g, {v}, {})).optimum);
    EXPECT_LE(opt, best);
    if (opt >= 1) EXPECT_EQ(opt, best);
    const int fas = min_dfas_bruteforce(g).optimum;
    EXPECT_EQ(opt == 0, is_acyclic(g));
    EXPECT_EQ(fas == 0, is_acyclic(g));
    auto w = min_dfas_bruteforce(g).witness;
    EXPECT_TRUE(is_acyclic(without(g, {}, w)));
  }
}

TEST(Extendable, Examples) {
  DiGraph g(2, {{1, 2}});
  EXPECT_TRUE(extendable_ordering(g, {1, 2}));
  EXPECT_FALSE(extendable_ordering(g, {2, 1}));
  EXPECT_TRUE(extendable_ordering(DiGraph(3, {{1, 3}}), {3, 2}));
  EXPECT_FALSE(extendable_ordering(DiGraph(3, {{1, 2}, {2, 3}}), {3, 1}));
}

TEST(Extendable, FullOrderingIsTopologicalCheck) {
  SplitMix64 rng(21);
  for (int it = 0; it < 100; ++it) {
    const int n = rng.range(1, 5);
    DiGraph g = testing_oracles::random_digraph(rng, n, 1, 4);
    Ordering ord(n);
    std::iota(ord.begin(), ord.end(), 1);
    do {
      bool topo = true;
      std::vector<int> pos(n + 1);
      for (int i = 0; i < n; ++i) pos[ord[i]] = i;
      for (const Arc& a : g.arcs())
        if (pos[a.tail] > pos[a.head]) topo = false;
      ASSERT_EQ(extendable_ordering(g, ord), topo);
    } while (std::next_permutation(ord.begin(), ord.end()));
  }
}

TEST(PermFormula, Examples) {
  PermFormula one{2, {{{{1, 2}}}}};
  EXPECT_TRUE(perm_formula_sat(one));
  PermFormula clash{2, {{{{1, 2}}}, {{{2, 1}}}}};
  EXPECT_FALSE(perm_formula_sat(clash));
  PermFormula three{3, {{{{1, 2, 3}}}, {{{3, 1}}, {{2, 3}}}}};
  auto sol = perm_formula_solve(three);
  ASSERT_TRUE(sol.has_value());
  EXPECT_EQ(*sol, (std::vector<int>{1, 2, 3}));
}

TEST(PermFormula, MatchesFactorialEnumeration) {
  SplitMix64 rng(7);
  for (int it = 0; it < 100; ++it) {
    PermFormula f;
    f.n = rng.range(2, 7);
    const int clauses = rng.range(1, 6);
    for (int c = 0; c < clauses; ++c) {
      PermClause clause;
      const int len = rng.range(1, 3);
      for (int j = 0; j < len; ++j) {
        std::vector<int> idx(f.n);
        std::iota(idx.begin(), idx.end(), 1);
        for (int i = f.n - 1; i > 0; --i) std::swap(idx[i], idx[rng.below(i + 1)]);
        const int d = std::min(f.n, rng.range(2, 3));
        idx.resize(d);
        clause.push_back({idx});
      }
      f.clauses.push_back(clause);
    }
    EXPECT_EQ(perm_formula_sat(f), testing_oracles::perm_formula_sat_factorial(f));
  }
}

TEST(PermFormula, CapAndMalformed) {
  PermFormula big{2, {}};
  for (int c = 0; c < 30; ++c) big.clauses.push_back({{{1, 2}}, {{2, 1}}});
  EXPECT_THROW(perm_formula_sat(big), CapExceeded);
  EXPECT_THROW(perm_formula_sat(PermFormula{2, {{}}}), std::invalid_argument);
  EXPECT_THROW(perm_formula_sat(PermFormula{2, {{{{1, 3}}}}}), std::invalid_argument);
}

TEST(HittingSet, Examples) {
  EXPECT_TRUE(hs_bruteforce({2, {}}));
  EXPECT_TRUE(hs_bruteforce({1, {{{1, 1}}}}));
  EXPECT_FALSE(hs_bruteforce({2, {{{1, 1}}, {{1, 2}}}}));
  EXPECT_TRUE(hs_bruteforce({2, {{{1, 1}, {2, 2}}, {{1, 2}}}}));
  EXPECT_THROW(hs_bruteforce({7, {}}), CapExceeded);
}
