#include <gtest/gtest.h>

#include <sstream>

#include "dfvs/generators.hpp"
#include "dfvs/oracle.hpp"
#include "oracles.hpp"

using namespace dfvs;

namespace {

std::string bytes(const PlanarInstance& p) {
  std::ostringstream out;
  write_digraph(out, p.graph, p.embedding.neighbor_lists());
  if (p.decomposition) write_sc(out, *p.decomposition, p.graph.arc_count());
  return out.str();
}

/// Random 3-formula over 3 indices with clauses of length at most 2.
PermFormula tiny_3formula(SplitMix64& rng) {
  PermFormula f{3, {}};
  const int clauses = rng.range(1, 2);
  for (int c = 0; c < clauses; ++c) {
    PermClause cl;
    const int len = rng.range(1, 2);
    for (int i = 0; i < len; ++i) {
      std::vector<int> idx{1, 2, 3};
      for (int j = 2; j > 0; --j) std::swap(idx[j], idx[rng.below(j + 1)]);
      cl.push_back({idx});
    }
    f.clauses.push_back(cl);
  }
  return f;
}

/// Structured 2-formula over 6 indices with up to 3 long clauses.
PermFormula tiny_2formula(SplitMix64& rng) {
  PermFormula f{6, {}};
  const int longs = rng.range(1, 3), units = rng.range(0, 3);
  for (int c = 0; c < longs; ++c) {
    std::vector<int> idx{1, 2, 3, 4, 5, 6};
    for (int j = 5; j > 0; --j) std::swap(idx[j], idx[rng.below(j + 1)]);
    f.clauses.push_back({{{idx[0], idx[1]}}, {{idx[2], idx[3]}}, {{idx[4], idx[5]}}});
  }
  for (int c = 0; c < units; ++c) {
    int a = rng.range(1, 6), b = rng.range(1, 5);
    if (b >= a) ++b;
    f.clauses.push_back({{{a, b}}});
  }
  return f;
}

}  // namespace

TEST(GenGrid, ShapeDeterminismAndDecomposition) {
  auto p = gen_grid(2, 2, 1);
  EXPECT_EQ(p.graph.n(), 4);
  EXPECT_EQ(p.graph.arc_count(), 4);
  EXPECT_EQ(p.embedding.face_count(), 2);
  EXPECT_EQ(bytes(gen_grid(3, 3, 5)), bytes(gen_grid(3, 3, 5)));
  auto q = gen_grid(2, 3, 9);
  EXPECT_TRUE(validate_sc(q.graph, q.embedding, *q.decomposition).ok);
  EXPECT_THROW(gen_grid(1, 3, 1), GraphError);
}

TEST(GenRandomPlanar, BridgelessConnectedDeterministic) {
  auto p = gen_random_planar(4, 3);
  EXPECT_EQ(p.graph.arc_count(), 4);
  for (std::uint64_t s = 0; s < 40; ++s) {
    auto q = gen_random_planar(9, s);
    EXPECT_TRUE(bridges(q.graph).empty());
    int pieces = 0;
    for (const auto& pc : bridges_and_components(q.graph)) pieces += pc.graph.arc_count() > 0;
    EXPECT_EQ(pieces, 1);
  }
  EXPECT_EQ(bytes(gen_random_planar(12, 8)), bytes(gen_random_planar(12, 8)));
  EXPECT_THROW(gen_random_planar(3, 1), GraphError);
}

TEST(GenDisk, BoundaryOnOuterFaceIsAPlanarDisk) {
  auto d = gen_disk_digraph(5, 2, 4);
  EXPECT_EQ(d.graph.n(), 7);
  EXPECT_EQ(d.boundary, (std::vector<Vertex>{1, 2, 3, 4, 5}));
  // the underlying triangulation plus an apex over the boundary stays planar: 3n-6 edges
  auto e = census_fan(5, 2);
  EXPECT_EQ(static_cast<int>(e.size()), 5 + 2 + 6);
}

TEST(GenHittingSet, ThinAndMatchesOracleSolvability) {
  EXPECT_TRUE(gen_hitting_set(2, 0, 1).sets.empty());
  for (std::uint64_t s = 0; s < 30; ++s) {
    auto inst = gen_hitting_set(2, 2, s);
    EXPECT_TRUE(inst.is_thin());
    for (const auto& set : inst.sets) EXPECT_FALSE(set.empty());
  }
}

TEST(ReduceHs, ConstructionArithmetic) {
  auto f = reduce_hs_to_3formula({3, {}});
  EXPECT_EQ(f.n, 7);
  EXPECT_EQ(f.clauses.size(), 5u);
  auto g = reduce_hs_to_3formula({3, {{{1, 1}}}});
  ASSERT_EQ(g.clauses.size(), 6u);
  EXPECT_EQ(g.clauses.back(), (PermClause{{{4, 1, 5}}}));
  EXPECT_THROW(reduce_hs_to_3formula({2, {}}), std::invalid_argument);
  EXPECT_NO_THROW(reduce_hs_to_3formula({2, {}}, true));
  EXPECT_THROW(reduce_hs_to_3formula({3, {{{1, 1}, {1, 2}}}}), std::invalid_argument);
}

TEST(ReduceHs, EquivalenceOnRandomInstances) {
  SplitMix64 rng(101);
  for (int it = 0; it < 50; ++it) {
    const int k = rng.range(2, 3);
    auto inst = gen_hitting_set(k, rng.range(0, 4), rng.next());
    EXPECT_EQ(hs_bruteforce(inst), testing_oracles::perm_formula_sat_factorial(reduce_hs_to_3formula(inst, true)));
  }
}

TEST(Reduce3To2, ShapeAndStar) {
  PermFormula phi{3, {{{{1, 2, 3}}}}};
  auto r = reduce_3formula_to_2formula(phi);
  EXPECT_EQ(r.formula.n, 27);
  ASSERT_EQ(r.formula.clauses.size(), 4u);
  EXPECT_EQ(r.formula.clauses[0], (PermClause{{{5, 4}}, {{1, 2}}, {{6, 7}}}));
  EXPECT_EQ(r.formula.clauses[1], (PermClause{{{5, 4}}, {{2, 3}}, {{6, 7}}}));
  EXPECT_EQ(r.formula.clauses[2], (PermClause{{{4, 5}}}));
  EXPECT_EQ(r.formula.clauses[3], (PermClause{{{7, 6}}}));
  EXPECT_TRUE(r.formula.is_structured_2formula());
  validate_td(incidence_graph(r.formula), r.star);
  EXPECT_LE(r.star.width(), 4 * 3 + 3);
  EXPECT_THROW(reduce_3formula_to_2formula(PermFormula{3, {{{{1, 2}}}}}), std::invalid_argument);
  PermFormula many{3, {{{{1, 2, 3}}}, {{{1, 2, 3}}}, {{{1, 2, 3}}}, {{{1, 2, 3}}}}};
  EXPECT_THROW(reduce_3formula_to_2formula(many), std::invalid_argument);
}

TEST(Reduce3To2, EquivalenceOnTinyFormulas) {
  SplitMix64 rng(202);
  for (int it = 0; it < 30; ++it) {
    auto phi = tiny_3formula(rng);
    auto r = reduce_3formula_to_2formula(phi);
    EXPECT_TRUE(r.formula.is_structured_2formula());
    validate_td(incidence_graph(r.formula), r.star);
    EXPECT_LE(r.star.width(), 4 * phi.n + 3);
    EXPECT_EQ(testing_oracles::perm_formula_sat_factorial(phi), perm_formula_sat(r.formula));
  }
}

TEST(OrGadget, OptimaAndSingleDeletions) {
  auto g = or_gadget();
  EXPECT_EQ(g.graph.n(), 12);
  EXPECT_EQ(g.graph.arc_count(), 15);
  EXPECT_EQ(min_dfvs_bruteforce(g.graph).optimum, 2);
  EXPECT_EQ(min_dfas_bruteforce(g.graph).optimum, 2);
  for (Vertex v = 7; v <= 12; ++v) EXPECT_TRUE(testing_oracles::has_cycle(without(g.graph, {v}, {})));
  for (int a = 6; a < 15; ++a) EXPECT_TRUE(testing_oracles::has_cycle(without(g.graph, {}, {a})));
  for (int i = 0; i < 3; ++i) {
    const Arc& e = g.graph.arc(g.inner_arcs[i]);
    EXPECT_EQ(e.tail, 7 + 2 * i);
    EXPECT_EQ(e.head, 8 + 2 * i);
  }
}

TEST(Reduce2ToDfvs, Shapes) {
  auto unit = reduce_2formula_to_dfvs(PermFormula{2, {{{{1, 2}}}}});
  EXPECT_EQ(unit.graph.arc_count(), 1);
  EXPECT_EQ(unit.budget, 0);
  auto one = reduce_2formula_to_dfvs(PermFormula{6, {{{{1, 2}}, {{3, 4}}, {{5, 6}}}}});
  EXPECT_EQ(one.graph.n(), 12);
  EXPECT_EQ(one.budget, 2);
  validate_td(one.graph, *one.decomposition);
  EXPECT_THROW(reduce_2formula_to_dfvs(PermFormula{3, {{{{1, 2}}, {{2, 3}}}}}), std::invalid_argument);
}

TEST(Reduce2ToDfvs, EquivalenceOnTinyFormulas) {
  SplitMix64 rng(303);
  for (int it = 0; it < 30; ++it) {
    auto psi = tiny_2formula(rng);
    auto r = reduce_2formula_to_dfvs(psi);
    validate_td(r.graph, *r.decomposition);
    const bool sat = testing_oracles::perm_formula_sat_factorial(psi);
    EXPECT_EQ(sat, testing_oracles::min_fvs_by_subsets(r.graph) <= r.budget) << it;
    EXPECT_EQ(sat, testing_oracles::min_fas_by_orderings(r.graph) <= r.budget) << it;
  }
}

TEST(Reduce2ToDfvs, StarMapsToValidDecomposition) {
  PermFormula phi{3, {{{{1, 2, 3}}, {{3, 2, 1}}}}};
  auto r2 = reduce_3formula_to_2formula(phi);
  auto r3 = reduce_2formula_to_dfvs(r2.formula, &r2.star);
  validate_td(r3.graph, *r3.decomposition);
}
