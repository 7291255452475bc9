#include <gtest/gtest.h>

#include "dfvs/generators.hpp"
#include "dfvs/oracle.hpp"
#include "dfvs/planar_dp.hpp"
#include "dfvs/treewidth_dp.hpp"
#include "oracles.hpp"

using namespace dfvs;

namespace {

PlanarInstance oriented_grid(int rows, int cols, const std::function<bool(const Arc&)>& flip) {
  auto l = grid_layout(rows, cols);
  std::vector<Arc> arcs;
  for (Arc a : l.edges) {
    if (flip(a)) std::swap(a.tail, a.head);
    arcs.push_back(a);
  }
  DiGraph g(rows * cols, arcs);
  auto e = Embedding::from_neighbors(g, l.rotation);
  return {g, e, grid_sc_decomposition(rows, cols, e)};
}

PointRelation pattern(std::vector<Vertex> t, std::vector<std::pair<Vertex, Vertex>> pairs) {
  auto p = PointRelation::identity(std::move(t));
  for (auto [a, b] : pairs) p.insert(a, b);
  return p;
}

/// Arcs at leaves below node x.
std::vector<int> arcs_under(const ScDecomposition& d, int x) {
  auto ch = d.children();
  std::vector<int> out, stack{x};
  while (!stack.empty()) {
    int y = stack.back();
    stack.pop_back();
    if (d.leaf_arc[y] >= 0) out.push_back(d.leaf_arc[y]);
    for (int c : ch[y]) stack.push_back(c);
  }
  return out;
}

}  // namespace

TEST(PlanarLeaf, Entries) {
  auto t = leaf_table({1, 2}, {1, 2});
  ASSERT_EQ(t.entries.size(), 4u);
  const auto* none = t.find({0, pattern({1, 2}, {{1, 2}}).rows()});
  ASSERT_NE(none, nullptr);
  EXPECT_EQ(none->value, 0);
  const auto* drop_u = t.find({1, pattern({2}, {}).rows()});
  ASSERT_NE(drop_u, nullptr);
  EXPECT_EQ(drop_u->value, 0);
  const auto* both = t.find({3, {}});
  ASSERT_NE(both, nullptr);
  EXPECT_EQ(both->value, 0);
}

TEST(PlanarMerge, JoinExamples) {
  PlanarDpTable a, b;
  a.med = {1, 2};
  b.med = {2, 3};
  auto pa = pattern({1, 2}, {{1, 2}});
  auto pb = pattern({2, 3}, {{2, 3}});
  a.offer({{0, pa.rows()}, pa, 0, -1, -1, {}});
  b.offer({{0, pb.rows()}, pb, 0, -1, -1, {}});
  auto m = dp_merge(a, b, {1, 3});
  auto want = pattern({1, 3}, {{1, 3}});
  const auto* en = m.find({0, want.rows()});
  ASSERT_NE(en, nullptr);
  EXPECT_EQ(en->value, 0);

  PlanarDpTable c;
  c.med = {2, 1};
  auto pc = pattern({2, 1}, {{2, 1}});
  c.offer({{0, pc.rows()}, pc, 0, -1, -1, {}});
  EXPECT_TRUE(dp_merge(a, c, {1}).entries.empty());
}

TEST(PlanarMerge, DeletingAForgottenVertexCostsOne) {
  // 1 -> 2 -> 3 split at 2; the parent edge forgets 2
  auto t1 = leaf_table({1, 2}, {1, 2});
  auto t2 = leaf_table({2, 3}, {2, 3});
  auto m = dp_merge(t1, t2, {1, 3});
  const auto* kept = m.find({0, pattern({1, 3}, {{1, 3}}).rows()});
  ASSERT_NE(kept, nullptr);
  EXPECT_EQ(kept->value, 0);
  const auto* cut = m.find({0, pattern({1, 3}, {}).rows()});
  ASSERT_NE(cut, nullptr);
  EXPECT_EQ(cut->value, 1);
  EXPECT_EQ(cut->removed, (VertexSet{2}));
  // recomputed by deleting 2 from the path: 1 and 3 become unrelated
  DiGraph path(3, {{1, 2}, {2, 3}});
  EXPECT_EQ(induced_pattern(without(path, {2}, {}), {1, 3}), cut->pattern);
}

TEST(PlanarSolve, Examples) {
  auto dag = oriented_grid(3, 3, [](const Arc&) { return false; });
  EXPECT_EQ(solve_dfvs_planar(dag.graph, dag.embedding, *dag.decomposition).optimum, 0);
  // 2x2 grid as the directed cycle 1 -> 2 -> 4 -> 3 -> 1
  auto cyc = oriented_grid(2, 2, [](const Arc& a) { return a.tail == 3 || (a.tail == 1 && a.head == 3); });
  auto r = solve_dfvs_planar(cyc.graph, cyc.embedding, *cyc.decomposition);
  EXPECT_EQ(r.optimum, 1);
  EXPECT_EQ(r.optimum, min_dfvs_bruteforce(cyc.graph).optimum);
}

TEST(PlanarSolve, RejectsInvalidDecomposition) {
  auto p = gen_grid(2, 3, 1);
  auto bad = *p.decomposition;
  bad.leaf_arc[bad.node_count() - 1] = bad.leaf_arc[bad.node_count() - 2];
  EXPECT_THROW(solve_dfvs_planar(p.graph, p.embedding, bad), DecompositionError);
}

TEST(PlanarSolve, MatchesOracleAndTreewidthOnSubgrids) {
  SplitMix64 rng(555);
  for (int it = 0; it < 60; ++it) {
    auto p = gen_random_subgrid(rng.range(2, 3), rng.range(2, 4), rng.next());
    auto d = build_sc_heuristic(p.graph, p.embedding);
    const int opt = solve_dfvs_planar(p.graph, p.embedding, d).optimum;
    EXPECT_EQ(opt, min_dfvs_bruteforce(p.graph).optimum);
    EXPECT_EQ(opt, solve_dfvs_tw(p.graph, auto_nice(p.graph)).optimum);
  }
}

TEST(PlanarSolve, DecompositionChoiceDoesNotMatter) {
  for (std::uint64_t s = 0; s < 12; ++s) {
    auto p = gen_grid(2 + s % 3, 2 + s % 4, s);
    const int a = solve_dfvs_planar(p.graph, p.embedding, *p.decomposition).optimum;
    const int b = solve_dfvs_planar(p.graph, p.embedding, build_sc_heuristic(p.graph, p.embedding)).optimum;
    EXPECT_EQ(a, b);
  }
}

TEST(PlanarTables, StoredPatternsAreGenerateFixpointsAndMatchSubgraphs) {
  SplitMix64 rng(777);
  for (int it = 0; it < 40; ++it) {
    auto p = gen_random_subgrid(rng.range(2, 3), rng.range(2, 4), rng.next());
    auto d = build_sc_heuristic(p.graph, p.embedding);
    auto dp = planar_dp_tables(p.graph, d);
    for (const auto& t : dp.tables)
      for (const auto& en : t.entries) {
        ASSERT_EQ(generate(en.pattern), en.pattern);
        ASSERT_TRUE(en.pattern.is_reflexive() && en.pattern.is_transitive());
      }
    // along the optimal trace, recompute every pattern from G(e) minus the deletions below
    auto used = optimal_entries(dp, d);
    auto ch = d.children();
    for (int x = 0; x < d.node_count(); ++x) {
      if (used[x] < 0) continue;
      VertexSet gone = dp.tables[x].deleted(dp.tables[x].entries[used[x]]);
      std::vector<int> stack{x};
      while (!stack.empty()) {
        int y = stack.back();
        stack.pop_back();
        const auto& rem = dp.tables[y].entries[used[y]].removed;
        gone.insert(gone.end(), rem.begin(), rem.end());
        for (int c : ch[y]) stack.push_back(c);
      }
      gone = normalized(gone);
      const auto below = arcs_under(d, x);
      std::vector<Arc> arcs;
      for (int a : below) {
        const Arc& arc = p.graph.arc(a);
        if (!std::binary_search(gone.begin(), gone.end(), arc.tail) &&
            !std::binary_search(gone.begin(), gone.end(), arc.head))
          arcs.push_back(arc);
      }
      const auto& en = dp.tables[x].entries[used[x]];
      EXPECT_EQ(induced_pattern(DiGraph(p.graph.n(), arcs), en.pattern.boundary()), en.pattern) << "node " << x;
    }
  }
}

TEST(PlanarFull, PiecesAreSummed) {
  // two directed triangles
  DiGraph two(6, {{1, 2}, {2, 3}, {3, 1}, {4, 5}, {5, 6}, {6, 4}});
  std::vector<std::vector<Vertex>> rot{{}, {2, 3}, {3, 1}, {1, 2}, {5, 6}, {6, 4}, {4, 5}};
  EXPECT_EQ(solve_dfvs_planar_full(two, Embedding::from_neighbors(two, rot)).optimum, 2);
  // triangle with a pendant bridge path
  DiGraph tail(5, {{1, 2}, {2, 3}, {3, 1}, {3, 4}, {4, 5}});
  std::vector<std::vector<Vertex>> trot{{}, {2, 3}, {3, 1}, {1, 2, 4}, {3, 5}, {4}};
  EXPECT_EQ(solve_dfvs_planar_full(tail, Embedding::from_neighbors(tail, trot)).optimum, 1);
}

TEST(PlanarFull, MultiComponentMatchesOracle) {
  SplitMix64 rng(888);
  for (int it = 0; it < 50; ++it) {
    // two random subgrids side by side, joined by a bridge
    auto a = gen_random_subgrid(2, rng.range(2, 3), rng.next());
    auto b = gen_random_subgrid(2, rng.range(2, 3), rng.next());
    const int na = a.graph.n();
    std::vector<Arc> arcs = a.graph.arcs();
    for (const Arc& x : b.graph.arcs()) arcs.push_back({x.tail + na, x.head + na});
    auto ra = a.embedding.neighbor_lists(), rb = b.embedding.neighbor_lists();
    std::vector<std::vector<Vertex>> rot(ra);
    for (Vertex v = 1; v <= b.graph.n(); ++v) {
      std::vector<Vertex> shifted;
      for (Vertex w : rb[v]) shifted.push_back(w + na);
      rot.push_back(shifted);
    }
    // bridge between the first vertex with arcs in each part
    Vertex u = 0, w = 0;
    for (Vertex v = 1; v <= na && !u; ++v)
      if (!ra[v].empty()) u = v;
    for (Vertex v = 1; v <= b.graph.n() && !w; ++v)
      if (!rb[v].empty()) w = v + na;
    arcs.push_back({u, w});
    rot[u].push_back(w);
    rot[w].insert(rot[w].begin(), u);
    DiGraph g(na + b.graph.n(), arcs);
    auto e = Embedding::from_neighbors(g, rot);
    EXPECT_EQ(solve_dfvs_planar_full(g, e).optimum, min_dfvs_bruteforce(g).optimum);
  }
}
