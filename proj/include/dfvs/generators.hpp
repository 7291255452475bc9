#pragma once

// Seeded instance generators and the hardness reductions
// hitting set -> 3-formula -> 2-formula -> DFVS/DFAS.

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "dfvs/digraph.hpp"
#include "dfvs/embedding.hpp"
#include "dfvs/error.hpp"
#include "dfvs/formula.hpp"
#include "dfvs/rng.hpp"
#include "dfvs/sc_decomposition.hpp"
#include "dfvs/tree_decomposition.hpp"

namespace dfvs {

// ---------------------------------------------------------------------------
// Planar instances
// ---------------------------------------------------------------------------

struct PlanarInstance {
  DiGraph graph;
  Embedding embedding;
  std::optional<ScDecomposition> decomposition;
};

namespace detail {

/// Grid edges kept in layout order, each reversed with probability 1/2.
inline PlanarInstance orient_grid_subset(const GridLayout& l, const std::vector<char>& keep, SplitMix64& rng) {
  std::vector<Arc> arcs;
  std::set<std::pair<Vertex, Vertex>> kept;
  for (std::size_t i = 0; i < l.edges.size(); ++i) {
    if (!keep[i]) continue;
    Arc a = l.edges[i];
    kept.insert({a.tail, a.head});
    kept.insert({a.head, a.tail});
    if (rng.coin()) std::swap(a.tail, a.head);
    arcs.push_back(a);
  }
  DiGraph g(l.rows * l.cols, arcs);
  std::vector<std::vector<Vertex>> rot(l.rotation.size());
  for (Vertex v = 1; v < static_cast<int>(rot.size()); ++v)
    for (Vertex w : l.rotation[v])
      if (kept.count({v, w})) rot[v].push_back(w);
  return {g, Embedding::from_neighbors(g, rot), std::nullopt};
}

inline bool single_bridgeless_piece(const GridLayout& l, const std::vector<char>& keep) {
  std::vector<Arc> arcs;
  for (std::size_t i = 0; i < l.edges.size(); ++i)
    if (keep[i]) arcs.push_back(l.edges[i]);
  DiGraph g(l.rows * l.cols, arcs);
  if (arcs.empty() || !bridges(g).empty()) return false;
  int with_arcs = 0;
  for (const auto& p : bridges_and_components(g)) with_arcs += p.graph.arc_count() > 0;
  return with_arcs == 1;
}

/// Random bridgeless connected subgraph of the grid: visits edges in random
/// order and drops each with probability 1/2 when the rest stays one
/// bridgeless piece; then tries to drop whole vertices the same way.
inline std::vector<char> thin_grid(const GridLayout& l, SplitMix64& rng) {
  const int m = static_cast<int>(l.edges.size());
  std::vector<char> keep(m, 1);
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  for (int i = m - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
  for (int e : order) {
    if (!rng.coin()) continue;
    keep[e] = 0;
    if (!single_bridgeless_piece(l, keep)) keep[e] = 1;
  }
  for (Vertex v = 1; v <= l.rows * l.cols; ++v) {
    if (!rng.coin()) continue;
    auto trial = keep;
    for (int e = 0; e < m; ++e)
      if (l.edges[e].tail == v || l.edges[e].head == v) trial[e] = 0;
    if (trial != keep && single_bridgeless_piece(l, trial)) keep = trial;
  }
  return keep;
}

}  // namespace detail

/// Full rows x cols grid with random orientations and the caterpillar
/// sc-decomposition.
inline PlanarInstance gen_grid(int rows, int cols, std::uint64_t seed) {
  if (rows < 2 || cols < 2) throw GraphError("grid needs at least 2 rows and 2 columns");
  SplitMix64 rng(seed);
  const GridLayout l = grid_layout(rows, cols);
  PlanarInstance p = detail::orient_grid_subset(l, std::vector<char>(l.edges.size(), 1), rng);
  p.decomposition = grid_sc_decomposition(rows, cols, p.embedding);
  return p;
}

/// Random orientation of a random connected bridgeless subgraph of the
/// rows x cols grid. Vertices that lose all their arcs stay isolated.
inline PlanarInstance gen_random_subgrid(int rows, int cols, std::uint64_t seed) {
  if (rows < 2 || cols < 2) throw GraphError("grid needs at least 2 rows and 2 columns");
  SplitMix64 rng(seed);
  const GridLayout l = grid_layout(rows, cols);
  auto keep = detail::thin_grid(l, rng);
  return detail::orient_grid_subset(l, keep, rng);
}

/// Subgrid instance on a grid with ceil(sqrt(n)) rows and enough columns
/// for n vertices.
inline PlanarInstance gen_random_planar(int n, std::uint64_t seed) {
  if (n < 4) throw GraphError("random planar instances need n >= 4");
  const int rows = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
  const int cols = std::max(2, (n + rows - 1) / rows);
  return gen_random_subgrid(rows, cols, seed);
}

// ---------------------------------------------------------------------------
// Disk-drawn digraphs for pattern experiments
// ---------------------------------------------------------------------------

struct DiskDigraph {
  DiGraph graph;
  std::vector<Vertex> boundary;  // outer face, clockwise
};

/// Undirected triangulated disk: polygon 1..b, fan chords from vertex 1,
/// then each interior vertex stacked into a triangle chosen by pick(count).
template <class Pick>
std::vector<Arc> stacked_fan(int b, int interior, Pick pick) {
  std::vector<Arc> edges;
  std::vector<std::array<Vertex, 3>> triangles;
  for (int i = 1; i <= b; ++i) edges.push_back({i, i % b + 1});
  for (int i = 3; i < b; ++i) edges.push_back({1, i});
  for (int i = 2; i < b; ++i) triangles.push_back({1, i, i + 1});
  for (int j = 1; j <= interior; ++j) {
    const Vertex v = b + j;
    const int t = pick(static_cast<int>(triangles.size()));
    const auto tri = triangles[t];
    for (Vertex u : tri) edges.push_back({u, v});
    triangles[t] = {tri[0], tri[1], v};
    triangles.push_back({tri[1], tri[2], v});
    triangles.push_back({tri[2], tri[0], v});
  }
  return edges;
}

/// Random subgraph of a stacked fan triangulation; each edge is dropped,
/// kept in one direction or doubled into an antiparallel pair.
inline DiskDigraph gen_disk_digraph(int boundary, int interior, std::uint64_t seed) {
  if (boundary < 3) throw GraphError("disk digraphs need at least 3 boundary vertices");
  SplitMix64 rng(seed);
  auto edges = stacked_fan(boundary, interior, [&](int count) { return static_cast<int>(rng.below(count)); });
  std::vector<Arc> arcs;
  for (const Arc& e : edges) switch (rng.below(6)) {
      case 0: break;
      case 1: arcs.push_back({e.tail, e.head}), arcs.push_back({e.head, e.tail}); break;
      case 2: case 3: arcs.push_back({e.tail, e.head}); break;
      default: arcs.push_back({e.head, e.tail}); break;
    }
  std::vector<Vertex> t(boundary);
  std::iota(t.begin(), t.end(), 1);
  return {DiGraph(boundary + interior, arcs), t};
}

/// Undirected edges of the census family: fan triangulation of the polygon
/// 1..b, first interior vertex in triangle (1,2,3), second in (1,b-1,b),
/// or in (1,3,4) when b = 3 so that it stays inside the disk.
inline std::vector<Arc> census_fan(int b, int interior) {
  if (b < 3 || interior < 0 || interior > 2) throw GraphError("census fan needs b >= 3 and at most 2 interior vertices");
  std::vector<Arc> edges;
  for (int i = 1; i <= b; ++i) edges.push_back({i, i % b + 1});
  for (int i = 3; i < b; ++i) edges.push_back({1, i});
  const std::array<std::array<Vertex, 3>, 2> host{{{1, 2, 3}, {1, b == 3 ? 3 : b - 1, b == 3 ? 4 : b}}};
  for (int j = 0; j < interior; ++j)
    for (Vertex u : host[j]) edges.push_back({u, b + 1 + j});
  return edges;
}

// ---------------------------------------------------------------------------
// Hardness chain
// ---------------------------------------------------------------------------

/// Each set picks, per row independently, nothing or a uniform column; an
/// empty draw is redrawn so that every set is nonempty.
inline HittingSetInstance gen_hitting_set(int k, int sets, std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("hitting set needs k >= 1");
  SplitMix64 rng(seed);
  HittingSetInstance inst{k, {}};
  for (int s = 0; s < sets; ++s) {
    std::vector<Cell> set;
    while (set.empty())
      for (int r = 1; r <= k; ++r) {
        const int c = static_cast<int>(rng.below(k + 1));
        if (c > 0) set.push_back({r, c});
      }
    inst.sets.push_back(set);
  }
  return inst;
}

/// (2k+1)-permutation 3-formula satisfiable iff the instance has a hitting
/// set. The construction is meant for k >= 3; allow_small_k admits k = 2.
inline PermFormula reduce_hs_to_3formula(const HittingSetInstance& inst, bool allow_small_k = false) {
  const int k = inst.k;
  if (k < 2 || (k < 3 && !allow_small_k)) throw std::invalid_argument("reduction needs k >= 3");
  if (!inst.is_thin()) throw std::invalid_argument("hitting set instance has a set that is not thin");
  PermFormula f{2 * k + 1, {}};
  for (int j = k + 1; j + 2 <= 2 * k + 1; ++j) f.clauses.push_back({{{j, j + 1, j + 2}}});
  for (int i = 1; i <= k; ++i) f.clauses.push_back({{{k + 1, i, 2 * k + 1}}});
  for (const auto& set : inst.sets) {
    if (set.empty()) throw std::invalid_argument("hitting set instance has an empty set");
    PermClause c;
    for (const Cell& cell : set) c.push_back({{k + cell.col, cell.row, k + cell.col + 1}});
    f.clauses.push_back(c);
  }
  return f;
}

/// Bipartite incidence graph of a formula: index i is vertex i, clause c is
/// vertex n+1+c, with an arc from each index to every clause using it.
inline DiGraph incidence_graph(const PermFormula& f) {
  std::set<std::pair<Vertex, Vertex>> arcs;
  for (std::size_t c = 0; c < f.clauses.size(); ++c)
    for (const auto& con : f.clauses[c])
      for (int i : con.indices) arcs.insert({i, f.n + 1 + static_cast<int>(c)});
  std::vector<Arc> list;
  for (auto [a, b] : arcs) list.push_back({a, b});
  return DiGraph(f.n + static_cast<int>(f.clauses.size()), list);
}

struct TwoFormulaReduction {
  PermFormula formula;
  TreeDecomposition star;  // over incidence_graph(formula)
};

/// 2-formula whose incidence graph has treewidth O(k), satisfiable iff phi
/// is. Clause c of phi owns the index block starting at k + c(2k+2) + 1.
inline TwoFormulaReduction reduce_3formula_to_2formula(const PermFormula& phi) {
  phi.check();
  const int k = phi.n;
  const int clauses = static_cast<int>(phi.clauses.size());
  if (clauses > k) throw std::invalid_argument("formula has more clauses than indices");
  for (const auto& c : phi.clauses) {
    if (static_cast<int>(c.size()) > k) throw std::invalid_argument("clause longer than the index count");
    for (const auto& con : c)
      if (con.indices.size() != 3) throw std::invalid_argument("every constraint must have three indices");
  }
  const int n = k + (2 * k + 2) * k;
  TwoFormulaReduction out{{n, {}}, {}};
  auto& psi = out.formula;
  std::vector<std::vector<int>> petal_clauses(clauses), petal_indices(clauses);
  for (int c = 0; c < clauses; ++c) {
    const auto& cl = phi.clauses[c];
    const int kc = static_cast<int>(cl.size());
    auto j = [&](int i) { return k + c * (2 * k + 2) + i; };  // j_1 .. j_{2k'+2}
    auto emit = [&](PermClause clause) {
      petal_clauses[c].push_back(n + 1 + static_cast<int>(psi.clauses.size()));
      psi.clauses.push_back(std::move(clause));
    };
    for (int i = 1; i <= kc; ++i) {
      const auto& abc = cl[i - 1].indices;
      emit({{{j(2 * i), j(2 * i - 1)}}, {{abc[0], abc[1]}}, {{j(2 * i + 1), j(2 * i + 2)}}});
      emit({{{j(2 * i), j(2 * i - 1)}}, {{abc[1], abc[2]}}, {{j(2 * i + 1), j(2 * i + 2)}}});
    }
    emit({{{j(1), j(2)}}});
    emit({{{j(2 * kc + 2), j(2 * kc + 1)}}});
    for (int i = 1; i <= 2 * kc + 2; ++i) petal_indices[c].push_back(j(i));
  }
  // star: center [k], one petal per clause of phi, singleton petals for unused indices
  auto& td = out.star;
  VertexSet center(k);
  std::iota(center.begin(), center.end(), 1);
  td.bags.push_back(center);
  std::vector<char> used(n + 1, 0);
  for (int c = 0; c < clauses; ++c) {
    VertexSet bag = center;
    bag.insert(bag.end(), petal_indices[c].begin(), petal_indices[c].end());
    bag.insert(bag.end(), petal_clauses[c].begin(), petal_clauses[c].end());
    for (int i : petal_indices[c]) used[i] = 1;
    td.edges.push_back({0, td.node_count()});
    td.bags.push_back(normalized(bag));
  }
  for (int i = k + 1; i <= n; ++i)
    if (!used[i]) {
      td.edges.push_back({0, td.node_count()});
      td.bags.push_back({i});
    }
  td.root = 0;
  return out;
}

struct OrGadget {
  DiGraph graph;
  std::array<Vertex, 6> terminals;  // x1, x1', x2, x2', x3, x3'
  std::array<int, 3> inner_arcs;    // e_i = v_ia -> v_ib
};

/// Twelve vertices: terminals x1=1, x1'=2, x2=3, x2'=4, x3=5, x3'=6 and
/// internals v1a=7, v1b=8, v2a=9, v2b=10, v3a=11, v3b=12.
inline OrGadget or_gadget() {
  std::vector<Arc> arcs{{1, 7}, {8, 2}, {3, 9}, {10, 4}, {5, 11}, {12, 6},                  // terminals
                        {7, 8}, {8, 9}, {9, 10}, {10, 11}, {11, 12}, {12, 7},                // inner cycle
                        {8, 11}, {10, 7}, {12, 9}};                                          // shortcuts
  return {DiGraph(12, arcs), {1, 2, 3, 4, 5, 6}, {6, 8, 10}};
}

struct ReductionOutput {
  DiGraph graph;
  int budget = 0;
  std::vector<Vertex> terminal;  // index i -> vertex terminal[i] (entry 0 unused)
  std::optional<TreeDecomposition> decomposition;
};

/// DFVS/DFAS instance with budget twice the number of length-3 clauses.
/// Terminals keep ids 1..n; each length-3 clause appends a gadget copy.
/// With incidence_td (a decomposition of incidence_graph(psi)) the output
/// decomposition replaces each clause node by its gadget and terminals;
/// otherwise it is a heuristic one.
inline ReductionOutput reduce_2formula_to_dfvs(const PermFormula& psi, const TreeDecomposition* incidence_td = nullptr) {
  psi.check();
  if (!psi.is_structured_2formula()) throw std::invalid_argument("formula is not a structured 2-formula");
  const int n = psi.n;
  std::vector<Arc> arcs;
  std::set<std::pair<Vertex, Vertex>> units;
  std::vector<VertexSet> clause_vertices(psi.clauses.size());
  int next = n;
  int long_clauses = 0;
  for (std::size_t c = 0; c < psi.clauses.size(); ++c) {
    const auto& cl = psi.clauses[c];
    if (cl.size() == 1) {
      const auto& p = cl[0].indices;
      if (units.insert({p[0], p[1]}).second) arcs.push_back({p[0], p[1]});
      clause_vertices[c] = {p[0], p[1]};
      continue;
    }
    ++long_clauses;
    const OrGadget gad = or_gadget();
    std::array<Vertex, 13> map{};
    for (int i = 0; i < 3; ++i) {
      map[2 * i + 1] = cl[i].indices[0];
      map[2 * i + 2] = cl[i].indices[1];
    }
    for (Vertex v = 7; v <= 12; ++v) map[v] = ++next;
    for (const Arc& a : gad.graph.arcs()) arcs.push_back({map[a.tail], map[a.head]});
    clause_vertices[c].assign(map.begin() + 1, map.end());
  }
  ReductionOutput out{DiGraph(next, arcs), 2 * long_clauses, {}, std::nullopt};
  out.terminal.resize(n + 1);
  std::iota(out.terminal.begin(), out.terminal.end(), 0);
  if (incidence_td) {
    TreeDecomposition td{{}, incidence_td->edges, incidence_td->root};
    for (const auto& bag : incidence_td->bags) {
      VertexSet b;
      for (Vertex v : bag) {
        if (v <= n)
          b.push_back(v);
        else
          b.insert(b.end(), clause_vertices[v - n - 1].begin(), clause_vertices[v - n - 1].end());
      }
      td.bags.push_back(normalized(b));
    }
    out.decomposition = td;
  } else {
    out.decomposition = td_heuristic(out.graph);
  }
  return out;
}

}  // namespace dfvs
