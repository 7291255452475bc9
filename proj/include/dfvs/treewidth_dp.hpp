#pragma once

// Exact DFVS / DFAS over a nice tree decomposition.
//
// DFVS: T_x[X, s] is the minimum number of forgotten vertices Y of G_x such
// that G_x - (X + Y) has a topological order restricting to s on B_x - X.
// DFAS: T_x[s] is the minimum number of arcs of G_x whose removal leaves a
// graph with a topological order restricting to s on B_x.
//
// Orderings of the bag are stored as permutations of bag positions, ranked by
// Lehmer code, so each table is a flat array.

#include <algorithm>
#include <bit>
#include <set>
#include <vector>

#include "dfvs/digraph.hpp"
#include "dfvs/error.hpp"
#include "dfvs/oracle.hpp"
#include "dfvs/tree_decomposition.hpp"

namespace dfvs {

inline constexpr int kInfinity = 1 << 29;

namespace detail {

inline std::size_t factorial(int k) {
  std::size_t f = 1;
  for (int i = 2; i <= k; ++i) f *= static_cast<std::size_t>(i);
  return f;
}

/// Lehmer rank of a sequence of distinct integers relative to its sorted order.
inline std::size_t perm_rank(const std::vector<int>& seq) {
  const int len = static_cast<int>(seq.size());
  std::size_t rank = 0;
  for (int i = 0; i < len; ++i) {
    std::size_t smaller = 0;
    for (int j = i + 1; j < len; ++j) smaller += seq[j] < seq[i];
    rank += smaller * factorial(len - 1 - i);
  }
  return rank;
}

inline int position_in(const VertexSet& bag, Vertex v) {
  auto it = std::lower_bound(bag.begin(), bag.end(), v);
  if (it == bag.end() || *it != v) return -1;
  return static_cast<int>(it - bag.begin());
}

inline int add_capped(int a, int b) { return std::min(kInfinity, a + b); }

/// Bag-adjacency in both directions: arc_to[i][j] iff bag[i] -> bag[j] is an arc.
inline std::vector<std::vector<char>> bag_arcs(const DiGraph& g, const VertexSet& bag) {
  const int b = static_cast<int>(bag.size());
  std::vector<std::vector<char>> m(b, std::vector<char>(b, 0));
  for (int i = 0; i < b; ++i)
    for (int j = 0; j < b; ++j)
      if (i != j && g.find_arc(bag[i], bag[j])) m[i][j] = 1;
  return m;
}

inline constexpr std::size_t kTableCap = 60'000'000;

}  // namespace detail

/// Dense DFVS table of one node. `choice` is filled at forget nodes only:
/// -1 = the forgotten vertex was deleted, t >= 0 = it was inserted at
/// position t of the ordering.
struct DfvsTable {
  VertexSet bag;
  std::vector<std::size_t> offset;  // per deletion mask; offset[2^b] = total
  std::vector<int> value;
  std::vector<signed char> choice;

  DfvsTable() = default;
  explicit DfvsTable(VertexSet b) : bag(std::move(b)) {
    const int s = static_cast<int>(bag.size());
    if (s > 20) throw CapExceeded("bag too large for the treewidth table");
    offset.assign((std::size_t{1} << s) + 1, 0);
    for (unsigned mask = 0; mask < (1u << s); ++mask) {
      offset[mask + 1] = offset[mask] + detail::factorial(s - std::popcount(mask));
      if (offset[mask + 1] > detail::kTableCap) throw CapExceeded("treewidth table exceeds size cap");
    }
    value.assign(offset.back(), kInfinity);
  }

  std::size_t size() const { return value.size(); }

  std::size_t index(unsigned mask, const std::vector<int>& order) const {
    return offset[mask] + detail::perm_rank(order);
  }

  /// Entry for deletion set x (vertex ids) and ordering sigma (vertex ids of B - x).
  int at(const VertexSet& x, const Ordering& sigma) const {
    unsigned mask = 0;
    for (Vertex v : x) mask |= 1u << detail::position_in(bag, v);
    std::vector<int> order;
    for (Vertex v : sigma) order.push_back(detail::position_in(bag, v));
    return value[index(mask, order)];
  }

  /// Calls f(mask, order, index) for every entry, in index order.
  template <class F>
  void for_each(F&& f) const {
    const int s = static_cast<int>(bag.size());
    std::size_t idx = 0;
    for (unsigned mask = 0; mask < (1u << s); ++mask) {
      std::vector<int> order;
      for (int q = 0; q < s; ++q)
        if (!(mask >> q & 1)) order.push_back(q);
      do f(mask, order, idx++);
      while (std::next_permutation(order.begin(), order.end()));
    }
  }
};

inline DfvsTable dfvs_leaf() {
  DfvsTable t(VertexSet{});
  t.value[0] = 0;
  return t;
}

/// Introduce v: entries with v deleted copy the child; otherwise every
/// neighbor of v in B - X must sit on the correct side of v in the ordering.
inline DfvsTable dfvs_introduce(const DiGraph& g, const DfvsTable& child, const VertexSet& bag, Vertex v) {
  DfvsTable t(bag);
  const int p = detail::position_in(bag, v);
  const auto adj = detail::bag_arcs(g, bag);
  auto down = [p](int q) { return q < p ? q : q - 1; };
  auto down_mask = [p](unsigned m) { return (m & ((1u << p) - 1)) | ((m >> (p + 1)) << p); };
  t.for_each([&](unsigned mask, const std::vector<int>& order, std::size_t idx) {
    std::vector<int> sub;
    if (mask >> p & 1) {
      for (int q : order) sub.push_back(down(q));
      t.value[idx] = child.value[child.index(down_mask(mask), sub)];
      return;
    }
    bool before = true;
    for (int q : order) {
      if (q == p) {
        before = false;
        continue;
      }
      if (before && adj[p][q]) return;   // v -> q but q precedes v
      if (!before && adj[q][p]) return;  // q -> v but q follows v
      sub.push_back(down(q));
    }
    t.value[idx] = child.value[child.index(down_mask(mask), sub)];
  });
  return t;
}

/// Forget v: either v was deleted (cost 1) or it sits somewhere in an
/// extension of the ordering.
inline DfvsTable dfvs_forget(const DfvsTable& child, const VertexSet& bag, Vertex v) {
  DfvsTable t(bag);
  t.choice.assign(t.size(), -1);
  const int pv = detail::position_in(child.bag, v);
  auto up = [pv](int q) { return q < pv ? q : q + 1; };
  auto up_mask = [pv](unsigned m) { return (m & ((1u << pv) - 1)) | ((m >> pv) << (pv + 1)); };
  t.for_each([&](unsigned mask, const std::vector<int>& order, std::size_t idx) {
    std::vector<int> sub;
    for (int q : order) sub.push_back(up(q));
    const unsigned cm = up_mask(mask);
    int best = detail::add_capped(child.value[child.index(cm | (1u << pv), sub)], 1);
    signed char how = -1;
    for (int pos = 0; pos <= static_cast<int>(sub.size()); ++pos) {
      std::vector<int> ext = sub;
      ext.insert(ext.begin() + pos, pv);
      int val = child.value[child.index(cm, ext)];
      if (val < best) {
        best = val;
        how = static_cast<signed char>(pos);
      }
    }
    t.value[idx] = best;
    t.choice[idx] = how;
  });
  return t;
}

inline DfvsTable dfvs_join(const DfvsTable& a, const DfvsTable& b) {
  DfvsTable t(a.bag);
  for (std::size_t i = 0; i < t.size(); ++i) t.value[i] = detail::add_capped(a.value[i], b.value[i]);
  return t;
}

/// Every node's table, indexed like nd.nodes.
inline std::vector<DfvsTable> dfvs_tables(const DiGraph& g, const NiceTreeDecomposition& nd) {
  std::vector<DfvsTable> tables(nd.nodes.size());
  for (std::size_t i = 0; i < nd.nodes.size(); ++i) {
    const NiceNode& x = nd.nodes[i];
    switch (x.kind) {
      case NodeKind::Leaf: tables[i] = dfvs_leaf(); break;
      case NodeKind::Introduce: tables[i] = dfvs_introduce(g, tables[x.children[0]], x.bag, x.vertex); break;
      case NodeKind::Forget: tables[i] = dfvs_forget(tables[x.children[0]], x.bag, x.vertex); break;
      case NodeKind::Join: tables[i] = dfvs_join(tables[x.children[0]], tables[x.children[1]]); break;
    }
  }
  return tables;
}

inline OracleResult solve_dfvs_tw(const DiGraph& g, const NiceTreeDecomposition& nd) {
  validate_nice(g, nd);
  const auto tables = dfvs_tables(g, nd);
  OracleResult result{tables[nd.root].value[0], {}};

  struct State {
    int node;
    unsigned mask;
    std::vector<int> order;
  };
  std::vector<State> stack{{nd.root, 0, {}}};
  while (!stack.empty()) {
    State s = std::move(stack.back());
    stack.pop_back();
    const NiceNode& x = nd.nodes[s.node];
    if (x.kind == NodeKind::Leaf) continue;
    const int c = x.children[0];
    if (x.kind == NodeKind::Join) {
      stack.push_back({x.children[1], s.mask, s.order});
      stack.push_back({c, s.mask, s.order});
    } else if (x.kind == NodeKind::Introduce) {
      const int p = detail::position_in(x.bag, x.vertex);
      std::vector<int> sub;
      for (int q : s.order)
        if (q != p) sub.push_back(q < p ? q : q - 1);
      unsigned m = (s.mask & ((1u << p) - 1)) | ((s.mask >> (p + 1)) << p);
      stack.push_back({c, m, sub});
    } else {
      const int pv = detail::position_in(nd.nodes[c].bag, x.vertex);
      std::vector<int> sub;
      for (int q : s.order) sub.push_back(q < pv ? q : q + 1);
      unsigned m = (s.mask & ((1u << pv) - 1)) | ((s.mask >> pv) << (pv + 1));
      const signed char how = tables[s.node].choice[tables[s.node].index(s.mask, s.order)];
      if (how < 0) {
        result.witness.push_back(x.vertex);
        m |= 1u << pv;
      } else {
        sub.insert(sub.begin() + how, pv);
      }
      stack.push_back({c, m, sub});
    }
  }
  std::sort(result.witness.begin(), result.witness.end());
  if (static_cast<int>(result.witness.size()) != result.optimum || !is_acyclic(without(g, result.witness, {})))
    throw std::logic_error("treewidth DP produced an invalid DFVS witness");
  return result;
}

// ---------------------------------------------------------------------------
// DFAS
// ---------------------------------------------------------------------------

/// Dense DFAS table: one entry per ordering of the whole bag.
struct DfasTable {
  VertexSet bag;
  std::vector<int> value;
  std::vector<signed char> choice;

  DfasTable() = default;
  explicit DfasTable(VertexSet b) : bag(std::move(b)) {
    const std::size_t size = detail::factorial(static_cast<int>(bag.size()));
    if (bag.size() > 12 || size > detail::kTableCap) throw CapExceeded("treewidth table exceeds size cap");
    value.assign(size, kInfinity);
  }

  std::size_t size() const { return value.size(); }

  int at(const Ordering& sigma) const {
    std::vector<int> order;
    for (Vertex v : sigma) order.push_back(detail::position_in(bag, v));
    return value[detail::perm_rank(order)];
  }

  template <class F>
  void for_each(F&& f) const {
    std::vector<int> order(bag.size());
    std::iota(order.begin(), order.end(), 0);
    std::size_t idx = 0;
    do f(order, idx++);
    while (std::next_permutation(order.begin(), order.end()));
  }
};

namespace detail {

/// Arc indices between bag vertices that run backwards with respect to order.
inline std::vector<int> backward_arcs(const DiGraph& g, const VertexSet& bag, const std::vector<int>& order,
                                      int only = -1) {
  std::vector<int> out;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      if (only >= 0 && order[i] != only && order[j] != only) continue;
      if (auto a = g.find_arc(bag[order[j]], bag[order[i]])) out.push_back(*a);
    }
  return out;
}

}  // namespace detail

inline DfasTable dfas_leaf() {
  DfasTable t(VertexSet{});
  t.value[0] = 0;
  return t;
}

/// Introduce v: arcs between v and the bag that disagree with the ordering
/// have both endpoints in the bag for the first time here and must be paid.
inline DfasTable dfas_introduce(const DiGraph& g, const DfasTable& child, const VertexSet& bag, Vertex v) {
  DfasTable t(bag);
  const int p = detail::position_in(bag, v);
  t.for_each([&](const std::vector<int>& order, std::size_t idx) {
    std::vector<int> sub;
    for (int q : order)
      if (q != p) sub.push_back(q < p ? q : q - 1);
    const int cost = static_cast<int>(detail::backward_arcs(g, bag, order, p).size());
    t.value[idx] = detail::add_capped(child.value[detail::perm_rank(sub)], cost);
  });
  return t;
}

inline DfasTable dfas_forget(const DfasTable& child, const VertexSet& bag, Vertex v) {
  DfasTable t(bag);
  t.choice.assign(t.size(), 0);
  const int pv = detail::position_in(child.bag, v);
  t.for_each([&](const std::vector<int>& order, std::size_t idx) {
    std::vector<int> sub;
    for (int q : order) sub.push_back(q < pv ? q : q + 1);
    int best = kInfinity;
    for (int pos = 0; pos <= static_cast<int>(sub.size()); ++pos) {
      std::vector<int> ext = sub;
      ext.insert(ext.begin() + pos, pv);
      int val = child.value[detail::perm_rank(ext)];
      if (val < best) {
        best = val;
        t.choice[idx] = static_cast<signed char>(pos);
      }
    }
    t.value[idx] = best;
  });
  return t;
}

/// Both children paid for the backward arcs inside the shared bag; count them once.
inline DfasTable dfas_join(const DiGraph& g, const DfasTable& a, const DfasTable& b) {
  DfasTable t(a.bag);
  t.for_each([&](const std::vector<int>& order, std::size_t idx) {
    const int shared = static_cast<int>(detail::backward_arcs(g, t.bag, order).size());
    if (a.value[idx] >= kInfinity || b.value[idx] >= kInfinity) return;
    t.value[idx] = a.value[idx] + b.value[idx] - shared;
  });
  return t;
}

inline std::vector<DfasTable> dfas_tables(const DiGraph& g, const NiceTreeDecomposition& nd) {
  std::vector<DfasTable> tables(nd.nodes.size());
  for (std::size_t i = 0; i < nd.nodes.size(); ++i) {
    const NiceNode& x = nd.nodes[i];
    switch (x.kind) {
      case NodeKind::Leaf: tables[i] = dfas_leaf(); break;
      case NodeKind::Introduce: tables[i] = dfas_introduce(g, tables[x.children[0]], x.bag, x.vertex); break;
      case NodeKind::Forget: tables[i] = dfas_forget(tables[x.children[0]], x.bag, x.vertex); break;
      case NodeKind::Join: tables[i] = dfas_join(g, tables[x.children[0]], tables[x.children[1]]); break;
    }
  }
  return tables;
}

/// Witness holds arc indices.
inline OracleResult solve_dfas_tw(const DiGraph& g, const NiceTreeDecomposition& nd) {
  validate_nice(g, nd);
  const auto tables = dfas_tables(g, nd);
  OracleResult result{tables[nd.root].value[0], {}};
  std::set<int> removed;
  std::vector<std::pair<int, std::vector<int>>> stack{{nd.root, {}}};
  while (!stack.empty()) {
    auto [node, order] = std::move(stack.back());
    stack.pop_back();
    const NiceNode& x = nd.nodes[node];
    if (x.kind == NodeKind::Leaf) continue;
    const int c = x.children[0];
    if (x.kind == NodeKind::Join) {
      stack.push_back({x.children[1], order});
      stack.push_back({c, order});
    } else if (x.kind == NodeKind::Introduce) {
      const int p = detail::position_in(x.bag, x.vertex);
      for (int a : detail::backward_arcs(g, x.bag, order, p)) removed.insert(a);
      std::vector<int> sub;
      for (int q : order)
        if (q != p) sub.push_back(q < p ? q : q - 1);
      stack.push_back({c, sub});
    } else {
      const int pv = detail::position_in(nd.nodes[c].bag, x.vertex);
      std::vector<int> sub;
      for (int q : order) sub.push_back(q < pv ? q : q + 1);
      const signed char how = tables[node].choice[detail::perm_rank(order)];
      sub.insert(sub.begin() + how, pv);
      stack.push_back({c, sub});
    }
  }
  result.witness.assign(removed.begin(), removed.end());
  if (static_cast<int>(result.witness.size()) != result.optimum || !is_acyclic(without(g, {}, result.witness)))
    throw std::logic_error("treewidth DP produced an invalid DFAS witness");
  return result;
}

/// Convenience: nice decomposition from the exact search (small graphs) or min-fill.
inline NiceTreeDecomposition auto_nice(const DiGraph& g, int exact_cap = 12) {
  const TreeDecomposition td = g.vertex_count() <= exact_cap ? td_exact_small(g, exact_cap) : td_heuristic(g);
  return make_nice(td);
}

}  // namespace dfvs
