#pragma once

// Minimum DFVS over a sphere-cut decomposition.
//
// For the tree edge above node x, an entry (X, P) maps to the fewest
// vertices S of G(x) outside med(x) such that G(x) - (X + S) is acyclic and
// its reachability on med(x) \ X is P. Only finite entries are stored, and
// patterns arise only as joins of child patterns.

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "dfvs/digraph.hpp"
#include "dfvs/error.hpp"
#include "dfvs/oracle.hpp"
#include "dfvs/patterns.hpp"
#include "dfvs/sc_decomposition.hpp"

namespace dfvs {

struct PlanarDpKey {
  std::uint64_t deleted = 0;  // bit i: med[i] is in X
  std::vector<std::uint64_t> rows;
  friend auto operator<=>(const PlanarDpKey&, const PlanarDpKey&) = default;
};

struct PlanarDpEntry {
  PlanarDpKey key;
  ConnectivityPattern pattern;
  int value = 0;
  int left = -1, right = -1;  // child entries (merge nodes)
  VertexSet removed;          // Y at merges, S at leaves
};

struct PlanarDpTable {
  std::vector<Vertex> med;
  std::vector<PlanarDpEntry> entries;
  std::map<PlanarDpKey, int> index;

  VertexSet deleted(const PlanarDpEntry& en) const {
    VertexSet x;
    for (int i = 0; i < static_cast<int>(med.size()); ++i)
      if (en.key.deleted >> i & 1) x.push_back(med[i]);
    return normalized(x);
  }

  /// Keeps the smaller value; on ties the earlier candidate stays.
  void offer(PlanarDpEntry cand) {
    auto [it, fresh] = index.emplace(cand.key, static_cast<int>(entries.size()));
    if (fresh) {
      entries.push_back(std::move(cand));
    } else if (cand.value < entries[it->second].value) {
      entries[it->second] = std::move(cand);
    }
  }

  const PlanarDpEntry* find(const PlanarDpKey& k) const {
    auto it = index.find(k);
    return it == index.end() ? nullptr : &entries[it->second];
  }
};

namespace detail {

inline PlanarDpKey key_of(std::uint64_t deleted, const ConnectivityPattern& p) { return {deleted, p.rows()}; }

inline std::vector<Vertex> surviving(const std::vector<Vertex>& med, std::uint64_t deleted) {
  std::vector<Vertex> out;
  for (int i = 0; i < static_cast<int>(med.size()); ++i)
    if (!(deleted >> i & 1)) out.push_back(med[i]);
  return out;
}

}  // namespace detail

/// Entries for the edge above a leaf carrying arc (u, v).
inline PlanarDpTable leaf_table(const Arc& arc, const std::vector<Vertex>& med) {
  PlanarDpTable t;
  t.med = med;
  VertexSet inner;
  for (Vertex v : {arc.tail, arc.head})
    if (std::find(med.begin(), med.end(), v) == med.end() && std::find(inner.begin(), inner.end(), v) == inner.end())
      inner.push_back(v);
  const int k = static_cast<int>(med.size()), s = static_cast<int>(inner.size());
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << k); ++x)
    for (unsigned y = 0; y < (1u << s); ++y) {
      VertexSet gone;
      for (int i = 0; i < k; ++i)
        if (x >> i & 1) gone.push_back(med[i]);
      VertexSet removed;
      for (int i = 0; i < s; ++i)
        if (y >> i & 1) removed.push_back(inner[i]);
      gone.insert(gone.end(), removed.begin(), removed.end());
      auto alive = [&](Vertex v) { return std::find(gone.begin(), gone.end(), v) == gone.end(); };
      ConnectivityPattern p = PointRelation::identity(detail::surviving(med, x));
      if (alive(arc.tail) && alive(arc.head) && p.position(arc.tail) >= 0 && p.position(arc.head) >= 0)
        p.insert(arc.tail, arc.head);
      PlanarDpEntry en{detail::key_of(x, p), p, static_cast<int>(removed.size()), -1, -1, normalized(removed)};
      t.offer(std::move(en));
    }
  return t;
}

/// Combines the tables of the two children of a node into the table for the
/// edge above it, whose middle set is med.
inline PlanarDpTable dp_merge(const PlanarDpTable& t1, const PlanarDpTable& t2, const std::vector<Vertex>& med) {
  auto in = [](const std::vector<Vertex>& s, Vertex v) { return std::find(s.begin(), s.end(), v) != s.end(); };
  for (Vertex v : med)
    if (!in(t1.med, v) && !in(t2.med, v))
      throw DecompositionError("middle vertex " + std::to_string(v) + " is in neither child middle set");
  std::vector<Vertex> shared;
  for (Vertex v : t1.med)
    if (in(t2.med, v)) shared.push_back(v);
  auto signature = [&](const PlanarDpTable& t, const PlanarDpEntry& en) {
    std::uint64_t sig = 0;
    for (int i = 0; i < static_cast<int>(shared.size()); ++i) {
      const int p = static_cast<int>(std::find(t.med.begin(), t.med.end(), shared[i]) - t.med.begin());
      if (en.key.deleted >> p & 1) sig |= std::uint64_t{1} << i;
    }
    return sig;
  };
  std::map<std::uint64_t, std::vector<int>> bucket;
  for (int j = 0; j < static_cast<int>(t2.entries.size()); ++j) bucket[signature(t2, t2.entries[j])].push_back(j);

  PlanarDpTable out;
  out.med = med;
  for (int i = 0; i < static_cast<int>(t1.entries.size()); ++i) {
    const auto& a = t1.entries[i];
    auto it = bucket.find(signature(t1, a));
    if (it == bucket.end()) continue;
    const VertexSet xa = t1.deleted(a);
    for (int j : it->second) {
      const auto& b = t2.entries[j];
      VertexSet d = xa;
      const VertexSet xb = t2.deleted(b);
      d.insert(d.end(), xb.begin(), xb.end());
      d = normalized(d);
      std::uint64_t x = 0;
      VertexSet y;
      for (Vertex v : d) {
        auto pos = std::find(med.begin(), med.end(), v);
        if (pos == med.end())
          y.push_back(v);
        else
          x |= std::uint64_t{1} << (pos - med.begin());
      }
      auto p = join(a.pattern, b.pattern, med, d);
      if (!p) continue;
      const int value = a.value + b.value + static_cast<int>(y.size());
      out.offer({detail::key_of(x, *p), *p, value, i, j, y});
    }
  }
  return out;
}

/// All tables, indexed by node; the root's table is empty.
struct PlanarDp {
  std::vector<PlanarDpTable> tables;
  int top = -1;  // the root's only child; its table holds the answer
};

inline PlanarDp planar_dp_tables(const DiGraph& g, const ScDecomposition& d) {
  PlanarDp dp;
  dp.tables.resize(d.node_count());
  auto ch = d.children();
  for (int x : d.postorder()) {
    if (d.parent[x] < 0) {
      dp.top = ch[x][0];
      continue;
    }
    if (d.leaf_arc[x] >= 0)
      dp.tables[x] = leaf_table(g.arc(d.leaf_arc[x]), d.med[x]);
    else
      dp.tables[x] = dp_merge(dp.tables[ch[x][0]], dp.tables[ch[x][1]], d.med[x]);
  }
  return dp;
}

/// Entry used by an optimal solution at each node, -1 at the root.
inline std::vector<int> optimal_entries(const PlanarDp& dp, const ScDecomposition& d) {
  std::vector<int> used(d.node_count(), -1);
  const auto& top = dp.tables[dp.top];
  if (top.entries.empty()) return used;
  auto ch = d.children();
  std::vector<std::pair<int, int>> stack{{dp.top, top.index.begin()->second}};
  while (!stack.empty()) {
    auto [x, e] = stack.back();
    stack.pop_back();
    used[x] = e;
    const auto& en = dp.tables[x].entries[e];
    if (en.left >= 0) {
      stack.push_back({ch[x][0], en.left});
      stack.push_back({ch[x][1], en.right});
    }
  }
  return used;
}

/// Minimum DFVS of a connected bridgeless plane digraph.
inline OracleResult solve_dfvs_planar(const DiGraph& g, const Embedding& e, const ScDecomposition& d) {
  auto rep = validate_sc(g, e, d);
  if (!rep.ok) throw DecompositionError("invalid sc-decomposition: " + rep.error);
  PlanarDp dp = planar_dp_tables(g, d);
  const auto& top = dp.tables[dp.top];
  if (top.entries.size() != 1) throw std::logic_error("top table must hold exactly the empty pattern");
  OracleResult r;
  r.optimum = top.entries[0].value;
  auto used = optimal_entries(dp, d);
  for (int x = 0; x < d.node_count(); ++x)
    if (used[x] >= 0) {
      const auto& rem = dp.tables[x].entries[used[x]].removed;
      r.witness.insert(r.witness.end(), rem.begin(), rem.end());
    }
  r.witness = normalized(r.witness);
  if (static_cast<int>(r.witness.size()) != r.optimum || !is_acyclic(without(g, r.witness, {})))
    throw std::logic_error("planar witness does not match the optimum");
  return r;
}

/// Any plane digraph: sums the optima of its connected bridgeless pieces.
/// width, if given, receives the largest sc-decomposition width used.
inline OracleResult solve_dfvs_planar_full(const DiGraph& g, const Embedding& e, int* width = nullptr) {
  OracleResult r;
  r.optimum = 0;
  if (width) *width = 0;
  for (const auto& pc : preprocess_planar(g, e)) {
    const ScDecomposition d = build_sc_heuristic(pc.piece.graph, pc.embedding);
    if (width) *width = std::max(*width, d.width());
    auto part = solve_dfvs_planar(pc.piece.graph, pc.embedding, d);
    r.optimum += part.optimum;
    for (Vertex v : part.witness) r.witness.push_back(pc.piece.to_original[v]);
  }
  r.witness = normalized(r.witness);
  if (!is_acyclic(without(g, r.witness, {}))) throw std::logic_error("planar witness leaves a cycle");
  return r;
}

}  // namespace dfvs
