#pragma once

// Brute-force ground truth. Everything here is deliberately naive: the other
// modules are checked against these answers, so the code must stay easy to
// trust.

#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "dfvs/digraph.hpp"
#include "dfvs/error.hpp"
#include "dfvs/formula.hpp"

namespace dfvs {

/// Optimum of a deletion problem with one optimal deletion set. The witness
/// holds vertex ids for DFVS and arc indices for DFAS.
struct OracleResult {
  int optimum = 0;
  std::vector<int> witness;
};

namespace detail {

/// Advances comb (sorted indices into [0, n)) to the next combination in
/// lexicographic order; false when exhausted.
inline bool next_combination(std::vector<int>& comb, int n) {
  const int k = static_cast<int>(comb.size());
  int i = k - 1;
  while (i >= 0 && comb[i] == n - k + i) --i;
  if (i < 0) return false;
  ++comb[i];
  for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
  return true;
}

/// Acyclicity test on a compact arc list over vertices [0, n), with vertex and
/// arc removal masks. Kahn's algorithm; no allocation beyond the scratch vectors.
class AcyclicityChecker {
 public:
  AcyclicityChecker(int n, std::vector<std::pair<int, int>> arcs) : n_(n), arcs_(std::move(arcs)), out_(n) {
    for (int i = 0; i < static_cast<int>(arcs_.size()); ++i) out_[arcs_[i].first].push_back(i);
    indeg_.resize(n);
    stack_.reserve(n);
  }

  bool acyclic(const std::vector<char>& vertex_removed, const std::vector<char>& arc_removed) {
    std::fill(indeg_.begin(), indeg_.end(), 0);
    int alive = 0;
    for (int v = 0; v < n_; ++v) alive += !vertex_removed[v];
    for (int i = 0; i < static_cast<int>(arcs_.size()); ++i)
      if (live(i, vertex_removed, arc_removed)) ++indeg_[arcs_[i].second];
    stack_.clear();
    for (int v = 0; v < n_; ++v)
      if (!vertex_removed[v] && indeg_[v] == 0) stack_.push_back(v);
    int done = 0;
    while (!stack_.empty()) {
      int v = stack_.back();
      stack_.pop_back();
      ++done;
      for (int i : out_[v])
        if (live(i, vertex_removed, arc_removed) && --indeg_[arcs_[i].second] == 0) stack_.push_back(arcs_[i].second);
    }
    return done == alive;
  }

 private:
  bool live(int i, const std::vector<char>& vr, const std::vector<char>& ar) const {
    return !ar[i] && !vr[arcs_[i].first] && !vr[arcs_[i].second];
  }
  int n_;
  std::vector<std::pair<int, int>> arcs_;
  std::vector<std::vector<int>> out_;
  std::vector<int> indeg_;
  std::vector<int> stack_;
};

inline std::vector<std::pair<int, int>> zero_based_arcs(const DiGraph& g) {
  std::vector<std::pair<int, int>> arcs;
  for (const Arc& a : g.arcs()) arcs.emplace_back(a.tail - 1, a.head - 1);
  return arcs;
}

}  // namespace detail

/// Minimum directed feedback vertex set by subsets of increasing cardinality;
/// within a cardinality, subsets are tried in lexicographic order so the
/// witness is the lexicographically smallest optimum.
inline OracleResult min_dfvs_bruteforce(const DiGraph& g, int cap = 24) {
  const VertexSet verts = g.vertices();
  const int k = static_cast<int>(verts.size());
  if (k > cap) throw CapExceeded("brute-force DFVS limited to " + std::to_string(cap) + " vertices");
  detail::AcyclicityChecker checker(g.n(), detail::zero_based_arcs(g));
  std::vector<char> removed(g.n(), 0);
  for (Vertex v = 1; v <= g.n(); ++v) removed[v - 1] = !g.has_vertex(v);
  const std::vector<char> base = removed;
  const std::vector<char> no_arcs(g.arc_count(), 0);
  for (int size = 0; size <= k; ++size) {
    std::vector<int> comb(size);
    std::iota(comb.begin(), comb.end(), 0);
    do {
      removed = base;
      for (int i : comb) removed[verts[i] - 1] = 1;
      if (checker.acyclic(removed, no_arcs)) {
        OracleResult r{size, {}};
        for (int i : comb) r.witness.push_back(verts[i]);
        return r;
      }
    } while (detail::next_combination(comb, k));
  }
  throw std::logic_error("unreachable: deleting every vertex is acyclic");
}

/// Minimum directed feedback arc set; witness holds arc indices.
inline OracleResult min_dfas_bruteforce(const DiGraph& g, int cap = 64) {
  const int m = g.arc_count();
  if (m > cap) throw CapExceeded("brute-force DFAS limited to " + std::to_string(cap) + " arcs");
  detail::AcyclicityChecker checker(g.n(), detail::zero_based_arcs(g));
  std::vector<char> vertex_removed(g.n(), 0);
  for (Vertex v = 1; v <= g.n(); ++v) vertex_removed[v - 1] = !g.has_vertex(v);
  std::vector<char> removed(m, 0);
  for (int size = 0; size <= m; ++size) {
    std::vector<int> comb(size);
    std::iota(comb.begin(), comb.end(), 0);
    do {
      std::fill(removed.begin(), removed.end(), 0);
      for (int i : comb) removed[i] = 1;
      if (checker.acyclic(vertex_removed, removed)) return OracleResult{size, comb};
    } while (detail::next_combination(comb, m));
  }
  throw std::logic_error("unreachable: deleting every arc is acyclic");
}

/// True iff g has a topological ordering whose restriction to the vertices of
/// `fixed` is exactly `fixed`. Decided by threading a path through the fixed
/// vertices and testing acyclicity of the augmented multigraph.
inline bool extendable_ordering(const DiGraph& g, const Ordering& fixed) {
  auto arcs = detail::zero_based_arcs(g);
  for (std::size_t i = 0; i + 1 < fixed.size(); ++i) arcs.emplace_back(fixed[i] - 1, fixed[i + 1] - 1);
  detail::AcyclicityChecker checker(g.n(), arcs);
  std::vector<char> removed(g.n(), 0);
  for (Vertex v = 1; v <= g.n(); ++v) removed[v - 1] = !g.has_vertex(v);
  return checker.acyclic(removed, std::vector<char>(arcs.size(), 0));
}

/// Satisfying permutation of f, as the sequence of indices in increasing
/// position, or nullopt.
///
/// A permutation satisfies f iff one can pick a single constraint per clause
/// such that the union of the picked orderings (i1 -> i2 -> ... per
/// constraint) is acyclic: a satisfying permutation satisfies some constraint
/// per clause and is a topological order of their union; conversely any
/// topological order of an acyclic union satisfies every picked constraint.
/// The search enumerates picks depth-first and abandons a branch as soon as
/// the union becomes cyclic.
inline std::optional<std::vector<int>> perm_formula_solve(const PermFormula& f, double cap = 1e7) {
  f.check();
  double product = 1;
  for (const auto& clause : f.clauses) product *= static_cast<double>(clause.size());
  if (product > cap) throw CapExceeded("formula selection space exceeds cap");

  const int n = f.n;
  std::vector<std::vector<int>> adj(n + 1);
  auto reaches = [&](int from, int to) {
    std::vector<char> seen(n + 1, 0);
    std::vector<int> stack{from};
    seen[from] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      if (v == to) return true;
      for (int w : adj[v])
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    return false;
  };

  const int clauses = static_cast<int>(f.clauses.size());
  std::function<bool(int)> pick = [&](int c) -> bool {
    if (c == clauses) return true;
    for (const auto& con : f.clauses[c]) {
      std::size_t added = 0;
      bool ok = true;
      for (std::size_t i = 0; i + 1 < con.indices.size(); ++i) {
        int a = con.indices[i], b = con.indices[i + 1];
        if (reaches(b, a)) {
          ok = false;
          break;
        }
        adj[a].push_back(b);
        ++added;
      }
      if (ok && pick(c + 1)) return true;
      for (std::size_t i = 0; i < added; ++i) adj[con.indices[added - 1 - i]].pop_back();
    }
    return false;
  };
  if (!pick(0)) return std::nullopt;

  std::vector<Arc> arcs;
  std::set<Arc> seen;
  for (int v = 1; v <= n; ++v)
    for (int w : adj[v])
      if (seen.insert({v, w}).second) arcs.push_back({v, w});
  auto order = topological_order(DiGraph(n, std::move(arcs)));
  return *order;
}

inline bool perm_formula_sat(const PermFormula& f, double cap = 1e7) { return perm_formula_solve(f, cap).has_value(); }

/// k x k hitting set by enumerating all k^k row selectors.
inline bool hs_bruteforce(const HittingSetInstance& inst) {
  if (inst.k > 6) throw CapExceeded("hitting-set brute force limited to k <= 6");
  if (inst.k < 0) throw std::invalid_argument("negative k");
  const int k = inst.k;
  std::vector<int> col(k + 1, 1);  // col[row]
  while (true) {
    bool all_hit = true;
    for (const auto& s : inst.sets) {
      bool hit = false;
      for (const Cell& c : s)
        if (col[c.row] == c.col) hit = true;
      if (!hit) {
        all_hit = false;
        break;
      }
    }
    if (all_hit) return true;
    int r = 1;
    while (r <= k && col[r] == k) col[r++] = 1;
    if (r > k) return false;
    ++col[r];
  }
}

}  // namespace dfvs
