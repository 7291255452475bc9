#pragma once

// Relations on points of a circle: connectivity patterns of disk-drawn
// digraphs, the generated pattern gen(R), chord crossings and the
// crossing-reducing rewrite.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "dfvs/digraph.hpp"
#include "dfvs/error.hpp"

namespace dfvs {

/// Relation on a cyclically ordered set of at most 64 boundary points, stored
/// as one bit row per position. Serves both as a connectivity pattern
/// (reflexive, transitive) and as a set of directed chords (no loops).
class PointRelation {
 public:
  PointRelation() = default;

  explicit PointRelation(std::vector<Vertex> boundary) : boundary_(std::move(boundary)), rows_(boundary_.size(), 0) {
    if (boundary_.size() > 64) throw CapExceeded("relations support at most 64 boundary points");
    auto sorted = boundary_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("boundary repeats a point");
  }

  static PointRelation identity(std::vector<Vertex> boundary) {
    PointRelation r(std::move(boundary));
    for (int i = 0; i < r.size(); ++i) r.rows_[i] |= bit(i);
    return r;
  }

  const std::vector<Vertex>& boundary() const { return boundary_; }
  int size() const { return static_cast<int>(boundary_.size()); }

  int position(Vertex v) const {
    auto it = std::find(boundary_.begin(), boundary_.end(), v);
    return it == boundary_.end() ? -1 : static_cast<int>(it - boundary_.begin());
  }

  std::uint64_t row(int i) const { return rows_[i]; }
  const std::vector<std::uint64_t>& rows() const { return rows_; }
  bool has(int i, int j) const { return rows_[i] >> j & 1; }
  void set(int i, int j) { rows_[i] |= bit(j); }
  void unset(int i, int j) { rows_[i] &= ~bit(j); }

  bool contains(Vertex s, Vertex t) const {
    int i = position(s), j = position(t);
    return i >= 0 && j >= 0 && has(i, j);
  }
  void insert(Vertex s, Vertex t) { set(checked(s), checked(t)); }
  void erase(Vertex s, Vertex t) { unset(checked(s), checked(t)); }

  int pair_count() const {
    int c = 0;
    for (auto r : rows_) c += std::popcount(r);
    return c;
  }

  /// Pairs as vertex ids, in row-major position order.
  std::vector<std::pair<Vertex, Vertex>> pairs() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (int i = 0; i < size(); ++i)
      for (int j = 0; j < size(); ++j)
        if (has(i, j)) out.emplace_back(boundary_[i], boundary_[j]);
    return out;
  }

  Relation as_relation() const {
    auto p = pairs();
    return Relation(p.begin(), p.end());
  }

  bool is_reflexive() const {
    for (int i = 0; i < size(); ++i)
      if (!has(i, i)) return false;
    return true;
  }

  bool is_transitive() const {
    for (int i = 0; i < size(); ++i)
      for (int j = 0; j < size(); ++j)
        if (has(i, j) && (rows_[j] & ~rows_[i])) return false;
    return true;
  }

  PointRelation without_loops() const {
    PointRelation r = *this;
    for (int i = 0; i < size(); ++i) r.unset(i, i);
    return r;
  }

  /// Restriction to the points of `keep` (order of this boundary retained).
  PointRelation restricted(const VertexSet& keep) const {
    std::vector<Vertex> b;
    std::vector<int> from;
    for (int i = 0; i < size(); ++i)
      if (std::find(keep.begin(), keep.end(), boundary_[i]) != keep.end()) {
        b.push_back(boundary_[i]);
        from.push_back(i);
      }
    PointRelation r(b);
    for (std::size_t i = 0; i < from.size(); ++i)
      for (std::size_t j = 0; j < from.size(); ++j)
        if (has(from[i], from[j])) r.set(static_cast<int>(i), static_cast<int>(j));
    return r;
  }

  /// Same relation with the boundary rotated so that its smallest id comes first.
  PointRelation canonical() const {
    if (boundary_.empty()) return *this;
    const int k = size();
    const int shift = static_cast<int>(std::min_element(boundary_.begin(), boundary_.end()) - boundary_.begin());
    std::vector<Vertex> b(k);
    for (int i = 0; i < k; ++i) b[i] = boundary_[(i + shift) % k];
    PointRelation r(b);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        if (has((i + shift) % k, (j + shift) % k)) r.set(i, j);
    return r;
  }

  friend bool operator==(const PointRelation& a, const PointRelation& b) {
    auto ca = a.canonical(), cb = b.canonical();
    return ca.boundary_ == cb.boundary_ && ca.rows_ == cb.rows_;
  }
  friend bool operator<(const PointRelation& a, const PointRelation& b) {
    auto ca = a.canonical(), cb = b.canonical();
    return std::tie(ca.boundary_, ca.rows_) < std::tie(cb.boundary_, cb.rows_);
  }

 private:
  static std::uint64_t bit(int i) { return std::uint64_t{1} << i; }
  int checked(Vertex v) const {
    int p = position(v);
    if (p < 0) throw std::invalid_argument("point " + std::to_string(v) + " is not on the boundary");
    return p;
  }

  std::vector<Vertex> boundary_;
  std::vector<std::uint64_t> rows_;
};

using ConnectivityPattern = PointRelation;
using ChordRelation = PointRelation;

/// Directed chord between two boundary points.
struct Chord {
  Vertex tail = 0;
  Vertex head = 0;
  bool operator==(const Chord&) const = default;
};

/// Do the chords' endpoints alternate around the circle? Chords sharing an
/// endpoint never cross. Direction is irrelevant.
inline bool crossing_positions(int a, int b, int c, int d) {
  if (a == c || a == d || b == c || b == d) return false;
  if (a > b) std::swap(a, b);
  return (a < c && c < b) != (a < d && d < b);
}

inline bool crossing(const Chord& c1, const Chord& c2, const std::vector<Vertex>& t) {
  auto pos = [&](Vertex v) {
    auto it = std::find(t.begin(), t.end(), v);
    if (it == t.end()) throw std::invalid_argument("chord endpoint not on the boundary");
    return static_cast<int>(it - t.begin());
  };
  return crossing_positions(pos(c1.tail), pos(c1.head), pos(c2.tail), pos(c2.head));
}

/// Reachability among the boundary points t of g.
inline ConnectivityPattern induced_pattern(const DiGraph& g, const std::vector<Vertex>& t) {
  PointRelation p(t);
  for (int i = 0; i < p.size(); ++i) {
    auto seen = reachable_from(g, t[i]);
    for (int j = 0; j < p.size(); ++j)
      if (seen[t[j]]) p.set(i, j);
  }
  return p;
}

/// gen(R). A partition of the circle into two arcs is given by two distinct
/// gaps g1 < g2 (gap g lies between positions g and g+1): arc A holds
/// positions g1+1..g2, arc B the rest. (s, t) is generated iff every such
/// partition separating them has an R-pair from s's arc into t's arc.
inline ConnectivityPattern generate(const ChordRelation& r) {
  const int k = r.size();
  PointRelation out = PointRelation::identity(r.boundary());
  if (k < 2) return out;
  const std::uint64_t all = k == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << k) - 1);
  std::vector<std::uint64_t> gen_rows(k, 0);
  for (int i = 0; i < k; ++i) gen_rows[i] = all & ~(std::uint64_t{1} << i);
  for (int g1 = 0; g1 < k; ++g1)
    for (int g2 = g1 + 1; g2 < k; ++g2) {
      std::uint64_t a_mask = 0;
      for (int p = g1 + 1; p <= g2; ++p) a_mask |= std::uint64_t{1} << p;
      const std::uint64_t b_mask = all & ~a_mask;
      bool ab = false, ba = false;
      for (int i = 0; i < k; ++i) {
        if (a_mask >> i & 1) ab = ab || (r.row(i) & b_mask);
        else ba = ba || (r.row(i) & a_mask);
      }
      // pairs not witnessed by this partition drop out
      for (int i = 0; i < k; ++i) {
        if (a_mask >> i & 1) {
          if (!ab) gen_rows[i] &= ~b_mask;
        } else if (!ba) {
          gen_rows[i] &= ~a_mask;
        }
      }
    }
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (gen_rows[i] >> j & 1) out.set(i, j);
  return out;
}

// ---------------------------------------------------------------------------
// Crossings and cliques of chords
// ---------------------------------------------------------------------------

namespace detail {

/// Non-loop pairs of r as position pairs, row-major.
inline std::vector<std::pair<int, int>> chord_positions(const ChordRelation& r) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < r.size(); ++i)
    for (int j = 0; j < r.size(); ++j)
      if (i != j && r.has(i, j)) out.emplace_back(i, j);
  return out;
}

inline void bron_kerbosch(const std::vector<std::uint64_t>& adj, std::uint64_t r, std::uint64_t p, std::uint64_t x,
                          std::uint64_t& best) {
  if (!p && !x) {
    if (std::popcount(r) > std::popcount(best)) best = r;
    return;
  }
  if (std::popcount(r) + std::popcount(p) <= std::popcount(best)) return;
  const std::uint64_t px = p | x;
  int pivot = std::countr_zero(px);
  int most = -1;
  for (std::uint64_t s = px; s; s &= s - 1) {
    int u = std::countr_zero(s);
    int c = std::popcount(p & adj[u]);
    if (c > most) {
      most = c;
      pivot = u;
    }
  }
  for (std::uint64_t cand = p & ~adj[pivot]; cand; cand &= cand - 1) {
    int v = std::countr_zero(cand);
    const std::uint64_t vb = std::uint64_t{1} << v;
    bron_kerbosch(adj, r | vb, p & adj[v], x & adj[v], best);
    p &= ~vb;
    x |= vb;
  }
}

/// Maximum set of pairwise crossing chords, as indices into chord_positions(r).
inline std::vector<int> max_crossing_clique(const ChordRelation& r) {
  const auto chords = chord_positions(r);
  const int m = static_cast<int>(chords.size());
  if (m > 64) throw CapExceeded("clique search limited to 64 chords");
  std::vector<std::uint64_t> adj(m, 0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i != j && crossing_positions(chords[i].first, chords[i].second, chords[j].first, chords[j].second))
        adj[i] |= std::uint64_t{1} << j;
  std::uint64_t best = 0;
  const std::uint64_t all = m == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << m) - 1);
  if (m > 0) bron_kerbosch(adj, 0, all, 0, best);
  std::vector<int> out;
  for (; best; best &= best - 1) out.push_back(std::countr_zero(best));
  return out;
}

}  // namespace detail

/// Number of unordered pairs of crossing chords (loops ignored).
inline int crossing_count(const ChordRelation& r) {
  const auto chords = detail::chord_positions(r);
  int c = 0;
  for (std::size_t i = 0; i < chords.size(); ++i)
    for (std::size_t j = i + 1; j < chords.size(); ++j)
      c += crossing_positions(chords[i].first, chords[i].second, chords[j].first, chords[j].second);
  return c;
}

/// Largest number of pairwise crossing chords.
inline int clique_number(const ChordRelation& r) {
  return static_cast<int>(detail::max_crossing_clique(r).size());
}

/// Eight points a,b,c,d,x,y,z,u in cyclic order such that (a,x), (b,y), (c,z),
/// (d,u) are chords of the relation.
struct OrderedQuad {
  Vertex a, b, c, d, x, y, z, u;
  bool operator==(const OrderedQuad&) const = default;
  std::vector<Vertex> points() const { return {a, b, c, d, x, y, z, u}; }
  std::vector<Chord> chords() const { return {{a, x}, {b, y}, {c, z}, {d, u}}; }
};

/// True iff the eight points are distinct and appear in this cyclic order,
/// clockwise or counterclockwise, on the boundary of r.
inline bool quad_in_order(const ChordRelation& r, const OrderedQuad& q) {
  std::vector<int> pos;
  for (Vertex v : q.points()) {
    int p = r.position(v);
    if (p < 0) return false;
    pos.push_back(p);
  }
  auto sorted = pos;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  auto cyclic = [&](bool reverse) {
    const int k = r.size();
    int descents = 0;
    for (int i = 0; i < 8; ++i) {
      int from = pos[i], to = pos[(i + 1) % 8];
      if (reverse) std::swap(from, to);
      if (((to - from) % k + k) % k == 0) return false;
      descents += to < from;
    }
    return descents == 1;
  };
  return cyclic(false) || cyclic(true);
}

/// If the chords of r contain 7 pairwise crossing ones, four of them with
/// endpoints in the required cyclic order. Take one chord (a, b) of the
/// 7-clique; the other six each have one endpoint on either side of it, so
/// three have their tails on the same side. Those three plus (a, b) run from
/// one arc to the complementary one, and sorting tails and heads along the
/// circle pairs them up.
inline std::optional<OrderedQuad> find_ordered_4clique(const ChordRelation& r) {
  const auto chords = detail::chord_positions(r);
  const auto clique = detail::max_crossing_clique(r);
  if (clique.size() < 7) return std::nullopt;
  const int k = r.size();
  auto [pa, pb] = chords[clique[0]];
  auto in_open = [k](int from, int to, int p) {  // p strictly after from and before to, clockwise
    int d = ((p - from) % k + k) % k, span = ((to - from) % k + k) % k;
    return d > 0 && d < span;
  };
  std::vector<int> side_ab, side_ba;
  for (std::size_t i = 1; i < 7; ++i) {
    int tail = chords[clique[i]].first;
    (in_open(pa, pb, tail) ? side_ab : side_ba).push_back(clique[i]);
  }
  const bool first = side_ab.size() >= 3;
  std::vector<int> pick(first ? side_ab.begin() : side_ba.begin(), (first ? side_ab.begin() : side_ba.begin()) + 3);
  pick.push_back(clique[0]);
  // tails arc starts at a (first case) or just after b; heads arc at b or just after a
  const int tail_start = first ? pa : (pb + 1) % k;
  const int head_start = first ? pb : (pa + 1) % k;
  std::vector<int> tails, heads;
  for (int c : pick) {
    tails.push_back(chords[c].first);
    heads.push_back(chords[c].second);
  }
  auto by_offset = [k](int start) {
    return [k, start](int p, int q) { return ((p - start) % k + k) % k < ((q - start) % k + k) % k; };
  };
  std::sort(tails.begin(), tails.end(), by_offset(tail_start));
  std::sort(heads.begin(), heads.end(), by_offset(head_start));
  const auto& b = r.boundary();
  OrderedQuad q{b[tails[0]], b[tails[1]], b[tails[2]], b[tails[3]], b[heads[0]], b[heads[1]], b[heads[2]], b[heads[3]]};
  for (const Chord& c : q.chords())
    if (!r.contains(c.tail, c.head)) throw std::logic_error("ordered 4-clique pairing failed");
  if (!quad_in_order(r, q)) throw std::logic_error("ordered 4-clique order check failed");
  return q;
}

/// Replaces (b,y), (c,z) by (b,z), (c,y). Throws std::invalid_argument on a
/// bad witness and std::logic_error if crossings fail to decrease.
inline ChordRelation rewrite_step(const ChordRelation& r, const OrderedQuad& q) {
  if (!quad_in_order(r, q)) throw std::invalid_argument("witness points are not in cyclic order");
  for (const Chord& c : q.chords())
    if (!r.contains(c.tail, c.head)) throw std::invalid_argument("witness chord is not in the relation");
  ChordRelation out = r;
  out.erase(q.b, q.y);
  out.erase(q.c, q.z);
  out.insert(q.b, q.z);
  out.insert(q.c, q.y);
  if (crossing_count(out) >= crossing_count(r)) throw std::logic_error("rewrite did not reduce crossings");
  return out;
}

struct SimplifyTrace {
  ChordRelation result;
  std::vector<int> crossings;  // crossing count before each step, then the final count
};

/// Rewrites until no 7 chords pairwise cross. Loops are dropped first.
inline SimplifyTrace simplify_traced(const ChordRelation& r) {
  SimplifyTrace t{r.without_loops(), {}};
  t.crossings.push_back(crossing_count(t.result));
  while (auto q = find_ordered_4clique(t.result)) {
    t.result = rewrite_step(t.result, *q);
    t.crossings.push_back(crossing_count(t.result));
  }
  return t;
}

inline ChordRelation simplify(const ChordRelation& r) { return simplify_traced(r).result; }

// ---------------------------------------------------------------------------
// Counting
// ---------------------------------------------------------------------------

/// Little Schroeder numbers s_0..s_n: 1, 1, 3, 11, 45, ...
inline std::vector<std::uint64_t> little_schroeder(int n) {
  std::vector<std::uint64_t> s{1, 1};
  for (int i = 2; i <= n; ++i) {
    unsigned __int128 lhs = static_cast<unsigned __int128>(3) * (2 * i - 1) * s[i - 1];
    unsigned __int128 sub = static_cast<unsigned __int128>(i - 2) * s[i - 2];
    unsigned __int128 v = (lhs - sub) / (i + 1);
    if (v > ~std::uint64_t{0}) throw std::overflow_error("Schroeder number overflows 64 bits");
    s.push_back(static_cast<std::uint64_t>(v));
  }
  s.resize(n + 1);
  return s;
}

/// Number of sets of pairwise non-crossing undirected chords on n points:
/// s_{n-2} * 2^n.
inline std::uint64_t count_noncrossing(int n) {
  if (n < 3) throw std::invalid_argument("count_noncrossing needs n >= 3");
  if (n >= 64) throw std::overflow_error("count exceeds 64 bits");
  unsigned __int128 v = static_cast<unsigned __int128>(little_schroeder(n - 2)[n - 2]) << n;
  if (v > ~std::uint64_t{0}) throw std::overflow_error("count exceeds 64 bits");
  return static_cast<std::uint64_t>(v);
}

// ---------------------------------------------------------------------------
// Join
// ---------------------------------------------------------------------------

/// Union of two patterns (shared points identified). Returns nullopt if the
/// union has a cycle through distinct points; otherwise its reachability
/// restricted to med_parent minus x, in med_parent's order.
inline std::optional<ConnectivityPattern> join(const ConnectivityPattern& p1, const ConnectivityPattern& p2,
                                               const std::vector<Vertex>& med_parent, const VertexSet& x = {}) {
  std::vector<Vertex> all = p1.boundary();
  for (Vertex v : p2.boundary())
    if (std::find(all.begin(), all.end(), v) == all.end()) all.push_back(v);
  for (Vertex v : med_parent)
    if (std::find(x.begin(), x.end(), v) == x.end() && std::find(all.begin(), all.end(), v) == all.end())
      throw std::invalid_argument("parent boundary point " + std::to_string(v) + " is on neither child");
  PointRelation u = PointRelation::identity(all);
  for (const auto* p : {&p1, &p2})
    for (auto [s, t] : p->pairs()) u.insert(s, t);
  const int k = u.size();
  std::vector<std::uint64_t> reach(u.rows());
  for (int m = 0; m < k; ++m)
    for (int i = 0; i < k; ++i)
      if (reach[i] >> m & 1) reach[i] |= reach[m];
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if ((reach[i] >> j & 1) && (reach[j] >> i & 1)) return std::nullopt;
  std::vector<Vertex> keep;
  for (Vertex v : med_parent)
    if (std::find(x.begin(), x.end(), v) == x.end()) keep.push_back(v);
  PointRelation out(keep);
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = 0; j < keep.size(); ++j)
      if (reach[u.position(keep[i])] >> u.position(keep[j]) & 1) out.set(static_cast<int>(i), static_cast<int>(j));
  return out;
}

}  // namespace dfvs
