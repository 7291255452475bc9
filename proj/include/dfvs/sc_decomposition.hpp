#pragma once

// Sphere-cut decompositions: type, validator, builders, text format and the
// connected/bridgeless preprocessing of planar inputs.
//
// Node i describes the tree edge between i and parent[i]. E_down(i) is the
// set of arcs at leaves below i; med[i] lists the vertices incident to arcs
// on both sides in the cyclic order of the noose, and noose[i] pairs each of
// those vertices with the face the curve crosses next.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "dfvs/digraph.hpp"
#include "dfvs/embedding.hpp"
#include "dfvs/error.hpp"

namespace dfvs {

struct NoosePoint {
  Vertex vertex = 0;
  int face = 0;
  friend bool operator==(const NoosePoint&, const NoosePoint&) = default;
};

struct ScDecomposition {
  std::vector<int> parent;    // -1 at the root
  std::vector<int> leaf_arc;  // arc index at leaves, -1 elsewhere
  std::vector<std::vector<Vertex>> med;
  std::vector<std::vector<NoosePoint>> noose;

  int node_count() const { return static_cast<int>(parent.size()); }

  int root() const {
    for (int i = 0; i < node_count(); ++i)
      if (parent[i] < 0) return i;
    return -1;
  }

  int width() const {
    int w = 0;
    for (const auto& m : med) w = std::max(w, static_cast<int>(m.size()));
    return w;
  }

  std::vector<std::vector<int>> children() const {
    std::vector<std::vector<int>> out(node_count());
    for (int i = 0; i < node_count(); ++i)
      if (parent[i] >= 0 && parent[i] < node_count()) out[parent[i]].push_back(i);
    return out;
  }

  /// Nodes with every child before its parent.
  std::vector<int> postorder() const {
    auto ch = children();
    std::vector<int> order, stack{root()};
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      order.push_back(x);
      for (int c : ch[x]) stack.push_back(c);
    }
    std::reverse(order.begin(), order.end());
    return order;
  }
};

struct ScReport {
  bool ok = false;
  int width = 0;
  std::string error;
};

namespace detail {

/// Vertices incident to arcs on both sides of the split given by in_a.
inline std::vector<Vertex> middle_set(const Embedding& e, const std::vector<char>& in_a) {
  std::vector<Vertex> out;
  for (Vertex v = 1; v <= e.n(); ++v) {
    bool in = false, out_side = false;
    for (int a : e.rotation(v)) (in_a[a] ? in : out_side) = true;
    if (in && out_side) out.push_back(v);
  }
  return out;
}

/// The noose separating in_a from the remaining arcs, or nothing when the
/// split is not cut by a single noose. Starts at the smallest middle vertex
/// and leaves it through the corner that closes its in_a sector.
inline std::optional<std::vector<NoosePoint>> trace_noose(const Embedding& e, const std::vector<char>& in_a) {
  const int nf = e.face_count();
  std::vector<std::vector<std::pair<Vertex, int>>> face_cuts(nf);
  std::vector<std::vector<int>> vertex_cuts(e.n() + 1);
  Vertex start = 0;
  for (Vertex v = 1; v <= e.n(); ++v) {
    const auto& rot = e.rotation(v);
    const int d = static_cast<int>(rot.size());
    for (int p = 0; p < d; ++p)
      if (in_a[rot[p]] != in_a[rot[(p + 1) % d]]) {
        vertex_cuts[v].push_back(p);
        face_cuts[e.corner_face(v, p)].emplace_back(v, p);
      }
    if (vertex_cuts[v].empty()) continue;
    if (vertex_cuts[v].size() != 2) return std::nullopt;
    if (!start) start = v;
  }
  for (const auto& fc : face_cuts)
    if (!fc.empty() && fc.size() != 2) return std::nullopt;
  std::vector<NoosePoint> out;
  if (!start) return out;

  int p = vertex_cuts[start][0];
  if (!in_a[e.rotation(start)[p]]) p = vertex_cuts[start][1];
  Vertex v = start;
  std::vector<char> seen_v(e.n() + 1, 0), seen_f(nf, 0);
  std::size_t cuts = 0;
  for (Vertex w = 1; w <= e.n(); ++w) cuts += vertex_cuts[w].empty() ? 0 : 1;
  while (true) {
    const int f = e.corner_face(v, p);
    if (seen_v[v] || seen_f[f]) return std::nullopt;
    seen_v[v] = seen_f[f] = 1;
    out.push_back({v, f});
    auto [w, q] = face_cuts[f][0] == std::pair<Vertex, int>{v, p} ? face_cuts[f][1] : face_cuts[f][0];
    if (w == start) break;
    p = vertex_cuts[w][0] == q ? vertex_cuts[w][1] : vertex_cuts[w][0];
    v = w;
  }
  if (out.size() != cuts) return std::nullopt;
  return out;
}

struct UnionFind {
  std::vector<int> up;
  explicit UnionFind(int n) : up(n) { std::iota(up.begin(), up.end(), 0); }
  int find(int x) { return up[x] == x ? x : up[x] = find(up[x]); }
  void unite(int a, int b) { up[find(a)] = find(b); }
};

/// Side check for one choice of entry/exit corners per noose vertex.
inline bool noose_separates(const Embedding& e, const std::vector<NoosePoint>& noose,
                            const std::vector<std::pair<int, int>>& corners, const std::vector<char>& in_a) {
  const int m = e.arc_count();
  std::vector<int> cut_a(e.n() + 1, -1), cut_b(e.n() + 1, -1);
  for (std::size_t i = 0; i < noose.size(); ++i) {
    cut_a[noose[i].vertex] = corners[i].first;
    cut_b[noose[i].vertex] = corners[i].second;
  }
  UnionFind uf(m);
  for (Vertex v = 1; v <= e.n(); ++v) {
    const auto& rot = e.rotation(v);
    const int d = static_cast<int>(rot.size());
    for (int p = 0; p < d; ++p)
      if (p != cut_a[v] && p != cut_b[v]) uf.unite(rot[p], rot[(p + 1) % d]);
  }
  std::vector<int> label(m, -1);
  for (std::size_t i = 0; i < noose.size(); ++i) {
    const auto& rot = e.rotation(noose[i].vertex);
    const int d = static_cast<int>(rot.size());
    auto [entry, exit] = corners[i];
    for (int side = 0; side < 2; ++side) {
      int from = side == 0 ? entry : exit, to = side == 0 ? exit : entry;
      for (int p = (from + 1) % d;; p = (p + 1) % d) {
        int& l = label[uf.find(rot[p])];
        if (l >= 0 && l != side) return false;
        l = side;
        if (p == to) break;
      }
    }
  }
  int down = -1;
  for (int a = 0; a < m; ++a) {
    const int l = label[uf.find(a)];
    if (l < 0) return false;
    const int want = in_a[a] ? l : 1 - l;
    if (down >= 0 && down != want) return false;
    down = want;
  }
  return true;
}

/// Searches corner assignments for the noose; entry corners lie in the face
/// crossed before the vertex, exit corners in the face crossed after it.
inline bool noose_is_certificate(const Embedding& e, const std::vector<NoosePoint>& noose, const std::vector<char>& in_a,
                                 std::string& why) {
  const int k = static_cast<int>(noose.size());
  std::vector<std::vector<std::pair<int, int>>> options(k);
  long combos = 1;
  for (int i = 0; i < k; ++i) {
    const Vertex v = noose[i].vertex;
    const int before = noose[(i + k - 1) % k].face, after = noose[i].face;
    for (int a = 0; a < e.degree(v); ++a)
      for (int b = 0; b < e.degree(v); ++b)
        if (a != b && e.corner_face(v, a) == before && e.corner_face(v, b) == after) options[i].emplace_back(a, b);
    if (options[i].empty()) {
      why = "noose cannot pass vertex " + std::to_string(v) + " between the listed faces";
      return false;
    }
    combos *= static_cast<long>(options[i].size());
    if (combos > 4096) {
      why = "noose corner choices exceed 4096";
      return false;
    }
  }
  std::vector<std::pair<int, int>> pick(k);
  for (long c = 0; c < combos; ++c) {
    long rest = c;
    for (int i = 0; i < k; ++i) {
      pick[i] = options[i][rest % options[i].size()];
      rest /= static_cast<long>(options[i].size());
    }
    if (noose_separates(e, noose, pick, in_a)) return true;
  }
  why = "noose does not separate the arcs below from the arcs above";
  return false;
}

inline std::vector<std::vector<char>> arcs_below(const ScDecomposition& d, int m) {
  std::vector<std::vector<char>> below(d.node_count(), std::vector<char>(m, 0));
  for (int x : d.postorder()) {
    if (d.leaf_arc[x] >= 0) below[x][d.leaf_arc[x]] = 1;
    if (d.parent[x] >= 0)
      for (int a = 0; a < m; ++a) below[d.parent[x]][a] |= below[x][a];
  }
  return below;
}

}  // namespace detail

/// Checks every structural and topological invariant; reports the first
/// violation, naming the tree edge by its child node (1-based).
inline ScReport validate_sc(const DiGraph& g, const Embedding& e, const ScDecomposition& d) {
  ScReport r;
  auto fail = [&](std::string msg) {
    r.ok = false;
    r.error = std::move(msg);
    return r;
  };
  auto edge_name = [](int x) { return "tree edge " + std::to_string(x + 1); };
  const int n = d.node_count(), m = g.arc_count();
  if (e.arc_count() != m || e.n() != g.n()) return fail("embedding does not belong to the graph");
  if (static_cast<int>(d.leaf_arc.size()) != n || static_cast<int>(d.med.size()) != n ||
      static_cast<int>(d.noose.size()) != n)
    return fail("field lengths disagree");
  if (n == 0) return fail("empty tree");
  int root = -1;
  for (int i = 0; i < n; ++i) {
    if (d.parent[i] < 0) {
      if (root >= 0) return fail("more than one root");
      root = i;
    } else if (d.parent[i] >= n || d.parent[i] == i) {
      return fail("node " + std::to_string(i + 1) + " has an invalid parent");
    }
  }
  if (root < 0) return fail("no root");
  for (int i = 0; i < n; ++i) {
    int x = i;
    for (int steps = 0; x != root; ++steps) {
      if (steps > n) return fail("parent pointers contain a cycle");
      x = d.parent[x];
    }
  }
  auto ch = d.children();
  if (ch[root].size() != 1) return fail("root must have exactly one child");
  if (d.leaf_arc[root] >= 0) return fail("root carries an arc");
  std::vector<int> leaf_of(m, -1);
  for (int i = 0; i < n; ++i) {
    if (i == root) continue;
    if (ch[i].empty()) {
      const int a = d.leaf_arc[i];
      if (a < 0 || a >= m) return fail("leaf " + std::to_string(i + 1) + " carries no valid arc");
      if (leaf_of[a] >= 0) return fail("arc " + std::to_string(a + 1) + " is on two leaves");
      leaf_of[a] = i;
    } else if (ch[i].size() != 2) {
      return fail("internal node " + std::to_string(i + 1) + " does not have degree 3");
    } else if (d.leaf_arc[i] >= 0) {
      return fail("internal node " + std::to_string(i + 1) + " carries an arc");
    }
  }
  for (int a = 0; a < m; ++a)
    if (leaf_of[a] < 0) return fail("arc " + std::to_string(a + 1) + " is on no leaf");

  const auto below = detail::arcs_below(d, m);
  for (int x = 0; x < n; ++x) {
    if (x == root) {
      if (!d.med[x].empty() || !d.noose[x].empty()) return fail("root carries a middle set");
      continue;
    }
    const auto expect = detail::middle_set(e, below[x]);
    auto got = d.med[x];
    std::sort(got.begin(), got.end());
    if (std::adjacent_find(got.begin(), got.end()) != got.end()) return fail(edge_name(x) + ": med repeats a vertex");
    if (got != expect) return fail(edge_name(x) + ": med differs from the vertices shared by both sides");
    if (d.parent[x] == root && !expect.empty()) return fail(edge_name(x) + ": root edge has a nonempty middle set");
    const auto& noose = d.noose[x];
    if (noose.size() != d.med[x].size()) return fail(edge_name(x) + ": noose length differs from med");
    std::vector<char> face_seen(e.face_count(), 0);
    for (std::size_t i = 0; i < noose.size(); ++i) {
      if (noose[i].vertex != d.med[x][i]) return fail(edge_name(x) + ": noose vertices differ from med order");
      if (noose[i].face < 0 || noose[i].face >= e.face_count()) return fail(edge_name(x) + ": noose face out of range");
      if (face_seen[noose[i].face]++) return fail(edge_name(x) + ": noose visits a face twice");
    }
    std::string why;
    if (!noose.empty() && !detail::noose_is_certificate(e, noose, below[x], why)) return fail(edge_name(x) + ": " + why);
    if (ch[x].size() == 2) {
      VertexSet both = d.med[ch[x][0]];
      both.insert(both.end(), d.med[ch[x][1]].begin(), d.med[ch[x][1]].end());
      both = normalized(both);
      for (Vertex v : d.med[x])
        if (!std::binary_search(both.begin(), both.end(), v))
          return fail(edge_name(x) + ": med is not covered by the child middle sets");
    }
  }
  r.ok = true;
  r.width = d.width();
  return r;
}

namespace detail {

/// Fills med and noose for every node from the arc sets below it.
inline void attach_nooses(const Embedding& e, ScDecomposition& d) {
  const int m = e.arc_count();
  const auto below = arcs_below(d, m);
  d.med.assign(d.node_count(), {});
  d.noose.assign(d.node_count(), {});
  for (int x = 0; x < d.node_count(); ++x) {
    if (d.parent[x] < 0) continue;
    auto noose = trace_noose(e, below[x]);
    if (!noose) throw DecompositionError("arc split at node " + std::to_string(x + 1) + " is not cut by a noose");
    d.noose[x] = *noose;
    for (const auto& p : *noose) d.med[x].push_back(p.vertex);
  }
}

inline int add_node(ScDecomposition& d, int parent, int arc) {
  d.parent.push_back(parent);
  d.leaf_arc.push_back(arc);
  return d.node_count() - 1;
}

inline void require_connected_bridgeless(const DiGraph& g) {
  if (g.arc_count() == 0) throw GraphError("sc-decomposition needs at least one arc");
  if (!bridges(g).empty()) throw GraphError("sc-decomposition needs a bridgeless graph");
  auto pieces = bridges_and_components(g);
  int with_arcs = 0;
  for (const auto& p : pieces) with_arcs += p.graph.arc_count() > 0;
  if (with_arcs != 1) throw GraphError("sc-decomposition needs a connected graph");
}

/// Arc splits of region A considered by the heuristic: prefixes of breadth
/// first orders over arcs that share a corner, seeded at several arcs.
struct SplitChoice {
  std::vector<int> part;
  int cost = 0;
};

inline std::vector<int> split_region(const Embedding& e, const std::vector<int>& region) {
  const int m = e.arc_count(), s = static_cast<int>(region.size());
  std::vector<char> in_region(m, 0);
  for (int a : region) in_region[a] = 1;
  std::vector<std::vector<int>> adj(m);
  for (Vertex v = 1; v <= e.n(); ++v) {
    const auto& rot = e.rotation(v);
    const int d = static_cast<int>(rot.size());
    for (int p = 0; p < d && d > 1; ++p) {
      int a = rot[p], b = rot[(p + 1) % d];
      if (a != b && in_region[a] && in_region[b]) {
        adj[a].push_back(b);
        adj[b].push_back(a);
      }
    }
  }
  const int seeds = std::min(s, s > 200 ? 8 : 24);
  // key: (unbalanced, primary, secondary)
  std::tuple<int, int, int> best{2, 0, 0};
  std::vector<int> best_part;
  std::vector<char> in_a(m, 0), in_b(m, 0);
  for (int si = 0; si < seeds; ++si) {
    const int seed = region[static_cast<std::size_t>(si) * s / seeds];
    std::vector<int> order{seed};
    std::vector<char> seen(m, 0);
    seen[seed] = 1;
    for (std::size_t h = 0; h < order.size(); ++h)
      for (int b : adj[order[h]])
        if (!seen[b]) {
          seen[b] = 1;
          order.push_back(b);
        }
    for (int a : region)
      if (!seen[a]) order.push_back(a);
    std::fill(in_a.begin(), in_a.end(), 0);
    for (int t = 1; t < s; ++t) {
      in_a[order[t - 1]] = 1;
      const int imbalance = std::abs(2 * t - s);
      const bool balanced = 4 * t >= s && 4 * t <= 3 * s;
      if (!balanced && std::get<0>(best) == 0) continue;
      if (!balanced && std::get<0>(best) == 1 && imbalance > std::get<1>(best)) continue;
      auto na = trace_noose(e, in_a);
      if (!na) continue;
      for (int a : region) in_b[a] = !in_a[a];
      auto nb = trace_noose(e, in_b);
      for (int a : region) in_b[a] = 0;
      if (!nb) continue;
      const int w = static_cast<int>(std::max(na->size(), nb->size()));
      std::tuple<int, int, int> key = balanced ? std::tuple{0, w, imbalance} : std::tuple{1, imbalance, w};
      if (key < best) {
        best = key;
        best_part.assign(order.begin(), order.begin() + t);
      }
    }
  }
  if (best_part.empty()) throw DecompositionError("no noose-cut split found for a region of " + std::to_string(s) + " arcs");
  return best_part;
}

}  // namespace detail

/// Recursive balanced noose splits. Valid but not width-optimal.
inline ScDecomposition build_sc_heuristic(const DiGraph& g, const Embedding& e) {
  detail::require_connected_bridgeless(g);
  ScDecomposition d;
  const int root = detail::add_node(d, -1, -1);
  std::vector<int> all(g.arc_count());
  std::iota(all.begin(), all.end(), 0);
  std::vector<std::pair<std::vector<int>, int>> work{{all, root}};
  while (!work.empty()) {
    auto [region, parent] = std::move(work.back());
    work.pop_back();
    if (region.size() == 1) {
      detail::add_node(d, parent, region[0]);
      continue;
    }
    const int x = detail::add_node(d, parent, -1);
    auto part = detail::split_region(e, region);
    std::vector<char> in_part(g.arc_count(), 0);
    for (int a : part) in_part[a] = 1;
    std::vector<int> rest;
    for (int a : region)
      if (!in_part[a]) rest.push_back(a);
    std::sort(part.begin(), part.end());
    work.push_back({rest, x});
    work.push_back({part, x});
  }
  detail::attach_nooses(e, d);
  return d;
}

/// Grid on rows x cols vertices, vertex (r, c) = r*cols + c + 1. Edges are
/// listed row by row, each vertex contributing its right then its down edge.
/// Rotations run clockwise: up, right, down, left.
struct GridLayout {
  int rows = 0, cols = 0;
  std::vector<Arc> edges;
  std::vector<std::vector<Vertex>> rotation;
  int id(int r, int c) const { return r * cols + c + 1; }
};

inline GridLayout grid_layout(int rows, int cols) {
  if (rows < 1 || cols < 1) throw GraphError("grid dimensions must be positive");
  GridLayout l{rows, cols, {}, std::vector<std::vector<Vertex>>(rows * cols + 1)};
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) l.edges.push_back({l.id(r, c), l.id(r, c + 1)});
      if (r + 1 < rows) l.edges.push_back({l.id(r, c), l.id(r + 1, c)});
      auto& rot = l.rotation[l.id(r, c)];
      if (r > 0) rot.push_back(l.id(r - 1, c));
      if (c + 1 < cols) rot.push_back(l.id(r, c + 1));
      if (r + 1 < rows) rot.push_back(l.id(r + 1, c));
      if (c > 0) rot.push_back(l.id(r, c - 1));
    }
  return l;
}

/// Caterpillar decomposition for a grid whose arc i joins the endpoints of
/// grid_layout(rows, cols).edges[i] in either direction, with nooses traced
/// in the embedding e of that grid. Arcs are swept gridline by gridline
/// along the longer dimension, so every prefix is cut by a noose through at
/// most min(rows, cols) + 1 vertices.
inline ScDecomposition grid_sc_decomposition(int rows, int cols, const Embedding& e) {
  if (rows < 2 || cols < 2) throw GraphError("grid sc-decomposition needs at least 2 rows and 2 columns");
  const GridLayout l = grid_layout(rows, cols);
  if (e.arc_count() != static_cast<int>(l.edges.size())) throw GraphError("embedding is not of the full grid");
  std::map<std::pair<Vertex, Vertex>, int> index;
  for (int i = 0; i < static_cast<int>(l.edges.size()); ++i) index[{l.edges[i].tail, l.edges[i].head}] = i;
  const bool by_columns = cols >= rows;
  const int lines = by_columns ? cols : rows, across = by_columns ? rows : cols;
  auto at = [&](int line, int pos) { return by_columns ? l.id(pos, line) : l.id(line, pos); };
  std::vector<int> order;
  for (int x = 0; x < lines; ++x)
    for (int y = 0; y < across; ++y) {
      if (x > 0) order.push_back(index.at({at(x - 1, y), at(x, y)}));
      if (y > 0) order.push_back(index.at({at(x, y - 1), at(x, y)}));
    }
  ScDecomposition d;
  const int m = static_cast<int>(order.size());
  int spine = detail::add_node(d, -1, -1);
  for (int i = m - 1; i >= 1; --i) {
    const int x = detail::add_node(d, spine, -1);
    detail::add_node(d, x, order[i]);
    spine = x;
  }
  // the lowest spine node holds order[1]; its second leaf is order[0]
  detail::add_node(d, spine, order[0]);
  detail::attach_nooses(e, d);
  return d;
}

/// Same, for the grid with arcs oriented as in grid_layout.
inline ScDecomposition grid_sc_decomposition(int rows, int cols) {
  if (rows < 2 || cols < 2) throw GraphError("grid sc-decomposition needs at least 2 rows and 2 columns");
  const GridLayout l = grid_layout(rows, cols);
  DiGraph g(rows * cols, l.edges);
  return grid_sc_decomposition(rows, cols, Embedding::from_neighbors(g, l.rotation));
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

inline void write_sc(std::ostream& out, const ScDecomposition& d, int m) {
  out << "s sc " << d.node_count() << ' ' << d.width() << ' ' << m << '\n';
  for (int i = 0; i < d.node_count(); ++i) out << "t " << i + 1 << ' ' << d.parent[i] + 1 << '\n';
  for (int i = 0; i < d.node_count(); ++i)
    if (d.leaf_arc[i] >= 0) out << "l " << i + 1 << ' ' << d.leaf_arc[i] + 1 << '\n';
  for (int i = 0; i < d.node_count(); ++i) {
    if (d.parent[i] < 0) continue;
    out << "d " << i + 1;
    for (Vertex v : d.med[i]) out << ' ' << v;
    out << '\n';
    out << "c " << i + 1;
    for (const auto& p : d.noose[i]) out << ' ' << p.vertex << ' ' << p.face + 1;
    out << '\n';
  }
}

/// Reads the structure only; validate_sc checks it against a graph.
inline ScDecomposition parse_sc(std::istream& in) {
  auto lines = detail::data_lines(in);
  if (lines.empty()) throw ParseError(0, "missing sc header");
  std::istringstream head(lines[0].second);
  std::string s, kind;
  head >> s >> kind;
  if (s != "s" || kind != "sc") throw ParseError(lines[0].first, "expected 's sc' header");
  auto h = detail::parse_ints(lines[0].second.substr(4), lines[0].first);
  if (h.size() != 3 || h[0] < 1 || h[2] < 0) throw ParseError(lines[0].first, "malformed sc header");
  const int n = static_cast<int>(h[0]), m = static_cast<int>(h[2]);
  ScDecomposition d;
  d.parent.assign(n, -2);
  d.leaf_arc.assign(n, -1);
  d.med.assign(n, {});
  d.noose.assign(n, {});
  auto node = [&](long long id, int lineno) {
    if (id < 1 || id > n) throw ParseError(lineno, "node id out of range");
    return static_cast<int>(id - 1);
  };
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& [lineno, text] = lines[i];
    if (text.size() < 2 || text[1] != ' ') throw ParseError(lineno, "unknown line");
    auto v = detail::parse_ints(text.substr(2), lineno);
    if (v.empty()) throw ParseError(lineno, "missing node id");
    const int x = node(v[0], lineno);
    switch (text[0]) {
      case 't':
        if (v.size() != 2 || v[1] < 0 || v[1] > n) throw ParseError(lineno, "malformed tree line");
        d.parent[x] = static_cast<int>(v[1]) - 1;
        break;
      case 'l':
        if (v.size() != 2 || v[1] < 1 || v[1] > m) throw ParseError(lineno, "malformed leaf line");
        d.leaf_arc[x] = static_cast<int>(v[1]) - 1;
        break;
      case 'd':
        d.med[x].assign(v.begin() + 1, v.end());
        break;
      case 'c':
        if (v.size() % 2 != 1) throw ParseError(lineno, "noose line needs vertex/face pairs");
        d.noose[x].clear();
        for (std::size_t j = 1; j < v.size(); j += 2)
          d.noose[x].push_back({static_cast<Vertex>(v[j]), static_cast<int>(v[j + 1]) - 1});
        break;
      default:
        throw ParseError(lineno, "unknown line");
    }
  }
  for (int x = 0; x < n; ++x)
    if (d.parent[x] == -2) throw ParseError(0, "node " + std::to_string(x + 1) + " has no tree line");
  return d;
}

inline ScDecomposition parse_sc(const std::string& text) {
  std::istringstream in(text);
  return parse_sc(in);
}

// ---------------------------------------------------------------------------
// Preprocessing
// ---------------------------------------------------------------------------

struct PlanarPiece {
  GraphPiece piece;
  Embedding embedding;
};

/// Connected bridgeless pieces with their restricted embeddings; pieces
/// without arcs are dropped.
inline std::vector<PlanarPiece> preprocess_planar(const DiGraph& g, const Embedding& e) {
  std::vector<PlanarPiece> out;
  for (auto& p : bridges_and_components(g)) {
    if (p.graph.arc_count() == 0) continue;
    Embedding local = restrict_embedding(e, p);
    out.push_back({std::move(p), std::move(local)});
  }
  return out;
}

}  // namespace dfvs
