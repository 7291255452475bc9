#pragma once

#include <algorithm>
#include <compare>
#include <functional>
#include <istream>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dfvs/error.hpp"

namespace dfvs {

using Vertex = int;

struct Arc {
  Vertex tail = 0;
  Vertex head = 0;
  auto operator<=>(const Arc&) const = default;
};

/// Sorted, duplicate-free list of vertex ids.
using VertexSet = std::vector<Vertex>;
/// Sorted, duplicate-free list of arc indices (0-based positions in DiGraph::arcs()).
using ArcSet = std::vector<int>;
/// Sequence of distinct vertex ids.
using Ordering = std::vector<Vertex>;
/// Set of ordered vertex pairs.
using Relation = std::set<std::pair<Vertex, Vertex>>;

inline VertexSet normalized(VertexSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

/// Directed graph on vertex ids 1..n. Arcs are kept in insertion order and
/// addressed by index. Vertices may be absent (after deletion) so that ids of
/// the remaining vertices never change.
class DiGraph {
 public:
  DiGraph() = default;

  DiGraph(int n, std::vector<Arc> arcs) : DiGraph(n, std::move(arcs), std::vector<char>(n + 1, 1)) {}

  DiGraph(int n, std::vector<Arc> arcs, std::vector<char> present)
      : n_(n), arcs_(std::move(arcs)), present_(std::move(present)) {
    if (n < 0) throw GraphError("negative vertex count");
    present_.resize(n + 1, 0);
    present_[0] = 0;
    out_.assign(n + 1, {});
    in_.assign(n + 1, {});
    std::set<Arc> seen;
    for (int i = 0; i < static_cast<int>(arcs_.size()); ++i) {
      const Arc& a = arcs_[i];
      if (a.tail < 1 || a.tail > n || a.head < 1 || a.head > n)
        throw GraphError("arc endpoint out of range: " + std::to_string(a.tail) + " " + std::to_string(a.head));
      if (a.tail == a.head) throw GraphError("self-loop at vertex " + std::to_string(a.tail));
      if (!present_[a.tail] || !present_[a.head])
        throw GraphError("arc touches an absent vertex: " + std::to_string(a.tail) + " " + std::to_string(a.head));
      if (!seen.insert(a).second)
        throw GraphError("duplicate arc " + std::to_string(a.tail) + " " + std::to_string(a.head));
      out_[a.tail].push_back(i);
      in_[a.head].push_back(i);
    }
  }

  int n() const { return n_; }
  int arc_count() const { return static_cast<int>(arcs_.size()); }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const Arc& arc(int i) const { return arcs_[i]; }
  bool has_vertex(Vertex v) const { return v >= 1 && v <= n_ && present_[v]; }
  const std::vector<char>& presence() const { return present_; }
  const std::vector<int>& out_arcs(Vertex v) const { return out_[v]; }
  const std::vector<int>& in_arcs(Vertex v) const { return in_[v]; }

  int vertex_count() const { return static_cast<int>(std::count(present_.begin(), present_.end(), 1)); }

  VertexSet vertices() const {
    VertexSet vs;
    for (Vertex v = 1; v <= n_; ++v)
      if (present_[v]) vs.push_back(v);
    return vs;
  }

  std::optional<int> find_arc(Vertex tail, Vertex head) const {
    if (tail < 1 || tail > n_) return std::nullopt;
    for (int i : out_[tail])
      if (arcs_[i].head == head) return i;
    return std::nullopt;
  }

  bool operator==(const DiGraph& o) const { return n_ == o.n_ && arcs_ == o.arcs_ && present_ == o.present_; }

 private:
  int n_ = 0;
  std::vector<Arc> arcs_;
  std::vector<char> present_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
};

/// Graph minus vertices x (with incident arcs) minus arcs y. Remaining vertices
/// keep their ids; remaining arcs keep their relative order.
inline DiGraph without(const DiGraph& g, const VertexSet& x, const ArcSet& y) {
  std::vector<char> present = g.presence();
  for (Vertex v : x)
    if (v >= 1 && v <= g.n()) present[v] = 0;
  std::vector<char> drop(g.arc_count(), 0);
  for (int a : y)
    if (a >= 0 && a < g.arc_count()) drop[a] = 1;
  std::vector<Arc> arcs;
  for (int i = 0; i < g.arc_count(); ++i) {
    const Arc& a = g.arc(i);
    if (!drop[i] && present[a.tail] && present[a.head]) arcs.push_back(a);
  }
  return DiGraph(g.n(), std::move(arcs), std::move(present));
}

/// Kahn's algorithm, smallest available id first. Empty optional iff g has a directed cycle.
inline std::optional<Ordering> topological_order(const DiGraph& g) {
  std::vector<int> indeg(g.n() + 1, 0);
  for (const Arc& a : g.arcs()) ++indeg[a.head];
  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> ready;
  for (Vertex v : g.vertices())
    if (indeg[v] == 0) ready.push(v);
  Ordering order;
  while (!ready.empty()) {
    Vertex v = ready.top();
    ready.pop();
    order.push_back(v);
    for (int i : g.out_arcs(v))
      if (--indeg[g.arc(i).head] == 0) ready.push(g.arc(i).head);
  }
  if (static_cast<int>(order.size()) != g.vertex_count()) return std::nullopt;
  return order;
}

inline bool is_acyclic(const DiGraph& g) { return topological_order(g).has_value(); }

/// Vertices reachable from source (including source itself).
inline std::vector<char> reachable_from(const DiGraph& g, Vertex source) {
  std::vector<char> seen(g.n() + 1, 0);
  std::vector<Vertex> stack{source};
  seen[source] = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (int i : g.out_arcs(v)) {
      Vertex w = g.arc(i).head;
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

/// Reachability relation of g restricted to t (reflexive on t).
inline Relation reachability(const DiGraph& g, const std::vector<Vertex>& t) {
  Relation rel;
  for (Vertex s : t) {
    auto seen = reachable_from(g, s);
    for (Vertex u : t)
      if (seen[u]) rel.emplace(s, u);
  }
  return rel;
}

/// A connected bridgeless piece of a digraph with its vertices renumbered 1..k.
struct GraphPiece {
  DiGraph graph;
  std::vector<Vertex> to_original;  // index 1..k -> original id (index 0 unused)
  std::vector<int> arc_to_original;  // piece arc index -> original arc index
};

/// Bridges of the underlying undirected multigraph, as arc indices. An
/// antiparallel pair forms two parallel edges and is therefore never a bridge.
inline ArcSet bridges(const DiGraph& g) {
  const int n = g.n();
  std::vector<std::vector<std::pair<Vertex, int>>> adj(n + 1);
  for (int i = 0; i < g.arc_count(); ++i) {
    adj[g.arc(i).tail].emplace_back(g.arc(i).head, i);
    adj[g.arc(i).head].emplace_back(g.arc(i).tail, i);
  }
  std::vector<int> disc(n + 1, 0), low(n + 1, 0);
  ArcSet result;
  int timer = 0;
  struct Frame {
    Vertex v;
    int parent_arc;
    std::size_t next;
  };
  for (Vertex root : g.vertices()) {
    if (disc[root]) continue;
    std::vector<Frame> stack{{root, -1, 0}};
    disc[root] = low[root] = ++timer;
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.next < adj[f.v].size()) {
        auto [w, id] = adj[f.v][f.next++];
        if (id == f.parent_arc) continue;
        if (disc[w]) {
          low[f.v] = std::min(low[f.v], disc[w]);
        } else {
          disc[w] = low[w] = ++timer;
          stack.push_back({w, id, 0});
        }
      } else {
        Frame done = f;
        stack.pop_back();
        if (!stack.empty()) {
          Vertex p = stack.back().v;
          low[p] = std::min(low[p], low[done.v]);
          if (low[done.v] > disc[p]) result.push_back(done.parent_arc);
        }
      }
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

/// Deletes all bridges, then splits into weakly connected components (ordered
/// by smallest original vertex id). Isolated vertices become single-vertex pieces.
inline std::vector<GraphPiece> bridges_and_components(const DiGraph& g) {
  const ArcSet br = bridges(g);
  std::vector<char> is_bridge(g.arc_count(), 0);
  for (int b : br) is_bridge[b] = 1;

  std::vector<int> comp(g.n() + 1, -1);
  int ncomp = 0;
  std::vector<std::vector<Vertex>> undirected(g.n() + 1);
  for (int i = 0; i < g.arc_count(); ++i) {
    if (is_bridge[i]) continue;
    undirected[g.arc(i).tail].push_back(g.arc(i).head);
    undirected[g.arc(i).head].push_back(g.arc(i).tail);
  }
  for (Vertex s : g.vertices()) {
    if (comp[s] >= 0) continue;
    std::vector<Vertex> stack{s};
    comp[s] = ncomp;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : undirected[v])
        if (comp[w] < 0) {
          comp[w] = ncomp;
          stack.push_back(w);
        }
    }
    ++ncomp;
  }

  std::vector<GraphPiece> pieces(ncomp);
  std::vector<int> local(g.n() + 1, 0);
  for (auto& p : pieces) p.to_original.push_back(0);
  for (Vertex v : g.vertices()) {
    auto& p = pieces[comp[v]];
    local[v] = static_cast<int>(p.to_original.size());
    p.to_original.push_back(v);
  }
  std::vector<std::vector<Arc>> arcs(ncomp);
  for (int i = 0; i < g.arc_count(); ++i) {
    if (is_bridge[i]) continue;
    const Arc& a = g.arc(i);
    int c = comp[a.tail];
    arcs[c].push_back({local[a.tail], local[a.head]});
    pieces[c].arc_to_original.push_back(i);
  }
  for (int c = 0; c < ncomp; ++c)
    pieces[c].graph = DiGraph(static_cast<int>(pieces[c].to_original.size()) - 1, std::move(arcs[c]));
  return pieces;
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

/// Contents of a digraph file: the graph plus the optional rotation section,
/// kept as raw neighbor lists (index = vertex id, entry 0 unused).
struct DigraphFile {
  DiGraph graph;
  std::optional<std::vector<std::vector<Vertex>>> rotation;
};

namespace detail {

inline std::vector<long long> parse_ints(const std::string& line, int lineno) {
  std::istringstream in(line);
  std::vector<long long> out;
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      throw ParseError(lineno, "expected integer, got '" + tok + "'");
    }
    if (used != tok.size()) throw ParseError(lineno, "expected integer, got '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

/// Reads data lines, skipping '%' comments and blank lines; records line numbers.
inline std::vector<std::pair<int, std::string>> data_lines(std::istream& in) {
  std::vector<std::pair<int, std::string>> lines;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '%') continue;
    lines.emplace_back(lineno, line);
  }
  return lines;
}

}  // namespace detail

inline DigraphFile parse_digraph(std::istream& in) {
  auto lines = detail::data_lines(in);
  if (lines.empty()) throw ParseError(0, "missing header line \"n m\"");
  auto header = detail::parse_ints(lines[0].second, lines[0].first);
  if (header.size() != 2 || header[0] < 0 || header[1] < 0)
    throw ParseError(lines[0].first, "malformed header, expected \"n m\"");
  const int n = static_cast<int>(header[0]);
  const int m = static_cast<int>(header[1]);
  if (static_cast<int>(lines.size()) < 1 + m)
    throw ParseError(lines.back().first, "expected " + std::to_string(m) + " arc lines");
  std::vector<Arc> arcs;
  std::set<Arc> seen;
  for (int i = 0; i < m; ++i) {
    auto [lineno, text] = lines[1 + i];
    auto f = detail::parse_ints(text, lineno);
    if (f.size() != 2) throw ParseError(lineno, "arc line must hold two vertex ids");
    if (f[0] < 1 || f[0] > n || f[1] < 1 || f[1] > n) throw ParseError(lineno, "arc endpoint out of range");
    Arc a{static_cast<Vertex>(f[0]), static_cast<Vertex>(f[1])};
    if (a.tail == a.head) throw ParseError(lineno, "self-loop at vertex " + std::to_string(a.tail));
    if (!seen.insert(a).second) throw ParseError(lineno, "duplicate arc");
    arcs.push_back(a);
  }
  DigraphFile file{DiGraph(n, std::move(arcs)), std::nullopt};
  std::size_t pos = 1 + m;
  if (pos == lines.size()) return file;
  if (lines[pos].second.find("embedding") == std::string::npos)
    throw ParseError(lines[pos].first, "unexpected trailing data (expected \"embedding\")");
  ++pos;
  std::vector<std::vector<Vertex>> rot(n + 1);
  std::vector<char> given(n + 1, 0);
  for (int i = 0; i < n; ++i, ++pos) {
    if (pos >= lines.size()) throw ParseError(lines.back().first, "embedding section needs one line per vertex");
    auto [lineno, text] = lines[pos];
    auto f = detail::parse_ints(text, lineno);
    if (f.size() < 2 || f[0] < 1 || f[0] > n) throw ParseError(lineno, "malformed rotation line");
    Vertex v = static_cast<Vertex>(f[0]);
    if (given[v]) throw ParseError(lineno, "rotation for vertex " + std::to_string(v) + " given twice");
    given[v] = 1;
    if (static_cast<long long>(f.size()) != 2 + f[1]) throw ParseError(lineno, "rotation degree mismatch");
    for (std::size_t j = 2; j < f.size(); ++j) {
      if (f[j] < 1 || f[j] > n) throw ParseError(lineno, "rotation neighbor out of range");
      rot[v].push_back(static_cast<Vertex>(f[j]));
    }
  }
  if (pos != lines.size()) throw ParseError(lines[pos].first, "unexpected data after embedding section");
  file.rotation = std::move(rot);
  return file;
}

inline DigraphFile parse_digraph(const std::string& text) {
  std::istringstream in(text);
  return parse_digraph(in);
}

/// Writes the digraph format. Absent vertices simply have no arcs.
inline void write_digraph(std::ostream& out, const DiGraph& g,
                          const std::optional<std::vector<std::vector<Vertex>>>& rotation = std::nullopt) {
  out << g.n() << ' ' << g.arc_count() << '\n';
  for (const Arc& a : g.arcs()) out << a.tail << ' ' << a.head << '\n';
  if (!rotation) return;
  out << "embedding\n";
  for (Vertex v = 1; v <= g.n(); ++v) {
    const auto& r = (*rotation)[v];
    out << v << ' ' << r.size();
    for (Vertex w : r) out << ' ' << w;
    out << '\n';
  }
}

}  // namespace dfvs
