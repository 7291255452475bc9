#pragma once

#include <algorithm>
#include <bit>
#include <functional>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dfvs/digraph.hpp"
#include "dfvs/error.hpp"

namespace dfvs {

/// Tree decomposition with nodes 0..N-1 (written 1-based in files).
struct TreeDecomposition {
  std::vector<VertexSet> bags;
  std::vector<std::pair<int, int>> edges;
  int root = 0;

  int node_count() const { return static_cast<int>(bags.size()); }

  /// Max bag size minus one; -1 when every bag is empty.
  int width() const {
    std::size_t w = 0;
    for (const auto& b : bags) w = std::max(w, b.size());
    return static_cast<int>(w) - 1;
  }

  std::vector<std::vector<int>> adjacency() const {
    std::vector<std::vector<int>> adj(bags.size());
    for (auto [a, b] : edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    for (auto& l : adj) std::sort(l.begin(), l.end());
    return adj;
  }
};

/// Throws DecompositionError naming the first violated axiom.
inline void validate_td(const DiGraph& g, const TreeDecomposition& td) {
  const int nodes = td.node_count();
  if (nodes == 0) throw DecompositionError("decomposition has no nodes");
  if (td.root < 0 || td.root >= nodes) throw DecompositionError("root node out of range");
  for (int x = 0; x < nodes; ++x)
    for (Vertex v : td.bags[x])
      if (!g.has_vertex(v))
        throw DecompositionError("bag " + std::to_string(x + 1) + " holds unknown vertex " + std::to_string(v));
  if (static_cast<int>(td.edges.size()) != nodes - 1) throw DecompositionError("tree must have #nodes-1 edges");
  for (auto [a, b] : td.edges)
    if (a < 0 || a >= nodes || b < 0 || b >= nodes || a == b)
      throw DecompositionError("invalid tree edge " + std::to_string(a + 1) + " " + std::to_string(b + 1));
  const auto adj = td.adjacency();
  std::vector<char> seen(nodes, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int y : adj[x])
      if (!seen[y]) {
        seen[y] = 1;
        ++reached;
        stack.push_back(y);
      }
  }
  if (reached != nodes) throw DecompositionError("decomposition tree is disconnected");

  std::vector<std::vector<int>> holders(g.n() + 1);
  for (int x = 0; x < nodes; ++x)
    for (Vertex v : td.bags[x]) holders[v].push_back(x);
  for (Vertex v : g.vertices()) {
    if (holders[v].empty()) throw DecompositionError("vertex " + std::to_string(v) + " is in no bag");
    std::vector<char> in(nodes, 0);
    for (int x : holders[v]) in[x] = 1;
    std::vector<int> st{holders[v][0]};
    std::vector<char> vis(nodes, 0);
    vis[holders[v][0]] = 1;
    std::size_t count = 1;
    while (!st.empty()) {
      int x = st.back();
      st.pop_back();
      for (int y : adj[x])
        if (in[y] && !vis[y]) {
          vis[y] = 1;
          ++count;
          st.push_back(y);
        }
    }
    if (count != holders[v].size())
      throw DecompositionError("bags holding vertex " + std::to_string(v) + " are not connected");
  }
  for (const Arc& a : g.arcs()) {
    bool covered = false;
    for (int x : holders[a.tail])
      if (std::binary_search(td.bags[x].begin(), td.bags[x].end(), a.head)) covered = true;
    if (!covered)
      throw DecompositionError("arc (" + std::to_string(a.tail) + "," + std::to_string(a.head) + ") is in no bag");
  }
}

/// Reads the .td format. Syntax errors raise ParseError; use validate_td for axioms.
inline TreeDecomposition parse_td(std::istream& in) {
  auto lines = detail::data_lines(in);
  if (lines.empty()) throw ParseError(0, "missing \"s td\" header");
  std::istringstream head(lines[0].second);
  std::string s, td;
  head >> s >> td;
  if (s != "s" || td != "td") throw ParseError(lines[0].first, "expected \"s td <#bags> <maxbag> <n>\"");
  std::string rest;
  std::getline(head, rest);
  auto h = detail::parse_ints(rest, lines[0].first);
  if (h.size() != 3 || h[0] < 1) throw ParseError(lines[0].first, "expected \"s td <#bags> <maxbag> <n>\"");
  const int nb = static_cast<int>(h[0]);
  TreeDecomposition out;
  out.bags.assign(nb, {});
  std::vector<char> given(nb, 0);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto [lineno, text] = lines[i];
    if (text[text.find_first_not_of(" \t")] == 'b') {
      auto f = detail::parse_ints(text.substr(text.find('b') + 1), lineno);
      if (f.empty() || f[0] < 1 || f[0] > nb) throw ParseError(lineno, "bad bag id");
      int id = static_cast<int>(f[0]) - 1;
      if (given[id]) throw ParseError(lineno, "bag " + std::to_string(id + 1) + " given twice");
      given[id] = 1;
      for (std::size_t j = 1; j < f.size(); ++j) out.bags[id].push_back(static_cast<Vertex>(f[j]));
      out.bags[id] = normalized(out.bags[id]);
      if (out.bags[id].size() != f.size() - 1) throw ParseError(lineno, "bag repeats a vertex");
    } else {
      auto f = detail::parse_ints(text, lineno);
      if (f.size() != 2 || f[0] < 1 || f[0] > nb || f[1] < 1 || f[1] > nb) throw ParseError(lineno, "bad tree edge");
      out.edges.emplace_back(static_cast<int>(f[0]) - 1, static_cast<int>(f[1]) - 1);
    }
  }
  for (int i = 0; i < nb; ++i)
    if (!given[i]) throw ParseError(lines[0].first, "bag " + std::to_string(i + 1) + " missing");
  return out;
}

inline TreeDecomposition parse_td(const std::string& text) {
  std::istringstream in(text);
  return parse_td(in);
}

/// Parses and validates against g.
inline TreeDecomposition parse_td(const std::string& text, const DiGraph& g) {
  auto td = parse_td(text);
  validate_td(g, td);
  return td;
}

inline void write_td(std::ostream& out, const TreeDecomposition& td, int n) {
  out << "s td " << td.node_count() << ' ' << td.width() + 1 << ' ' << n << '\n';
  for (int x = 0; x < td.node_count(); ++x) {
    out << "b " << x + 1;
    for (Vertex v : td.bags[x]) out << ' ' << v;
    out << '\n';
  }
  for (auto [a, b] : td.edges) out << a + 1 << ' ' << b + 1 << '\n';
}

namespace detail {

/// Underlying undirected simple adjacency over present vertices.
inline std::vector<std::set<Vertex>> undirected_adjacency(const DiGraph& g) {
  std::vector<std::set<Vertex>> adj(g.n() + 1);
  for (const Arc& a : g.arcs()) {
    adj[a.tail].insert(a.head);
    adj[a.head].insert(a.tail);
  }
  return adj;
}

/// Decomposition induced by an elimination order: each vertex's bag is itself
/// plus its later neighbors in the fill graph; the bag hangs below the bag of
/// the earliest of those neighbors. Roots of the resulting forest are chained.
inline TreeDecomposition td_from_elimination(const DiGraph& g, const std::vector<Vertex>& order) {
  auto adj = undirected_adjacency(g);
  std::vector<int> pos(g.n() + 1, -1);
  for (int i = 0; i < static_cast<int>(order.size()); ++i) pos[order[i]] = i;
  TreeDecomposition td;
  if (order.empty()) {
    td.bags.push_back({});
    return td;
  }
  std::vector<int> parent(order.size(), -1);
  for (int i = 0; i < static_cast<int>(order.size()); ++i) {
    Vertex v = order[i];
    VertexSet later;
    for (Vertex w : adj[v])
      if (pos[w] > i) later.push_back(w);
    for (Vertex a : later)
      for (Vertex b : later)
        if (a != b) adj[a].insert(b);
    VertexSet bag = later;
    bag.push_back(v);
    td.bags.push_back(normalized(bag));
    int first = -1;
    for (Vertex w : later)
      if (first < 0 || pos[w] < first) first = pos[w];
    parent[i] = first;
  }
  int prev_root = -1;
  for (int i = 0; i < static_cast<int>(order.size()); ++i) {
    if (parent[i] >= 0) {
      td.edges.emplace_back(i, parent[i]);
    } else {
      if (prev_root >= 0) td.edges.emplace_back(prev_root, i);
      prev_root = i;
    }
  }
  td.root = prev_root;
  return td;
}

}  // namespace detail

/// Width-optimal decomposition by dynamic programming over eliminated sets.
/// TW(S) = min over v in S of max(TW(S - v), |Q(S - v, v)|), where Q(S, v) are
/// the vertices outside S + v reachable from v through S.
inline TreeDecomposition td_exact_small(const DiGraph& g, int cap = 12) {
  const VertexSet verts = g.vertices();
  const int k = static_cast<int>(verts.size());
  if (k > cap) throw CapExceeded("exact treewidth limited to " + std::to_string(cap) + " vertices");
  std::vector<int> index(g.n() + 1, -1);
  for (int i = 0; i < k; ++i) index[verts[i]] = i;
  std::vector<unsigned> nbr(k, 0);
  for (const Arc& a : g.arcs()) {
    nbr[index[a.tail]] |= 1u << index[a.head];
    nbr[index[a.head]] |= 1u << index[a.tail];
  }
  auto q_size = [&](unsigned s, int v) {
    unsigned visited = 1u << v, frontier = 1u << v, result = 0;
    while (frontier) {
      int u = std::countr_zero(frontier);
      frontier &= frontier - 1;
      unsigned nb = nbr[u] & ~visited;
      visited |= nb;
      result |= nb & ~s;
      frontier |= nb & s;
    }
    return std::popcount(result);
  };
  const unsigned full = k == 0 ? 0u : ((1u << k) - 1);
  std::vector<int> tw(full + 1, std::numeric_limits<int>::max());
  std::vector<signed char> last(full + 1, -1);
  tw[0] = -1;
  for (unsigned s = 1; s <= full; ++s) {
    for (int v = 0; v < k; ++v) {
      if (!(s >> v & 1)) continue;
      unsigned rest = s & ~(1u << v);
      int cand = std::max(tw[rest], q_size(rest, v));
      if (cand < tw[s]) {
        tw[s] = cand;
        last[s] = static_cast<signed char>(v);
      }
    }
  }
  std::vector<Vertex> order;
  for (unsigned s = full; s; s &= ~(1u << last[s])) order.push_back(verts[last[s]]);
  std::reverse(order.begin(), order.end());
  return detail::td_from_elimination(g, order);
}

/// Min-fill elimination, smallest id on ties.
inline TreeDecomposition td_heuristic(const DiGraph& g) {
  auto adj = detail::undirected_adjacency(g);
  std::set<Vertex> left;
  for (Vertex v : g.vertices()) left.insert(v);
  std::vector<Vertex> order;
  while (!left.empty()) {
    Vertex best = 0;
    long best_fill = -1;
    for (Vertex v : left) {
      std::vector<Vertex> nb(adj[v].begin(), adj[v].end());
      long fill = 0;
      for (std::size_t i = 0; i < nb.size(); ++i)
        for (std::size_t j = i + 1; j < nb.size(); ++j)
          if (!adj[nb[i]].count(nb[j])) ++fill;
      if (best_fill < 0 || fill < best_fill) {
        best = v;
        best_fill = fill;
      }
    }
    std::vector<Vertex> nb(adj[best].begin(), adj[best].end());
    for (Vertex a : nb) {
      adj[a].erase(best);
      for (Vertex b : nb)
        if (a != b) adj[a].insert(b);
    }
    adj[best].clear();
    left.erase(best);
    order.push_back(best);
  }
  return detail::td_from_elimination(g, order);
}

// ---------------------------------------------------------------------------
// Nice decompositions
// ---------------------------------------------------------------------------

enum class NodeKind { Leaf, Introduce, Forget, Join };

struct NiceNode {
  NodeKind kind = NodeKind::Leaf;
  Vertex vertex = 0;  // introduced or forgotten vertex
  std::vector<int> children;
  VertexSet bag;
};

/// Children always precede their parent in `nodes`, so a forward sweep is a
/// valid bottom-up order.
struct NiceTreeDecomposition {
  std::vector<NiceNode> nodes;
  int root = -1;

  int width() const {
    std::size_t w = 0;
    for (const auto& x : nodes) w = std::max(w, x.bag.size());
    return static_cast<int>(w) - 1;
  }

  TreeDecomposition plain() const {
    TreeDecomposition td;
    for (const auto& x : nodes) td.bags.push_back(x.bag);
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i)
      for (int c : nodes[i].children) td.edges.emplace_back(c, i);
    td.root = root;
    return td;
  }
};

/// Checks the node-kind rules and the underlying decomposition axioms.
inline void validate_nice(const DiGraph& g, const NiceTreeDecomposition& nd) {
  if (nd.nodes.empty() || nd.root != static_cast<int>(nd.nodes.size()) - 1)
    throw DecompositionError("nice decomposition must end with its root");
  if (!nd.nodes[nd.root].bag.empty()) throw DecompositionError("root bag must be empty");
  for (int i = 0; i < static_cast<int>(nd.nodes.size()); ++i) {
    const NiceNode& x = nd.nodes[i];
    for (int c : x.children)
      if (c < 0 || c >= i) throw DecompositionError("node " + std::to_string(i) + " has a child out of order");
    auto fail = [&](const std::string& why) {
      throw DecompositionError("node " + std::to_string(i) + ": " + why);
    };
    switch (x.kind) {
      case NodeKind::Leaf:
        if (!x.children.empty() || !x.bag.empty()) fail("leaf must be childless with an empty bag");
        break;
      case NodeKind::Introduce: {
        if (x.children.size() != 1) fail("introduce needs one child");
        VertexSet expect = nd.nodes[x.children[0]].bag;
        if (std::binary_search(expect.begin(), expect.end(), x.vertex)) fail("introduced vertex already in child bag");
        expect.push_back(x.vertex);
        if (normalized(expect) != x.bag) fail("introduce bag mismatch");
        break;
      }
      case NodeKind::Forget: {
        if (x.children.size() != 1) fail("forget needs one child");
        VertexSet expect = x.bag;
        if (std::binary_search(expect.begin(), expect.end(), x.vertex)) fail("forgotten vertex still in bag");
        expect.push_back(x.vertex);
        if (normalized(expect) != nd.nodes[x.children[0]].bag) fail("forget bag mismatch");
        break;
      }
      case NodeKind::Join:
        if (x.children.size() != 2) fail("join needs two children");
        if (nd.nodes[x.children[0]].bag != x.bag || nd.nodes[x.children[1]].bag != x.bag)
          fail("join children must share its bag");
        break;
    }
  }
  std::vector<int> parents(nd.nodes.size(), 0);
  for (const auto& x : nd.nodes)
    for (int c : x.children) ++parents[c];
  for (int i = 0; i < nd.root; ++i)
    if (parents[i] != 1) throw DecompositionError("node " + std::to_string(i) + " must have exactly one parent");
  validate_td(g, nd.plain());
}

/// Converts a valid decomposition into a nice one of the same width, rooted
/// at `root` (defaults to td.root).
inline NiceTreeDecomposition make_nice(const TreeDecomposition& td, int root = -1) {
  if (root < 0) root = td.root;
  NiceTreeDecomposition nd;
  auto add = [&](NodeKind kind, Vertex v, std::vector<int> children, VertexSet bag) {
    nd.nodes.push_back({kind, v, std::move(children), std::move(bag)});
    return static_cast<int>(nd.nodes.size()) - 1;
  };
  // Walks from node `from` (bag `have`) to a node with bag `want`.
  auto morph = [&](int from, const VertexSet& want) {
    VertexSet bag = nd.nodes[from].bag;
    for (Vertex v : VertexSet(bag)) {
      if (std::binary_search(want.begin(), want.end(), v)) continue;
      bag.erase(std::find(bag.begin(), bag.end(), v));
      from = add(NodeKind::Forget, v, {from}, bag);
    }
    for (Vertex v : want) {
      if (std::binary_search(bag.begin(), bag.end(), v)) continue;
      bag = normalized([&] {
        auto b = bag;
        b.push_back(v);
        return b;
      }());
      from = add(NodeKind::Introduce, v, {from}, bag);
    }
    return from;
  };

  const auto adj = td.adjacency();
  std::function<int(int, int)> build = [&](int x, int parent) -> int {
    std::vector<int> subs;
    for (int y : adj[x]) {
      if (y == parent) continue;
      subs.push_back(morph(build(y, x), td.bags[x]));
    }
    if (subs.empty()) return morph(add(NodeKind::Leaf, 0, {}, {}), td.bags[x]);
    int acc = subs[0];
    for (std::size_t i = 1; i < subs.size(); ++i) acc = add(NodeKind::Join, 0, {acc, subs[i]}, td.bags[x]);
    return acc;
  };
  int top = build(root, -1);
  nd.root = morph(top, {});
  return nd;
}

}  // namespace dfvs
