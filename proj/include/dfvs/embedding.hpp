#pragma once

// Combinatorial plane embeddings given by rotation systems.
//
// Each arc is an undirected edge slot; an antiparallel pair occupies two
// slots. Dart 2a runs tail -> head along arc a, dart 2a+1 runs head -> tail.
// Faces are traced with the rule: after arriving at y along arc a, leave
// along the arc that follows a in the clockwise rotation of y. The corner
// (v, p) sits between rot[v][p] and rot[v][p+1] and belongs to the face of
// the dart that arrives at v along rot[v][p].

#include <algorithm>
#include <map>
#include <vector>

#include "dfvs/digraph.hpp"
#include "dfvs/error.hpp"

namespace dfvs {

class Embedding {
 public:
  Embedding() = default;

  /// rotation[v] lists the arc indices incident to v in clockwise order.
  /// Throws EmbeddingError unless this is a plane embedding of g.
  Embedding(const DiGraph& g, std::vector<std::vector<int>> rotation) : rot_(std::move(rotation)) {
    rot_.resize(g.n() + 1);
    const int m = g.arc_count();
    tail_.resize(m);
    head_.resize(m);
    pos_.assign(2 * m, -1);
    for (int a = 0; a < m; ++a) {
      tail_[a] = g.arc(a).tail;
      head_[a] = g.arc(a).head;
    }
    for (Vertex v = 1; v <= g.n(); ++v) {
      std::vector<int> expect(g.out_arcs(v));
      expect.insert(expect.end(), g.in_arcs(v).begin(), g.in_arcs(v).end());
      std::sort(expect.begin(), expect.end());
      std::vector<int> got = rot_[v];
      std::sort(got.begin(), got.end());
      if (got != expect)
        throw EmbeddingError("rotation of vertex " + std::to_string(v) + " does not list exactly its incident arcs");
      for (int p = 0; p < static_cast<int>(rot_[v].size()); ++p) pos_[dart_at(rot_[v][p], v)] = p;
    }
    trace_faces();
    check_euler(g);
  }

  /// Builds arc rotations from neighbor lists. With an antiparallel pair
  /// between v and w, the j-th listing of w at v is the j-th arc of the pair
  /// (by index) when v < w, and the pair in reverse index order when v > w.
  static Embedding from_neighbors(const DiGraph& g, const std::vector<std::vector<Vertex>>& nbrs) {
    std::vector<std::vector<int>> rot(g.n() + 1);
    for (Vertex v = 1; v <= g.n() && v < static_cast<int>(nbrs.size()); ++v) {
      std::map<Vertex, int> used;
      for (Vertex w : nbrs[v]) {
        auto arcs = arcs_between(g, v, w);
        if (v > w) std::reverse(arcs.begin(), arcs.end());
        int j = used[w]++;
        if (j >= static_cast<int>(arcs.size()))
          throw EmbeddingError("rotation of vertex " + std::to_string(v) + " lists neighbor " + std::to_string(w) +
                               " more often than there are arcs");
        rot[v].push_back(arcs[j]);
      }
    }
    return Embedding(g, std::move(rot));
  }

  /// Neighbor lists in the file convention understood by from_neighbors.
  std::vector<std::vector<Vertex>> neighbor_lists() const {
    std::vector<std::vector<Vertex>> out(rot_.size());
    for (Vertex v = 1; v < static_cast<int>(rot_.size()); ++v)
      for (int a : rot_[v]) out[v].push_back(tail_[a] == v ? head_[a] : tail_[a]);
    return out;
  }

  int n() const { return static_cast<int>(rot_.size()) - 1; }
  int arc_count() const { return static_cast<int>(tail_.size()); }
  const std::vector<int>& rotation(Vertex v) const { return rot_[v]; }
  int degree(Vertex v) const { return static_cast<int>(rot_[v].size()); }

  Vertex origin(int dart) const { return dart & 1 ? head_[dart >> 1] : tail_[dart >> 1]; }
  Vertex target(int dart) const { return dart & 1 ? tail_[dart >> 1] : head_[dart >> 1]; }
  /// Dart along arc a that leaves v.
  int dart_at(int a, Vertex v) const { return tail_[a] == v ? 2 * a : 2 * a + 1; }
  /// Position of arc a in the rotation of v.
  int position(int a, Vertex v) const { return pos_[dart_at(a, v)]; }

  int next_in_face(int dart) const {
    const Vertex y = target(dart);
    const int p = pos_[dart_at(dart >> 1, y)];
    const int a = rot_[y][(p + 1) % rot_[y].size()];
    return dart_at(a, y);
  }

  int face_count() const { return static_cast<int>(faces_.size()); }
  /// Facial walk as a dart sequence.
  const std::vector<int>& face(int f) const { return faces_[f]; }
  int face_of_dart(int dart) const { return face_of_[dart]; }
  /// Face holding the corner between rot[v][p] and rot[v][p+1].
  int corner_face(Vertex v, int p) const {
    const int a = rot_[v][p];
    return face_of_[a * 2 + (tail_[a] == v ? 1 : 0)];
  }

  /// Vertices on the walk of face f, one per corner, in walk order.
  std::vector<Vertex> face_vertices(int f) const {
    std::vector<Vertex> out;
    for (int d : faces_[f]) out.push_back(target(d));
    return out;
  }

 private:
  static std::vector<int> arcs_between(const DiGraph& g, Vertex v, Vertex w) {
    std::vector<int> out;
    if (auto a = g.find_arc(v, w)) out.push_back(*a);
    if (auto a = g.find_arc(w, v)) out.push_back(*a);
    std::sort(out.begin(), out.end());
    return out;
  }

  void trace_faces() {
    const int darts = 2 * arc_count();
    face_of_.assign(darts, -1);
    for (int d = 0; d < darts; ++d) {
      if (face_of_[d] >= 0) continue;
      const int f = static_cast<int>(faces_.size());
      faces_.emplace_back();
      for (int e = d; face_of_[e] < 0; e = next_in_face(e)) {
        face_of_[e] = f;
        faces_[f].push_back(e);
      }
    }
  }

  void check_euler(const DiGraph& g) {
    // per weakly connected component with at least one arc: V - E + F = 2
    std::vector<int> comp(g.n() + 1, -1);
    int nc = 0;
    for (Vertex s = 1; s <= g.n(); ++s) {
      if (comp[s] >= 0 || rot_[s].empty()) continue;
      std::vector<Vertex> stack{s};
      comp[s] = nc;
      while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        for (int a : rot_[v]) {
          Vertex w = tail_[a] == v ? head_[a] : tail_[a];
          if (comp[w] < 0) {
            comp[w] = nc;
            stack.push_back(w);
          }
        }
      }
      ++nc;
    }
    std::vector<long> chi(nc, 0);
    for (Vertex v = 1; v <= g.n(); ++v)
      if (comp[v] >= 0) ++chi[comp[v]];
    for (int a = 0; a < arc_count(); ++a) --chi[comp[tail_[a]]];
    for (const auto& f : faces_) ++chi[comp[origin(f[0])]];
    for (int c = 0; c < nc; ++c)
      if (chi[c] != 2) throw EmbeddingError("rotation system violates Euler's formula (not a plane embedding)");
  }

  std::vector<std::vector<int>> rot_;
  std::vector<Vertex> tail_, head_;
  std::vector<int> pos_;
  std::vector<std::vector<int>> faces_;
  std::vector<int> face_of_;
};

/// Face report: the embedding's faces as vertex walks.
inline std::vector<std::vector<Vertex>> validate_embedding(const DiGraph& g, const std::vector<std::vector<Vertex>>& nbrs) {
  Embedding e = Embedding::from_neighbors(g, nbrs);
  std::vector<std::vector<Vertex>> faces;
  for (int f = 0; f < e.face_count(); ++f) faces.push_back(e.face_vertices(f));
  return faces;
}

/// Bipartite vertex/face incidence graph, one edge per corner.
struct RadialGraph {
  int vertex_nodes = 0;  // vertices 1..n
  int face_nodes = 0;    // faces 0..F-1
  std::vector<std::pair<Vertex, int>> edges;
};

inline RadialGraph radial_graph(const Embedding& e) {
  RadialGraph r{e.n(), e.face_count(), {}};
  for (int f = 0; f < e.face_count(); ++f)
    for (int d : e.face(f)) r.edges.emplace_back(e.target(d), f);
  return r;
}

/// Restriction of an embedding to a piece whose arcs map to original arcs:
/// each rotation keeps the surviving arcs in their original cyclic order.
inline Embedding restrict_embedding(const Embedding& e, const GraphPiece& piece) {
  const DiGraph& g = piece.graph;
  std::map<int, int> local;
  for (int i = 0; i < g.arc_count(); ++i) local[piece.arc_to_original[i]] = i;
  std::vector<std::vector<int>> rot(g.n() + 1);
  for (Vertex v = 1; v <= g.n(); ++v)
    for (int a : e.rotation(piece.to_original[v]))
      if (auto it = local.find(a); it != local.end()) rot[v].push_back(it->second);
  return Embedding(g, std::move(rot));
}

}  // namespace dfvs
