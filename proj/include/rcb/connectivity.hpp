#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rcb/errors.hpp"
#include "rcb/graph.hpp"

namespace rcb {

/// Iterated removal of vertices of degree at most one. Every edge whose
/// endpoints both survive is kept; isolated survivors cannot exist.
inline Subgraph two_core(const Graph& g) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<int> deg(n);
  std::vector<char> removed(n, 0);
  std::vector<VertexId> queue;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    deg[static_cast<std::size_t>(v)] = g.degree(v);
    if (deg[static_cast<std::size_t>(v)] <= 1) {
      removed[static_cast<std::size_t>(v)] = 1;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    const VertexId v = queue.back();
    queue.pop_back();
    for (const Incidence& inc : g.incident(v)) {
      const auto o = static_cast<std::size_t>(inc.other);
      if (removed[o]) continue;
      if (--deg[o] <= 1) {
        removed[o] = 1;
        queue.push_back(inc.other);
      }
    }
  }
  std::vector<char> keep(static_cast<std::size_t>(g.edge_count()), 0);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    keep[static_cast<std::size_t>(e)] =
        !removed[static_cast<std::size_t>(ed.u)] && !removed[static_cast<std::size_t>(ed.v)];
  }
  return extract_subgraph(g, keep);
}

/// Articulation points by the low-point DFS, iterative so deep paths are fine.
inline std::vector<VertexId> articulation_points(const Graph& g) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<char> is_cut(n, 0);
  struct Frame {
    VertexId v;
    EdgeId via;
    std::size_t next;
  };
  int time = 0;
  for (VertexId r = 0; r < g.vertex_count(); ++r) {
    if (disc[static_cast<std::size_t>(r)] >= 0) continue;
    int root_children = 0;
    std::vector<Frame> stack{{r, -1, 0}};
    disc[static_cast<std::size_t>(r)] = low[static_cast<std::size_t>(r)] = time++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto inc = g.incident(f.v);
      if (f.next < inc.size()) {
        const Incidence in = inc[f.next++];
        if (in.edge == f.via) continue;
        const auto w = static_cast<std::size_t>(in.other);
        if (disc[w] < 0) {
          disc[w] = low[w] = time++;
          if (f.v == r) ++root_children;
          stack.push_back({in.other, in.edge, 0});
        } else {
          low[static_cast<std::size_t>(f.v)] = std::min(low[static_cast<std::size_t>(f.v)], disc[w]);
        }
      } else {
        const VertexId child = f.v;
        stack.pop_back();
        if (stack.empty()) break;
        const VertexId parent = stack.back().v;
        auto& lp = low[static_cast<std::size_t>(parent)];
        lp = std::min(lp, low[static_cast<std::size_t>(child)]);
        if (parent != r && low[static_cast<std::size_t>(child)] >= disc[static_cast<std::size_t>(parent)]) {
          is_cut[static_cast<std::size_t>(parent)] = 1;
        }
      }
    }
    if (root_children > 1) is_cut[static_cast<std::size_t>(r)] = 1;
  }
  std::vector<VertexId> out;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (is_cut[static_cast<std::size_t>(v)]) out.push_back(v);
  }
  return out;
}

/// Returns why g is not 2-vertex-connected, or nothing when it is.
/// Two vertices joined by at least one edge count as 2-connected.
inline std::optional<NotBiconnected> biconnectivity_violation(const Graph& g) {
  using R = NotBiconnected::Reason;
  if (g.vertex_count() < 2) return NotBiconnected(R::too_small, g.vertex_count() == 1 ? 0 : -1, "fewer than two vertices");
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (g.edge(e).is_loop()) {
      return NotBiconnected(R::self_loop, e, "self-loop on edge " + std::to_string(e));
    }
  }
  std::vector<int> label;
  if (connected_components(g, label) > 1) {
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      if (label[static_cast<std::size_t>(v)] != 0) {
        return NotBiconnected(R::disconnected, v, "graph is disconnected; vertex " + std::to_string(v) +
                                                      " lies in another component");
      }
    }
  }
  const auto cuts = articulation_points(g);
  if (!cuts.empty()) {
    return NotBiconnected(R::cut_vertex, cuts.front(), "cut vertex " + std::to_string(cuts.front()));
  }
  return std::nullopt;
}

inline bool is_biconnected(const Graph& g) { return !biconnectivity_violation(g).has_value(); }

/// A simple path: vertices.size() == edges.size() + 1.
struct Ear {
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;

  VertexId front() const { return vertices.front(); }
  VertexId back() const { return vertices.back(); }
  bool single_edge() const { return edges.size() == 1; }
};

/// Open ear decomposition whose first ear is a single chosen edge.
struct EarDecomposition {
  std::vector<Ear> ears;
  /// Ear in which the vertex is interior; 0 for the endpoints of ears[0].
  std::vector<int> ear_of_vertex;
  std::vector<int> ear_of_edge;
  /// Position of an interior vertex within its ear's vertex list.
  std::vector<int> position_in_ear;

  EdgeId first_edge() const { return ears.front().edges.front(); }
};

namespace detail {

inline void index_ears(const Graph& g, EarDecomposition& ed) {
  ed.ear_of_vertex.assign(static_cast<std::size_t>(g.vertex_count()), -1);
  ed.ear_of_edge.assign(static_cast<std::size_t>(g.edge_count()), -1);
  ed.position_in_ear.assign(static_cast<std::size_t>(g.vertex_count()), -1);
  const Ear& first = ed.ears.front();
  ed.ear_of_vertex[static_cast<std::size_t>(first.front())] = 0;
  ed.ear_of_vertex[static_cast<std::size_t>(first.back())] = 0;
  ed.position_in_ear[static_cast<std::size_t>(first.front())] = 0;
  ed.position_in_ear[static_cast<std::size_t>(first.back())] = 1;
  for (std::size_t i = 0; i < ed.ears.size(); ++i) {
    const Ear& ear = ed.ears[i];
    for (EdgeId e : ear.edges) ed.ear_of_edge[static_cast<std::size_t>(e)] = static_cast<int>(i);
    if (i == 0) continue;
    for (std::size_t p = 1; p + 1 < ear.vertices.size(); ++p) {
      ed.ear_of_vertex[static_cast<std::size_t>(ear.vertices[p])] = static_cast<int>(i);
      ed.position_in_ear[static_cast<std::size_t>(ear.vertices[p])] = static_cast<int>(p);
    }
  }
}

}  // namespace detail

/// Open ear decomposition from a DFS chain decomposition, with
/// first_edge as ears[0].
///
/// The DFS starts at one endpoint of first_edge and descends along it first,
/// so the first chain closes through first_edge; splitting that chain yields
/// the single-edge first ear.
inline EarDecomposition open_ear_decomposition(const Graph& g, EdgeId first_edge) {
  if (first_edge < 0 || first_edge >= g.edge_count()) throw InvalidInput("first edge out of range");
  if (g.edge(first_edge).is_loop()) throw InvalidInput("first edge is a self-loop");
  if (auto bad = biconnectivity_violation(g)) throw *bad;

  const auto n = static_cast<std::size_t>(g.vertex_count());
  const VertexId root = g.edge(first_edge).u;
  const VertexId second = g.edge(first_edge).v;
  std::vector<int> disc(n, -1);
  std::vector<EdgeId> parent_edge(n, -1);
  std::vector<char> is_tree(static_cast<std::size_t>(g.edge_count()), 0);
  std::vector<VertexId> preorder;
  preorder.reserve(n);

  struct Frame {
    VertexId v;
    std::size_t next;
  };
  disc[static_cast<std::size_t>(root)] = 0;
  preorder.push_back(root);
  disc[static_cast<std::size_t>(second)] = 1;
  preorder.push_back(second);
  parent_edge[static_cast<std::size_t>(second)] = first_edge;
  is_tree[static_cast<std::size_t>(first_edge)] = 1;
  std::vector<Frame> stack{{root, 0}, {second, 0}};
  while (!stack.empty()) {
    Frame& f = stack.back();
    const auto inc = g.incident(f.v);
    if (f.next == inc.size()) {
      stack.pop_back();
      continue;
    }
    const Incidence in = inc[f.next++];
    const auto w = static_cast<std::size_t>(in.other);
    if (disc[w] >= 0) continue;
    disc[w] = static_cast<int>(preorder.size());
    preorder.push_back(in.other);
    parent_edge[w] = in.edge;
    is_tree[static_cast<std::size_t>(in.edge)] = 1;
    stack.push_back({in.other, 0});
  }

  EarDecomposition ed;
  ed.ears.push_back(Ear{{root, second}, {first_edge}});
  std::vector<char> visited(n, 0);
  for (VertexId v : preorder) {
    visited[static_cast<std::size_t>(v)] = 1;
    for (const Incidence& in : g.incident(v)) {
      if (is_tree[static_cast<std::size_t>(in.edge)]) continue;
      // Back edges are walked from their ancestor end.
      if (disc[static_cast<std::size_t>(in.other)] <= disc[static_cast<std::size_t>(v)]) continue;
      Ear chain;
      chain.vertices.push_back(v);
      chain.edges.push_back(in.edge);
      VertexId cur = in.other;
      chain.vertices.push_back(cur);
      while (!visited[static_cast<std::size_t>(cur)]) {
        visited[static_cast<std::size_t>(cur)] = 1;
        const EdgeId pe = parent_edge[static_cast<std::size_t>(cur)];
        cur = g.other(pe, cur);
        chain.edges.push_back(pe);
        chain.vertices.push_back(cur);
      }
      if (ed.ears.size() == 1) {
        // The first chain is a cycle through first_edge; drop that edge.
        if (chain.edges.back() != first_edge) throw Error("internal: first chain misses the first edge");
        chain.edges.pop_back();
        chain.vertices.pop_back();
        if (chain.vertices.back() != second) throw Error("internal: first chain does not end at the root pair");
      }
      ed.ears.push_back(std::move(chain));
    }
  }
  detail::index_ears(g, ed);
  return ed;
}

/// Checks the open-ear conditions and full coverage of g. Returns a
/// description of the first problem found, or nothing when valid.
inline std::optional<std::string> check_open_ear_decomposition(const Graph& g, const std::vector<Ear>& ears) {
  if (ears.empty()) return "no ears";
  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<char> seen_vertex(n, 0), seen_edge(static_cast<std::size_t>(g.edge_count()), 0);
  for (std::size_t i = 0; i < ears.size(); ++i) {
    const Ear& ear = ears[i];
    const std::string tag = "ear " + std::to_string(i) + ": ";
    if (ear.edges.empty() || ear.vertices.size() != ear.edges.size() + 1) return tag + "malformed path";
    if (i == 0 && ear.edges.size() != 1) return tag + "first ear is not a single edge";
    for (std::size_t p = 0; p < ear.edges.size(); ++p) {
      const EdgeId e = ear.edges[p];
      if (e < 0 || e >= g.edge_count()) return tag + "edge id out of range";
      const Edge& ed = g.edge(e);
      const VertexId a = ear.vertices[p], b = ear.vertices[p + 1];
      if (!((ed.u == a && ed.v == b) || (ed.u == b && ed.v == a))) return tag + "edges do not connect consecutive vertices";
      if (seen_edge[static_cast<std::size_t>(e)]) return tag + "edge " + std::to_string(e) + " repeated";
      seen_edge[static_cast<std::size_t>(e)] = 1;
    }
    if (ear.front() == ear.back()) return tag + "closed ear";
    std::vector<VertexId> sorted = ear.vertices;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return tag + "path repeats a vertex";
    if (i > 0) {
      if (!seen_vertex[static_cast<std::size_t>(ear.front())] || !seen_vertex[static_cast<std::size_t>(ear.back())]) {
        return tag + "endpoint not in an earlier ear";
      }
      for (std::size_t p = 1; p + 1 < ear.vertices.size(); ++p) {
        if (seen_vertex[static_cast<std::size_t>(ear.vertices[p])]) return tag + "interior vertex seen earlier";
      }
    }
    for (VertexId v : ear.vertices) seen_vertex[static_cast<std::size_t>(v)] = 1;
  }
  for (std::size_t e = 0; e < seen_edge.size(); ++e) {
    if (!seen_edge[e]) return "edge " + std::to_string(e) + " not covered";
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (!seen_vertex[v]) return "vertex " + std::to_string(v) + " not covered";
  }
  return std::nullopt;
}

/// Vertex-disjoint paths from u and v to the two endpoints of the first ear.
/// Either path may have length zero. Neither uses the first ear's edge.
struct PathToRootPair {
  std::vector<VertexId> path_u;  // starts at u
  std::vector<EdgeId> edges_u;
  std::vector<VertexId> path_v;  // starts at v
  std::vector<EdgeId> edges_v;
};

/// Builds the two paths by descending through the ears, always resolving the
/// latest ear that holds u or v in its interior. One-edge ears have no
/// interior vertices and are never walked.
inline PathToRootPair disjoint_paths_to_root(const EarDecomposition& ed, VertexId u, VertexId v) {
  if (u == v) throw InvalidInput("disjoint_paths_to_root needs distinct vertices");
  PathToRootPair out;
  out.path_u.push_back(u);
  out.path_v.push_back(v);

  // Appends the part of ear k from position `from` to position `to`.
  auto walk = [&](const Ear& ear, int from, int to, std::vector<VertexId>& verts, std::vector<EdgeId>& edges) {
    if (from < to) {
      for (int p = from; p < to; ++p) {
        edges.push_back(ear.edges[static_cast<std::size_t>(p)]);
        verts.push_back(ear.vertices[static_cast<std::size_t>(p) + 1]);
      }
    } else {
      for (int p = from; p > to; --p) {
        edges.push_back(ear.edges[static_cast<std::size_t>(p) - 1]);
        verts.push_back(ear.vertices[static_cast<std::size_t>(p) - 1]);
      }
    }
  };

  VertexId cu = u, cv = v;
  for (;;) {
    const int ku = ed.ear_of_vertex[static_cast<std::size_t>(cu)];
    const int kv = ed.ear_of_vertex[static_cast<std::size_t>(cv)];
    if (ku < 0 || kv < 0) throw InvalidInput("vertex not covered by the ear decomposition");
    if (ku == 0 && kv == 0) break;
    if (ku == kv) {
      const Ear& ear = ed.ears[static_cast<std::size_t>(ku)];
      const int pu = ed.position_in_ear[static_cast<std::size_t>(cu)];
      const int pv = ed.position_in_ear[static_cast<std::size_t>(cv)];
      const int last = static_cast<int>(ear.vertices.size()) - 1;
      if (pu < pv) {
        walk(ear, pu, 0, out.path_u, out.edges_u);
        walk(ear, pv, last, out.path_v, out.edges_v);
      } else {
        walk(ear, pu, last, out.path_u, out.edges_u);
        walk(ear, pv, 0, out.path_v, out.edges_v);
      }
      cu = out.path_u.back();
      cv = out.path_v.back();
      continue;
    }
    const bool move_u = ku > kv;
    const VertexId mover = move_u ? cu : cv;
    const VertexId fixed = move_u ? cv : cu;
    const Ear& ear = ed.ears[static_cast<std::size_t>(std::max(ku, kv))];
    const int last = static_cast<int>(ear.vertices.size()) - 1;
    // Endpoint distinct from the fixed vertex; smaller id when both qualify.
    int target;
    if (ear.front() == fixed) {
      target = last;
    } else if (ear.back() == fixed) {
      target = 0;
    } else {
      target = ear.front() < ear.back() ? 0 : last;
    }
    const int pos = ed.position_in_ear[static_cast<std::size_t>(mover)];
    if (move_u) {
      walk(ear, pos, target, out.path_u, out.edges_u);
      cu = out.path_u.back();
    } else {
      walk(ear, pos, target, out.path_v, out.edges_v);
      cv = out.path_v.back();
    }
  }
  return out;
}

}  // namespace rcb
