#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rcb/errors.hpp"
#include "rcb/graph.hpp"

namespace rcb {

struct SearchLimits {
  std::uint64_t max_nodes = 50'000'000;
};

/// Union-find with undo, for backtracking searches.
class RollbackUnionFind {
 public:
  explicit RollbackUnionFind(int n) : parent_(static_cast<std::size_t>(n)), size_(static_cast<std::size_t>(n), 1) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int x) const {
    while (parent_[static_cast<std::size_t>(x)] != x) x = parent_[static_cast<std::size_t>(x)];
    return x;
  }

  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[static_cast<std::size_t>(a)] < size_[static_cast<std::size_t>(b)]) std::swap(a, b);
    parent_[static_cast<std::size_t>(b)] = a;
    size_[static_cast<std::size_t>(a)] += size_[static_cast<std::size_t>(b)];
    history_.push_back(b);
    return true;
  }

  std::size_t mark() const { return history_.size(); }

  void rollback(std::size_t to) {
    while (history_.size() > to) {
      const int b = history_.back();
      history_.pop_back();
      const int a = parent_[static_cast<std::size_t>(b)];
      size_[static_cast<std::size_t>(a)] -= size_[static_cast<std::size_t>(b)];
      parent_[static_cast<std::size_t>(b)] = b;
    }
  }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
  std::vector<int> history_;
};

// ---------------------------------------------------------------------------
// Fundamental bases

struct FundamentalCheck {
  bool fundamental = false;
  EdgeId offending = -1;  // a non-tree edge whose cycle misses the root

  explicit operator bool() const { return fundamental; }
};

/// Whether the fundamental cycles of `tree` all pass through the root.
/// That holds exactly when every non-tree edge joins the two halves of
/// tree minus the root edge.
inline FundamentalCheck is_fundamental_rooted(const RootedGraph& rg, const std::vector<EdgeId>& tree) {
  const Graph& g = rg.graph();
  const int n = g.vertex_count();
  std::vector<char> in_tree(static_cast<std::size_t>(g.edge_count()), 0);
  for (EdgeId e : tree) {
    if (e < 0 || e >= g.edge_count()) throw NotASpanningTree("tree edge id out of range");
    if (in_tree[static_cast<std::size_t>(e)]) throw NotASpanningTree("tree lists an edge twice");
    in_tree[static_cast<std::size_t>(e)] = 1;
  }
  if (static_cast<int>(tree.size()) != n - 1) throw NotASpanningTree("tree must have n-1 edges");
  RollbackUnionFind uf(n);
  for (EdgeId e : tree) {
    if (!uf.unite(g.edge(e).u, g.edge(e).v)) throw NotASpanningTree("tree contains a cycle");
  }
  if (!in_tree[static_cast<std::size_t>(rg.root())]) throw RootNotInTree("root edge is not in the tree");

  RollbackUnionFind halves(n);
  for (EdgeId e : tree) {
    if (e != rg.root()) halves.unite(g.edge(e).u, g.edge(e).v);
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (in_tree[static_cast<std::size_t>(e)]) continue;
    if (halves.find(g.edge(e).u) == halves.find(g.edge(e).v)) return {false, e};
  }
  return {true, -1};
}

/// A fundamental rooted tree and the two vertex sides it came from.
struct FundamentalTree {
  std::vector<EdgeId> tree;  // sorted
  std::vector<int> side;     // 0 for the t1 side, 1 for the t2 side
};

namespace detail {

class PartitionSearch {
 public:
  PartitionSearch(const RootedGraph& rg, const SearchLimits& limits)
      : g_(rg.graph()), rg_(rg), limits_(limits), uf_(g_.vertex_count()),
        color_(static_cast<std::size_t>(g_.vertex_count()), -1) {
    order_.resize(static_cast<std::size_t>(g_.vertex_count()));
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](VertexId a, VertexId b) { return g_.degree(a) > g_.degree(b); });
  }

  std::optional<FundamentalTree> run() {
    for (const Edge& e : g_.edges()) {
      if (e.is_loop()) return std::nullopt;
    }
    if (!assign(rg_.t1(), 0) || !assign(rg_.t2(), 1)) return std::nullopt;
    if (!search(2)) return std::nullopt;
    FundamentalTree out;
    out.side = color_;
    for (EdgeId e = 0; e < g_.edge_count(); ++e) {
      const Edge& ed = g_.edge(e);
      if (e == rg_.root() || color_[static_cast<std::size_t>(ed.u)] == color_[static_cast<std::size_t>(ed.v)]) {
        out.tree.push_back(e);
      }
    }
    return out;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  // Colours v and merges it with same-coloured neighbours; false on a cycle.
  bool assign(VertexId v, int c) {
    color_[static_cast<std::size_t>(v)] = c;
    ++assigned_;
    for (const Incidence& in : g_.incident(v)) {
      if (color_[static_cast<std::size_t>(in.other)] != c || in.other == v) continue;
      if (!uf_.unite(v, in.other)) return false;
    }
    return true;
  }

  void unassign(VertexId v, std::size_t mark) {
    uf_.rollback(mark);
    color_[static_cast<std::size_t>(v)] = -1;
    --assigned_;
  }

  bool allowed(VertexId v, int c) const {
    // Adding v to side c must not close a cycle.
    roots_.clear();
    for (const Incidence& in : g_.incident(v)) {
      if (color_[static_cast<std::size_t>(in.other)] != c) continue;
      const int r = uf_.find(in.other);
      if (std::find(roots_.begin(), roots_.end(), r) != roots_.end()) return false;
      roots_.push_back(r);
    }
    return true;
  }

  // Each side must end up connected: a finished component of a side (no
  // uncoloured neighbour) may only exist if it is the whole side.
  bool sides_can_connect() const {
    const int n = g_.vertex_count();
    comp_count_[0] = comp_count_[1] = 0;
    closed_[0] = closed_[1] = false;
    open_.assign(static_cast<std::size_t>(n), 0);
    seen_.assign(static_cast<std::size_t>(n), 0);
    for (VertexId v = 0; v < n; ++v) {
      const int c = color_[static_cast<std::size_t>(v)];
      if (c < 0) continue;
      const int r = uf_.find(v);
      if (!seen_[static_cast<std::size_t>(r)]) {
        seen_[static_cast<std::size_t>(r)] = 1;
        ++comp_count_[c];
      }
      for (const Incidence& in : g_.incident(v)) {
        if (color_[static_cast<std::size_t>(in.other)] < 0) open_[static_cast<std::size_t>(r)] = 1;
      }
    }
    for (VertexId v = 0; v < n; ++v) {
      const int c = color_[static_cast<std::size_t>(v)];
      if (c < 0 || uf_.find(v) != v) continue;
      if (!open_[static_cast<std::size_t>(v)]) closed_[c] = true;
    }
    for (int c = 0; c < 2; ++c) {
      if (closed_[c] && comp_count_[c] > 1) return false;
    }
    return true;
  }

  bool search(int depth) {
    if (++nodes_ > limits_.max_nodes) throw SearchLimitExceeded("partition search exceeded its node limit");
    if (!sides_can_connect()) return false;
    if (assigned_ == g_.vertex_count()) return comp_count_[0] == 1 && comp_count_[1] == 1;

    // Pick a vertex with the fewest allowed colours; ties by degree order.
    VertexId pick = -1;
    int pick_options = 3;
    bool opt[2] = {false, false};
    for (VertexId v : order_) {
      if (color_[static_cast<std::size_t>(v)] >= 0) continue;
      const bool a0 = allowed(v, 0), a1 = allowed(v, 1);
      const int k = a0 + a1;
      if (k == 0) return false;
      if (k < pick_options) {
        pick = v;
        pick_options = k;
        opt[0] = a0;
        opt[1] = a1;
        if (k == 1) break;
      }
    }
    for (int c = 0; c < 2; ++c) {
      if (!opt[c]) continue;
      const std::size_t mark = uf_.mark();
      const bool ok = assign(pick, c);
      if (ok && search(depth + 1)) return true;
      unassign(pick, mark);
    }
    return false;
  }

  const Graph& g_;
  const RootedGraph& rg_;
  SearchLimits limits_;
  RollbackUnionFind uf_;
  std::vector<int> color_;
  std::vector<VertexId> order_;
  int assigned_ = 0;
  std::uint64_t nodes_ = 0;
  mutable std::vector<int> roots_;
  mutable int comp_count_[2] = {0, 0};
  mutable bool closed_[2] = {false, false};
  mutable std::vector<char> open_, seen_;
};

}  // namespace detail

/// Searches for two vertex sets, one holding each root end, that each
/// induce a tree. Their trees plus the root edge form a spanning tree whose
/// fundamental cycles all use the root. nullopt means no such sets exist.
inline std::optional<FundamentalTree> find_fundamental_rooted_tree(const RootedGraph& rg,
                                                                   const SearchLimits& limits = {}) {
  return detail::PartitionSearch(rg, limits).run();
}

// ---------------------------------------------------------------------------
// Hamiltonian cycles

/// Hamiltonian cycle through the root edge, as edge ids in cycle order
/// starting with the root; nullopt when none exists.
inline std::optional<std::vector<EdgeId>> find_rooted_hamiltonian(const RootedGraph& rg,
                                                                  const SearchLimits& limits = {}) {
  const Graph& g = rg.graph();
  const int n = g.vertex_count();
  const VertexId t1 = rg.t1(), t2 = rg.t2();
  if (n == 2) {
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (e != rg.root() && !g.edge(e).is_loop()) return std::vector<EdgeId>{rg.root(), e};
    }
    return std::nullopt;
  }
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  std::vector<EdgeId> path{rg.root()};
  std::vector<int> mark(static_cast<std::size_t>(n), 0);
  int stamp = 0;
  std::uint64_t nodes = 0;
  std::vector<VertexId> stack;

  // Every unvisited vertex must still be reachable from the path's head
  // through unvisited vertices, and t1 must be among them.
  auto reachable_rest = [&](VertexId head, int visited) {
    ++stamp;
    stack.assign(1, head);
    mark[static_cast<std::size_t>(head)] = stamp;
    int count = 0;
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      for (const Incidence& in : g.incident(v)) {
        const auto o = static_cast<std::size_t>(in.other);
        if (used[o] || mark[o] == stamp) continue;
        mark[o] = stamp;
        ++count;
        stack.push_back(in.other);
      }
    }
    return count == n - visited;
  };

  // Unvisited vertices other than t1 need two usable neighbours.
  auto degrees_ok = [&](VertexId head) {
    for (VertexId v = 0; v < n; ++v) {
      if (used[static_cast<std::size_t>(v)] || v == t1) continue;
      int k = 0;
      VertexId last = -1;
      for (const Incidence& in : g.incident(v)) {
        const VertexId o = in.other;
        if (o == v || o == last) continue;
        if (!used[static_cast<std::size_t>(o)] || o == head) {
          ++k;
          last = o;
        }
      }
      if (k < 2) return false;
    }
    return true;
  };

  auto dfs = [&](auto&& self, VertexId head, int visited) -> bool {
    if (++nodes > limits.max_nodes) throw SearchLimitExceeded("Hamiltonian search exceeded its node limit");
    if (visited == n) return false;
    if (!reachable_rest(head, visited) || !degrees_ok(head)) return false;
    for (const Incidence& in : g.incident(head)) {
      const VertexId o = in.other;
      if (used[static_cast<std::size_t>(o)] || in.edge == rg.root()) continue;
      if (o == t1 && visited != n - 1) continue;
      used[static_cast<std::size_t>(o)] = 1;
      path.push_back(in.edge);
      if (o == t1 || self(self, o, visited + 1)) return true;
      path.pop_back();
      used[static_cast<std::size_t>(o)] = 0;
    }
    return false;
  };
  used[static_cast<std::size_t>(t2)] = 1;
  if (dfs(dfs, t2, 1)) return path;
  return std::nullopt;
}

inline bool has_rooted_hamiltonian(const RootedGraph& rg, const SearchLimits& limits = {}) {
  return find_rooted_hamiltonian(rg, limits).has_value();
}

// ---------------------------------------------------------------------------
// Plane embeddings and duals

inline int dart_tail(const Graph& g, int d) {
  const Edge& e = g.edge(d / 2);
  return d % 2 == 0 ? e.u : e.v;
}

/// Rotation system. Dart 2e runs from edge e's u to v, dart 2e+1 back.
/// rotation[v] lists the darts leaving v in cyclic order.
struct PlaneEmbedding {
  Graph graph;
  std::vector<std::vector<int>> rotation;
  std::vector<int> face_of_dart;
  std::vector<std::vector<int>> faces;

  int face_count() const { return static_cast<int>(faces.size()); }
};

/// Builds an embedding from per-vertex cyclic edge lists. A self-loop is
/// listed twice; its first occurrence stands for dart 2e.
inline PlaneEmbedding make_embedding(Graph g, const std::vector<std::vector<EdgeId>>& rotation_edges) {
  const int n = g.vertex_count();
  if (static_cast<int>(rotation_edges.size()) != n) throw InvalidEmbedding("rotation system needs one list per vertex");
  PlaneEmbedding pe;
  pe.rotation.resize(static_cast<std::size_t>(n));
  std::vector<int> seen(2 * static_cast<std::size_t>(g.edge_count()), 0);
  for (VertexId v = 0; v < n; ++v) {
    for (EdgeId e : rotation_edges[static_cast<std::size_t>(v)]) {
      if (e < 0 || e >= g.edge_count()) throw InvalidEmbedding("rotation lists an unknown edge");
      const Edge& ed = g.edge(e);
      int d;
      if (ed.is_loop()) {
        if (ed.u != v) throw InvalidEmbedding("edge listed at a vertex it does not touch");
        d = seen[2 * static_cast<std::size_t>(e)] ? 2 * e + 1 : 2 * e;
      } else if (ed.u == v) {
        d = 2 * e;
      } else if (ed.v == v) {
        d = 2 * e + 1;
      } else {
        throw InvalidEmbedding("edge " + std::to_string(e) + " listed at a vertex it does not touch");
      }
      if (seen[static_cast<std::size_t>(d)]++) throw InvalidEmbedding("edge " + std::to_string(e) + " listed too often");
      pe.rotation[static_cast<std::size_t>(v)].push_back(d);
    }
  }
  for (std::size_t d = 0; d < seen.size(); ++d) {
    if (!seen[d]) throw InvalidEmbedding("edge " + std::to_string(d / 2) + " missing from the rotation system");
  }
  pe.graph = std::move(g);

  const auto darts = seen.size();
  std::vector<int> pos(darts, 0);
  for (const auto& rot : pe.rotation) {
    for (std::size_t i = 0; i < rot.size(); ++i) pos[static_cast<std::size_t>(rot[i])] = static_cast<int>(i);
  }
  // Face successor: reverse the dart, then turn to the next dart around its tail.
  auto next = [&](int d) {
    const int r = d ^ 1;
    const auto& rot = pe.rotation[static_cast<std::size_t>(dart_tail(pe.graph, r))];
    return rot[(static_cast<std::size_t>(pos[static_cast<std::size_t>(r)]) + 1) % rot.size()];
  };
  pe.face_of_dart.assign(darts, -1);
  for (std::size_t d0 = 0; d0 < darts; ++d0) {
    if (pe.face_of_dart[d0] >= 0) continue;
    const int f = static_cast<int>(pe.faces.size());
    pe.faces.emplace_back();
    int d = static_cast<int>(d0);
    while (pe.face_of_dart[static_cast<std::size_t>(d)] < 0) {
      pe.face_of_dart[static_cast<std::size_t>(d)] = f;
      pe.faces.back().push_back(d);
      d = next(d);
    }
  }
  std::vector<int> label;
  const int comps = connected_components(pe.graph, label);
  if (comps != 1) throw InvalidEmbedding("embedded graph must be connected");
  const int faces = pe.graph.edge_count() == 0 ? 1 : pe.face_count();
  if (n - pe.graph.edge_count() + faces != 2) {
    throw InvalidEmbedding("rotation system is not planar (Euler characteristic " +
                           std::to_string(n - pe.graph.edge_count() + faces) + ")");
  }
  return pe;
}

/// Rotation lists as edge ids, the inverse of make_embedding's input.
inline std::vector<std::vector<EdgeId>> rotation_edges(const PlaneEmbedding& pe) {
  std::vector<std::vector<EdgeId>> out;
  for (const auto& rot : pe.rotation) {
    std::vector<EdgeId> r;
    for (int d : rot) r.push_back(d / 2);
    out.push_back(std::move(r));
  }
  return out;
}

/// Dual of a plane graph. Dual edge e crosses primal edge e, so the edge
/// bijection is the identity on ids. Dual vertices are the faces.
inline PlaneEmbedding dual_graph(const PlaneEmbedding& pe) {
  const Graph& g = pe.graph;
  if (g.edge_count() == 0) throw InvalidEmbedding("dual of an edgeless graph is not defined here");
  std::vector<Edge> edges;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    edges.push_back({pe.face_of_dart[2 * static_cast<std::size_t>(e)],
                     pe.face_of_dart[2 * static_cast<std::size_t>(e) + 1], g.weight(e)});
  }
  PlaneEmbedding dual;
  dual.graph = Graph(pe.face_count(), std::move(edges));
  // Around a face, its darts in walk order give the dual rotation.
  dual.rotation = pe.faces;
  const auto darts = 2 * static_cast<std::size_t>(g.edge_count());
  std::vector<int> pos(darts, 0);
  for (const auto& rot : dual.rotation) {
    for (std::size_t i = 0; i < rot.size(); ++i) pos[static_cast<std::size_t>(rot[i])] = static_cast<int>(i);
  }
  auto next = [&](int d) {
    const int r = d ^ 1;
    const auto& rot = dual.rotation[static_cast<std::size_t>(dart_tail(dual.graph, r))];
    return rot[(static_cast<std::size_t>(pos[static_cast<std::size_t>(r)]) + 1) % rot.size()];
  };
  dual.face_of_dart.assign(darts, -1);
  for (std::size_t d0 = 0; d0 < darts; ++d0) {
    if (dual.face_of_dart[d0] >= 0) continue;
    const int f = dual.face_count();
    dual.faces.emplace_back();
    int d = static_cast<int>(d0);
    while (dual.face_of_dart[static_cast<std::size_t>(d)] < 0) {
      dual.face_of_dart[static_cast<std::size_t>(d)] = f;
      dual.faces.back().push_back(d);
      d = next(d);
    }
  }
  if (dual.graph.vertex_count() - dual.graph.edge_count() + dual.face_count() != 2) {
    throw InvalidEmbedding("dual fails the Euler check");
  }
  return dual;
}

/// Whether some vertex bijection maps g1 onto g2 with edge i going to edge i.
inline bool isomorphic_by_edge_ids(const Graph& g1, const Graph& g2) {
  if (g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count()) return false;
  const int n = g1.vertex_count();
  std::vector<int> to(static_cast<std::size_t>(n), -1), from(static_cast<std::size_t>(n), -1);
  auto bind = [&](int a, int b) {
    if (to[static_cast<std::size_t>(a)] == b && from[static_cast<std::size_t>(b)] == a) return true;
    if (to[static_cast<std::size_t>(a)] >= 0 || from[static_cast<std::size_t>(b)] >= 0) return false;
    to[static_cast<std::size_t>(a)] = b;
    from[static_cast<std::size_t>(b)] = a;
    return true;
  };
  // Propagate from each unmapped vertex over its edges; a vertex with no
  // edges may go anywhere, so those are matched last.
  for (VertexId s = 0; s < n; ++s) {
    if (to[static_cast<std::size_t>(s)] >= 0 || g1.degree(s) == 0) continue;
    const EdgeId e0 = g1.incident(s)[0].edge;
    bool done = false;
    for (VertexId cand : {g2.edge(e0).u, g2.edge(e0).v}) {
      auto to_save = to;
      auto from_save = from;
      bool ok = bind(s, cand);
      std::vector<VertexId> stack{s};
      while (ok && !stack.empty()) {
        const VertexId v = stack.back();
        stack.pop_back();
        const VertexId img = to[static_cast<std::size_t>(v)];
        for (const Incidence& in : g1.incident(v)) {
          const Edge& e2 = g2.edge(in.edge);
          if (e2.u != img && e2.v != img) {
            ok = false;
            break;
          }
          const VertexId oimg = e2.u == img ? e2.v : e2.u;
          const bool fresh = to[static_cast<std::size_t>(in.other)] < 0;
          if (!bind(in.other, oimg)) {
            ok = false;
            break;
          }
          if (fresh) stack.push_back(in.other);
        }
      }
      if (ok) {
        done = true;
        break;
      }
      to = std::move(to_save);
      from = std::move(from_save);
    }
    if (!done) return false;
  }
  for (VertexId v = 0; v < n; ++v) {
    if (to[static_cast<std::size_t>(v)] >= 0) continue;
    for (VertexId b = 0; b < n; ++b) {
      if (from[static_cast<std::size_t>(b)] < 0 && g2.degree(b) == 0) {
        bind(v, b);
        break;
      }
    }
    if (to[static_cast<std::size_t>(v)] < 0) return false;
  }
  return true;
}

/// Whether the duals of the edges outside `tree` form a spanning tree of
/// the dual graph.
inline bool is_tree_cotree(const PlaneEmbedding& pe, const PlaneEmbedding& dual, const std::vector<EdgeId>& tree) {
  std::vector<char> in_tree(static_cast<std::size_t>(pe.graph.edge_count()), 0);
  for (EdgeId e : tree) in_tree[static_cast<std::size_t>(e)] = 1;
  RollbackUnionFind uf(dual.graph.vertex_count());
  int count = 0;
  for (EdgeId e = 0; e < dual.graph.edge_count(); ++e) {
    if (in_tree[static_cast<std::size_t>(e)]) continue;
    if (!uf.unite(dual.graph.edge(e).u, dual.graph.edge(e).v)) return false;
    ++count;
  }
  return count == dual.graph.vertex_count() - 1;
}

// ---------------------------------------------------------------------------
// Forced-edge gadget

struct GadgetResult {
  Graph graph;
  EdgeId forced_edge;
};

/// Replaces degree-3 vertex v by a K4 on {p, q, r, d}: the three former
/// edges of v attach to p, q and r, and p-d is the forced edge. A
/// Hamiltonian cycle has to pass through the gadget in one piece, entering
/// and leaving through two of p, q, r, and it can always be routed over p-d.
/// p reuses v's id; q, r, d are appended.
inline GadgetResult forced_edge_gadget(const Graph& g, VertexId v) {
  if (v < 0 || v >= g.vertex_count()) throw InvalidInput("vertex out of range");
  if (g.degree(v) != 3) throw WrongDegree("gadget needs a degree-3 vertex, got degree " + std::to_string(g.degree(v)));
  for (const Incidence& in : g.incident(v)) {
    if (in.other == v) throw WrongDegree("gadget vertex has a self-loop");
  }
  const int n = g.vertex_count();
  const VertexId p = v, q = n, r = n + 1, d = n + 2;
  const VertexId port[3] = {p, q, r};
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  int k = 0;
  for (const Incidence& in : g.incident(v)) {
    Edge& e = edges[static_cast<std::size_t>(in.edge)];
    if (e.u == v) {
      e.u = port[k];
    } else {
      e.v = port[k];
    }
    ++k;
  }
  edges.push_back({p, q, 1});
  edges.push_back({q, r, 1});
  edges.push_back({r, p, 1});
  const auto forced = static_cast<EdgeId>(edges.size());
  edges.push_back({p, d, 1});
  edges.push_back({q, d, 1});
  edges.push_back({r, d, 1});
  return {Graph(n + 3, std::move(edges)), forced};
}

}  // namespace rcb
