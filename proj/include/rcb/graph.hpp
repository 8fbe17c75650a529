#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "rcb/errors.hpp"

namespace rcb {

using VertexId = int;
using EdgeId = int;

/// Exact edge and path weights. Inputs are limited to 2^32 per edge, so
/// sums over a million edges stay far from overflow.
using Weight = std::int64_t;

inline constexpr Weight kMaxEdgeWeight = Weight{1} << 32;

struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  Weight w = 1;

  bool is_loop() const { return u == v; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// One entry of a vertex's adjacency list.
struct Incidence {
  EdgeId edge = 0;
  VertexId other = 0;
  friend bool operator==(const Incidence&, const Incidence&) = default;
};

/// Undirected multigraph with dense, stable edge ids 0..m-1.
///
/// Parallel edges and self-loops are allowed. A self-loop appears twice in
/// its vertex's adjacency list, so it contributes two to the degree.
class Graph {
 public:
  Graph() = default;

  Graph(int vertex_count, std::vector<Edge> edges)
      : n_(vertex_count), edges_(std::move(edges)) {
    if (n_ < 0) throw InvalidInput("negative vertex count");
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const Edge& e = edges_[i];
      if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_) {
        throw InvalidInput("edge " + std::to_string(i) + " has an endpoint out of range");
      }
      if (e.w < 1) {
        throw InvalidInput("edge " + std::to_string(i) + " has nonpositive weight");
      }
      if (e.w > kMaxEdgeWeight) {
        throw InvalidInput("edge " + std::to_string(i) + " weight exceeds 2^32");
      }
    }
    rebuild_adjacency();
  }

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const Edge& edge(EdgeId id) const { return edges_[static_cast<std::size_t>(id)]; }
  std::span<const Edge> edges() const { return edges_; }
  Weight weight(EdgeId id) const { return edge(id).w; }

  std::span<const Incidence> incident(VertexId v) const {
    const auto b = offsets_[static_cast<std::size_t>(v)];
    const auto e = offsets_[static_cast<std::size_t>(v) + 1];
    return {incidences_.data() + b, e - b};
  }

  int degree(VertexId v) const { return static_cast<int>(incident(v).size()); }

  VertexId other(EdgeId id, VertexId v) const {
    const Edge& e = edge(id);
    return e.u == v ? e.v : e.u;
  }

  /// Rebuilds the adjacency from the edge list and compares it with the
  /// stored one.
  bool adjacency_consistent() const {
    Graph copy;
    copy.n_ = n_;
    copy.edges_ = edges_;
    copy.rebuild_adjacency();
    return copy.offsets_ == offsets_ && copy.incidences_ == incidences_;
  }

  Weight total_weight(std::span<const EdgeId> ids) const {
    Weight sum = 0;
    for (EdgeId id : ids) sum += weight(id);
    return sum;
  }

 private:
  void rebuild_adjacency() {
    offsets_.assign(static_cast<std::size_t>(n_) + 1, 0);
    for (const Edge& e : edges_) {
      ++offsets_[static_cast<std::size_t>(e.u) + 1];
      ++offsets_[static_cast<std::size_t>(e.v) + 1];
    }
    std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
    incidences_.assign(offsets_.back(), Incidence{});
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const Edge& e = edges_[i];
      const auto id = static_cast<EdgeId>(i);
      incidences_[fill[static_cast<std::size_t>(e.u)]++] = {id, e.v};
      incidences_[fill[static_cast<std::size_t>(e.v)]++] = {id, e.u};
    }
  }

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Incidence> incidences_;
};

inline Graph build_graph(int n, const std::vector<std::tuple<int, int, Weight>>& edge_list) {
  std::vector<Edge> edges;
  edges.reserve(edge_list.size());
  for (const auto& [u, v, w] : edge_list) edges.push_back({u, v, w});
  return Graph(n, std::move(edges));
}

/// Graph with a designated root edge whose endpoints are distinct.
class RootedGraph {
 public:
  RootedGraph() = default;

  RootedGraph(Graph g, EdgeId root) : graph_(std::move(g)), root_(root) {
    if (root_ < 0 || root_ >= graph_.edge_count()) throw InvalidInput("root edge id out of range");
    if (graph_.edge(root_).is_loop()) throw InvalidInput("root edge is a self-loop");
  }

  const Graph& graph() const { return graph_; }
  EdgeId root() const { return root_; }
  VertexId t1() const { return graph_.edge(root_).u; }
  VertexId t2() const { return graph_.edge(root_).v; }

 private:
  Graph graph_;
  EdgeId root_ = 0;
};

/// A connected 2-regular subgraph, stored as a sorted set of edge ids.
struct Cycle {
  std::vector<EdgeId> edges;
  Weight weight = 0;

  bool contains(EdgeId e) const { return std::binary_search(edges.begin(), edges.end(), e); }
  std::size_t length() const { return edges.size(); }
  friend bool operator==(const Cycle&, const Cycle&) = default;
};

/// True when the edge set forms one connected 2-regular subgraph of g.
inline bool is_cycle(const Graph& g, std::span<const EdgeId> ids) {
  if (ids.empty()) return false;
  std::vector<int> deg(static_cast<std::size_t>(g.vertex_count()), 0);
  std::vector<char> used(static_cast<std::size_t>(g.edge_count()), 0);
  for (EdgeId id : ids) {
    if (id < 0 || id >= g.edge_count()) return false;
    if (used[static_cast<std::size_t>(id)]) return false;
    used[static_cast<std::size_t>(id)] = 1;
    const Edge& e = g.edge(id);
    ++deg[static_cast<std::size_t>(e.u)];
    ++deg[static_cast<std::size_t>(e.v)];
  }
  VertexId start = -1;
  std::size_t touched = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const int d = deg[static_cast<std::size_t>(v)];
    if (d == 0) continue;
    if (d != 2) return false;
    ++touched;
    if (start < 0) start = v;
  }
  // Connectivity: walk the induced edges from one touched vertex.
  std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()), 0);
  std::vector<VertexId> stack{start};
  seen[static_cast<std::size_t>(start)] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (const Incidence& inc : g.incident(v)) {
      if (!used[static_cast<std::size_t>(inc.edge)]) continue;
      if (!seen[static_cast<std::size_t>(inc.other)]) {
        seen[static_cast<std::size_t>(inc.other)] = 1;
        ++reached;
        stack.push_back(inc.other);
      }
    }
  }
  return reached == touched;
}

inline Cycle make_cycle(const Graph& g, std::vector<EdgeId> ids) {
  std::sort(ids.begin(), ids.end());
  if (!is_cycle(g, ids)) throw InvalidCycle("edge set is not a cycle");
  Cycle c;
  c.weight = g.total_weight(ids);
  c.edges = std::move(ids);
  return c;
}

/// Ordered cycles plus, per cycle, an optional edge absent from all earlier
/// cycles. When every witness is present the basis is weakly fundamental.
struct CycleBasis {
  std::vector<Cycle> cycles;
  std::vector<std::optional<EdgeId>> witness_edges;

  std::size_t size() const { return cycles.size(); }

  Weight total_weight() const {
    Weight sum = 0;
    for (const Cycle& c : cycles) sum += c.weight;
    return sum;
  }

  std::size_t total_length() const {
    std::size_t sum = 0;
    for (const Cycle& c : cycles) sum += c.length();
    return sum;
  }
};

/// Connected component label per vertex; returns the number of components.
inline int connected_components(const Graph& g, std::vector<int>& label) {
  label.assign(static_cast<std::size_t>(g.vertex_count()), -1);
  int count = 0;
  std::vector<VertexId> stack;
  for (VertexId s = 0; s < g.vertex_count(); ++s) {
    if (label[static_cast<std::size_t>(s)] >= 0) continue;
    label[static_cast<std::size_t>(s)] = count;
    stack.push_back(s);
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      for (const Incidence& inc : g.incident(v)) {
        auto& l = label[static_cast<std::size_t>(inc.other)];
        if (l < 0) {
          l = count;
          stack.push_back(inc.other);
        }
      }
    }
    ++count;
  }
  return count;
}

inline int cycle_space_dimension(const Graph& g) {
  std::vector<int> label;
  const int components = connected_components(g, label);
  return g.edge_count() - g.vertex_count() + components;
}

/// A subgraph with id maps back to the graph it was cut from.
struct Subgraph {
  Graph graph;
  std::vector<VertexId> vertex_to_parent;
  std::vector<EdgeId> edge_to_parent;
  std::vector<VertexId> parent_to_vertex;  // -1 when dropped
  std::vector<EdgeId> parent_to_edge;      // -1 when dropped
};

/// Keeps the edges with keep_edge[e] set and the vertices they touch, plus
/// any vertex with keep_vertex[v] set. Relative order of ids is preserved.
inline Subgraph extract_subgraph(const Graph& g, const std::vector<char>& keep_edge,
                                 const std::vector<char>& keep_vertex = {}) {
  Subgraph s;
  s.parent_to_vertex.assign(static_cast<std::size_t>(g.vertex_count()), -1);
  s.parent_to_edge.assign(static_cast<std::size_t>(g.edge_count()), -1);
  std::vector<char> vkeep(static_cast<std::size_t>(g.vertex_count()), 0);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (!keep_vertex.empty() && keep_vertex[static_cast<std::size_t>(v)]) vkeep[static_cast<std::size_t>(v)] = 1;
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!keep_edge[static_cast<std::size_t>(e)]) continue;
    vkeep[static_cast<std::size_t>(g.edge(e).u)] = 1;
    vkeep[static_cast<std::size_t>(g.edge(e).v)] = 1;
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (!vkeep[static_cast<std::size_t>(v)]) continue;
    s.parent_to_vertex[static_cast<std::size_t>(v)] = static_cast<VertexId>(s.vertex_to_parent.size());
    s.vertex_to_parent.push_back(v);
  }
  std::vector<Edge> edges;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!keep_edge[static_cast<std::size_t>(e)]) continue;
    const Edge& pe = g.edge(e);
    s.parent_to_edge[static_cast<std::size_t>(e)] = static_cast<EdgeId>(edges.size());
    s.edge_to_parent.push_back(e);
    edges.push_back({s.parent_to_vertex[static_cast<std::size_t>(pe.u)],
                     s.parent_to_vertex[static_cast<std::size_t>(pe.v)], pe.w});
  }
  s.graph = Graph(static_cast<int>(s.vertex_to_parent.size()), std::move(edges));
  return s;
}

}  // namespace rcb
