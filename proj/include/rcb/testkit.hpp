#pragma once

// Brute-force oracles for desk-scale cross-checks. Nothing here uses ear
// decompositions, shortest paths or the tie-break dictionary.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rcb/errors.hpp"
#include "rcb/gf2.hpp"
#include "rcb/graph.hpp"

namespace rcb::testkit {

struct EnumerationCaps {
  std::size_t max_cycles = 1'000'000;
  std::size_t max_length = 64;
};

/// Every simple cycle through the root edge: root plus a simple t2-t1 path
/// that avoids the root. Parallel edges yield distinct cycles.
inline std::vector<Cycle> enumerate_rooted_cycles(const RootedGraph& rg, const EnumerationCaps& caps = {}) {
  const Graph& g = rg.graph();
  std::vector<Cycle> out;
  std::vector<char> on_path(static_cast<std::size_t>(g.vertex_count()), 0);
  std::vector<EdgeId> path{rg.root()};
  auto dfs = [&](auto&& self, VertexId v) -> void {
    if (v == rg.t1()) {
      if (out.size() >= caps.max_cycles) throw CapExceeded("more than " + std::to_string(caps.max_cycles) + " rooted cycles");
      std::vector<EdgeId> ids = path;
      std::sort(ids.begin(), ids.end());
      out.push_back({ids, g.total_weight(ids)});
      return;
    }
    if (path.size() >= caps.max_length) throw CapExceeded("rooted cycle longer than the length cap");
    for (const Incidence& in : g.incident(v)) {
      if (in.edge == rg.root() || on_path[static_cast<std::size_t>(in.other)]) continue;
      on_path[static_cast<std::size_t>(in.other)] = 1;
      path.push_back(in.edge);
      self(self, in.other);
      path.pop_back();
      on_path[static_cast<std::size_t>(in.other)] = 0;
    }
  };
  on_path[static_cast<std::size_t>(rg.t2())] = 1;
  dfs(dfs, rg.t2());
  return out;
}

/// Number of rooted cycles by dynamic programming over vertex subsets.
inline std::uint64_t count_rooted_cycles(const RootedGraph& rg) {
  const Graph& g = rg.graph();
  const int n = g.vertex_count();
  if (n > 20) throw CapExceeded("subset count needs n <= 20");
  // mult[u][v]: usable edges between u and v.
  std::vector<std::vector<std::uint64_t>> mult(static_cast<std::size_t>(n), std::vector<std::uint64_t>(static_cast<std::size_t>(n), 0));
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    if (e == rg.root() || ed.is_loop()) continue;
    ++mult[static_cast<std::size_t>(ed.u)][static_cast<std::size_t>(ed.v)];
    ++mult[static_cast<std::size_t>(ed.v)][static_cast<std::size_t>(ed.u)];
  }
  const std::size_t full = std::size_t{1} << n;
  std::vector<std::uint64_t> ways(full * static_cast<std::size_t>(n), 0);
  auto at = [&](std::size_t mask, int v) -> std::uint64_t& { return ways[mask * static_cast<std::size_t>(n) + static_cast<std::size_t>(v)]; };
  const int s = rg.t2(), t = rg.t1();
  at(std::size_t{1} << s, s) = 1;
  std::uint64_t total = 0;
  for (std::size_t mask = 1; mask < full; ++mask) {
    for (int v = 0; v < n; ++v) {
      const std::uint64_t w = at(mask, v);
      if (w == 0) continue;
      if (v == t) {
        total += w;
        continue;
      }
      for (int u = 0; u < n; ++u) {
        if (mask >> u & 1u) continue;
        const std::uint64_t k = mult[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)];
        if (k) at(mask | (std::size_t{1} << u), u) += w * k;
      }
    }
  }
  return total;
}

/// Whether the rooted cycles span the whole cycle space.
inline bool rooted_cycles_span(const RootedGraph& rg, const EnumerationCaps& caps = {}) {
  const auto cycles = enumerate_rooted_cycles(rg, caps);
  std::vector<std::vector<EdgeId>> sets;
  for (const Cycle& c : cycles) sets.push_back(c.edges);
  return gf2_rank(sets, static_cast<std::size_t>(rg.graph().edge_count())) ==
         static_cast<std::size_t>(cycle_space_dimension(rg.graph()));
}

/// Perturbed comparison of two equal-weight edge sets: the set holding the
/// highest-priority differing edge is heavier. rank[e] is e's position in
/// the perturbation order (0 is the largest perturbation).
inline bool perturbed_less(const Cycle& a, const Cycle& b, const std::vector<int>& rank) {
  if (a.weight != b.weight) return a.weight < b.weight;
  std::vector<EdgeId> diff;
  std::set_symmetric_difference(a.edges.begin(), a.edges.end(), b.edges.begin(), b.edges.end(), std::back_inserter(diff));
  if (diff.empty()) return false;
  const EdgeId first = *std::min_element(diff.begin(), diff.end(),
                                         [&](EdgeId x, EdgeId y) { return rank[static_cast<std::size_t>(x)] < rank[static_cast<std::size_t>(y)]; });
  return std::binary_search(b.edges.begin(), b.edges.end(), first);
}

/// Matroid greedy over all rooted cycles, sorted by weight then by the
/// perturbation order (edge ids by default).
inline CycleBasis brute_min_rooted_basis(const RootedGraph& rg, std::vector<EdgeId> order = {},
                                         const EnumerationCaps& caps = {}) {
  const Graph& g = rg.graph();
  if (order.empty()) {
    order.resize(static_cast<std::size_t>(g.edge_count()));
    std::iota(order.begin(), order.end(), 0);
  }
  std::vector<int> rank(static_cast<std::size_t>(g.edge_count()), 0);
  for (std::size_t i = 0; i < order.size(); ++i) rank[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
  auto cycles = enumerate_rooted_cycles(rg, caps);
  std::sort(cycles.begin(), cycles.end(), [&](const Cycle& a, const Cycle& b) { return perturbed_less(a, b, rank); });
  const auto dim = static_cast<std::size_t>(cycle_space_dimension(g));
  Gf2Eliminator elim(static_cast<std::size_t>(g.edge_count()));
  CycleBasis basis;
  for (Cycle& c : cycles) {
    if (basis.size() == dim) break;
    if (elim.insert_ids(c.edges)) {
      basis.cycles.push_back(std::move(c));
      basis.witness_edges.emplace_back();
    }
  }
  if (basis.size() != dim) throw NoRootedBasis("rooted cycles reach rank " + std::to_string(basis.size()) + " of " + std::to_string(dim));
  return basis;
}

/// Minimum weight over rooted cycles through f; -1 if none.
inline Weight min_rooted_cycle_weight(const std::vector<Cycle>& cycles, EdgeId f) {
  Weight best = -1;
  for (const Cycle& c : cycles) {
    if (c.contains(f) && (best < 0 || c.weight < best)) best = c.weight;
  }
  return best;
}

/// Tree path check by walking parents: every fundamental cycle of `tree`
/// contains the root.
inline bool tree_is_fundamental_rooted(const RootedGraph& rg, const std::vector<EdgeId>& tree) {
  const Graph& g = rg.graph();
  const int n = g.vertex_count();
  std::vector<std::vector<std::pair<VertexId, EdgeId>>> adj(static_cast<std::size_t>(n));
  for (EdgeId e : tree) {
    adj[static_cast<std::size_t>(g.edge(e).u)].push_back({g.edge(e).v, e});
    adj[static_cast<std::size_t>(g.edge(e).v)].push_back({g.edge(e).u, e});
  }
  // Root the tree at t1 and record depth and parent edge.
  std::vector<int> depth(static_cast<std::size_t>(n), -1);
  std::vector<VertexId> parent(static_cast<std::size_t>(n), -1);
  std::vector<EdgeId> up(static_cast<std::size_t>(n), -1);
  std::vector<VertexId> queue{rg.t1()};
  depth[static_cast<std::size_t>(rg.t1())] = 0;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const VertexId v = queue[i];
    for (auto [w, e] : adj[static_cast<std::size_t>(v)]) {
      if (depth[static_cast<std::size_t>(w)] >= 0) continue;
      depth[static_cast<std::size_t>(w)] = depth[static_cast<std::size_t>(v)] + 1;
      parent[static_cast<std::size_t>(w)] = v;
      up[static_cast<std::size_t>(w)] = e;
      queue.push_back(w);
    }
  }
  std::vector<char> in_tree(static_cast<std::size_t>(g.edge_count()), 0);
  for (EdgeId e : tree) in_tree[static_cast<std::size_t>(e)] = 1;
  for (EdgeId f = 0; f < g.edge_count(); ++f) {
    if (in_tree[static_cast<std::size_t>(f)]) continue;
    VertexId a = g.edge(f).u, b = g.edge(f).v;
    bool hit = false;
    while (a != b) {
      if (depth[static_cast<std::size_t>(a)] < depth[static_cast<std::size_t>(b)]) std::swap(a, b);
      hit = hit || up[static_cast<std::size_t>(a)] == rg.root();
      a = parent[static_cast<std::size_t>(a)];
    }
    if (!hit) return false;
  }
  return true;
}

/// Enumerates spanning trees that contain the root and returns the first
/// whose fundamental cycles all use the root.
inline std::optional<std::vector<EdgeId>> brute_fundamental_search(const RootedGraph& rg, std::size_t max_trees = 5'000'000) {
  const Graph& g = rg.graph();
  const int n = g.vertex_count();
  std::vector<EdgeId> chosen{rg.root()};
  std::size_t trees = 0;
  std::optional<std::vector<EdgeId>> found;
  // Component labels are copied per level; n is tiny.
  std::vector<int> comp(static_cast<std::size_t>(n));
  std::iota(comp.begin(), comp.end(), 0);
  auto merge = [](std::vector<int>& c, int a, int b) {
    const int from = c[static_cast<std::size_t>(b)], to = c[static_cast<std::size_t>(a)];
    for (int& x : c) {
      if (x == from) x = to;
    }
  };
  merge(comp, g.edge(rg.root()).u, g.edge(rg.root()).v);
  auto rec = [&](auto&& self, EdgeId next, std::vector<int>& c) -> void {
    if (found) return;
    if (static_cast<int>(chosen.size()) == n - 1) {
      if (++trees > max_trees) throw CapExceeded("too many spanning trees");
      std::vector<EdgeId> t = chosen;
      std::sort(t.begin(), t.end());
      if (tree_is_fundamental_rooted(rg, t)) found = std::move(t);
      return;
    }
    if (next == g.edge_count()) return;
    const Edge& e = g.edge(next);
    if (next != rg.root() && c[static_cast<std::size_t>(e.u)] != c[static_cast<std::size_t>(e.v)]) {
      std::vector<int> c2 = c;
      merge(c2, e.u, e.v);
      chosen.push_back(next);
      self(self, next + 1, c2);
      chosen.pop_back();
    }
    self(self, next + 1, c);
  };
  if (n == 2) {
    if (tree_is_fundamental_rooted(rg, {rg.root()})) return std::vector<EdgeId>{rg.root()};
    return std::nullopt;
  }
  rec(rec, 0, comp);
  return found;
}

/// Cut vertex by deletion: some vertex whose removal disconnects the rest.
inline bool has_cut_vertex_brute(const Graph& g) {
  const int n = g.vertex_count();
  for (VertexId x = 0; x < n; ++x) {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    seen[static_cast<std::size_t>(x)] = 1;
    const VertexId s = x == 0 ? 1 : 0;
    if (s >= n) return false;
    std::vector<VertexId> stack{s};
    seen[static_cast<std::size_t>(s)] = 1;
    int count = 1;
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      for (const Incidence& in : g.incident(v)) {
        if (!seen[static_cast<std::size_t>(in.other)]) {
          seen[static_cast<std::size_t>(in.other)] = 1;
          ++count;
          stack.push_back(in.other);
        }
      }
    }
    if (count != n - 1) return true;
  }
  return false;
}

inline bool is_connected_brute(const Graph& g) {
  if (g.vertex_count() == 0) return true;
  std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()), 0);
  std::vector<VertexId> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (const Incidence& in : g.incident(v)) {
      if (!seen[static_cast<std::size_t>(in.other)]) {
        seen[static_cast<std::size_t>(in.other)] = 1;
        ++count;
        stack.push_back(in.other);
      }
    }
  }
  return count == g.vertex_count();
}

// ---------------------------------------------------------------------------
// Catalogue of simple graphs up to isomorphism, n <= 7.

namespace detail {

// Adjacency bit for pair (i, j), i < j, in row-major upper-triangle order.
inline int pair_bit(int i, int j, int n) { return i * n - i * (i + 1) / 2 + (j - i - 1); }

inline std::uint32_t encode(const std::vector<std::uint8_t>& adj, const std::vector<int>& label, int n) {
  std::uint32_t code = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (adj[static_cast<std::size_t>(i)] >> j & 1u) {
        int a = label[static_cast<std::size_t>(i)], b = label[static_cast<std::size_t>(j)];
        if (a > b) std::swap(a, b);
        code |= std::uint32_t{1} << pair_bit(a, b, n);
      }
    }
  }
  return code;
}

/// Smallest code over relabelings that list vertices by nonincreasing
/// degree. Any isomorphism preserves that order up to ties, so this is a
/// canonical form.
inline std::uint32_t canonical(const std::vector<std::uint8_t>& adj, int n) {
  std::vector<int> deg(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) deg[static_cast<std::size_t>(i)] = std::popcount(static_cast<unsigned>(adj[static_cast<std::size_t>(i)]));
  std::vector<int> verts(static_cast<std::size_t>(n));
  std::iota(verts.begin(), verts.end(), 0);
  std::sort(verts.begin(), verts.end(), [&](int a, int b) { return deg[static_cast<std::size_t>(a)] > deg[static_cast<std::size_t>(b)]; });
  std::vector<std::pair<int, int>> classes;  // [begin, end) in verts
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && deg[static_cast<std::size_t>(verts[static_cast<std::size_t>(j)])] == deg[static_cast<std::size_t>(verts[static_cast<std::size_t>(i)])]) ++j;
    classes.emplace_back(i, j);
    i = j;
  }
  std::uint32_t best = ~std::uint32_t{0};
  std::vector<int> label(static_cast<std::size_t>(n));
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == classes.size()) {
      for (int p = 0; p < n; ++p) label[static_cast<std::size_t>(verts[static_cast<std::size_t>(p)])] = p;
      best = std::min(best, encode(adj, label, n));
      return;
    }
    auto [b, e] = classes[k];
    std::sort(verts.begin() + b, verts.begin() + e);
    do {
      self(self, k + 1);
    } while (std::next_permutation(verts.begin() + b, verts.begin() + e));
  };
  rec(rec, 0);
  return best;
}

inline Graph decode(std::uint32_t code, int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (code >> pair_bit(i, j, n) & 1u) edges.push_back({i, j, 1});
    }
  }
  return Graph(n, std::move(edges));
}

}  // namespace detail

/// All simple graphs on n vertices up to isomorphism (n <= 7), built by
/// adding one vertex at a time and deduplicating by canonical form.
inline std::vector<Graph> all_graphs(int n) {
  if (n < 0 || n > 7) throw CapExceeded("graph catalogue covers n <= 7");
  std::set<std::uint32_t> level{0};
  for (int k = 1; k <= n; ++k) {
    std::set<std::uint32_t> next;
    for (std::uint32_t code : level) {
      std::vector<std::uint8_t> adj(static_cast<std::size_t>(k), 0);
      for (int i = 0; i < k - 1; ++i) {
        for (int j = i + 1; j < k - 1; ++j) {
          if (code >> detail::pair_bit(i, j, k - 1) & 1u) {
            adj[static_cast<std::size_t>(i)] |= static_cast<std::uint8_t>(1u << j);
            adj[static_cast<std::size_t>(j)] |= static_cast<std::uint8_t>(1u << i);
          }
        }
      }
      for (unsigned nb = 0; nb < (1u << (k - 1)); ++nb) {
        auto a = adj;
        a[static_cast<std::size_t>(k - 1)] = static_cast<std::uint8_t>(nb);
        for (int i = 0; i < k - 1; ++i) {
          if (nb >> i & 1u) a[static_cast<std::size_t>(i)] |= static_cast<std::uint8_t>(1u << (k - 1));
        }
        next.insert(detail::canonical(a, k));
      }
    }
    level = std::move(next);
  }
  std::vector<Graph> out;
  for (std::uint32_t code : level) out.push_back(detail::decode(code, n));
  return out;
}

inline std::vector<Graph> connected_graphs(int n) {
  std::vector<Graph> out;
  for (Graph& g : all_graphs(n)) {
    if (is_connected_brute(g)) out.push_back(std::move(g));
  }
  return out;
}

/// Connected, no cut vertex, at least one edge.
inline std::vector<Graph> biconnected_graphs(int n) {
  std::vector<Graph> out;
  for (Graph& g : all_graphs(n)) {
    if (g.edge_count() > 0 && is_connected_brute(g) && !has_cut_vertex_brute(g)) out.push_back(std::move(g));
  }
  return out;
}

}  // namespace rcb::testkit
