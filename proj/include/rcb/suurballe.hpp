#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rcb/connectivity.hpp"
#include "rcb/errors.hpp"
#include "rcb/graph.hpp"
#include "rcb/search.hpp"
#include "rcb/tiebreak.hpp"

namespace rcb {

/// Edge of the working graph used by the two-stage search. Weight zero is
/// allowed here (virtual source edges); orig is -1 for such edges.
struct AuxEdge {
  VertexId u;
  VertexId v;
  Weight w;
  EdgeId orig;
};

struct AuxGraph {
  int n = 0;
  std::vector<AuxEdge> edges;
};

/// Arc of the split graph. Internal arcs have aux_edge == -1.
struct SplitArc {
  int from;
  int to;
  Weight weight;
  int aux_edge;
  bool reversed;  // a first-path edge traversed backwards with negated weight
};

/// Vertex v becomes in(v) and out(v). Vertices on the first path get their
/// internal arc from out to in, the others from in to out. Arcs leaving t2
/// are omitted, as are vertices the first stage could not reach.
struct SplitGraph {
  int vertex_count = 0;
  std::vector<SplitArc> arcs;
  std::vector<char> on_first_path;

  static int in(VertexId v) { return 2 * v; }
  static int out(VertexId v) { return 2 * v + 1; }
  int node_count() const { return 2 * vertex_count; }
};

struct Rung {
  std::vector<EdgeId> edges;  // in first-path order
  VertexId near;              // endpoint closer to the source along the first path
  VertexId far;
  Weight length = 0;
};

/// Two paths from a common source, disjoint apart from it. Edge id -1 marks
/// the zero-weight virtual edges of an edge-sourced pair.
struct DisjointPathPair {
  VertexId source = -1;
  VertexId t1 = -1;
  VertexId t2 = -1;
  std::vector<VertexId> vertices1;
  std::vector<EdgeId> path1;
  std::vector<VertexId> vertices2;
  std::vector<EdgeId> path2;
  std::vector<Rung> rungs;  // ordered from the source
  Weight weight = 0;

  // The two stages before cancellation.
  std::vector<VertexId> first_vertices;
  std::vector<EdgeId> first_path;
  std::vector<VertexId> walk_vertices;
  std::vector<EdgeId> walk;
};

/// Everything the two stages computed, for inspection.
struct SuurballeTrace {
  std::vector<Weight> distance;  // first stage, -1 when unreachable
  SplitGraph split;
  std::vector<Weight> potential;  // per split node
  DisjointPathPair pair;
};

inline Weight reduced_weight(const SplitArc& a, const std::vector<Weight>& potential) {
  return a.weight + potential[static_cast<std::size_t>(a.from)] - potential[static_cast<std::size_t>(a.to)];
}

namespace detail {

inline Toggle toggle_for(EdgeId orig, Toggle t) { return orig < 0 ? Toggle::none : t; }

// Scratch arena for one search: deterministic contexts get a fresh copy so
// the caller's dictionary does not grow; randomized contexts are shared.
struct Scratch {
  std::optional<TieBreakContext> own;
  TieBreakContext* ptr = nullptr;

  explicit Scratch(TieBreakContext* tb) {
    if (tb && tb->mode() == TieBreakMode::deterministic) {
      own.emplace(tb->fresh());
      ptr = &*own;
    } else {
      ptr = tb;
    }
  }

  void reset() {
    if (own) own->reset();
  }
};

inline DisjointPathPair assemble_pair(const AuxGraph& aux, VertexId s, VertexId t1, VertexId t2,
                                      const std::vector<VertexId>& p1v, const std::vector<int>& p1e,
                                      const std::vector<VertexId>& wv, const std::vector<int>& we) {
  DisjointPathPair out;
  out.source = s;
  out.t1 = t1;
  out.t2 = t2;
  auto orig = [&](int k) { return aux.edges[static_cast<std::size_t>(k)].orig; };
  out.first_vertices = p1v;
  out.walk_vertices = wv;
  for (int k : p1e) out.first_path.push_back(orig(k));
  for (int k : we) out.walk.push_back(orig(k));

  std::unordered_map<int, int> pos_in_p1;
  for (std::size_t i = 0; i < p1e.size(); ++i) pos_in_p1[p1e[i]] = static_cast<int>(i);
  std::vector<char> shared(p1e.size(), 0);
  std::vector<int> kept;
  for (int k : we) {
    auto it = pos_in_p1.find(k);
    if (it != pos_in_p1.end()) {
      shared[static_cast<std::size_t>(it->second)] = 1;
    } else {
      kept.push_back(k);
    }
  }
  for (std::size_t i = 0; i < p1e.size(); ++i) {
    if (!shared[i]) kept.push_back(p1e[i]);
  }

  // A rung is a stretch the walk covers in one go, backwards. Two rungs can
  // touch at a first-path vertex the walk passes twice (once per split half).
  std::unordered_map<int, int> pos_in_walk;
  for (std::size_t i = 0; i < we.size(); ++i) pos_in_walk[we[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < p1e.size();) {
    if (!shared[i]) {
      ++i;
      continue;
    }
    Rung r;
    r.near = p1v[i];
    const std::size_t begin = i;
    while (i < p1e.size() && shared[i] &&
           (i == begin || pos_in_walk[p1e[i - 1]] == pos_in_walk[p1e[i]] + 1)) {
      const AuxEdge& e = aux.edges[static_cast<std::size_t>(p1e[i])];
      r.edges.push_back(e.orig);
      r.length += e.w;
      ++i;
    }
    r.far = p1v[i];
    out.rungs.push_back(std::move(r));
  }

  std::unordered_map<VertexId, std::vector<std::pair<int, VertexId>>> adj;
  for (int k : kept) {
    const AuxEdge& e = aux.edges[static_cast<std::size_t>(k)];
    adj[e.u].push_back({k, e.v});
    adj[e.v].push_back({k, e.u});
    out.weight += e.w;
  }
  const auto& start = adj[s];
  if (start.size() != 2) throw Error("internal: paired paths do not leave the source twice");
  for (const auto& [k0, v0] : start) {
    std::vector<VertexId> verts{s};
    std::vector<EdgeId> edges;
    int prev = k0;
    VertexId cur = v0;
    edges.push_back(orig(k0));
    verts.push_back(cur);
    while (cur != t1 && cur != t2) {
      const auto& nb = adj[cur];
      if (nb.size() != 2) throw Error("internal: paired paths branch");
      const auto& next = nb[0].first == prev ? nb[1] : nb[0];
      prev = next.first;
      cur = next.second;
      edges.push_back(orig(prev));
      verts.push_back(cur);
    }
    if (cur == t1) {
      out.vertices1 = std::move(verts);
      out.path1 = std::move(edges);
    } else {
      out.vertices2 = std::move(verts);
      out.path2 = std::move(edges);
    }
  }
  if (out.path1.empty() || out.path2.empty()) throw Error("internal: both paths end at the same terminal");
  return out;
}

// Two-stage search from s on the working graph.
inline SuurballeTrace run_suurballe(const AuxGraph& aux, VertexId s, VertexId t1, VertexId t2, TieBreakContext* tb) {
  const int n = aux.n;
  SuurballeTrace tr;

  // Stage one: shortest s-t1 path avoiding t2.
  std::vector<std::pair<int, Arc>> arcs1;
  for (std::size_t i = 0; i < aux.edges.size(); ++i) {
    const AuxEdge& e = aux.edges[i];
    if (e.u == e.v || e.u == t2 || e.v == t2) continue;
    const Toggle t = toggle_for(e.orig, Toggle::add);
    arcs1.push_back({e.u, Arc{e.v, e.w, e.orig, t, static_cast<int>(i)}});
    arcs1.push_back({e.v, Arc{e.u, e.w, e.orig, t, static_cast<int>(i)}});
  }
  const ArcGraph g1(n, arcs1);
  const std::vector<Weight> zero(static_cast<std::size_t>(n), 0);
  Scratch sc1(tb);
  LabelSearch first(g1, zero, sc1.ptr);
  first.add_source(s, 0);
  first.run();
  if (!first.reached(t1)) throw NoPair("no path to t1 avoiding t2");

  tr.distance.assign(static_cast<std::size_t>(n), -1);
  for (VertexId v = 0; v < n; ++v) {
    if (first.reached(v) && v != t2) tr.distance[static_cast<std::size_t>(v)] = first.label(first.best(v)).cost;
  }
  std::vector<VertexId> p1v;
  std::vector<int> p1e;
  for (int li : first.chain(first.best(t1))) {
    const auto& l = first.label(li);
    if (l.parent >= 0) p1e.push_back(l.ref);
    p1v.push_back(l.node);
  }

  // Split graph.
  SplitGraph& h = tr.split;
  h.vertex_count = n;
  h.on_first_path.assign(static_cast<std::size_t>(n), 0);
  for (VertexId v : p1v) h.on_first_path[static_cast<std::size_t>(v)] = 1;
  std::vector<char> on_p1_edge(aux.edges.size(), 0);
  for (int k : p1e) on_p1_edge[static_cast<std::size_t>(k)] = 1;
  auto live = [&](VertexId v) { return v == t2 || tr.distance[static_cast<std::size_t>(v)] >= 0; };
  for (VertexId v = 0; v < n; ++v) {
    if (!live(v)) continue;
    if (h.on_first_path[static_cast<std::size_t>(v)]) {
      h.arcs.push_back({SplitGraph::out(v), SplitGraph::in(v), 0, -1, false});
    } else {
      h.arcs.push_back({SplitGraph::in(v), SplitGraph::out(v), 0, -1, false});
    }
  }
  for (std::size_t i = 1; i < p1v.size(); ++i) {
    const int k = p1e[i - 1];
    h.arcs.push_back({SplitGraph::in(p1v[i]), SplitGraph::out(p1v[i - 1]), -aux.edges[static_cast<std::size_t>(k)].w, k, true});
  }
  for (std::size_t i = 0; i < aux.edges.size(); ++i) {
    const AuxEdge& e = aux.edges[i];
    if (on_p1_edge[i] || e.u == e.v) continue;
    for (auto [p, q] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
      if (p == t2 || !live(p) || !live(q)) continue;
      h.arcs.push_back({SplitGraph::out(p), SplitGraph::in(q), e.w, static_cast<int>(i), false});
    }
  }

  // Potentials: first-stage distances; t2 gets the smallest entry value.
  tr.potential.assign(static_cast<std::size_t>(h.node_count()), 0);
  for (VertexId v = 0; v < n; ++v) {
    if (v == t2 || tr.distance[static_cast<std::size_t>(v)] < 0) continue;
    tr.potential[static_cast<std::size_t>(SplitGraph::in(v))] = tr.distance[static_cast<std::size_t>(v)];
    tr.potential[static_cast<std::size_t>(SplitGraph::out(v))] = tr.distance[static_cast<std::size_t>(v)];
  }
  std::optional<Weight> pt2;
  for (const SplitArc& a : h.arcs) {
    if (a.to != SplitGraph::in(t2) || a.aux_edge < 0) continue;
    const Weight c = tr.potential[static_cast<std::size_t>(a.from)] + a.weight;
    if (!pt2 || c < *pt2) pt2 = c;
  }
  if (!pt2) throw NoPair("t2 is not reachable");
  tr.potential[static_cast<std::size_t>(SplitGraph::in(t2))] = *pt2;
  tr.potential[static_cast<std::size_t>(SplitGraph::out(t2))] = *pt2;
  std::vector<Int128> salt_pot;
  if (tb && tb->mode() == TieBreakMode::randomized) {
    salt_pot.assign(tr.potential.size(), 0);
    for (VertexId v = 0; v < n; ++v) {
      if (v == t2 || tr.distance[static_cast<std::size_t>(v)] < 0) continue;
      const Int128 x = first.handle(first.best(v))->salt;
      salt_pot[static_cast<std::size_t>(SplitGraph::in(v))] = salt_pot[static_cast<std::size_t>(SplitGraph::out(v))] = x;
    }
  }

  // Stage two: shortest s_out to t2_in walk in the split graph.
  std::vector<std::pair<int, Arc>> arcs2;
  arcs2.reserve(h.arcs.size());
  for (const SplitArc& a : h.arcs) {
    const EdgeId orig = a.aux_edge < 0 ? -1 : aux.edges[static_cast<std::size_t>(a.aux_edge)].orig;
    const Toggle t = toggle_for(orig, a.reversed ? Toggle::remove : Toggle::add);
    arcs2.push_back({a.from, Arc{a.to, a.weight, orig, t, a.aux_edge}});
  }
  const ArcGraph g2(h.node_count(), arcs2);
  Scratch sc2(tb);
  TieBreakHandle start{};
  if (sc2.ptr) {
    std::vector<EdgeId> real;
    for (int k : p1e) {
      if (aux.edges[static_cast<std::size_t>(k)].orig >= 0) real.push_back(aux.edges[static_cast<std::size_t>(k)].orig);
    }
    std::sort(real.begin(), real.end());
    start = sc2.ptr->from_sorted(real);
  }
  LabelSearch second(g2, tr.potential, sc2.ptr, salt_pot);
  second.add_source(SplitGraph::out(s), 0, start);
  second.run();
  if (!second.reached(SplitGraph::in(t2))) throw NoPair("no second path to t2");

  std::vector<VertexId> wv{s};
  std::vector<int> we;
  for (int li : second.chain(second.best(SplitGraph::in(t2)))) {
    const auto& l = second.label(li);
    if (l.ref < 0) continue;
    we.push_back(l.ref);
    wv.push_back(l.node / 2);
  }
  tr.pair = assemble_pair(aux, s, t1, t2, p1v, p1e, wv, we);
  return tr;
}

inline AuxGraph aux_from(const Graph& g, EdgeId skip = -1) {
  AuxGraph aux;
  aux.n = g.vertex_count();
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (e == skip) continue;
    const Edge& ed = g.edge(e);
    aux.edges.push_back({ed.u, ed.v, ed.w, e});
  }
  return aux;
}

}  // namespace detail

/// Both stages with intermediate data exposed.
inline SuurballeTrace suurballe_trace(const Graph& g, VertexId s, VertexId t1, VertexId t2,
                                      TieBreakContext* tb = nullptr) {
  const int n = g.vertex_count();
  for (VertexId v : {s, t1, t2}) {
    if (v < 0 || v >= n) throw InvalidInput("vertex out of range");
  }
  if (s == t1 || s == t2 || t1 == t2) throw InvalidInput("source and terminals must be distinct");
  return detail::run_suurballe(detail::aux_from(g), s, t1, t2, tb);
}

/// Minimum total weight pair of paths s-t1, s-t2 sharing only s.
inline DisjointPathPair shortest_disjoint_path_pair(const Graph& g, VertexId s, VertexId t1, VertexId t2,
                                                   TieBreakContext* tb = nullptr) {
  return suurballe_trace(g, s, t1, t2, tb).pair;
}

/// Shortest rooted cycle through f together with the path pair behind it.
/// The source is a virtual vertex joined to both ends of f by zero-weight
/// edges, with f itself removed.
struct EdgeCyclePair {
  Cycle cycle;
  DisjointPathPair pair;
};

inline EdgeCyclePair shortest_rooted_cycle_pair(const RootedGraph& rg, EdgeId f, TieBreakContext* tb = nullptr) {
  const Graph& g = rg.graph();
  if (f < 0 || f >= g.edge_count()) throw InvalidInput("edge id out of range");
  if (f == rg.root()) throw InvalidInput("f must differ from the root edge");
  const Edge& fe = g.edge(f);
  if (fe.is_loop()) throw NoCycle("a self-loop lies on no rooted cycle");
  AuxGraph aux = detail::aux_from(g, f);
  const VertexId s = g.vertex_count();
  aux.n = s + 1;
  aux.edges.push_back({s, fe.u, 0, -1});
  aux.edges.push_back({s, fe.v, 0, -1});
  EdgeCyclePair out;
  try {
    out.pair = detail::run_suurballe(aux, s, rg.t1(), rg.t2(), tb).pair;
  } catch (const NoPair& e) {
    throw NoCycle(std::string("no rooted cycle through the edge: ") + e.what());
  }
  std::vector<EdgeId> ids{rg.root(), f};
  for (EdgeId e : out.pair.path1) {
    if (e >= 0) ids.push_back(e);
  }
  for (EdgeId e : out.pair.path2) {
    if (e >= 0) ids.push_back(e);
  }
  out.cycle = make_cycle(g, std::move(ids));
  return out;
}

inline Cycle shortest_rooted_cycle_through_edge(const RootedGraph& rg, EdgeId f, TieBreakContext* tb = nullptr) {
  return shortest_rooted_cycle_pair(rg, f, tb).cycle;
}

/// The cycle left after cutting C at the rung closest to the source:
/// root edge, the rung, and the two path tails beyond the rung's ends.
struct RungShortcut {
  std::vector<EdgeId> edges;
  Weight weight = 0;
  Weight su = 0;  // source to the rung's near end, along its final path
  Weight sv = 0;  // source to the far end, along the other final path
  Weight uv = 0;  // rung length
};

inline std::optional<RungShortcut> first_rung_shortcut(const Graph& g, EdgeId root, const DisjointPathPair& p) {
  if (p.rungs.empty()) return std::nullopt;
  const Rung& r = p.rungs.front();
  RungShortcut out;
  out.uv = r.length;
  auto weight_of = [&](EdgeId e) { return e < 0 ? Weight{0} : g.weight(e); };
  auto split = [&](const std::vector<VertexId>& verts, const std::vector<EdgeId>& edges, VertexId at,
                   Weight& prefix) {
    const auto pos = static_cast<std::size_t>(std::find(verts.begin(), verts.end(), at) - verts.begin());
    if (pos == verts.size()) return false;
    prefix = 0;
    for (std::size_t i = 0; i < pos; ++i) prefix += weight_of(edges[i]);
    for (std::size_t i = pos; i < edges.size(); ++i) out.edges.push_back(edges[i]);
    return true;
  };
  const bool near_on_1 = std::find(p.vertices1.begin(), p.vertices1.end(), r.near) != p.vertices1.end();
  const bool ok = near_on_1 ? split(p.vertices1, p.path1, r.near, out.su) && split(p.vertices2, p.path2, r.far, out.sv)
                            : split(p.vertices2, p.path2, r.near, out.su) && split(p.vertices1, p.path1, r.far, out.sv);
  if (!ok) throw Error("internal: rung endpoints missing from the final paths");
  out.edges.insert(out.edges.end(), r.edges.begin(), r.edges.end());
  out.edges.push_back(root);
  std::sort(out.edges.begin(), out.edges.end());
  for (EdgeId e : out.edges) out.weight += weight_of(e);
  return out;
}

/// Per-edge result of the batched routine.
struct EdgeCycle {
  bool valid = false;
  Cycle cycle;
  VertexId first_end = -1;   // end of f where the path to t1 leaves
  VertexId second_end = -1;  // end of f where the path to t2 leaves
};

/// Shortest rooted cycle through every edge.
///
/// One shortest-path tree from t1 in G - t2 gives, for each edge f, the end x
/// from which the first path leaves. Edges are grouped by x; each group
/// shares one split graph, searched backwards from t2 once. That is one
/// search per vertex rather than one per edge.
///
/// The root edge's entry is the overall shortest rooted cycle.
inline std::vector<EdgeCycle> all_edges_shortest_rooted_cycles(const RootedGraph& rg, TieBreakContext* tb = nullptr) {
  const Graph& g = rg.graph();
  if (auto bad = biconnectivity_violation(g)) throw *bad;
  const int n = g.vertex_count(), m = g.edge_count();
  const VertexId t1 = rg.t1(), t2 = rg.t2();
  const EdgeId root = rg.root();
  std::vector<EdgeCycle> out(static_cast<std::size_t>(m));

  std::vector<std::pair<int, Arc>> arcs1;
  for (EdgeId e = 0; e < m; ++e) {
    const Edge& ed = g.edge(e);
    if (ed.is_loop() || ed.u == t2 || ed.v == t2) continue;
    arcs1.push_back({ed.u, Arc{ed.v, ed.w, e, Toggle::add, e}});
    arcs1.push_back({ed.v, Arc{ed.u, ed.w, e, Toggle::add, e}});
  }
  const ArcGraph g1(n, arcs1);
  const std::vector<Weight> zero(static_cast<std::size_t>(n), 0);
  detail::Scratch sc1(tb);
  LabelSearch tree(g1, zero, sc1.ptr);
  tree.add_source(t1, 0);
  tree.run();
  std::vector<Weight> dist(static_cast<std::size_t>(n), 0);
  std::vector<EdgeId> parent(static_cast<std::size_t>(n), -1);
  for (VertexId v = 0; v < n; ++v) {
    if (v == t2) continue;
    if (!tree.reached(v)) throw Error("internal: vertex unreachable in a biconnected graph");
    const auto& l = tree.label(tree.best(v));
    dist[static_cast<std::size_t>(v)] = l.cost;
    parent[static_cast<std::size_t>(v)] = l.ref;
  }
  const bool salted = tb && tb->mode() == TieBreakMode::randomized;
  std::vector<Int128> salt_pot;
  if (salted) {
    salt_pot.assign(static_cast<std::size_t>(2 * n), 0);
    for (VertexId v = 0; v < n; ++v) {
      if (v == t2) continue;
      salt_pot[static_cast<std::size_t>(2 * v)] = salt_pot[static_cast<std::size_t>(2 * v + 1)] =
          tree.handle(tree.best(v))->salt;
    }
  }

  std::vector<std::vector<EdgeId>> group(static_cast<std::size_t>(n));
  for (EdgeId f = 0; f < m; ++f) {
    const Edge& fe = g.edge(f);
    if (f == root || fe.is_loop()) continue;
    auto usable = [&](VertexId x) { return x != t2 && parent[static_cast<std::size_t>(x)] != f; };
    VertexId x;
    if (usable(fe.u) && usable(fe.v)) {
      const auto o = tree.compare(tree.best(fe.u), tree.best(fe.v));
      x = o < 0 ? fe.u : (o > 0 ? fe.v : std::min(fe.u, fe.v));
    } else if (usable(fe.u)) {
      x = fe.u;
    } else if (usable(fe.v)) {
      x = fe.v;
    } else {
      continue;
    }
    group[static_cast<std::size_t>(x)].push_back(f);
  }

  std::vector<int> on_q(static_cast<std::size_t>(n), -1);  // stamped with x
  std::vector<int> q_edge(static_cast<std::size_t>(m), -1);
  std::vector<int> removed(static_cast<std::size_t>(m), -1);
  int stamp = 0;
  std::vector<std::pair<int, Arc>> arcs;
  std::vector<Weight> pot(2 * static_cast<std::size_t>(n), 0);
  auto in = [](VertexId v) { return 2 * v; };
  auto out_node = [](VertexId v) { return 2 * v + 1; };

  detail::Scratch sc2(tb);
  for (VertexId x = 0; x < n; ++x) {
    if (group[static_cast<std::size_t>(x)].empty()) continue;
    std::vector<EdgeId> q;
    on_q[static_cast<std::size_t>(x)] = x;
    for (VertexId v = x; v != t1;) {
      const EdgeId e = parent[static_cast<std::size_t>(v)];
      q.push_back(e);
      q_edge[static_cast<std::size_t>(e)] = x;
      v = g.other(e, v);
      on_q[static_cast<std::size_t>(v)] = x;
    }

    // Reversed split graph: each arc runs from the forward head to the tail.
    arcs.clear();
    for (VertexId v = 0; v < n; ++v) {
      if (v == t2) continue;
      if (on_q[static_cast<std::size_t>(v)] == x) {
        arcs.push_back({in(v), Arc{out_node(v), 0, -1, Toggle::none, -1}});
      } else {
        arcs.push_back({out_node(v), Arc{in(v), 0, -1, Toggle::none, -1}});
      }
    }
    std::optional<Weight> pt2;
    for (EdgeId e = 0; e < m; ++e) {
      const Edge& ed = g.edge(e);
      if (e == root || ed.is_loop()) continue;
      if (q_edge[static_cast<std::size_t>(e)] == x) {
        // Forward arc in(parent side) -> out(child side) with weight -w.
        const VertexId child = parent[static_cast<std::size_t>(ed.u)] == e ? ed.u : ed.v;
        const VertexId par = g.other(e, child);
        arcs.push_back({out_node(child), Arc{in(par), -ed.w, e, Toggle::remove, e}});
        continue;
      }
      for (auto [p, r] : {std::pair{ed.u, ed.v}, std::pair{ed.v, ed.u}}) {
        if (p == t2) continue;
        arcs.push_back({in(r), Arc{out_node(p), ed.w, e, Toggle::add, e}});
        if (r == t2) {
          const Weight c = dist[static_cast<std::size_t>(p)] - ed.w;
          if (!pt2 || c > *pt2) pt2 = c;
        }
      }
    }
    for (VertexId v = 0; v < n; ++v) {
      pot[static_cast<std::size_t>(in(v))] = pot[static_cast<std::size_t>(out_node(v))] =
          v == t2 ? pt2.value_or(0) : dist[static_cast<std::size_t>(v)];
    }
    const ArcGraph gx(2 * n, arcs);
    sc2.reset();
    TieBreakHandle start{};
    if (sc2.ptr) {
      std::vector<EdgeId> sorted = q;
      std::sort(sorted.begin(), sorted.end());
      start = sc2.ptr->from_sorted(sorted);
    }
    LabelSearch back(gx, pot, sc2.ptr, salt_pot);
    back.add_source(in(t2), 0, start);
    back.run();

    for (EdgeId f : group[static_cast<std::size_t>(x)]) {
      const VertexId y = g.other(f, x);
      const int li = back.best(in(y));
      if (li < 0) continue;
      ++stamp;
      std::vector<EdgeId> ids{root, f};
      for (int i = li; back.label(i).parent >= 0; i = back.label(i).parent) {
        const auto& l = back.label(i);
        if (l.toggle == Toggle::remove) removed[static_cast<std::size_t>(l.edge)] = stamp;
        if (l.toggle == Toggle::add) ids.push_back(l.edge);
      }
      for (EdgeId e : q) {
        if (removed[static_cast<std::size_t>(e)] != stamp) ids.push_back(e);
      }
      std::sort(ids.begin(), ids.end());
      EdgeCycle& ec = out[static_cast<std::size_t>(f)];
      ec.valid = true;
      ec.cycle.weight = g.total_weight(ids);
      ec.cycle.edges = std::move(ids);
      ec.first_end = x;
      ec.second_end = y;
      const Weight expect = g.weight(root) + g.weight(f) + dist[static_cast<std::size_t>(x)] + back.label(li).cost;
      if (ec.cycle.weight != expect) throw Error("internal: batched cycle weight mismatch");
    }
  }

  const EdgeCycle* best = nullptr;
  for (const EdgeCycle& ec : out) {
    if (!ec.valid) continue;
    if (!best || ec.cycle.weight < best->cycle.weight) {
      best = &ec;
    } else if (tb && ec.cycle.weight == best->cycle.weight &&
               tb->compare_sets(tb->from_sorted(ec.cycle.edges), tb->from_sorted(best->cycle.edges)) < 0) {
      best = &ec;
    }
  }
  if (best) out[static_cast<std::size_t>(root)] = *best;
  return out;
}

/// Weight of the shortest rooted cycle through each edge; -1 where none.
inline std::vector<Weight> all_edges_shortest_rooted_cycle_lengths(const RootedGraph& rg,
                                                                   TieBreakContext* tb = nullptr) {
  std::vector<Weight> out;
  for (const EdgeCycle& ec : all_edges_shortest_rooted_cycles(rg, tb)) out.push_back(ec.valid ? ec.cycle.weight : -1);
  return out;
}

}  // namespace rcb
