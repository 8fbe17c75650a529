#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "rcb/connectivity.hpp"
#include "rcb/errors.hpp"
#include "rcb/gf2.hpp"
#include "rcb/graph.hpp"

namespace rcb {

enum class ExistenceFailure {
  none,
  root_not_in_core,
  self_loop,
  cut_vertex,
  cycle_outside_root_component,
};

inline const char* to_string(ExistenceFailure f) {
  switch (f) {
    case ExistenceFailure::none: return "none";
    case ExistenceFailure::root_not_in_core: return "root not in 2-core";
    case ExistenceFailure::self_loop: return "self-loop in root component";
    case ExistenceFailure::cut_vertex: return "cut vertex";
    case ExistenceFailure::cycle_outside_root_component: return "cycle outside root component";
  }
  return "?";
}

/// Existence verdict. The witness is a vertex of g for cut_vertex and
/// cycle_outside_root_component, an edge of g for self_loop and
/// root_not_in_core, and -1 otherwise.
struct ExistenceReport {
  bool exists = false;
  ExistenceFailure failure = ExistenceFailure::none;
  int witness = -1;
  std::string message;

  explicit operator bool() const { return exists; }
};

/// The 2-core component holding the root, as its own rooted graph.
struct RootCore {
  Subgraph sub;  // ids map back to the input graph
  RootedGraph rooted;
  /// Cycle-space dimension of the input graph outside this component.
  int outside_cycle_dimension = 0;
};

namespace detail {

struct CoreAnalysis {
  ExistenceReport report;
  std::optional<RootCore> core;
};

inline CoreAnalysis analyze_root_core(const RootedGraph& rg) {
  const Graph& g = rg.graph();
  CoreAnalysis out;
  Subgraph core = two_core(g);
  const EdgeId root = core.parent_to_edge[static_cast<std::size_t>(rg.root())];
  if (root < 0) {
    out.report = {false, ExistenceFailure::root_not_in_core, rg.root(), "root edge is not in the 2-core"};
    return out;
  }
  std::vector<int> label;
  connected_components(core.graph, label);
  const int root_label = label[static_cast<std::size_t>(core.graph.edge(root).u)];

  std::vector<char> keep(static_cast<std::size_t>(core.graph.edge_count()), 0);
  int outside_vertex = -1;
  for (EdgeId e = 0; e < core.graph.edge_count(); ++e) {
    const VertexId u = core.graph.edge(e).u;
    if (label[static_cast<std::size_t>(u)] == root_label) {
      keep[static_cast<std::size_t>(e)] = 1;
    } else if (outside_vertex < 0) {
      outside_vertex = core.vertex_to_parent[static_cast<std::size_t>(u)];
    }
  }

  Subgraph comp = extract_subgraph(core.graph, keep);
  // Compose maps so the component refers straight to g.
  for (auto& v : comp.vertex_to_parent) v = core.vertex_to_parent[static_cast<std::size_t>(v)];
  for (auto& e : comp.edge_to_parent) e = core.edge_to_parent[static_cast<std::size_t>(e)];
  comp.parent_to_vertex.assign(static_cast<std::size_t>(g.vertex_count()), -1);
  comp.parent_to_edge.assign(static_cast<std::size_t>(g.edge_count()), -1);
  for (std::size_t i = 0; i < comp.vertex_to_parent.size(); ++i) {
    comp.parent_to_vertex[static_cast<std::size_t>(comp.vertex_to_parent[i])] = static_cast<VertexId>(i);
  }
  for (std::size_t i = 0; i < comp.edge_to_parent.size(); ++i) {
    comp.parent_to_edge[static_cast<std::size_t>(comp.edge_to_parent[i])] = static_cast<EdgeId>(i);
  }

  const int outside_dim = cycle_space_dimension(core.graph) - cycle_space_dimension(comp.graph);

  if (auto bad = biconnectivity_violation(comp.graph)) {
    if (bad->reason() == NotBiconnected::Reason::self_loop) {
      const EdgeId e = comp.edge_to_parent[static_cast<std::size_t>(bad->witness())];
      out.report = {false, ExistenceFailure::self_loop, e, "self-loop on edge " + std::to_string(e)};
    } else {
      const VertexId v = comp.vertex_to_parent[static_cast<std::size_t>(bad->witness())];
      out.report = {false, ExistenceFailure::cut_vertex, v, "2-core has cut vertex " + std::to_string(v)};
    }
    return out;
  }
  if (outside_dim > 0) {
    out.report = {false, ExistenceFailure::cycle_outside_root_component, outside_vertex,
                  "cycle outside root component at vertex " + std::to_string(outside_vertex)};
    return out;
  }

  out.report = {true, ExistenceFailure::none, -1, "rooted cycle basis exists"};
  const EdgeId local_root = comp.parent_to_edge[static_cast<std::size_t>(rg.root())];
  Graph local = comp.graph;
  out.core = RootCore{std::move(comp), RootedGraph(std::move(local), local_root), outside_dim};
  return out;
}

}  // namespace detail

inline ExistenceReport has_rooted_cycle_basis(const RootedGraph& rg) { return detail::analyze_root_core(rg).report; }

/// The root's 2-core component, or NoRootedBasis explaining why none exists.
inline RootCore root_core(const RootedGraph& rg) {
  auto a = detail::analyze_root_core(rg);
  if (!a.core) throw NoRootedBasis(a.report.message);
  return std::move(*a.core);
}

/// One cycle per ear beyond the first: the root edge, the ear, and two
/// disjoint paths from the ear's ends back to the root's ends.
inline CycleBasis build_rooted_cycle_basis(const RootedGraph& rg) {
  const RootCore core = root_core(rg);
  const Graph& h = core.rooted.graph();
  const EarDecomposition ed = open_ear_decomposition(h, core.rooted.root());
  CycleBasis basis;
  for (std::size_t i = 1; i < ed.ears.size(); ++i) {
    const Ear& ear = ed.ears[i];
    const PathToRootPair paths = disjoint_paths_to_root(ed, ear.front(), ear.back());
    std::vector<EdgeId> local;
    local.reserve(1 + ear.edges.size() + paths.edges_u.size() + paths.edges_v.size());
    local.push_back(core.rooted.root());
    local.insert(local.end(), ear.edges.begin(), ear.edges.end());
    local.insert(local.end(), paths.edges_u.begin(), paths.edges_u.end());
    local.insert(local.end(), paths.edges_v.begin(), paths.edges_v.end());
    Cycle c;
    for (EdgeId e : local) c.edges.push_back(core.sub.edge_to_parent[static_cast<std::size_t>(e)]);
    std::sort(c.edges.begin(), c.edges.end());
    c.weight = rg.graph().total_weight(c.edges);
    basis.cycles.push_back(std::move(c));
    basis.witness_edges.push_back(core.sub.edge_to_parent[static_cast<std::size_t>(ear.edges.front())]);
  }
  return basis;
}

enum class ValidationIssue {
  not_a_cycle,
  weight_mismatch,
  missing_root,
  wrong_count,
  dependent,
  cycles_outside_root_component,
  bad_witness,
};

struct ValidationEntry {
  ValidationIssue issue;
  int cycle = -1;  // index into the basis, -1 for whole-basis issues
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationEntry> entries;
  std::size_t rank = 0;
  int dimension = 0;  // cycle-space dimension of the root's 2-core component

  bool valid() const { return entries.empty(); }
  bool has(ValidationIssue i) const {
    return std::any_of(entries.begin(), entries.end(), [i](const ValidationEntry& e) { return e.issue == i; });
  }
};

/// Checks every condition and reports all failures.
inline ValidationReport validate_rooted_basis(const RootedGraph& rg, const CycleBasis& basis) {
  const Graph& g = rg.graph();
  ValidationReport rep;
  auto add = [&](ValidationIssue i, int c, std::string msg) { rep.entries.push_back({i, c, std::move(msg)}); };

  // Dimension of the root's 2-core component, whether or not it is biconnected.
  Subgraph core = two_core(g);
  int whole_dim = cycle_space_dimension(g);
  if (core.parent_to_edge[static_cast<std::size_t>(rg.root())] >= 0) {
    std::vector<int> label;
    connected_components(core.graph, label);
    const int root_label =
        label[static_cast<std::size_t>(core.parent_to_vertex[static_cast<std::size_t>(g.edge(rg.root()).u)])];
    std::vector<char> keep(static_cast<std::size_t>(core.graph.edge_count()), 0);
    for (EdgeId e = 0; e < core.graph.edge_count(); ++e) {
      keep[static_cast<std::size_t>(e)] = label[static_cast<std::size_t>(core.graph.edge(e).u)] == root_label;
    }
    rep.dimension = cycle_space_dimension(extract_subgraph(core.graph, keep).graph);
  }

  Gf2Eliminator elim(static_cast<std::size_t>(g.edge_count()));
  std::vector<char> seen(static_cast<std::size_t>(g.edge_count()), 0);
  for (std::size_t i = 0; i < basis.cycles.size(); ++i) {
    const Cycle& c = basis.cycles[i];
    const int idx = static_cast<int>(i);
    const std::string tag = "cycle " + std::to_string(i) + ": ";
    const bool ok = is_cycle(g, c.edges);
    if (!ok) {
      add(ValidationIssue::not_a_cycle, idx, tag + "not a cycle of the graph");
    } else {
      if (g.total_weight(c.edges) != c.weight) add(ValidationIssue::weight_mismatch, idx, tag + "cached weight is wrong");
      if (std::find(c.edges.begin(), c.edges.end(), rg.root()) == c.edges.end()) {
        add(ValidationIssue::missing_root, idx, tag + "does not contain the root edge");
      }
      elim.insert_ids(c.edges);
    }
    if (i < basis.witness_edges.size() && basis.witness_edges[i]) {
      const EdgeId w = *basis.witness_edges[i];
      const bool in_range = w >= 0 && w < g.edge_count();
      if (!in_range || std::find(c.edges.begin(), c.edges.end(), w) == c.edges.end() ||
          seen[static_cast<std::size_t>(w)]) {
        add(ValidationIssue::bad_witness, idx, tag + "witness edge is not new");
      }
    }
    for (EdgeId e : c.edges) {
      if (e >= 0 && e < g.edge_count()) seen[static_cast<std::size_t>(e)] = 1;
    }
  }
  rep.rank = elim.rank();
  if (basis.cycles.size() != static_cast<std::size_t>(rep.dimension)) {
    add(ValidationIssue::wrong_count, -1,
        "basis has " + std::to_string(basis.cycles.size()) + " cycles, dimension is " + std::to_string(rep.dimension));
  }
  if (rep.rank != basis.cycles.size()) {
    add(ValidationIssue::dependent, -1,
        "rank " + std::to_string(rep.rank) + " is below the cycle count " + std::to_string(basis.cycles.size()));
  }
  if (whole_dim > rep.dimension) {
    add(ValidationIssue::cycles_outside_root_component, -1,
        "graph has " + std::to_string(whole_dim - rep.dimension) + " cycle dimensions outside the root component");
  }
  return rep;
}

}  // namespace rcb
