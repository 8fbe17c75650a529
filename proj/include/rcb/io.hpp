#pragma once

// Text formats.
//
// Graph file:
//   n m root
//   u v w        (m lines, edge ids in order)
//   rot:         (optional)
//   e e e ...    (n lines, cyclic edge order around each vertex)
// Lines starting with '#' and blank lines are skipped.
//
// Basis file: one cycle per line, `weight=W witness=E edges: e1 e2 ...`
// (witness is `-` when absent), then `cycles=k total_weight=W rank=r dim=d`.
//
// Tree file: `tree: e1 e2 ...`.

#include <algorithm>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "rcb/errors.hpp"
#include "rcb/fundamental.hpp"
#include "rcb/graph.hpp"

namespace rcb::io {

struct GraphFile {
  RootedGraph rooted;
  std::optional<PlaneEmbedding> embedding;
};

namespace detail {

inline bool next_content_line(std::istream& in, std::string& line, int& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

[[noreturn]] inline void fail(int lineno, const std::string& what) {
  throw InvalidInput("line " + std::to_string(lineno) + ": " + what);
}

inline std::vector<long long> numbers(const std::string& s, int lineno) {
  std::istringstream ss(s);
  std::vector<long long> out;
  std::string tok;
  while (ss >> tok) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(tok, &used));
      if (used != tok.size()) fail(lineno, "not an integer: " + tok);
    } catch (const std::logic_error&) {
      fail(lineno, "not an integer: " + tok);
    }
  }
  return out;
}

}  // namespace detail

inline GraphFile read_graph(std::istream& in) {
  std::string line;
  int lineno = 0;
  if (!detail::next_content_line(in, line, lineno)) throw InvalidInput("empty graph file");
  const auto head = detail::numbers(line, lineno);
  if (head.size() != 3) detail::fail(lineno, "header must be `n m root`");
  const long long n = head[0], m = head[1], root = head[2];
  if (n < 0 || m < 0) detail::fail(lineno, "negative counts");
  if (root < 0 || root >= m) detail::fail(lineno, "root index must be below m");
  std::vector<Edge> edges;
  for (long long i = 0; i < m; ++i) {
    if (!detail::next_content_line(in, line, lineno)) throw InvalidInput("expected " + std::to_string(m) + " edge lines");
    const auto e = detail::numbers(line, lineno);
    if (e.size() != 3) detail::fail(lineno, "edge line must be `u v w`");
    if (e[0] < 0 || e[0] >= n || e[1] < 0 || e[1] >= n) detail::fail(lineno, "endpoint out of range");
    if (e[2] < 1) detail::fail(lineno, "weight must be positive");
    edges.push_back({static_cast<VertexId>(e[0]), static_cast<VertexId>(e[1]), static_cast<Weight>(e[2])});
  }
  Graph g(static_cast<int>(n), std::move(edges));
  GraphFile out{RootedGraph(g, static_cast<EdgeId>(root)), std::nullopt};
  if (detail::next_content_line(in, line, lineno)) {
    if (line.find("rot:") == std::string::npos) detail::fail(lineno, "unexpected content after the edges");
    std::vector<std::vector<EdgeId>> rot;
    for (long long v = 0; v < n; ++v) {
      if (!detail::next_content_line(in, line, lineno)) throw InvalidInput("rotation section needs one line per vertex");
      std::vector<EdgeId> r;
      for (long long x : detail::numbers(line, lineno)) r.push_back(static_cast<EdgeId>(x));
      rot.push_back(std::move(r));
    }
    if (detail::next_content_line(in, line, lineno)) detail::fail(lineno, "unexpected content after the rotation section");
    out.embedding = make_embedding(std::move(g), rot);
  }
  return out;
}

inline GraphFile read_graph_string(const std::string& s) {
  std::istringstream in(s);
  return read_graph(in);
}

inline void write_graph(std::ostream& out, const RootedGraph& rg, const PlaneEmbedding* pe = nullptr) {
  const Graph& g = rg.graph();
  out << g.vertex_count() << ' ' << g.edge_count() << ' ' << rg.root() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << ' ' << e.w << '\n';
  if (!pe) return;
  out << "rot:\n";
  for (const auto& r : rotation_edges(*pe)) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? " " : "") << r[i];
    out << '\n';
  }
}

inline void write_basis(std::ostream& out, const CycleBasis& b, std::size_t rank, int dim) {
  for (std::size_t i = 0; i < b.cycles.size(); ++i) {
    const Cycle& c = b.cycles[i];
    out << "weight=" << c.weight << " witness=";
    if (i < b.witness_edges.size() && b.witness_edges[i]) {
      out << *b.witness_edges[i];
    } else {
      out << '-';
    }
    out << " edges:";
    for (EdgeId e : c.edges) out << ' ' << e;
    out << '\n';
  }
  out << "cycles=" << b.size() << " total_weight=" << b.total_weight() << " rank=" << rank << " dim=" << dim << '\n';
}

inline void write_tree(std::ostream& out, const std::vector<EdgeId>& tree) {
  out << "tree:";
  for (EdgeId e : tree) out << ' ' << e;
  out << '\n';
}

/// What a result file holds.
struct ResultFile {
  std::optional<CycleBasis> basis;
  std::optional<std::vector<EdgeId>> tree;
};

/// Reads a basis or a tree file. Summary lines are skipped; weights are
/// kept as written so that verification can catch a wrong one.
inline ResultFile read_result(std::istream& in) {
  ResultFile out;
  std::string line;
  int lineno = 0;
  while (detail::next_content_line(in, line, lineno)) {
    std::istringstream ss(line);
    std::string tok;
    ss >> tok;
    if (tok == "tree:") {
      if (out.tree || out.basis) detail::fail(lineno, "file mixes trees and bases");
      std::string rest;
      std::getline(ss, rest);
      std::vector<EdgeId> t;
      for (long long x : detail::numbers(rest, lineno)) t.push_back(static_cast<EdgeId>(x));
      out.tree = std::move(t);
    } else if (tok.rfind("weight=", 0) == 0) {
      if (out.tree) detail::fail(lineno, "file mixes trees and bases");
      if (!out.basis) out.basis.emplace();
      Cycle c;
      std::optional<EdgeId> witness;
      try {
        c.weight = std::stoll(tok.substr(7));
        ss >> tok;
        if (tok.rfind("witness=", 0) != 0) detail::fail(lineno, "expected witness=");
        if (tok.substr(8) != "-") witness = static_cast<EdgeId>(std::stoll(tok.substr(8)));
      } catch (const std::logic_error&) {
        detail::fail(lineno, "malformed cycle line");
      }
      ss >> tok;
      if (tok != "edges:") detail::fail(lineno, "expected edges:");
      std::string rest;
      std::getline(ss, rest);
      for (long long x : detail::numbers(rest, lineno)) c.edges.push_back(static_cast<EdgeId>(x));
      std::sort(c.edges.begin(), c.edges.end());
      out.basis->cycles.push_back(std::move(c));
      out.basis->witness_edges.push_back(witness);
    } else if (tok.rfind("cycles=", 0) == 0) {
      if (!out.basis) out.basis.emplace();
    } else {
      detail::fail(lineno, "unrecognised line");
    }
  }
  if (!out.basis && !out.tree) throw InvalidInput("result file holds neither a basis nor a tree");
  return out;
}

}  // namespace rcb::io
