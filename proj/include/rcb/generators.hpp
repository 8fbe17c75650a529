#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rcb/errors.hpp"
#include "rcb/fundamental.hpp"
#include "rcb/graph.hpp"

namespace rcb {

/// Ladder with k rungs. Vertices 2i and 2i+1 are the ends of rung i; the
/// root is rung 0 and has edge id 0.
inline RootedGraph gen_ladder(int k) {
  if (k < 2) throw InvalidInput("ladder needs at least 2 rungs");
  std::vector<Edge> edges;
  edges.push_back({0, 1, 1});
  for (int i = 1; i < k; ++i) {
    edges.push_back({2 * i - 2, 2 * i, 1});
    edges.push_back({2 * i - 1, 2 * i + 1, 1});
    edges.push_back({2 * i, 2 * i + 1, 1});
  }
  return RootedGraph(Graph(2 * k, std::move(edges)), 0);
}

/// Two cliques on `clique_size` vertices joined by two disjoint paths of
/// `path_len` edges each. Clique A is vertices 0..c-1, clique B is c..2c-1,
/// path interiors follow. The paths run from A's last two vertices to B's
/// first two. Root is edge (0,1) in A, id 0.
inline RootedGraph gen_cliques_with_paths(int clique_size, int path_len) {
  const int c = clique_size;
  if (c < 3) throw InvalidInput("clique size must be at least 3");
  if (path_len < 1) throw InvalidInput("path length must be at least 1");
  std::vector<Edge> edges;
  for (int base : {0, c}) {
    for (int i = 0; i < c; ++i) {
      for (int j = i + 1; j < c; ++j) edges.push_back({base + i, base + j, 1});
    }
  }
  int next = 2 * c;
  auto path = [&](VertexId from, VertexId to) {
    VertexId prev = from;
    for (int i = 1; i < path_len; ++i) {
      edges.push_back({prev, next, 1});
      prev = next++;
    }
    edges.push_back({prev, to, 1});
  };
  path(c - 2, c);
  path(c - 1, c + 1);
  return RootedGraph(Graph(next, std::move(edges)), 0);
}

/// K_{3,3} with parts {0,1,2} and {3,4,5}; the perfect matching 0-3, 1-4,
/// 2-5 and the extra edge 0-4 are subdivided by vertices 6..9. Ten
/// vertices, thirteen edges. Root is edge 0, the unsubdivided 0-5.
inline RootedGraph gen_k33_subdivision() {
  std::vector<Edge> edges{
      {0, 5, 1}, {1, 3, 1}, {1, 5, 1}, {2, 3, 1}, {2, 4, 1},
      {0, 6, 1}, {6, 3, 1}, {1, 7, 1}, {7, 4, 1}, {2, 8, 1}, {8, 5, 1}, {0, 9, 1}, {9, 4, 1},
  };
  return RootedGraph(Graph(10, std::move(edges)), 0);
}

/// Whether every induced subgraph on k >= 2 vertices has at most
/// (3/2)k - 2 edges, with equality for the whole graph. Exponential in n.
inline bool is_32_tight(const Graph& g) {
  const int n = g.vertex_count();
  if (n > 24) throw InvalidInput("tightness check is exponential; n too large");
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    const int k = std::popcount(mask);
    if (k < 2) continue;
    int inside = 0;
    for (const Edge& e : g.edges()) {
      if ((mask >> e.u & 1u) && (mask >> e.v & 1u)) ++inside;
    }
    if (2 * inside > 3 * k - 4) return false;
  }
  return 2 * g.edge_count() == 3 * n - 4;
}

struct RandomGraphOptions {
  int n = 10;
  int m = 15;            // a target; the ear phase may overshoot it
  Weight max_weight = 1;  // weights uniform in [1, max_weight]
  bool distinct_weights = false;
  bool allow_parallel = false;
  int max_ear_interior = 3;
};

/// Random biconnected graph grown from a cycle by open ears, then padded
/// with chords. Every biconnected graph can arise this way. Root is edge 0.
inline RootedGraph gen_random_biconnected(const RandomGraphOptions& opt, std::uint64_t seed) {
  if (opt.n < 2) throw InvalidInput("random biconnected graph needs n >= 2");
  std::mt19937_64 rng(seed);
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  std::vector<std::pair<int, int>> pairs;
  std::set<std::pair<int, int>> present;
  auto add = [&](int u, int v) {
    pairs.emplace_back(u, v);
    present.insert(std::minmax(u, v));
  };
  int count;
  if (opt.n == 2) {
    add(0, 1);
    pairs.emplace_back(0, 1);
    count = 2;
  } else {
    count = uniform(3, std::min(opt.n, 3 + opt.max_ear_interior));
    for (int i = 0; i < count; ++i) add(i, (i + 1) % count);
  }
  while (count < opt.n) {
    const int k = uniform(1, std::min(opt.max_ear_interior, opt.n - count));
    const int a = uniform(0, count - 1);
    int b = uniform(0, count - 2);
    if (b >= a) ++b;
    int prev = a;
    for (int i = 0; i < k; ++i) {
      add(prev, count);
      prev = count++;
    }
    add(prev, b);
  }
  const long long simple_cap = static_cast<long long>(opt.n) * (opt.n - 1) / 2;
  while (static_cast<int>(pairs.size()) < opt.m) {
    if (!opt.allow_parallel && static_cast<long long>(present.size()) >= simple_cap) break;
    const int a = uniform(0, opt.n - 1);
    int b = uniform(0, opt.n - 2);
    if (b >= a) ++b;
    if (!opt.allow_parallel && present.count(std::minmax(a, b))) continue;
    add(a, b);
  }
  // Shuffle vertex labels and edge order so structure is not visible in ids.
  std::vector<int> relabel(static_cast<std::size_t>(opt.n));
  std::iota(relabel.begin(), relabel.end(), 0);
  std::shuffle(relabel.begin(), relabel.end(), rng);
  std::shuffle(pairs.begin(), pairs.end(), rng);

  std::vector<Weight> weights(pairs.size());
  if (opt.distinct_weights) {
    if (opt.max_weight < static_cast<Weight>(pairs.size())) throw InvalidInput("weight range too small to be distinct");
    std::set<Weight> used;
    for (auto& w : weights) {
      do {
        w = std::uniform_int_distribution<Weight>(1, opt.max_weight)(rng);
      } while (!used.insert(w).second);
    }
  } else {
    for (auto& w : weights) w = std::uniform_int_distribution<Weight>(1, std::max<Weight>(1, opt.max_weight))(rng);
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    edges.push_back({relabel[static_cast<std::size_t>(pairs[i].first)], relabel[static_cast<std::size_t>(pairs[i].second)],
                     weights[i]});
  }
  return RootedGraph(Graph(opt.n, std::move(edges)), 0);
}

/// Copy of rg's graph with fresh weights; distinct when requested.
inline RootedGraph with_random_weights(const RootedGraph& rg, Weight max_weight, bool distinct, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Graph& g = rg.graph();
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  std::set<Weight> used;
  for (Edge& e : edges) {
    do {
      e.w = std::uniform_int_distribution<Weight>(1, max_weight)(rng);
    } while (distinct && !used.insert(e.w).second);
  }
  return RootedGraph(Graph(g.vertex_count(), std::move(edges)), rg.root());
}

// ---------------------------------------------------------------------------
// Plane graphs with embeddings

struct PlaneInstance {
  std::string name;
  PlaneEmbedding embedding;
};

/// Embeds a straight-line drawing: each vertex's edges sorted by angle.
inline PlaneEmbedding embed_straight_line(Graph g, const std::vector<std::pair<double, double>>& xy) {
  std::vector<std::vector<EdgeId>> rot(static_cast<std::size_t>(g.vertex_count()));
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    std::vector<std::pair<double, EdgeId>> by_angle;
    for (const Incidence& in : g.incident(v)) {
      const auto [x0, y0] = xy[static_cast<std::size_t>(v)];
      const auto [x1, y1] = xy[static_cast<std::size_t>(in.other)];
      by_angle.emplace_back(std::atan2(y1 - y0, x1 - x0), in.edge);
    }
    std::sort(by_angle.begin(), by_angle.end());
    for (const auto& [a, e] : by_angle) rot[static_cast<std::size_t>(v)].push_back(e);
  }
  return make_embedding(std::move(g), rot);
}

/// Hub 0 plus a rim of k vertices. wheel(3) is K4.
inline PlaneInstance gen_wheel(int k) {
  if (k < 3) throw InvalidInput("wheel rim needs at least 3 vertices");
  std::vector<Edge> edges;
  std::vector<std::pair<double, double>> xy{{0.0, 0.0}};
  for (int i = 0; i < k; ++i) {
    const double a = 2 * std::numbers::pi * i / k;
    xy.emplace_back(std::cos(a), std::sin(a));
    edges.push_back({0, 1 + i, 1});
  }
  for (int i = 0; i < k; ++i) edges.push_back({1 + i, 1 + (i + 1) % k, 1});
  return {"wheel" + std::to_string(k), embed_straight_line(Graph(k + 1, std::move(edges)), xy)};
}

/// Prism over a k-gon; prism(4) is the cube.
inline PlaneInstance gen_prism(int k) {
  if (k < 3) throw InvalidInput("prism needs k >= 3");
  std::vector<Edge> edges;
  std::vector<std::pair<double, double>> xy;
  for (int r = 1; r <= 2; ++r) {
    for (int i = 0; i < k; ++i) {
      const double a = 2 * std::numbers::pi * i / k;
      xy.emplace_back(r * std::cos(a), r * std::sin(a));
    }
  }
  for (int i = 0; i < k; ++i) {
    edges.push_back({i, (i + 1) % k, 1});
    edges.push_back({k + i, k + (i + 1) % k, 1});
    edges.push_back({i, k + i, 1});
  }
  return {k == 4 ? std::string("cube") : "prism" + std::to_string(k),
          embed_straight_line(Graph(2 * k, std::move(edges)), xy)};
}

/// Grid of rows x cols square faces, (rows+1)(cols+1) vertices.
inline PlaneInstance gen_grid(int rows, int cols) {
  if (rows < 1 || cols < 1) throw InvalidInput("grid needs at least one face");
  const int w = cols + 1;
  std::vector<Edge> edges;
  std::vector<std::pair<double, double>> xy;
  for (int r = 0; r <= rows; ++r) {
    for (int c = 0; c <= cols; ++c) {
      xy.emplace_back(c, r);
      if (c < cols) edges.push_back({r * w + c, r * w + c + 1, 1});
      if (r < rows) edges.push_back({r * w + c, (r + 1) * w + c, 1});
    }
  }
  return {"grid" + std::to_string(rows) + "x" + std::to_string(cols),
          embed_straight_line(Graph((rows + 1) * w, std::move(edges)), xy)};
}

/// K_{2,3}: poles 0 and 1, middle vertices 2..4. Not Hamiltonian.
inline PlaneInstance gen_k23() {
  std::vector<Edge> edges;
  for (int pole = 0; pole < 2; ++pole) {
    for (int mid = 2; mid <= 4; ++mid) edges.push_back({pole, mid, 1});
  }
  return {"k23", embed_straight_line(Graph(5, std::move(edges)), {{0, 1}, {0, -1}, {-1, 0}, {0, 0}, {1, 0}})};
}

/// Small plane graphs used by the duality checks, followed by their duals.
/// The dual of K_{2,3} (a triangle with doubled sides) has no fundamental
/// rooted tree for any root.
inline std::vector<PlaneInstance> plane_catalogue() {
  std::vector<PlaneInstance> out;
  for (int k = 3; k <= 6; ++k) out.push_back(gen_wheel(k));
  for (int k = 3; k <= 5; ++k) out.push_back(gen_prism(k));
  out.push_back(gen_grid(2, 2));
  out.push_back(gen_grid(2, 3));
  out.push_back(gen_k23());
  const std::size_t primal = out.size();
  for (std::size_t i = 0; i < primal; ++i) out.push_back({out[i].name + "_dual", dual_graph(out[i].embedding)});
  return out;
}

}  // namespace rcb
