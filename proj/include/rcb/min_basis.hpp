#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rcb/connectivity.hpp"
#include "rcb/errors.hpp"
#include "rcb/gf2.hpp"
#include "rcb/graph.hpp"
#include "rcb/rooted_basis.hpp"
#include "rcb/search.hpp"
#include "rcb/suurballe.hpp"
#include "rcb/tiebreak.hpp"

namespace rcb {

enum class TieBreakPolicy {
  deterministic,
  randomized,
  none,  // no tie-breaking at all; only for demonstrating failures
};

enum class GreedyOrder {
  perturbation,                 // weight, then perturbation
  new_edges_then_perturbation,  // weight, then fewest uncovered edges, then perturbation
};

struct MinBasisOptions {
  TieBreakPolicy tiebreak = TieBreakPolicy::deterministic;
  GreedyOrder order = GreedyOrder::perturbation;
  std::uint64_t seed = 0;
  int salt_bits = 64;
  int max_attempts = 8;  // randomized mode only
  /// Per-step checks: paths from the ambit stay in it, rungs lie in the
  /// previous ambit, new edges form one path. The first failure throws.
  bool assert_ears = false;
  /// Perturbation order over the input graph's edge ids; empty = id order.
  std::vector<EdgeId> edge_order;
};

struct MinBasisResult {
  CycleBasis basis;       // input edge ids, greedy order
  std::vector<Ear> ears;  // ears[0] is the root edge, then each cycle's new edges
  std::size_t rank = 0;
  int dimension = 0;
  /// Empty when the new-edge paths form an open ear decomposition and the
  /// rank equals the dimension.
  std::string failure;
  int attempts = 1;
  std::uint64_t seed = 0;
  std::uint64_t unresolved_ties = 0;

  bool ok() const { return failure.empty(); }
};

/// Greedy cycle sequence over the root's 2-core component.
///
/// The shortest rooted cycle through each edge does not depend on what was
/// chosen before, so all of them are computed once and sorted. A step takes
/// the first cycle in that order whose edge is still uncovered; under
/// unambiguous weights this is the shortest rooted cycle with an uncovered
/// edge.
class GreedyBasisBuilder {
 public:
  GreedyBasisBuilder(const RootedGraph& rg, TieBreakContext* tb, GreedyOrder order = GreedyOrder::perturbation,
                     bool assert_ears = false)
      : core_(root_core(rg)), order_mode_(order), assert_(assert_ears) {
    if (tb) {
      if (tb->universe() != rg.graph().edge_count()) throw InvalidInput("tie-break context does not match the graph");
      ctx_.emplace(tb->restricted(core_.sub.edge_to_parent));
    }
    const Graph& h = graph();
    const auto m = static_cast<std::size_t>(h.edge_count());
    cycles_ = all_edges_shortest_rooted_cycles(core_.rooted, ctx());
    handles_.resize(m);
    edge_in_.assign(m, 0);
    vertex_in_.assign(static_cast<std::size_t>(h.vertex_count()), 0);
    edge_in_[static_cast<std::size_t>(root())] = 1;
    vertex_in_[static_cast<std::size_t>(core_.rooted.t1())] = 1;
    vertex_in_[static_cast<std::size_t>(core_.rooted.t2())] = 1;
    uncovered_ = static_cast<int>(m) - 1;
    ears_.push_back(Ear{{core_.rooted.t1(), core_.rooted.t2()}, {root()}});

    for (EdgeId f = 0; f < h.edge_count(); ++f) {
      if (f != root() && cycles_[static_cast<std::size_t>(f)].valid) queue_.push_back(f);
    }
    std::stable_sort(queue_.begin(), queue_.end(), [this](EdgeId a, EdgeId b) { return less(a, b); });

    if (assert_) {
      tree_parent_[0] = shortest_path_tree(core_.rooted.t1());
      tree_parent_[1] = shortest_path_tree(core_.rooted.t2());
    }
  }

  const RootCore& core() const { return core_; }
  const Graph& graph() const { return core_.rooted.graph(); }
  EdgeId root() const { return core_.rooted.root(); }
  bool done() const { return uncovered_ == 0 || exhausted_; }
  /// Cycles chosen so far, in core ids.
  const std::vector<Cycle>& cycles() const { return chosen_; }
  const std::vector<Ear>& ears() const { return ears_; }
  const std::vector<char>& ambit_edges() const { return edge_in_; }
  const std::vector<char>& ambit_vertices() const { return vertex_in_; }
  const std::string& failure() const { return failure_; }
  /// Precomputed per-edge cycles, in core ids.
  const std::vector<EdgeCycle>& edge_cycles() const { return cycles_; }
  TieBreakContext* ctx() { return ctx_ ? &*ctx_ : nullptr; }

  /// Appends the next cycle of the sequence and returns it (core ids).
  const Cycle& step() {
    if (done()) throw Error("greedy sequence is complete");
    const EdgeId f = next_edge();
    if (f < 0) {
      exhausted_ = true;
      fail("no rooted cycle covers the remaining edges");
      throw NoRootedBasis(failure_);
    }
    const Cycle& c = cycles_[static_cast<std::size_t>(f)].cycle;
    if (assert_ && !chosen_.empty() && c.weight < chosen_.back().weight) {
      raise("cycle weights decreased at step " + std::to_string(chosen_.size()));
    }
    if (assert_) check_rungs(f);

    std::vector<EdgeId> fresh;
    for (EdgeId e : c.edges) {
      if (!edge_in_[static_cast<std::size_t>(e)]) fresh.push_back(e);
    }
    auto ear = new_edge_path(fresh);
    if (!ear) {
      fail("new edges of cycle " + std::to_string(chosen_.size()) + " do not form a single path");
      if (assert_) raise(failure_);
    }
    for (EdgeId e : fresh) {
      edge_in_[static_cast<std::size_t>(e)] = 1;
      const Edge& ed = graph().edge(e);
      vertex_in_[static_cast<std::size_t>(ed.u)] = 1;
      vertex_in_[static_cast<std::size_t>(ed.v)] = 1;
    }
    uncovered_ -= static_cast<int>(fresh.size());
    witness_.push_back(ear ? ear->edges.front() : fresh.front());
    ears_.push_back(ear ? std::move(*ear) : Ear{});
    chosen_.push_back(c);
    if (assert_) check_ambit_paths();
    return chosen_.back();
  }

  /// Runs to completion and maps the result to input ids. Never throws on
  /// an ear or rank failure; those are reported in the result.
  MinBasisResult finish() {
    while (!done()) step();
    MinBasisResult r;
    const Graph& h = graph();
    r.dimension = cycle_space_dimension(h);
    Gf2Eliminator elim(static_cast<std::size_t>(h.edge_count()));
    for (const Cycle& c : chosen_) elim.insert_ids(c.edges);
    r.rank = elim.rank();
    if (failure_.empty()) {
      if (auto bad = check_open_ear_decomposition(h, ears_)) fail("new-edge paths are not an open ear decomposition: " + *bad);
    }
    if (failure_.empty() && (r.rank != static_cast<std::size_t>(r.dimension) || chosen_.size() != r.rank)) {
      fail("rank " + std::to_string(r.rank) + " with " + std::to_string(chosen_.size()) + " cycles, dimension " +
           std::to_string(r.dimension));
    }
    r.failure = failure_;
    const auto& emap = core_.sub.edge_to_parent;
    const auto& vmap = core_.sub.vertex_to_parent;
    for (std::size_t i = 0; i < chosen_.size(); ++i) {
      Cycle c;
      for (EdgeId e : chosen_[i].edges) c.edges.push_back(emap[static_cast<std::size_t>(e)]);
      std::sort(c.edges.begin(), c.edges.end());
      c.weight = chosen_[i].weight;
      r.basis.cycles.push_back(std::move(c));
      r.basis.witness_edges.push_back(emap[static_cast<std::size_t>(witness_[i])]);
    }
    for (const Ear& ear : ears_) {
      Ear out;
      for (VertexId v : ear.vertices) out.vertices.push_back(vmap[static_cast<std::size_t>(v)]);
      for (EdgeId e : ear.edges) out.edges.push_back(emap[static_cast<std::size_t>(e)]);
      r.ears.push_back(std::move(out));
    }
    if (ctx_) r.unresolved_ties = ctx_->unresolved_ties();
    return r;
  }

 private:
  [[noreturn]] void raise(const std::string& what) {
    fail(what);
    throw InternalEarViolation(what);
  }

  void fail(const std::string& what) {
    if (failure_.empty()) failure_ = what;
  }

  const TieBreakHandle& handle(EdgeId f) {
    auto& h = handles_[static_cast<std::size_t>(f)];
    if (!h) h = ctx_->from_sorted(cycles_[static_cast<std::size_t>(f)].cycle.edges);
    return *h;
  }

  // Strict order on candidate edges by their cycles.
  bool less(EdgeId a, EdgeId b) {
    const Cycle& ca = cycles_[static_cast<std::size_t>(a)].cycle;
    const Cycle& cb = cycles_[static_cast<std::size_t>(b)].cycle;
    if (ca.weight != cb.weight) return ca.weight < cb.weight;
    if (!ctx_) return false;
    return ctx_->compare_sets(handle(a), handle(b)) < 0;
  }

  int new_edge_count(EdgeId f) const {
    int k = 0;
    for (EdgeId e : cycles_[static_cast<std::size_t>(f)].cycle.edges) k += !edge_in_[static_cast<std::size_t>(e)];
    return k;
  }

  EdgeId next_edge() {
    if (order_mode_ == GreedyOrder::perturbation) {
      while (pos_ < queue_.size() && edge_in_[static_cast<std::size_t>(queue_[pos_])]) ++pos_;
      return pos_ < queue_.size() ? queue_[pos_] : -1;
    }
    EdgeId best = -1;
    int best_new = 0;
    for (EdgeId f : queue_) {
      if (edge_in_[static_cast<std::size_t>(f)]) continue;
      const int k = new_edge_count(f);
      if (best < 0) {
        best = f;
        best_new = k;
        continue;
      }
      const Weight wf = cycles_[static_cast<std::size_t>(f)].cycle.weight;
      const Weight wb = cycles_[static_cast<std::size_t>(best)].cycle.weight;
      if (wf < wb || (wf == wb && (k < best_new || (k == best_new && less(f, best))))) {
        best = f;
        best_new = k;
      }
    }
    return best;
  }

  // Orders the new edges into one path with both ends in the ambit and no
  // interior vertex in it.
  std::optional<Ear> new_edge_path(const std::vector<EdgeId>& fresh) const {
    const Graph& h = graph();
    std::unordered_map<VertexId, std::vector<EdgeId>> inc;
    for (EdgeId e : fresh) {
      inc[h.edge(e).u].push_back(e);
      inc[h.edge(e).v].push_back(e);
    }
    VertexId start = -1;
    int ends = 0;
    for (const auto& [v, es] : inc) {
      const bool old = vertex_in_[static_cast<std::size_t>(v)];
      if (es.size() == 1) {
        if (!old) return std::nullopt;
        ++ends;
        if (start < 0 || v < start) start = v;
      } else if (es.size() != 2 || old) {
        return std::nullopt;
      }
    }
    if (ends != 2) return std::nullopt;
    Ear ear;
    ear.vertices.push_back(start);
    EdgeId prev = -1;
    VertexId cur = start;
    for (;;) {
      const auto& es = inc[cur];
      EdgeId next = -1;
      for (EdgeId e : es) {
        if (e != prev) next = e;
      }
      if (next < 0 || (es.size() == 1 && prev >= 0)) break;
      ear.edges.push_back(next);
      cur = h.other(next, cur);
      ear.vertices.push_back(cur);
      prev = next;
      if (inc[cur].size() == 1) break;
    }
    if (ear.edges.size() != fresh.size()) return std::nullopt;
    return ear;
  }

  std::vector<EdgeId> shortest_path_tree(VertexId src) {
    const Graph& h = graph();
    std::vector<std::pair<int, Arc>> arcs;
    for (EdgeId e = 0; e < h.edge_count(); ++e) {
      const Edge& ed = h.edge(e);
      if (ed.is_loop()) continue;
      arcs.push_back({ed.u, Arc{ed.v, ed.w, e, Toggle::add, e}});
      arcs.push_back({ed.v, Arc{ed.u, ed.w, e, Toggle::add, e}});
    }
    const ArcGraph ag(h.vertex_count(), arcs);
    const std::vector<Weight> zero(static_cast<std::size_t>(h.vertex_count()), 0);
    detail::Scratch sc(ctx());
    LabelSearch s(ag, zero, sc.ptr);
    s.add_source(src, 0);
    s.run();
    std::vector<EdgeId> parent(static_cast<std::size_t>(h.vertex_count()), -1);
    for (VertexId v = 0; v < h.vertex_count(); ++v) {
      if (s.reached(v)) parent[static_cast<std::size_t>(v)] = s.label(s.best(v)).ref;
    }
    return parent;
  }

  // Shortest paths from ambit vertices to either root end never leave it.
  void check_ambit_paths() {
    for (VertexId v = 0; v < graph().vertex_count(); ++v) {
      if (!vertex_in_[static_cast<std::size_t>(v)]) continue;
      for (const auto& parent : tree_parent_) {
        const EdgeId e = parent[static_cast<std::size_t>(v)];
        if (e >= 0 && !edge_in_[static_cast<std::size_t>(e)]) {
          raise("shortest path from ambit vertex " + std::to_string(v) + " leaves the ambit at step " +
                std::to_string(chosen_.size()));
        }
      }
    }
  }

  // Rungs of the pair behind the next cycle, and the path tails beyond the
  // first rung, lie in the current ambit.
  void check_rungs(EdgeId f) {
    const EdgeCyclePair p = shortest_rooted_cycle_pair(core_.rooted, f, ctx());
    if (p.cycle.edges != cycles_[static_cast<std::size_t>(f)].cycle.edges) {
      raise("per-edge cycle of edge " + std::to_string(f) + " differs between the two search routes");
    }
    if (p.pair.rungs.empty()) return;
    auto inside = [&](EdgeId e) { return e < 0 || edge_in_[static_cast<std::size_t>(e)]; };
    for (const Rung& r : p.pair.rungs) {
      for (EdgeId e : r.edges) {
        if (!inside(e)) raise("rung edge " + std::to_string(e) + " outside the ambit");
      }
    }
    const auto cut = first_rung_shortcut(graph(), root(), p.pair);
    for (EdgeId e : cut->edges) {
      if (!inside(e)) raise("path beyond the first rung leaves the ambit at edge " + std::to_string(e));
    }
  }

  RootCore core_;
  std::optional<TieBreakContext> ctx_;
  GreedyOrder order_mode_;
  bool assert_;
  std::vector<EdgeCycle> cycles_;
  std::vector<std::optional<TieBreakHandle>> handles_;
  std::vector<EdgeId> queue_;
  std::size_t pos_ = 0;
  std::vector<char> edge_in_;
  std::vector<char> vertex_in_;
  int uncovered_ = 0;
  bool exhausted_ = false;
  std::vector<Cycle> chosen_;
  std::vector<EdgeId> witness_;
  std::vector<Ear> ears_;
  std::string failure_;
  std::vector<EdgeId> tree_parent_[2];
};

inline TieBreakContext make_context(const Graph& g, TieBreakPolicy policy, std::uint64_t seed, int salt_bits,
                                    std::vector<EdgeId> edge_order = {}) {
  std::vector<Weight> w;
  for (const Edge& e : g.edges()) w.push_back(e.w);
  if (policy == TieBreakPolicy::randomized) return TieBreakContext::randomized(std::move(w), seed, salt_bits);
  return TieBreakContext::deterministic(std::move(w), std::move(edge_order));
}

/// Minimum-weight rooted cycle basis with a caller-supplied context over
/// the graph's edge ids; nullptr runs without tie-breaking. Throws
/// InternalEarViolation when the result is not an ear sequence.
inline MinBasisResult min_weight_rooted_basis(const RootedGraph& rg, TieBreakContext* tb, bool assert_ears = false) {
  GreedyBasisBuilder b(rg, tb, GreedyOrder::perturbation, assert_ears);
  MinBasisResult r = b.finish();
  if (tb) r.seed = tb->seed();
  if (!r.ok()) throw InternalEarViolation(r.failure);
  return r;
}

/// Minimum-weight rooted cycle basis.
///
/// Deterministic mode throws InternalEarViolation if the result fails the
/// ear check. Randomized mode retries with a new seed. Mode none returns
/// whatever the greedy produced with the failure recorded.
inline MinBasisResult min_weight_rooted_basis(const RootedGraph& rg, const MinBasisOptions& opt = {}) {
  if (opt.tiebreak == TieBreakPolicy::none) {
    GreedyBasisBuilder b(rg, nullptr, opt.order, false);
    return b.finish();
  }
  std::uint64_t seed = opt.seed;
  const int attempts = opt.tiebreak == TieBreakPolicy::randomized ? std::max(1, opt.max_attempts) : 1;
  std::string last;
  for (int a = 1; a <= attempts; ++a) {
    TieBreakContext ctx = make_context(rg.graph(), opt.tiebreak, seed, opt.salt_bits, opt.edge_order);
    std::optional<MinBasisResult> r;
    try {
      GreedyBasisBuilder b(rg, &ctx, opt.order, opt.assert_ears);
      r = b.finish();
    } catch (const InternalEarViolation& e) {
      last = e.what();
    }
    if (r && r->ok()) {
      r->attempts = a;
      r->seed = seed;
      return std::move(*r);
    }
    if (r) last = r->failure;
    // splitmix64 step for the next seed
    seed += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = seed;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    seed = z ^ (z >> 31);
  }
  throw InternalEarViolation(last);
}

}  // namespace rcb
