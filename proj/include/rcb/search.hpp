#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <span>
#include <utility>
#include <vector>

#include "rcb/errors.hpp"
#include "rcb/graph.hpp"
#include "rcb/tiebreak.hpp"

namespace rcb {

/// What traversing an arc does to the edge set carried by a label.
enum class Toggle : std::uint8_t { none, add, remove };

struct Arc {
  int to = 0;
  Weight cost = 0;
  EdgeId edge = -1;  // -1 for arcs with no edge behind them
  Toggle toggle = Toggle::none;
  int ref = -1;  // caller's tag, copied into labels
};

/// Directed graph in compressed row form.
class ArcGraph {
 public:
  ArcGraph() = default;

  /// arcs[i].first is the tail of arcs[i].second.
  ArcGraph(int node_count, const std::vector<std::pair<int, Arc>>& arcs)
      : n_(node_count), offsets_(static_cast<std::size_t>(node_count) + 1, 0) {
    for (const auto& [from, a] : arcs) ++offsets_[static_cast<std::size_t>(from) + 1];
    for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
    arcs_.resize(arcs.size());
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (const auto& [from, a] : arcs) arcs_[fill[static_cast<std::size_t>(from)]++] = a;
  }

  int node_count() const { return n_; }
  std::size_t arc_count() const { return arcs_.size(); }
  std::span<const Arc> out(int v) const {
    const auto b = offsets_[static_cast<std::size_t>(v)];
    return {arcs_.data() + b, offsets_[static_cast<std::size_t>(v) + 1] - b};
  }

 private:
  int n_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<Arc> arcs_;
};

/// Shortest walks with exact integer costs and perturbation tie-breaking.
///
/// Every label remembers its parent, so the edge set of the walk behind a
/// label is implicit. With a randomized context the salt sum is tracked
/// eagerly. With a deterministic context the set handle is built only when a
/// tie needs it, by replaying toggles from the nearest ancestor that has one.
/// A walk that adds an edge already present (or removes a missing one) is not
/// a set at all; its label is marked invalid and loses every tie.
///
/// Queue order is cost minus potential. Potentials must make every arc's
/// reduced cost nonnegative for the usual one-pop-per-node behaviour; a label
/// is requeued whenever it improves, so correctness does not depend on it.
class LabelSearch {
 public:
  struct Label {
    Weight cost;
    int node;
    int parent;  // -1 for sources
    EdgeId edge;
    Toggle toggle;
    int ref;
  };

  /// tb == nullptr disables tie-breaking: the first label found wins ties.
  /// A deterministic context is mutated (handles are created in it).
  /// salt_potential (randomized contexts only) plays the role of potential
  /// for salt sums; empty means zero.
  LabelSearch(const ArcGraph& g, std::span<const Weight> potential, TieBreakContext* tb,
              std::span<const Int128> salt_potential = {})
      : g_(g),
        pot_(potential),
        salt_pot_(salt_potential),
        tb_(tb),
        salted_(tb && tb->mode() == TieBreakMode::randomized),
        best_(static_cast<std::size_t>(g.node_count()), -1) {
    const std::size_t expect = g.arc_count() + static_cast<std::size_t>(g.node_count()) + 1;
    labels_.reserve(expect);
    if (tb_) {
      keys_.reserve(expect);
      state_.reserve(expect);
    }
  }
  LabelSearch(const LabelSearch&) = delete;
  LabelSearch& operator=(const LabelSearch&) = delete;

  int add_source(int node, Weight cost, const TieBreakHandle& key) {
    const int idx = push_label({cost, node, -1, -1, Toggle::none, -1});
    if (tb_) {
      keys_[static_cast<std::size_t>(idx)] = key;
      state_[static_cast<std::size_t>(idx)] = kReady;
    }
    offer(idx);
    return idx;
  }

  int add_source(int node, Weight cost) { return add_source(node, cost, tb_ ? tb_->empty() : TieBreakHandle{}); }

  void run() {
    while (!pq_.empty()) {
      const int idx = pq_.top().idx;
      pq_.pop();
      const Label cur = labels_[static_cast<std::size_t>(idx)];
      if (best_[static_cast<std::size_t>(cur.node)] != idx) continue;
      for (const Arc& a : g_.out(cur.node)) {
        const Weight c = cur.cost + a.cost;
        const int held = best_[static_cast<std::size_t>(a.to)];
        if (held >= 0 && c > labels_[static_cast<std::size_t>(held)].cost) continue;
        const int cand = push_label({c, a.to, idx, a.edge, a.toggle, a.ref});
        if (held >= 0 && c == labels_[static_cast<std::size_t>(held)].cost && compare_keys(cand, held) >= 0) {
          drop_last();
          continue;
        }
        offer(cand);
      }
    }
  }

  int best(int node) const { return best_[static_cast<std::size_t>(node)]; }
  bool reached(int node) const { return best(node) >= 0; }
  const Label& label(int idx) const { return labels_[static_cast<std::size_t>(idx)]; }
  std::size_t label_count() const { return labels_.size(); }

  /// Orders two labels by cost, then by perturbation.
  std::weak_ordering compare(int a, int b) {
    const Weight ca = label(a).cost, cb = label(b).cost;
    if (ca != cb) return ca < cb ? std::weak_ordering::less : std::weak_ordering::greater;
    const int k = compare_keys(a, b);
    return k < 0 ? std::weak_ordering::less : (k > 0 ? std::weak_ordering::greater : std::weak_ordering::equivalent);
  }

  /// Set handle of a label; nullopt for invalid walks or without a context.
  std::optional<TieBreakHandle> handle(int idx) {
    if (!tb_) return std::nullopt;
    materialize(idx);
    if (state_[static_cast<std::size_t>(idx)] != kReady) return std::nullopt;
    return keys_[static_cast<std::size_t>(idx)];
  }

  /// Labels from the source down to idx.
  std::vector<int> chain(int idx) const {
    std::vector<int> out;
    for (int i = idx; i >= 0; i = label(i).parent) out.push_back(i);
    std::reverse(out.begin(), out.end());
    return out;
  }

 private:
  static constexpr std::uint8_t kLazy = 0, kReady = 1, kInvalid = 2;

  struct Entry {
    Weight key;
    Int128 salt;  // reduced salt sum, randomized contexts only
    std::uint64_t seq;
    int idx;
  };

  // Min-heap on reduced cost. Equal costs pop the perturbation-lighter label
  // first, which keeps re-offers rare on tie-heavy inputs; the search stays
  // label-correcting either way. Salt sums are numbers, so they are reduced
  // by the salt potential like costs are.
  struct Later {
    LabelSearch* self;
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.key != b.key) return a.key > b.key;
      if (self->salted_) {
        if (a.salt != b.salt) return a.salt > b.salt;
      } else if (self->tb_) {
        const int k = self->compare_keys(a.idx, b.idx);
        if (k != 0) return k > 0;
      }
      return a.seq > b.seq;
    }
  };

  int push_label(const Label& l) {
    labels_.push_back(l);
    if (tb_) {
      keys_.emplace_back();
      state_.push_back(kLazy);
      if (tb_->mode() == TieBreakMode::randomized && l.parent >= 0) {
        // Salt sums are cheap; keep them current.
        TieBreakHandle h = keys_[static_cast<std::size_t>(l.parent)];
        if (l.toggle == Toggle::add) h.salt += tb_->salt(l.edge);
        if (l.toggle == Toggle::remove) h.salt -= tb_->salt(l.edge);
        keys_.back() = h;
        state_.back() = kReady;
      }
    }
    return static_cast<int>(labels_.size()) - 1;
  }

  void drop_last() {
    labels_.pop_back();
    if (tb_) {
      keys_.pop_back();
      state_.pop_back();
    }
  }

  void offer(int idx) {
    const Label& l = labels_[static_cast<std::size_t>(idx)];
    const auto node = static_cast<std::size_t>(l.node);
    best_[node] = idx;
    Int128 salt = 0;
    if (salted_) salt = keys_[static_cast<std::size_t>(idx)].salt - (salt_pot_.empty() ? 0 : salt_pot_[node]);
    pq_.push({l.cost - pot_[node], salt, seq_++, idx});
  }

  void materialize(int idx) {
    if (state_[static_cast<std::size_t>(idx)] != kLazy) return;
    pending_.clear();
    int i = idx;
    while (state_[static_cast<std::size_t>(i)] == kLazy) {
      pending_.push_back(i);
      i = labels_[static_cast<std::size_t>(i)].parent;
    }
    for (auto it = pending_.rbegin(); it != pending_.rend(); ++it) {
      const auto j = static_cast<std::size_t>(*it);
      const Label& l = labels_[j];
      const auto p = static_cast<std::size_t>(l.parent);
      if (state_[p] == kInvalid) {
        state_[j] = kInvalid;
        continue;
      }
      const TieBreakHandle& h = keys_[p];
      if (l.toggle == Toggle::none) {
        keys_[j] = h;
      } else {
        const bool has = tb_->contains(h, l.edge);
        if ((l.toggle == Toggle::add) == has) {
          state_[j] = kInvalid;
          continue;
        }
        keys_[j] = l.toggle == Toggle::add ? tb_->extend(h, l.edge) : tb_->erase(h, l.edge);
      }
      state_[j] = kReady;
    }
  }

  // Perturbation order of two equal-cost labels: <0, 0, >0.
  int compare_keys(int a, int b) {
    if (!tb_) return 0;
    materialize(a);
    materialize(b);
    const auto sa = state_[static_cast<std::size_t>(a)], sb = state_[static_cast<std::size_t>(b)];
    if (sa == kInvalid || sb == kInvalid) return (sa == kInvalid) - (sb == kInvalid);
    const auto o = tb_->compare_sets(keys_[static_cast<std::size_t>(a)], keys_[static_cast<std::size_t>(b)]);
    return o < 0 ? -1 : (o > 0 ? 1 : 0);
  }

  const ArcGraph& g_;
  std::span<const Weight> pot_;
  std::span<const Int128> salt_pot_;
  TieBreakContext* tb_;
  bool salted_;
  std::vector<Label> labels_;
  std::vector<TieBreakHandle> keys_;
  std::vector<std::uint8_t> state_;
  std::vector<int> best_;
  std::vector<int> pending_;
  std::priority_queue<Entry, std::vector<Entry>, Later> pq_{Later{this}};
  std::uint64_t seq_ = 0;
};

}  // namespace rcb
