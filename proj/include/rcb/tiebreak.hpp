#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "rcb/errors.hpp"
#include "rcb/graph.hpp"

namespace rcb {

using Int128 = __int128;

enum class TieBreakMode { deterministic, randomized };

/// Reference to the perturbation key of one edge set. In randomized mode
/// the key is the sum of the members' salts; in deterministic mode it is the
/// root subset object of the set (-1 for the empty set).
struct TieBreakHandle {
  std::uint64_t context = 0;
  Weight weight = 0;
  Int128 salt = 0;
  std::int32_t object = -1;

  friend bool operator==(const TieBreakHandle&, const TieBreakHandle&) = default;
};

/// Smallest element at which two sets differ and which of them holds it.
struct FirstDifference {
  EdgeId edge;
  bool in_first;
};

/// Simulates an unambiguous weighting.
///
/// Deterministic mode gives the edge of perturbation index i (1-based) an
/// extra weight of delta/2^i for an infinitesimal delta. delta is never
/// materialized: two equal-weight sets are ordered by their first difference,
/// and the set holding it is the heavier one. Sets are hash-consed onto a
/// fixed balanced binary tree over the perturbation order, so equal sets are
/// the same object and the first difference costs one root-to-leaf walk.
///
/// Randomized mode adds an independent b-bit salt per edge and compares salt
/// sums on weight ties. Equal salt sums compare Equal and are counted in
/// unresolved_ties().
///
/// A context is a single-owner arena: extend/erase/from_sorted mutate it,
/// comparisons do not.
class TieBreakContext {
 public:
  static TieBreakContext deterministic(std::vector<Weight> weights, std::vector<EdgeId> order = {}) {
    TieBreakContext c(TieBreakMode::deterministic, std::move(weights));
    c.set_order(std::move(order));
    return c;
  }

  /// Unit weights over `universe` elements.
  static TieBreakContext deterministic(int universe) {
    return deterministic(std::vector<Weight>(static_cast<std::size_t>(universe), 1));
  }

  static TieBreakContext randomized(std::vector<Weight> weights, std::uint64_t seed, int salt_bits = 64) {
    if (salt_bits < 1 || salt_bits > 64) throw InvalidInput("salt bits must lie in [1, 64]");
    TieBreakContext c(TieBreakMode::randomized, std::move(weights));
    c.seed_ = seed;
    c.salt_bits_ = salt_bits;
    std::mt19937_64 rng(seed);
    const std::uint64_t mask = salt_bits == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << salt_bits) - 1);
    c.salts_.resize(c.weights_.size());
    for (auto& s : c.salts_) s = static_cast<Int128>(rng() & mask);
    return c;
  }

  static TieBreakContext randomized(int universe, std::uint64_t seed, int salt_bits = 64) {
    return randomized(std::vector<Weight>(static_cast<std::size_t>(universe), 1), seed, salt_bits);
  }

  /// Same mode, order, weights and salts, with an empty subset dictionary.
  TieBreakContext fresh() const {
    TieBreakContext c(mode_, weights_);
    c.seed_ = seed_;
    c.salt_bits_ = salt_bits_;
    c.salts_ = salts_;
    c.order_ = order_;
    c.rank_ = rank_;
    c.leaf_base_ = leaf_base_;
    return c;
  }

  /// Drops every set while keeping the allocated storage. Handles issued
  /// before the reset are rejected afterwards.
  void reset() {
    objects_.clear();
    std::fill(slots_.begin(), slots_.end(), -1);
    id_ = next_id();
  }

  /// Context over a sub-universe: element i stands for keep[i] of this one.
  /// Weights, salts and the relative perturbation order carry over.
  TieBreakContext restricted(std::span<const EdgeId> keep) const {
    std::vector<Weight> w;
    w.reserve(keep.size());
    for (EdgeId e : keep) {
      check_element(e);
      w.push_back(weight(e));
    }
    TieBreakContext c(mode_, std::move(w));
    c.seed_ = seed_;
    c.salt_bits_ = salt_bits_;
    if (mode_ == TieBreakMode::randomized) {
      for (EdgeId e : keep) c.salts_.push_back(salt(e));
      c.set_order({});
      return c;
    }
    std::vector<int> local(weights_.size(), -1);
    for (std::size_t i = 0; i < keep.size(); ++i) local[static_cast<std::size_t>(keep[i])] = static_cast<int>(i);
    std::vector<EdgeId> order;
    for (EdgeId e : order_) {
      if (local[static_cast<std::size_t>(e)] >= 0) order.push_back(local[static_cast<std::size_t>(e)]);
    }
    c.set_order(std::move(order));
    return c;
  }

  TieBreakMode mode() const { return mode_; }
  int universe() const { return static_cast<int>(weights_.size()); }
  std::uint64_t id() const { return id_; }
  std::uint64_t seed() const { return seed_; }
  int salt_bits() const { return salt_bits_; }
  Int128 salt(EdgeId e) const { return salts_[static_cast<std::size_t>(e)]; }
  Weight weight(EdgeId e) const { return weights_[static_cast<std::size_t>(e)]; }
  /// Perturbation index order: order()[0] carries the largest perturbation.
  const std::vector<EdgeId>& order() const { return order_; }
  std::size_t object_count() const { return objects_.size(); }
  std::uint64_t unresolved_ties() const { return unresolved_ties_; }

  TieBreakHandle empty() const { return TieBreakHandle{id_, 0, 0, -1}; }

  TieBreakHandle extend(const TieBreakHandle& h, EdgeId e) {
    check(h);
    check_element(e);
    TieBreakHandle out = h;
    out.weight += weight(e);
    if (mode_ == TieBreakMode::randomized) {
      out.salt += salt(e);
    } else {
      out.object = rebuild(h.object, leaf_of(e), true);
    }
    return out;
  }

  /// Handle for S minus {e}; e must be a member in deterministic mode.
  TieBreakHandle erase(const TieBreakHandle& h, EdgeId e) {
    check(h);
    check_element(e);
    TieBreakHandle out = h;
    out.weight -= weight(e);
    if (mode_ == TieBreakMode::randomized) {
      out.salt -= salt(e);
    } else {
      out.object = rebuild(h.object, leaf_of(e), false);
    }
    return out;
  }

  /// Membership; deterministic mode only.
  bool contains(const TieBreakHandle& h, EdgeId e) const {
    check(h);
    check_element(e);
    if (mode_ != TieBreakMode::deterministic) throw Error("membership needs the deterministic mode");
    const std::uint32_t leaf = leaf_of(e);
    std::int32_t x = h.object;
    for (int level = levels_from_root(); x >= 0 && level > 0; --level) {
      const bool right = (leaf >> (level - 1)) & 1U;
      x = right ? objects_[static_cast<std::size_t>(x)].right : objects_[static_cast<std::size_t>(x)].left;
    }
    return x >= 0;
  }

  /// Handle for a set given as strictly increasing edge ids.
  TieBreakHandle from_sorted(std::span<const EdgeId> edges) {
    for (std::size_t i = 0; i < edges.size(); ++i) {
      check_element(edges[i]);
      if (i > 0 && edges[i] <= edges[i - 1]) throw UnsortedInput("edge list is not strictly increasing");
    }
    TieBreakHandle out = empty();
    for (EdgeId e : edges) out.weight += weight(e);
    if (mode_ == TieBreakMode::randomized) {
      for (EdgeId e : edges) out.salt += salt(e);
      return out;
    }
    std::vector<std::uint32_t> leaves;
    leaves.reserve(edges.size());
    for (EdgeId e : edges) leaves.push_back(leaf_of(e) - leaf_base_);
    std::sort(leaves.begin(), leaves.end());
    out.object = build(1, 0, leaf_base_, leaves);
    return out;
  }

  /// Smallest differing element in perturbation order; deterministic only.
  std::optional<FirstDifference> first_difference(const TieBreakHandle& a, const TieBreakHandle& b) const {
    check(a);
    check(b);
    if (mode_ != TieBreakMode::deterministic) throw Error("first difference needs the deterministic mode");
    std::int32_t x = a.object, y = b.object;
    if (x == y) return std::nullopt;
    while (x >= 0 && y >= 0) {
      const Object& ox = objects_[static_cast<std::size_t>(x)];
      const Object& oy = objects_[static_cast<std::size_t>(y)];
      if (ox.left != oy.left) {
        x = ox.left;
        y = oy.left;
      } else {
        x = ox.right;
        y = oy.right;
      }
    }
    const bool in_first = x >= 0;
    std::int32_t z = in_first ? x : y;
    for (;;) {
      const Object& o = objects_[static_cast<std::size_t>(z)];
      if (o.left < 0 && o.right < 0) {
        return FirstDifference{order_[o.node - leaf_base_], in_first};
      }
      z = o.left >= 0 ? o.left : o.right;
    }
  }

  /// Perturbation-only order of two sets.
  std::weak_ordering compare_sets(const TieBreakHandle& a, const TieBreakHandle& b) const {
    check(a);
    check(b);
    if (mode_ == TieBreakMode::randomized) {
      if (a.salt < b.salt) return std::weak_ordering::less;
      if (a.salt > b.salt) return std::weak_ordering::greater;
      ++unresolved_ties_;
      return std::weak_ordering::equivalent;
    }
    const auto diff = first_difference(a, b);
    if (!diff) return std::weak_ordering::equivalent;
    return diff->in_first ? std::weak_ordering::greater : std::weak_ordering::less;
  }

  std::weak_ordering compare(Weight wa, const TieBreakHandle& a, Weight wb, const TieBreakHandle& b) const {
    if (wa != wb) return wa < wb ? std::weak_ordering::less : std::weak_ordering::greater;
    return compare_sets(a, b);
  }

  std::weak_ordering compare(const TieBreakHandle& a, const TieBreakHandle& b) const {
    return compare(a.weight, a, b.weight, b);
  }

 private:
  struct Object {
    std::uint32_t node;
    std::int32_t left;
    std::int32_t right;
  };

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static std::uint64_t key_hash(unsigned __int128 k) {
    return mix(static_cast<std::uint64_t>(k)) ^ (mix(static_cast<std::uint64_t>(k >> 64)) * 31);
  }

  // Bound on object indices used by the integer key j*q^2 + a*q + b.
  static constexpr unsigned __int128 kQ = static_cast<unsigned __int128>(1) << 32;

  TieBreakContext(TieBreakMode mode, std::vector<Weight> weights)
      : mode_(mode), weights_(std::move(weights)), id_(next_id()) {
    leaf_base_ = std::bit_ceil(std::max<std::uint32_t>(1, static_cast<std::uint32_t>(weights_.size())));
  }

  static std::uint64_t next_id() {
    static std::atomic<std::uint64_t> counter{1};
    return counter++;
  }

  void set_order(std::vector<EdgeId> order) {
    const auto m = weights_.size();
    if (order.empty()) {
      order.resize(m);
      for (std::size_t i = 0; i < m; ++i) order[i] = static_cast<EdgeId>(i);
    }
    if (order.size() != m) throw InvalidInput("perturbation order must list every element once");
    rank_.assign(m, -1);
    for (std::size_t i = 0; i < m; ++i) {
      const EdgeId e = order[i];
      if (e < 0 || static_cast<std::size_t>(e) >= m || rank_[static_cast<std::size_t>(e)] >= 0) {
        throw InvalidInput("perturbation order must list every element once");
      }
      rank_[static_cast<std::size_t>(e)] = static_cast<int>(i);
    }
    order_ = std::move(order);
  }

  void check(const TieBreakHandle& h) const {
    if (h.context != id_) throw MixedContexts("handle belongs to another tie-break context");
  }

  void check_element(EdgeId e) const {
    if (e < 0 || e >= universe()) throw InvalidInput("element outside the tie-break universe");
  }

  std::uint32_t leaf_of(EdgeId e) const {
    if (mode_ == TieBreakMode::randomized) return 0;
    return leaf_base_ + static_cast<std::uint32_t>(rank_[static_cast<std::size_t>(e)]);
  }

  int levels_from_root() const { return std::countr_zero(leaf_base_); }

  static unsigned __int128 key_of(std::uint32_t node, std::int32_t left, std::int32_t right) {
    return static_cast<unsigned __int128>(node) * kQ * kQ + static_cast<unsigned __int128>(left + 1) * kQ +
           static_cast<unsigned __int128>(right + 1);
  }

  // The dictionary is an open-addressing table of object indices; the key
  // j*q^2 + a*q + b of a slot is recovered from the object itself.
  std::int32_t intern(std::uint32_t node, std::int32_t left, std::int32_t right) {
    if (left < 0 && right < 0 && node < leaf_base_) return -1;
    if (2 * (objects_.size() + 1) > slots_.size()) grow();
    const std::size_t mask = slots_.size() - 1;
    for (std::size_t i = key_hash(key_of(node, left, right)) & mask;; i = (i + 1) & mask) {
      const std::int32_t at = slots_[i];
      if (at < 0) {
        if (objects_.size() + 1 >= static_cast<std::size_t>(INT32_MAX)) throw Error("subset object capacity exhausted");
        slots_[i] = static_cast<std::int32_t>(objects_.size());
        objects_.push_back({node, left, right});
        return slots_[i];
      }
      const Object& o = objects_[static_cast<std::size_t>(at)];
      if (o.node == node && o.left == left && o.right == right) return at;
    }
  }

  void grow() {
    slots_.assign(std::max<std::size_t>(64, 2 * slots_.size()), -1);
    const std::size_t mask = slots_.size() - 1;
    for (std::size_t k = 0; k < objects_.size(); ++k) {
      const Object& o = objects_[k];
      std::size_t i = key_hash(key_of(o.node, o.left, o.right)) & mask;
      while (slots_[i] >= 0) i = (i + 1) & mask;
      slots_[i] = static_cast<std::int32_t>(k);
    }
  }

  // Returns the object for (set of x) with `leaf` inserted or removed.
  std::int32_t rebuild(std::int32_t root, std::uint32_t leaf, bool insert) {
    const int levels = levels_from_root();
    path_.assign(static_cast<std::size_t>(levels) + 1, -1);
    std::int32_t x = root;
    for (int depth = 0; depth <= levels; ++depth) {
      path_[static_cast<std::size_t>(depth)] = x;
      if (x < 0 || depth == levels) {
        for (int d = depth + 1; d <= levels; ++d) path_[static_cast<std::size_t>(d)] = -1;
        break;
      }
      const bool right = (leaf >> (levels - depth - 1)) & 1U;
      const Object& o = objects_[static_cast<std::size_t>(x)];
      x = right ? o.right : o.left;
    }
    std::int32_t child = insert ? intern(leaf, -1, -1) : -1;
    for (int depth = levels - 1; depth >= 0; --depth) {
      const std::uint32_t node = leaf >> (levels - depth);
      const bool right = (leaf >> (levels - depth - 1)) & 1U;
      const std::int32_t old = path_[static_cast<std::size_t>(depth)];
      std::int32_t l = -1, r = -1;
      if (old >= 0) {
        l = objects_[static_cast<std::size_t>(old)].left;
        r = objects_[static_cast<std::size_t>(old)].right;
      }
      (right ? r : l) = child;
      child = intern(node, l, r);
    }
    return child;
  }

  // Bottom-up build of the object for node j covering leaves [lo, lo+width).
  std::int32_t build(std::uint32_t node, std::uint32_t lo, std::uint32_t width, std::span<const std::uint32_t> leaves) {
    if (leaves.empty()) return -1;
    if (width == 1) return intern(leaf_base_ + lo, -1, -1);
    const std::uint32_t half = width / 2;
    const auto split = static_cast<std::size_t>(
        std::lower_bound(leaves.begin(), leaves.end(), lo + half) - leaves.begin());
    const std::int32_t l = build(2 * node, lo, half, leaves.subspan(0, split));
    const std::int32_t r = build(2 * node + 1, lo + half, half, leaves.subspan(split));
    return intern(node, l, r);
  }

  TieBreakMode mode_;
  std::vector<Weight> weights_;
  std::uint64_t id_;
  std::uint64_t seed_ = 0;
  int salt_bits_ = 0;
  std::vector<Int128> salts_;
  std::vector<EdgeId> order_;
  std::vector<int> rank_;
  std::uint32_t leaf_base_ = 1;
  std::vector<Object> objects_;
  std::vector<std::int32_t> slots_;
  std::vector<std::int32_t> path_;
  mutable std::uint64_t unresolved_ties_ = 0;
};

inline TieBreakHandle tb_empty(const TieBreakContext& ctx) { return ctx.empty(); }

inline TieBreakHandle tb_extend(TieBreakContext& ctx, const TieBreakHandle& h, EdgeId e) { return ctx.extend(h, e); }

inline TieBreakHandle tb_from_sorted(TieBreakContext& ctx, std::span<const EdgeId> edges) {
  return ctx.from_sorted(edges);
}

inline std::optional<EdgeId> tb_first_difference(const TieBreakContext& ctx, const TieBreakHandle& a,
                                                 const TieBreakHandle& b) {
  const auto d = ctx.first_difference(a, b);
  if (!d) return std::nullopt;
  return d->edge;
}

inline std::weak_ordering tb_compare(const TieBreakContext& ctx, Weight wx, const TieBreakHandle& hx, Weight wy,
                                     const TieBreakHandle& hy) {
  return ctx.compare(wx, hx, wy, hy);
}

}  // namespace rcb
