#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "rcb/graph.hpp"

namespace rcb {

/// Fixed-length vector over GF(2), packed into 64-bit words.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

  static BitVector from_ids(std::size_t bits, std::span<const EdgeId> ids) {
    BitVector v(bits);
    for (EdgeId id : ids) v.flip(static_cast<std::size_t>(id));
    return v;
  }

  std::size_t size() const { return bits_; }

  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void reset(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
  void flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }

  BitVector& operator^=(const BitVector& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
  }

  bool none() const {
    for (auto w : words_) {
      if (w) return false;
    }
    return true;
  }

  /// Index of the lowest set bit, or size() when empty.
  std::size_t lowest() const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(words_[i]));
    }
    return bits_;
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Incremental Gaussian elimination. Each stored row is keyed by its lowest
/// set bit, and no two rows share one.
class Gf2Eliminator {
 public:
  explicit Gf2Eliminator(std::size_t universe) : universe_(universe), pivot_row_(universe, -1) {}

  /// Adds v to the span; returns false when v was already in it.
  bool insert(BitVector v) {
    for (;;) {
      const std::size_t p = v.lowest();
      if (p >= universe_) return false;
      const int r = pivot_row_[p];
      if (r < 0) {
        pivot_row_[p] = static_cast<int>(rows_.size());
        rows_.push_back(std::move(v));
        return true;
      }
      v ^= rows_[static_cast<std::size_t>(r)];
    }
  }

  bool insert_ids(std::span<const EdgeId> ids) { return insert(BitVector::from_ids(universe_, ids)); }

  bool in_span(BitVector v) const {
    for (;;) {
      const std::size_t p = v.lowest();
      if (p >= universe_) return true;
      const int r = pivot_row_[p];
      if (r < 0) return false;
      v ^= rows_[static_cast<std::size_t>(r)];
    }
  }

  std::size_t rank() const { return rows_.size(); }

 private:
  std::size_t universe_;
  std::vector<int> pivot_row_;
  std::vector<BitVector> rows_;
};

/// Rank of the given edge-id sets viewed as vectors in GF(2)^universe.
/// Ids inside one set are toggled, so a repeated id cancels.
inline std::size_t gf2_rank(const std::vector<std::vector<EdgeId>>& edge_sets, std::size_t universe) {
  Gf2Eliminator elim(universe);
  for (const auto& s : edge_sets) {
    for (EdgeId id : s) {
      if (id < 0 || static_cast<std::size_t>(id) >= universe) throw InvalidInput("edge id outside universe");
    }
    elim.insert_ids(s);
  }
  return elim.rank();
}

inline std::size_t basis_rank(const CycleBasis& basis, std::size_t universe) {
  Gf2Eliminator elim(universe);
  for (const Cycle& c : basis.cycles) elim.insert_ids(c.edges);
  return elim.rank();
}

}  // namespace rcb
