#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace kfactor {

using Vertex = std::int32_t;

/// Fixed-universe bitset over vertex ids [0, universe).
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(int universe)
      : universe_(universe), words_((static_cast<std::size_t>(universe) + 63) / 64, 0) {}

  [[nodiscard]] int universe() const noexcept { return universe_; }

  [[nodiscard]] bool contains(Vertex v) const noexcept {
    return (words_[static_cast<std::size_t>(v) >> 6] >> (v & 63)) & 1U;
  }
  void insert(Vertex v) noexcept { words_[static_cast<std::size_t>(v) >> 6] |= bit(v); }
  void erase(Vertex v) noexcept { words_[static_cast<std::size_t>(v) >> 6] &= ~bit(v); }

  [[nodiscard]] int count() const noexcept {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }

  /// Members in [lo, hi).
  [[nodiscard]] int count_range(Vertex lo, Vertex hi) const noexcept;

  [[nodiscard]] bool empty() const noexcept {
    for (auto w : words_)
      if (w != 0) return false;
    return true;
  }

  /// Smallest member, or -1.
  [[nodiscard]] Vertex first() const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] != 0) return static_cast<Vertex>(i * 64 + std::countr_zero(words_[i]));
    return -1;
  }

  /// Smallest member >= v, or -1.
  [[nodiscard]] Vertex next(Vertex v) const noexcept;

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      auto w = words_[i];
      while (w != 0) {
        f(static_cast<Vertex>(i * 64 + std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  [[nodiscard]] std::vector<Vertex> to_vector() const;

  [[nodiscard]] bool intersects(const VertexSet& o) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((words_[i] & o.words_[i]) != 0) return true;
    return false;
  }

  [[nodiscard]] int intersection_count(const VertexSet& o) const noexcept {
    int c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) c += std::popcount(words_[i] & o.words_[i]);
    return c;
  }

  VertexSet& operator&=(const VertexSet& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  VertexSet& operator|=(const VertexSet& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  VertexSet& operator-=(const VertexSet& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) noexcept { return a &= b; }
  friend VertexSet operator|(VertexSet a, const VertexSet& b) noexcept { return a |= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) noexcept { return a -= b; }

  /// Keeps only members in [lo, hi).
  void restrict_to(Vertex lo, Vertex hi) noexcept;

  [[nodiscard]] std::span<const std::uint64_t> words() const noexcept { return words_; }

  [[nodiscard]] std::size_t hash() const noexcept;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

  static VertexSet of(int universe, std::span<const Vertex> members) {
    VertexSet s(universe);
    for (auto v : members) s.insert(v);
    return s;
  }

 private:
  static constexpr std::uint64_t bit(Vertex v) noexcept { return std::uint64_t{1} << (v & 63); }

  int universe_ = 0;
  std::vector<std::uint64_t> words_;
};

struct VertexSetHash {
  std::size_t operator()(const VertexSet& s) const noexcept { return s.hash(); }
};

}  // namespace kfactor
