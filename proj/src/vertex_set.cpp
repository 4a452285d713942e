#include "kfactor/vertex_set.hpp"

#include "kfactor/random.hpp"

namespace kfactor {

int VertexSet::count_range(Vertex lo, Vertex hi) const noexcept {
  if (hi <= lo) return 0;
  int c = 0;
  auto lw = static_cast<std::size_t>(lo) >> 6;
  auto hw = static_cast<std::size_t>(hi - 1) >> 6;
  for (auto i = lw; i <= hw; ++i) {
    auto w = words_[i];
    if (i == lw) w &= ~std::uint64_t{0} << (lo & 63);
    if (i == hw && ((hi & 63) != 0)) w &= (std::uint64_t{1} << (hi & 63)) - 1;
    c += std::popcount(w);
  }
  return c;
}

Vertex VertexSet::next(Vertex v) const noexcept {
  if (v >= universe_) return -1;
  auto i = static_cast<std::size_t>(v) >> 6;
  auto w = words_[i] & (~std::uint64_t{0} << (v & 63));
  while (true) {
    if (w != 0) return static_cast<Vertex>(i * 64 + std::countr_zero(w));
    if (++i == words_.size()) return -1;
    w = words_[i];
  }
}

std::vector<Vertex> VertexSet::to_vector() const {
  std::vector<Vertex> out;
  out.reserve(static_cast<std::size_t>(count()));
  for_each([&](Vertex v) { out.push_back(v); });
  return out;
}

void VertexSet::restrict_to(Vertex lo, Vertex hi) noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    const auto base = static_cast<Vertex>(i * 64);
    std::uint64_t keep = ~std::uint64_t{0};
    if (lo > base) keep = lo >= base + 64 ? 0 : keep & (~std::uint64_t{0} << (lo - base));
    if (hi < base + 64) keep = hi <= base ? 0 : keep & ((std::uint64_t{1} << (hi - base)) - 1);
    words_[i] &= keep;
  }
}

std::size_t VertexSet::hash() const noexcept {
  std::uint64_t h = static_cast<std::uint64_t>(universe_);
  for (auto w : words_) h = mix64(h ^ w);
  return static_cast<std::size_t>(h);
}

}  // namespace kfactor
