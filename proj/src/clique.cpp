#include "kfactor/clique.hpp"

#include <algorithm>
#include <string>

#include "kfactor/error.hpp"

namespace kfactor {

bool Clique::contains(Vertex v) const noexcept {
  return std::binary_search(vertices.begin(), vertices.end(), v);
}

bool Clique::intersects(const Clique& other) const noexcept {
  auto a = vertices.begin();
  auto b = other.vertices.begin();
  while (a != vertices.end() && b != other.vertices.end()) {
    if (*a == *b) return true;
    if (*a < *b)
      ++a;
    else
      ++b;
  }
  return false;
}

bool is_transversal_clique(const PartiteGraph& g, const Clique& c) {
  if (c.size() != static_cast<std::size_t>(g.parts())) return false;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!g.contains(c.vertices[i]) || g.part_of(c.vertices[i]) != static_cast<int>(i)) return false;
    for (std::size_t j = 0; j < i; ++j)
      if (!g.adjacent(c.vertices[i], c.vertices[j])) return false;
  }
  return true;
}

namespace {

// Depth-first extension part by part; `common` holds vertices adjacent to
// every chosen vertex. Emits in lexicographic order because parts occupy
// increasing id ranges.
template <typename Emit>
void extend(const PartiteGraph& g, std::span<const VertexSet> allowed, int part, const VertexSet& common,
            std::vector<Vertex>& chosen, Emit& emit) {
  if (part == g.parts()) {
    emit(chosen);
    return;
  }
  VertexSet here = common & allowed[static_cast<std::size_t>(part)];
  here.for_each([&](Vertex v) {
    chosen.push_back(v);
    extend(g, allowed, part + 1, common & g.neighbours(v), chosen, emit);
    chosen.pop_back();
  });
}

template <typename Emit>
void for_each_clique(const PartiteGraph& g, std::span<const VertexSet> allowed, Emit emit) {
  if (g.part_size() == 0) return;
  VertexSet all(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) all.insert(v);
  std::vector<Vertex> chosen;
  chosen.reserve(static_cast<std::size_t>(g.parts()));
  extend(g, allowed, 0, all, chosen, emit);
}

std::vector<VertexSet> whole_parts(const PartiteGraph& g) {
  std::vector<VertexSet> parts;
  for (int i = 0; i < g.parts(); ++i) parts.push_back(g.part_set(i));
  return parts;
}

}  // namespace

CliqueFamily enumerate_kr(const PartiteGraph& g) {
  return enumerate_kr_induced(g, whole_parts(g));
}

CliqueFamily enumerate_kr(const PartiteGraph& g, std::size_t limit) {
  CliqueFamily out;
  for_each_clique(g, whole_parts(g), [&](const std::vector<Vertex>& c) {
    if (out.size() == limit)
      throw GuardExceeded("more than " + std::to_string(limit) + " cliques; use a smaller instance");
    out.push_back(Clique{c});
  });
  return out;
}

CliqueFamily rooted_cliques(const PartiteGraph& g, Vertex v) {
  if (!g.contains(v)) throw InvalidArgument("unknown vertex " + std::to_string(v));
  auto parts = whole_parts(g);
  auto& own = parts[static_cast<std::size_t>(g.part_of(v))];
  own = VertexSet(g.vertex_count());
  own.insert(v);
  return enumerate_kr_induced(g, parts);
}

CliqueFamily enumerate_kr_induced(const PartiteGraph& g, std::span<const VertexSet> subsets) {
  if (subsets.size() != static_cast<std::size_t>(g.parts()))
    throw InvalidArgument("expected one subset per part");
  CliqueFamily out;
  for_each_clique(g, subsets, [&](const std::vector<Vertex>& c) { out.push_back(Clique{c}); });
  return out;
}

std::size_t count_kr_induced(const PartiteGraph& g, std::span<const std::vector<Vertex>> subsets) {
  if (subsets.size() != static_cast<std::size_t>(g.parts()))
    throw InvalidArgument("expected one subset per part");
  std::vector<VertexSet> sets;
  for (int i = 0; i < g.parts(); ++i) {
    VertexSet s(g.vertex_count());
    for (auto v : subsets[static_cast<std::size_t>(i)]) {
      if (!g.contains(v) || g.part_of(v) != i)
        throw InvalidArgument("vertex " + std::to_string(v) + " is not in part " + std::to_string(i));
      s.insert(v);
    }
    sets.push_back(std::move(s));
  }
  std::size_t count = 0;
  for_each_clique(g, sets, [&](const std::vector<Vertex>&) { ++count; });
  return count;
}

std::vector<std::vector<std::size_t>> cliques_by_vertex(int vertex_count, const CliqueFamily& family) {
  std::vector<std::vector<std::size_t>> index(static_cast<std::size_t>(vertex_count));
  for (std::size_t i = 0; i < family.size(); ++i)
    for (auto v : family[i].vertices) index[static_cast<std::size_t>(v)].push_back(i);
  return index;
}

}  // namespace kfactor
