#pragma once

#include <compare>
#include <span>
#include <vector>

#include "kfactor/partite_graph.hpp"

namespace kfactor {

/// A transversal K_r: sorted vertex ids, one per part.
struct Clique {
  std::vector<Vertex> vertices;

  [[nodiscard]] std::size_t size() const noexcept { return vertices.size(); }
  [[nodiscard]] bool contains(Vertex v) const noexcept;
  [[nodiscard]] bool intersects(const Clique& other) const noexcept;

  friend auto operator<=>(const Clique&, const Clique&) = default;
  friend bool operator==(const Clique&, const Clique&) = default;
};

/// Duplicate-free list of cliques of one host, in lexicographic order when
/// produced by the enumerators below.
using CliqueFamily = std::vector<Clique>;

/// True when `c` has one vertex per part of g and is pairwise adjacent.
[[nodiscard]] bool is_transversal_clique(const PartiteGraph& g, const Clique& c);

/// K_r(G): every transversal r-clique once, lexicographic.
[[nodiscard]] CliqueFamily enumerate_kr(const PartiteGraph& g);
/// As above, but throws GuardExceeded as soon as more than `limit` cliques
/// have been found.
[[nodiscard]] CliqueFamily enumerate_kr(const PartiteGraph& g, std::size_t limit);

/// K_r(G, v). Throws InvalidArgument for an unknown vertex.
[[nodiscard]] CliqueFamily rooted_cliques(const PartiteGraph& g, Vertex v);

/// Transversal cliques of G[X_1, ..., X_r], X_i a subset of part i.
[[nodiscard]] CliqueFamily enumerate_kr_induced(const PartiteGraph& g, std::span<const VertexSet> subsets);

/// |K_r(G[X_1, ..., X_r])|. Throws InvalidArgument when some X_i leaves part i
/// or the number of subsets differs from r.
[[nodiscard]] std::size_t count_kr_induced(const PartiteGraph& g, std::span<const std::vector<Vertex>> subsets);

/// Cliques grouped by the vertices they contain; index = vertex id.
[[nodiscard]] std::vector<std::vector<std::size_t>> cliques_by_vertex(int vertex_count, const CliqueFamily& family);

}  // namespace kfactor
