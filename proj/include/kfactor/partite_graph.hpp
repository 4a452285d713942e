#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "kfactor/vertex_set.hpp"

namespace kfactor {

/// Undirected edge with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Symmetric irreflexive adjacency stored as one bitset row per vertex.
class Adjacency {
 public:
  Adjacency() = default;
  explicit Adjacency(int vertex_count) : rows_(static_cast<std::size_t>(vertex_count), VertexSet(vertex_count)) {}

  [[nodiscard]] int vertex_count() const noexcept { return static_cast<int>(rows_.size()); }
  [[nodiscard]] bool adjacent(Vertex u, Vertex v) const noexcept { return rows_[static_cast<std::size_t>(u)].contains(v); }
  [[nodiscard]] const VertexSet& row(Vertex v) const noexcept { return rows_[static_cast<std::size_t>(v)]; }

  void add(Vertex u, Vertex v) noexcept {
    rows_[static_cast<std::size_t>(u)].insert(v);
    rows_[static_cast<std::size_t>(v)].insert(u);
  }
  void remove(Vertex u, Vertex v) noexcept {
    rows_[static_cast<std::size_t>(u)].erase(v);
    rows_[static_cast<std::size_t>(v)].erase(u);
  }

  [[nodiscard]] std::size_t edge_count() const noexcept;
  /// All edges, lexicographically sorted.
  [[nodiscard]] std::vector<Edge> edges() const;

  friend bool operator==(const Adjacency&, const Adjacency&) = default;

 private:
  std::vector<VertexSet> rows_;
};

/// Balanced r-partite graph. Part i owns the contiguous id range
/// [i*n, (i+1)*n); edges only join distinct parts.
///
/// Mutators exist for generators; once built, instances are shared as const
/// and are safe for concurrent readers.
class PartiteGraph {
 public:
  PartiteGraph() = default;
  /// Edgeless graph; requires r >= 2 and n >= 0.
  PartiteGraph(int r, int n);

  static PartiteGraph complete(int r, int n);
  /// Throws InvalidArgument naming the first intra-part or out-of-range pair.
  static PartiteGraph from_edges(int r, int n, std::span<const Edge> edges);

  [[nodiscard]] int parts() const noexcept { return r_; }
  [[nodiscard]] int part_size() const noexcept { return n_; }
  [[nodiscard]] int vertex_count() const noexcept { return r_ * n_; }
  [[nodiscard]] int part_of(Vertex v) const noexcept { return v / n_; }
  [[nodiscard]] Vertex part_begin(int part) const noexcept { return part * n_; }
  [[nodiscard]] Vertex part_end(int part) const noexcept { return (part + 1) * n_; }
  [[nodiscard]] bool contains(Vertex v) const noexcept { return v >= 0 && v < vertex_count(); }

  [[nodiscard]] bool adjacent(Vertex u, Vertex v) const noexcept { return adj_.adjacent(u, v); }
  [[nodiscard]] const VertexSet& neighbours(Vertex v) const noexcept { return adj_.row(v); }
  [[nodiscard]] int degree(Vertex v) const noexcept { return adj_.row(v).count(); }
  [[nodiscard]] int degree_into(Vertex v, int part) const noexcept {
    return adj_.row(v).count_range(part_begin(part), part_end(part));
  }
  /// Neighbours of v inside `part` as a bitset over the whole vertex range.
  [[nodiscard]] VertexSet neighbours_in(Vertex v, int part) const;
  /// Indicator set of one part.
  [[nodiscard]] VertexSet part_set(int part) const;

  /// Throws InvalidArgument for an intra-part or out-of-range pair.
  void add_edge(Vertex u, Vertex v);
  void remove_edge(Vertex u, Vertex v);

  [[nodiscard]] std::size_t edge_count() const noexcept { return adj_.edge_count(); }
  [[nodiscard]] std::vector<Edge> edges() const { return adj_.edges(); }
  [[nodiscard]] const Adjacency& adjacency() const noexcept { return adj_; }

  friend bool operator==(const PartiteGraph&, const PartiteGraph&) = default;

 private:
  void check_pair(Vertex u, Vertex v) const;

  int r_ = 0;
  int n_ = 0;
  Adjacency adj_;
};

/// Plain undirected graph on [0, N); used by the unpartitioned family mode.
class SimpleGraph {
 public:
  SimpleGraph() = default;
  explicit SimpleGraph(int vertex_count) : adj_(vertex_count) {}
  static SimpleGraph complete(int vertex_count);

  [[nodiscard]] int vertex_count() const noexcept { return adj_.vertex_count(); }
  [[nodiscard]] bool adjacent(Vertex u, Vertex v) const noexcept { return adj_.adjacent(u, v); }
  [[nodiscard]] const VertexSet& neighbours(Vertex v) const noexcept { return adj_.row(v); }
  [[nodiscard]] int degree(Vertex v) const noexcept { return adj_.row(v).count(); }
  [[nodiscard]] int min_degree() const noexcept;

  void add_edge(Vertex u, Vertex v);
  void remove_edge(Vertex u, Vertex v) { adj_.remove(u, v); }

  [[nodiscard]] std::size_t edge_count() const noexcept { return adj_.edge_count(); }
  [[nodiscard]] std::vector<Edge> edges() const { return adj_.edges(); }

  friend bool operator==(const SimpleGraph&, const SimpleGraph&) = default;

 private:
  Adjacency adj_;
};

/// delta*(G): min over ordered part pairs (i, j), i != j, and v in V_i of
/// the number of neighbours of v in V_j. Returns 0 for graphs with n = 0.
[[nodiscard]] int min_star_degree(const PartiteGraph& g);

}  // namespace kfactor
