#include "kfactor/partite_graph.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "kfactor/error.hpp"

namespace kfactor {

std::size_t Adjacency::edge_count() const noexcept {
  std::size_t twice = 0;
  for (const auto& row : rows_) twice += static_cast<std::size_t>(row.count());
  return twice / 2;
}

std::vector<Edge> Adjacency::edges() const {
  std::vector<Edge> out;
  for (Vertex u = 0; u < vertex_count(); ++u) {
    const auto& row = rows_[static_cast<std::size_t>(u)];
    for (Vertex v = row.next(u + 1); v >= 0; v = row.next(v + 1)) out.push_back({u, v});
  }
  return out;
}

PartiteGraph::PartiteGraph(int r, int n) : r_(r), n_(n), adj_(r * n) {
  if (r < 2) throw InvalidArgument("part count must be at least 2, got " + std::to_string(r));
  if (n < 0) throw InvalidArgument("part size must be nonnegative");
}

PartiteGraph PartiteGraph::complete(int r, int n) {
  PartiteGraph g(r, n);
  for (Vertex u = 0; u < g.vertex_count(); ++u)
    for (Vertex v = g.part_end(g.part_of(u)); v < g.vertex_count(); ++v) g.adj_.add(u, v);
  return g;
}

PartiteGraph PartiteGraph::from_edges(int r, int n, std::span<const Edge> edges) {
  PartiteGraph g(r, n);
  for (const auto& e : edges) g.add_edge(e.u, e.v);
  return g;
}

void PartiteGraph::check_pair(Vertex u, Vertex v) const {
  if (!contains(u) || !contains(v))
    throw InvalidArgument("vertex id out of range in pair (" + std::to_string(u) + ", " +
                          std::to_string(v) + ")");
  if (part_of(u) == part_of(v))
    throw InvalidArgument("intra-part pair (" + std::to_string(u) + ", " + std::to_string(v) +
                          ") in part " + std::to_string(part_of(u)));
}

void PartiteGraph::add_edge(Vertex u, Vertex v) {
  check_pair(u, v);
  adj_.add(u, v);
}

void PartiteGraph::remove_edge(Vertex u, Vertex v) {
  check_pair(u, v);
  adj_.remove(u, v);
}

VertexSet PartiteGraph::neighbours_in(Vertex v, int part) const {
  return neighbours(v) & part_set(part);
}

VertexSet PartiteGraph::part_set(int part) const {
  VertexSet s(vertex_count());
  for (Vertex v = part_begin(part); v < part_end(part); ++v) s.insert(v);
  return s;
}

SimpleGraph SimpleGraph::complete(int vertex_count) {
  SimpleGraph g(vertex_count);
  for (Vertex u = 0; u < vertex_count; ++u)
    for (Vertex v = u + 1; v < vertex_count; ++v) g.adj_.add(u, v);
  return g;
}

void SimpleGraph::add_edge(Vertex u, Vertex v) {
  if (u < 0 || v < 0 || u >= vertex_count() || v >= vertex_count())
    throw InvalidArgument("vertex id out of range");
  if (u == v) throw InvalidArgument("loop at vertex " + std::to_string(u));
  adj_.add(u, v);
}

int SimpleGraph::min_degree() const noexcept {
  int best = vertex_count() == 0 ? 0 : std::numeric_limits<int>::max();
  for (Vertex v = 0; v < vertex_count(); ++v) best = std::min(best, degree(v));
  return best;
}

int min_star_degree(const PartiteGraph& g) {
  if (g.part_size() == 0) return 0;
  int best = std::numeric_limits<int>::max();
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    for (int j = 0; j < g.parts(); ++j)
      if (j != g.part_of(v)) best = std::min(best, g.degree_into(v, j));
  return best;
}

}  // namespace kfactor
