#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "kfactor/error.hpp"
#include "kfactor/graph_io.hpp"
#include "kfactor/transversal.hpp"

namespace kfactor {
namespace {

std::string edge_text(const Edge& e) { return "(" + std::to_string(e.u) + ", " + std::to_string(e.v) + ")"; }

}  // namespace

Verdict verify_transversal(const GraphFamily& family, const TransversalFactor& tf) {
  const auto base = verify_factor(family.union_graph(), tf.factor.cliques);
  if (!base) return base;

  std::map<Edge, int> required;
  for (const auto& c : tf.factor.cliques)
    for (std::size_t a = 0; a < c.vertices.size(); ++a)
      for (std::size_t b = a + 1; b < c.vertices.size(); ++b) {
        const Edge e{std::min(c.vertices[a], c.vertices[b]), std::max(c.vertices[a], c.vertices[b])};
        required[e] = 0;
      }
  const int m = family.size();
  std::vector<int> uses(static_cast<std::size_t>(m), 0);
  for (const auto& ie : tf.assignment) {
    const Edge e{std::min(ie.edge.u, ie.edge.v), std::max(ie.edge.u, ie.edge.v)};
    auto it = required.find(e);
    if (it == required.end()) return Verdict::reject("assignment", "edge " + edge_text(e) + " is not a clique edge");
    if (++it->second > 1) return Verdict::reject("assignment", "edge " + edge_text(e) + " is assigned twice");
    if (ie.index < 0 || ie.index >= m)
      return Verdict::reject("index", "index " + std::to_string(ie.index) + " is out of range");
    if (!family.graph(ie.index).adjacent(e.u, e.v))
      return Verdict::reject("membership", "graph " + std::to_string(ie.index) + " lacks edge " + edge_text(e));
    if (++uses[static_cast<std::size_t>(ie.index)] > 1)
      return Verdict::reject("index", "index " + std::to_string(ie.index) + " used twice");
  }
  for (const auto& [e, count] : required)
    if (count == 0) return Verdict::reject("assignment", "edge " + edge_text(e) + " has no index");
  for (int t = 0; t < m; ++t)
    if (uses[static_cast<std::size_t>(t)] == 0) return Verdict::reject("index", "index " + std::to_string(t) + " unused");
  return Verdict::accept();
}

void save_family(const std::filesystem::path& manifest, const GraphFamily& family) {
  std::ofstream out(manifest);
  if (!out) throw InvalidArgument("cannot write " + manifest.string());
  out << "family " << family.parts() << ' ' << family.part_size() << ' ' << family.size() << '\n';
  out << "blocks";
  for (int i = 0; i < family.parts(); ++i)
    for (int j = i + 1; j < family.parts(); ++j) out << ' ' << i << '-' << j;
  out << '\n';
  const auto stem = manifest.stem().string();
  for (int t = 0; t < family.size(); ++t) {
    const std::string name = stem + ".g" + std::to_string(t) + ".txt";
    save_graph(manifest.parent_path() / name, family.graph(t));
    out << "graph " << t << ' ' << name << '\n';
  }
}

GraphFamily load_family(const std::filesystem::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw ParseError("cannot open " + manifest.string());
  std::string line;
  std::size_t line_no = 0;
  int r = -1, n = -1, m = -1;
  std::vector<PartiteGraph> graphs;
  auto fail = [&](const std::string& what) -> void {
    throw ParseError(manifest.string() + " line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::string tag;
    if (!(ss >> tag) || tag[0] == '#') continue;
    if (tag == "family") {
      if (!(ss >> r >> n >> m) || r < 2 || n < 1 || m < 1) fail("expected `family r n m`");
      graphs.assign(static_cast<std::size_t>(m), PartiteGraph{});
    } else if (tag == "blocks") {
      if (r < 0) fail("blocks before family header");
      for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
          std::string got;
          if (!(ss >> got) || got != std::to_string(i) + "-" + std::to_string(j)) fail("blocks must be in lexicographic order");
        }
    } else if (tag == "graph") {
      int index = -1;
      std::string path;
      if (r < 0) fail("graph before family header");
      if (!(ss >> index >> path) || index < 0 || index >= m) fail("expected `graph index path`");
      auto g = load_graph(manifest.parent_path() / path);
      if (g.parts() != r || g.part_size() != n) fail("member " + std::to_string(index) + " has the wrong shape");
      graphs[static_cast<std::size_t>(index)] = std::move(g);
    } else {
      fail("unknown directive `" + tag + "`");
    }
  }
  if (r < 0) throw ParseError(manifest.string() + ": missing family header");
  for (int t = 0; t < m; ++t)
    if (graphs[static_cast<std::size_t>(t)].parts() == 0) throw ParseError(manifest.string() + ": graph " + std::to_string(t) + " missing");
  try {
    return GraphFamily(r, n, std::move(graphs));
  } catch (const InvalidArgument& e) {
    throw ParseError(manifest.string() + ": " + e.what());
  }
}

void write_transversal(std::ostream& out, const TransversalFactor& tf) {
  write_cliques(out, tf.factor.cliques);
  for (const auto& ie : tf.assignment) out << "edge " << ie.edge.u << ' ' << ie.edge.v << " -> " << ie.index << '\n';
}

TransversalFactor read_transversal(std::istream& in) {
  TransversalFactor tf;
  std::stringstream cliques;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::string tag;
    if (!(ss >> tag)) {
      cliques << '\n';
      continue;
    }
    if (tag != "edge") {
      cliques << line << '\n';
      continue;
    }
    long long u = 0, v = 0, index = 0;
    std::string arrow, extra;
    if (!(ss >> u >> v >> arrow >> index) || arrow != "->" || (ss >> extra))
      throw ParseError("line " + std::to_string(line_no) + ": expected `edge u v -> index`");
    tf.assignment.push_back({Edge{static_cast<Vertex>(std::min(u, v)), static_cast<Vertex>(std::max(u, v))},
                             static_cast<int>(index)});
    cliques << '\n';
  }
  tf.factor.cliques = read_cliques(cliques);
  std::sort(tf.assignment.begin(), tf.assignment.end());
  return tf;
}

}  // namespace kfactor
