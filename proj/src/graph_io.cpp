#include "kfactor/graph_io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "kfactor/error.hpp"

namespace kfactor {
namespace {

bool content_line(const std::string& line) {
  const auto pos = line.find_first_not_of(" \t\r");
  return pos != std::string::npos && line[pos] != '#';
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
  throw ParseError("line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

void write_graph(std::ostream& out, const PartiteGraph& g) {
  out << g.parts() << ' ' << g.part_size() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

PartiteGraph read_graph(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  int r = -1;
  int n = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!content_line(line)) continue;
    std::istringstream ss(line);
    std::string extra;
    if (!(ss >> r >> n) || (ss >> extra)) fail(line_no, "expected header `r n`");
    break;
  }
  if (r < 0) throw ParseError("missing header `r n`");
  if (r < 2 || n < 0) fail(line_no, "invalid header values");
  PartiteGraph g(r, n);
  while (std::getline(in, line)) {
    ++line_no;
    if (!content_line(line)) continue;
    std::istringstream ss(line);
    long long u = 0;
    long long v = 0;
    std::string extra;
    if (!(ss >> u >> v) || (ss >> extra)) fail(line_no, "expected edge `u v`");
    try {
      g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
    } catch (const InvalidArgument& e) {
      fail(line_no, e.what());
    }
  }
  return g;
}

void write_cliques(std::ostream& out, std::span<const Clique> cliques) {
  std::vector<Clique> sorted(cliques.begin(), cliques.end());
  for (auto& c : sorted) std::sort(c.vertices.begin(), c.vertices.end());
  std::sort(sorted.begin(), sorted.end());
  for (const auto& c : sorted) {
    for (std::size_t i = 0; i < c.vertices.size(); ++i) out << (i ? " " : "") << c.vertices[i];
    out << '\n';
  }
}

std::vector<Clique> read_cliques(std::istream& in) {
  std::vector<Clique> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!content_line(line)) continue;
    std::istringstream ss(line);
    Clique c;
    std::string token;
    while (ss >> token) {
      try {
        std::size_t used = 0;
        const long long v = std::stoll(token, &used);
        if (used != token.size()) fail(line_no, "bad vertex id `" + token + "`");
        c.vertices.push_back(static_cast<Vertex>(v));
      } catch (const std::logic_error&) {
        fail(line_no, "bad vertex id `" + token + "`");
      }
    }
    std::sort(c.vertices.begin(), c.vertices.end());
    out.push_back(std::move(c));
  }
  return out;
}

PartiteGraph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return read_graph(in);
}

void save_graph(const std::filesystem::path& path, const PartiteGraph& g) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  write_graph(out, g);
}

}  // namespace kfactor
