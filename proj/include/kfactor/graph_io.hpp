#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>

#include "kfactor/clique.hpp"
#include "kfactor/partite_graph.hpp"

namespace kfactor {

/// Text format: header `r n`, then one `u v` line per edge (global ids,
/// u < v) in lexicographic order.
void write_graph(std::ostream& out, const PartiteGraph& g);
/// Throws ParseError with a line number on malformed input.
[[nodiscard]] PartiteGraph read_graph(std::istream& in);

/// One clique per line, sorted ids, lexicographic line order.
void write_cliques(std::ostream& out, std::span<const Clique> cliques);
/// Reads clique lines; blank lines and `#` comments are skipped.
[[nodiscard]] std::vector<Clique> read_cliques(std::istream& in);

[[nodiscard]] PartiteGraph load_graph(const std::filesystem::path& path);
void save_graph(const std::filesystem::path& path, const PartiteGraph& g);

}  // namespace kfactor
