#pragma once

#include <span>
#include <string>

#include "kfactor/clique.hpp"
#include "kfactor/partite_graph.hpp"

namespace kfactor {

/// Outcome of a certificate check. `reason` is one of "clique",
/// "disjointness", "coverage", "membership", "index" when rejected.
struct Verdict {
  bool ok = true;
  std::string reason;
  std::string detail;

  explicit operator bool() const noexcept { return ok; }
  static Verdict accept() { return {}; }
  static Verdict reject(std::string reason, std::string detail) { return {false, std::move(reason), std::move(detail)}; }
};

/// Checks each member is a transversal clique of g and members are disjoint.
/// Deliberately shares no code with the solvers.
[[nodiscard]] Verdict verify_tiling(const PartiteGraph& g, std::span<const Clique> cliques);

/// verify_tiling plus coverage of every vertex.
[[nodiscard]] Verdict verify_factor(const PartiteGraph& g, std::span<const Clique> cliques);

}  // namespace kfactor
