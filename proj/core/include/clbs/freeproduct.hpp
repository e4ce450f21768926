#pragma once

// Colour decomposition of a separated graph: one single-source factor graph
// E_X per group X ∈ C, with vertex copies v_X, glued back together along the
// identifications v_X ~ v_Y. check_iso_on_relations verifies that the
// generator maps between L(E, C, S) and the amalgamated free product of the
// factor algebras carry every defining relation to zero in both directions.

#include <string>
#include <vector>

#include "clbs/algebra.hpp"
#include "clbs/graph.hpp"

namespace clbs {

struct ColorFactor {
  GroupRef group;               // X in the original graph
  SeparatedGraph graph;         // E_X: copies of every vertex, edge set X
  std::vector<EdgeId> edges;    // factor edge j is original edge edges[j]
  bool in_s = false;
};

/// v_{color_a} is identified with v_{color_b}.
struct Identification {
  VertexId vertex;
  std::size_t color_a = 0;
  std::size_t color_b = 0;
  friend bool operator==(const Identification&, const Identification&) = default;
};

struct AmalgamationData {
  std::vector<Identification> identifications;
};

struct Decomposition {
  std::vector<ColorFactor> factors;   // in SeparatedGraph::all_groups() order
  AmalgamationData amalgamation;
};

/// Copy of v in colour k is named "<v>_X<k>".
Decomposition decompose(const SeparatedGraph& g);

/// JSON manifest listing the colours (with their factor file names) and the
/// identification pairs.
std::string identification_manifest(const SeparatedGraph& g,
                                    const Decomposition& d);
std::string factor_file_name(std::size_t color);

/// Generator of the free product: edges and ghosts keep their original id,
/// vertex copies carry their colour.
struct FactorGenerator {
  Generator::Kind kind = Generator::Kind::vertex;
  std::size_t id = 0;
  std::size_t color = 0;
  friend auto operator<=>(const FactorGenerator&,
                          const FactorGenerator&) = default;
};

using FactorElement = LinearCombination<FactorGenerator>;

struct IsoVerdict {
  std::string direction;   // "forward" (L → A/I) or "backward" (A → L)
  std::string name;
  bool passed = false;
};

struct IsoReport {
  std::vector<IsoVerdict> verdicts;
  std::size_t forward_relations = 0;
  std::size_t backward_relations = 0;
  std::size_t expected_forward = 0;
  std::size_t expected_backward = 0;
  bool edge_partition_ok = false;
  bool round_trip_ok = false;
  std::vector<std::string> problems;

  [[nodiscard]] bool all_passed() const;
};

/// Forward: ψ(e) = e, ψ(v) = v_X for a home colour X of v; each defining
/// relation of L is pushed through ψ and reduced in the free-product term
/// model (factor relations plus renaming every v_X to the first colour).
/// Backward: every factor relation and every ideal generator v_X − v_Y is
/// pulled back along v_X ↦ v and reduced in L. Throws PreconditionError when
/// the graph has no groups.
IsoReport check_iso_on_relations(const SeparatedGraph& g,
                                 const Decomposition& d,
                                 const SelectedEdges& sel);

}  // namespace clbs
