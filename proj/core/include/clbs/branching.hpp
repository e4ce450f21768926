#pragma once

// Interval branching systems for a separated graph: D_v = [i, i+1) for the
// i-th vertex, R_e ⊆ D_{s(e)} built by successive equal-width refinement of
// D_v (one level per group of C_v), and increasing piecewise-affine
// bijections f_e : D_{r(e)} → R_e.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "clbs/graph.hpp"
#include "clbs/interval.hpp"

namespace clbs {

struct BranchingSystem {
  std::vector<HalfOpenInterval> domains;   // D_v, by vertex index
  std::vector<IntervalUnion> ranges;       // R_e, by edge index
  std::vector<PiecewiseLinearMap> maps;    // f_e, by edge index
  IntervalUnion carrier;                   // union of all D_v

  [[nodiscard]] const HalfOpenInterval& domain(VertexId v) const {
    return domains.at(v.index);
  }
  [[nodiscard]] const IntervalUnion& range(EdgeId e) const {
    return ranges.at(e.index);
  }
  [[nodiscard]] const PiecewiseLinearMap& map(EdgeId e) const {
    return maps.at(e.index);
  }

  friend bool operator==(const BranchingSystem&,
                         const BranchingSystem&) = default;
};

/// Deterministic construction. Groups of C_v are processed in declaration
/// order; each refinement splits every current interval into |Y| equal slots
/// (|Y| + 1 when Y ∉ S, the extra slot being the rightmost and unassigned),
/// and slots go to the edges of Y left to right. f_e maps the k-th of n
/// equal slices of D_{r(e)} affinely onto the k-th canonical part of R_e.
BranchingSystem construct(const SeparatedGraph& g);

struct CheckResult {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct AxiomReport {
  std::vector<CheckResult> checks;

  [[nodiscard]] bool all_passed() const;
  [[nodiscard]] std::vector<CheckResult> failures() const;
};

/// Checks the branching-system axioms (same-group range disjointness, vertex
/// domain disjointness, R_e ⊆ D_{s(e)}, S-groups covering D_v, f_e bijective
/// onto R_e) and the extra properties of the interval construction
/// (cross-group ranges meet, unions of non-S groups are proper and pairwise
/// distinct). One CheckResult per check name; failures carry the instance.
AxiomReport verify_axioms(const SeparatedGraph& g, const BranchingSystem& bs);

/// One factor of a region query: R_e for a chosen e ∈ group, or the
/// complement D_v ∖ ∪_{e∈group} R_e when `edge` is empty.
struct RegionPick {
  GroupRef group;
  std::optional<EdgeId> edge;
};

/// Intersection of the picked factors inside D_v. Throws
/// std::invalid_argument unless the groups are distinct groups of C_v, each
/// chosen edge lies in its group, and complements are taken only for groups
/// outside S. An empty pick list yields D_v.
IntervalUnion region(const SeparatedGraph& g, const BranchingSystem& bs,
                     VertexId v, std::span<const RegionPick> picks);

struct RegionSweepReport {
  std::size_t cases = 0;
  std::vector<std::string> empty_regions;
  bool truncated = false;
};

/// Enumerates, for every non-sink v, every subset of C_v and every choice of
/// an edge (or complement, for groups outside S) per chosen group, and
/// records choices whose region is empty. Stops after `max_cases`.
RegionSweepReport region_sweep(const SeparatedGraph& g,
                               const BranchingSystem& bs,
                               std::size_t max_cases = 1'000'000);

/// Text dump: one line per D_v and R_e, then one block per f_e.
std::string show_intervals(const SeparatedGraph& g, const BranchingSystem& bs);

}  // namespace clbs
