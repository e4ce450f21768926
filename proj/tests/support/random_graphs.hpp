#pragma once

// Seeded generator of small valid separated graphs for property tests.

#include <algorithm>
#include <string>
#include <vector>

#include "clbs/graph.hpp"
#include "clbs/random.hpp"

namespace clbs::testing {

struct RandomGraphLimits {
  std::size_t max_vertices = 8;
  std::size_t max_edges = 12;
};

inline SeparatedGraph random_graph(std::uint64_t seed,
                                   RandomGraphLimits limits = {}) {
  Rng rng(seed);
  const std::size_t nv = 1 + rng.below(limits.max_vertices);
  const std::size_t ne = 1 + rng.below(limits.max_edges);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < nv; ++i) names.push_back("v" + std::to_string(i));
  std::vector<Edge> edges;
  std::vector<std::vector<EdgeId>> out(nv);
  // sources come from a few hubs so that vertices carry several groups
  const std::size_t hubs = std::min<std::size_t>(nv, 3);
  for (std::size_t j = 0; j < ne; ++j) {
    VertexId s{rng.below(hubs)};
    VertexId r{rng.below(nv)};
    out[s.index].push_back(EdgeId{j});
    edges.push_back(Edge{"e" + std::to_string(j + 1), s, r});
  }
  std::vector<std::vector<Group>> groups(nv);
  std::vector<GroupRef> s_members;
  for (std::size_t v = 0; v < nv; ++v) {
    auto& mine = out[v];
    for (std::size_t i = mine.size(); i > 1; --i) {
      std::swap(mine[i - 1], mine[rng.below(i)]);
    }
    if (mine.empty()) continue;
    const std::size_t k = 1 + rng.below(std::min<std::size_t>(mine.size(), 4));
    groups[v].resize(k);
    for (std::size_t i = 0; i < mine.size(); ++i) {
      groups[v][i < k ? i : rng.below(k)].push_back(mine[i]);
    }
    for (std::size_t x = 0; x < k; ++x) {
      if (rng.coin()) s_members.push_back(GroupRef{VertexId{v}, x});
    }
  }
  return SeparatedGraph(std::move(names), std::move(edges), std::move(groups),
                        std::move(s_members));
}

/// The first `count` seeds' graphs; every one passes validate().
inline std::vector<SeparatedGraph> random_graph_family(std::size_t count,
                                                       std::uint64_t base_seed = 1) {
  std::vector<SeparatedGraph> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_graph(base_seed + i));
  return out;
}

}  // namespace clbs::testing
