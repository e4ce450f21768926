#include "clbs/branching.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace clbs {

namespace {

IntervalUnion group_union(const BranchingSystem& bs,
                          const Group& grp) {
  IntervalUnion u;
  for (EdgeId e : grp) u = unite(u, bs.range(e));
  return u;
}

std::string edge_name(const SeparatedGraph& g, EdgeId e) {
  return g.edge(e).name;
}

}  // namespace

BranchingSystem construct(const SeparatedGraph& g) {
  BranchingSystem bs;
  const std::size_t nv = g.vertex_count();
  bs.domains.reserve(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    bs.domains.emplace_back(Rational(static_cast<std::int64_t>(i)),
                            Rational(static_cast<std::int64_t>(i + 1)));
  }
  if (nv > 0) {
    bs.carrier = IntervalUnion(
        HalfOpenInterval(0, Rational(static_cast<std::int64_t>(nv))));
  }

  std::vector<std::vector<HalfOpenInterval>> slots(g.edge_count());
  for (std::size_t vi = 0; vi < nv; ++vi) {
    VertexId v{vi};
    std::vector<HalfOpenInterval> current{bs.domains[vi]};
    const auto& cv = g.groups(v);
    for (std::size_t k = 0; k < cv.size(); ++k) {
      const Group& grp = cv[k];
      const bool phantom = !g.in_s(GroupRef{v, k});
      const std::size_t width_count = grp.size() + (phantom ? 1 : 0);
      const Rational parts(static_cast<std::int64_t>(width_count));
      std::vector<HalfOpenInterval> next;
      next.reserve(current.size() * width_count);
      for (const auto& iv : current) {
        Rational w = iv.length() / parts;
        for (std::size_t t = 0; t < width_count; ++t) {
          Rational lo = iv.lo() + w * Rational(static_cast<std::int64_t>(t));
          Rational hi = t + 1 == width_count
                            ? iv.hi()
                            : iv.lo() + w * Rational(static_cast<std::int64_t>(t + 1));
          next.emplace_back(lo, hi);
          if (t < grp.size()) slots[grp[t].index].push_back(next.back());
        }
      }
      current = std::move(next);
    }
  }

  bs.ranges.reserve(g.edge_count());
  bs.maps.reserve(g.edge_count());
  for (std::size_t ei = 0; ei < g.edge_count(); ++ei) {
    EdgeId e{ei};
    IntervalUnion r = IntervalUnion::from_parts(std::move(slots[ei]));
    const HalfOpenInterval& target_domain = bs.domain(g.range(e));
    const auto& parts = r.parts();
    const Rational n(static_cast<std::int64_t>(parts.size()));
    const Rational slice = target_domain.length() / n;
    std::vector<AffinePiece> pieces;
    pieces.reserve(parts.size());
    for (std::size_t k = 0; k < parts.size(); ++k) {
      Rational lo = target_domain.lo() + slice * Rational(static_cast<std::int64_t>(k));
      Rational hi = k + 1 == parts.size() ? target_domain.hi() : lo + slice;
      Rational slope = parts[k].length() / (hi - lo);
      Rational offset = parts[k].lo() - slope * lo;
      pieces.emplace_back(HalfOpenInterval(lo, hi), slope, offset);
    }
    bs.maps.push_back(PiecewiseLinearMap::from_pieces(std::move(pieces)));
    bs.ranges.push_back(std::move(r));
  }
  return bs;
}

bool AxiomReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.passed; });
}

std::vector<CheckResult> AxiomReport::failures() const {
  std::vector<CheckResult> out;
  std::copy_if(checks.begin(), checks.end(), std::back_inserter(out),
               [](const CheckResult& c) { return !c.passed; });
  return out;
}

AxiomReport verify_axioms(const SeparatedGraph& g, const BranchingSystem& bs) {
  AxiomReport report;
  auto check = [&](const char* name) -> CheckResult& {
    report.checks.push_back(CheckResult{name, true, {}});
    return report.checks.back();
  };
  auto fail = [](CheckResult& c, const std::string& what) {
    if (c.passed) {
      c.passed = false;
      c.detail = what;
    } else {
      c.detail += "; " + what;
    }
  };

  if (bs.domains.size() != g.vertex_count() ||
      bs.ranges.size() != g.edge_count() || bs.maps.size() != g.edge_count()) {
    auto& c = check("shape");
    fail(c, "system sized for a different graph");
    return report;
  }

  auto& same_group = check("same-group-ranges-disjoint");
  for (GroupRef ref : g.all_groups()) {
    const Group& grp = g.group(ref);
    for (std::size_t i = 0; i < grp.size(); ++i) {
      for (std::size_t j = i + 1; j < grp.size(); ++j) {
        if (!intersect(bs.range(grp[i]), bs.range(grp[j])).empty()) {
          fail(same_group, edge_name(g, grp[i]) + "," + edge_name(g, grp[j]));
        }
      }
    }
  }

  auto& domains = check("vertex-domains-disjoint");
  for (std::size_t u = 0; u < g.vertex_count(); ++u) {
    for (std::size_t w = u + 1; w < g.vertex_count(); ++w) {
      if (!intersect(IntervalUnion(bs.domains[u]), IntervalUnion(bs.domains[w]))
               .empty()) {
        fail(domains, g.vertex_name(VertexId{u}) + "," +
                          g.vertex_name(VertexId{w}));
      }
    }
  }

  auto& inside = check("range-inside-source-domain");
  for (std::size_t ei = 0; ei < g.edge_count(); ++ei) {
    EdgeId e{ei};
    if (!is_subset(bs.range(e), IntervalUnion(bs.domain(g.source(e))))) {
      fail(inside, edge_name(g, e));
    }
  }

  auto& covers = check("s-group-covers-domain");
  for (GroupRef ref : g.s_members()) {
    if (group_union(bs, g.group(ref)) !=
        IntervalUnion(bs.domain(ref.vertex))) {
      fail(covers, g.group_label(ref));
    }
  }

  auto& bijection = check("map-is-bijection");
  for (std::size_t ei = 0; ei < g.edge_count(); ++ei) {
    EdgeId e{ei};
    const auto& f = bs.map(e);
    Rational image_length;
    for (const auto& p : f.pieces()) image_length += p.image().length();
    IntervalUnion image = f.image();
    if (f.domain() != IntervalUnion(bs.domain(g.range(e)))) {
      fail(bijection, edge_name(g, e) + " domain");
    }
    if (image != bs.range(e) || image_length != total_length(image)) {
      fail(bijection, edge_name(g, e) + " image");
    }
  }

  auto& meet = check("cross-group-ranges-meet");
  auto& proper = check("non-s-union-proper");
  auto& distinct = check("non-s-unions-distinct");
  for (std::size_t vi = 0; vi < g.vertex_count(); ++vi) {
    VertexId v{vi};
    const auto& cv = g.groups(v);
    const IntervalUnion dv(bs.domain(v));
    std::vector<std::optional<IntervalUnion>> non_s_unions(cv.size());
    for (std::size_t x = 0; x < cv.size(); ++x) {
      for (std::size_t y = x + 1; y < cv.size(); ++y) {
        for (EdgeId e : cv[x]) {
          for (EdgeId f : cv[y]) {
            if (intersect(bs.range(e), bs.range(f)).empty()) {
              fail(meet, edge_name(g, e) + "," + edge_name(g, f));
            }
          }
        }
      }
      if (!g.in_s(GroupRef{v, x})) {
        IntervalUnion u = group_union(bs, cv[x]);
        if (u == dv || !is_subset(u, dv)) {
          fail(proper, g.group_label(GroupRef{v, x}));
        }
        non_s_unions[x] = std::move(u);
      }
    }
    for (std::size_t x = 0; x < cv.size(); ++x) {
      for (std::size_t y = x + 1; y < cv.size(); ++y) {
        if (non_s_unions[x] && non_s_unions[y] &&
            *non_s_unions[x] == *non_s_unions[y]) {
          fail(distinct, g.group_label(GroupRef{v, x}) + "," +
                             g.group_label(GroupRef{v, y}));
        }
      }
    }
  }
  return report;
}

IntervalUnion region(const SeparatedGraph& g, const BranchingSystem& bs,
                     VertexId v, std::span<const RegionPick> picks) {
  if (v.index >= g.vertex_count()) {
    throw std::invalid_argument("region: vertex out of range");
  }
  IntervalUnion dv(bs.domain(v));
  IntervalUnion out = dv;
  std::vector<std::size_t> seen;
  for (const auto& pick : picks) {
    if (pick.group.vertex != v || pick.group.index >= g.groups(v).size()) {
      throw std::invalid_argument("region: group " + g.group_label(pick.group) +
                                  " is not in C_" + g.vertex_name(v));
    }
    if (std::find(seen.begin(), seen.end(), pick.group.index) != seen.end()) {
      throw std::invalid_argument("region: group " + g.group_label(pick.group) +
                                  " picked twice");
    }
    seen.push_back(pick.group.index);
    const Group& grp = g.group(pick.group);
    if (pick.edge) {
      if (std::find(grp.begin(), grp.end(), *pick.edge) == grp.end()) {
        throw std::invalid_argument("region: edge " + edge_name(g, *pick.edge) +
                                    " not in group " +
                                    g.group_label(pick.group));
      }
      out = intersect(out, bs.range(*pick.edge));
    } else {
      if (g.in_s(pick.group)) {
        throw std::invalid_argument("region: complement of S-group " +
                                    g.group_label(pick.group));
      }
      out = intersect(out, difference(dv, group_union(bs, grp)));
    }
  }
  return out;
}

RegionSweepReport region_sweep(const SeparatedGraph& g,
                               const BranchingSystem& bs,
                               std::size_t max_cases) {
  RegionSweepReport report;
  for (std::size_t vi = 0; vi < g.vertex_count(); ++vi) {
    VertexId v{vi};
    const auto& cv = g.groups(v);
    if (cv.empty()) continue;
    const IntervalUnion dv(bs.domain(v));
    std::vector<IntervalUnion> complements;
    for (std::size_t k = 0; k < cv.size(); ++k) {
      complements.push_back(difference(dv, group_union(bs, cv[k])));
    }
    std::vector<std::string> labels;
    std::function<void(std::size_t, const IntervalUnion&)> walk =
        [&](std::size_t k, const IntervalUnion& acc) {
          if (report.truncated) return;
          if (k == cv.size()) {
            if (++report.cases > max_cases) {
              report.truncated = true;
              return;
            }
            if (acc.empty()) {
              std::string s = g.vertex_name(v) + ": ";
              for (const auto& l : labels) s += l + " ";
              report.empty_regions.push_back(s);
            }
            return;
          }
          walk(k + 1, acc);
          for (EdgeId e : cv[k]) {
            labels.push_back(edge_name(g, e));
            walk(k + 1, intersect(acc, bs.range(e)));
            labels.pop_back();
          }
          if (!g.in_s(GroupRef{v, k})) {
            labels.push_back("~" + g.group_label(GroupRef{v, k}));
            walk(k + 1, intersect(acc, complements[k]));
            labels.pop_back();
          }
        };
    walk(0, dv);
  }
  return report;
}

std::string show_intervals(const SeparatedGraph& g, const BranchingSystem& bs) {
  std::ostringstream out;
  for (std::size_t vi = 0; vi < g.vertex_count(); ++vi) {
    out << "D " << g.vertex_name(VertexId{vi}) << " = "
        << IntervalUnion(bs.domains[vi]).str() << "\n";
  }
  for (std::size_t ei = 0; ei < g.edge_count(); ++ei) {
    out << "R " << g.edges()[ei].name << " = " << bs.ranges[ei].str() << "\n";
  }
  for (std::size_t ei = 0; ei < g.edge_count(); ++ei) {
    out << "f " << g.edges()[ei].name << ":\n";
    for (const auto& p : bs.maps[ei].pieces()) {
      out << "  (" << p.domain().str() << ", " << p.slope() << ", "
          << p.offset() << ")\n";
    }
  }
  return out.str();
}

}  // namespace clbs
