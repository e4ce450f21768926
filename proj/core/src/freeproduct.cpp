#include "clbs/freeproduct.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

namespace clbs {

Decomposition decompose(const SeparatedGraph& g) {
  Decomposition d;
  const auto colors = g.all_groups();
  for (std::size_t k = 0; k < colors.size(); ++k) {
    const GroupRef ref = colors[k];
    std::vector<std::string> names;
    names.reserve(g.vertex_count());
    for (const auto& v : g.vertex_names()) {
      names.push_back(v + "_X" + std::to_string(k));
    }
    std::vector<Edge> edges;
    Group local;
    for (EdgeId e : g.group(ref)) {
      const Edge& orig = g.edge(e);
      local.push_back(EdgeId{edges.size()});
      edges.push_back(Edge{orig.name, orig.source, orig.range});
    }
    std::vector<std::vector<Group>> groups(g.vertex_count());
    groups[ref.vertex.index].push_back(std::move(local));
    std::vector<GroupRef> s;
    const bool in_s = g.in_s(ref);
    if (in_s) s.push_back(GroupRef{ref.vertex, 0});
    d.factors.push_back(ColorFactor{
        ref,
        SeparatedGraph(std::move(names), std::move(edges), std::move(groups),
                       std::move(s)),
        g.group(ref), in_s});
  }
  for (std::size_t a = 0; a < colors.size(); ++a) {
    for (std::size_t b = a + 1; b < colors.size(); ++b) {
      for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        d.amalgamation.identifications.push_back(Identification{VertexId{v}, a, b});
      }
    }
  }
  return d;
}

std::string factor_file_name(std::size_t color) {
  return "color_" + std::to_string(color) + ".json";
}

std::string identification_manifest(const SeparatedGraph& g,
                                    const Decomposition& d) {
  nlohmann::ordered_json doc;
  nlohmann::ordered_json colors = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < d.factors.size(); ++k) {
    const auto& f = d.factors[k];
    nlohmann::ordered_json edges = nlohmann::ordered_json::array();
    for (EdgeId e : f.edges) edges.push_back(g.edge(e).name);
    colors.push_back({{"color", k},
                      {"group", g.group_label(f.group)},
                      {"in_S", f.in_s},
                      {"edges", std::move(edges)},
                      {"file", factor_file_name(k)}});
  }
  doc["colors"] = std::move(colors);
  nlohmann::ordered_json ids = nlohmann::ordered_json::array();
  for (const auto& id : d.amalgamation.identifications) {
    const auto& fa = d.factors[id.color_a].graph;
    const auto& fb = d.factors[id.color_b].graph;
    ids.push_back({{"vertex", g.vertex_name(id.vertex)},
                   {"copies", {fa.vertex_name(id.vertex), fb.vertex_name(id.vertex)}}});
  }
  doc["identifications"] = std::move(ids);
  return doc.dump(2) + "\n";
}

bool IsoReport::all_passed() const {
  return edge_partition_ok && round_trip_ok && problems.empty() &&
         forward_relations == expected_forward &&
         backward_relations == expected_backward &&
         std::all_of(verdicts.begin(), verdicts.end(),
                     [](const IsoVerdict& v) { return v.passed; });
}

namespace {

using K = Generator::Kind;

// Term model for A/I: factor relations read off the factor graphs, with every
// vertex copy renamed to colour 0 before rewriting.
class FreeProductModel {
 public:
  FreeProductModel(const SeparatedGraph& g, const Decomposition& d,
                   const SelectedEdges& sel)
      : d_(d), sel_(sel), local_(g.edge_count()) {
    for (std::size_t k = 0; k < d.factors.size(); ++k) {
      const auto& edges = d.factors[k].edges;
      for (std::size_t j = 0; j < edges.size(); ++j) {
        local_.at(edges[j].index) = {k, j};
      }
    }
  }

  FactorElement reduce(const FactorElement& x) const {
    FactorElement renamed = rename(x);
    return rewrite_to_normal_form(
        renamed,
        [this](const FactorGenerator& a, const FactorGenerator& b) {
          return rule(a, b);
        },
        [this](const std::vector<FactorGenerator>& w) { return measure(w); });
  }

  static FactorElement rename(const FactorElement& x) {
    FactorElement out;
    for (const auto& [w, c] : x.terms()) {
      auto r = w;
      for (auto& gen : r) {
        if (gen.kind == K::vertex) gen.color = 0;
      }
      out.add(r, c);
    }
    return out;
  }

 private:
  const ColorFactor& factor_of(std::size_t edge) const {
    return d_.factors.at(local_.at(edge).first);
  }
  EdgeId local(std::size_t edge) const { return EdgeId{local_.at(edge).second}; }
  std::size_t color(std::size_t edge) const { return local_.at(edge).first; }
  std::size_t src(std::size_t edge) const {
    return factor_of(edge).graph.source(local(edge)).index;
  }
  std::size_t rng(std::size_t edge) const {
    return factor_of(edge).graph.range(local(edge)).index;
  }
  bool selected(std::size_t edge) const {
    const ColorFactor& f = factor_of(edge);
    if (!f.in_s) return false;
    auto s = sel_.selected(f.group);
    return s && s->index == edge;
  }

  static FactorElement one(FactorGenerator gen) {
    return FactorElement(std::vector<FactorGenerator>{gen});
  }

  std::optional<FactorElement> rule(const FactorGenerator& a,
                                    const FactorGenerator& b) const {
    const FactorElement zero;
    const FactorGenerator vtx{K::vertex, 0, 0};
    switch (a.kind) {
      case K::vertex:
        switch (b.kind) {
          case K::vertex:
            return a == b ? one(a) : zero;
          case K::edge:
            return a.id == src(b.id) ? one(b) : zero;
          case K::ghost:
            return a.id == rng(b.id) ? one(b) : zero;
        }
        break;
      case K::edge:
        switch (b.kind) {
          case K::vertex:
            return b.id == rng(a.id) ? one(a) : zero;
          case K::edge:
            if (rng(a.id) != src(b.id)) return zero;
            return std::nullopt;
          case K::ghost:
            if (rng(a.id) != rng(b.id)) return zero;
            if (a.id == b.id && selected(a.id)) {
              FactorElement out = one({K::vertex, src(a.id), 0});
              for (EdgeId e : factor_of(a.id).edges) {
                if (e.index == a.id) continue;
                out.add({FactorGenerator{K::edge, e.index, color(e.index)},
                         FactorGenerator{K::ghost, e.index, color(e.index)}},
                        -1);
              }
              return out;
            }
            return std::nullopt;
        }
        break;
      case K::ghost:
        switch (b.kind) {
          case K::vertex:
            return b.id == src(a.id) ? one(a) : zero;
          case K::edge:
            if (src(a.id) != src(b.id)) return zero;
            if (color(a.id) == color(b.id)) {
              if (a.id != b.id) return zero;
              FactorGenerator r = vtx;
              r.id = rng(a.id);
              return one(r);
            }
            return std::nullopt;
          case K::ghost:
            if (src(a.id) != rng(b.id)) return zero;
            return std::nullopt;
        }
        break;
    }
    return std::nullopt;
  }

  std::pair<std::size_t, std::size_t> measure(
      const std::vector<FactorGenerator>& w) const {
    std::size_t pairs = 0;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i].kind == K::edge && w[i + 1].kind == K::ghost &&
          w[i].id == w[i + 1].id && selected(w[i].id)) {
        ++pairs;
      }
    }
    return {w.size(), pairs};
  }

  const Decomposition& d_;
  const SelectedEdges& sel_;
  std::vector<std::pair<std::size_t, std::size_t>> local_;
};

std::size_t home_color(const SeparatedGraph& g, const Decomposition& d,
                       VertexId v) {
  for (std::size_t k = 0; k < d.factors.size(); ++k) {
    if (d.factors[k].group.vertex == v) return k;
  }
  for (std::size_t k = 0; k < d.factors.size(); ++k) {
    for (EdgeId e : d.factors[k].edges) {
      if (g.range(e) == v) return k;
    }
  }
  return 0;
}

}  // namespace

IsoReport check_iso_on_relations(const SeparatedGraph& g,
                                 const Decomposition& d,
                                 const SelectedEdges& sel) {
  if (d.factors.empty()) {
    throw PreconditionError("graph has no groups; nothing to amalgamate");
  }
  IsoReport report;

  std::vector<std::size_t> edge_color(g.edge_count(), d.factors.size());
  std::vector<std::size_t> seen(g.edge_count(), 0);
  for (std::size_t k = 0; k < d.factors.size(); ++k) {
    for (EdgeId e : d.factors[k].edges) {
      if (e.index >= g.edge_count()) {
        report.problems.push_back("factor edge out of range");
        continue;
      }
      ++seen[e.index];
      edge_color[e.index] = k;
    }
  }
  report.edge_partition_ok =
      std::all_of(seen.begin(), seen.end(), [](std::size_t n) { return n == 1; });
  if (!report.edge_partition_ok) {
    report.problems.push_back("edges are not partitioned by the factors");
    return report;
  }

  auto psi_gen = [&](const Generator& gen) {
    if (gen.is_vertex()) {
      return FactorGenerator{K::vertex, gen.id,
                             home_color(g, d, gen.as_vertex())};
    }
    return FactorGenerator{gen.kind, gen.id, edge_color[gen.id]};
  };
  auto psi = [&](const Element& x) {
    FactorElement out;
    for (const auto& [w, c] : x.terms()) {
      std::vector<FactorGenerator> fw;
      for (const auto& gen : w) fw.push_back(psi_gen(gen));
      out.add(fw, c);
    }
    return out;
  };
  auto phi_gen = [](const FactorGenerator& f) { return Generator{f.kind, f.id}; };

  FreeProductModel model(g, d, sel);
  for (const auto& rel : defining_relations(g)) {
    ++report.forward_relations;
    report.verdicts.push_back(
        {"forward", rel.name, model.reduce(psi(rel.element)).is_zero()});
  }

  for (std::size_t k = 0; k < d.factors.size(); ++k) {
    const ColorFactor& f = d.factors[k];
    SelectedEdges local_sel;
    for (const auto& rel : defining_relations(f.graph)) {
      Element pulled;
      for (const auto& [w, c] : rel.element.terms()) {
        Word mapped;
        for (const auto& gen : w) {
          // factor vertex copies keep the original index
          mapped.push_back(gen.is_vertex()
                               ? gen
                               : Generator{gen.kind, f.edges.at(gen.id).index});
        }
        pulled.add(mapped, c);
      }
      ++report.backward_relations;
      report.verdicts.push_back({"backward",
                                 "X" + std::to_string(k) + " " + rel.name,
                                 reduce(pulled, g, sel).is_zero()});
    }
  }
  for (const auto& id : d.amalgamation.identifications) {
    FactorElement gen;
    gen.add({FactorGenerator{K::vertex, id.vertex.index, id.color_a}}, 1);
    gen.add({FactorGenerator{K::vertex, id.vertex.index, id.color_b}}, -1);
    Element pulled;
    for (const auto& [w, c] : gen.terms()) {
      Word mapped;
      for (const auto& fg : w) mapped.push_back(phi_gen(fg));
      pulled.add(mapped, c);
    }
    ++report.backward_relations;
    report.verdicts.push_back(
        {"backward",
         "identify " + g.vertex_name(id.vertex) + "_X" +
             std::to_string(id.color_a) + "," + g.vertex_name(id.vertex) +
             "_X" + std::to_string(id.color_b),
         reduce(pulled, g, sel).is_zero()});
  }

  // generator round trips
  report.round_trip_ok = true;
  std::vector<Generator> gens;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    gens.push_back(Generator::vertex(VertexId{v}));
  }
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    gens.push_back(Generator::edge(EdgeId{e}));
    gens.push_back(Generator::ghost(EdgeId{e}));
  }
  for (const auto& gen : gens) {
    if (phi_gen(psi_gen(gen)) != gen) {
      report.round_trip_ok = false;
      report.problems.push_back("round trip L -> A/I -> L moved a generator");
    }
  }
  for (std::size_t k = 0; k < d.factors.size(); ++k) {
    std::vector<FactorGenerator> fgens;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      fgens.push_back({K::vertex, v, k});
    }
    for (EdgeId e : d.factors[k].edges) {
      fgens.push_back({K::edge, e.index, k});
      fgens.push_back({K::ghost, e.index, k});
    }
    for (const auto& fg : fgens) {
      FactorElement there = FreeProductModel::rename(FactorElement(std::vector<FactorGenerator>{psi_gen(phi_gen(fg))}));
      FactorElement here = FreeProductModel::rename(FactorElement(std::vector<FactorGenerator>{fg}));
      if (there != here) {
        report.round_trip_ok = false;
        report.problems.push_back("round trip A/I -> L -> A/I moved a generator");
      }
    }
  }

  const std::size_t nv = g.vertex_count();
  std::size_t sck1 = 0, s_count = 0, backward = 0;
  for (GroupRef ref : g.all_groups()) {
    const std::size_t x = g.group(ref).size();
    sck1 += x * x;
    if (g.in_s(ref)) ++s_count;
    backward += nv * nv + 4 * x + x * x + (g.in_s(ref) ? 1 : 0);
  }
  const std::size_t colors = d.factors.size();
  report.expected_forward = nv * nv + 4 * g.edge_count() + sck1 + s_count;
  report.expected_backward = backward + colors * (colors - 1) / 2 * nv;
  return report;
}

}  // namespace clbs
