#include "clbs/graph.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

namespace clbs {

using nlohmann::json;
using nlohmann::ordered_json;

SeparatedGraph::SeparatedGraph(std::vector<std::string> vertices,
                               std::vector<Edge> edges,
                               std::vector<std::vector<Group>> groups,
                               std::vector<GroupRef> s_members)
    : vertices_(std::move(vertices)),
      edges_(std::move(edges)),
      groups_(std::move(groups)),
      s_members_(std::move(s_members)),
      edge_group_(edges_.size()) {
  groups_.resize(vertices_.size());
  for (std::size_t v = 0; v < groups_.size(); ++v) {
    for (std::size_t k = 0; k < groups_[v].size(); ++k) {
      for (EdgeId e : groups_[v][k]) {
        if (e.index < edge_group_.size() && !edge_group_[e.index]) {
          edge_group_[e.index] = GroupRef{VertexId{v}, k};
        }
      }
    }
  }
}

bool SeparatedGraph::in_s(GroupRef g) const {
  return std::find(s_members_.begin(), s_members_.end(), g) !=
         s_members_.end();
}

std::vector<GroupRef> SeparatedGraph::all_groups() const {
  std::vector<GroupRef> out;
  for (std::size_t v = 0; v < groups_.size(); ++v) {
    for (std::size_t k = 0; k < groups_[v].size(); ++k) {
      out.push_back(GroupRef{VertexId{v}, k});
    }
  }
  return out;
}

std::optional<GroupRef> SeparatedGraph::group_of(EdgeId e) const {
  return edge_group_.at(e.index);
}

std::vector<EdgeId> SeparatedGraph::out_edges(VertexId v) const {
  std::vector<EdgeId> out;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i].source == v) out.push_back(EdgeId{i});
  }
  return out;
}

bool SeparatedGraph::is_sink(VertexId v) const {
  return std::none_of(edges_.begin(), edges_.end(),
                      [v](const Edge& e) { return e.source == v; });
}

std::optional<VertexId> SeparatedGraph::find_vertex(std::string_view n) const {
  auto it = std::find(vertices_.begin(), vertices_.end(), n);
  if (it == vertices_.end()) return std::nullopt;
  return VertexId{static_cast<std::size_t>(it - vertices_.begin())};
}

std::optional<EdgeId> SeparatedGraph::find_edge(std::string_view n) const {
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i].name == n) return EdgeId{i};
  }
  return std::nullopt;
}

std::string SeparatedGraph::group_label(GroupRef g) const {
  std::string v = g.vertex.index < vertices_.size()
                      ? vertices_[g.vertex.index]
                      : "#" + std::to_string(g.vertex.index);
  return v + ":" + std::to_string(g.index);
}

std::string_view to_string(Violation::Kind k) {
  switch (k) {
    case Violation::Kind::partition_incomplete:
      return "partition-incomplete";
    case Violation::Kind::groups_overlap:
      return "groups-overlap";
    case Violation::Kind::empty_group:
      return "empty-group";
    case Violation::Kind::edge_wrong_source:
      return "edge-wrong-source";
    case Violation::Kind::sink_has_groups:
      return "sink-has-groups";
    case Violation::Kind::s_undeclared_group:
      return "s-undeclared-group";
    case Violation::Kind::s_duplicate:
      return "s-duplicate";
    case Violation::Kind::bad_reference:
      return "bad-reference";
  }
  return "unknown";
}

std::string Violation::str() const {
  std::string s = std::string(to_string(kind)) + " at " + where;
  if (!detail.empty()) s += " (" + detail + ")";
  return s;
}

std::vector<Violation> validate(const SeparatedGraph& g) {
  using K = Violation::Kind;
  std::vector<Violation> out;
  const std::size_t nv = g.vertex_count();
  const std::size_t ne = g.edge_count();

  for (std::size_t i = 0; i < ne; ++i) {
    const Edge& e = g.edges()[i];
    if (e.source.index >= nv || e.range.index >= nv) {
      out.push_back({K::bad_reference, e.name, "endpoint out of range"});
    }
  }

  for (std::size_t vi = 0; vi < nv; ++vi) {
    VertexId v{vi};
    const auto& cv = g.groups(v);
    const std::string& vname = g.vertex_name(v);
    auto outs = g.out_edges(v);
    if (outs.empty() && !cv.empty()) {
      out.push_back({K::sink_has_groups, vname, ""});
      continue;
    }
    std::set<std::size_t> seen;
    for (std::size_t k = 0; k < cv.size(); ++k) {
      if (cv[k].empty()) {
        out.push_back({K::empty_group, vname, "group " + std::to_string(k)});
      }
      for (EdgeId e : cv[k]) {
        if (e.index >= ne) {
          out.push_back({K::bad_reference, vname,
                         "edge #" + std::to_string(e.index)});
          continue;
        }
        if (g.source(e) != v) {
          out.push_back({K::edge_wrong_source, vname, g.edge(e).name});
        }
        if (!seen.insert(e.index).second) {
          out.push_back({K::groups_overlap, vname, g.edge(e).name});
        }
      }
    }
    for (EdgeId e : outs) {
      if (!seen.count(e.index)) {
        out.push_back({K::partition_incomplete, vname, g.edge(e).name});
      }
    }
  }

  std::set<GroupRef> s_seen;
  for (GroupRef s : g.s_members()) {
    if (s.vertex.index >= nv || s.index >= g.groups(s.vertex).size()) {
      out.push_back({K::s_undeclared_group, g.group_label(s), ""});
      continue;
    }
    if (!s_seen.insert(s).second) {
      out.push_back({K::s_duplicate, g.group_label(s), ""});
    }
  }
  return out;
}

GraphParseError::GraphParseError(const std::string& what, std::size_t line,
                                 std::size_t column)
    : std::runtime_error(what + " (line " + std::to_string(line) +
                         ", column " + std::to_string(column) + ")"),
      line_(line),
      column_(column) {}

namespace {

std::string join_violations(const std::vector<Violation>& vs) {
  std::string s = "invalid separated graph:";
  for (const auto& v : vs) s += "\n  " + v.str();
  return s;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text,
                                                std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

// Semantic errors are reported at the nth occurrence of the quoted token, which
// is where the offending declaration sits in practice.
[[noreturn]] void fail_at(std::string_view text, const std::string& what,
                          const std::string& token, std::size_t nth = 0) {
  std::string quoted = "\"" + token + "\"";
  std::size_t pos = text.find(quoted);
  for (std::size_t i = 0; i < nth && pos != std::string_view::npos; ++i) {
    pos = text.find(quoted, pos + 1);
  }
  if (pos == std::string_view::npos) throw GraphParseError(what, 0, 0);
  auto [line, col] = line_column(text, pos);
  throw GraphParseError(what, line, col);
}

const json& require(std::string_view text, const json& obj,
                    const std::string& key, json::value_t type) {
  auto it = obj.find(key);
  if (it == obj.end()) fail_at(text, "missing key '" + key + "'", key);
  if (it->type() != type &&
      !(type == json::value_t::number_unsigned &&
        it->type() == json::value_t::number_integer && it->get<long>() >= 0)) {
    fail_at(text, "key '" + key + "' has the wrong type", key);
  }
  return *it;
}

}  // namespace

GraphValidationError::GraphValidationError(std::vector<Violation> violations)
    : std::runtime_error(join_violations(violations)),
      violations_(std::move(violations)) {}

SeparatedGraph parse_graph(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw GraphParseError("malformed JSON", line, col);
  }
  if (!doc.is_object()) throw GraphParseError("top level must be an object", 1, 1);

  std::vector<std::string> vertices;
  std::unordered_map<std::string, std::size_t> vertex_index;
  for (const auto& v : require(text, doc, "vertices", json::value_t::array)) {
    if (!v.is_string()) fail_at(text, "vertex names must be strings", "vertices");
    auto name = v.get<std::string>();
    if (name.empty()) fail_at(text, "empty vertex name", "vertices");
    if (!vertex_index.emplace(name, vertices.size()).second) {
      fail_at(text, "duplicate vertex name '" + name + "'", name, 1);
    }
    vertices.push_back(name);
  }

  auto vertex_ref = [&](const std::string& name) {
    auto it = vertex_index.find(name);
    if (it == vertex_index.end()) {
      fail_at(text, "unknown vertex '" + name + "'", name);
    }
    return VertexId{it->second};
  };

  std::vector<Edge> edges;
  std::unordered_map<std::string, std::size_t> edge_index;
  for (const auto& e : require(text, doc, "edges", json::value_t::array)) {
    if (!e.is_object()) fail_at(text, "edges must be objects", "edges");
    auto name = require(text, e, "name", json::value_t::string).get<std::string>();
    auto src = require(text, e, "source", json::value_t::string).get<std::string>();
    auto rng = require(text, e, "range", json::value_t::string).get<std::string>();
    if (name.empty()) fail_at(text, "empty edge name", "edges");
    if (vertex_index.count(name)) {
      fail_at(text, "edge name '" + name + "' collides with a vertex name",
              name, 1);
    }
    if (!edge_index.emplace(name, edges.size()).second) {
      fail_at(text, "duplicate edge name '" + name + "'", name, 1);
    }
    edges.push_back(Edge{name, vertex_ref(src), vertex_ref(rng)});
  }

  std::vector<std::vector<Group>> groups(vertices.size());
  if (auto it = doc.find("groups"); it != doc.end()) {
    if (!it->is_object()) fail_at(text, "'groups' must be an object", "groups");
    for (const auto& [vname, list] : it->items()) {
      VertexId v = vertex_ref(vname);
      if (!list.is_array()) fail_at(text, "groups of '" + vname + "' must be a list", vname);
      for (const auto& grp : list) {
        if (!grp.is_array()) fail_at(text, "each group must be a list", vname);
        Group out;
        for (const auto& en : grp) {
          if (!en.is_string()) fail_at(text, "edge names must be strings", vname);
          auto ename = en.get<std::string>();
          auto ei = edge_index.find(ename);
          if (ei == edge_index.end()) {
            fail_at(text, "unknown edge '" + ename + "'", ename);
          }
          out.push_back(EdgeId{ei->second});
        }
        groups[v.index].push_back(std::move(out));
      }
    }
  }

  std::vector<GroupRef> s_members;
  if (auto it = doc.find("S"); it != doc.end()) {
    if (!it->is_array()) fail_at(text, "'S' must be a list", "S");
    for (const auto& s : *it) {
      if (!s.is_object()) fail_at(text, "S entries must be objects", "S");
      auto vname =
          require(text, s, "vertex", json::value_t::string).get<std::string>();
      auto idx = require(text, s, "group_index", json::value_t::number_unsigned)
                     .get<std::size_t>();
      s_members.push_back(GroupRef{vertex_ref(vname), idx});
    }
  }

  return SeparatedGraph(std::move(vertices), std::move(edges),
                        std::move(groups), std::move(s_members));
}

SeparatedGraph load_graph(std::string_view text) {
  SeparatedGraph g = parse_graph(text);
  if (auto vs = validate(g); !vs.empty()) throw GraphValidationError(vs);
  return g;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SeparatedGraph load_graph_file(const std::string& path) {
  return load_graph(read_text_file(path));
}

std::string save_graph(const SeparatedGraph& g) {
  ordered_json doc;
  doc["vertices"] = g.vertex_names();
  ordered_json edges = ordered_json::array();
  for (const auto& e : g.edges()) {
    edges.push_back({{"name", e.name},
                     {"source", g.vertex_name(e.source)},
                     {"range", g.vertex_name(e.range)}});
  }
  doc["edges"] = std::move(edges);
  ordered_json groups = ordered_json::object();
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const auto& cv = g.groups(VertexId{v});
    if (cv.empty()) continue;
    ordered_json list = ordered_json::array();
    for (const auto& grp : cv) {
      ordered_json names = ordered_json::array();
      for (EdgeId e : grp) names.push_back(g.edge(e).name);
      list.push_back(std::move(names));
    }
    groups[g.vertex_name(VertexId{v})] = std::move(list);
  }
  doc["groups"] = std::move(groups);
  ordered_json s = ordered_json::array();
  for (GroupRef r : g.s_members()) {
    s.push_back({{"vertex", g.vertex_name(r.vertex)}, {"group_index", r.index}});
  }
  doc["S"] = std::move(s);
  return doc.dump(2) + "\n";
}

StructureReport classify(const SeparatedGraph& g) {
  StructureReport r;
  r.common_source = true;
  r.injective_range = true;
  r.loop_free = true;
  std::set<std::size_t> ranges;
  for (const auto& e : g.edges()) {
    if (e.source != g.edges().front().source) r.common_source = false;
    if (!ranges.insert(e.range.index).second) r.injective_range = false;
    if (e.source == e.range) r.loop_free = false;
  }
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (g.is_sink(VertexId{v})) r.sinks.push_back(VertexId{v});
  }
  return r;
}

}  // namespace clbs
