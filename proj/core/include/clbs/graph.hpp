#pragma once

// Separated graphs (E, C, S): a finite directed graph, an ordered partition
// C_v of the out-edges of every non-sink v, and a chosen family S of groups.
// Every ordering (vertices, edges, groups, edges within groups) is the
// declaration order and is significant downstream.

#include <compare>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace clbs {

struct VertexId {
  std::size_t index = 0;
  friend auto operator<=>(const VertexId&, const VertexId&) = default;
};

struct EdgeId {
  std::size_t index = 0;
  friend auto operator<=>(const EdgeId&, const EdgeId&) = default;
};

/// Identifies one group X ∈ C_v by its vertex and position in C_v.
struct GroupRef {
  VertexId vertex;
  std::size_t index = 0;
  friend auto operator<=>(const GroupRef&, const GroupRef&) = default;
};

struct Edge {
  std::string name;
  VertexId source;
  VertexId range;
  friend bool operator==(const Edge&, const Edge&) = default;
};

using Group = std::vector<EdgeId>;

class SeparatedGraph {
 public:
  SeparatedGraph() = default;
  /// `groups[v]` is C_v in declaration order. No validation is performed;
  /// see validate().
  SeparatedGraph(std::vector<std::string> vertices, std::vector<Edge> edges,
                 std::vector<std::vector<Group>> groups,
                 std::vector<GroupRef> s_members);

  [[nodiscard]] std::size_t vertex_count() const { return vertices_.size(); }
  [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }
  [[nodiscard]] const std::string& vertex_name(VertexId v) const {
    return vertices_.at(v.index);
  }
  [[nodiscard]] const Edge& edge(EdgeId e) const { return edges_.at(e.index); }
  [[nodiscard]] VertexId source(EdgeId e) const { return edge(e).source; }
  [[nodiscard]] VertexId range(EdgeId e) const { return edge(e).range; }

  [[nodiscard]] const std::vector<std::string>& vertex_names() const {
    return vertices_;
  }
  [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
  [[nodiscard]] const std::vector<Group>& groups(VertexId v) const {
    return groups_.at(v.index);
  }
  [[nodiscard]] const Group& group(GroupRef g) const {
    return groups_.at(g.vertex.index).at(g.index);
  }
  [[nodiscard]] const std::vector<GroupRef>& s_members() const {
    return s_members_;
  }
  [[nodiscard]] bool in_s(GroupRef g) const;

  /// Every group of C, ordered by vertex then by position in C_v.
  [[nodiscard]] std::vector<GroupRef> all_groups() const;
  /// Group containing e (first occurrence), if any.
  [[nodiscard]] std::optional<GroupRef> group_of(EdgeId e) const;
  [[nodiscard]] std::vector<EdgeId> out_edges(VertexId v) const;
  [[nodiscard]] bool is_sink(VertexId v) const;

  [[nodiscard]] std::optional<VertexId> find_vertex(std::string_view n) const;
  [[nodiscard]] std::optional<EdgeId> find_edge(std::string_view n) const;

  /// "v0:1" style label: vertex name, colon, position in C_v.
  [[nodiscard]] std::string group_label(GroupRef g) const;

  friend bool operator==(const SeparatedGraph& a, const SeparatedGraph& b) {
    return a.vertices_ == b.vertices_ && a.edges_ == b.edges_ &&
           a.groups_ == b.groups_ && a.s_members_ == b.s_members_;
  }

 private:
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Group>> groups_;
  std::vector<GroupRef> s_members_;
  std::vector<std::optional<GroupRef>> edge_group_;
};

struct Violation {
  enum class Kind {
    partition_incomplete,
    groups_overlap,
    empty_group,
    edge_wrong_source,
    sink_has_groups,
    s_undeclared_group,
    s_duplicate,
    bad_reference,
  };
  Kind kind;
  std::string where;  // vertex, edge or group label at fault
  std::string detail;

  [[nodiscard]] std::string str() const;
  friend bool operator==(const Violation&, const Violation&) = default;
};

std::string_view to_string(Violation::Kind k);

/// Empty iff the graph is a well-formed separated graph.
std::vector<Violation> validate(const SeparatedGraph& g);

class GraphParseError : public std::runtime_error {
 public:
  GraphParseError(const std::string& what, std::size_t line,
                  std::size_t column);
  [[nodiscard]] std::size_t line() const { return line_; }
  [[nodiscard]] std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class GraphValidationError : public std::runtime_error {
 public:
  explicit GraphValidationError(std::vector<Violation> violations);
  [[nodiscard]] const std::vector<Violation>& violations() const {
    return violations_;
  }

 private:
  std::vector<Violation> violations_;
};

/// Parses the JSON graph format and resolves names. Does not validate.
SeparatedGraph parse_graph(std::string_view text);
/// parse_graph followed by validate; throws GraphValidationError.
SeparatedGraph load_graph(std::string_view text);
SeparatedGraph load_graph_file(const std::string& path);
std::string read_text_file(const std::string& path);

/// Serializes in the same JSON format, preserving every ordering.
std::string save_graph(const SeparatedGraph& g);

struct StructureReport {
  bool common_source = false;
  bool injective_range = false;
  bool loop_free = false;
  std::vector<VertexId> sinks;

  /// All edges share one source, ranges are distinct and there are no loops.
  [[nodiscard]] bool faithful_class() const {
    return common_source && injective_range && loop_free;
  }
};

StructureReport classify(const SeparatedGraph& g);

}  // namespace clbs
