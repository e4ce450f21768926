#include <doctest.h>

#include <algorithm>

#include "clbs/graph.hpp"
#include "support/fixtures.hpp"
#include "support/random_graphs.hpp"

using namespace clbs;

namespace {

std::vector<Violation::Kind> kinds(const SeparatedGraph& g) {
  std::vector<Violation::Kind> out;
  for (const auto& v : validate(g)) out.push_back(v.kind);
  return out;
}

bool has(const std::vector<Violation::Kind>& ks, Violation::Kind k) {
  return std::find(ks.begin(), ks.end(), k) != ks.end();
}

const char* kTwoEdges = R"({
  "vertices": ["a", "b"],
  "edges": [{"name": "x", "source": "a", "range": "b"},
            {"name": "y", "source": "a", "range": "a"}],
  "groups": {"a": [GROUPS]},
  "S": [SMEMBERS]
})";

std::string two_edges(const std::string& groups, const std::string& s = "") {
  std::string t = kTwoEdges;
  t.replace(t.find("GROUPS"), 6, groups);
  t.replace(t.find("SMEMBERS"), 8, s);
  return t;
}

}  // namespace

TEST_CASE("Example 1 loads, validates and classifies") {
  auto g = clbs::testing::example1();
  CHECK(g.vertex_count() == 5);
  CHECK(g.edge_count() == 4);
  CHECK(g.groups(VertexId{0}).size() == 2);
  CHECK_FALSE(g.in_s(GroupRef{VertexId{0}, 0}));
  CHECK(g.in_s(GroupRef{VertexId{0}, 1}));
  CHECK(g.group_label(GroupRef{VertexId{0}, 1}) == "v0:1");
  CHECK(g.group_of(EdgeId{2}) == GroupRef{VertexId{0}, 1});
  CHECK(g.is_sink(VertexId{3}));
  CHECK(g.find_edge("e4") == EdgeId{3});
  CHECK_FALSE(g.find_vertex("v9").has_value());
  CHECK(validate(g).empty());
  auto cls = classify(g);
  CHECK(cls.faithful_class());
  CHECK(cls.sinks.size() == 4);
}

TEST_CASE("save and parse round trip") {
  auto g = clbs::testing::example1();
  CHECK(parse_graph(save_graph(g)) == g);
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    auto r = clbs::testing::random_graph(seed);
    CHECK(validate(r).empty());
    CHECK(parse_graph(save_graph(r)) == r);
  }
}

TEST_CASE("groups and S are optional") {
  auto g = parse_graph(R"({"vertices": ["a", "b"],
                           "edges": [{"name": "x", "source": "a", "range": "b"}]})");
  CHECK(has(kinds(g), Violation::Kind::partition_incomplete));
  auto sinks = parse_graph(R"({"vertices": ["a"], "edges": []})");
  CHECK(validate(sinks).empty());
}

TEST_CASE("validation finds each violation kind") {
  using K = Violation::Kind;
  CHECK(validate(parse_graph(two_edges(R"(["x"], ["y"])"))).empty());
  CHECK(has(kinds(parse_graph(two_edges(R"(["x"])"))), K::partition_incomplete));
  CHECK(has(kinds(parse_graph(two_edges(R"(["x", "y"], ["y"])"))), K::groups_overlap));
  CHECK(has(kinds(parse_graph(two_edges(R"(["x", "y"], [])"))), K::empty_group));
  CHECK(has(kinds(parse_graph(two_edges(R"(["x", "y"])", R"({"vertex": "a", "group_index": 3})"))),
            K::s_undeclared_group));
  CHECK(has(kinds(parse_graph(two_edges(R"(["x", "y"])",
                                        R"({"vertex": "a", "group_index": 0},
                                           {"vertex": "a", "group_index": 0})"))),
            K::s_duplicate));

  auto wrong_source = parse_graph(R"({
    "vertices": ["a", "b"],
    "edges": [{"name": "x", "source": "a", "range": "b"}],
    "groups": {"a": [["x"]], "b": [["x"]]}})");
  auto ks = kinds(wrong_source);
  CHECK((has(ks, K::edge_wrong_source) || has(ks, K::sink_has_groups)));

  auto sink_groups = parse_graph(R"({
    "vertices": ["a", "b"],
    "edges": [{"name": "x", "source": "a", "range": "b"}],
    "groups": {"a": [["x"]], "b": [[]]}})");
  CHECK(has(kinds(sink_groups), K::sink_has_groups));
}

TEST_CASE("load_graph reports every violation") {
  try {
    load_graph(two_edges(R"(["x"], ["x"])"));
    FAIL("expected a validation error");
  } catch (const GraphValidationError& e) {
    CHECK(e.violations().size() >= 2);
  }
}

TEST_CASE("parse errors carry a location") {
  CHECK_THROWS_AS(parse_graph("{"), GraphParseError);
  CHECK_THROWS_AS(parse_graph("[]"), GraphParseError);
  CHECK_THROWS_AS(parse_graph(R"({"vertices": ["a", "a"], "edges": []})"),
                  GraphParseError);
  CHECK_THROWS_AS(parse_graph(R"({"vertices": ["a"], "edges": [{"name": "a", "source": "a", "range": "a"}]})"),
                  GraphParseError);
  try {
    parse_graph("{\"vertices\": [\"a\"],\n \"edges\": [{\"name\": \"x\", \"source\": \"a\", \"range\": \"zz\"}]}");
    FAIL("expected a parse error");
  } catch (const GraphParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() > 1);
  }
}

TEST_CASE("violation text names the kind and place") {
  Violation v{Violation::Kind::groups_overlap, "v0", "e1"};
  CHECK(v.str() == "groups-overlap at v0 (e1)");
  CHECK(to_string(Violation::Kind::s_undeclared_group) == "s-undeclared-group");
}
