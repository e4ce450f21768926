#pragma once

// Formal elements of the Cohn-Leavitt algebra L(E, C, S) over Q: rational
// combinations of words in vertices v, edges e and ghost edges e*, with the
// involution, a terminating reduction engine, and the element text syntax.

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "clbs/graph.hpp"
#include "clbs/linear_combination.hpp"

namespace clbs {

struct Generator {
  enum class Kind : std::uint8_t { vertex, edge, ghost };
  Kind kind = Kind::vertex;
  std::size_t id = 0;

  static Generator vertex(VertexId v) { return {Kind::vertex, v.index}; }
  static Generator edge(EdgeId e) { return {Kind::edge, e.index}; }
  static Generator ghost(EdgeId e) { return {Kind::ghost, e.index}; }

  [[nodiscard]] bool is_vertex() const { return kind == Kind::vertex; }
  [[nodiscard]] bool is_edge() const { return kind == Kind::edge; }
  [[nodiscard]] bool is_ghost() const { return kind == Kind::ghost; }
  [[nodiscard]] VertexId as_vertex() const { return VertexId{id}; }
  [[nodiscard]] EdgeId as_edge() const { return EdgeId{id}; }

  friend auto operator<=>(const Generator&, const Generator&) = default;
};

using Word = std::vector<Generator>;
using Element = LinearCombination<Generator>;

Element monomial(Word w, Rational c = 1);
Element vertex_element(VertexId v);
Element edge_element(EdgeId e);
Element ghost_element(EdgeId e);

/// Reverses every word and swaps edges with ghosts; vertices are fixed.
Element star(const Element& x);
Word star(const Word& w);

/// The distinguished edge e_X of each group X ∈ S.
class SelectedEdges {
 public:
  SelectedEdges() = default;

  /// First edge (declaration order) of every group in S.
  static SelectedEdges defaults(const SeparatedGraph& g);
  /// Overrides from "v0:1=e4,..." on top of the defaults. Throws
  /// std::invalid_argument for unknown groups, groups outside S, or edges
  /// outside the named group.
  static SelectedEdges parse(const SeparatedGraph& g, std::string_view spec);

  void select(const SeparatedGraph& g, GroupRef group, EdgeId e);
  [[nodiscard]] std::optional<EdgeId> selected(GroupRef group) const;
  [[nodiscard]] bool is_selected(const SeparatedGraph& g, EdgeId e) const;
  [[nodiscard]] const std::map<GroupRef, EdgeId>& choices() const {
    return choice_;
  }

 private:
  std::map<GroupRef, EdgeId> choice_;
};

/// Normal form under the rules: vertex idempotence/orthogonality,
/// vertex-edge absorption and mismatch zeros, e*f = δ r(e) inside a group,
/// composability zeros for every adjacent pair, and
/// e_X e_X* → s(e_X) − Σ_{e∈X∖e_X} e e* for X ∈ S. Rewriting is leftmost
/// first; the engine checks that (length, number of e_X e_X* factors)
/// strictly decreases at each step.
Element reduce(const Element& x, const SeparatedGraph& g,
               const SelectedEdges& sel);

/// True if some rule fires somewhere in w.
bool is_reducible(const Word& w, const SeparatedGraph& g,
                  const SelectedEdges& sel);

/// One defining relation of L(E, C, S), stored as lhs − rhs.
struct NamedRelation {
  std::string name;
  Element element;
};

/// Every instance over the graph, in a fixed order: vertex idempotence and
/// pairwise orthogonality, the four absorption laws per edge, e*f − δ r(e)
/// for all ordered pairs inside each group, and Σ_X ee* − v for X ∈ S.
std::vector<NamedRelation> defining_relations(const SeparatedGraph& g);

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SpanningSet {
  std::vector<Word> words;       // ShortLex order
  std::vector<Word> reducible;   // enumerated words the engine can rewrite
};

/// Basis-shaped words of path length ≤ bound (vertices count as 0) for a
/// graph whose edges share one
/// source, with injective range and no loops: every vertex, e, e*, and the
/// alternating words [e1] e1* e2 e2* … e(n-1) e(n-1)* en [en*] whose
/// consecutive edges lie in different groups and which contain no factor
/// e_X e_X*. Throws PreconditionError outside that graph class.
SpanningSet spanning_set(const SeparatedGraph& g, const SelectedEdges& sel,
                         std::size_t length_bound);

enum class CommutatorAlphabet { edges, edges_and_ghosts };

/// λλ*ββ* − ββ*λλ* for every unordered pair of distinct words λ, β of length
/// 1..bound over the chosen alphabet, unreduced. Pairs whose two products
/// coincide as words collect to 0 and are left out.
std::vector<Element> commutator_sample(const SeparatedGraph& g,
                                       std::size_t length_bound,
                                       CommutatorAlphabet alphabet);

class ElementParseError : public std::runtime_error {
 public:
  ElementParseError(const std::string& what, std::size_t position);
  [[nodiscard]] std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Parses `3/2*e1.e1^.v0 - v0 + e2`: terms joined by + or -, an optional
/// rational coefficient followed by '*', generators joined by '.', and a
/// trailing '^' marking a ghost edge. "0" is the zero element.
Element parse_element(const SeparatedGraph& g, std::string_view text);
std::string format_element(const SeparatedGraph& g, const Element& x);
std::string format_word(const SeparatedGraph& g, const Word& w);

}  // namespace clbs
