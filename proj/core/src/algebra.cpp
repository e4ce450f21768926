#include "clbs/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <utility>

namespace clbs {

Element monomial(Word w, Rational c) { return Element(std::move(w), c); }
Element vertex_element(VertexId v) { return monomial({Generator::vertex(v)}); }
Element edge_element(EdgeId e) { return monomial({Generator::edge(e)}); }
Element ghost_element(EdgeId e) { return monomial({Generator::ghost(e)}); }

Word star(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (auto& gen : out) {
    if (gen.kind == Generator::Kind::edge) {
      gen.kind = Generator::Kind::ghost;
    } else if (gen.kind == Generator::Kind::ghost) {
      gen.kind = Generator::Kind::edge;
    }
  }
  return out;
}

Element star(const Element& x) {
  Element out;
  for (const auto& [w, c] : x.terms()) out.add(star(w), c);
  return out;
}

SelectedEdges SelectedEdges::defaults(const SeparatedGraph& g) {
  SelectedEdges sel;
  for (GroupRef ref : g.s_members()) {
    if (ref.vertex.index < g.vertex_count() &&
        ref.index < g.groups(ref.vertex).size() && !g.group(ref).empty()) {
      sel.choice_[ref] = g.group(ref).front();
    }
  }
  return sel;
}

void SelectedEdges::select(const SeparatedGraph& g, GroupRef group, EdgeId e) {
  if (!g.in_s(group)) {
    throw std::invalid_argument("group " + g.group_label(group) +
                                " is not in S");
  }
  const Group& grp = g.group(group);
  if (std::find(grp.begin(), grp.end(), e) == grp.end()) {
    throw std::invalid_argument("edge " + g.edge(e).name + " is not in group " +
                                g.group_label(group));
  }
  choice_[group] = e;
}

SelectedEdges SelectedEdges::parse(const SeparatedGraph& g,
                                   std::string_view spec) {
  SelectedEdges sel = defaults(g);
  std::size_t pos = 0;
  while (pos < spec.size()) {
    std::size_t comma = spec.find(',', pos);
    if (comma == std::string_view::npos) comma = spec.size();
    std::string_view item = spec.substr(pos, comma - pos);
    pos = comma + 1;
    if (item.empty()) continue;
    auto eq = item.find('=');
    auto colon = item.find(':');
    if (eq == std::string_view::npos || colon == std::string_view::npos ||
        colon > eq) {
      throw std::invalid_argument("selection '" + std::string(item) +
                                  "' is not of the form vertex:index=edge");
    }
    auto vname = item.substr(0, colon);
    auto index_text = item.substr(colon + 1, eq - colon - 1);
    auto ename = item.substr(eq + 1);
    auto v = g.find_vertex(vname);
    auto e = g.find_edge(ename);
    if (!v) throw std::invalid_argument("unknown vertex '" + std::string(vname) + "'");
    if (!e) throw std::invalid_argument("unknown edge '" + std::string(ename) + "'");
    if (index_text.empty() ||
        !std::all_of(index_text.begin(), index_text.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      throw std::invalid_argument("bad group index in '" + std::string(item) + "'");
    }
    std::size_t idx = std::stoul(std::string(index_text));
    if (idx >= g.groups(*v).size()) {
      throw std::invalid_argument("no group " + std::string(item.substr(0, eq)));
    }
    sel.select(g, GroupRef{*v, idx}, *e);
  }
  return sel;
}

std::optional<EdgeId> SelectedEdges::selected(GroupRef group) const {
  auto it = choice_.find(group);
  if (it == choice_.end()) return std::nullopt;
  return it->second;
}

bool SelectedEdges::is_selected(const SeparatedGraph& g, EdgeId e) const {
  auto grp = g.group_of(e);
  if (!grp) return false;
  auto s = selected(*grp);
  return s && *s == e;
}

namespace {

using K = Generator::Kind;

class Rules {
 public:
  Rules(const SeparatedGraph& g, const SelectedEdges& sel) : g_(g), sel_(sel) {}

  std::optional<Element> operator()(const Generator& a,
                                    const Generator& b) const {
    const Element zero;
    auto keep = [](const Generator& x) { return monomial({x}); };
    switch (a.kind) {
      case K::vertex:
        switch (b.kind) {
          case K::vertex:
            return a == b ? keep(a) : zero;
          case K::edge:
            return a.as_vertex() == g_.source(b.as_edge()) ? keep(b) : zero;
          case K::ghost:
            return a.as_vertex() == g_.range(b.as_edge()) ? keep(b) : zero;
        }
        break;
      case K::edge: {
        EdgeId e = a.as_edge();
        switch (b.kind) {
          case K::vertex:
            return b.as_vertex() == g_.range(e) ? keep(a) : zero;
          case K::edge:
            if (g_.range(e) != g_.source(b.as_edge())) return zero;
            return std::nullopt;
          case K::ghost:
            if (g_.range(e) != g_.range(b.as_edge())) return zero;
            if (b.id == a.id && sel_.is_selected(g_, e)) return expand(e);
            return std::nullopt;
        }
        break;
      }
      case K::ghost: {
        EdgeId e = a.as_edge();
        switch (b.kind) {
          case K::vertex:
            return b.as_vertex() == g_.source(e) ? keep(a) : zero;
          case K::edge: {
            EdgeId f = b.as_edge();
            if (g_.source(e) != g_.source(f)) return zero;
            auto ge = g_.group_of(e);
            if (ge && ge == g_.group_of(f)) {
              return e == f ? keep(Generator::vertex(g_.range(e))) : zero;
            }
            return std::nullopt;
          }
          case K::ghost:
            if (g_.source(e) != g_.range(b.as_edge())) return zero;
            return std::nullopt;
        }
        break;
      }
    }
    return std::nullopt;
  }

  // (length, number of adjacent e_X e_X* factors)
  std::pair<std::size_t, std::size_t> measure(const Word& w) const {
    std::size_t pairs = 0;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i].is_edge() && w[i + 1].is_ghost() && w[i].id == w[i + 1].id &&
          sel_.is_selected(g_, w[i].as_edge())) {
        ++pairs;
      }
    }
    return {w.size(), pairs};
  }

 private:
  // e_X e_X* = s(e_X) − Σ_{e∈X∖e_X} e e*
  Element expand(EdgeId selected) const {
    Element out = vertex_element(g_.source(selected));
    for (EdgeId e : g_.group(*g_.group_of(selected))) {
      if (e == selected) continue;
      out.add({Generator::edge(e), Generator::ghost(e)}, -1);
    }
    return out;
  }

  const SeparatedGraph& g_;
  const SelectedEdges& sel_;
};

}  // namespace

Element reduce(const Element& x, const SeparatedGraph& g,
               const SelectedEdges& sel) {
  Rules rules(g, sel);
  return rewrite_to_normal_form(
      x, rules, [&rules](const Word& w) { return rules.measure(w); });
}

bool is_reducible(const Word& w, const SeparatedGraph& g,
                  const SelectedEdges& sel) {
  Rules rules(g, sel);
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (rules(w[i], w[i + 1])) return true;
  }
  return false;
}

std::vector<NamedRelation> defining_relations(const SeparatedGraph& g) {
  std::vector<NamedRelation> out;
  const std::size_t nv = g.vertex_count();
  for (std::size_t u = 0; u < nv; ++u) {
    for (std::size_t w = 0; w < nv; ++w) {
      const VertexId vu{u}, vw{w};
      Element prod = vertex_element(vu) * vertex_element(vw);
      if (u == w) {
        out.push_back({"idempotent " + g.vertex_name(vu),
                       prod - vertex_element(vu)});
      } else {
        out.push_back({"orthogonal " + g.vertex_name(vu) + "," +
                           g.vertex_name(vw),
                       prod});
      }
    }
  }
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const EdgeId e{i};
    const std::string& n = g.edge(e).name;
    const Element s = vertex_element(g.source(e));
    const Element r = vertex_element(g.range(e));
    const Element ee = edge_element(e);
    const Element gh = ghost_element(e);
    out.push_back({"source-absorb " + n, s * ee - ee});
    out.push_back({"range-absorb " + n, ee * r - ee});
    out.push_back({"ghost-range-absorb " + n, r * gh - gh});
    out.push_back({"ghost-source-absorb " + n, gh * s - gh});
  }
  for (GroupRef ref : g.all_groups()) {
    for (EdgeId e : g.group(ref)) {
      for (EdgeId f : g.group(ref)) {
        Element x = ghost_element(e) * edge_element(f);
        if (e == f) x -= vertex_element(g.range(e));
        out.push_back({"group-orthogonality " + g.edge(e).name + "," +
                           g.edge(f).name,
                       std::move(x)});
      }
    }
  }
  for (GroupRef ref : g.s_members()) {
    Element x = -Rational(1) * vertex_element(ref.vertex);
    for (EdgeId e : g.group(ref)) x += edge_element(e) * ghost_element(e);
    out.push_back({"group-sum " + g.group_label(ref), std::move(x)});
  }
  return out;
}

SpanningSet spanning_set(const SeparatedGraph& g, const SelectedEdges& sel,
                         std::size_t length_bound) {
  if (!classify(g).faithful_class()) {
    throw PreconditionError(
        "spanning_set needs a common source, injective range and no loops");
  }
  std::set<Word, ShortLex> words;
  // vertices are paths of length 0; every other word here is vertex-free
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    words.insert({Generator::vertex(VertexId{v})});
  }
  auto add = [&](Word w) {
    if (!w.empty() && w.size() <= length_bound) words.insert(std::move(w));
  };
  const std::size_t ne = g.edge_count();
  for (std::size_t i = 0; i < ne; ++i) {
    EdgeId e{i};
    add({Generator::edge(e)});
    add({Generator::ghost(e)});
    if (!sel.is_selected(g, e)) add({Generator::edge(e), Generator::ghost(e)});
  }

  // Cores e1..en (n ≥ 2) with consecutive edges in different groups.
  std::vector<EdgeId> core;
  std::function<void()> extend = [&] {
    const std::size_t n = core.size();
    if (n >= 2) {
      // e1* e2 e2* ... e(n-1) e(n-1)* en
      Word middle{Generator::ghost(core[0])};
      bool interior_ok = true;
      for (std::size_t i = 1; i + 1 < n; ++i) {
        if (sel.is_selected(g, core[i])) interior_ok = false;
        middle.push_back(Generator::edge(core[i]));
        middle.push_back(Generator::ghost(core[i]));
      }
      middle.push_back(Generator::edge(core[n - 1]));
      if (interior_ok) {
        for (int lead = 0; lead < 2; ++lead) {
          if (lead && sel.is_selected(g, core.front())) continue;
          for (int trail = 0; trail < 2; ++trail) {
            if (trail && sel.is_selected(g, core.back())) continue;
            Word w;
            if (lead) w.push_back(Generator::edge(core.front()));
            w.insert(w.end(), middle.begin(), middle.end());
            if (trail) w.push_back(Generator::ghost(core.back()));
            add(std::move(w));
          }
        }
      }
    }
    // the shortest word on a core of n+1 edges has length 2n
    if (2 * n > length_bound) return;
    for (std::size_t i = 0; i < ne; ++i) {
      EdgeId e{i};
      if (!core.empty() && g.group_of(core.back()) == g.group_of(e)) continue;
      core.push_back(e);
      extend();
      core.pop_back();
    }
  };
  extend();

  SpanningSet out;
  out.words.assign(words.begin(), words.end());
  for (const auto& w : out.words) {
    if (is_reducible(w, g, sel)) out.reducible.push_back(w);
  }
  return out;
}

std::vector<Element> commutator_sample(const SeparatedGraph& g,
                                       std::size_t length_bound,
                                       CommutatorAlphabet alphabet) {
  std::vector<Generator> letters;
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    letters.push_back(Generator::edge(EdgeId{i}));
  }
  if (alphabet == CommutatorAlphabet::edges_and_ghosts) {
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
      letters.push_back(Generator::ghost(EdgeId{i}));
    }
  }
  std::vector<Word> words;
  std::vector<Word> layer{Word{}};
  for (std::size_t len = 1; len <= length_bound; ++len) {
    std::vector<Word> next;
    for (const auto& w : layer) {
      for (const auto& l : letters) {
        Word x = w;
        x.push_back(l);
        next.push_back(x);
      }
    }
    words.insert(words.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  std::vector<Element> out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    Element li = monomial(words[i]) * monomial(star(words[i]));
    for (std::size_t j = i + 1; j < words.size(); ++j) {
      Element bj = monomial(words[j]) * monomial(star(words[j]));
      Element c = li * bj - bj * li;
      if (!c.is_zero()) out.push_back(std::move(c));
    }
  }
  return out;
}

ElementParseError::ElementParseError(const std::string& what,
                                     std::size_t position)
    : std::runtime_error(what + " at position " + std::to_string(position)),
      position_(position) {}

namespace {

class ElementParser {
 public:
  ElementParser(const SeparatedGraph& g, std::string_view text)
      : g_(g), text_(text) {}

  Element parse() {
    skip_ws();
    if (peek() == '0') {
      std::size_t save = pos_;
      ++pos_;
      skip_ws();
      if (pos_ == text_.size()) return {};
      pos_ = save;
    }
    Element out;
    bool first = true;
    while (true) {
      skip_ws();
      Rational sign = 1;
      if (peek() == '+' || peek() == '-') {
        if (peek() == '-') sign = -1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      auto [word, coeff] = term();
      out.add(word, sign * coeff);
      skip_ws();
      if (pos_ == text_.size()) break;
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ElementParseError(what, pos_);
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }
  static bool name_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  std::pair<Word, Rational> term() {
    Rational coeff = 1;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      std::size_t start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (peek() == '/') {
        ++pos_;
        if (!std::isdigit(static_cast<unsigned char>(peek()))) {
          fail("expected denominator");
        }
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      }
      try {
        coeff = Rational::parse(text_.substr(start, pos_ - start));
      } catch (const std::invalid_argument& e) {
        pos_ = start;
        fail(e.what());
      }
      skip_ws();
      if (peek() != '*') fail("expected '*' after coefficient");
      ++pos_;
      skip_ws();
    }
    Word w;
    while (true) {
      w.push_back(generator());
      skip_ws();
      if (peek() != '.') break;
      ++pos_;
      skip_ws();
    }
    return {w, coeff};
  }

  Generator generator() {
    if (!name_start(peek())) fail("expected a vertex or edge name");
    std::size_t start = pos_;
    while (name_char(peek())) ++pos_;
    std::string_view name = text_.substr(start, pos_ - start);
    bool ghost = false;
    if (peek() == '^') {
      ghost = true;
      ++pos_;
    }
    if (auto v = g_.find_vertex(name)) return Generator::vertex(*v);
    if (auto e = g_.find_edge(name)) {
      return ghost ? Generator::ghost(*e) : Generator::edge(*e);
    }
    pos_ = start;
    fail("unknown name '" + std::string(name) + "'");
  }

  const SeparatedGraph& g_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Element parse_element(const SeparatedGraph& g, std::string_view text) {
  return ElementParser(g, text).parse();
}

std::string format_word(const SeparatedGraph& g, const Word& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ".";
    const auto& gen = w[i];
    switch (gen.kind) {
      case K::vertex:
        s += g.vertex_name(gen.as_vertex());
        break;
      case K::edge:
        s += g.edge(gen.as_edge()).name;
        break;
      case K::ghost:
        s += g.edge(gen.as_edge()).name + "^";
        break;
    }
  }
  return s;
}

std::string format_element(const SeparatedGraph& g, const Element& x) {
  if (x.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [w, c] : x.terms()) {
    if (first) {
      if (c.sign() < 0) s += "-";
    } else {
      s += c.sign() < 0 ? " - " : " + ";
    }
    first = false;
    Rational a = c.abs();
    if (a != Rational(1)) s += a.str() + "*";
    s += format_word(g, w);
  }
  return s;
}

}  // namespace clbs
