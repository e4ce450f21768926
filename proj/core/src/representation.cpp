#include "clbs/representation.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "clbs/random.hpp"

namespace clbs {

DeltaVector DeltaVector::delta(const Rational& p, const Rational& c) {
  DeltaVector d;
  d.add(p, c);
  return d;
}

void DeltaVector::add(const Rational& p, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = support_.try_emplace(p, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) support_.erase(it);
  }
}

Rational DeltaVector::at(const Rational& p) const {
  auto it = support_.find(p);
  return it == support_.end() ? Rational() : it->second;
}

DeltaVector& DeltaVector::operator+=(const DeltaVector& o) {
  for (const auto& [p, c] : o.support_) add(p, c);
  return *this;
}

DeltaVector& DeltaVector::operator*=(const Rational& s) {
  if (s.is_zero()) {
    support_.clear();
  } else {
    for (auto& [p, c] : support_) c *= s;
  }
  return *this;
}

std::string DeltaVector::str() const {
  if (support_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [p, c] : support_) {
    if (first) {
      if (c.sign() < 0) s += "-";
    } else {
      s += c.sign() < 0 ? " - " : " + ";
    }
    first = false;
    Rational a = c.abs();
    if (a != Rational(1)) s += a.str() + "*";
    s += "d(" + p.str() + ")";
  }
  return s;
}

DeltaVector DeltaVector::parse(std::string_view text) {
  DeltaVector out;
  std::size_t pos = 0;
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
      s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
      s.remove_suffix(1);
    return s;
  };
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view item = trim(text.substr(pos, comma - pos));
    pos = comma + 1;
    if (item.empty()) {
      if (comma == text.size()) break;
      continue;
    }
    auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      out.add(Rational::parse(item), 1);
    } else {
      out.add(Rational::parse(trim(item.substr(0, eq))),
              Rational::parse(trim(item.substr(eq + 1))));
    }
  }
  return out;
}

Representation::Representation(BranchingSystem bs) : bs_(std::move(bs)) {
  inverse_maps_.reserve(bs_.maps.size());
  for (const auto& f : bs_.maps) inverse_maps_.push_back(invert(f));
}

std::optional<Rational> Representation::act(const Generator& gen,
                                            const Rational& p) const {
  switch (gen.kind) {
    case Generator::Kind::vertex:
      if (bs_.domain(gen.as_vertex()).contains(p)) return p;
      return std::nullopt;
    case Generator::Kind::edge:
      return bs_.map(gen.as_edge()).apply(p);
    case Generator::Kind::ghost:
      return inverse_maps_.at(gen.id).apply(p);
  }
  return std::nullopt;
}

DeltaVector Representation::apply(const Element& x,
                                  const DeltaVector& phi) const {
  DeltaVector out;
  for (const auto& [w, c] : x.terms()) {
    for (const auto& [p, a] : phi.support()) {
      std::optional<Rational> q = p;
      for (auto it = w.rbegin(); it != w.rend() && q; ++it) q = act(*it, *q);
      if (q) out.add(*q, c * a);
    }
  }
  return out;
}

MonomialAction Representation::action(const Word& w) const {
  auto generator_map = [this](const Generator& gen) {
    switch (gen.kind) {
      case Generator::Kind::vertex:
        return PiecewiseLinearMap::identity(
            IntervalUnion(bs_.domain(gen.as_vertex())));
      case Generator::Kind::edge:
        return bs_.map(gen.as_edge());
      case Generator::Kind::ghost:
        return inverse_maps_.at(gen.id);
    }
    return PiecewiseLinearMap();
  };
  PiecewiseLinearMap map;
  if (!w.empty()) {
    map = generator_map(w.back());
    for (auto it = w.rbegin() + 1; it != w.rend() && !map.empty(); ++it) {
      map = compose(generator_map(*it), map);
    }
  }
  IntervalUnion dom = map.domain();
  return MonomialAction{std::move(map), std::move(dom)};
}

namespace {

struct ActivePiece {
  const AffinePiece* piece;
  Rational coeff;
};

// Calls visit(p, active) for every decisive sample point p in increasing
// order; visit returns true to stop early.
template <class Visit>
void for_each_sample(const std::vector<const PiecewiseLinearMap*>& maps,
                     const std::vector<Rational>& coeffs, Visit&& visit) {
  std::set<Rational> breaks;
  for (const auto* m : maps) {
    for (const auto& p : m->pieces()) {
      breaks.insert(p.domain().lo());
      breaks.insert(p.domain().hi());
    }
  }
  std::vector<Rational> bps(breaks.begin(), breaks.end());
  std::vector<ActivePiece> active;
  for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
    const Rational& a = bps[i];
    const Rational& b = bps[i + 1];
    active.clear();
    for (std::size_t k = 0; k < maps.size(); ++k) {
      if (const AffinePiece* p = maps[k]->piece_at(a)) {
        active.push_back({p, coeffs[k]});
      }
    }
    if (active.empty()) continue;

    std::set<Rational> points{a};
    for (std::size_t x = 0; x < active.size(); ++x) {
      for (std::size_t y = x + 1; y < active.size(); ++y) {
        const AffinePiece& px = *active[x].piece;
        const AffinePiece& py = *active[y].piece;
        if (px.slope() == py.slope()) continue;
        Rational cross = (py.offset() - px.offset()) / (px.slope() - py.slope());
        if (a < cross && cross < b) points.insert(cross);
      }
    }
    std::vector<Rational> ordered(points.begin(), points.end());
    ordered.push_back(b);
    for (std::size_t k = 0; k + 1 < ordered.size(); ++k) {
      if (visit(ordered[k], active)) return;
      if (visit(midpoint(ordered[k], ordered[k + 1]), active)) return;
    }
  }
}

}  // namespace

ZeroDecision Representation::is_zero(const Element& x) const {
  std::vector<MonomialAction> actions;
  std::vector<Rational> coeffs;
  for (const auto& [w, c] : x.terms()) {
    actions.push_back(action(w));
    coeffs.push_back(c);
  }
  std::vector<const PiecewiseLinearMap*> maps;
  for (const auto& a : actions) maps.push_back(&a.map);

  ZeroDecision decision;
  for_each_sample(maps, coeffs,
                  [&](const Rational& p, const std::vector<ActivePiece>& active) {
                    DeltaVector image;
                    for (const auto& ap : active) image.add((*ap.piece)(p), ap.coeff);
                    if (image.is_zero()) return false;
                    decision.zero = false;
                    decision.witness = p;
                    decision.image = std::move(image);
                    return true;
                  });
  return decision;
}

std::vector<Rational> Representation::sample_points(
    const std::vector<Word>& words) const {
  std::vector<MonomialAction> actions;
  for (const auto& w : words) actions.push_back(action(w));
  std::vector<const PiecewiseLinearMap*> maps;
  for (const auto& a : actions) maps.push_back(&a.map);
  std::vector<Rational> coeffs(maps.size(), Rational(1));
  std::vector<Rational> out;
  for_each_sample(maps, coeffs,
                  [&](const Rational& p, const std::vector<ActivePiece>&) {
                    out.push_back(p);
                    return false;
                  });
  return out;
}

namespace {

using SparseRow = std::map<std::size_t, Rational>;

std::size_t sparse_rank(std::vector<SparseRow> rows) {
  std::map<std::size_t, SparseRow> pivots;  // leading column -> row
  for (auto& row : rows) {
    while (!row.empty()) {
      auto lead = row.begin();
      auto pv = pivots.find(lead->first);
      if (pv == pivots.end()) {
        std::size_t col = lead->first;
        pivots.emplace(col, std::move(row));
        break;
      }
      Rational factor = lead->second / pv->second.begin()->second;
      for (const auto& [c, v] : pv->second) {
        Rational& cell = row[c];
        cell -= factor * v;
        if (cell.is_zero()) row.erase(c);
      }
    }
  }
  return pivots.size();
}

}  // namespace

std::size_t exact_rank(std::vector<std::vector<Rational>> rows) {
  std::vector<SparseRow> sparse;
  for (const auto& r : rows) {
    SparseRow s;
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (!r[c].is_zero()) s.emplace(c, r[c]);
    }
    sparse.push_back(std::move(s));
  }
  return sparse_rank(std::move(sparse));
}

std::size_t Representation::operator_rank(const std::vector<Word>& words) const {
  std::vector<Rational> points = sample_points(words);
  std::map<std::pair<Rational, Rational>, std::size_t> columns;
  std::vector<SparseRow> rows;
  for (const auto& w : words) {
    MonomialAction a = action(w);
    SparseRow row;
    for (const auto& p : points) {
      if (auto q = a.map.apply(p)) {
        auto [it, fresh] = columns.try_emplace({p, *q}, columns.size());
        row.emplace(it->second, Rational(1));
      }
    }
    rows.push_back(std::move(row));
  }
  return sparse_rank(std::move(rows));
}

bool RelationReport::all_passed() const { return failures() == 0; }

std::size_t RelationReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(verdicts.begin(), verdicts.end(),
                    [](const RelationVerdict& v) { return !v.passed; }));
}

namespace {

RelationVerdict decide(const SeparatedGraph& g, const Representation& rep,
                       std::string name, const Element& x, bool expect_zero) {
  ZeroDecision d = rep.is_zero(x);
  RelationVerdict v;
  v.name = std::move(name);
  v.element = format_element(g, x);
  v.expect_zero = expect_zero;
  v.passed = d.zero == expect_zero;
  if (!d.zero) v.witness = d.witness.str() + " -> " + d.image.str();
  return v;
}

Element group_sum(const Group& grp) {
  Element s;
  for (EdgeId e : grp) s += edge_element(e) * ghost_element(e);
  return s;
}

}  // namespace

RelationReport relation_check(const SeparatedGraph& g,
                              const Representation& rep) {
  RelationReport report;
  for (const auto& rel : defining_relations(g)) {
    report.verdicts.push_back(decide(g, rep, rel.name, rel.element, true));
  }
  return report;
}

RelationReport consequence_suite(const SeparatedGraph& g,
                               const Representation& rep) {
  RelationReport report;
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    EdgeId e{i};
    report.verdicts.push_back(decide(g, rep, "edge-nonzero " + g.edge(e).name,
                                     edge_element(e), false));
  }
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    VertexId v{i};
    report.verdicts.push_back(decide(g, rep, "vertex-nonzero " + g.vertex_name(v),
                                     vertex_element(v), false));
  }
  for (std::size_t vi = 0; vi < g.vertex_count(); ++vi) {
    const auto& cv = g.groups(VertexId{vi});
    for (std::size_t x = 0; x < cv.size(); ++x) {
      // e*f and f*e are adjoint, so one order per group pair suffices
      for (std::size_t y = x + 1; y < cv.size(); ++y) {
        for (EdgeId e : cv[x]) {
          for (EdgeId f : cv[y]) {
            report.verdicts.push_back(
                decide(g, rep,
                       "cross-group-nonzero " + g.edge(e).name + "^." +
                           g.edge(f).name,
                       ghost_element(e) * edge_element(f), false));
          }
        }
      }
    }
  }
  std::vector<GroupRef> outside_s;
  for (GroupRef ref : g.all_groups()) {
    if (g.in_s(ref)) continue;
    outside_s.push_back(ref);
    const Element sum = group_sum(g.group(ref));
    const Element v = vertex_element(ref.vertex);
    const std::string label = g.group_label(ref);
    report.verdicts.push_back(
        decide(g, rep, "group-sum-right-unit " + label, sum * v - sum, true));
    report.verdicts.push_back(
        decide(g, rep, "group-sum-left-unit " + label, v * sum - sum, true));
    report.verdicts.push_back(
        decide(g, rep, "group-sum-proper " + label, sum - v, false));
  }
  for (std::size_t x = 0; x < outside_s.size(); ++x) {
    for (std::size_t y = x + 1; y < outside_s.size(); ++y) {
      report.verdicts.push_back(decide(
          g, rep,
          "group-sums-differ " + g.group_label(outside_s[x]) + "," +
              g.group_label(outside_s[y]),
          group_sum(g.group(outside_s[x])) - group_sum(g.group(outside_s[y])),
          false));
    }
  }
  return report;
}

FaithfulnessReport faithfulness_trial(const SeparatedGraph& g,
                                      const Representation& rep,
                                      const SelectedEdges& sel,
                                      std::size_t length_bound,
                                      std::size_t trials, std::uint64_t seed) {
  SpanningSet basis = spanning_set(g, sel, length_bound);
  Rng rng(seed);
  FaithfulnessReport report;
  const auto& words = basis.words;

  while (report.trials < trials && !words.empty()) {
    const std::size_t k = 1 + rng.below(std::min<std::size_t>(8, words.size()));
    Element x;
    for (std::size_t i = 0; i < k; ++i) {
      x.add(words[rng.below(words.size())], random_coefficient(rng));
    }
    if (x.is_zero()) {
      ++report.redraws;
      continue;
    }
    ++report.trials;
    ZeroDecision d = rep.is_zero(x);
    if (!d.zero) {
      ++report.nonzero;
    } else {
      report.counterexamples.push_back("ZERO but expected NONZERO: " +
                                       format_element(g, x));
    }
  }

  const auto relations = defining_relations(g);
  const std::size_t max_redraws = 1000 * (trials + 1);
  while (report.converse_trials < trials && report.redraws < max_redraws) {
    Element x;
    if (rng.coin() || relations.empty()) {
      Element a = random_element(g, rng, 4, 4);
      x = a - reduce(a, g, sel);
    } else {
      x = relations[rng.below(relations.size())].element;
      if (rng.coin()) x = monomial(random_word(g, rng, 2)) * x;
      if (rng.coin()) x = x * monomial(random_word(g, rng, 2));
    }
    if (x.is_zero() || !reduce(x, g, sel).is_zero()) {
      ++report.redraws;
      continue;
    }
    ++report.converse_trials;
    ZeroDecision d = rep.is_zero(x);
    if (d.zero) {
      ++report.converse_zero;
    } else {
      report.counterexamples.push_back(
          "reduces to 0 but NONZERO at " + d.witness.str() + ": " +
          format_element(g, x));
    }
  }
  return report;
}

}  // namespace clbs
