// Acceptance suite: one PASS/FAIL line per criterion, exact arithmetic
// throughout, runtime limits enforced where stated.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "clbs/algebra.hpp"
#include "clbs/branching.hpp"
#include "clbs/freeproduct.hpp"
#include "clbs/random.hpp"
#include "clbs/representation.hpp"
#include "support/fixtures.hpp"
#include "support/random_graphs.hpp"

using namespace clbs;

namespace {

constexpr std::size_t kRandomGraphs = 20;

struct Outcome {
  bool passed = true;
  std::ostringstream note;
  std::vector<std::string> problems;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      problems.push_back(what);
    }
  }

  [[nodiscard]] std::string text() const {
    std::string out = note.str();
    for (std::size_t i = 0; i < problems.size() && i < 5; ++i) {
      out += (i == 0 ? " | failed: " : "; ") + problems[i];
    }
    if (problems.size() > 5) out += "; +" + std::to_string(problems.size() - 5) + " more";
    return out;
  }
};

struct Criterion {
  int number;
  const char* title;
  double limit_seconds;   // 0 means no stated limit
  std::function<void(Outcome&)> body;
};

IntervalUnion iu(std::string_view text) { return IntervalUnion::parse(text); }

std::vector<SeparatedGraph> family() {
  return clbs::testing::random_graph_family(kRandomGraphs);
}

void example1_reproduction(Outcome& o) {
  auto g = clbs::testing::example1();
  auto bs = construct(g);
  for (std::size_t i = 0; i < 5; ++i) {
    auto lo = static_cast<std::int64_t>(i);
    o.require(bs.domain(VertexId{i}) == HalfOpenInterval(lo, lo + 1),
              "D_" + g.vertex_name(VertexId{i}));
  }
  const char* expected[][2] = {
      {"e1", "{[0,1/3)}"},
      {"e2", "{[1/3,2/3)}"},
      {"e3", "{[0,1/6), [1/3,1/2), [2/3,5/6)}"},
      {"e4", "{[1/6,1/3), [1/2,2/3), [5/6,1)}"},
  };
  for (const auto& [name, text] : expected) {
    auto e = g.find_edge(name);
    o.require(e && bs.range(*e) == iu(text), std::string("R_") + name);
  }
  const VertexId v0{0};
  RegionPick picks[] = {{GroupRef{v0, 1}, *g.find_edge("e3")},
                        {GroupRef{v0, 0}, std::nullopt}};
  auto r = region(g, bs, v0, picks);
  o.require(r == iu("{[2/3,5/6)}"), "R_e3 minus X1 = " + r.str());
  o.note << "5 domains, 4 ranges, R_e3 minus X1 = " << r.str();
}

void axiom_suite(Outcome& o) {
  std::size_t graphs = 0;
  std::size_t in_s = 0;
  std::size_t outside_s = 0;
  auto check = [&](const SeparatedGraph& g, const std::string& label) {
    auto report = verify_axioms(g, construct(g));
    for (const auto& c : report.failures()) o.require(false, label + " " + c.name);
    ++graphs;
    for (GroupRef ref : g.all_groups()) (g.in_s(ref) ? in_s : outside_s) += 1;
  };
  check(clbs::testing::example1(), "example1");
  auto gs = family();
  for (std::size_t i = 0; i < gs.size(); ++i) {
    o.require(validate(gs[i]).empty(), "random graph " + std::to_string(i) + " invalid");
    check(gs[i], "random " + std::to_string(i));
  }
  o.require(in_s > 0 && outside_s > 0, "S membership not mixed");
  o.note << graphs << " graphs, 8 checks each; groups in S " << in_s
         << ", outside S " << outside_s;
}

void representation_relations(Outcome& o) {
  std::size_t instances = 0;
  auto check = [&](const SeparatedGraph& g, const std::string& label) {
    Representation rep(construct(g));
    auto report = relation_check(g, rep);
    instances += report.verdicts.size();
    for (const auto& v : report.verdicts) {
      if (!v.passed) o.require(false, label + " " + v.name);
    }
  };
  check(clbs::testing::example1(), "example1");
  auto gs = family();
  for (std::size_t i = 0; i < gs.size(); ++i) check(gs[i], "random " + std::to_string(i));
  o.note << instances << " relation instances ZERO over 21 graphs";
}

void consequence_check(Outcome& o) {
  auto g = clbs::testing::example1();
  Representation rep(construct(g));
  auto report = consequence_suite(g, rep);
  std::size_t edges = 0, vertices = 0, cross = 0;
  for (const auto& v : report.verdicts) {
    if (!v.passed) o.require(false, "example1 " + v.name);
    if (v.name.starts_with("edge-nonzero")) ++edges;
    if (v.name.starts_with("vertex-nonzero")) ++vertices;
    if (v.name.starts_with("cross-group-nonzero")) ++cross;
  }
  o.require(edges == 4, "edge cases " + std::to_string(edges));
  o.require(vertices == 5, "vertex cases " + std::to_string(vertices));
  o.require(cross == 4, "cross-group cases " + std::to_string(cross));

  auto d = rep.is_zero(parse_element(g, "e1.e1^ + e2.e2^ - v0"));
  const IntervalUnion leftover = iu("{[2/3,1)}");
  o.require(!d.zero, "group sum minus v0 is ZERO");
  o.require(leftover.contains(d.witness), "witness " + d.witness.str() + " outside [2/3,1)");
  o.require(!rep.apply(parse_element(g, "e1.e1^ + e2.e2^ - v0"),
                       DeltaVector::delta(d.witness)).is_zero(),
            "witness image vanishes");

  std::size_t inequalities = 0;
  auto gs = family();
  for (std::size_t i = 0; i < gs.size(); ++i) {
    Representation r(construct(gs[i]));
    for (const auto& v : consequence_suite(gs[i], r).verdicts) {
      if (!v.passed) o.require(false, "random " + std::to_string(i) + " " + v.name);
      if (v.name.starts_with("group-sums-differ")) ++inequalities;
    }
  }
  o.require(inequalities > 0, "no pair of groups outside S in the random family");
  o.note << "4 edges, 5 vertices, 4 cross pairs NONZERO; witness " << d.witness
         << "; " << inequalities << " distinct-group inequalities on random graphs";
}

void abelianization(Outcome& o) {
  auto g = clbs::testing::example1();
  Representation rep(construct(g));
  auto sample = commutator_sample(g, 2, CommutatorAlphabet::edges_and_ghosts);
  std::size_t zero = 0;
  for (const auto& c : sample) {
    auto d = rep.is_zero(c);
    if (d.zero) {
      ++zero;
    } else {
      o.require(false, format_element(g, c) + " NONZERO at " + d.witness.str());
    }
  }
  o.require(!sample.empty(), "empty commutator sample");
  o.note << zero << "/" << sample.size() << " commutators ZERO";
}

void faithfulness(Outcome& o) {
  auto g = clbs::testing::example1();
  auto sel = SelectedEdges::defaults(g);
  Representation rep(construct(g));
  auto r = faithfulness_trial(g, rep, sel, 3, 100, 0);
  o.require(r.trials == 100 && r.nonzero == 100,
            "NONZERO " + std::to_string(r.nonzero) + "/" + std::to_string(r.trials));
  o.require(r.converse_trials == 100 && r.converse_zero == 100,
            "ZERO " + std::to_string(r.converse_zero) + "/" +
                std::to_string(r.converse_trials));
  for (const auto& c : r.counterexamples) o.require(false, c);

  auto words = spanning_set(g, sel, 2).words;
  auto rank = rep.operator_rank(words);
  o.require(rank == words.size(), "rank " + std::to_string(rank) + " of " +
                                      std::to_string(words.size()));
  o.note << r.nonzero << "/" << r.trials << " NONZERO, " << r.converse_zero << "/"
         << r.converse_trials << " ZERO, rank " << rank << "/" << words.size();
}

void reduction_soundness(Outcome& o) {
  auto g = clbs::testing::example1();
  auto sel = SelectedEdges::defaults(g);
  Representation rep(construct(g));
  Rng rng(0);
  std::size_t zero = 0;
  for (int i = 0; i < 1000; ++i) {
    auto x = random_element(g, rng, 4, 4);
    auto diff = x - reduce(x, g, sel);
    auto d = rep.is_zero(diff);
    if (d.zero) {
      ++zero;
    } else {
      o.require(false, format_element(g, x) + " changes at " + d.witness.str());
    }
  }
  o.note << zero << "/1000 ZERO";
}

void free_product(Outcome& o) {
  std::size_t graphs = 0;
  std::size_t forward = 0;
  std::size_t backward = 0;
  auto check = [&](const SeparatedGraph& g, const std::string& label) {
    auto d = decompose(g);
    auto r = check_iso_on_relations(g, d, SelectedEdges::defaults(g));
    ++graphs;
    forward += r.forward_relations;
    backward += r.backward_relations;
    o.require(r.edge_partition_ok, label + " edge partition");
    o.require(r.round_trip_ok, label + " round trip");
    o.require(r.forward_relations == r.expected_forward, label + " forward count");
    o.require(r.backward_relations == r.expected_backward, label + " backward count");
    for (const auto& v : r.verdicts) {
      if (!v.passed) o.require(false, label + " " + v.direction + " " + v.name);
    }
    for (const auto& p : r.problems) o.require(false, label + " " + p);
  };
  check(clbs::testing::example1(), "example1");
  auto gs = family();
  for (std::size_t i = 0; i < gs.size(); ++i) check(gs[i], "random " + std::to_string(i));
  o.note << graphs << " graphs; " << forward << " forward and " << backward
         << " backward relations reduce to 0";
}

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "Example 1 bit-exact reproduction", 1.0, example1_reproduction},
      {2, "branching-system axioms on Example 1 and 20 random graphs", 10.0, axiom_suite},
      {3, "defining relations vanish under the representation", 0, representation_relations},
      {4, "non-vanishing consequences", 0, consequence_check},
      {5, "commutators of range projections vanish (|w| <= 2)", 0, abelianization},
      {6, "faithfulness trials and spanning-set rank", 60.0, faithfulness},
      {7, "reduction is invisible to the representation", 0, reduction_soundness},
      {8, "free-product decomposition at presentation level", 0, free_product},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && seconds >= c.limit_seconds) {
      o.require(false, "runtime limit exceeded");
    }
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.3f s", seconds);
    std::cout << (o.passed ? "PASS" : "FAIL") << "  [" << c.number << "] " << c.title
              << " -- " << o.text() << " (" << timing;
    if (c.limit_seconds > 0) std::cout << ", limit " << c.limit_seconds << " s";
    std::cout << ")\n";
    if (!o.passed) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
