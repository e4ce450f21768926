#include "clbs/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "clbs/algebra.hpp"
#include "clbs/branching.hpp"
#include "clbs/freeproduct.hpp"
#include "clbs/graph.hpp"
#include "clbs/representation.hpp"

#ifndef CLBS_SOURCE_DIR
#define CLBS_SOURCE_DIR "."
#endif

namespace clbs::cli {

std::string default_example_graph() {
  return std::string(CLBS_SOURCE_DIR) + "/data/example1.json";
}

std::string default_example_golden() {
  return std::string(CLBS_SOURCE_DIR) + "/golden/example1.show-intervals.txt";
}

namespace {

struct Options {
  std::string graph;
  std::string elem;
  std::string phi;
  std::string expect;
  std::string selected;
  std::string out_dir;
  std::string golden;
  std::uint64_t seed = 0;
  std::size_t bound = 3;
  std::size_t trials = 100;
};

// Thrown for unreadable or inconsistent user input; maps to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

SeparatedGraph read_graph(const std::string& path) {
  if (path.empty()) throw InputError("--graph is required");
  if (!std::filesystem::is_regular_file(path)) {
    throw InputError("cannot open '" + path + "'");
  }
  return load_graph_file(path);
}

SelectedEdges read_selection(const SeparatedGraph& g, const Options& o) {
  return o.selected.empty() ? SelectedEdges::defaults(g)
                            : SelectedEdges::parse(g, o.selected);
}

const char* verdict_word(bool zero) { return zero ? "ZERO" : "NONZERO"; }

void print_report(std::ostream& out, const RelationReport& r) {
  for (const auto& v : r.verdicts) {
    out << (v.passed ? "ok   " : "FAIL ") << v.name << ": "
        << verdict_word(v.expect_zero == v.passed) << "  [" << v.element << "]";
    if (!v.witness.empty()) out << "  witness " << v.witness;
    out << "\n";
  }
}

int cmd_validate(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.graph.empty()) throw InputError("a graph file is required");
  if (!std::filesystem::is_regular_file(o.graph)) {
    throw InputError("cannot open '" + o.graph + "'");
  }
  SeparatedGraph g = parse_graph(read_text_file(o.graph));
  auto violations = validate(g);
  if (!violations.empty()) {
    for (const auto& v : violations) err << v.str() << "\n";
    return input_error;
  }
  auto cls = classify(g);
  out << "valid: " << g.vertex_count() << " vertices, " << g.edge_count()
      << " edges, " << g.all_groups().size() << " groups, "
      << g.s_members().size() << " in S\n";
  out << "common source: " << (cls.common_source ? "yes" : "no")
      << ", injective range: " << (cls.injective_range ? "yes" : "no")
      << ", loop free: " << (cls.loop_free ? "yes" : "no") << "\n";
  return ok;
}

int cmd_build(const Options& o, std::ostream& out, std::ostream&) {
  auto g = read_graph(o.graph);
  auto bs = construct(g);
  auto report = verify_axioms(g, bs);
  for (const auto& c : report.checks) {
    out << (c.passed ? "ok   " : "FAIL ") << c.name;
    if (!c.passed) out << ": " << c.detail;
    out << "\n";
  }
  return report.all_passed() ? ok : failed;
}

int cmd_show_intervals(const Options& o, std::ostream& out, std::ostream&) {
  auto g = read_graph(o.graph);
  out << show_intervals(g, construct(g));
  return ok;
}

int cmd_apply(const Options& o, std::ostream& out, std::ostream&) {
  auto g = read_graph(o.graph);
  Element x = parse_element(g, o.elem);
  DeltaVector phi = DeltaVector::parse(o.phi);
  Representation rep(construct(g));
  out << rep.apply(x, phi).str() << "\n";
  return ok;
}

int cmd_is_zero(const Options& o, std::ostream& out, std::ostream& err) {
  auto g = read_graph(o.graph);
  Element x = parse_element(g, o.elem);
  Representation rep(construct(g));
  ZeroDecision d = rep.is_zero(x);
  if (d.zero) {
    out << "ZERO\n";
  } else {
    out << "NONZERO\nwitness " << d.witness << "\nimage " << d.image.str()
        << "\n";
  }
  if (o.expect.empty()) return ok;
  const bool want_zero = o.expect == "zero";
  if (want_zero != d.zero) {
    err << "expected " << verdict_word(want_zero) << "\n";
    return failed;
  }
  return ok;
}

int cmd_relations(const Options& o, std::ostream& out, std::ostream&) {
  auto g = read_graph(o.graph);
  Representation rep(construct(g));
  auto rel = relation_check(g, rep);
  auto cor = consequence_suite(g, rep);
  print_report(out, rel);
  print_report(out, cor);
  out << "relations: " << rel.verdicts.size() - rel.failures() << "/"
      << rel.verdicts.size() << " as expected\n";
  out << "consequences: " << cor.verdicts.size() - cor.failures() << "/"
      << cor.verdicts.size() << " as expected\n";
  return rel.all_passed() && cor.all_passed() ? ok : failed;
}

int cmd_faithfulness(const Options& o, std::ostream& out, std::ostream& err) {
  auto g = read_graph(o.graph);
  auto sel = read_selection(g, o);
  Representation rep(construct(g));
  auto r = faithfulness_trial(g, rep, sel, o.bound, o.trials, o.seed);
  out << "spanning combinations: " << r.nonzero << "/" << r.trials
      << " NONZERO\n";
  out << "reducible to zero: " << r.converse_zero << "/" << r.converse_trials
      << " ZERO\n";
  for (const auto& c : r.counterexamples) err << "counterexample: " << c << "\n";
  return r.passed() ? ok : failed;
}

int cmd_decompose(const Options& o, std::ostream& out, std::ostream& err) {
  auto g = read_graph(o.graph);
  auto sel = read_selection(g, o);
  auto d = decompose(g);
  if (d.factors.empty()) throw InputError("graph has no groups to decompose");
  std::filesystem::path dir = o.out_dir.empty() ? "." : o.out_dir;
  std::filesystem::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw InputError("cannot write '" + (dir / name).string() + "'");
    f << text;
    out << "wrote " << (dir / name).string() << "\n";
  };
  for (std::size_t k = 0; k < d.factors.size(); ++k) {
    write(factor_file_name(k), save_graph(d.factors[k].graph));
  }
  write("identifications.json", identification_manifest(g, d));

  auto iso = check_iso_on_relations(g, d, sel);
  std::size_t fwd = 0;
  std::size_t bwd = 0;
  for (const auto& v : iso.verdicts) {
    if (!v.passed) {
      err << "FAIL " << v.direction << " " << v.name << "\n";
      continue;
    }
    (v.direction == "forward" ? fwd : bwd) += 1;
  }
  for (const auto& p : iso.problems) err << p << "\n";
  out << "forward relations: " << fwd << "/" << iso.forward_relations
      << " reduce to 0 (expected " << iso.expected_forward << ")\n";
  out << "backward relations: " << bwd << "/" << iso.backward_relations
      << " reduce to 0 (expected " << iso.expected_backward << ")\n";
  out << "edge partition: " << (iso.edge_partition_ok ? "ok" : "FAIL")
      << ", generator round trip: " << (iso.round_trip_ok ? "ok" : "FAIL")
      << "\n";
  return iso.all_passed() ? ok : failed;
}

int cmd_reproduce(const Options& o, std::ostream& out, std::ostream& err) {
  const std::string graph_path = o.graph.empty() ? default_example_graph() : o.graph;
  const std::string golden_path = o.golden.empty() ? default_example_golden() : o.golden;
  auto g = read_graph(graph_path);
  auto bs = construct(g);
  bool all = true;
  auto line = [&](bool pass, const std::string& text) {
    out << (pass ? "ok   " : "FAIL ") << text << "\n";
    all = all && pass;
  };

  const std::string dump = show_intervals(g, bs);
  out << dump;

  auto axioms = verify_axioms(g, bs);
  line(axioms.all_passed(),
       "axioms: " + std::to_string(axioms.checks.size() - axioms.failures().size()) +
           "/" + std::to_string(axioms.checks.size()) + " checks");
  for (const auto& c : axioms.failures()) err << c.name << ": " << c.detail << "\n";

  Representation rep(bs);
  auto rel = relation_check(g, rep);
  line(rel.all_passed(), "relations: " +
                             std::to_string(rel.verdicts.size() - rel.failures()) +
                             "/" + std::to_string(rel.verdicts.size()) + " ZERO");
  auto cor = consequence_suite(g, rep);
  line(cor.all_passed(), "consequences: " +
                             std::to_string(cor.verdicts.size() - cor.failures()) +
                             "/" + std::to_string(cor.verdicts.size()) +
                             " as expected");
  for (const auto& v : rel.verdicts) {
    if (!v.passed) err << "relation " << v.name << " failed\n";
  }
  for (const auto& v : cor.verdicts) {
    if (!v.passed) err << "consequence " << v.name << " failed\n";
  }

  // R_e ∩ (D_v ∖ ∪ R_f) for every edge of an S group against every non-S group
  for (std::size_t vi = 0; vi < g.vertex_count(); ++vi) {
    VertexId v{vi};
    const auto& cv = g.groups(v);
    for (std::size_t x = 0; x < cv.size(); ++x) {
      if (!g.in_s(GroupRef{v, x})) continue;
      for (std::size_t y = 0; y < cv.size(); ++y) {
        if (g.in_s(GroupRef{v, y})) continue;
        for (EdgeId e : cv[x]) {
          RegionPick picks[] = {{GroupRef{v, x}, e}, {GroupRef{v, y}, std::nullopt}};
          auto r = region(g, bs, v, picks);
          out << "region R " << g.edge(e).name << " minus "
              << g.group_label(GroupRef{v, y}) << " = " << r.str() << "\n";
        }
      }
    }
  }
  auto sweep = region_sweep(g, bs);
  line(sweep.empty_regions.empty() && !sweep.truncated,
       "region sweep: " + std::to_string(sweep.cases) + " cases, " +
           std::to_string(sweep.empty_regions.size()) + " empty");
  for (const auto& e : sweep.empty_regions) err << "empty region: " << e << "\n";

  std::string golden;
  if (std::filesystem::is_regular_file(golden_path)) {
    golden = read_text_file(golden_path);
  } else {
    err << "golden file missing: " << golden_path << "\n";
  }
  const bool same = golden == dump;
  if (!same && !golden.empty()) {
    std::istringstream a(dump);
    std::istringstream b(golden);
    std::string la;
    std::string lb;
    for (std::size_t n = 1;; ++n) {
      const bool ga = static_cast<bool>(std::getline(a, la));
      const bool gb = static_cast<bool>(std::getline(b, lb));
      if (!ga && !gb) break;
      if (!ga || !gb || la != lb) {
        err << "golden differs at line " << n << ":\n  got:      "
            << (ga ? la : "<eof>") << "\n  expected: " << (gb ? lb : "<eof>")
            << "\n";
        break;
      }
    }
  }
  line(same, "show-intervals matches golden file");
  return all ? ok : failed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Exact interval models for path algebras of separated graphs",
               "clbs"};
  app.require_subcommand(1);
  Options o;

  auto graph_opt = [&](CLI::App* sub) {
    sub->add_option("--graph", o.graph, "graph file (JSON)");
  };
  auto selected_opt = [&](CLI::App* sub) {
    sub->add_option("--selected", o.selected,
                    "distinguished edges, e.g. v0:1=e4 (group index is 0-based)");
  };

  auto* validate_cmd = app.add_subcommand("validate", "check a graph file");
  validate_cmd->add_option("file", o.graph, "graph file");
  graph_opt(validate_cmd);

  auto* build_cmd = app.add_subcommand("build", "construct and verify the branching system");
  graph_opt(build_cmd);

  auto* show_cmd = app.add_subcommand("show-intervals", "dump D_v, R_e and f_e");
  graph_opt(show_cmd);

  auto* apply_cmd = app.add_subcommand("apply", "apply an element to a finitely supported vector");
  graph_opt(apply_cmd);
  apply_cmd->add_option("--elem", o.elem, "element, e.g. 3/2*e1.e1^ - v0")->required();
  apply_cmd->add_option("--phi", o.phi, "vector as p=c,p=c")->required();

  auto* zero_cmd = app.add_subcommand("is-zero", "decide whether an element acts as zero");
  graph_opt(zero_cmd);
  zero_cmd->add_option("--elem", o.elem, "element")->required();
  zero_cmd->add_option("--expect", o.expect, "fail unless the verdict matches")
      ->check(CLI::IsMember({"zero", "nonzero"}));

  auto* rel_cmd = app.add_subcommand("relations", "check defining relations and their consequences");
  graph_opt(rel_cmd);

  auto* faith_cmd = app.add_subcommand("faithfulness-test", "seeded faithfulness trials");
  graph_opt(faith_cmd);
  selected_opt(faith_cmd);
  faith_cmd->add_option("--seed", o.seed, "random seed")->capture_default_str();
  faith_cmd->add_option("--bound", o.bound, "word length bound")->capture_default_str();
  faith_cmd->add_option("--trials", o.trials, "number of trials")->capture_default_str();

  auto* dec_cmd = app.add_subcommand("decompose", "split into single-colour factor graphs");
  graph_opt(dec_cmd);
  selected_opt(dec_cmd);
  dec_cmd->add_option("--out", o.out_dir, "output directory");

  auto* repro_cmd = app.add_subcommand("reproduce-example1", "rebuild Example 1 and diff against the golden dump");
  graph_opt(repro_cmd);
  repro_cmd->add_option("--golden", o.golden, "golden show-intervals file");

  const std::vector<std::pair<CLI::App*, std::function<int()>>> dispatch = {
      {validate_cmd, [&] { return cmd_validate(o, out, err); }},
      {build_cmd, [&] { return cmd_build(o, out, err); }},
      {show_cmd, [&] { return cmd_show_intervals(o, out, err); }},
      {apply_cmd, [&] { return cmd_apply(o, out, err); }},
      {zero_cmd, [&] { return cmd_is_zero(o, out, err); }},
      {rel_cmd, [&] { return cmd_relations(o, out, err); }},
      {faith_cmd, [&] { return cmd_faithfulness(o, out, err); }},
      {dec_cmd, [&] { return cmd_decompose(o, out, err); }},
      {repro_cmd, [&] { return cmd_reproduce(o, out, err); }},
  };

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? ok : input_error;
  }

  try {
    for (const auto& [sub, fn] : dispatch) {
      if (sub->parsed()) return fn();
    }
    return input_error;
  } catch (const GraphValidationError& e) {
    err << e.what() << "\n";
    for (const auto& v : e.violations()) err << "  " << v.str() << "\n";
  } catch (const GraphParseError& e) {
    err << "graph parse error at " << e.line() << ":" << e.column() << ": "
        << e.what() << "\n";
  } catch (const ElementParseError& e) {
    err << "element parse error at position " << e.position() << ": "
        << e.what() << "\n";
  } catch (const InputError& e) {
    err << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
  } catch (const RewriteBudgetExceeded& e) {
    err << e.what() << "\n";
    return failed;
  } catch (const std::filesystem::filesystem_error& e) {
    err << e.what() << "\n";
  }
  return input_error;
}

}  // namespace clbs::cli
