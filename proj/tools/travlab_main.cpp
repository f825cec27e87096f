// Command-line front end: every subcommand reads its inputs from files and
// prints a machine-readable report. Exit codes: 0 success (query true where
// applicable), 1 query false / violation found, 2 input or usage error.
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "travlab/error.hpp"
#include "travlab/eval.hpp"
#include "travlab/interp.hpp"
#include "travlab/invariance.hpp"
#include "travlab/io.hpp"
#include "travlab/machine.hpp"
#include "travlab/reductions.hpp"
#include "travlab/selftest.hpp"
#include "travlab/structure.hpp"
#include "travlab/traversal.hpp"

namespace {

using namespace travlab;

int enumeration_cap() {
  if (const char* env = std::getenv("TRAVLAB_CAP")) return std::atoi(env);
  return 8;
}

std::string order_text(const LinearOrder& o) {
  std::string out;
  for (int e : o.sequence()) {
    if (!out.empty()) out += ',';
    out += std::to_string(e);
  }
  return out;
}

LinearOrder order_or_identity(const std::string& spec, int n) {
  return spec.empty() ? LinearOrder::identity(n) : parse_order_spec(spec, n);
}

/// Directories expand to their files, sorted by name for stable output.
std::vector<std::string> expand_paths(const std::vector<std::string>& paths) {
  std::vector<std::string> out;
  for (const auto& p : paths) {
    if (std::filesystem::is_directory(p)) {
      std::vector<std::string> inner;
      for (const auto& entry : std::filesystem::directory_iterator(p))
        if (entry.is_regular_file()) inner.push_back(entry.path().string());
      std::sort(inner.begin(), inner.end());
      out.insert(out.end(), inner.begin(), inner.end());
    } else {
      out.push_back(p);
    }
  }
  return out;
}

/// Ensure the structure carries the successor profile the directed
/// reachability reduction expects, expanding by the identity order if needed.
Structure with_successor_profile(Structure a) {
  if (a.sig().find_fun("S")) return a;
  return successor_expansion(a, LinearOrder::identity(a.size()));
}

Signature formula_signature(const Signature& base, PresentationKind kind) {
  return kind == PresentationKind::Successor ? with_successor(base) : with_order(base);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for traversal-written graph queries, structure "
               "translations, and multihead automaton pipelines"};
  app.require_subcommand(1);

  std::string struct_path, formula_path, machine_path, order_spec, emit_path, input_string;
  std::string kind_name = "traversal", search_kind = "generic";
  std::vector<std::string> family_paths;
  bool verify = false;

  auto* classify = app.add_subcommand("classify-order",
                                      "test an order against the three search-order predicates");
  classify->add_option("structure", struct_path)->required();
  classify->add_option("--order", order_spec, "visit sequence, e.g. 0,2,1 (default identity)");

  auto* search = app.add_subcommand("search-orders", "enumerate all orders a search can produce");
  search->add_option("structure", struct_path)->required();
  search->add_option("--kind", search_kind)->check(CLI::IsMember({"generic", "bfs", "dfs"}));

  auto* canon = app.add_subcommand("canonical-bft", "print the canonical breadth-first order");
  canon->add_option("structure", struct_path)->required();
  canon->add_option("--order", order_spec, "base order (default identity)");

  auto* quasi = app.add_subcommand("quasi-levels", "list the quasi-levels of a BFT expansion");
  quasi->add_option("structure", struct_path)->required();
  quasi->add_option("--order", order_spec, "breadth-first order (default identity)");

  auto* invariance = app.add_subcommand("invariance", "presentation-invariance reports");
  auto* inv_check = invariance->add_subcommand("check", "check a sentence over a family");
  inv_check->add_option("inputs", family_paths,
                        "structure files or directories, then the formula file")
      ->required()
      ->expected(-2);
  inv_check->add_option("--kind", kind_name)
      ->check(CLI::IsMember({"all-orders", "traversal", "bft", "dft", "successor"}));

  auto* eval_cmd = app.add_subcommand("eval", "evaluate a sentence on one structure");
  eval_cmd->add_option("structure", struct_path)->required();
  eval_cmd->add_option("formula", formula_path)->required();
  eval_cmd->add_option("--kind", kind_name,
                       "evaluate on the deterministic expansion of this kind");
  bool plain = false;
  eval_cmd->add_flag("--plain", plain, "evaluate directly, with no order expansion");
  eval_cmd->add_flag("--verify", verify, "also check invariance over all expansions");

  auto* reduce = app.add_subcommand("reduce", "apply a shipped structure translation");
  std::string reduction_name;
  reduce->add_option("which", reduction_name)->required()->check(CLI::IsMember({"rho", "tau"}));
  reduce->add_option("structure", struct_path)->required();
  reduce->add_option("--emit", emit_path, "write the translated structure here");

  auto* decide = app.add_subcommand("decide", "decide a query end to end");
  auto* decide_reach = decide->add_subcommand("reach", "directed s-t reachability");
  decide_reach->add_option("structure", struct_path)->required();

  auto* machine = app.add_subcommand("machine", "multihead automaton operations");
  auto* m_run = machine->add_subcommand("run", "simulate on an input string");
  m_run->add_option("machine", machine_path)->required();
  m_run->add_option("input", input_string)->required();
  auto* m_graph = machine->add_subcommand("graph", "emit the configuration graph");
  m_graph->add_option("machine", machine_path)->required();
  m_graph->add_option("input", input_string)->required();
  m_graph->add_option("--emit", emit_path, "write the configuration graph here");

  auto* pipeline = app.add_subcommand("pipeline", "machine acceptance through the reductions");
  std::string pipeline_name;
  pipeline->add_option("which", pipeline_name)->required()->check(CLI::IsMember({"L", "NL"}));
  pipeline->add_option("machine", machine_path)->required();
  pipeline->add_option("structure", struct_path)->required();
  pipeline->add_option("--order", order_spec, "element order for the encoding");

  auto* selftest = app.add_subcommand("selftest", "run the full semantic check suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    int cap = enumeration_cap();

    if (classify->parsed()) {
      Structure g = load_structure(struct_path);
      OrderClass c = classify_order(g, order_or_identity(order_spec, g.size()));
      auto yn = [](bool b) { return b ? "yes" : "no"; };
      std::cout << "traversal=" << yn(c.traversal) << " bft=" << yn(c.bft)
                << " dft=" << yn(c.dft) << "\n";
      return c.traversal ? 0 : 1;
    }

    if (search->parsed()) {
      Structure g = load_structure(struct_path);
      SearchKind kind = search_kind == "bfs"   ? SearchKind::Bfs
                        : search_kind == "dfs" ? SearchKind::Dfs
                                               : SearchKind::Generic;
      for (const LinearOrder& o : search_orders(g, kind, cap))
        std::cout << order_text(o) << "\n";
      return 0;
    }

    if (canon->parsed()) {
      Structure g = load_structure(struct_path);
      std::cout << order_text(canonical_bft(g, order_or_identity(order_spec, g.size())))
                << "\n";
      return 0;
    }

    if (quasi->parsed()) {
      Structure g = load_structure(struct_path);
      for (const QuasiLevel& q : quasi_levels(g, order_or_identity(order_spec, g.size()))) {
        std::string line;
        for (int v : q.members) {
          if (!line.empty()) line += ',';
          line += std::to_string(v);
        }
        std::cout << line << "\n";
      }
      return 0;
    }

    if (inv_check->parsed()) {
      std::string formula_file = family_paths.back();
      family_paths.pop_back();
      std::vector<Structure> bases;
      for (const auto& p : expand_paths(family_paths)) bases.push_back(load_structure(p));
      if (bases.empty()) throw Error("no structures given");
      PresentationKind kind = parse_presentation_kind(kind_name);
      Formula f = load_formula(formula_file, formula_signature(bases[0].sig(), kind));
      InvarianceReport rep = check_invariance(bases, f, kind, cap);
      if (rep.invariant) {
        std::cout << "INVARIANT checked=" << rep.expansions_checked << "\n";
        return 0;
      }
      std::cout << "VIOLATED base=" << rep.violation->base_index
                << " order1=" << order_text(rep.violation->order1)
                << " order2=" << order_text(rep.violation->order2) << "\n";
      return 1;
    }

    if (eval_cmd->parsed()) {
      Structure a = load_structure(struct_path);
      bool verdict;
      if (plain) {
        verdict = evaluate(a, load_formula(formula_path, a.sig()));
      } else {
        PresentationKind kind = parse_presentation_kind(kind_name);
        Formula f = load_formula(formula_path, formula_signature(a.sig(), kind));
        verdict = eval_quantified(a, f, kind, verify, cap);
      }
      std::cout << (verdict ? "true" : "false") << "\n";
      return verdict ? 0 : 1;
    }

    if (reduce->parsed()) {
      Structure a = load_structure(struct_path);
      if (reduction_name == "rho") a = with_successor_profile(std::move(a));
      Interpretation p = reduction_name == "rho" ? rho() : tau();
      Structure image = translate_structure(p, a);
      std::cout << "translated n=" << image.size() << " edges=" << image.tuple_count("E")
                << "\n";
      if (!emit_path.empty()) save_structure(image, emit_path, emit_path + ".sig");
      return 0;
    }

    if (decide_reach->parsed()) {
      Structure a = with_successor_profile(load_structure(struct_path));
      bool reach = directed_reachable_bft(a);
      std::cout << (reach ? "REACHABLE" : "UNREACHABLE") << "\n";
      return reach ? 0 : 1;
    }

    if (m_run->parsed()) {
      Machine m = load_machine(machine_path);
      bool accept = run_machine(m, input_string);
      std::cout << (accept ? "ACCEPT" : "REJECT") << "\n";
      return accept ? 0 : 1;
    }

    if (m_graph->parsed()) {
      Machine m = load_machine(machine_path);
      ConfigGraph cg = config_graph(m, input_string);
      std::cout << "configurations=" << cg.graph.size()
                << " steps=" << cg.graph.tuple_count("E")
                << " symmetric=" << (is_symmetric(m, input_string) ? "yes" : "no") << "\n";
      if (!emit_path.empty()) save_structure(cg.graph, emit_path, emit_path + ".sig");
      return 0;
    }

    if (pipeline->parsed()) {
      Machine m = load_machine(machine_path);
      Structure base = load_structure(struct_path);
      LinearOrder order = order_or_identity(order_spec, base.size());
      bool accept = pipeline_name == "L" ? pipeline_L(m, base, &order)
                                         : pipeline_NL(m, base, &order);
      std::cout << (accept ? "ACCEPT" : "REJECT") << "\n";
      return accept ? 0 : 1;
    }

    if (selftest->parsed()) {
      auto results = run_acceptance_suite(&std::cout);
      for (const auto& r : results)
        if (!r.pass) return 1;
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
