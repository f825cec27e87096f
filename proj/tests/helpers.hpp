#ifndef TRAVLAB_TEST_HELPERS_HPP
#define TRAVLAB_TEST_HELPERS_HPP

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "travlab/formula.hpp"
#include "travlab/structure.hpp"

namespace testutil {

// --- independent reference evaluator -------------------------------------
// Deliberately written with none of the library's evaluation machinery:
// plain map environments and direct recursion, as a cross-check oracle.

inline int naive_term(const travlab::Structure& a, const travlab::TermNode& t,
                      const std::map<std::string, int>& env) {
  using namespace travlab;
  if (t.kind == TermKind::Var) {
    auto it = env.find(t.name);
    if (it != env.end()) return it->second;
    return a.apply(t.name, {}); // constant
  }
  std::vector<int> args;
  for (const Term& sub : t.args) args.push_back(naive_term(a, *sub, env));
  return a.apply(t.name, args);
}

inline bool naive_eval(const travlab::Structure& a, const travlab::FormulaNode& f,
                       std::map<std::string, int> env) {
  using namespace travlab;
  switch (f.kind) {
    case FormulaKind::True: return true;
    case FormulaKind::False: return false;
    case FormulaKind::Atom: {
      std::vector<int> args;
      for (const Term& t : f.terms) args.push_back(naive_term(a, *t, env));
      return a.holds(f.name, args);
    }
    case FormulaKind::Eq:
      return naive_term(a, *f.terms[0], env) == naive_term(a, *f.terms[1], env);
    case FormulaKind::Not: return !naive_eval(a, *f.subs[0], env);
    case FormulaKind::And:
      return naive_eval(a, *f.subs[0], env) && naive_eval(a, *f.subs[1], env);
    case FormulaKind::Or:
      return naive_eval(a, *f.subs[0], env) || naive_eval(a, *f.subs[1], env);
    case FormulaKind::Implies:
      return !naive_eval(a, *f.subs[0], env) || naive_eval(a, *f.subs[1], env);
    case FormulaKind::Exists:
      for (int e = 0; e < a.size(); ++e) {
        env[f.name] = e;
        if (naive_eval(a, *f.subs[0], env)) return true;
      }
      return false;
    case FormulaKind::Forall:
      for (int e = 0; e < a.size(); ++e) {
        env[f.name] = e;
        if (!naive_eval(a, *f.subs[0], env)) return false;
      }
      return true;
  }
  throw std::logic_error("unreachable");
}

inline bool naive_eval(const travlab::Structure& a, const travlab::Formula& f,
                       std::map<std::string, int> env = {}) {
  return naive_eval(a, *f, std::move(env));
}

// --- small graph builders -------------------------------------------------

inline travlab::Structure graph_with_edges(int n,
                                           const std::vector<std::pair<int, int>>& edges) {
  travlab::Structure g(travlab::graph_sig(0), n);
  for (auto [a, b] : edges) {
    g.add_tuple("E", {a, b});
    g.add_tuple("E", {b, a});
  }
  g.validate();
  return g;
}

inline travlab::Structure path_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return graph_with_edges(n, edges);
}

inline travlab::Structure cycle_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return graph_with_edges(n, edges);
}

inline travlab::Structure random_graph(int n, std::mt19937& rng, double p = 0.5) {
  travlab::Structure g(travlab::graph_sig(0), n);
  std::bernoulli_distribution coin(p);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) {
        g.add_tuple("E", {i, j});
        g.add_tuple("E", {j, i});
      }
  return g;
}

// --- random formulas over a relational signature ---------------------------

struct RandomFormulas {
  std::mt19937& rng;
  const travlab::Signature& sig;
  int counter = 0;

  travlab::Term term(const std::vector<std::string>& scope) {
    using namespace travlab;
    std::vector<Term> options;
    for (const auto& v : scope) options.push_back(var(v));
    for (const auto& f : sig.functions())
      if (f.arity == 0) options.push_back(cnst(f.name));
    if (options.empty()) throw std::logic_error("no terms available");
    Term base = options[rng() % options.size()];
    for (const auto& f : sig.functions())
      if (f.arity == 1 && rng() % 3 == 0) return apply(f.name, {base});
    return base;
  }

  travlab::Formula gen(std::vector<std::string> scope, int depth) {
    using namespace travlab;
    bool has_terms = !scope.empty() ||
                     std::any_of(sig.functions().begin(), sig.functions().end(),
                                 [](const FunSym& f) { return f.arity == 0; });
    if (depth == 0) {
      if (has_terms && !sig.relations().empty() && rng() % 3 != 0) {
        const RelSym& r = sig.relations()[rng() % sig.relations().size()];
        std::vector<Term> args;
        for (int i = 0; i < r.arity; ++i) args.push_back(term(scope));
        return atom(r.name, std::move(args));
      }
      if (has_terms && rng() % 2 == 0) return eq(term(scope), term(scope));
      return rng() % 2 == 0 ? truef() : falsef();
    }
    switch (rng() % 7) {
      case 0: return lnot(gen(scope, depth - 1));
      case 1: return land(gen(scope, depth - 1), gen(scope, depth - 1));
      case 2: return lor(gen(scope, depth - 1), gen(scope, depth - 1));
      case 3: return implies(gen(scope, depth - 1), gen(scope, depth - 1));
      case 4:
      case 5: {
        std::string v = "q" + std::to_string(counter++);
        auto inner = scope;
        inner.push_back(v);
        Formula body = gen(inner, depth - 1);
        return rng() % 2 == 0 ? exists(v, body) : forall(v, body);
      }
      default: return gen(scope, 0);
    }
  }
};

} // namespace testutil

#endif
