#include "travlab/eval.hpp"

#include "travlab/error.hpp"

namespace travlab {

namespace detail {

namespace {

int lookup(const Env* env, const std::string& name) {
  for (const Env* e = env; e; e = e->up) {
    // Pointer comparison first: quantifier frames reuse the AST's string.
    if (e->name == &name || *e->name == name) return e->value;
  }
  throw Error("unbound variable: " + name);
}

} // namespace

int eval_term_unchecked(const Structure& a, const TermNode& t, const Env* env) {
  if (t.kind == TermKind::Var) return lookup(env, t.name);
  thread_local std::vector<int> scratch;
  std::vector<int> args;
  args.reserve(t.args.size());
  for (const auto& sub : t.args) args.push_back(eval_term_unchecked(a, *sub, env));
  return a.apply(t.name, args);
}

bool eval_unchecked(const Structure& a, const FormulaNode& f, const Env* env) {
  switch (f.kind) {
    case FormulaKind::True:
      return true;
    case FormulaKind::False:
      return false;
    case FormulaKind::Atom: {
      std::vector<int> args;
      args.reserve(f.terms.size());
      for (const auto& t : f.terms) args.push_back(eval_term_unchecked(a, *t, env));
      return a.holds(f.name, args);
    }
    case FormulaKind::Eq:
      return eval_term_unchecked(a, *f.terms[0], env) ==
             eval_term_unchecked(a, *f.terms[1], env);
    case FormulaKind::Not:
      return !eval_unchecked(a, *f.subs[0], env);
    case FormulaKind::And:
      return eval_unchecked(a, *f.subs[0], env) && eval_unchecked(a, *f.subs[1], env);
    case FormulaKind::Or:
      return eval_unchecked(a, *f.subs[0], env) || eval_unchecked(a, *f.subs[1], env);
    case FormulaKind::Implies:
      return !eval_unchecked(a, *f.subs[0], env) || eval_unchecked(a, *f.subs[1], env);
    case FormulaKind::Exists: {
      Env frame{env, &f.name, 0};
      for (int v = 0; v < a.size(); ++v) {
        frame.value = v;
        if (eval_unchecked(a, *f.subs[0], &frame)) return true;
      }
      return false;
    }
    case FormulaKind::Forall: {
      Env frame{env, &f.name, 0};
      for (int v = 0; v < a.size(); ++v) {
        frame.value = v;
        if (!eval_unchecked(a, *f.subs[0], &frame)) return false;
      }
      return true;
    }
  }
  throw Error("unreachable formula kind");
}

} // namespace detail

bool evaluate(const Structure& a, const Formula& f, const Valuation& val) {
  check_against_signature(f, a.sig());
  for (const auto& v : free_vars(f))
    if (!val.count(v)) throw Error("free variable not assigned: " + v);
  // Build an env chain from the valuation.
  std::vector<detail::Env> frames;
  frames.reserve(val.size());
  const detail::Env* top = nullptr;
  for (const auto& [name, value] : val) {
    if (value < 0 || value >= a.size()) throw Error("valuation out of domain: " + name);
    frames.push_back({top, &name, value});
    top = &frames.back();
  }
  return detail::eval_unchecked(a, *f, top);
}

int evaluate_term(const Structure& a, const Term& t, const Valuation& val) {
  std::vector<detail::Env> frames;
  frames.reserve(val.size());
  const detail::Env* top = nullptr;
  for (const auto& [name, value] : val) {
    frames.push_back({top, &name, value});
    top = &frames.back();
  }
  return detail::eval_term_unchecked(a, *t, top);
}

} // namespace travlab
