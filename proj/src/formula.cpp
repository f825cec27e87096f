#include "travlab/formula.hpp"

#include <atomic>

#include "travlab/error.hpp"
#include "travlab/signature.hpp"

namespace travlab {

namespace {

Term mk_term(TermKind k, std::string name, std::vector<Term> args = {}) {
  auto n = std::make_shared<TermNode>();
  n->kind = k;
  n->name = std::move(name);
  n->args = std::move(args);
  return Term(std::move(n));
}

Formula mk(FormulaKind k, std::string name = {}, std::vector<Term> terms = {},
           std::vector<Formula> subs = {}) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = k;
  n->name = std::move(name);
  n->terms = std::move(terms);
  n->subs = std::move(subs);
  return Formula(std::move(n));
}

} // namespace

Term var(std::string name) { return mk_term(TermKind::Var, std::move(name)); }
Term apply(std::string fun, std::vector<Term> args) {
  return mk_term(TermKind::Apply, std::move(fun), std::move(args));
}
Term cnst(std::string name) { return mk_term(TermKind::Apply, std::move(name)); }

Formula truef() { return mk(FormulaKind::True); }
Formula falsef() { return mk(FormulaKind::False); }
Formula atom(std::string rel, std::vector<Term> args) {
  return mk(FormulaKind::Atom, std::move(rel), std::move(args));
}
Formula eq(Term a, Term b) { return mk(FormulaKind::Eq, {}, {std::move(a), std::move(b)}); }
Formula neq(Term a, Term b) { return lnot(eq(std::move(a), std::move(b))); }
Formula lnot(Formula f) { return mk(FormulaKind::Not, {}, {}, {std::move(f)}); }
Formula land(Formula a, Formula b) {
  return mk(FormulaKind::And, {}, {}, {std::move(a), std::move(b)});
}
Formula lor(Formula a, Formula b) {
  return mk(FormulaKind::Or, {}, {}, {std::move(a), std::move(b)});
}
Formula implies(Formula a, Formula b) {
  return mk(FormulaKind::Implies, {}, {}, {std::move(a), std::move(b)});
}
Formula exists(std::string v, Formula body) {
  return mk(FormulaKind::Exists, std::move(v), {}, {std::move(body)});
}
Formula forall(std::string v, Formula body) {
  return mk(FormulaKind::Forall, std::move(v), {}, {std::move(body)});
}
Formula less(Term a, Term b) { return atom("<", {std::move(a), std::move(b)}); }

Formula land_all(std::vector<Formula> fs) {
  if (fs.empty()) return truef();
  Formula acc = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) acc = land(acc, fs[i]);
  return acc;
}

Formula lor_all(std::vector<Formula> fs) {
  if (fs.empty()) return falsef();
  Formula acc = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) acc = lor(acc, fs[i]);
  return acc;
}

std::set<std::string> term_vars(const Term& t) {
  std::set<std::string> out;
  auto walk = [&](auto&& self, const TermNode& n) -> void {
    if (n.kind == TermKind::Var) out.insert(n.name);
    for (const auto& a : n.args) self(self, *a);
  };
  walk(walk, *t);
  return out;
}

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> out;
  auto walk = [&](auto&& self, const FormulaNode& n, std::set<std::string>& bound) -> void {
    for (const auto& t : n.terms)
      for (const auto& v : term_vars(t))
        if (!bound.count(v)) out.insert(v);
    if (n.kind == FormulaKind::Exists || n.kind == FormulaKind::Forall) {
      bool fresh = bound.insert(n.name).second;
      self(self, *n.subs[0], bound);
      if (fresh) bound.erase(n.name);
    } else {
      for (const auto& s : n.subs) self(self, *s, bound);
    }
  };
  std::set<std::string> bound;
  walk(walk, *f, bound);
  return out;
}

Term substitute(const Term& t, const std::vector<std::pair<std::string, Term>>& map) {
  const TermNode& n = *t;
  if (n.kind == TermKind::Var) {
    for (const auto& [from, to] : map)
      if (from == n.name) return to;
    return t;
  }
  std::vector<Term> args;
  args.reserve(n.args.size());
  bool changed = false;
  for (const auto& a : n.args) {
    Term s = substitute(a, map);
    changed = changed || s.ptr() != a.ptr();
    args.push_back(std::move(s));
  }
  return changed ? apply(n.name, std::move(args)) : t;
}

namespace {

std::string fresh_var(const std::string& base, const std::set<std::string>& avoid) {
  static std::atomic<unsigned long> counter{0};
  for (;;) {
    std::string cand = base + "'" + std::to_string(counter.fetch_add(1));
    if (!avoid.count(cand)) return cand;
  }
}

} // namespace

Formula substitute(const Formula& f, const std::vector<std::pair<std::string, Term>>& map) {
  if (map.empty()) return f;
  const FormulaNode& n = *f;
  switch (n.kind) {
    case FormulaKind::True:
    case FormulaKind::False:
      return f;
    case FormulaKind::Atom:
    case FormulaKind::Eq: {
      std::vector<Term> terms;
      terms.reserve(n.terms.size());
      for (const auto& t : n.terms) terms.push_back(substitute(t, map));
      return Formula([&] {
        auto node = std::make_shared<FormulaNode>();
        node->kind = n.kind;
        node->name = n.name;
        node->terms = std::move(terms);
        return node;
      }());
    }
    case FormulaKind::Not:
      return lnot(substitute(n.subs[0], map));
    case FormulaKind::And:
      return land(substitute(n.subs[0], map), substitute(n.subs[1], map));
    case FormulaKind::Or:
      return lor(substitute(n.subs[0], map), substitute(n.subs[1], map));
    case FormulaKind::Implies:
      return implies(substitute(n.subs[0], map), substitute(n.subs[1], map));
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      // Drop substitutions shadowed by the binder; rename on capture.
      std::vector<std::pair<std::string, Term>> inner;
      std::set<std::string> incoming_vars;
      for (const auto& [from, to] : map) {
        if (from == n.name) continue;
        inner.emplace_back(from, to);
        for (const auto& v : term_vars(to)) incoming_vars.insert(v);
      }
      std::string bound = n.name;
      Formula body = n.subs[0];
      if (incoming_vars.count(bound)) {
        std::set<std::string> avoid = incoming_vars;
        for (const auto& v : free_vars(body)) avoid.insert(v);
        std::string renamed = fresh_var(bound, avoid);
        body = substitute(body, {{bound, var(renamed)}});
        bound = renamed;
      }
      if (inner.empty()) {
        if (bound == n.name) return f;
      } else {
        body = substitute(body, inner);
      }
      return n.kind == FormulaKind::Exists ? exists(bound, body) : forall(bound, body);
    }
  }
  throw Error("unreachable formula kind");
}

std::string to_string(const Term& t) {
  const TermNode& n = *t;
  if (n.kind == TermKind::Var || n.args.empty()) return n.name;
  std::string out = n.name + "(";
  for (std::size_t i = 0; i < n.args.size(); ++i) {
    if (i) out += ",";
    out += to_string(n.args[i]);
  }
  return out + ")";
}

std::string to_string(const Formula& f) {
  const FormulaNode& n = *f;
  switch (n.kind) {
    case FormulaKind::True:
      return "true";
    case FormulaKind::False:
      return "false";
    case FormulaKind::Atom: {
      if (n.name == "<" && n.terms.size() == 2)
        return "(" + to_string(n.terms[0]) + " < " + to_string(n.terms[1]) + ")";
      std::string out = n.name + "(";
      for (std::size_t i = 0; i < n.terms.size(); ++i) {
        if (i) out += ",";
        out += to_string(n.terms[i]);
      }
      return out + ")";
    }
    case FormulaKind::Eq:
      return "(" + to_string(n.terms[0]) + " = " + to_string(n.terms[1]) + ")";
    case FormulaKind::Not:
      return "!" + to_string(n.subs[0]);
    case FormulaKind::And:
      return "(" + to_string(n.subs[0]) + " & " + to_string(n.subs[1]) + ")";
    case FormulaKind::Or:
      return "(" + to_string(n.subs[0]) + " | " + to_string(n.subs[1]) + ")";
    case FormulaKind::Implies:
      return "(" + to_string(n.subs[0]) + " -> " + to_string(n.subs[1]) + ")";
    case FormulaKind::Exists:
      return "exists " + n.name + " (" + to_string(n.subs[0]) + ")";
    case FormulaKind::Forall:
      return "forall " + n.name + " (" + to_string(n.subs[0]) + ")";
  }
  throw Error("unreachable formula kind");
}

namespace {

void check_term(const TermNode& t, const Signature& sig, const std::set<std::string>& bound) {
  if (t.kind == TermKind::Var) {
    if (sig.has_symbol(t.name))
      throw Error("variable name collides with signature symbol: " + t.name);
    return;
  }
  const FunSym* f = sig.find_fun(t.name);
  if (!f) throw Error("unknown function symbol: " + t.name);
  if (static_cast<int>(t.args.size()) != f->arity)
    throw Error("arity mismatch for function " + t.name);
  for (const auto& a : t.args) check_term(*a, sig, bound);
  (void)bound;
}

void check_formula(const FormulaNode& n, const Signature& sig, std::set<std::string>& bound) {
  switch (n.kind) {
    case FormulaKind::True:
    case FormulaKind::False:
      return;
    case FormulaKind::Atom: {
      const RelSym* r = sig.find_rel(n.name);
      if (!r) throw Error("unknown relation symbol: " + n.name);
      if (static_cast<int>(n.terms.size()) != r->arity)
        throw Error("arity mismatch for relation " + n.name);
      for (const auto& t : n.terms) check_term(*t, sig, bound);
      return;
    }
    case FormulaKind::Eq:
      for (const auto& t : n.terms) check_term(*t, sig, bound);
      return;
    case FormulaKind::Not:
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
      for (const auto& s : n.subs) check_formula(*s, sig, bound);
      return;
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      if (sig.has_symbol(n.name))
        throw Error("bound variable collides with signature symbol: " + n.name);
      bool fresh = bound.insert(n.name).second;
      check_formula(*n.subs[0], sig, bound);
      if (fresh) bound.erase(n.name);
      return;
    }
  }
}

} // namespace

void check_against_signature(const Formula& f, const Signature& sig) {
  std::set<std::string> bound;
  check_formula(*f, sig, bound);
}

} // namespace travlab
