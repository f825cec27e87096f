#include "travlab/interp.hpp"

#include <algorithm>
#include <functional>

#include "travlab/error.hpp"
#include "travlab/eval.hpp"

namespace travlab {

std::vector<std::string> group_names(const std::string& base, int k) {
  if (k == 1) return {base};
  std::vector<std::string> out;
  out.reserve(k);
  for (int i = 1; i <= k; ++i) out.push_back(base + "$" + std::to_string(i));
  return out;
}

namespace {

bool formula_quantifier_free(const Formula& f) {
  const FormulaNode& n = *f;
  if (n.kind == FormulaKind::Exists || n.kind == FormulaKind::Forall) return false;
  for (const auto& s : n.subs)
    if (!formula_quantifier_free(s)) return false;
  return true;
}

void check_free_vars(const Formula& f, const std::vector<std::string>& params,
                     const std::string& what) {
  for (const auto& v : free_vars(f))
    if (std::find(params.begin(), params.end(), v) == params.end())
      throw Error(what + " has stray free variable " + v);
}

void check_term_vars(const Term& t, const std::vector<std::string>& params,
                     const std::string& what) {
  for (const auto& v : term_vars(t))
    if (std::find(params.begin(), params.end(), v) == params.end())
      throw Error(what + " has stray variable " + v);
}

} // namespace

void Interpretation::validate() const {
  if (dim < 1) throw Error("interpretation dimension must be >= 1");
  if (static_cast<int>(dom_params.size()) != dim)
    throw Error("domain formula must have exactly dim parameters");
  if (!domain) throw Error("missing domain formula");
  check_against_signature(domain, target);
  check_free_vars(domain, dom_params, "domain formula");
  for (const auto& r : source.relations()) {
    auto it = rel_defs.find(r.name);
    if (it == rel_defs.end()) throw Error("missing definition for relation " + r.name);
    const RelDef& d = it->second;
    if (static_cast<int>(d.params.size()) != r.arity * dim)
      throw Error("relation " + r.name + " definition has wrong parameter count");
    check_against_signature(d.formula, target);
    check_free_vars(d.formula, d.params, "definition of " + r.name);
  }
  for (const auto& f : source.functions()) {
    auto it = fun_defs.find(f.name);
    if (it == fun_defs.end()) throw Error("missing definition for function " + f.name);
    const FunDef& d = it->second;
    if (static_cast<int>(d.params.size()) != f.arity * dim)
      throw Error("function " + f.name + " definition has wrong parameter count");
    if (static_cast<int>(d.fallback.size()) != dim)
      throw Error("function " + f.name + " default must be a dim-tuple");
    for (const auto& c : d.cases) {
      check_against_signature(c.guard, target);
      check_free_vars(c.guard, d.params, "guard of " + f.name);
      if (static_cast<int>(c.value.size()) != dim)
        throw Error("function " + f.name + " case value must be a dim-tuple");
      for (const auto& t : c.value) check_term_vars(t, d.params, "case value of " + f.name);
    }
    for (const auto& t : d.fallback) check_term_vars(t, d.params, "default value of " + f.name);
  }
}

bool Interpretation::quantifier_free() const {
  if (!formula_quantifier_free(domain)) return false;
  for (const auto& [_, d] : rel_defs)
    if (!formula_quantifier_free(d.formula)) return false;
  for (const auto& [_, d] : fun_defs)
    for (const auto& c : d.cases)
      if (!formula_quantifier_free(c.guard)) return false;
  return true;
}

// --- formula translation ---

namespace {

using Cont = std::function<Formula(const std::vector<Term>&)>;
using MultiCont = std::function<Formula(const std::vector<std::vector<Term>>&)>;

std::vector<std::pair<std::string, Term>> param_subst(const std::vector<std::string>& params,
                                                      const std::vector<std::vector<Term>>& groups) {
  std::vector<std::pair<std::string, Term>> sub;
  std::size_t i = 0;
  for (const auto& g : groups)
    for (const auto& t : g) sub.emplace_back(params.at(i++), t);
  if (i != params.size()) throw Error("parameter/argument count mismatch");
  return sub;
}

Formula with_term(const Interpretation& p, const Term& t, const Cont& cont);

Formula with_terms(const Interpretation& p, const std::vector<Term>& ts, std::size_t i,
                   std::vector<std::vector<Term>>& acc, const MultiCont& cont) {
  if (i == ts.size()) return cont(acc);
  return with_term(p, ts[i], [&](const std::vector<Term>& g) {
    acc.push_back(g);
    Formula out = with_terms(p, ts, i + 1, acc, cont);
    acc.pop_back();
    return out;
  });
}

Formula with_terms(const Interpretation& p, const std::vector<Term>& ts, const MultiCont& cont) {
  std::vector<std::vector<Term>> acc;
  return with_terms(p, ts, 0, acc, cont);
}

/// CPS translation of a source term into the k target terms denoting it.
/// Function applications expand through their definition-by-cases: the
/// result is an exclusive disjunction over the cases (first match wins),
/// which is sound in any boolean context because exactly one branch's guard
/// condition holds.
Formula with_term(const Interpretation& p, const Term& t, const Cont& cont) {
  if (t->kind == TermKind::Var) {
    std::vector<Term> g;
    for (const auto& nm : group_names(t->name, p.dim)) g.push_back(var(nm));
    return cont(g);
  }
  auto it = p.fun_defs.find(t->name);
  if (it == p.fun_defs.end()) throw Error("no definition for function symbol " + t->name);
  const FunDef& def = it->second;
  return with_terms(p, t->args, [&](const std::vector<std::vector<Term>>& groups) {
    auto sub = param_subst(def.params, groups);
    std::vector<Formula> branches;
    std::vector<Formula> prior_negated;
    for (const auto& c : def.cases) {
      Formula guard = substitute(c.guard, sub);
      std::vector<Term> value;
      for (const auto& v : c.value) value.push_back(substitute(v, sub));
      std::vector<Formula> conj = prior_negated;
      conj.push_back(guard);
      conj.push_back(cont(value));
      branches.push_back(land_all(conj));
      prior_negated.push_back(lnot(guard));
    }
    std::vector<Term> fallback;
    for (const auto& v : def.fallback) fallback.push_back(substitute(v, sub));
    std::vector<Formula> conj = prior_negated;
    conj.push_back(cont(fallback));
    branches.push_back(land_all(conj));
    // A single unconditional branch needs no disjunction scaffolding.
    if (def.cases.empty()) return branches[0];
    return lor_all(branches);
  });
}

} // namespace

Formula translate_formula(const Interpretation& p, const Formula& f) {
  const FormulaNode& n = *f;
  switch (n.kind) {
    case FormulaKind::True:
    case FormulaKind::False:
      return f;
    case FormulaKind::Atom: {
      auto it = p.rel_defs.find(n.name);
      if (it == p.rel_defs.end()) throw Error("no definition for relation symbol " + n.name);
      const RelDef& def = it->second;
      return with_terms(p, n.terms, [&](const std::vector<std::vector<Term>>& groups) {
        return substitute(def.formula, param_subst(def.params, groups));
      });
    }
    case FormulaKind::Eq:
      return with_terms(p, n.terms, [&](const std::vector<std::vector<Term>>& groups) {
        std::vector<Formula> eqs;
        for (int i = 0; i < p.dim; ++i) eqs.push_back(eq(groups[0][i], groups[1][i]));
        return land_all(eqs);
      });
    case FormulaKind::Not:
      return lnot(translate_formula(p, n.subs[0]));
    case FormulaKind::And:
      return land(translate_formula(p, n.subs[0]), translate_formula(p, n.subs[1]));
    case FormulaKind::Or:
      return lor(translate_formula(p, n.subs[0]), translate_formula(p, n.subs[1]));
    case FormulaKind::Implies:
      return implies(translate_formula(p, n.subs[0]), translate_formula(p, n.subs[1]));
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      std::vector<std::string> names = group_names(n.name, p.dim);
      std::vector<std::pair<std::string, Term>> sub;
      for (int i = 0; i < p.dim; ++i) sub.emplace_back(p.dom_params[i], var(names[i]));
      Formula guard = substitute(p.domain, sub);
      Formula body = translate_formula(p, n.subs[0]);
      Formula inner = n.kind == FormulaKind::Exists ? land(guard, body) : implies(guard, body);
      for (int i = p.dim - 1; i >= 0; --i)
        inner = n.kind == FormulaKind::Exists ? exists(names[i], inner) : forall(names[i], inner);
      return inner;
    }
  }
  throw Error("unreachable formula kind");
}

// --- structure translation ---

namespace {

/// Evaluate a definition-by-cases at concrete arguments; returns the k-tuple
/// of target elements.
std::vector<int> eval_fun_def(const Interpretation& p, const Structure& a, const FunDef& def,
                              const std::vector<int>& flat_args) {
  std::vector<detail::Env> frames(def.params.size());
  const detail::Env* top = nullptr;
  for (std::size_t i = 0; i < def.params.size(); ++i) {
    frames[i] = {top, &def.params[i], flat_args[i]};
    top = &frames[i];
  }
  const std::vector<Term>* chosen = &def.fallback;
  for (const auto& c : def.cases) {
    if (detail::eval_unchecked(a, *c.guard, top)) {
      chosen = &c.value;
      break;
    }
  }
  std::vector<int> out;
  out.reserve(p.dim);
  for (const auto& t : *chosen) out.push_back(detail::eval_term_unchecked(a, *t, top));
  return out;
}

constexpr long kTupleCap = 4'000'000;

} // namespace

TranslatedStructure translate_structure_full(const Interpretation& p, const Structure& a) {
  p.validate();
  if (!a.sig().contains(p.target))
    throw Error("structure signature does not cover the interpretation's target signature");

  long total = 1;
  for (int i = 0; i < p.dim; ++i) {
    total *= std::max(a.size(), 1);
    if (total > kTupleCap) throw Error("tuple space too large for structure translation");
  }

  // Collect domain tuples in lexicographic order.
  std::vector<std::vector<int>> tuples;
  {
    std::vector<int> tup(p.dim, 0);
    std::vector<detail::Env> frames(p.dim);
    bool done = a.size() == 0;
    while (!done) {
      const detail::Env* top = nullptr;
      for (int i = 0; i < p.dim; ++i) {
        frames[i] = {top, &p.dom_params[i], tup[i]};
        top = &frames[i];
      }
      if (detail::eval_unchecked(a, *p.domain, top)) tuples.push_back(tup);
      int i = p.dim - 1;
      while (i >= 0 && ++tup[i] == a.size()) tup[i--] = 0;
      if (i < 0) done = true;
    }
  }

  int m = static_cast<int>(tuples.size());
  // Map flattened tuple -> new index for constant/function lookups.
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < m; ++i) index[tuples[i]] = i;

  Structure out(p.source, m);

  for (const auto& r : p.source.relations()) {
    const RelDef& def = p.rel_defs.at(r.name);
    std::vector<int> elems(r.arity, 0);
    std::vector<detail::Env> frames(def.params.size());
    bool done = m == 0;
    std::vector<int> tuple(r.arity);
    while (!done) {
      const detail::Env* top = nullptr;
      std::size_t pi = 0;
      for (int i = 0; i < r.arity; ++i)
        for (int j = 0; j < p.dim; ++j) {
          frames[pi] = {top, &def.params[pi], tuples[elems[i]][j]};
          top = &frames[pi];
          ++pi;
        }
      if (detail::eval_unchecked(a, *def.formula, top)) {
        for (int i = 0; i < r.arity; ++i) tuple[i] = elems[i];
        out.add_tuple(r.name, tuple);
      }
      int i = r.arity - 1;
      while (i >= 0 && ++elems[i] == m) elems[i--] = 0;
      if (i < 0) done = true;
    }
  }

  for (const auto& f : p.source.functions()) {
    const FunDef& def = p.fun_defs.at(f.name);
    std::vector<int> elems(f.arity, 0);
    bool done = m == 0 && f.arity > 0;
    if (m == 0 && f.arity == 0)
      throw Error("constant " + f.name + " has no denotation in an empty translated domain");
    while (!done) {
      std::vector<int> flat;
      flat.reserve(f.arity * p.dim);
      for (int i = 0; i < f.arity; ++i)
        for (int j = 0; j < p.dim; ++j) flat.push_back(tuples[elems[i]][j]);
      std::vector<int> val = eval_fun_def(p, a, def, flat);
      auto it = index.find(val);
      if (it == index.end())
        throw Error("function " + f.name + " maps into a tuple outside the translated domain");
      out.set_fun(f.name, std::vector<int>(elems.begin(), elems.begin() + f.arity), it->second);
      if (f.arity == 0) break;
      int i = f.arity - 1;
      while (i >= 0 && ++elems[i] == m) elems[i--] = 0;
      if (i < 0) done = true;
    }
  }

  out.validate();
  return {std::move(out), std::move(tuples)};
}

Structure translate_structure(const Interpretation& p, const Structure& a) {
  return translate_structure_full(p, a).structure;
}

// --- composition ---

namespace {

/// Syntactic translation of a K-term into k_in J-terms. Only possible when
/// every function symbol involved has a default-only inner definition.
std::vector<Term> translate_term_tuple(const Interpretation& inner, const Term& t) {
  if (t->kind == TermKind::Var) {
    std::vector<Term> out;
    for (const auto& nm : group_names(t->name, inner.dim)) out.push_back(var(nm));
    return out;
  }
  auto it = inner.fun_defs.find(t->name);
  if (it == inner.fun_defs.end()) throw Error("no inner definition for function " + t->name);
  const FunDef& def = it->second;
  if (!def.cases.empty())
    throw Error("cannot compose through cased inner definition of " + t->name +
                " at the term level");
  std::vector<std::vector<Term>> groups;
  for (const auto& arg : t->args) groups.push_back(translate_term_tuple(inner, arg));
  auto sub = param_subst(def.params, groups);
  std::vector<Term> out;
  for (const auto& v : def.fallback) out.push_back(substitute(v, sub));
  return out;
}

std::vector<std::string> flatten_params(const std::vector<std::string>& outer_params, int k_in) {
  std::vector<std::string> out;
  for (const auto& pname : outer_params)
    for (const auto& nm : group_names(pname, k_in)) out.push_back(nm);
  return out;
}

Formula guard_groups(const Interpretation& inner, const std::vector<std::string>& outer_params) {
  // Each outer parameter group must itself satisfy the inner domain formula.
  std::vector<Formula> guards;
  for (const auto& pname : outer_params) {
    std::vector<std::pair<std::string, Term>> sub;
    auto names = group_names(pname, inner.dim);
    for (int i = 0; i < inner.dim; ++i) sub.emplace_back(inner.dom_params[i], var(names[i]));
    guards.push_back(substitute(inner.domain, sub));
  }
  return land_all(guards);
}

} // namespace

Interpretation compose(const Interpretation& outer, const Interpretation& inner) {
  outer.validate();
  inner.validate();
  if (!outer.target.equivalent(inner.source))
    throw Error("composition signature mismatch: outer target must equal inner source");

  Interpretation out;
  out.name = outer.name + "." + inner.name;
  out.dim = outer.dim * inner.dim;
  out.source = outer.source;
  out.target = inner.target;
  out.dom_params = flatten_params(outer.dom_params, inner.dim);
  out.domain = land(guard_groups(inner, outer.dom_params), translate_formula(inner, outer.domain));

  for (const auto& [rname, rdef] : outer.rel_defs) {
    RelDef d;
    d.params = flatten_params(rdef.params, inner.dim);
    d.formula = translate_formula(inner, rdef.formula);
    out.rel_defs[rname] = std::move(d);
  }
  for (const auto& [fname, fdef] : outer.fun_defs) {
    FunDef d;
    d.params = flatten_params(fdef.params, inner.dim);
    for (const auto& c : fdef.cases) {
      FunCase nc;
      nc.guard = translate_formula(inner, c.guard);
      for (const auto& v : c.value)
        for (auto& piece : translate_term_tuple(inner, v)) nc.value.push_back(piece);
      d.cases.push_back(std::move(nc));
    }
    for (const auto& v : fdef.fallback)
      for (auto& piece : translate_term_tuple(inner, v)) d.fallback.push_back(piece);
    out.fun_defs[fname] = std::move(d);
  }
  out.validate();
  return out;
}

Interpretation identity_interpretation(const Signature& sig) {
  Interpretation p;
  p.name = "id";
  p.dim = 1;
  p.source = sig;
  p.target = sig;
  p.dom_params = {"p1"};
  p.domain = truef();
  for (const auto& r : sig.relations()) {
    RelDef d;
    std::vector<Term> args;
    for (int i = 1; i <= r.arity; ++i) {
      d.params.push_back("p" + std::to_string(i));
      args.push_back(var(d.params.back()));
    }
    d.formula = atom(r.name, std::move(args));
    p.rel_defs[r.name] = std::move(d);
  }
  for (const auto& f : sig.functions()) {
    FunDef d;
    std::vector<Term> args;
    for (int i = 1; i <= f.arity; ++i) {
      d.params.push_back("p" + std::to_string(i));
      args.push_back(var(d.params.back()));
    }
    d.fallback = {apply(f.name, std::move(args))};
    p.fun_defs[f.name] = std::move(d);
  }
  p.validate();
  return p;
}

FundamentalReport check_fundamental_property(const Interpretation& p, const Structure& a,
                                             const Formula& f) {
  TranslatedStructure tr = translate_structure_full(p, a);
  Formula translated = translate_formula(p, f);
  std::set<std::string> fv_set = free_vars(f);
  std::vector<std::string> fv(fv_set.begin(), fv_set.end());

  FundamentalReport report;
  int m = tr.structure.size();
  std::vector<int> assign(fv.size(), 0);
  bool done = !fv.empty() && m == 0;
  while (!done) {
    Valuation inner_val, outer_val;
    for (std::size_t i = 0; i < fv.size(); ++i) {
      inner_val[fv[i]] = assign[i];
      auto names = group_names(fv[i], p.dim);
      for (int j = 0; j < p.dim; ++j) outer_val[names[j]] = tr.tuples[assign[i]][j];
    }
    bool lhs = evaluate(a, translated, outer_val);
    bool rhs = evaluate(tr.structure, f, inner_val);
    if (lhs == rhs)
      ++report.agreements;
    else
      ++report.disagreements;
    if (fv.empty()) break;
    int i = static_cast<int>(fv.size()) - 1;
    while (i >= 0 && ++assign[i] == m) assign[i--] = 0;
    if (i < 0) done = true;
  }
  return report;
}

} // namespace travlab
