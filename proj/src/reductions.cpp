#include "travlab/reductions.hpp"

#include "travlab/error.hpp"
#include "travlab/eval.hpp"
#include "travlab/traversal.hpp"

namespace travlab {

namespace {

Formula le(const Term& a, const Term& b) { return lor(less(a, b), eq(a, b)); }

Formula has_prior_neighbor(const std::string& w) {
  return exists("x#", land(less(var("x#"), var(w)), atom("E", {var("x#"), var(w)})));
}

} // namespace

Formula connectivity_between(const Term& a, const Term& b) {
  Formula between = lor(land(less(a, var("w#")), le(var("w#"), b)),
                        land(less(b, var("w#")), le(var("w#"), a)));
  return lnot(exists("w#", land(between, lnot(has_prior_neighbor("w#")))));
}

Formula connectivity_sentence() { return connectivity_between(cnst("s"), cnst("t")); }

Formula acyclicity_sentence() {
  Formula two_priors = exists(
      "x#", exists("y#", land(lnot(eq(var("x#"), var("y#"))),
                              land(land(less(var("x#"), var("w#")), less(var("y#"), var("w#"))),
                                   land(atom("E", {var("x#"), var("w#")}),
                                        atom("E", {var("y#"), var("w#")}))))));
  return lnot(exists("w#", two_priors));
}

Interpretation square_interpretation() {
  Interpretation p;
  p.name = "square";
  p.dim = 1;
  p.source = graph_sig(0);
  p.target = graph_sig(0);
  p.dom_params = {"p1"};
  p.domain = truef();
  RelDef e;
  e.params = {"p1", "p2"};
  e.formula = land(exists("z#", land(atom("E", {var("p1"), var("z#")}),
                                     atom("E", {var("z#"), var("p2")}))),
                   lnot(eq(var("p1"), var("p2"))));
  p.rel_defs["E"] = std::move(e);
  p.validate();
  return p;
}

Interpretation parity_interpretation() {
  Interpretation p;
  p.name = "parity";
  p.dim = 1;
  p.source = graph_sig(0);
  p.target = order_sig();
  p.dom_params = {"p1"};
  p.domain = truef();

  auto succ = [](const Term& a, const Term& b) {
    return land(less(a, b), lnot(exists("c#", land(less(a, var("c#")), less(var("c#"), b)))));
  };
  auto is_max = [](const Term& a) { return lnot(exists("c#", less(a, var("c#")))); };
  auto is_min = [&](const Term& a) { return lnot(exists("c#", less(var("c#"), a))); };

  auto plus2 = [&](const Term& u, const Term& v) {
    return exists("m#", land(succ(u, var("m#")), succ(var("m#"), v)));
  };
  auto wrap = [&](const Term& u, const Term& v) {
    // u is second-to-last and v = min, or u = max and v is second element.
    Formula a = land(exists("m#", land(succ(u, var("m#")), is_max(var("m#")))), is_min(v));
    Formula b = land(is_max(u), exists("m#", land(is_min(var("m#")), succ(var("m#"), v))));
    return lor(a, b);
  };

  RelDef e;
  e.params = {"p1", "p2"};
  Term u = var("p1"), v = var("p2");
  e.formula = land(lnot(eq(u, v)),
                   lor(lor(plus2(u, v), plus2(v, u)), lor(wrap(u, v), wrap(v, u))));
  p.rel_defs["E"] = std::move(e);
  p.validate();
  return p;
}

Interpretation rho() {
  Interpretation p;
  p.name = "rho";
  p.dim = 2;
  p.source = graph_sig(3);
  p.target = with_successor(graph_sig(2));
  p.dom_params = {"p1", "p2"};
  p.domain = truef();

  // (u,a)-(v,b): step the level by one while following an edge or staying
  // put. The a != b guards keep S(max)=max from creating spurious edges at
  // the top level.
  Term u = var("p1"), a = var("p2"), v = var("p3"), b = var("p4");
  Formula stay_or_edge_fwd = lor(atom("E", {u, v}), eq(u, v));
  Formula stay_or_edge_bwd = lor(atom("E", {v, u}), eq(u, v));
  Formula fwd = land(land(eq(apply("S", {a}), b), lnot(eq(a, b))), stay_or_edge_fwd);
  Formula bwd = land(land(eq(apply("S", {b}), a), lnot(eq(b, a))), stay_or_edge_bwd);
  RelDef e;
  e.params = {"p1", "p2", "p3", "p4"};
  e.formula = lor(fwd, bwd);
  p.rel_defs["E"] = std::move(e);

  auto constant = [&](const char* name, const char* c1, const char* c2) {
    FunDef d;
    d.fallback = {cnst(c1), cnst(c2)};
    p.fun_defs[name] = std::move(d);
  };
  constant("x", "s", "min");
  constant("y", "s", "max");
  constant("z", "t", "max");
  p.validate();
  return p;
}

Interpretation tau() {
  Interpretation p;
  p.name = "tau";
  p.dim = 2;
  p.source = graph_sig(6);
  p.target = graph_sig(3);
  p.dom_params = {"p1", "p2"};
  // Second coordinate tags the copy: x for copy 1, y for copy 2.
  p.domain = lor(eq(var("p2"), cnst("x")), eq(var("p2"), cnst("y")));

  Term u = var("p1"), c = var("p2"), v = var("p3"), d = var("p4");
  Formula within = land(eq(c, d), atom("E", {u, v}));
  Formula bridge_tags = lor(land(eq(c, cnst("x")), eq(d, cnst("y"))),
                            land(eq(c, cnst("y")), eq(d, cnst("x"))));
  // The tag-inequality guard avoids a self-loop in the degenerate x = y case.
  Formula bridge = land(land(eq(u, cnst("x")), eq(v, cnst("x"))),
                        land(bridge_tags, lnot(eq(c, d))));
  RelDef e;
  e.params = {"p1", "p2", "p3", "p4"};
  e.formula = lor(within, bridge);
  p.rel_defs["E"] = std::move(e);

  auto constant = [&](const char* name, const char* vertex, const char* tag) {
    FunDef def;
    def.fallback = {cnst(vertex), cnst(tag)};
    p.fun_defs[name] = std::move(def);
  };
  constant("x1", "x", "x");
  constant("y1", "y", "x");
  constant("z1", "z", "x");
  constant("x2", "x", "y");
  constant("y2", "y", "y");
  constant("z2", "z", "y");
  p.validate();
  return p;
}

Formula psi() {
  std::vector<Formula> parts;
  for (const char* c : {"y1", "z1", "x2", "y2", "z2"})
    parts.push_back(connectivity_between(cnst("x1"), cnst(c)));
  parts.push_back(implies(less(cnst("x1"), cnst("x2")),
                          same_quasi_level_formula(cnst("y2"), cnst("z2"))));
  parts.push_back(implies(less(cnst("x2"), cnst("x1")),
                          same_quasi_level_formula(cnst("y1"), cnst("z1"))));
  // When the two copies coincide (x1 = x2), both guards above are vacuous;
  // in that case the distances agree exactly when z sits on the shared tag.
  parts.push_back(implies(eq(cnst("x1"), cnst("x2")), eq(cnst("y2"), cnst("z2"))));
  return land_all(parts);
}

bool directed_reachable_bft(const Structure& successor_digraph) {
  if (!successor_digraph.is_successor_expansion())
    throw Error("directed_reachable_bft: input lacks the successor profile");
  Structure g3 = translate_structure(rho(), successor_digraph);
  Structure g6 = translate_structure(tau(), g3);
  LinearOrder bft = canonical_bft(g6, LinearOrder::identity(g6.size()));
  return evaluate(order_expansion(g6, bft), psi());
}

} // namespace travlab
