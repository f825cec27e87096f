#ifndef TRAVLAB_INTERP_HPP
#define TRAVLAB_INTERP_HPP

#include <map>
#include <string>
#include <vector>

#include "travlab/formula.hpp"
#include "travlab/signature.hpp"
#include "travlab/structure.hpp"

namespace travlab {

/// A k-ary elementary interpretation p : L -> K. Following the model-theory
/// arrow convention, `source` is L (the signature whose formulas we can
/// translate INTO K-formulas) and `target` is K (the signature of input
/// structures); applying the interpretation to a K-structure A yields the
/// L-structure written A^p.

struct RelDef {
  std::vector<std::string> params; // arity * k variable names
  Formula formula;                 // K-formula over the params
};

struct FunCase {
  Formula guard;           // K-formula over the params
  std::vector<Term> value; // k K-terms over the params
};

/// Definition by cases, first-match-wins, with a mandatory default.
struct FunDef {
  std::vector<std::string> params; // arity * k names (empty for constants)
  std::vector<FunCase> cases;
  std::vector<Term> fallback; // k K-terms, used when no guard fires
};

struct Interpretation {
  std::string name;
  int dim = 1;
  Signature source; // L
  Signature target; // K
  std::vector<std::string> dom_params; // k names
  Formula domain;                      // K-formula over dom_params
  std::map<std::string, RelDef> rel_defs;
  std::map<std::string, FunDef> fun_defs;

  /// Checks parameter counts, symbol coverage and free-variable discipline.
  void validate() const;
  bool quantifier_free() const;
};

/// The k variable names standing for source variable `base` inside
/// translated formulas: base itself when k = 1, else base$1..base$k.
std::vector<std::string> group_names(const std::string& base, int k);

/// Translate an L-formula to a K-formula (the alpha^p recursion): variables
/// become k-tuples, atoms route through the per-symbol definitions, function
/// applications expand through their definitions-by-cases, and quantifiers
/// relativize to the domain formula.
Formula translate_formula(const Interpretation& p, const Formula& f);

struct TranslatedStructure {
  Structure structure;
  std::vector<std::vector<int>> tuples; // element index -> source k-tuple
};

/// Apply the interpretation to a K-structure: the domain is the set of
/// k-tuples satisfying the domain formula, re-indexed in lexicographic
/// order.
TranslatedStructure translate_structure_full(const Interpretation& p, const Structure& a);
Structure translate_structure(const Interpretation& p, const Structure& a);

/// compose(outer: L->K, inner: K->J) -> L->J with dimension product.
/// Throws if a value term in outer's function definitions applies a K
/// function whose inner definition has guarded cases (only default-only
/// inner definitions compose syntactically at the term level).
Interpretation compose(const Interpretation& outer, const Interpretation& inner);

Interpretation identity_interpretation(const Signature& sig);

struct FundamentalReport {
  long agreements = 0;
  long disagreements = 0;
  bool ok() const { return disagreements == 0; }
};

/// For every assignment of the formula's free variables to elements of A^p,
/// compare A |= f^p with A^p |= f.
FundamentalReport check_fundamental_property(const Interpretation& p, const Structure& a,
                                             const Formula& f);

} // namespace travlab

#endif
