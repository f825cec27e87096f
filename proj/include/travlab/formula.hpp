#ifndef TRAVLAB_FORMULA_HPP
#define TRAVLAB_FORMULA_HPP

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace travlab {

class Signature;

// Immutable AST nodes, shared via shared_ptr handles. Term and Formula are
// thin value wrappers so they can be copied and stored freely.

struct TermNode;
struct FormulaNode;

class Term {
public:
  Term() = default;
  explicit Term(std::shared_ptr<const TermNode> n) : node_(std::move(n)) {}
  const TermNode& operator*() const { return *node_; }
  const TermNode* operator->() const { return node_.get(); }
  const std::shared_ptr<const TermNode>& ptr() const { return node_; }
  explicit operator bool() const { return node_ != nullptr; }

private:
  std::shared_ptr<const TermNode> node_;
};

class Formula {
public:
  Formula() = default;
  explicit Formula(std::shared_ptr<const FormulaNode> n) : node_(std::move(n)) {}
  const FormulaNode& operator*() const { return *node_; }
  const FormulaNode* operator->() const { return node_.get(); }
  const std::shared_ptr<const FormulaNode>& ptr() const { return node_; }
  explicit operator bool() const { return node_ != nullptr; }

private:
  std::shared_ptr<const FormulaNode> node_;
};

enum class TermKind { Var, Apply };

struct TermNode {
  TermKind kind;
  std::string name;        // variable or function symbol
  std::vector<Term> args;  // empty for Var and constants
};

enum class FormulaKind {
  True,
  False,
  Atom,    // relation applied to terms
  Eq,      // term equality
  Not,
  And,
  Or,
  Implies,
  Exists,
  Forall,
};

struct FormulaNode {
  FormulaKind kind;
  std::string name;            // relation name (Atom) or bound variable
  std::vector<Term> terms;     // Atom arguments, or the two Eq sides
  std::vector<Formula> subs;   // children for connectives / quantifier body
};

// --- builders ---
Term var(std::string name);
Term apply(std::string fun, std::vector<Term> args);
Term cnst(std::string name);

Formula truef();
Formula falsef();
Formula atom(std::string rel, std::vector<Term> args);
Formula eq(Term a, Term b);
Formula neq(Term a, Term b);
Formula lnot(Formula f);
Formula land(Formula a, Formula b);
Formula lor(Formula a, Formula b);
Formula implies(Formula a, Formula b);
Formula exists(std::string v, Formula body);
Formula forall(std::string v, Formula body);
/// Folds over a list; empty list gives the unit (true for and, false for or).
Formula land_all(std::vector<Formula> fs);
Formula lor_all(std::vector<Formula> fs);
/// Atom over "<" — the conventional order relation.
Formula less(Term a, Term b);

// --- queries / transforms ---
std::set<std::string> free_vars(const Formula& f);
std::set<std::string> term_vars(const Term& t);

/// Capture-avoiding simultaneous substitution of terms for free variables.
Formula substitute(const Formula& f,
                   const std::vector<std::pair<std::string, Term>>& map);
Term substitute(const Term& t,
                const std::vector<std::pair<std::string, Term>>& map);

/// Fully parenthesized rendering that re-parses to an identical AST.
std::string to_string(const Formula& f);
std::string to_string(const Term& t);

/// True if all symbols used by the formula occur in the signature with
/// matching arities and no variable shadows a symbol name.
void check_against_signature(const Formula& f, const Signature& sig);

} // namespace travlab

#endif
