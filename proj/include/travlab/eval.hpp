#ifndef TRAVLAB_EVAL_HPP
#define TRAVLAB_EVAL_HPP

#include <map>
#include <string>

#include "travlab/formula.hpp"
#include "travlab/structure.hpp"

namespace travlab {

using Valuation = std::map<std::string, int>;

/// Tarskian truth by exhaustive quantifier expansion. Every free variable of
/// `f` must be assigned by `val`. Checks the formula against the structure's
/// signature up front.
bool evaluate(const Structure& a, const Formula& f, const Valuation& val = {});

int evaluate_term(const Structure& a, const Term& t, const Valuation& val = {});

namespace detail {

/// Linked environment chain; cheaper than map rebuilds in the hot loops of
/// structure translation.
struct Env {
  const Env* up = nullptr;
  const std::string* name = nullptr;
  int value = 0;
};

/// No signature check; callers are expected to have validated once.
bool eval_unchecked(const Structure& a, const FormulaNode& f, const Env* env);
int eval_term_unchecked(const Structure& a, const TermNode& t, const Env* env);

} // namespace detail

} // namespace travlab

#endif
