#ifndef TRAVLAB_TRAVERSAL_HPP
#define TRAVLAB_TRAVERSAL_HPP

#include <set>
#include <vector>

#include "travlab/formula.hpp"
#include "travlab/structure.hpp"

namespace travlab {

/// Verdict of the three first-order search-order predicates on (G,<).
struct OrderClass {
  bool traversal = false;
  bool bft = false;
  bool dft = false;
};

/// The sentence "(forall u<v<w)(E(u,w) -> (exists x<v) E(x,v))" over (E,<),
/// and its breadth-first (x <= u) / depth-first (x >= u) refinements.
Formula traversal_predicate();
Formula bft_predicate();
Formula dft_predicate();

/// Evaluate the three predicates on the order expansion of `graph`.
OrderClass classify_order(const Structure& graph, const LinearOrder& order);

enum class SearchKind { Generic, Bfs, Dfs };

/// All visit orders realizable by some nondeterministic run of the named
/// search on `graph` (new components start at an arbitrary vertex).
/// Throws if the domain exceeds `cap`.
std::set<LinearOrder> search_orders(const Structure& graph, SearchKind kind, int cap = 8);

/// A maximal order-interval I with least element v such that
/// w in I  <=>  p(w) < v <= w, where p(w) is w's least neighbor.
struct QuasiLevel {
  std::vector<int> members; // in increasing order position
};

/// All quasi-levels of a BFT-ordered graph. Throws if the order is not a
/// breadth-first traversal.
std::vector<QuasiLevel> quasi_levels(const Structure& graph, const LinearOrder& order);

/// First-order test that v and w share a quasi-level:
/// v = w, or p(w) < v <= w, or p(v) < w <= v; a component-least vertex has
/// no least neighbor and so shares a quasi-level only with itself.
bool same_quasi_level(const Structure& graph, const LinearOrder& order, int v, int w);

/// The formula behind same_quasi_level, over (E,<), with the two tested
/// positions plugged in as terms (free variables or constants).
Formula same_quasi_level_formula(const Term& v, const Term& w);

/// The canonical breadth-first traversal: components ordered by <-least
/// vertex; within a component, vertices ordered by length-then-lexicographic
/// comparison of their least shortest paths from the component's least
/// vertex.
LinearOrder canonical_bft(const Structure& graph, const LinearOrder& base);

/// A deterministic traversal: least-first BFS within each component,
/// components ordered by <-least vertex.
LinearOrder deterministic_traversal(const Structure& graph, const LinearOrder& base);

} // namespace travlab

#endif
