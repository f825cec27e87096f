#ifndef TRAVLAB_INVARIANCE_HPP
#define TRAVLAB_INVARIANCE_HPP

#include <optional>
#include <vector>

#include "travlab/formula.hpp"
#include "travlab/structure.hpp"

namespace travlab {

/// How a base structure may be presented to an order-aware formula.
enum class PresentationKind { AllOrders, Traversal, Bft, Dft, Successor };

PresentationKind parse_presentation_kind(const std::string& name);
std::string to_string(PresentationKind kind);

/// All expansions of the given kind: order expansions (filtered through
/// classify_order for the traversal kinds) or successor expansions.
/// Throws if the domain exceeds `cap`.
std::vector<Structure> enumerate_expansions(const Structure& base, PresentationKind kind,
                                            int cap = 8);

struct InvarianceViolation {
  std::size_t base_index = 0;
  LinearOrder order1;
  LinearOrder order2;
};

struct InvarianceReport {
  bool invariant = true;
  long expansions_checked = 0;
  std::optional<InvarianceViolation> violation;
};

/// For each base structure, evaluate the formula on every expansion of the
/// given kind; invariant iff the verdict is constant per base structure.
InvarianceReport check_invariance(const std::vector<Structure>& bases, const Formula& formula,
                                  PresentationKind kind, int cap = 8);

/// The semantics of the invariance quantifiers: evaluate on one
/// deterministically chosen expansion (identity order for all-orders and
/// successor; deterministic_traversal / canonical_bft / least-first DFS for
/// the traversal kinds). With verify=true, first check invariance over all
/// expansions and throw on violation.
bool eval_quantified(const Structure& base, const Formula& formula, PresentationKind kind,
                     bool verify = false, int cap = 8);

} // namespace travlab

#endif
