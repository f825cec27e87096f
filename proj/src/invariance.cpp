#include "travlab/invariance.hpp"

#include <algorithm>
#include <numeric>

#include "travlab/error.hpp"
#include "travlab/eval.hpp"
#include "travlab/traversal.hpp"

namespace travlab {

PresentationKind parse_presentation_kind(const std::string& name) {
  if (name == "all-orders") return PresentationKind::AllOrders;
  if (name == "traversal") return PresentationKind::Traversal;
  if (name == "bft") return PresentationKind::Bft;
  if (name == "dft") return PresentationKind::Dft;
  if (name == "successor") return PresentationKind::Successor;
  throw Error("unknown presentation kind: " + name);
}

std::string to_string(PresentationKind kind) {
  switch (kind) {
    case PresentationKind::AllOrders: return "all-orders";
    case PresentationKind::Traversal: return "traversal";
    case PresentationKind::Bft: return "bft";
    case PresentationKind::Dft: return "dft";
    case PresentationKind::Successor: return "successor";
  }
  return "?";
}

namespace {

bool order_admitted(const Structure& base, const LinearOrder& order, PresentationKind kind) {
  switch (kind) {
    case PresentationKind::AllOrders:
    case PresentationKind::Successor:
      return true;
    case PresentationKind::Traversal:
      return classify_order(base, order).traversal;
    case PresentationKind::Bft:
      return classify_order(base, order).bft;
    case PresentationKind::Dft:
      return classify_order(base, order).dft;
  }
  return false;
}

Structure expand(const Structure& base, const LinearOrder& order, PresentationKind kind) {
  if (kind == PresentationKind::Successor) return successor_expansion(base, order);
  return order_expansion(base, order);
}

void check_traversal_pre(const Structure& base, PresentationKind kind) {
  if ((kind == PresentationKind::Traversal || kind == PresentationKind::Bft ||
       kind == PresentationKind::Dft) &&
      !base.is_graph())
    throw Error("traversal presentation kinds require an undirected graph");
}

template <typename Fn>
void for_each_order(int n, Fn&& fn) {
  std::vector<int> ranks(n);
  std::iota(ranks.begin(), ranks.end(), 0);
  do {
    fn(LinearOrder(ranks));
  } while (std::next_permutation(ranks.begin(), ranks.end()));
}

LinearOrder least_first_dft(const Structure& graph, const LinearOrder& base) {
  std::vector<std::vector<int>> adj(graph.size());
  graph.for_each_tuple("E", [&](std::span<const int> t) {
    adj[t[0]].push_back(t[1]);
    adj[t[1]].push_back(t[0]);
  });
  std::vector<int> seq;
  std::vector<char> visited(graph.size(), 0);
  std::vector<int> all = base.sequence();
  for (int start : all) {
    if (visited[start]) continue;
    std::vector<int> stack{start};
    visited[start] = 1;
    seq.push_back(start);
    while (!stack.empty()) {
      int top = stack.back();
      int next = -1;
      for (int w : adj[top])
        if (!visited[w] && (next == -1 || base.less(w, next))) next = w;
      if (next == -1) {
        stack.pop_back();
        continue;
      }
      visited[next] = 1;
      seq.push_back(next);
      stack.push_back(next);
    }
  }
  return LinearOrder::from_sequence(seq);
}

} // namespace

std::vector<Structure> enumerate_expansions(const Structure& base, PresentationKind kind, int cap) {
  if (base.size() > cap)
    throw Error("enumerate_expansions: domain size exceeds cap " + std::to_string(cap));
  check_traversal_pre(base, kind);
  std::vector<Structure> out;
  for_each_order(base.size(), [&](const LinearOrder& order) {
    if (order_admitted(base, order, kind)) out.push_back(expand(base, order, kind));
  });
  return out;
}

InvarianceReport check_invariance(const std::vector<Structure>& bases, const Formula& formula,
                                  PresentationKind kind, int cap) {
  InvarianceReport report;
  for (std::size_t bi = 0; bi < bases.size(); ++bi) {
    const Structure& base = bases[bi];
    if (base.size() > cap) throw Error("check_invariance: domain size exceeds cap");
    check_traversal_pre(base, kind);
    bool have_first = false;
    bool first_value = false;
    LinearOrder first_order = LinearOrder::identity(base.size());
    bool violated = false;
    for_each_order(base.size(), [&](const LinearOrder& order) {
      if (violated || !order_admitted(base, order, kind)) return;
      bool value = evaluate(expand(base, order, kind), formula);
      ++report.expansions_checked;
      if (!have_first) {
        have_first = true;
        first_value = value;
        first_order = order;
      } else if (value != first_value) {
        report.invariant = false;
        report.violation = InvarianceViolation{bi, first_order, order};
        violated = true;
      }
    });
    if (violated) return report;
  }
  return report;
}

bool eval_quantified(const Structure& base, const Formula& formula, PresentationKind kind,
                     bool verify, int cap) {
  check_traversal_pre(base, kind);
  if (verify) {
    InvarianceReport report = check_invariance({base}, formula, kind, cap);
    if (!report.invariant)
      throw Error("formula is not " + to_string(kind) + "-invariant on this structure");
  }
  LinearOrder id = LinearOrder::identity(base.size());
  LinearOrder chosen = id;
  switch (kind) {
    case PresentationKind::AllOrders:
    case PresentationKind::Successor:
      break;
    case PresentationKind::Traversal:
      chosen = deterministic_traversal(base, id);
      break;
    case PresentationKind::Bft:
      chosen = canonical_bft(base, id);
      break;
    case PresentationKind::Dft:
      chosen = least_first_dft(base, id);
      break;
  }
  return evaluate(expand(base, chosen, kind), formula);
}

} // namespace travlab
