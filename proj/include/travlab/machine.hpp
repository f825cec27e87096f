#ifndef TRAVLAB_MACHINE_HPP
#define TRAVLAB_MACHINE_HPP

#include <string>
#include <vector>

#include "travlab/interp.hpp"
#include "travlab/structure.hpp"

namespace travlab {

/// Tape endpoint markers: '^' on the left, '$' on the right.
inline constexpr char kLeftMarker = '^';
inline constexpr char kRightMarker = '$';

struct Transition {
  int state = 0;
  std::string reads; // one character per head, over sigma + markers
  int next = 0;
  std::vector<int> moves; // one of -1, 0, 1 per head
};

/// A nondeterministic multihead finite automaton. State 0 is the start
/// state, state 1 the accept state. The tape holds ^x$ and heads start on
/// the left marker.
struct Machine {
  std::string name;
  int q = 2;     // state count
  int heads = 1; // head count
  std::string sigma;
  std::vector<Transition> delta;
};

/// All violated well-formedness stipulations (empty = valid): q >= 2, moves
/// respect the endpoint markers, and accept-state transitions move every
/// head left (or fix it on the left marker).
std::vector<std::string> validate_machine(const Machine& m);
void require_valid(const Machine& m);

struct ConfigGraph {
  /// 2-pointed successor digraph over (E, s, t, min, max, S): vertices are
  /// configurations indexed as state * (n+2)^k + head positions in radix
  /// n+2; s is the initial and t the final configuration; the successor
  /// expansion follows that index order.
  Structure graph;
  int positions = 0; // n + 2
};

ConfigGraph config_graph(const Machine& m, const std::string& x);

/// Acceptance: the final configuration is reachable from the initial one.
bool run_machine(const Machine& m, const std::string& x);

/// SMFA check on one input: the configuration graph's edge set is symmetric.
bool is_symmetric(const Machine& m, const std::string& x);

/// The string with endpoint markers, as a structure over sigma + markers.
Structure padded_string_structure(const Machine& m, const std::string& x);

/// The (k+1)-dimensional quantifier-free interpretation from 2-pointed
/// successor graphs to padded strings: translating the padded string of any
/// x with |x| >= q yields exactly config_graph(m, x).
Interpretation pi_interpretation(const Machine& m);

/// Canonical encoding of a successor expansion over {0,1,#}: a unary size
/// block, then each non-successor relation's characteristic bits over
/// S-order tuples, then each non-successor function tabulated as fixed-width
/// binary ranks, '#'-separated.
StringValue mu_encode(const Structure& successor_structure);
bool mu_decode_check(const Structure& successor_structure, const StringValue& s);

/// Theorem-5 route: encode the structure under the given order (identity by
/// default), check the machine is symmetric on that input, build the
/// configuration graph through the interpretation, and decide acceptance as
/// traversal-invariant st-connectivity.
bool pipeline_L(const Machine& m, const Structure& base, const LinearOrder* order = nullptr);

/// Theorem-6 route: encode, translate through pi then rho then tau, expand
/// by the canonical BFT and evaluate psi.
bool pipeline_NL(const Machine& m, const Structure& base, const LinearOrder* order = nullptr);

// Reference machines.
Machine parity_machine();   // 1 head, accepts strings with an even number of '1's
Machine anbn_machine();     // 2 heads, accepts 0^n 1^n
Machine bounce_machine();   // 1 head, symmetric, accepts everything
Machine seek_machine();     // 1 head, symmetric, accepts strings containing '0'

} // namespace travlab

#endif
