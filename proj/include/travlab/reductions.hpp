#ifndef TRAVLAB_REDUCTIONS_HPP
#define TRAVLAB_REDUCTIONS_HPP

#include "travlab/formula.hpp"
#include "travlab/interp.hpp"
#include "travlab/structure.hpp"

namespace travlab {

/// Over (E,<): no vertex strictly between a and b (in either direction,
/// endpoints included on the far side) lacks a prior neighbor. On a
/// traversal expansion this holds iff a and b are connected.
Formula connectivity_between(const Term& a, const Term& b);

/// connectivity_between(s, t) — the st-connectivity query over (Gamma_2,<).
Formula connectivity_sentence();

/// Over (E,<): no vertex has two prior neighbors. On a traversal expansion
/// this holds iff the graph is acyclic.
Formula acyclicity_sentence();

/// 1-ary graph-to-graph interpretation with E(x,y) iff there is a path of
/// length exactly two from x to y (and x != y). A connected graph with at
/// least two vertices is bipartite iff its square is disconnected.
Interpretation square_interpretation();

/// Linear-order-to-graph interpretation connecting positions two apart
/// cyclically; the image is disconnected iff the order has even size.
Interpretation parity_interpretation();

/// The 2-ary interpretation from 3-pointed graphs to 2-pointed successor
/// digraphs: vertices are (vertex, level) pairs, edges step one level while
/// following an edge or staying put, x=(s,min), y=(s,max), z=(t,max).
/// Directed st-reachability becomes equidistance of y and z from x.
Interpretation rho();

/// The 2-ary two-copies interpretation from 6-pointed to 3-pointed graphs:
/// each copy inherits the edges, and a single bridge joins the two copies'
/// x-vertices.
Interpretation tau();

/// The BFT-invariant sentence over (Gamma_6,<): all six constants are
/// connected, and if x1 < x2 then y2 and z2 share a quasi-level (and
/// symmetrically).
Formula psi();

/// End-to-end directed reachability: translate through rho then tau, expand
/// by the canonical BFT, and evaluate psi.
bool directed_reachable_bft(const Structure& successor_digraph);

} // namespace travlab

#endif
