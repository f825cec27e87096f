#ifndef TRAVLAB_PARSER_HPP
#define TRAVLAB_PARSER_HPP

#include <string>

#include "travlab/formula.hpp"
#include "travlab/signature.hpp"

namespace travlab {

/// Parse an FO formula in the infix syntax:
///   connectives  !  &  |  ->   (that precedence order, -> right-assoc)
///   quantifiers  exists x (...)   forall x (...)
///   bound sugar  exists x < t (...)  == exists x (x < t & ...)
///                forall x < t (...)  == forall x (x < t -> ...)
///   atoms        E(x,y)   x = y   x != y   x < y   true   false
/// Identifiers are runs of [A-Za-z0-9_$#'^]. Names in the signature are
/// symbols; everything else is a variable.
Formula parse_formula(const std::string& text, const Signature& sig);

Term parse_term(const std::string& text, const Signature& sig);

} // namespace travlab

#endif
