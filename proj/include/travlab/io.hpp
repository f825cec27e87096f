#ifndef TRAVLAB_IO_HPP
#define TRAVLAB_IO_HPP

#include <string>

#include "travlab/formula.hpp"
#include "travlab/interp.hpp"
#include "travlab/machine.hpp"
#include "travlab/signature.hpp"
#include "travlab/structure.hpp"

namespace travlab {

// Text formats (one directive per line, '#' at line start comments):
//
// signature file:
//   signature <name>
//   rel <name> <arity>
//   fun <name> <arity>
//   const <name>
//
// structure file:
//   structure <name> sig=<sigfile> n=<int>
//   rel E: (0,1) (1,0) ...
//   fun S: 0->1 1->1 ...
//   const s=0
// (sigfile is resolved relative to the structure file's directory)
//
// interpretation file (parameters are p1..pN in reading order):
//   interp <name> dim=<k> from=<sigfile> to=<sigfile>
//   domain: <formula over p1..pk>
//   rel E: <formula over p1..p(arity*k)>
//   fun S: case <guard> => (<term>,...); default => (<term>,...)
//   const c: (<term>,...)
//
// machine file:
//   machine <name> q=<int> heads=<int> sigma=<chars>
//   delta: (<state>, <reads...>) -> (<state>, <moves...>)
// ('*' in reads ranges over sigma plus the endpoint markers; expansions
// that would push a head off an endpoint are dropped at load time)

Signature load_signature(const std::string& path);
void save_signature(const Signature& sig, const std::string& path);

Structure load_structure(const std::string& path);
void save_structure(const Structure& a, const std::string& path, const std::string& sigfile);

Formula load_formula(const std::string& path, const Signature& sig);

Interpretation load_interp(const std::string& path);

Machine load_machine(const std::string& path);
void save_machine(const Machine& m, const std::string& path);

/// Parse "0,2,1" into a LinearOrder listing elements by increasing rank.
LinearOrder parse_order_spec(const std::string& spec, int n);

} // namespace travlab

#endif
