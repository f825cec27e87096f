#include "travlab/signature.hpp"

#include <algorithm>

#include "travlab/error.hpp"

namespace travlab {

Signature& Signature::rel(std::string name, int arity) {
  if (arity < 1) throw Error("relation arity must be >= 1: " + name);
  if (has_symbol(name)) throw Error("duplicate symbol: " + name);
  rels_.push_back({std::move(name), arity});
  return *this;
}

Signature& Signature::fun(std::string name, int arity) {
  if (arity < 0) throw Error("function arity must be >= 0: " + name);
  if (has_symbol(name)) throw Error("duplicate symbol: " + name);
  funs_.push_back({std::move(name), arity});
  return *this;
}

const RelSym* Signature::find_rel(std::string_view name) const {
  for (const auto& r : rels_)
    if (r.name == name) return &r;
  return nullptr;
}

const FunSym* Signature::find_fun(std::string_view name) const {
  for (const auto& f : funs_)
    if (f.name == name) return &f;
  return nullptr;
}

bool Signature::has_symbol(std::string_view name) const {
  return find_rel(name) != nullptr || find_fun(name) != nullptr;
}

bool Signature::contains(const Signature& sub) const {
  for (const auto& r : sub.rels_) {
    const RelSym* mine = find_rel(r.name);
    if (!mine || mine->arity != r.arity) return false;
  }
  for (const auto& f : sub.funs_) {
    const FunSym* mine = find_fun(f.name);
    if (!mine || mine->arity != f.arity) return false;
  }
  return true;
}

bool Signature::equivalent(const Signature& other) const {
  return contains(other) && other.contains(*this) &&
         rels_.size() == other.rels_.size() && funs_.size() == other.funs_.size();
}

Signature graph_sig(int points) {
  Signature sig;
  sig.set_name("graph" + std::to_string(points));
  sig.rel("E", 2);
  std::vector<std::string> names;
  if (points == 2) names = {"s", "t"};
  else if (points == 3) names = {"x", "y", "z"};
  else if (points == 6) names = {"x1", "y1", "z1", "x2", "y2", "z2"};
  else
    for (int i = 1; i <= points; ++i) names.push_back("c" + std::to_string(i));
  for (auto& nm : names) sig.cnst(nm);
  return sig;
}

Signature with_successor(Signature base) {
  base.cnst("min").cnst("max").fun("S", 1);
  base.set_name(base.name().empty() ? "succ" : base.name() + "+succ");
  return base;
}

Signature with_order(Signature base) {
  base.rel("<", 2);
  base.set_name(base.name().empty() ? "order" : base.name() + "+order");
  return base;
}

Signature string_sig(const std::string& alphabet) {
  Signature sig;
  sig.set_name("string[" + alphabet + "]");
  for (char c : alphabet) sig.rel(std::string("P") + c, 1);
  sig.cnst("min").cnst("max").fun("S", 1);
  return sig;
}

Signature order_sig() {
  Signature sig;
  sig.set_name("order");
  sig.rel("<", 2);
  return sig;
}

} // namespace travlab
