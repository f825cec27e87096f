#ifndef TRAVLAB_SIGNATURE_HPP
#define TRAVLAB_SIGNATURE_HPP

#include <string>
#include <string_view>
#include <vector>

namespace travlab {

struct RelSym {
  std::string name;
  int arity = 1;
  bool operator==(const RelSym&) const = default;
};

/// Arity-0 function symbols are constants.
struct FunSym {
  std::string name;
  int arity = 0;
  bool operator==(const FunSym&) const = default;
};

/// A single-sorted relational/functional signature. Symbol names are
/// unique across relations and functions.
class Signature {
public:
  Signature() = default;

  Signature& rel(std::string name, int arity);
  Signature& fun(std::string name, int arity);
  Signature& cnst(std::string name) { return fun(std::move(name), 0); }

  const std::vector<RelSym>& relations() const { return rels_; }
  const std::vector<FunSym>& functions() const { return funs_; }

  const RelSym* find_rel(std::string_view name) const;
  const FunSym* find_fun(std::string_view name) const;
  bool has_symbol(std::string_view name) const;

  /// True if every symbol of `sub` occurs here with the same arity.
  bool contains(const Signature& sub) const;

  /// Set equality (symbol order is irrelevant).
  bool equivalent(const Signature& other) const;

  const std::string& name() const { return name_; }
  Signature& set_name(std::string n) {
    name_ = std::move(n);
    return *this;
  }

private:
  std::string name_;
  std::vector<RelSym> rels_;
  std::vector<FunSym> funs_;
};

/// The language of n-pointed graphs: one binary relation E plus n constants.
/// Constant names follow the usual conventions: (s,t) for n=2, (x,y,z) for
/// n=3, (x1,y1,z1,x2,y2,z2) for n=6, c1..cn otherwise.
Signature graph_sig(int points);

/// Expand a signature with the successor-expansion symbols min, max, S.
Signature with_successor(Signature base);

/// Expand a signature with the binary order relation "<".
Signature with_order(Signature base);

/// The signature of strings over the given alphabet: one unary predicate per
/// character plus min, max, S.
Signature string_sig(const std::string& alphabet);

/// The signature of bare linear orders: a single binary relation "<".
Signature order_sig();

} // namespace travlab

#endif
