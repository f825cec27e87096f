#ifndef TRAVLAB_STRUCTURE_HPP
#define TRAVLAB_STRUCTURE_HPP

#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "travlab/signature.hpp"

namespace travlab {

/// A total order on 0..n-1, stored as a rank assignment.
class LinearOrder {
public:
  explicit LinearOrder(std::vector<int> rank);
  static LinearOrder identity(int n);
  /// Build from the elements listed in visit order.
  static LinearOrder from_sequence(const std::vector<int>& seq);

  int size() const { return static_cast<int>(rank_.size()); }
  int rank(int element) const { return rank_.at(element); }
  bool less(int a, int b) const { return rank_.at(a) < rank_.at(b); }
  /// Elements in increasing order.
  std::vector<int> sequence() const;

  bool operator==(const LinearOrder&) const = default;
  bool operator<(const LinearOrder& o) const { return rank_ < o.rank_; }

private:
  std::vector<int> rank_;
};

/// A string together with its alphabet.
struct StringValue {
  std::string alphabet;
  std::string value;
};

/// A finite structure over a signature. Domain elements are 0..n-1.
/// Immutable once built (the mutating calls are for construction only).
class Structure {
public:
  Structure(Signature sig, int n);

  const Signature& sig() const { return sig_; }
  int size() const { return n_; }

  // --- construction ---
  void add_tuple(const std::string& rel, const std::vector<int>& tuple);
  void set_fun(const std::string& fun, const std::vector<int>& args, int value);
  void set_constant(const std::string& c, int value) { set_fun(c, {}, value); }
  /// Throws on partial functions or out-of-range data.
  void validate() const;

  // --- queries ---
  bool holds(std::string_view rel, std::span<const int> tuple) const;
  int apply(std::string_view fun, std::span<const int> args) const;
  int constant(std::string_view c) const { return apply(c, {}); }
  long tuple_count(std::string_view rel) const;
  void for_each_tuple(std::string_view rel,
                      const std::function<void(std::span<const int>)>& fn) const;

  // fast path used by the evaluator
  int rel_index(std::string_view name) const;
  int fun_index(std::string_view name) const;
  bool holds_by_index(int rel, std::span<const int> tuple) const;
  int apply_by_index(int fun, std::span<const int> args) const;

  // --- profiles ---
  bool is_graph() const;          // E symmetric and irreflexive
  bool is_directed_graph() const; // E irreflexive
  bool is_successor_expansion() const;
  /// Elements in S-order starting at min (requires successor profile).
  std::vector<int> successor_sequence() const;

  // --- operations ---
  Structure reduct(const Signature& sub) const;
  bool same_content(const Structure& other) const;

private:
  struct Relation {
    int arity = 1;
    // arity <= 2 uses dense bitmaps (domain-size permitting), otherwise a
    // sorted tuple set. Both kept coherent by add_tuple.
    std::vector<unsigned char> dense;
    std::set<std::vector<int>> tuples;
    bool use_dense = false;
    long count = 0;
  };
  struct Function {
    int arity = 0;
    std::vector<int> table; // size n^arity, -1 = unset
  };

  long flat_index(std::span<const int> args) const;

  Signature sig_;
  int n_ = 0;
  std::vector<Relation> rels_;
  std::vector<Function> funs_;
};

/// Validating constructor mirroring the text-format fields.
Structure build_structure(
    Signature sig, int n,
    const std::vector<std::pair<std::string, std::vector<std::vector<int>>>>& relation_data,
    const std::vector<std::pair<std::string, std::vector<std::pair<std::vector<int>, int>>>>&
        function_data);

/// Brute-force isomorphism test. Intended for small structures; constants
/// and unary functions prune the search hard, so successor expansions are
/// cheap at any size that fits in memory.
bool is_isomorphic(const Structure& a, const Structure& b);

/// The string-as-structure encoding: unary predicate per character,
/// min = 0, max = n-1, S(i) = i+1 (and S(max) = max).
Structure string_to_structure(const StringValue& s);

/// Expand by min, max and the successor function of `order` (S(max) = max).
Structure successor_expansion(const Structure& a, const LinearOrder& order);

/// Expand by the binary relation "<" induced by `order`.
Structure order_expansion(const Structure& a, const LinearOrder& order);

/// Shortest-path distance over the symmetric closure of E; nullopt if
/// disconnected.
std::optional<int> distance(const Structure& graph, int u, int v);

} // namespace travlab

#endif
