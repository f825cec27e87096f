#include "travlab/structure.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <numeric>

#include "travlab/error.hpp"

namespace travlab {

namespace {
// Dense arity<=2 storage is only worth it while n*n stays modest.
constexpr long kDenseLimit = 6500L * 6500L;
} // namespace

// --- LinearOrder ---

LinearOrder::LinearOrder(std::vector<int> rank) : rank_(std::move(rank)) {
  std::vector<char> seen(rank_.size(), 0);
  for (int r : rank_) {
    if (r < 0 || r >= static_cast<int>(rank_.size()) || seen[r])
      throw Error("linear order ranks must be a permutation of 0..n-1");
    seen[r] = 1;
  }
}

LinearOrder LinearOrder::identity(int n) {
  std::vector<int> r(n);
  std::iota(r.begin(), r.end(), 0);
  return LinearOrder(std::move(r));
}

LinearOrder LinearOrder::from_sequence(const std::vector<int>& seq) {
  std::vector<int> rank(seq.size(), -1);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq[i] < 0 || seq[i] >= static_cast<int>(seq.size()) || rank[seq[i]] != -1)
      throw Error("visit sequence must enumerate 0..n-1 exactly once");
    rank[seq[i]] = static_cast<int>(i);
  }
  return LinearOrder(std::move(rank));
}

std::vector<int> LinearOrder::sequence() const {
  std::vector<int> seq(rank_.size());
  for (std::size_t e = 0; e < rank_.size(); ++e) seq[rank_[e]] = static_cast<int>(e);
  return seq;
}

// --- Structure ---

Structure::Structure(Signature sig, int n) : sig_(std::move(sig)), n_(n) {
  if (n < 0) throw Error("domain size must be >= 0");
  for (const auto& r : sig_.relations()) {
    Relation rel;
    rel.arity = r.arity;
    long cells = 1;
    for (int i = 0; i < r.arity; ++i) cells *= n_ == 0 ? 1 : n_;
    if (r.arity <= 2 && cells <= kDenseLimit) {
      rel.use_dense = true;
      rel.dense.assign(static_cast<std::size_t>(std::max(cells, 1L)), 0);
    }
    rels_.push_back(std::move(rel));
  }
  for (const auto& f : sig_.functions()) {
    Function fn;
    fn.arity = f.arity;
    long cells = 1;
    for (int i = 0; i < f.arity; ++i) cells *= n_;
    fn.table.assign(static_cast<std::size_t>(std::max(cells, 0L) == 0 && f.arity == 0 ? 1 : cells),
                    -1);
    if (f.arity == 0) fn.table.assign(1, -1);
    funs_.push_back(std::move(fn));
  }
}

long Structure::flat_index(std::span<const int> args) const {
  long idx = 0;
  for (int a : args) idx = idx * n_ + a;
  return idx;
}

int Structure::rel_index(std::string_view name) const {
  const auto& rs = sig_.relations();
  for (std::size_t i = 0; i < rs.size(); ++i)
    if (rs[i].name == name) return static_cast<int>(i);
  throw Error("unknown relation: " + std::string(name));
}

int Structure::fun_index(std::string_view name) const {
  const auto& fs = sig_.functions();
  for (std::size_t i = 0; i < fs.size(); ++i)
    if (fs[i].name == name) return static_cast<int>(i);
  throw Error("unknown function: " + std::string(name));
}

void Structure::add_tuple(const std::string& rel, const std::vector<int>& tuple) {
  int ri = rel_index(rel);
  Relation& r = rels_[ri];
  if (static_cast<int>(tuple.size()) != r.arity)
    throw Error("arity mismatch for relation " + rel);
  for (int v : tuple)
    if (v < 0 || v >= n_) throw Error("tuple element out of domain in relation " + rel);
  if (r.use_dense) {
    unsigned char& cell = r.dense[static_cast<std::size_t>(flat_index(tuple))];
    if (!cell) {
      cell = 1;
      ++r.count;
    }
  } else {
    if (r.tuples.insert(tuple).second) ++r.count;
  }
}

void Structure::set_fun(const std::string& fun, const std::vector<int>& args, int value) {
  int fi = fun_index(fun);
  Function& f = funs_[fi];
  if (static_cast<int>(args.size()) != f.arity) throw Error("arity mismatch for function " + fun);
  for (int v : args)
    if (v < 0 || v >= n_) throw Error("argument out of domain for function " + fun);
  if (value < 0 || value >= n_) throw Error("value out of domain for function " + fun);
  f.table[static_cast<std::size_t>(flat_index(args))] = value;
}

void Structure::validate() const {
  for (std::size_t i = 0; i < funs_.size(); ++i) {
    for (int v : funs_[i].table)
      if (v < 0 || v >= n_)
        throw Error("function " + sig_.functions()[i].name + " is not total");
  }
}

bool Structure::holds(std::string_view rel, std::span<const int> tuple) const {
  return holds_by_index(rel_index(rel), tuple);
}

bool Structure::holds_by_index(int rel, std::span<const int> tuple) const {
  const Relation& r = rels_[rel];
  if (r.use_dense) return r.dense[static_cast<std::size_t>(flat_index(tuple))] != 0;
  thread_local std::vector<int> key;
  key.assign(tuple.begin(), tuple.end());
  return r.tuples.count(key) != 0;
}

int Structure::apply(std::string_view fun, std::span<const int> args) const {
  return apply_by_index(fun_index(fun), args);
}

int Structure::apply_by_index(int fun, std::span<const int> args) const {
  const Function& f = funs_[fun];
  int v = f.table[static_cast<std::size_t>(flat_index(args))];
  if (v < 0) throw Error("function " + sig_.functions()[fun].name + " undefined at argument");
  return v;
}

long Structure::tuple_count(std::string_view rel) const { return rels_[rel_index(rel)].count; }

void Structure::for_each_tuple(std::string_view rel,
                               const std::function<void(std::span<const int>)>& fn) const {
  const Relation& r = rels_[rel_index(rel)];
  if (r.use_dense) {
    std::vector<int> tuple(r.arity);
    long cells = 1;
    for (int i = 0; i < r.arity; ++i) cells *= n_;
    for (long idx = 0; idx < cells; ++idx) {
      if (!r.dense[static_cast<std::size_t>(idx)]) continue;
      long rest = idx;
      for (int i = r.arity - 1; i >= 0; --i) {
        tuple[i] = static_cast<int>(rest % n_);
        rest /= n_;
      }
      fn(tuple);
    }
  } else {
    for (const auto& t : r.tuples) fn(t);
  }
}

bool Structure::is_directed_graph() const {
  const RelSym* e = sig_.find_rel("E");
  if (!e || e->arity != 2) return false;
  for (int v = 0; v < n_; ++v) {
    std::array<int, 2> t{v, v};
    if (holds("E", t)) return false;
  }
  return true;
}

bool Structure::is_graph() const {
  if (!is_directed_graph()) return false;
  bool sym = true;
  for_each_tuple("E", [&](std::span<const int> t) {
    std::array<int, 2> rev{t[1], t[0]};
    if (!holds("E", rev)) sym = false;
  });
  return sym;
}

bool Structure::is_successor_expansion() const {
  if (!sig_.find_fun("min") || !sig_.find_fun("max")) return false;
  const FunSym* s = sig_.find_fun("S");
  if (!s || s->arity != 1) return false;
  if (n_ == 0) return false;
  // Walk the S-chain from min; it must visit every element once and fix max.
  std::vector<char> seen(n_, 0);
  int cur = constant("min");
  for (int steps = 0; steps < n_; ++steps) {
    if (seen[cur]) return false;
    seen[cur] = 1;
    std::array<int, 1> a{cur};
    int nxt = apply("S", a);
    if (steps == n_ - 1) return cur == constant("max") && nxt == cur;
    if (nxt == cur) return false;
    cur = nxt;
  }
  return true;
}

std::vector<int> Structure::successor_sequence() const {
  if (!is_successor_expansion()) throw Error("structure is not a successor expansion");
  std::vector<int> seq;
  int cur = constant("min");
  for (int i = 0; i < n_; ++i) {
    seq.push_back(cur);
    std::array<int, 1> a{cur};
    cur = apply("S", a);
  }
  return seq;
}

Structure Structure::reduct(const Signature& sub) const {
  if (!sig_.contains(sub)) throw Error("reduct signature is not a subsignature");
  Structure out(sub, n_);
  for (const auto& r : sub.relations()) {
    for_each_tuple(r.name, [&](std::span<const int> t) {
      out.add_tuple(r.name, std::vector<int>(t.begin(), t.end()));
    });
  }
  for (const auto& f : sub.functions()) {
    int fi = fun_index(f.name);
    out.funs_[out.fun_index(f.name)].table = funs_[fi].table;
  }
  return out;
}

bool Structure::same_content(const Structure& other) const {
  if (n_ != other.n_ || !sig_.equivalent(other.sig_)) return false;
  for (const auto& r : sig_.relations()) {
    if (tuple_count(r.name) != other.tuple_count(r.name)) return false;
    bool ok = true;
    for_each_tuple(r.name, [&](std::span<const int> t) {
      if (!other.holds(r.name, t)) ok = false;
    });
    if (!ok) return false;
  }
  for (const auto& f : sig_.functions()) {
    if (funs_[fun_index(f.name)].table != other.funs_[other.fun_index(f.name)].table) return false;
  }
  return true;
}

// --- free helpers ---

Structure build_structure(
    Signature sig, int n,
    const std::vector<std::pair<std::string, std::vector<std::vector<int>>>>& relation_data,
    const std::vector<std::pair<std::string, std::vector<std::pair<std::vector<int>, int>>>>&
        function_data) {
  Structure a(std::move(sig), n);
  for (const auto& [name, tuples] : relation_data)
    for (const auto& t : tuples) a.add_tuple(name, t);
  for (const auto& [name, entries] : function_data)
    for (const auto& [args, val] : entries) a.set_fun(name, args, val);
  a.validate();
  return a;
}

namespace {

bool iso_search(const Structure& a, const Structure& b, std::vector<int>& map,
                std::vector<char>& used, int next) {
  int n = a.size();
  if (next == n) {
    // Full verification at the leaf.
    for (const auto& r : a.sig().relations()) {
      bool ok = true;
      a.for_each_tuple(r.name, [&](std::span<const int> t) {
        std::vector<int> img(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) img[i] = map[t[i]];
        if (!b.holds(r.name, img)) ok = false;
      });
      if (!ok || a.tuple_count(r.name) != b.tuple_count(r.name)) return false;
    }
    for (const auto& f : a.sig().functions()) {
      if (f.arity == 0) {
        if (map[a.constant(f.name)] != b.constant(f.name)) return false;
      } else if (f.arity == 1) {
        for (int x = 0; x < n; ++x) {
          std::array<int, 1> ax{x}, bx{map[x]};
          if (map[a.apply(f.name, ax)] != b.apply(f.name, bx)) return false;
        }
      } else {
        std::vector<int> args(f.arity, 0), img(f.arity);
        bool done = n == 0;
        while (!done) {
          for (int i = 0; i < f.arity; ++i) img[i] = map[args[i]];
          if (map[a.apply(f.name, args)] != b.apply(f.name, img)) return false;
          int i = f.arity - 1;
          while (i >= 0 && ++args[i] == n) args[i--] = 0;
          if (i < 0) done = true;
        }
      }
    }
    return true;
  }
  if (map[next] != -1) return iso_search(a, b, map, used, next + 1);
  for (int cand = 0; cand < n; ++cand) {
    if (used[cand]) continue;
    map[next] = cand;
    used[cand] = 1;
    // Cheap local pruning against already-mapped elements (binary relations).
    bool ok = true;
    for (const auto& r : a.sig().relations()) {
      if (r.arity != 2) continue;
      for (int other = 0; other <= next && ok; ++other) {
        if (map[other] == -1) continue;
        std::array<int, 2> t1{next, other}, t2{other, next};
        std::array<int, 2> m1{cand, map[other]}, m2{map[other], cand};
        if (a.holds(r.name, t1) != b.holds(r.name, m1)) ok = false;
        if (a.holds(r.name, t2) != b.holds(r.name, m2)) ok = false;
      }
      if (!ok) break;
    }
    if (ok && iso_search(a, b, map, used, next + 1)) return true;
    map[next] = -1;
    used[cand] = 0;
  }
  return false;
}

// Pin constants and propagate through unary functions until fixpoint.
bool seed_constant_orbits(const Structure& a, const Structure& b, std::vector<int>& map,
                          std::vector<char>& used) {
  bool changed = true;
  for (const auto& f : a.sig().functions()) {
    if (f.arity != 0) continue;
    int av = a.constant(f.name), bv = b.constant(f.name);
    if (map[av] == -1) {
      if (used[bv]) return false;
      map[av] = bv;
      used[bv] = 1;
    } else if (map[av] != bv) {
      return false;
    }
  }
  while (changed) {
    changed = false;
    for (const auto& f : a.sig().functions()) {
      if (f.arity != 1) continue;
      for (int x = 0; x < a.size(); ++x) {
        if (map[x] == -1) continue;
        std::array<int, 1> ax{x}, bx{map[x]};
        int ay = a.apply(f.name, ax), by = b.apply(f.name, bx);
        if (map[ay] == -1) {
          if (used[by]) return false;
          map[ay] = by;
          used[by] = 1;
          changed = true;
        } else if (map[ay] != by) {
          return false;
        }
      }
    }
  }
  return true;
}

} // namespace

bool is_isomorphic(const Structure& a, const Structure& b) {
  if (a.size() != b.size() || !a.sig().equivalent(b.sig())) return false;
  for (const auto& r : a.sig().relations())
    if (a.tuple_count(r.name) != b.tuple_count(r.name)) return false;
  std::vector<int> map(a.size(), -1);
  std::vector<char> used(a.size(), 0);
  if (!seed_constant_orbits(a, b, map, used)) return false;
  return iso_search(a, b, map, used, 0);
}

Structure string_to_structure(const StringValue& s) {
  for (char c : s.value)
    if (s.alphabet.find(c) == std::string::npos)
      throw Error(std::string("string character outside alphabet: ") + c);
  int n = static_cast<int>(s.value.size());
  if (n == 0) throw Error("empty strings have no structure encoding");
  Structure a(string_sig(s.alphabet), n);
  for (int i = 0; i < n; ++i) a.add_tuple(std::string("P") + s.value[i], {i});
  a.set_constant("min", 0);
  a.set_constant("max", n - 1);
  for (int i = 0; i < n; ++i) a.set_fun("S", {i}, std::min(i + 1, n - 1));
  a.validate();
  return a;
}

Structure successor_expansion(const Structure& a, const LinearOrder& order) {
  if (order.size() != a.size()) throw Error("order size mismatch");
  if (a.size() == 0) throw Error("cannot successor-expand the empty structure");
  Structure out(with_successor(a.sig()), a.size());
  for (const auto& r : a.sig().relations())
    a.for_each_tuple(r.name, [&](std::span<const int> t) {
      out.add_tuple(r.name, std::vector<int>(t.begin(), t.end()));
    });
  for (const auto& f : a.sig().functions()) {
    if (f.arity == 0) {
      out.set_constant(f.name, a.constant(f.name));
    } else {
      std::vector<int> args(f.arity, 0);
      bool done = false;
      while (!done) {
        out.set_fun(f.name, args, a.apply(f.name, args));
        int i = f.arity - 1;
        while (i >= 0 && ++args[i] == a.size()) args[i--] = 0;
        if (i < 0) done = true;
      }
    }
  }
  std::vector<int> seq = order.sequence();
  out.set_constant("min", seq.front());
  out.set_constant("max", seq.back());
  for (std::size_t i = 0; i < seq.size(); ++i)
    out.set_fun("S", {seq[i]}, i + 1 < seq.size() ? seq[i + 1] : seq[i]);
  out.validate();
  return out;
}

Structure order_expansion(const Structure& a, const LinearOrder& order) {
  if (order.size() != a.size()) throw Error("order size mismatch");
  Structure out(with_order(a.sig()), a.size());
  for (const auto& r : a.sig().relations())
    a.for_each_tuple(r.name, [&](std::span<const int> t) {
      out.add_tuple(r.name, std::vector<int>(t.begin(), t.end()));
    });
  for (const auto& f : a.sig().functions()) {
    if (f.arity == 0) {
      out.set_constant(f.name, a.constant(f.name));
    } else {
      std::vector<int> args(f.arity, 0);
      bool done = a.size() == 0;
      while (!done) {
        out.set_fun(f.name, args, a.apply(f.name, args));
        int i = f.arity - 1;
        while (i >= 0 && ++args[i] == a.size()) args[i--] = 0;
        if (i < 0) done = true;
      }
    }
  }
  for (int u = 0; u < a.size(); ++u)
    for (int v = 0; v < a.size(); ++v)
      if (order.less(u, v)) out.add_tuple("<", {u, v});
  out.validate();
  return out;
}

std::optional<int> distance(const Structure& graph, int u, int v) {
  int n = graph.size();
  std::vector<std::vector<int>> adj(n);
  graph.for_each_tuple("E", [&](std::span<const int> t) {
    adj[t[0]].push_back(t[1]);
    adj[t[1]].push_back(t[0]);
  });
  std::vector<int> dist(n, -1);
  std::deque<int> q{u};
  dist[u] = 0;
  while (!q.empty()) {
    int w = q.front();
    q.pop_front();
    if (w == v) return dist[w];
    for (int x : adj[w])
      if (dist[x] == -1) {
        dist[x] = dist[w] + 1;
        q.push_back(x);
      }
  }
  return std::nullopt;
}

} // namespace travlab
