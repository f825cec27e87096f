#include "travlab/machine.hpp"

#include <algorithm>
#include <deque>

#include "travlab/error.hpp"
#include "travlab/eval.hpp"
#include "travlab/invariance.hpp"
#include "travlab/reductions.hpp"

namespace travlab {

namespace {

std::string tape_alphabet(const Machine& m) {
  return m.sigma + kLeftMarker + kRightMarker;
}

} // namespace

std::vector<std::string> validate_machine(const Machine& m) {
  std::vector<std::string> errors;
  if (m.q < 2) errors.push_back("need at least two states (start 0 and accept 1)");
  if (m.heads < 1) errors.push_back("need at least one head");
  if (m.sigma.empty()) errors.push_back("empty alphabet");
  std::string tape = tape_alphabet(m);
  for (std::size_t i = 0; i < m.delta.size(); ++i) {
    const Transition& t = m.delta[i];
    std::string where = "transition " + std::to_string(i) + ": ";
    if (t.state < 0 || t.state >= m.q || t.next < 0 || t.next >= m.q)
      errors.push_back(where + "state out of range");
    if (static_cast<int>(t.reads.size()) != m.heads ||
        static_cast<int>(t.moves.size()) != m.heads) {
      errors.push_back(where + "head count mismatch");
      continue;
    }
    for (int h = 0; h < m.heads; ++h) {
      if (tape.find(t.reads[h]) == std::string::npos)
        errors.push_back(where + "unknown tape character");
      if (t.moves[h] < -1 || t.moves[h] > 1) errors.push_back(where + "bad move");
      if (t.reads[h] == kLeftMarker && t.moves[h] < 0)
        errors.push_back(where + "moves a head left off the left marker");
      if (t.reads[h] == kRightMarker && t.moves[h] > 0)
        errors.push_back(where + "moves a head right off the right marker");
      if (t.state == 1 && !(t.moves[h] == -1 || (t.reads[h] == kLeftMarker && t.moves[h] == 0)))
        errors.push_back(where + "accept-state transition must move heads left");
    }
  }
  return errors;
}

void require_valid(const Machine& m) {
  auto errors = validate_machine(m);
  if (!errors.empty()) {
    std::string msg = "invalid machine " + m.name + ":";
    for (const auto& e : errors) msg += "\n  " + e;
    throw Error(msg);
  }
}

namespace {

struct ConfigSpace {
  int n = 0;     // string length
  int width = 0; // n + 2 positions
  std::string tape;

  explicit ConfigSpace(const std::string& x)
      : n(static_cast<int>(x.size())), width(n + 2), tape(std::string(1, kLeftMarker) + x +
                                                          kRightMarker) {}

  long count(const Machine& m) const {
    long c = m.q;
    for (int h = 0; h < m.heads; ++h) c *= width;
    return c;
  }

  long index(const Machine& m, int state, const std::vector<int>& pos) const {
    long idx = state;
    for (int h = 0; h < m.heads; ++h) idx = idx * width + pos[h];
    return idx;
  }

  template <typename Fn>
  void for_each_edge(const Machine& m, Fn&& fn) const {
    std::vector<int> pos(m.heads, 0);
    for (int state = 0; state < m.q; ++state) {
      bool done = false;
      std::fill(pos.begin(), pos.end(), 0);
      while (!done) {
        for (const Transition& t : m.delta) {
          if (t.state != state) continue;
          bool match = true;
          for (int h = 0; h < m.heads && match; ++h)
            if (t.reads[h] != tape[pos[h]]) match = false;
          if (!match) continue;
          std::vector<int> to(pos);
          bool in_range = true;
          for (int h = 0; h < m.heads; ++h) {
            to[h] += t.moves[h];
            if (to[h] < 0 || to[h] >= width) in_range = false;
          }
          if (in_range) fn(index(m, state, pos), index(m, t.next, to));
        }
        int h = m.heads - 1;
        while (h >= 0 && ++pos[h] == width) pos[h--] = 0;
        if (h < 0) done = true;
      }
    }
  }
};

} // namespace

ConfigGraph config_graph(const Machine& m, const std::string& x) {
  require_valid(m);
  ConfigSpace space(x);
  long count = space.count(m);
  if (count > 2'000'000) throw Error("configuration graph too large");
  Structure g(with_successor(graph_sig(2)), static_cast<int>(count));
  space.for_each_edge(m, [&](long from, long to) {
    g.add_tuple("E", {static_cast<int>(from), static_cast<int>(to)});
  });
  std::vector<int> zeros(m.heads, 0);
  g.set_constant("s", static_cast<int>(space.index(m, 0, zeros)));
  g.set_constant("t", static_cast<int>(space.index(m, 1, zeros)));
  g.set_constant("min", 0);
  g.set_constant("max", static_cast<int>(count - 1));
  for (long i = 0; i < count; ++i)
    g.set_fun("S", {static_cast<int>(i)}, static_cast<int>(std::min(i + 1, count - 1)));
  g.validate();
  return {std::move(g), space.width};
}

bool run_machine(const Machine& m, const std::string& x) {
  require_valid(m);
  ConfigSpace space(x);
  long count = space.count(m);
  std::vector<std::vector<int>> adj(count);
  space.for_each_edge(m, [&](long from, long to) {
    adj[from].push_back(static_cast<int>(to));
  });
  std::vector<int> zeros(m.heads, 0);
  long source = space.index(m, 0, zeros);
  long target = space.index(m, 1, zeros);
  std::vector<char> seen(count, 0);
  std::deque<long> queue{source};
  seen[source] = 1;
  while (!queue.empty()) {
    long u = queue.front();
    queue.pop_front();
    if (u == target) return true;
    for (int v : adj[u])
      if (!seen[v]) {
        seen[v] = 1;
        queue.push_back(v);
      }
  }
  return false;
}

bool is_symmetric(const Machine& m, const std::string& x) {
  require_valid(m);
  ConfigSpace space(x);
  std::set<std::pair<long, long>> edges;
  space.for_each_edge(m, [&](long from, long to) { edges.emplace(from, to); });
  for (const auto& [a, b] : edges)
    if (!edges.count({b, a})) return false;
  return true;
}

Structure padded_string_structure(const Machine& m, const std::string& x) {
  return string_to_structure({tape_alphabet(m), std::string(1, kLeftMarker) + x + kRightMarker});
}

Interpretation pi_interpretation(const Machine& m) {
  require_valid(m);
  int k = m.heads;
  Interpretation p;
  p.name = "pi." + m.name;
  p.dim = k + 1;
  p.source = with_successor(graph_sig(2));
  p.target = string_sig(tape_alphabet(m));

  // S^j(min) names state j.
  auto state_term = [&](int j) {
    Term t = cnst("min");
    for (int i = 0; i < j; ++i) t = apply("S", {t});
    return t;
  };

  for (int i = 1; i <= k + 1; ++i) p.dom_params.push_back("p" + std::to_string(i));
  {
    std::vector<Formula> options;
    for (int j = 0; j < m.q; ++j) options.push_back(eq(var("p1"), state_term(j)));
    p.domain = lor_all(options);
  }

  // E^pi: one disjunct per transition.
  {
    RelDef e;
    for (int i = 1; i <= 2 * (k + 1); ++i) e.params.push_back("p" + std::to_string(i));
    auto u = [&](int h) { return var("p" + std::to_string(2 + h)); };       // head h, 0-based
    auto v = [&](int h) { return var("p" + std::to_string(k + 3 + h)); };
    std::vector<Formula> disjuncts;
    for (const Transition& t : m.delta) {
      std::vector<Formula> conj;
      conj.push_back(eq(var("p1"), state_term(t.state)));
      conj.push_back(eq(var("p" + std::to_string(k + 2)), state_term(t.next)));
      for (int h = 0; h < k; ++h) {
        conj.push_back(atom(std::string("P") + t.reads[h], {u(h)}));
        switch (t.moves[h]) {
          case 0:
            conj.push_back(eq(u(h), v(h)));
            break;
          case 1:
            // The inequality keeps S(max)=max from faking a step at the end.
            conj.push_back(land(eq(apply("S", {u(h)}), v(h)), lnot(eq(u(h), v(h)))));
            break;
          case -1:
            conj.push_back(land(eq(apply("S", {v(h)}), u(h)), lnot(eq(u(h), v(h)))));
            break;
        }
      }
      disjuncts.push_back(land_all(conj));
    }
    e.formula = lor_all(disjuncts);
    p.rel_defs["E"] = std::move(e);
  }

  auto tuple_constant = [&](const std::string& name, std::vector<Term> value) {
    FunDef d;
    d.fallback = std::move(value);
    p.fun_defs[name] = std::move(d);
  };
  {
    std::vector<Term> all_min(k + 1), accept(k + 1), top(k + 1);
    for (int i = 0; i <= k; ++i) {
      all_min[i] = cnst("min");
      accept[i] = i == 0 ? apply("S", {cnst("min")}) : cnst("min");
      top[i] = i == 0 ? state_term(m.q - 1) : cnst("max");
    }
    tuple_constant("s", all_min);
    tuple_constant("t", accept);
    std::vector<Term> mins(k + 1, cnst("min"));
    tuple_constant("min", mins);
    tuple_constant("max", top);
  }

  // S^pi: mixed-radix increment over (state, positions), least-significant
  // coordinate last; the all-max tuple is a fixpoint.
  {
    FunDef d;
    for (int i = 1; i <= k + 1; ++i) d.params.push_back("p" + std::to_string(i));
    auto param = [&](int i) { return var("p" + std::to_string(i + 1)); }; // 0-based coord
    for (int coord = k; coord >= 0; --coord) {
      FunCase c;
      Term limit = coord == 0 ? state_term(m.q - 1) : cnst("max");
      c.guard = lnot(eq(param(coord), limit));
      for (int i = 0; i <= k; ++i) {
        if (i < coord)
          c.value.push_back(param(i));
        else if (i == coord)
          c.value.push_back(apply("S", {param(i)}));
        else
          c.value.push_back(cnst("min"));
      }
      d.cases.push_back(std::move(c));
    }
    for (int i = 0; i <= k; ++i) d.fallback.push_back(param(i));
    p.fun_defs["S"] = std::move(d);
  }

  p.validate();
  return p;
}

// --- canonical encoding ---

StringValue mu_encode(const Structure& a) {
  std::vector<int> seq = a.successor_sequence(); // throws without the profile
  int n = a.size();
  std::vector<int> rank(n);
  for (int i = 0; i < n; ++i) rank[seq[i]] = i;

  int width = 1;
  while ((1 << width) < n) ++width;

  std::vector<std::string> segments;
  segments.push_back(std::string(n, '1'));
  for (const auto& r : a.sig().relations()) {
    std::string bits;
    std::vector<int> ranks(r.arity, 0), elems(r.arity);
    bool done = false;
    while (!done) {
      for (int i = 0; i < r.arity; ++i) elems[i] = seq[ranks[i]];
      bits += a.holds(r.name, elems) ? '1' : '0';
      int i = r.arity - 1;
      while (i >= 0 && ++ranks[i] == n) ranks[i--] = 0;
      if (i < 0) done = true;
    }
    segments.push_back(bits);
  }
  for (const auto& f : a.sig().functions()) {
    if (f.name == "min" || f.name == "max" || f.name == "S") continue;
    std::string bits;
    std::vector<int> ranks(f.arity, 0), elems(f.arity);
    bool done = false;
    while (!done) {
      for (int i = 0; i < f.arity; ++i) elems[i] = seq[ranks[i]];
      int value_rank = rank[a.apply(f.name, elems)];
      for (int b = width - 1; b >= 0; --b) bits += (value_rank >> b) & 1 ? '1' : '0';
      if (f.arity == 0) break;
      int i = f.arity - 1;
      while (i >= 0 && ++ranks[i] == n) ranks[i--] = 0;
      if (i < 0) done = true;
    }
    segments.push_back(bits);
  }
  std::string joined;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (i) joined += '#';
    joined += segments[i];
  }
  return {"01#", joined};
}

bool mu_decode_check(const Structure& a, const StringValue& s) {
  StringValue expected = mu_encode(a);
  return expected.alphabet == s.alphabet && expected.value == s.value;
}

// --- pipelines ---

namespace {

std::string encode_input(const Machine& m, const Structure& base, const LinearOrder* order) {
  LinearOrder ord = order ? *order : LinearOrder::identity(base.size());
  StringValue enc = mu_encode(successor_expansion(base, ord));
  for (char c : enc.value)
    if (m.sigma.find(c) == std::string::npos)
      throw Error("machine alphabet cannot read the canonical encoding");
  if (static_cast<int>(enc.value.size()) < m.q)
    throw Error("input too short: encoding length " + std::to_string(enc.value.size()) +
                " is below the state count " + std::to_string(m.q));
  return enc.value;
}

} // namespace

bool pipeline_L(const Machine& m, const Structure& base, const LinearOrder* order) {
  std::string x = encode_input(m, base, order);
  if (!is_symmetric(m, x))
    throw Error("machine is not symmetric on this input; the L pipeline needs an SMFA");
  Structure cfg = translate_structure(pi_interpretation(m), padded_string_structure(m, x));
  // Undirect: drop self-loops, close symmetrically, keep only (E,s,t).
  Structure undirected(graph_sig(2), cfg.size());
  cfg.for_each_tuple("E", [&](std::span<const int> t) {
    if (t[0] == t[1]) return;
    undirected.add_tuple("E", {t[0], t[1]});
    undirected.add_tuple("E", {t[1], t[0]});
  });
  undirected.set_constant("s", cfg.constant("s"));
  undirected.set_constant("t", cfg.constant("t"));
  undirected.validate();
  return eval_quantified(undirected, connectivity_sentence(), PresentationKind::Traversal);
}

bool pipeline_NL(const Machine& m, const Structure& base, const LinearOrder* order) {
  std::string x = encode_input(m, base, order);
  Structure cfg = translate_structure(pi_interpretation(m), padded_string_structure(m, x));
  return directed_reachable_bft(cfg);
}

// --- reference machines ---

namespace {

void qf_sweep_left(Machine& m) {
  // From the accept state, walk every head left until the tape start;
  // omitting the all-left-marker read avoids a self-loop at the final
  // configuration.
  std::string tape = m.sigma + kLeftMarker + kRightMarker;
  std::vector<int> pick(m.heads, 0);
  bool done = false;
  while (!done) {
    std::string reads;
    std::vector<int> moves;
    bool all_left = true;
    for (int h = 0; h < m.heads; ++h) {
      char c = tape[pick[h]];
      reads += c;
      moves.push_back(c == kLeftMarker ? 0 : -1);
      if (c != kLeftMarker) all_left = false;
    }
    if (!all_left) m.delta.push_back({1, reads, 1, moves});
    int h = m.heads - 1;
    while (h >= 0 && ++pick[h] == static_cast<int>(tape.size())) pick[h--] = 0;
    if (h < 0) done = true;
  }
}

} // namespace

Machine parity_machine() {
  Machine m;
  m.name = "parity";
  m.q = 3; // 0 = even so far, 2 = odd so far, 1 = accept
  m.heads = 1;
  m.sigma = "01#";
  m.delta.push_back({0, "^", 0, {1}});
  for (char c : {'0', '#'}) {
    m.delta.push_back({0, std::string(1, c), 0, {1}});
    m.delta.push_back({2, std::string(1, c), 2, {1}});
  }
  m.delta.push_back({0, "1", 2, {1}});
  m.delta.push_back({2, "1", 0, {1}});
  m.delta.push_back({0, "$", 1, {-1}});
  qf_sweep_left(m);
  require_valid(m);
  return m;
}

Machine anbn_machine() {
  Machine m;
  m.name = "anbn";
  m.q = 5; // 0 start, 2 skip zeros, 3 match, 4 final check, 1 accept
  m.heads = 2;
  m.sigma = "01";
  m.delta.push_back({0, "^^", 2, {0, 1}});
  m.delta.push_back({2, "^0", 2, {0, 1}});
  m.delta.push_back({2, "^1", 3, {1, 1}});
  m.delta.push_back({3, "01", 3, {1, 1}});
  m.delta.push_back({3, "0$", 4, {1, 0}});
  m.delta.push_back({4, "1$", 1, {-1, -1}});
  qf_sweep_left(m);
  require_valid(m);
  return m;
}

Machine bounce_machine() {
  Machine m;
  m.name = "bounce";
  m.q = 2;
  m.heads = 1;
  m.sigma = "01#";
  m.delta.push_back({0, "^", 0, {1}});
  for (char c : {'0', '1', '#'}) {
    m.delta.push_back({0, std::string(1, c), 0, {1}});
    m.delta.push_back({0, std::string(1, c), 0, {-1}});
  }
  m.delta.push_back({0, "$", 0, {-1}});
  // Accept hop at the left marker, with its mirror edge back.
  m.delta.push_back({0, "^", 1, {0}});
  m.delta.push_back({1, "^", 0, {0}});
  require_valid(m);
  return m;
}

Machine seek_machine() {
  Machine m;
  m.name = "seek";
  m.q = 3; // 0 search walker, 2 found-a-zero walker, 1 accept
  m.heads = 1;
  m.sigma = "01#";
  m.delta.push_back({0, "^", 0, {1}});
  for (char c : {'0', '1', '#'}) {
    m.delta.push_back({0, std::string(1, c), 0, {1}});
    m.delta.push_back({0, std::string(1, c), 0, {-1}});
    m.delta.push_back({2, std::string(1, c), 2, {1}});
    m.delta.push_back({2, std::string(1, c), 2, {-1}});
  }
  m.delta.push_back({0, "$", 0, {-1}});
  m.delta.push_back({2, "$", 2, {-1}});
  m.delta.push_back({2, "^", 2, {1}});
  // Mark (on a '0') and its mirror, then the accept hop and its mirror.
  m.delta.push_back({0, "0", 2, {0}});
  m.delta.push_back({2, "0", 0, {0}});
  m.delta.push_back({2, "^", 1, {0}});
  m.delta.push_back({1, "^", 2, {0}});
  require_valid(m);
  return m;
}

} // namespace travlab
