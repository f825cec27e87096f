#include "travlab/traversal.hpp"

#include <algorithm>
#include <deque>

#include "travlab/error.hpp"
#include "travlab/eval.hpp"

namespace travlab {

namespace {

Formula order_predicate(const Formula& witness_extra) {
  // forall u forall v forall w ((u<v & v<w & E(u,w)) ->
  //   exists x (x<v & <extra> & E(x,v)))
  Formula body = land(less(var("x"), var("v")), land(witness_extra, atom("E", {var("x"), var("v")})));
  Formula consequent = exists("x", body);
  Formula antecedent =
      land(less(var("u"), var("v")),
           land(less(var("v"), var("w")), atom("E", {var("u"), var("w")})));
  return forall("u", forall("v", forall("w", implies(antecedent, consequent))));
}

std::vector<std::vector<int>> adjacency(const Structure& graph) {
  std::vector<std::vector<int>> adj(graph.size());
  graph.for_each_tuple("E", [&](std::span<const int> t) {
    adj[t[0]].push_back(t[1]);
    adj[t[1]].push_back(t[0]);
  });
  for (auto& row : adj) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  return adj;
}

} // namespace

Formula traversal_predicate() { return order_predicate(truef()); }

Formula bft_predicate() {
  return order_predicate(lor(less(var("x"), var("u")), eq(var("x"), var("u"))));
}

Formula dft_predicate() {
  return order_predicate(lor(less(var("u"), var("x")), eq(var("u"), var("x"))));
}

OrderClass classify_order(const Structure& graph, const LinearOrder& order) {
  Structure expanded = order_expansion(graph, order);
  OrderClass out;
  out.traversal = evaluate(expanded, traversal_predicate());
  out.bft = evaluate(expanded, bft_predicate());
  out.dft = evaluate(expanded, dft_predicate());
  return out;
}

namespace {

void generic_runs(const std::vector<std::vector<int>>& adj, std::vector<int>& seq,
                  std::vector<char>& visited, std::set<LinearOrder>& out) {
  int n = static_cast<int>(adj.size());
  if (static_cast<int>(seq.size()) == n) {
    out.insert(LinearOrder::from_sequence(seq));
    return;
  }
  // Boundary = unvisited vertices with a visited neighbor.
  std::vector<int> boundary;
  for (int v = 0; v < n; ++v) {
    if (visited[v]) continue;
    for (int u : adj[v])
      if (visited[u]) {
        boundary.push_back(v);
        break;
      }
  }
  if (boundary.empty())
    for (int v = 0; v < n; ++v)
      if (!visited[v]) boundary.push_back(v); // start a new component anywhere
  for (int v : boundary) {
    visited[v] = 1;
    seq.push_back(v);
    generic_runs(adj, seq, visited, out);
    seq.pop_back();
    visited[v] = 0;
  }
}

void bfs_runs(const std::vector<std::vector<int>>& adj, std::vector<int>& seq,
              std::deque<int>& queue, std::vector<char>& discovered,
              std::set<LinearOrder>& out) {
  int n = static_cast<int>(adj.size());
  if (queue.empty()) {
    if (static_cast<int>(seq.size()) == n) {
      out.insert(LinearOrder::from_sequence(seq));
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (discovered[v]) continue;
      discovered[v] = 1;
      queue.push_back(v);
      bfs_runs(adj, seq, queue, discovered, out);
      queue.pop_back();
      discovered[v] = 0;
    }
    return;
  }
  int u = queue.front();
  queue.pop_front();
  seq.push_back(u);
  std::vector<int> fresh;
  for (int v : adj[u])
    if (!discovered[v]) fresh.push_back(v);
  // Newly discovered neighbors enter the FIFO queue in every possible order.
  std::sort(fresh.begin(), fresh.end());
  if (fresh.empty()) {
    bfs_runs(adj, seq, queue, discovered, out);
  } else {
    for (int v : fresh) discovered[v] = 1;
    do {
      for (int v : fresh) queue.push_back(v);
      bfs_runs(adj, seq, queue, discovered, out);
      for (std::size_t i = 0; i < fresh.size(); ++i) queue.pop_back();
    } while (std::next_permutation(fresh.begin(), fresh.end()));
    for (int v : fresh) discovered[v] = 0;
  }
  seq.pop_back();
  queue.push_front(u);
}

void dfs_runs(const std::vector<std::vector<int>>& adj, std::vector<int>& seq,
              std::vector<int>& stack, std::vector<char>& visited,
              std::set<LinearOrder>& out) {
  int n = static_cast<int>(adj.size());
  if (static_cast<int>(seq.size()) == n) {
    out.insert(LinearOrder::from_sequence(seq));
    return;
  }
  while (!stack.empty()) {
    int top = stack.back();
    bool has_fresh = false;
    for (int v : adj[top])
      if (!visited[v]) {
        has_fresh = true;
        break;
      }
    if (!has_fresh) {
      stack.pop_back();
      dfs_runs(adj, seq, stack, visited, out);
      stack.push_back(top);
      return;
    }
    for (int v : adj[top]) {
      if (visited[v]) continue;
      visited[v] = 1;
      seq.push_back(v);
      stack.push_back(v);
      dfs_runs(adj, seq, stack, visited, out);
      stack.pop_back();
      seq.pop_back();
      visited[v] = 0;
    }
    return;
  }
  // Stack empty: start a new component anywhere.
  for (int v = 0; v < n; ++v) {
    if (visited[v]) continue;
    visited[v] = 1;
    seq.push_back(v);
    stack.push_back(v);
    dfs_runs(adj, seq, stack, visited, out);
    stack.pop_back();
    seq.pop_back();
    visited[v] = 0;
  }
}

} // namespace

std::set<LinearOrder> search_orders(const Structure& graph, SearchKind kind, int cap) {
  if (graph.size() > cap)
    throw Error("search_orders: domain size " + std::to_string(graph.size()) +
                " exceeds enumeration cap " + std::to_string(cap));
  auto adj = adjacency(graph);
  std::set<LinearOrder> out;
  std::vector<int> seq;
  std::vector<char> mark(graph.size(), 0);
  if (graph.size() == 0) {
    out.insert(LinearOrder::identity(0));
    return out;
  }
  switch (kind) {
    case SearchKind::Generic:
      generic_runs(adj, seq, mark, out);
      break;
    case SearchKind::Bfs: {
      std::deque<int> queue;
      bfs_runs(adj, seq, queue, mark, out);
      break;
    }
    case SearchKind::Dfs: {
      std::vector<int> stack;
      dfs_runs(adj, seq, stack, mark, out);
      break;
    }
  }
  return out;
}

namespace {

/// least neighbor of w by order rank, or -1 if w has no neighbors.
int least_neighbor(const std::vector<std::vector<int>>& adj, const LinearOrder& order, int w) {
  int best = -1;
  for (int u : adj[w])
    if (best == -1 || order.less(u, best)) best = u;
  return best;
}

} // namespace

std::vector<QuasiLevel> quasi_levels(const Structure& graph, const LinearOrder& order) {
  if (!classify_order(graph, order).bft) throw Error("order is not a breadth-first traversal");
  auto adj = adjacency(graph);
  std::vector<int> seq = order.sequence();
  int n = graph.size();
  std::vector<int> p(n, -1);
  for (int w = 0; w < n; ++w) p[w] = least_neighbor(adj, order, w);

  std::vector<QuasiLevel> out;
  for (int v : seq) {
    // W_v = { w : p(w) defined, p(w) < v <= w }, scanned in order position.
    std::vector<int> members;
    for (int w : seq) {
      if (order.less(w, v)) continue;
      if (p[w] != -1 && order.less(p[w], v)) members.push_back(w);
    }
    if (members.empty() || members.front() != v) continue;
    // Must be an order-interval starting at v.
    bool contiguous = true;
    for (std::size_t i = 0; i + 1 < members.size(); ++i)
      if (order.rank(members[i + 1]) != order.rank(members[i]) + 1) contiguous = false;
    if (!contiguous) continue;
    out.push_back({members});
  }
  return out;
}

Formula same_quasi_level_formula(const Term& v, const Term& w) {
  // least_nb(a, t): a is t's least neighbor.
  auto least_nb = [](const std::string& a, const Term& t) {
    Formula minimal = forall(
        "b'", implies(atom("E", {var("b'"), t}), lor(less(var(a), var("b'")), eq(var(a), var("b'")))));
    return land(atom("E", {var(a), t}), minimal);
  };
  auto le = [](const Term& a, const Term& b) { return lor(less(a, b), eq(a, b)); };
  // p(w) < v <= w
  Formula first = land(exists("a'", land(least_nb("a'", w), less(var("a'"), v))), le(v, w));
  Formula second = land(exists("a'", land(least_nb("a'", v), less(var("a'"), w))), le(w, v));
  return lor(eq(v, w), lor(first, second));
}

bool same_quasi_level(const Structure& graph, const LinearOrder& order, int v, int w) {
  if (!classify_order(graph, order).bft) throw Error("order is not a breadth-first traversal");
  Structure expanded = order_expansion(graph, order);
  Formula f = same_quasi_level_formula(var("qv"), var("qw"));
  return evaluate(expanded, f, {{"qv", v}, {"qw", w}});
}

namespace {

std::vector<std::vector<int>> components_by_least(const std::vector<std::vector<int>>& adj,
                                                  const LinearOrder& base) {
  int n = static_cast<int>(adj.size());
  std::vector<int> comp(n, -1);
  int nc = 0;
  for (int v = 0; v < n; ++v) {
    if (comp[v] != -1) continue;
    std::deque<int> q{v};
    comp[v] = nc;
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (int w : adj[u])
        if (comp[w] == -1) {
          comp[w] = nc;
          q.push_back(w);
        }
    }
    ++nc;
  }
  std::vector<std::vector<int>> groups(nc);
  for (int v = 0; v < n; ++v) groups[comp[v]].push_back(v);
  std::sort(groups.begin(), groups.end(), [&](const auto& a, const auto& b) {
    int la = a[0], lb = b[0];
    for (int v : a)
      if (base.less(v, la)) la = v;
    for (int v : b)
      if (base.less(v, lb)) lb = v;
    return base.less(la, lb);
  });
  return groups;
}

} // namespace

LinearOrder canonical_bft(const Structure& graph, const LinearOrder& base) {
  auto adj = adjacency(graph);
  std::vector<int> seq;
  std::vector<int> brank(graph.size(), -1); // rank within the growing output

  for (const auto& comp : components_by_least(adj, base)) {
    int v0 = comp[0];
    for (int v : comp)
      if (base.less(v, v0)) v0 = v;
    // Distances from the component source.
    std::vector<int> dist(graph.size(), -1);
    std::deque<int> q{v0};
    dist[v0] = 0;
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (int w : adj[u])
        if (dist[w] == -1) {
          dist[w] = dist[u] + 1;
          q.push_back(w);
        }
    }
    // Level by level: the least shortest path of w is (path of its best
    // predecessor, w), so within a level order by (output rank of the best
    // previous-level neighbor, then base order).
    std::vector<int> level{v0};
    brank[v0] = static_cast<int>(seq.size());
    seq.push_back(v0);
    int d = 0;
    while (true) {
      std::vector<int> next;
      for (int w : comp)
        if (dist[w] == d + 1) next.push_back(w);
      if (next.empty()) break;
      std::vector<std::pair<int, int>> keyed; // (best predecessor rank, w)
      for (int w : next) {
        int best = -1;
        for (int u : adj[w])
          if (dist[u] == d && (best == -1 || brank[u] < brank[best])) best = u;
        keyed.emplace_back(brank[best], w);
      }
      std::sort(keyed.begin(), keyed.end(), [&](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return base.less(a.second, b.second);
      });
      for (const auto& [_, w] : keyed) {
        brank[w] = static_cast<int>(seq.size());
        seq.push_back(w);
      }
      ++d;
    }
  }
  return LinearOrder::from_sequence(seq);
}

LinearOrder deterministic_traversal(const Structure& graph, const LinearOrder& base) {
  auto adj = adjacency(graph);
  std::vector<int> seq;
  std::vector<char> visited(graph.size(), 0);
  for (const auto& comp : components_by_least(adj, base)) {
    int v0 = comp[0];
    for (int v : comp)
      if (base.less(v, v0)) v0 = v;
    // Least-first BFS from the component's least vertex.
    std::deque<int> q{v0};
    visited[v0] = 1;
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      seq.push_back(u);
      std::vector<int> nb;
      for (int w : adj[u])
        if (!visited[w]) nb.push_back(w);
      std::sort(nb.begin(), nb.end(), [&](int a, int b) { return base.less(a, b); });
      for (int w : nb) {
        visited[w] = 1;
        q.push_back(w);
      }
    }
  }
  return LinearOrder::from_sequence(seq);
}

} // namespace travlab
