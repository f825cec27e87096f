#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <deque>
#include <random>

#include "helpers.hpp"
#include "travlab/eval.hpp"
#include "travlab/interp.hpp"
#include "travlab/invariance.hpp"
#include "travlab/reductions.hpp"
#include "travlab/structure.hpp"
#include "travlab/traversal.hpp"

using namespace travlab;

namespace {

Structure two_pointed(int n, const std::vector<std::pair<int, int>>& arcs, int s, int t) {
  Structure d(graph_sig(2), n);
  for (auto [a, b] : arcs) d.add_tuple("E", {a, b});
  d.set_constant("s", s);
  d.set_constant("t", t);
  d.validate();
  return d;
}

bool reaches(const Structure& d) {
  std::vector<std::vector<int>> adj(d.size());
  d.for_each_tuple("E", [&](std::span<const int> e) { adj[e[0]].push_back(e[1]); });
  std::vector<char> seen(d.size(), 0);
  std::deque<int> q{d.constant("s")};
  seen[d.constant("s")] = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (int v : adj[u])
      if (!seen[v]) {
        seen[v] = 1;
        q.push_back(v);
      }
  }
  return seen[d.constant("t")];
}

} // namespace

TEST_CASE("the connectivity sentence reads connectivity off any traversal") {
  Structure g(graph_sig(2), 5);
  for (auto [a, b] : std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {3, 4}}) {
    g.add_tuple("E", {a, b});
    g.add_tuple("E", {b, a});
  }
  g.set_constant("s", 0);
  g.set_constant("t", 2);
  CHECK(eval_quantified(g, connectivity_sentence(), PresentationKind::Traversal));
  g.set_constant("t", 4);
  CHECK_FALSE(eval_quantified(g, connectivity_sentence(), PresentationKind::Traversal));
}

TEST_CASE("the acyclicity sentence recognizes forests") {
  CHECK(eval_quantified(testutil::path_graph(5), acyclicity_sentence(),
                        PresentationKind::Traversal));
  CHECK_FALSE(eval_quantified(testutil::cycle_graph(4), acyclicity_sentence(),
                              PresentationKind::Traversal));
  CHECK(eval_quantified(testutil::graph_with_edges(4, {{0, 1}, {2, 3}}),
                        acyclicity_sentence(), PresentationKind::Traversal));
}

TEST_CASE("squares of connected graphs detect bipartiteness") {
  auto components = [](const Structure& g) {
    std::vector<std::vector<int>> adj(g.size());
    g.for_each_tuple("E", [&](std::span<const int> t) {
      adj[t[0]].push_back(t[1]);
      adj[t[1]].push_back(t[0]);
    });
    std::vector<char> seen(g.size(), 0);
    int count = 0;
    for (int r = 0; r < g.size(); ++r) {
      if (seen[r]) continue;
      ++count;
      std::deque<int> q{r};
      seen[r] = 1;
      while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for (int v : adj[u])
          if (!seen[v]) seen[v] = 1, q.push_back(v);
      }
    }
    return count;
  };
  Interpretation sq = square_interpretation();
  CHECK(components(translate_structure(sq, testutil::cycle_graph(6))) == 2); // bipartite
  CHECK(components(translate_structure(sq, testutil::cycle_graph(5))) == 1); // odd cycle
  CHECK(components(translate_structure(sq, testutil::path_graph(2))) == 2);
}

TEST_CASE("the level interpretation turns reachability into equidistance") {
  Interpretation level = rho();
  SUBCASE("a reachable chain") {
    Structure d = two_pointed(3, {{0, 1}, {1, 2}}, 0, 2);
    Structure g3 = translate_structure(level, successor_expansion(d, LinearOrder::identity(3)));
    CHECK(g3.size() == 9);
    auto dxy = distance(g3, g3.constant("x"), g3.constant("y"));
    auto dxz = distance(g3, g3.constant("x"), g3.constant("z"));
    REQUIRE(dxy);
    REQUIRE(dxz);
    CHECK(*dxy == 2);
    CHECK(*dxz == 2);
  }
  SUBCASE("an unreachable target leaves a gap of at least two") {
    Structure d = two_pointed(3, {{1, 0}, {2, 1}}, 0, 2); // arcs point away from t
    Structure g3 = translate_structure(level, successor_expansion(d, LinearOrder::identity(3)));
    auto dxy = distance(g3, g3.constant("x"), g3.constant("y"));
    auto dxz = distance(g3, g3.constant("x"), g3.constant("z"));
    REQUIRE(dxy);
    CHECK((!dxz || std::abs(*dxy - *dxz) >= 2));
  }
  SUBCASE("exhaustive on two vertices") {
    for (long mask = 0; mask < 4; ++mask)
      for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 2; ++t) {
          std::vector<std::pair<int, int>> arcs;
          if (mask & 1) arcs.emplace_back(0, 1);
          if (mask & 2) arcs.emplace_back(1, 0);
          Structure d = two_pointed(2, arcs, s, t);
          Structure g3 =
              translate_structure(level, successor_expansion(d, LinearOrder::identity(2)));
          auto dxy = distance(g3, g3.constant("x"), g3.constant("y"));
          auto dxz = distance(g3, g3.constant("x"), g3.constant("z"));
          bool equal = dxy && dxz && *dxy == *dxz;
          CHECK(equal == reaches(d));
        }
  }
}

TEST_CASE("level-graph distances have the parity of the level count") {
  std::mt19937 rng(13579);
  Interpretation level = rho();
  for (int trial = 0; trial < 50; ++trial) {
    int n = 1 + static_cast<int>(rng() % 4);
    std::vector<std::pair<int, int>> arcs;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && rng() % 2) arcs.emplace_back(i, j);
    Structure d = two_pointed(n, arcs, static_cast<int>(rng() % n),
                              static_cast<int>(rng() % n));
    Structure g3 = translate_structure(level, successor_expansion(d, LinearOrder::identity(n)));
    for (const char* c : {"y", "z"}) {
      auto dist = distance(g3, g3.constant("x"), g3.constant(c));
      if (dist) CHECK(*dist % 2 == (n - 1) % 2);
    }
  }
}

TEST_CASE("the two-copies translation bridges exactly at x") {
  Structure g3(graph_sig(3), 2);
  g3.add_tuple("E", {0, 1});
  g3.add_tuple("E", {1, 0});
  g3.set_constant("x", 0);
  g3.set_constant("y", 1);
  g3.set_constant("z", 1);
  Structure g6 = translate_structure(tau(), g3);
  CHECK(g6.size() == 4);
  CHECK(g6.is_graph());
  // Two copy edges plus one bridge, symmetrically closed.
  CHECK(g6.tuple_count("E") == 6);
  int x1 = g6.constant("x1"), x2 = g6.constant("x2");
  CHECK(g6.holds("E", std::vector<int>{x1, x2}));
  CHECK(distance(g6, g6.constant("y1"), g6.constant("y2")) == 3);
}

TEST_CASE("coinciding copy tags keep the two-copies image loop-free") {
  // With x = y the two copy tags collapse to one element, so the image is a
  // single copy and the bridge clause must not create a self-loop at x.
  Structure g3(graph_sig(3), 2);
  g3.set_constant("x", 0);
  g3.set_constant("y", 0);
  g3.set_constant("z", 1);
  Structure g6 = translate_structure(tau(), g3);
  CHECK(g6.size() == 2);
  CHECK(g6.is_graph()); // in particular no self-loop from the bridge clause
  CHECK(g6.tuple_count("E") == 0);
  CHECK(g6.constant("x1") == g6.constant("x2"));
}

TEST_CASE("the reachability sentence is constant over breadth-first orders") {
  std::mt19937 rng(24680);
  Formula sentence = psi();
  int instances = 0;
  while (instances < 25) {
    int n = 2 + static_cast<int>(rng() % 2);
    Structure g3 = [&]() {
      Structure g(graph_sig(3), n);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (rng() % 2) {
            g.add_tuple("E", {i, j});
            g.add_tuple("E", {j, i});
          }
      g.set_constant("x", static_cast<int>(rng() % n));
      g.set_constant("y", static_cast<int>(rng() % n));
      g.set_constant("z", static_cast<int>(rng() % n));
      g.validate();
      return g;
    }();
    auto dxy = distance(g3, g3.constant("x"), g3.constant("y"));
    auto dxz = distance(g3, g3.constant("x"), g3.constant("z"));
    bool connected = dxy && dxz;
    if (connected && std::abs(*dxy - *dxz) == 1) continue; // outside the family
    ++instances;
    Structure g6 = translate_structure(tau(), g3);
    bool expect = connected && *dxy == *dxz;
    for (const LinearOrder& ord : search_orders(g6, SearchKind::Bfs))
      CHECK(evaluate(order_expansion(g6, ord), sentence) == expect);
  }
}

TEST_CASE("end-to-end directed reachability through the canonical order") {
  Structure chain = two_pointed(3, {{0, 1}, {1, 2}}, 0, 2);
  CHECK(directed_reachable_bft(successor_expansion(chain, LinearOrder::identity(3))));
  Structure anti = two_pointed(3, {{1, 0}, {2, 1}}, 0, 2);
  CHECK_FALSE(directed_reachable_bft(successor_expansion(anti, LinearOrder::identity(3))));
  // The verdict is independent of the successor order used.
  CHECK(directed_reachable_bft(successor_expansion(chain, LinearOrder::from_sequence({2, 0, 1}))));
}

TEST_CASE("order parity via the plus-two interpretation") {
  Interpretation parity = parity_interpretation();
  for (int n = 1; n <= 8; ++n) {
    Structure o(order_sig(), n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) o.add_tuple("<", {i, j});
    Structure img = translate_structure(parity, o);
    bool connected = true;
    for (int v = 1; v < n && connected; ++v)
      connected = distance(img, 0, v).has_value();
    CHECK(connected == (n % 2 == 1));
  }
}
