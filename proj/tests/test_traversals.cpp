#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "helpers.hpp"
#include "travlab/error.hpp"
#include "travlab/structure.hpp"
#include "travlab/traversal.hpp"

using namespace travlab;

namespace {

std::set<LinearOrder> orders_satisfying(const Structure& g, bool OrderClass::* member) {
  std::set<LinearOrder> out;
  std::vector<int> perm(g.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    LinearOrder ord = LinearOrder::from_sequence(perm);
    if (classify_order(g, ord).*member) out.insert(ord);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

} // namespace

TEST_CASE("the three-vertex path has exactly the expected traversals") {
  Structure p3 = testutil::path_graph(3);
  std::set<LinearOrder> expected;
  for (auto seq : {std::vector<int>{0, 1, 2}, {1, 0, 2}, {1, 2, 0}, {2, 1, 0}})
    expected.insert(LinearOrder::from_sequence(seq));
  CHECK(search_orders(p3, SearchKind::Generic) == expected);
  // On a path every traversal is both breadth-first and depth-first.
  CHECK(search_orders(p3, SearchKind::Bfs) == expected);
  CHECK(search_orders(p3, SearchKind::Dfs) == expected);
  CHECK(orders_satisfying(p3, &OrderClass::traversal) == expected);
  CHECK(orders_satisfying(p3, &OrderClass::bft) == expected);
  CHECK(orders_satisfying(p3, &OrderClass::dft) == expected);
}

TEST_CASE("on a triangle every order is every kind of traversal") {
  Structure k3 = testutil::cycle_graph(3);
  CHECK(search_orders(k3, SearchKind::Generic).size() == 6);
  CHECK(search_orders(k3, SearchKind::Bfs).size() == 6);
  CHECK(search_orders(k3, SearchKind::Dfs).size() == 6);
}

TEST_CASE("search kinds separate on the four-cycle") {
  Structure c4 = testutil::cycle_graph(4);
  // 0,1,2,3 walks around the cycle: depth-first but not breadth-first.
  LinearOrder walk = LinearOrder::from_sequence({0, 1, 2, 3});
  OrderClass c = classify_order(c4, walk);
  CHECK(c.traversal);
  CHECK_FALSE(c.bft);
  CHECK(c.dft);
  // 0,1,3,2 fans out from 0: breadth-first but not depth-first.
  OrderClass f = classify_order(c4, LinearOrder::from_sequence({0, 1, 3, 2}));
  CHECK(f.bft);
  CHECK_FALSE(f.dft);
}

TEST_CASE("predicate classification equals search enumeration up to n=4") {
  for (int n = 1; n <= 4; ++n) {
    int pairs = n * (n - 1) / 2;
    for (long mask = 0; mask < (1L << pairs); ++mask) {
      std::vector<std::pair<int, int>> edges;
      int bit = 0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++bit)
          if (mask >> bit & 1) edges.emplace_back(i, j);
      Structure g = testutil::graph_with_edges(n, edges);
      CHECK(orders_satisfying(g, &OrderClass::traversal) ==
            search_orders(g, SearchKind::Generic));
      CHECK(orders_satisfying(g, &OrderClass::bft) == search_orders(g, SearchKind::Bfs));
      CHECK(orders_satisfying(g, &OrderClass::dft) == search_orders(g, SearchKind::Dfs));
    }
  }
}

TEST_CASE("every graph has at least one traversal of each kind (n <= 6)") {
  std::mt19937 rng(8080);
  for (int trial = 0; trial < 100; ++trial) {
    Structure g = testutil::random_graph(1 + static_cast<int>(rng() % 6), rng);
    CHECK(!search_orders(g, SearchKind::Bfs).empty());
    CHECK(!search_orders(g, SearchKind::Dfs).empty());
  }
}

TEST_CASE("breadth-first and depth-first orders are traversals") {
  std::mt19937 rng(9090);
  for (int trial = 0; trial < 50; ++trial) {
    Structure g = testutil::random_graph(1 + static_cast<int>(rng() % 5), rng);
    auto generic = search_orders(g, SearchKind::Generic);
    for (const LinearOrder& o : search_orders(g, SearchKind::Bfs)) CHECK(generic.count(o));
    for (const LinearOrder& o : search_orders(g, SearchKind::Dfs)) CHECK(generic.count(o));
  }
}

namespace {

Structure paper_tree() {
  // Complete binary tree on 15 vertices, numbered level by level; the
  // identity order is a breadth-first traversal.
  std::vector<std::pair<int, int>> edges;
  for (int child = 1; child < 15; ++child) edges.emplace_back((child - 1) / 2, child);
  return testutil::graph_with_edges(15, edges);
}

} // namespace

TEST_CASE("quasi-levels of the binary tree match the worked example") {
  Structure tree = paper_tree();
  LinearOrder ord = LinearOrder::identity(15);
  std::set<std::vector<int>> found;
  for (const QuasiLevel& q : quasi_levels(tree, ord)) found.insert(q.members);
  CHECK(found.count({1, 2}));
  CHECK(found.count({2, 3, 4}));
  CHECK(found.count({5, 6, 7, 8, 9, 10}));
  CHECK(found.count({12, 13, 14}));
  CHECK_FALSE(found.count({4, 5, 6, 7, 8, 9, 10}));
  CHECK_FALSE(found.count({3, 4, 5}));
}

TEST_CASE("same_quasi_level agrees with quasi-level membership") {
  Structure tree = paper_tree();
  LinearOrder ord = LinearOrder::identity(15);
  auto levels = quasi_levels(tree, ord);
  for (int v = 0; v < 15; ++v)
    for (int w = 0; w < 15; ++w) {
      bool shared = false;
      for (const QuasiLevel& q : levels) {
        bool has_v = std::find(q.members.begin(), q.members.end(), v) != q.members.end();
        bool has_w = std::find(q.members.begin(), q.members.end(), w) != q.members.end();
        if (has_v && has_w) shared = true;
      }
      // A vertex always shares a quasi-level with itself, even the root,
      // which belongs to no quasi-level as an interval.
      CHECK(same_quasi_level(tree, ord, v, w) == (v == w || shared));
    }
}

TEST_CASE("quasi_levels requires a breadth-first order") {
  Structure c4 = testutil::cycle_graph(4);
  CHECK_THROWS_AS(quasi_levels(c4, LinearOrder::from_sequence({0, 1, 2, 3})), Error);
}

TEST_CASE("the canonical breadth-first order on the four-cycle") {
  Structure c4 = testutil::cycle_graph(4);
  CHECK(canonical_bft(c4, LinearOrder::identity(4)).sequence() ==
        std::vector<int>{0, 1, 3, 2});
}

TEST_CASE("canonical and deterministic orders satisfy their predicates") {
  std::mt19937 rng(404);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + static_cast<int>(rng() % 7);
    Structure g = testutil::random_graph(n, rng, 0.4);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    LinearOrder base = LinearOrder::from_sequence(perm);
    CHECK(classify_order(g, canonical_bft(g, base)).bft);
    CHECK(classify_order(g, deterministic_traversal(g, base)).traversal);
  }
}

TEST_CASE("the canonical order depends only on the base order") {
  // Deterministic: same inputs, same output; and components are ordered by
  // their base-least vertex.
  Structure g = testutil::graph_with_edges(5, {{3, 4}, {0, 1}});
  LinearOrder base = LinearOrder::from_sequence({2, 3, 0, 1, 4});
  LinearOrder a = canonical_bft(g, base);
  LinearOrder b = canonical_bft(g, base);
  CHECK(a == b);
  CHECK(a.sequence().front() == 2); // base-least vertex starts its component
}
