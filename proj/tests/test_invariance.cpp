#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "travlab/error.hpp"
#include "travlab/eval.hpp"
#include "travlab/invariance.hpp"
#include "travlab/reductions.hpp"
#include "travlab/structure.hpp"
#include "travlab/traversal.hpp"

using namespace travlab;

TEST_CASE("presentation kinds parse and print") {
  CHECK(parse_presentation_kind("traversal") == PresentationKind::Traversal);
  CHECK(parse_presentation_kind("bft") == PresentationKind::Bft);
  CHECK(parse_presentation_kind("dft") == PresentationKind::Dft);
  CHECK(parse_presentation_kind("all-orders") == PresentationKind::AllOrders);
  CHECK(parse_presentation_kind("successor") == PresentationKind::Successor);
  CHECK_THROWS_AS(parse_presentation_kind("nonsense"), Error);
  CHECK(to_string(PresentationKind::Bft) == "bft");
}

TEST_CASE("expansion counts match the expected enumeration") {
  Structure g = testutil::path_graph(3);
  CHECK(enumerate_expansions(g, PresentationKind::AllOrders).size() == 6);
  CHECK(enumerate_expansions(g, PresentationKind::Successor).size() == 6);
  CHECK(enumerate_expansions(g, PresentationKind::Traversal).size() == 4);
  // Expansions carry the right extra symbols.
  auto succ = enumerate_expansions(g, PresentationKind::Successor);
  CHECK(succ[0].is_successor_expansion());
  auto ord = enumerate_expansions(g, PresentationKind::AllOrders);
  CHECK(ord[0].sig().find_rel("<"));
}

TEST_CASE("enumeration respects the cap") {
  Structure big = testutil::path_graph(9);
  CHECK_THROWS_AS(enumerate_expansions(big, PresentationKind::AllOrders, 8), Error);
  CHECK_NOTHROW(enumerate_expansions(testutil::path_graph(4), PresentationKind::AllOrders, 4));
}

TEST_CASE("st-connectivity is traversal-invariant on all graphs up to n=4") {
  std::vector<Structure> bases;
  for (int n = 2; n <= 4; ++n) {
    int pairs = n * (n - 1) / 2;
    for (long mask = 0; mask < (1L << pairs); ++mask) {
      std::vector<std::pair<int, int>> edges;
      int bit = 0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++bit)
          if (mask >> bit & 1) edges.emplace_back(i, j);
      Structure g(graph_sig(2), n);
      for (auto [a, b] : edges) {
        g.add_tuple("E", {a, b});
        g.add_tuple("E", {b, a});
      }
      g.set_constant("s", 0);
      g.set_constant("t", n - 1);
      bases.push_back(std::move(g));
    }
  }
  InvarianceReport rep = check_invariance(bases, connectivity_sentence(),
                                          PresentationKind::Traversal);
  CHECK(rep.invariant);
  CHECK(rep.expansions_checked > 0);
}

TEST_CASE("an order-sensitive sentence is reported with a witness") {
  // "The least vertex has an edge" depends on which vertex comes first.
  Formula least_has_edge =
      exists("u", exists("v", land(lnot(exists("w", less(var("w"), var("u")))),
                                   atom("E", {var("u"), var("v")}))));
  Structure g = testutil::graph_with_edges(3, {{0, 1}}); // vertex 2 isolated
  InvarianceReport rep = check_invariance({g}, least_has_edge, PresentationKind::AllOrders);
  CHECK_FALSE(rep.invariant);
  REQUIRE(rep.violation.has_value());
  CHECK(rep.violation->base_index == 0);
  // The two witness orders really do disagree.
  CHECK(evaluate(order_expansion(g, rep.violation->order1), least_has_edge) !=
        evaluate(order_expansion(g, rep.violation->order2), least_has_edge));
}

TEST_CASE("eval_quantified verifies invariance on demand") {
  Structure g = testutil::graph_with_edges(3, {{0, 1}});
  Formula least_has_edge =
      exists("u", exists("v", land(lnot(exists("w", less(var("w"), var("u")))),
                                   atom("E", {var("u"), var("v")}))));
  CHECK_THROWS_AS(eval_quantified(g, least_has_edge, PresentationKind::AllOrders, true), Error);

  Formula has_edge = exists("u", exists("v", atom("E", {var("u"), var("v")})));
  CHECK(eval_quantified(g, has_edge, PresentationKind::AllOrders, true));
}

TEST_CASE("the quantified verdict matches every expansion when invariant") {
  Structure g2(graph_sig(2), 4);
  g2.add_tuple("E", {0, 1});
  g2.add_tuple("E", {1, 0});
  g2.add_tuple("E", {1, 2});
  g2.add_tuple("E", {2, 1});
  g2.set_constant("s", 0);
  g2.set_constant("t", 2);
  bool verdict = eval_quantified(g2, connectivity_sentence(), PresentationKind::Traversal);
  CHECK(verdict); // 0 and 2 are connected
  for (const Structure& exp : enumerate_expansions(g2, PresentationKind::Traversal))
    CHECK(evaluate(exp, connectivity_sentence()) == verdict);
  g2.set_constant("t", 3); // isolated vertex
  CHECK_FALSE(eval_quantified(g2, connectivity_sentence(), PresentationKind::Traversal));
}

TEST_CASE("traversal presentations require an undirected graph") {
  Structure d(graph_sig(0), 2);
  d.add_tuple("E", {0, 1}); // no reverse edge
  CHECK_THROWS_AS(enumerate_expansions(d, PresentationKind::Traversal), Error);
}
