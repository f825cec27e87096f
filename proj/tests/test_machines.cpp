#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "travlab/error.hpp"
#include "travlab/interp.hpp"
#include "travlab/machine.hpp"
#include "travlab/structure.hpp"

using namespace travlab;

TEST_CASE("machine validation enforces the well-formedness rules") {
  Machine m;
  m.name = "bad";
  m.q = 1; // no room for an accept state
  m.heads = 1;
  m.sigma = "a";
  CHECK_FALSE(validate_machine(m).empty());

  m.q = 2;
  CHECK(validate_machine(m).empty());
  m.delta.push_back({0, "^", 0, {-1}}); // off the left end
  CHECK_FALSE(validate_machine(m).empty());
  m.delta.back() = {0, "$", 0, {1}}; // off the right end
  CHECK_FALSE(validate_machine(m).empty());
  m.delta.back() = {1, "a", 1, {1}}; // accept state must sweep left
  CHECK_FALSE(validate_machine(m).empty());
  m.delta.back() = {1, "a", 1, {-1}};
  CHECK(validate_machine(m).empty());
}

TEST_CASE("the shipped machines are well-formed") {
  for (const Machine& m :
       {parity_machine(), anbn_machine(), bounce_machine(), seek_machine()})
    CHECK(validate_machine(m).empty());
}

TEST_CASE("the parity machine accepts exactly the even-ones strings") {
  Machine m = parity_machine();
  CHECK(run_machine(m, ""));
  CHECK(run_machine(m, "0#0"));
  CHECK(run_machine(m, "11"));
  CHECK(run_machine(m, "1#1#00"));
  CHECK(run_machine(m, "011"));
  CHECK_FALSE(run_machine(m, "1"));
  CHECK_FALSE(run_machine(m, "0#1"));
  CHECK_FALSE(run_machine(m, "10#11"));
}

TEST_CASE("the two-head machine accepts exactly 0^n 1^n") {
  Machine m = anbn_machine();
  CHECK(run_machine(m, "01"));
  CHECK(run_machine(m, "0011"));
  CHECK(run_machine(m, "000111"));
  CHECK_FALSE(run_machine(m, ""));
  CHECK_FALSE(run_machine(m, "0"));
  CHECK_FALSE(run_machine(m, "10"));
  CHECK_FALSE(run_machine(m, "0101"));
  CHECK_FALSE(run_machine(m, "0111"));
  CHECK_FALSE(run_machine(m, "0001"));
}

TEST_CASE("the symmetric machines have symmetric configuration graphs") {
  for (const std::string& x : {"", "0", "01#", "1101"}) {
    CHECK(is_symmetric(bounce_machine(), x));
    CHECK(is_symmetric(seek_machine(), x));
  }
  CHECK_FALSE(is_symmetric(parity_machine(), "1"));
}

TEST_CASE("the bounce machine accepts everything; seek wants a zero") {
  Machine b = bounce_machine(), s = seek_machine();
  for (const std::string& x : {"", "1", "0", "01", "111", "#"}) CHECK(run_machine(b, x));
  CHECK(run_machine(s, "0"));
  CHECK(run_machine(s, "110#1"));
  CHECK_FALSE(run_machine(s, ""));
  CHECK_FALSE(run_machine(s, "111"));
  CHECK_FALSE(run_machine(s, "#1#"));
}

TEST_CASE("configuration graphs have q*(n+2)^k vertices and pinned corners") {
  Machine m = anbn_machine();
  ConfigGraph cg = config_graph(m, "01");
  CHECK(cg.graph.size() == 5 * 4 * 4);
  CHECK(cg.graph.constant("s") == 0);        // state 0, both heads at ^
  CHECK(cg.graph.constant("t") == 1 * 16);   // state 1, both heads at ^
  CHECK(cg.graph.is_successor_expansion());
}

TEST_CASE("the string interpretation reproduces the configuration graph") {
  for (const Machine& m : {parity_machine(), bounce_machine()}) {
    Interpretation p = pi_interpretation(m);
    for (const std::string& x : {"010", "1#1", "0011"}) {
      Structure direct = config_graph(m, x).graph;
      Structure through = translate_structure(p, padded_string_structure(m, x));
      CHECK(is_isomorphic(direct, through));
    }
  }
  Machine two = anbn_machine();
  Interpretation p2 = pi_interpretation(two);
  Structure direct = config_graph(two, "01101").graph;
  Structure through = translate_structure(p2, padded_string_structure(two, "01101"));
  CHECK(is_isomorphic(direct, through));
}

TEST_CASE("the canonical encoding is injective on small structures") {
  Signature one = Signature().set_name("one").rel("P", 1);
  std::set<std::string> seen;
  int total = 0;
  for (int n = 1; n <= 3; ++n)
    for (long mask = 0; mask < (1L << n); ++mask) {
      Structure a(one, n);
      for (int i = 0; i < n; ++i)
        if (mask >> i & 1) a.add_tuple("P", {i});
      StringValue enc = mu_encode(successor_expansion(a, LinearOrder::identity(n)));
      CHECK(mu_decode_check(successor_expansion(a, LinearOrder::identity(n)), enc));
      seen.insert(enc.value);
      ++total;
    }
  CHECK(static_cast<int>(seen.size()) == total);
}

TEST_CASE("the canonical encoding lays out size, relations, then functions") {
  Signature one = Signature().set_name("one").rel("P", 1);
  Structure a(one, 2);
  a.add_tuple("P", {1});
  StringValue enc = mu_encode(successor_expansion(a, LinearOrder::identity(2)));
  CHECK(enc.alphabet == "01#");
  CHECK(enc.value == "11#01"); // two elements; P holds at the second only
  // A different successor order permutes the bits accordingly.
  StringValue rev = mu_encode(successor_expansion(a, LinearOrder::from_sequence({1, 0})));
  CHECK(rev.value == "11#10");
}

TEST_CASE("encoding requires the successor profile") {
  Signature one = Signature().set_name("one").rel("P", 1);
  Structure bare(one, 2);
  CHECK_THROWS_AS(mu_encode(bare), Error);
}

TEST_CASE("both pipelines agree with direct simulation on small inputs") {
  Signature one = Signature().set_name("one").rel("P", 1);
  std::vector<Structure> inputs;
  for (int n = 1; n <= 2; ++n)
    for (long mask = 0; mask < (1L << n); ++mask) {
      Structure a(one, n);
      for (int i = 0; i < n; ++i)
        if (mask >> i & 1) a.add_tuple("P", {i});
      inputs.push_back(std::move(a));
    }
  Machine par = parity_machine(), bounce = bounce_machine();
  for (const Structure& a : inputs) {
    std::string x = mu_encode(successor_expansion(a, LinearOrder::identity(a.size()))).value;
    CHECK(pipeline_NL(par, a) == run_machine(par, x));
    CHECK(pipeline_L(bounce, a) == run_machine(bounce, x));
    CHECK(pipeline_NL(bounce, a) == run_machine(bounce, x));
  }
}

TEST_CASE("the undirected pipeline refuses asymmetric machines") {
  Signature one = Signature().set_name("one").rel("P", 1);
  Structure a(one, 2);
  a.add_tuple("P", {0});
  CHECK_THROWS_AS(pipeline_L(parity_machine(), a), Error);
}

TEST_CASE("pipelines reject inputs the machine cannot read") {
  // The two-head matcher's alphabet lacks '#', which every encoding uses.
  Signature one = Signature().set_name("one").rel("P", 1);
  Structure a(one, 2);
  CHECK_THROWS_AS(pipeline_NL(anbn_machine(), a), Error);
}
