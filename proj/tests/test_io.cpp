#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "helpers.hpp"
#include "travlab/error.hpp"
#include "travlab/eval.hpp"
#include "travlab/io.hpp"
#include "travlab/machine.hpp"
#include "travlab/structure.hpp"

using namespace travlab;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("travlab-test-" + std::to_string(::getpid()) + "-" +
            std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
  void write(const std::string& name, const std::string& text) const {
    std::ofstream out(file(name));
    out << text;
  }
};

} // namespace

TEST_CASE("signature files round-trip") {
  TempDir dir;
  Signature sig = with_successor(graph_sig(2));
  save_signature(sig, dir.file("g.sig"));
  Signature back = load_signature(dir.file("g.sig"));
  CHECK(back.equivalent(sig));
}

TEST_CASE("structure files round-trip, including functions and constants") {
  TempDir dir;
  Structure a = successor_expansion(testutil::cycle_graph(4), LinearOrder::from_sequence({2, 0, 1, 3}));
  save_structure(a, dir.file("c4.struct"), "c4.sig");
  Structure back = load_structure(dir.file("c4.struct"));
  CHECK(back.same_content(a));
}

TEST_CASE("structure files are hand-writable") {
  TempDir dir;
  dir.write("g.sig", "signature g\nrel E 2\nconst s\nconst t\n");
  dir.write("g.struct",
            "# a two-edge path\n"
            "structure g sig=g.sig n=3\n"
            "rel E: (0,1) (1,0) (1,2) (2,1)\n"
            "const s=0\n"
            "const t=2\n");
  Structure g = load_structure(dir.file("g.struct"));
  CHECK(g.size() == 3);
  CHECK(g.is_graph());
  CHECK(g.constant("s") == 0);
  CHECK(g.constant("t") == 2);
  CHECK(g.tuple_count("E") == 4);
}

TEST_CASE("bad structure files report errors") {
  TempDir dir;
  dir.write("g.sig", "signature g\nrel E 2\n");
  dir.write("bad1.struct", "structure g sig=g.sig\nrel E:\n"); // missing n=
  CHECK_THROWS_AS(load_structure(dir.file("bad1.struct")), Error);
  dir.write("bad2.struct", "structure g sig=g.sig n=2\nrel F: (0,1)\n");
  CHECK_THROWS_AS(load_structure(dir.file("bad2.struct")), Error);
  dir.write("bad3.struct", "structure g sig=g.sig n=2\nrel E: (0,9)\n");
  CHECK_THROWS_AS(load_structure(dir.file("bad3.struct")), Error);
}

TEST_CASE("formula files parse against a signature") {
  TempDir dir;
  dir.write("conn.fo", "# any edge at all\nexists u (exists v (E(u,v)))\n");
  Formula f = load_formula(dir.file("conn.fo"), graph_sig(0));
  CHECK(evaluate(testutil::path_graph(2), f));
  CHECK_FALSE(evaluate(Structure(graph_sig(0), 2), f));
}

TEST_CASE("interpretation files load with cases and defaults") {
  TempDir dir;
  dir.write("from.sig", "signature from\nrel E 2\nconst s\nconst t\n");
  dir.write("to.sig", "signature to\nrel E 2\nconst s\nconst t\n");
  dir.write("swap.interp",
            "interp swap dim=1 from=from.sig to=to.sig\n"
            "domain: true\n"
            "rel E: E(p2,p1)\n"
            "fun s: case s = t => (s); default => (t)\n"
            "fun t: (s)\n");
  Interpretation p = load_interp(dir.file("swap.interp"));
  CHECK(p.dim == 1);
  Structure d(graph_sig(2), 2);
  d.add_tuple("E", {0, 1});
  d.set_constant("s", 0);
  d.set_constant("t", 1);
  Structure img = translate_structure(p, d);
  CHECK(img.holds("E", std::vector<int>{1, 0}));     // edges reversed
  CHECK_FALSE(img.holds("E", std::vector<int>{0, 1}));
  CHECK(img.constant("s") == 1); // s != t, so the default branch fires
  CHECK(img.constant("t") == 0);
}

TEST_CASE("machine files round-trip and expand wildcards") {
  TempDir dir;
  Machine m = parity_machine();
  save_machine(m, dir.file("parity.m"));
  Machine back = load_machine(dir.file("parity.m"));
  CHECK(back.q == m.q);
  CHECK(back.heads == m.heads);
  CHECK(back.sigma == m.sigma);
  CHECK(back.delta.size() == m.delta.size());
  for (const std::string& x : {"", "1", "01", "11#"})
    CHECK(run_machine(back, x) == run_machine(m, x));

  dir.write("wild.m",
            "machine wild q=2 heads=1 sigma=ab\n"
            "delta: (0, *) -> (0, 1)\n");
  Machine w = load_machine(dir.file("wild.m"));
  // '*' covers a, b, and the left marker; reading '$' and moving right would
  // fall off the tape, so that expansion is dropped.
  CHECK(w.delta.size() == 3);
}

TEST_CASE("order specs parse and validate") {
  LinearOrder o = parse_order_spec("2,0,1", 3);
  CHECK(o.sequence() == std::vector<int>{2, 0, 1});
  CHECK_THROWS_AS(parse_order_spec("0,1", 3), Error);
  CHECK_THROWS_AS(parse_order_spec("0,0,1", 3), Error);
}
