#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gcohom/graph_complex.hpp"
#include "json.hpp"

#include <algorithm>
#include <numeric>
#include <random>

using namespace gcohom;

namespace {

DGAlgebra lambda_x(Ring r = Ring::rationals()) { return DGAlgebra(algebra::exterior({"x"}, {1}, r)); }
DGAlgebra formal(const char* spec, Ring r = Ring::rationals()) { return DGAlgebra(algebra::builtin_from_spec(spec, r)); }

Graph random_graph(std::mt19937& rng, int max_n, int max_e, bool loops) {
  int n = 1 + static_cast<int>(rng() % max_n);
  int m = static_cast<int>(rng() % (max_e + 1));
  std::vector<Edge> edges;
  for (int k = 0; k < m; ++k) {
    int u = static_cast<int>(rng() % n), v = static_cast<int>(rng() % n);
    if (u == v && !loops) continue;
    edges.push_back({u, v});
  }
  return Graph(n, edges);
}

}  // namespace

TEST_CASE("single edge with an exterior algebra") {
  GraphComplex c(lambda_x(), graph::builtin("path:2"));
  REQUIRE(c.size() == 6);
  // p = 0: 1⊗1, 1⊗x, x⊗1, x⊗x ; p = 1: 1, x
  std::size_t one = c.index_of(1, {0}), x = c.index_of(1, {1});
  CHECK(c.delta().at(one, c.index_of(0, {0, 0})) == 1);
  CHECK(c.delta().at(x, c.index_of(0, {1, 0})) == 1);
  CHECK(c.delta().at(x, c.index_of(0, {0, 1})) == 1);
  CHECK(c.delta().transpose().row(c.index_of(0, {1, 1})).empty());
  BettiTable b = graphcohom::cohomology(c);
  CHECK(b.rank(1, 0) == 1);
  CHECK(b.rank(2, 0) == 1);
  CHECK(b.table.total() == 2);
  auto pp = graphcohom::poincare(c, b);
  CHECK(pp.cohomology.to_string() == "t + t^2");
  Poly2 one_t = Poly2::constant(1) + Poly2::monomial(1, 1);
  CHECK(pp.complex == one_t.pow(2) + one_t * Poly2::monomial(1, 0, 1));
  CHECK(graphcohom::total_cohomology(c) == std::map<int, std::size_t>{{1, 1}, {2, 1}});
}

TEST_CASE("edgeless graph and loops") {
  GraphComplex e(formal("sphere:2"), graph::builtin("empty:2"));
  CHECK(e.delta().is_zero());
  BettiTable b = graphcohom::cohomology(e);
  CHECK(b.poincare() == algebra::builtin("sphere", {2}, Ring::rationals()).poincare().pow(2));

  GraphComplex l(formal("sphere:2"), graph::builtin("cycle:1"));
  REQUIRE(l.size() == 4);
  for (std::size_t k = 0; k < 2; ++k) CHECK(l.delta().at(l.index_of(1, {k}), l.index_of(0, {k})) == 1);
  CHECK(graphcohom::cohomology(l).table.total() == 0);
}

TEST_CASE("massey example on a single vertex") {
  GraphComplex c(algebra::builtin_dga("massey_example", Ring::rationals()), graph::builtin("empty:1"));
  CHECK(graphcohom::total_cohomology(c) == std::map<int, std::size_t>{{0, 1}, {1, 2}, {2, 2}, {3, 1}});
}

TEST_CASE("deletion-contraction examples") {
  DGAlgebra s2 = formal("sphere:2");
  Graph k3 = graph::builtin("complete:3");
  for (std::size_t a = 0; a < 3; ++a) {
    auto r = graphcohom::deletion_contraction(s2, k3, a);
    CHECK_MESSAGE(r.ok, r.detail);
  }
  auto r = graphcohom::deletion_contraction(lambda_x(), graph::builtin("path:2"), 0);
  CHECK_MESSAGE(r.ok, r.detail);
  Graph dbl = graph::builtin("cycle:2");
  CHECK(graphcohom::cohomology(GraphComplex(s2, dbl)).table.rank ==
        graphcohom::cohomology(GraphComplex(s2, graph::builtin("path:2"))).table.rank);
  CHECK_FALSE(graphcohom::deletion_contraction(s2, graph::builtin("cycle:1"), 0).ok);
}

TEST_CASE("contraction isomorphism examples") {
  GraphComplex k2(lambda_x(), graph::builtin("path:2"));
  auto id = graphcohom::contraction_iso(k2, 0);
  CHECK(id.map == SparseMatrix::identity(Ring::rationals(), k2.size()));
  auto e = graphcohom::contraction_iso(k2, 1);
  CHECK(e.target.size() == 2);
  CHECK(graphcohom::verify_contraction_iso(k2, 1).ok);
  GraphComplex k3(formal("torus:2"), graph::builtin("complete:3"));
  auto t = graphcohom::contraction_iso(k3, 1);
  CHECK(t.target.graph().vertex_count() == 2);
  CHECK(t.target.graph().has_multi_edge());
  for (EdgeMask s = 0; s < 8; ++s) {
    auto r = graphcohom::verify_contraction_iso(k3, s);
    CHECK_MESSAGE(r.ok, r.detail);
  }
  DGAlgebra m = algebra::builtin_dga("massey_example", Ring::rationals());
  GraphComplex p3(m, graph::builtin("path:3"));
  for (EdgeMask s = 0; s < 4; ++s) CHECK(graphcohom::verify_contraction_iso(p3, s).ok);
}

TEST_CASE("property: structural identities on random graphs over all rings") {
  std::mt19937 rng(314);
  std::vector<Ring> rings{Ring::rationals(), Ring::prime(2), Ring::prime(3), Ring::integers()};
  for (int trial = 0; trial < 24; ++trial) {
    Ring r = rings[trial % 4];
    Graph g = random_graph(rng, 4, 4, true);
    const char* algs[] = {"sphere:2", "torus:2", "exterior:1,2", "surface:1"};
    GraphComplex c(formal(algs[trial % 4], r), g);
    CHECK((c.delta() * c.delta()).is_zero());
    if (r.is_field()) {
      GraphComplex m(algebra::builtin_dga(trial % 2 ? "massey_example" : "massey_even", r), g.vertex_count() > 3
                                                                                                 ? graph::builtin("path:3")
                                                                                                 : g);
      CHECK(m.bicomplex().check_identities().ok);
    }
  }
}

TEST_CASE("property: loops kill cohomology, multi-edges collapse") {
  std::mt19937 rng(2718);
  for (int trial = 0; trial < 16; ++trial) {
    Ring r = trial % 2 ? Ring::integers() : Ring::prime(3);
    Graph g = random_graph(rng, 4, 4, true);
    DGAlgebra a = formal(trial % 3 ? "sphere:2" : "torus:2", r);
    BettiTable b = graphcohom::cohomology(GraphComplex(a, g));
    if (g.has_loop()) CHECK(b.table.total() == 0);
    if (!g.has_loop()) {
      BettiTable c = graphcohom::cohomology(GraphComplex(a, g.collapse_multi_edges()));
      CHECK(b.table.rank == c.table.rank);
      CHECK(b.table.torsion == c.table.torsion);
    }
  }
}

TEST_CASE("property: cohomology ranks do not depend on the vertex enumeration") {
  std::mt19937 rng(1618);
  for (int trial = 0; trial < 10; ++trial) {
    Graph g = random_graph(rng, 4, 5, false);
    std::vector<int> perm(g.vertex_count());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    DGAlgebra a = formal(trial % 2 ? "torus:2" : "exterior:1,2", Ring::rationals());
    CHECK(graphcohom::cohomology(GraphComplex(a, g)).table.rank ==
          graphcohom::cohomology(GraphComplex(a, g.relabel(perm))).table.rank);
  }
}

TEST_CASE("property: Euler characteristic and Whitney expansion") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 12; ++trial) {
    Graph g = random_graph(rng, 4, 5, true);
    DGAlgebra a = formal(trial % 2 ? "surface:1" : "sphere:3", Ring::rationals());
    GraphComplex c(a, g);
    auto pp = graphcohom::poincare(c, graphcohom::cohomology(c));
    CHECK(pp.complex.at_u(-1) == pp.cohomology.at_u(-1));
    Poly2 w = graphcohom::subset_expansion(a.algebra(), g);
    CHECK(pp.complex.at_u(-1) == w);
    CHECK(w.evaluate(1, 0) == graph::count_colourings(g, static_cast<int>(a.dim())));
  }
}

TEST_CASE("property: quotient presentation agrees with the subset presentation") {
  for (const char* gs : {"path:2", "path:3", "complete:3", "cycle:2", "star:3"})
    for (const char* as : {"exterior:1", "sphere:2", "exterior:2"}) {
      GraphComplex c(formal(as, Ring::rationals()), graph::builtin(gs));
      auto r = graphcohom::quotient_cross_check(c);
      CHECK_MESSAGE(r.ok, gs << " " << as << ": " << r.detail);
    }
  GraphComplex l(formal("exterior:1", Ring::prime(3)), Graph(2, {{0, 1}, {1, 1}}));
  CHECK(graphcohom::quotient_cross_check(l).ok);
}

TEST_CASE("property: deletion-contraction on random graphs") {
  std::mt19937 rng(4242);
  std::vector<Ring> rings{Ring::rationals(), Ring::prime(2), Ring::integers()};
  for (int trial = 0; trial < 9; ++trial) {
    Graph g = random_graph(rng, 4, 4, true);
    DGAlgebra a = formal(trial % 2 ? "exterior:1" : "sphere:2", rings[trial % 3]);
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      if (g.edge(e).is_loop()) continue;
      auto r = graphcohom::deletion_contraction(a, g, e);
      CHECK_MESSAGE(r.ok, g.to_string() << " edge " << e << ": " << r.detail);
    }
  }
}

TEST_CASE("integral reports") {
  DGAlgebra z = formal("exterior:1,1", Ring::integers());
  GraphComplex c(z, graph::builtin("complete:3"));
  BettiTable b = graphcohom::cohomology(c);
  BettiTable bq = graphcohom::cohomology(GraphComplex(formal("exterior:1,1", Ring::rationals()), graph::builtin("complete:3")));
  CHECK(b.table.rank == bq.table.rank);
  std::string text = graphcohom::text_report(c, b);
  CHECK(text.find("torsion:") != std::string::npos);
  std::string js = graphcohom::json_report(c, b);
  auto parsed = nlohmann::ordered_json::parse(js);
  CHECK(parsed.dump(2) == js);
  CHECK(parsed["ranks"].size() == b.table.rank.size());
}
