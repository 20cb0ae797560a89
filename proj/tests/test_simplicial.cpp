#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gcohom/simplicial.hpp"

using namespace gcohom;
namespace sx = gcohom::simplicial;

namespace {

const Ring Q = Ring::rationals();

std::map<int, std::size_t> dims(std::initializer_list<std::pair<const int, std::size_t>> l) { return l; }

}  // namespace

TEST_CASE("simplicial complexes") {
  SimplicialSet c = sx::builtin("circle");
  CHECK(c.count(0) == 3);
  CHECK(c.count(1) == 3);
  CHECK(c.dimension() == 1);
  SimplicialSet s = sx::builtin("sphere2");
  CHECK(s.count(0) == 4);
  CHECK(s.count(1) == 6);
  CHECK(s.count(2) == 4);
  CHECK(sx::builtin("point").size() == 1);
  CHECK(sx::betti(c, Q) == dims({{0, 1}, {1, 1}}));
  CHECK(sx::betti(s, Q) == dims({{0, 1}, {2, 1}}));
  CHECK(sx::betti(sx::builtin("interval"), Ring::integers()) == dims({{0, 1}}));

  CHECK_THROWS_AS(sx::from_complex({}), InputError);
  CHECK_THROWS_WITH(sx::from_complex({{0, 1}, {2, 2}}), "facets[1]: repeated vertex");
  CHECK_THROWS_WITH(sx::from_json(R"({"facets": [[0, 1], [1, "x"]]})"), "facets[1][1]: expected an integer");
  CHECK_THROWS_AS(sx::from_json("{\"facets\": "), InputError);
  CHECK(sx::from_json(R"({"facets": [[5, 7], [7, 9], [5, 9]]})").size() == 6);
  CHECK_THROWS_AS(sx::builtin("klein"), InputError);
}

TEST_CASE("simplicial identities are checked on construction") {
  // a 1-simplex whose faces are both vertex 0, plus a 2-simplex with
  // inconsistent faces
  std::vector<std::size_t> counts{1, 2, 1};
  std::vector<std::vector<std::vector<SimplexRef>>> faces(3);
  faces[1] = {{nondegenerate(0, 0), nondegenerate(0, 0)}, {nondegenerate(0, 0), nondegenerate(0, 0)}};
  faces[2] = {{nondegenerate(0, 1), nondegenerate(1, 1), nondegenerate(0, 1)}};
  CHECK_NOTHROW(SimplicialSet(counts, faces));
  faces[2] = {{nondegenerate(0, 1), SimplexRef{0, {0, 0}}, nondegenerate(0, 1)}};
  CHECK_NOTHROW(SimplicialSet(counts, faces));
  faces[1][1] = {nondegenerate(0, 0), nondegenerate(1, 0)};
  CHECK_THROWS_AS(SimplicialSet(counts, faces), InputError);
}

TEST_CASE("cartesian powers") {
  SimplicialSet p = sx::builtin("point");
  CHECK(sx::power(p, 3).size() == 1);
  SimplicialSet c = sx::builtin("circle");
  SimplicialSet c1 = sx::power(c, 1);
  CHECK(c1.count(0) == 3);
  CHECK(c1.count(1) == 3);
  SimplicialSet t = sx::power(c, 2);
  CHECK(sx::betti(t, Q) == dims({{0, 1}, {1, 2}, {2, 1}}));
  CHECK(t.count(0) == 9);
  CHECK(t.count(1) == 9 + 9 + 9);
  CHECK(t.count(2) == 18);
  CHECK(sx::kunneth_check(c, 3, Q).ok);
  CHECK(sx::kunneth_check(sx::builtin("sphere2"), 2, Ring::prime(3)).ok);
  CHECK(sx::kunneth_check(sx::builtin("interval"), 3, Q).ok);
  CHECK(sx::kunneth_check(sx::builtin("torus"), 2, Q).ok);
  CHECK_THROWS_AS(sx::power(c, 3, 50), ResourceLimitError);
  CHECK_THROWS_AS(sx::power(c, 0), InputError);
}

TEST_CASE("diagonals") {
  SimplicialSet c = sx::builtin("circle");
  SimplicialSet c2 = sx::power(c, 2);
  SimplicialSubset d = sx::diagonal(c2, 0, 1);
  CHECK(d.size() == c.size());
  CHECK(sx::closed_under_faces(c2, d));
  CHECK(complexes::cohomology(sx::cochains(c2, d, Q)).by_degree() == sx::betti(c, Q));
  CHECK_THROWS_AS(sx::diagonal(c2, 1, 1), InputError);
  CHECK_THROWS_AS(sx::diagonal(c, 0, 1), InputError);
  SimplicialSet p2 = sx::power(sx::builtin("point"), 2);
  CHECK(sx::diagonal(p2, 0, 1).size() == p2.size());

  SimplicialSet c3 = sx::power(c, 3);
  Graph k3 = graph::builtin("complete:3");
  SimplicialSubset z01 = sx::diagonal_intersection(c3, k3, 0b011);
  CHECK(sx::closed_under_faces(c3, z01));
  CHECK(complexes::cohomology(sx::cochains(c3, z01, Q)).by_degree() == sx::betti(c, Q));
  SimplicialSubset zg = sx::diagonal_union(c3, k3);
  CHECK(sx::closed_under_faces(c3, zg));
}

TEST_CASE("relative cohomology") {
  SimplicialSet c = sx::builtin("circle");
  SimplicialSet c2 = sx::power(c, 2);
  auto all = sx::relative_cohomology(c2, sx::everything(c2), Q);
  CHECK(all.table.total() == 0);
  CHECK(all.les.ok);
  auto none = sx::relative_cohomology(c2, sx::nothing(c2), Q);
  CHECK(none.table.by_degree() == sx::betti(c2, Q));
  auto k2 = sx::relative_cohomology(c2, sx::diagonal(c2, 0, 1), Q);
  CHECK(k2.les.ok);
  CHECK(k2.table.by_degree() == dims({{1, 1}, {2, 1}}));
  auto z = sx::relative_cohomology(c2, sx::diagonal(c2, 0, 1), Ring::integers());
  CHECK(z.les.ok);
  CHECK(z.table.by_degree() == dims({{1, 1}, {2, 1}}));
  CHECK(z.table.torsion.empty());
  SimplicialSubset broken = sx::nothing(c2);
  broken.member[c2.size() - 1] = 1;
  CHECK_THROWS_AS(sx::relative_cohomology(c2, broken, Q), InputError);
}

TEST_CASE("cover bicomplex") {
  SimplicialSet c = sx::builtin("circle");
  auto one = sx::cover_bicomplex(c, graph::builtin("empty:2"), Q);
  CHECK(one.bicomplex.max_p() == 0);
  CHECK(complexes::cohomology(one.bicomplex.total()).by_degree() == sx::betti(one.power, Q));

  auto p3 = sx::cover_bicomplex(c, graph::builtin("path:3"), Q);
  CHECK(p3.bicomplex.check_identities().ok);
  auto rel = sx::relative_cohomology(p3.power, sx::diagonal_union(p3.power, graph::builtin("path:3")), Q);
  CHECK(complexes::cohomology(p3.bicomplex.total()).by_degree() == rel.table.by_degree());

  CHECK_THROWS_AS(sx::cover_bicomplex(c, graph::builtin("cycle:2"), Q), InputError);
  CHECK_THROWS_AS(sx::cover_bicomplex(c, graph::builtin("cycle:1"), Q), InputError);
}

TEST_CASE("cup products") {
  GradedAlgebra circle = sx::cup_ring(sx::builtin("circle"), Q);
  REQUIRE(circle.dim() == 2);
  CHECK(circle.degree(1) == 1);
  CHECK(circle.product(1, 1).empty());

  GradedAlgebra s2 = sx::cup_ring(sx::builtin("sphere2"), Q);
  CHECK(s2.poincare() == algebra::builtin("sphere", {2}, Q).poincare());

  GradedAlgebra t = sx::cup_ring(sx::builtin("torus"), Q);
  REQUIRE(t.dim() == 4);
  const SparseVec& xy = t.product(1, 2);
  const SparseVec& yx = t.product(2, 1);
  REQUIRE(xy.size() == 1);
  CHECK(xy[0].first == 3);
  CHECK(yx == scale(Q, xy, Scalar(-1)));
  CHECK(t.product(1, 1).empty());
  CHECK_FALSE(algebra::validate(t));

  GradedAlgebra t3 = sx::cup_ring(sx::builtin("torus"), Ring::prime(3));
  CHECK(t3.poincare() == algebra::builtin("torus", {2}, Q).poincare());
  CHECK_THROWS_AS(sx::cup_ring(sx::builtin("circle"), Ring::integers()), InputError);
}

TEST_CASE("cover bicomplex against the graph complex") {
  struct Case {
    const char* x;
    const char* g;
  };
  for (Case cs : {Case{"circle", "complete:2"}, Case{"circle", "path:3"}, Case{"circle", "complete:3"},
                  Case{"sphere2", "complete:2"}, Case{"interval", "path:3"}, Case{"circle", "empty:2"}}) {
    auto r = sx::compare_with_graph_complex(sx::builtin(cs.x), graph::builtin(cs.g), Q);
    INFO(cs.x << " " << cs.g);
    CHECK_MESSAGE(r.e1.ok, r.e1.detail);
    CHECK_MESSAGE(r.total.ok, r.total.detail);
    CHECK_MESSAGE(r.les.ok, r.les.detail);
    CHECK(r.euler_equal);
  }
  auto k2 = sx::compare_with_graph_complex(sx::builtin("circle"), graph::builtin("complete:2"), Q);
  CHECK(k2.relative == dims({{1, 1}, {2, 1}}));
  CHECK(k2.poincare_equal);
}
