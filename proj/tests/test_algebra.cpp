#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gcohom/algebra.hpp"

using namespace gcohom;

namespace {

const std::vector<Ring> kRings{Ring::rationals(), Ring::prime(2), Ring::prime(3), Ring::integers()};

SparseVec e(std::size_t i, long c = 1) { return SparseVec{{i, Scalar(c)}}; }

std::string sphere_with_square(const char* square_result) {
  return std::string(R"({"ring": "Q", "basis": [{"name": "1", "deg": 0}, {"name": "x", "deg": 2}],
    "products": [{"left": "x", "right": "x", "result": [{"basis": ")") +
         square_result + R"(", "coeff": "1"}]}]})";
}

const char* kMasseyFile = R"({
  "ring": "Q",
  "basis": [{"name": "1", "deg": 0}, {"name": "a", "deg": 1}, {"name": "b", "deg": 1},
            {"name": "x", "deg": 1}, {"name": "ab", "deg": 2}, {"name": "ax", "deg": 2},
            {"name": "bx", "deg": 2}, {"name": "abx", "deg": 3}],
  "products": [
    {"left": "a", "right": "b", "result": [{"basis": "ab", "coeff": "1"}]},
    {"left": "a", "right": "x", "result": [{"basis": "ax", "coeff": "1"}]},
    {"left": "b", "right": "x", "result": [{"basis": "bx", "coeff": "1"}]},
    {"left": "a", "right": "bx", "result": [{"basis": "abx", "coeff": "1"}]},
    {"left": "b", "right": "ax", "result": [{"basis": "abx", "coeff": "-1"}]},
    {"left": "x", "right": "ab", "result": [{"basis": "abx", "coeff": "1"}]}
  ],
  "differential": [
    {"of": "x", "result": [{"basis": "ab", "coeff": "1"}]},
    {"of": "ax", "result": []},
    {"of": "bx", "result": []}
  ]
})";

}  // namespace

TEST_CASE("validate accepts the sphere and rejects a wrong-degree square") {
  Ring q = Ring::rationals();
  GradedAlgebra s2 = algebra::builtin("sphere", {2}, q);
  CHECK_FALSE(algebra::validate(s2));
  CHECK(s2.poincare().to_string() == "1 + t^2");

  std::vector<std::vector<SparseVec>> prod{{e(0), e(1)}, {e(1), e(0)}};
  GradedAlgebra bad(q, {{"1", 0}, {"x", 2}}, prod);
  auto v = algebra::validate(bad);
  REQUIRE(v);
  CHECK(v->message() == "degree additivity at (x,x)");
}

TEST_CASE("validate flags odd squares outside characteristic 2") {
  // basis 1, a (deg 1), b (deg 2) with a*a = b
  std::vector<std::vector<SparseVec>> prod{{e(0), e(1), e(2)}, {e(1), e(2), {}}, {e(2), {}, {}}};
  GradedAlgebra q_alg(Ring::rationals(), {{"1", 0}, {"a", 1}, {"b", 2}}, prod);
  auto v = algebra::validate(q_alg);
  REQUIRE(v);
  CHECK(v->identity == "odd square");
  CHECK(v->where == "(a)");
  GradedAlgebra f2_alg(Ring::prime(2), {{"1", 0}, {"a", 1}, {"b", 2}}, prod);
  CHECK_FALSE(algebra::validate(f2_alg));
}

TEST_CASE("builtins validate over every ring") {
  for (const Ring& r : kRings) {
    CHECK_FALSE(algebra::validate(algebra::builtin("sphere", {3}, r)));
    CHECK_FALSE(algebra::validate(algebra::builtin("torus", {3}, r)));
    CHECK_FALSE(algebra::validate(algebra::builtin("truncated_poly", {2, 4}, r)));
    CHECK_FALSE(algebra::validate(algebra::builtin("exterior", {1, 2, 3}, r)));
    CHECK_FALSE(algebra::validate(algebra::builtin("surface", {2}, r)));
    CHECK_FALSE(algebra::validate(algebra::builtin("point", {}, r)));
  }
  for (const auto& name : algebra::builtin_dga_names())
    for (const Ring& r : {Ring::rationals(), Ring::prime(2), Ring::prime(3)})
      CHECK_FALSE(algebra::validate(algebra::builtin_dga(name, r)));
}

TEST_CASE("builtin poincare polynomials") {
  Ring q = Ring::rationals();
  CHECK(algebra::builtin("torus", {2}, q).dim() == 4);
  CHECK(algebra::builtin("torus", {2}, q).poincare() == Poly2::monomial(1, 1).operator+(Poly2::constant(1)).pow(2));
  GradedAlgebra s = algebra::builtin("surface", {2}, q);
  CHECK(s.dim() == 6);
  CHECK(s.poincare().to_string() == "1 + 4t + t^2");
  CHECK_THROWS_AS(algebra::builtin("klein", {}, q), InputError);
  CHECK_THROWS_AS(algebra::builtin("sphere", {0}, q), InputError);
  CHECK_THROWS_AS(algebra::builtin("truncated_poly", {1, 3}, q), InputError);
  CHECK_NOTHROW(algebra::builtin("truncated_poly", {1, 3}, Ring::prime(2)));
  CHECK(algebra::builtin_from_spec("exterior:1,1", q).dim() == 4);
  CHECK_THROWS_AS(algebra::builtin_from_spec("sphere:x", q), InputError);
}

TEST_CASE("surface products") {
  Ring q = Ring::rationals();
  GradedAlgebra s = algebra::builtin("surface", {1}, q);
  std::size_t a = *s.index_of("a1"), b = *s.index_of("b1"), w = *s.index_of("w");
  CHECK(s.product(a, b) == e(w));
  CHECK(s.product(b, a) == e(w, -1));
  CHECK(s.product(a, a).empty());
}

TEST_CASE("tensor product signs and poincare") {
  Ring q = Ring::rationals();
  GradedAlgebra lx = algebra::exterior({"x"}, {1}, q);
  GradedAlgebra ly = algebra::exterior({"y"}, {1}, q);
  GradedAlgebra t = algebra::tensor(lx, ly);
  CHECK_FALSE(algebra::validate(t));
  std::size_t one_y = algebra::tensor_index(lx, ly, 0, 1);
  std::size_t x_one = algebra::tensor_index(lx, ly, 1, 0);
  std::size_t x_y = algebra::tensor_index(lx, ly, 1, 1);
  CHECK(t.product(one_y, x_one) == e(x_y, -1));
  CHECK(t.product(x_one, one_y) == e(x_y));

  GradedAlgebra s2 = algebra::builtin("sphere", {2}, q);
  CHECK(algebra::tensor(s2, s2).poincare() == s2.poincare() * s2.poincare());
  GradedAlgebra unit = algebra::builtin("point", {}, q);
  CHECK(algebra::tensor(s2, unit) == s2);
}

TEST_CASE("property: tensor is associative up to re-indexing") {
  for (const Ring& r : kRings) {
    GradedAlgebra a = algebra::builtin("exterior", {1, 2}, r);
    GradedAlgebra b = algebra::builtin("surface", {1}, r);
    GradedAlgebra c = algebra::builtin("sphere", {3}, r);
    GradedAlgebra ab = algebra::tensor(a, b), bc = algebra::tensor(b, c);
    GradedAlgebra left = algebra::tensor(ab, c), right = algebra::tensor(a, bc);
    REQUIRE(left.dim() == right.dim());
    CHECK(left.poincare() == a.poincare() * b.poincare() * c.poincare());
    auto li = [&](std::size_t i, std::size_t j, std::size_t k) {
      return algebra::tensor_index(ab, c, algebra::tensor_index(a, b, i, j), k);
    };
    auto ri = [&](std::size_t i, std::size_t j, std::size_t k) {
      return algebra::tensor_index(a, bc, i, algebra::tensor_index(b, c, j, k));
    };
    std::vector<std::size_t> perm(left.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = 0; j < b.dim(); ++j)
        for (std::size_t k = 0; k < c.dim(); ++k) perm[li(i, j, k)] = ri(i, j, k);
    bool same = true;
    for (std::size_t x = 0; x < left.dim(); ++x)
      for (std::size_t y = 0; y < left.dim(); ++y) {
        SparseVec mapped;
        for (const auto& [k, v] : left.product(x, y)) mapped.emplace_back(perm[k], v);
        if (normalize(r, mapped) != right.product(perm[x], perm[y])) same = false;
      }
    CHECK(same);
  }
}

TEST_CASE("config loader") {
  DGAlgebra m = algebra::from_config(kMasseyFile);
  CHECK(m.dim() == 8);
  CHECK_FALSE(m.has_zero_differential());
  SparseMatrix d = m.differential_matrix();
  CHECK((d * d).is_zero());
  DGAlgebra builtin = algebra::builtin_dga("massey_example", Ring::rationals());
  CHECK(builtin.algebra() == m.algebra());
  CHECK(builtin.diffs() == m.diffs());
  CHECK(algebra::cohomology_dims(m) == std::vector<std::size_t>{1, 2, 2, 1});

  CHECK_THROWS_WITH_AS(algebra::from_config(sphere_with_square("1")),
                       doctest::Contains("degree additivity at (x,x)"), InputError);
  CHECK_THROWS_WITH_AS(algebra::from_config(R"({"ring": "Q", "basis": []})"), doctest::Contains("unit required"),
                       InputError);
  CHECK_THROWS_WITH_AS(algebra::from_config("{\"ring\": \"Q\",\n \"basis\": [}"), doctest::Contains("line 2"),
                       InputError);
  CHECK_THROWS_WITH_AS(algebra::from_config(sphere_with_square("y")), doctest::Contains("products[0].result[0].basis"),
                       InputError);
}

TEST_CASE("property: cohomology dimension bounded by algebra dimension") {
  for (const auto& name : algebra::builtin_dga_names()) {
    DGAlgebra a = algebra::builtin_dga(name, Ring::rationals());
    std::size_t total = 0;
    for (auto x : algebra::cohomology_dims(a)) total += x;
    CHECK(total < a.dim());
  }
  DGAlgebra formal(algebra::builtin("torus", {3}, Ring::prime(3)));
  std::size_t total = 0;
  for (auto x : algebra::cohomology_dims(formal)) total += x;
  CHECK(total == formal.dim());
  CHECK(algebra::cohomology_dims(algebra::builtin_dga("massey_even", Ring::rationals())) ==
        std::vector<std::size_t>{1, 0, 2, 0, 0, 2, 0, 1});
  std::size_t fil = 0;
  for (auto x : algebra::cohomology_dims(algebra::builtin_dga("filiform", Ring::rationals()))) fil += x;
  CHECK(fil == 8);
}
