#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gcohom/perturb.hpp"

using namespace gcohom;
namespace pt = gcohom::perturb;

namespace {

const Ring Q = Ring::rationals();

FiniteComplex complex_of(const DGAlgebra& a) {
  std::vector<int> deg;
  for (std::size_t i = 0; i < a.dim(); ++i) deg.push_back(a.degree(i));
  return FiniteComplex(a.ring(), deg, a.differential_matrix());
}

std::size_t index(const GradedAlgebra& a, const char* name) {
  auto i = a.index_of(name);
  REQUIRE(i.has_value());
  return *i;
}

}  // namespace

TEST_CASE("reductions onto cohomology") {
  // 0 -> Q -id-> Q -> 0
  FiniteComplex k(Q, {0, 1}, SparseMatrix::from_dense(Q, std::vector<std::vector<long>>{{0, 0}, {1, 0}}));
  Reduction r = pt::reduce_to_cohomology(k);
  CHECK(r.small.size() == 0);
  CHECK(r.h.at(0, 1) == 1);
  CHECK(pt::check_reduction(r).ok);

  FiniteComplex flat(Q, {0, 1, 1, 2}, SparseMatrix(Q, 4, 4));
  Reduction id = pt::reduce_to_cohomology(flat);
  CHECK(id.f == SparseMatrix::identity(Q, 4));
  CHECK(id.g == SparseMatrix::identity(Q, 4));
  CHECK(id.h.is_zero());

  for (const char* name : {"massey_example", "massey_even", "filiform"})
    for (Ring ring : {Q, Ring::prime(2), Ring::prime(3)})
      for (bool reversed : {false, true}) {
        DGAlgebra a = algebra::builtin_dga(name, ring);
        Reduction red = pt::reduce_algebra(a, reversed);
        INFO(name << " " << ring.name() << " " << reversed);
        CHECK(pt::check_reduction(red).ok);
        CHECK(red.small.size() == complexes::cohomology(complex_of(a)).total());
        CHECK(red.g.columns()[0] == SparseVec{{0, ring.one()}});
      }

  DGAlgebra m = algebra::builtin_dga("massey_example", Q);
  CHECK(pt::reduce_algebra(m).small.degrees() == std::vector<int>{0, 1, 1, 2, 2, 3});
  CHECK(pt::reduce_algebra(algebra::builtin_dga("filiform", Q)).small.size() == 8);
  CHECK_THROWS_AS(pt::reduce_to_cohomology(FiniteComplex(Ring::integers(), {0}, SparseMatrix(Ring::integers(), 1, 1))),
                  InputError);
}

TEST_CASE("side conditions") {
  DGAlgebra a = algebra::builtin_dga("massey_example", Q);
  Reduction r = pt::reduce_algebra(a);
  Reduction same = pt::enforce_side_conditions(r);
  CHECK(same.h == r.h);

  // pollute h by g k f for an arbitrary degree -1 map k on L, and by a map
  // of the form d k + k d, which keeps the homotopy identity
  const std::size_t n = r.small.size();
  std::vector<std::tuple<std::size_t, std::size_t, Scalar>> t;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (r.small.degree(i) + 1 == r.small.degree(j)) t.emplace_back(i, j, Scalar(i + 2 * j + 1));
  SparseMatrix k = SparseMatrix::from_triplets(Q, n, n, std::move(t));
  Reduction polluted = r;
  polluted.h = r.h + r.g * k * r.f;
  CHECK(pt::check_reduction(polluted, false).ok);
  CHECK_FALSE(pt::check_reduction(polluted).ok);
  Reduction clean = pt::enforce_side_conditions(polluted);
  CHECK(pt::check_reduction(clean).ok);

  FiniteComplex flat(Q, {0, 1}, SparseMatrix(Q, 2, 2));
  Reduction z = pt::reduce_to_cohomology(flat);
  CHECK(pt::enforce_side_conditions(z).h.is_zero());

  Reduction broken = r;
  broken.f = r.f.scaled(Scalar(2));
  CHECK_THROWS_AS(pt::enforce_side_conditions(broken), InputError);
}

TEST_CASE("perturbation lemma") {
  DGAlgebra a = algebra::builtin_dga("massey_example", Q);
  Graph g = graph::builtin("path:3");
  Reduction r = pt::reduce_algebra(a);
  pt::ColumnReduction cr = pt::column_reduction(a, g, r);
  CHECK(pt::check_reduction(cr.reduction).ok);
  std::vector<int> level;
  for (const auto& gen : cr.big.generators()) level.push_back(gen.p);

  auto zero = pt::bpl(cr.reduction, SparseMatrix(Q, cr.big.size(), cr.big.size()), level);
  CHECK(zero.check.ok);
  CHECK(zero.terms == 0);
  CHECK(zero.f == cr.reduction.f);
  CHECK(zero.h == cr.reduction.h);

  auto p = pt::bpl(cr.reduction, cr.big.delta(), level);
  CHECK_MESSAGE(p.check.ok, p.check.detail);
  CHECK(p.terms <= p.bound);
  SparseMatrix sum(Q, cr.small.size(), cr.small.size());
  for (const auto& d : pt::d_operators(cr)) sum = sum + d;
  CHECK(p.delta_small == sum);

  std::vector<int> flat(level.size(), 0);
  CHECK_THROWS_AS(pt::bpl(cr.reduction, cr.big.delta(), flat), InputError);
  CHECK_THROWS_AS(pt::bpl(cr.reduction, cr.big.delta().scaled(Scalar(2)) + cr.big.d(), level), InputError);
}

TEST_CASE("d_i operators") {
  DGAlgebra formal(algebra::builtin("sphere", {2}, Q));
  Graph k3 = graph::builtin("complete:3");
  Reduction r = pt::reduce_algebra(formal);
  auto cr = pt::column_reduction(formal, k3, r);
  auto dops = pt::d_operators(cr);
  REQUIRE(dops.size() == 1);
  CHECK(dops[0] == cr.small.delta());

  DGAlgebra m = algebra::builtin_dga("massey_example", Q);
  auto path = pt::column_reduction(m, graph::builtin("path:3"), pt::reduce_algebra(m));
  auto dp = pt::d_operators(path);
  CHECK(dp.size() == 2);
}

TEST_CASE("A-infinity structure") {
  DGAlgebra a = algebra::builtin_dga("massey_example", Q);
  Reduction r = pt::reduce_algebra(a);
  AInfinity m = pt::merkulov(a, r, 5);
  CHECK(pt::m2_check(m, a, r).ok);
  auto st = pt::stasheff_check(m, 5);
  CHECK_MESSAGE(st.ok, st.detail);
  CHECK_FALSE(pt::higher_products_vanish(m));

  const GradedAlgebra& h = m.algebra;
  const std::size_t ia = index(h, "[a]"), ib = index(h, "[b]"), iax = index(h, "[ax]");
  // dx = ab: a . x is a defining system for <a, a, b>
  CHECK(m.value({ia, ia, ib}) == SparseVec{{iax, Scalar(1)}});

  auto sh = pt::shuffle_check(a, r, 4);
  CHECK_MESSAGE(sh.ok, sh.detail);

  for (const char* name : {"massey_even", "filiform"}) {
    DGAlgebra b = algebra::builtin_dga(name, Q);
    for (bool reversed : {false, true}) {
      Reduction rb = pt::reduce_algebra(b, reversed);
      AInfinity mb = pt::merkulov(b, rb, 5);
      INFO(name << " " << reversed);
      CHECK(pt::m2_check(mb, b, rb).ok);
      auto s = pt::stasheff_check(mb, 5);
      CHECK_MESSAGE(s.ok, s.detail);
      auto sb = pt::shuffle_check(b, rb, 4);
      CHECK_MESSAGE(sb.ok, sb.detail);
    }
  }

  DGAlgebra even = algebra::builtin_dga("massey_even", Q);
  AInfinity me = pt::merkulov(even, pt::reduce_algebra(even), 3);
  const GradedAlgebra& he = me.algebra;
  CHECK(me.value({index(he, "[a]"), index(he, "[a]"), index(he, "[b]")}) ==
        SparseVec{{index(he, "[ax]"), Scalar(-1)}});

  DGAlgebra formal(algebra::builtin("torus", {2}, Q));
  AInfinity mf = pt::merkulov(formal, pt::reduce_algebra(formal), 5);
  CHECK(pt::higher_products_vanish(mf));
  CHECK(pt::stasheff_check(mf, 5).ok);
  CHECK_THROWS_AS(pt::merkulov(formal, pt::reduce_algebra(formal), 1), InputError);
}

TEST_CASE("spectral sequences") {
  DGAlgebra a = algebra::builtin_dga("massey_example", Q);
  Reduction r = pt::reduce_algebra(a);
  for (const char* gs : {"path:3", "complete:3", "star:4", "empty:2", "complete:2"}) {
    Graph g = graph::builtin(gs);
    auto cr = pt::column_reduction(a, g, r);
    auto dops = pt::d_operators(cr);
    std::vector<int> p, q;
    for (const auto& gen : cr.small.generators()) {
      p.push_back(gen.p);
      q.push_back(gen.q);
    }
    Bicomplex b = cr.big.bicomplex();
    SpectralSequence direct = pt::spectral_sequence(b);
    SpectralSequence via = pt::ss_via_perturbation(Q, p, q, dops);
    INFO(gs);
    auto cmp = pt::compare_spectral_sequences(direct, via);
    CHECK_MESSAGE(cmp.ok, cmp.detail);
    CHECK(pt::infinity_check(direct, b).ok);
    CHECK(pt::infinity_check(via, b).ok);
    auto deg = pt::degeneration_check(direct, g, false);
    CHECK_MESSAGE(deg.ok, deg.json());
  }

  // zero differential: E_2 = E_infinity
  DGAlgebra formal(algebra::builtin("sphere", {2}, Q));
  Graph k3 = graph::builtin("complete:3");
  auto cr = pt::column_reduction(formal, k3, pt::reduce_algebra(formal));
  SpectralSequence ss = pt::spectral_sequence(cr.big.bicomplex());
  CHECK(ss.page(2).dim == ss.infinity().dim);
  CHECK(pt::degeneration_check(ss, k3, true).ok);
}

TEST_CASE("locality") {
  DGAlgebra a = algebra::builtin_dga("massey_example", Q);
  Reduction r = pt::reduce_algebra(a);
  for (const char* gs : {"complete:2", "path:3", "complete:3", "star:4", "path:4"}) {
    auto rep = pt::locality_check(a, graph::builtin(gs), r);
    INFO(gs);
    CHECK_MESSAGE(rep.ok, rep.json());
  }
  for (const char* gs : {"cycle:2", "cycle:1"}) {
    auto rep = pt::locality_check(a, graph::builtin(gs), r);
    CHECK_MESSAGE(rep.ok, rep.json());
  }
}

TEST_CASE("tree formula") {
  DGAlgebra a = algebra::builtin_dga("massey_example", Q);
  Reduction r = pt::reduce_algebra(a);
  for (const char* gs : {"path:2", "path:3", "star:3", "path:4", "star:4"}) {
    auto rep = pt::tree_formula_check(a, graph::builtin(gs), r);
    INFO(gs);
    CHECK_MESSAGE(rep.ok, rep.json());
  }
  CHECK_THROWS_AS(pt::tree_formula_check(a, graph::builtin("cycle:3"), r), InputError);
}
