#pragma once

// Homological perturbation: reductions (f, g, h) onto cohomology, the basic
// perturbation lemma, the d_i operators of a graph complex, A-infinity
// products via Merkulov's recursion, and both routes to the spectral
// sequence of a bicomplex. The three statements linking them (locality,
// the tree formula and degeneration) are implemented as checks.

#include "gcohom/algebra.hpp"
#include "gcohom/complex.hpp"
#include "gcohom/graph_complex.hpp"

#include <map>
#include <string>
#include <vector>

namespace gcohom {

/// f : K -> L, g : L -> K, h : K -> K of degree -1.
struct Reduction {
  FiniteComplex big;
  FiniteComplex small;
  SparseMatrix f;
  SparseMatrix g;
  SparseMatrix h;
};

/// Result of the basic perturbation lemma.
struct PerturbedReduction {
  SparseMatrix d_big;    ///< d_K + delta_K
  SparseMatrix d_small;  ///< d_L + delta_L
  SparseMatrix delta_small;
  SparseMatrix f, g, h;
  std::size_t terms = 0;  ///< nonzero terms of the X series
  std::size_t bound = 0;  ///< declared filtration length
  CheckResult check;
};

struct SsPage {
  int r = 1;
  std::map<GradeKey, std::size_t> dim;   ///< (p, q) -> dim E_r^{p,q}, nonzero only
  std::map<GradeKey, std::size_t> rank;  ///< (p, q) -> rank of the differential leaving (p, q)
};

struct SpectralSequence {
  std::vector<SsPage> pages;  ///< r = 1, 2, ..., last page is E_infinity
  const SsPage& page(int r) const { return pages[std::min<std::size_t>(r, pages.size()) - 1]; }
  const SsPage& infinity() const { return pages.back(); }
  /// sum of dim E_inf^{p,q} over p + q = n
  std::map<int, std::size_t> infinity_by_degree() const;
};

/// A-infinity products m_n on a finite basis, n = 2..max_arity.
struct AInfinity {
  GradedAlgebra algebra;  ///< cohomology with m_2 as product
  int max_arity = 2;
  std::vector<std::map<std::vector<std::size_t>, SparseVec>> m;  ///< m[n][tuple]; empty vectors omitted

  const SparseVec& value(const std::vector<std::size_t>& tuple) const;
  /// m_n on an arbitrary tensor of basis vectors, multilinearly.
  SparseVec apply(const std::vector<SparseVec>& args) const;
};

struct CheckReport {
  std::string check;
  bool ok = true;
  std::string detail;
  std::map<std::string, std::string> witness;

  std::string json() const;
};

namespace perturb {

/// The identities fg = 1, 1 - gf = dh + hd, the chain map conditions and
/// the side conditions hg = fh = hh = 0.
CheckResult check_reduction(const SparseMatrix& dk, const SparseMatrix& dl, const SparseMatrix& f,
                            const SparseMatrix& g, const SparseMatrix& h, bool side_conditions = true);
CheckResult check_reduction(const Reduction& r, bool side_conditions = true);

/// Splits K^n = C^n + B^n + L^n with B^n = d(C^{n-1}); h inverts d on C.
/// `reversed` picks pivots from the opposite end, giving a second splitting.
/// `preferred` cocycles are tried first as cohomology representatives.
Reduction reduce_to_cohomology(const FiniteComplex& k, bool reversed = false,
                               const std::vector<SparseVec>& preferred = {});

/// h' = (dh + hd) h (dh + hd), h'' = h' d h'. Throws InputError unless
/// fg = 1 and 1 - gf = dh + hd.
Reduction enforce_side_conditions(const Reduction& r);

/// Perturbation delta of d_K. Nilpotence of delta h is certified by
/// `filtration` (one level per basis element of K): delta must raise the
/// level and h must not lower it.
PerturbedReduction bpl(const Reduction& r, const SparseMatrix& delta, const std::vector<int>& filtration);

/// Reduction of a DG algebra onto its cohomology with 1 as the unit class.
Reduction reduce_algebra(const DGAlgebra& a, bool reversed = false);
/// H(A) with the product f(g(x) g(y)); basis named after leading terms.
GradedAlgebra cohomology_algebra(const DGAlgebra& a, const Reduction& r);

/// The reduction of C_A(G) onto C_{H(A)}(G) built column by column from a
/// reduction of A, with h = (-1)^p sum_i (gf)^{(i-1)} (x) h (x) 1.
struct ColumnReduction {
  GraphComplex big;
  GraphComplex small;
  Reduction reduction;
};
ColumnReduction column_reduction(const DGAlgebra& a, const Graph& g, const Reduction& r);

/// d_i = (-1)^{i-1} f (delta h)^{i-1} delta g for i = 1, 2, ... until zero.
std::vector<SparseMatrix> d_operators(const ColumnReduction& cr);

/// m_n = f lambda_n g^{(x) n} for n <= max_arity.
AInfinity merkulov(const DGAlgebra& a, const Reduction& r, int max_arity);
/// h lambda_n (g a_1, ..., g a_n) in A; n = 1 gives -g(a_1).
SparseVec h_lambda(const DGAlgebra& a, const Reduction& r, const std::vector<std::size_t>& tuple);
/// Stasheff identities of arity 3..max_arity with m_1 = 0.
CheckResult stasheff_check(const AInfinity& m, int max_arity);
/// m_1 = 0 and m_2 equals f(g(a) g(b)).
CheckResult m2_check(const AInfinity& m, const DGAlgebra& a, const Reduction& r);
/// h lambda applied to every shuffle product of two nonempty basis tensors
/// of total length <= max_length vanishes.
CheckResult shuffle_check(const DGAlgebra& a, const Reduction& r, int max_length);
bool higher_products_vanish(const AInfinity& m);

/// Spectral sequence of the filtration by p, computed on the total complex.
SpectralSequence spectral_sequence(const Bicomplex& b);
/// The same spectral sequence from the operators d_i on E_1 = L by solving
/// d_1 x = 0, d_2 x + d_1 x_2 = 0, ...; `p`, `q` give the bidegree of each
/// basis element of L.
SpectralSequence ss_via_perturbation(const Ring& ring, const std::vector<int>& p, const std::vector<int>& q,
                                     const std::vector<SparseMatrix>& dops);
CheckResult compare_spectral_sequences(const SpectralSequence& a, const SpectralSequence& b);
/// Sum of E_inf per total degree against the total cohomology.
CheckResult infinity_check(const SpectralSequence& ss, const Bicomplex& b);

/// d_i vanishes unless t \ s has i edges forming a tree in G/s, and then
/// factors through the contraction G/s and the tree. The one exception is
/// the part of d_1 = delta adding an edge inside a component of [G:s].
CheckReport locality_check(const DGAlgebra& a, const Graph& g, const Reduction& r);
/// d_{n-1} on a tree with n vertices against the signed sum of m_n over
/// linear extensions.
CheckReport tree_formula_check(const DGAlgebra& a, const Graph& tree, const Reduction& r);
/// Differentials vanish from page max_subtree_edges + 1 on, and from page 2
/// when all higher products vanish.
CheckReport degeneration_check(const SpectralSequence& ss, const Graph& g, bool formal);

/// The global sign relating d_{n-1} to the signed sum of m_n in the tree
/// formula under this library's conventions.
int tree_formula_sign(int n);

}  // namespace perturb
}  // namespace gcohom
