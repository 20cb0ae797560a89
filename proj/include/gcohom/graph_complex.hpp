#pragma once

// The graph cohomology complex C_A(G) = sum over edge subsets s of
// e_s . A^{(x) l(s)}, with the edge differential delta and, for DG algebras,
// the internal differential d.

#include "gcohom/algebra.hpp"
#include "gcohom/complex.hpp"
#include "gcohom/graph.hpp"
#include "gcohom/polynomial.hpp"

#include <string>
#include <vector>

namespace gcohom {

struct Generator {
  EdgeMask s = 0;
  std::vector<std::size_t> tuple;  ///< algebra basis index per component of [G:s]
  int q = 0;                       ///< sum of degrees
  int p = 0;                       ///< |s|
};

class GraphComplex {
 public:
  GraphComplex(DGAlgebra alg, Graph g);

  const DGAlgebra& algebra() const { return alg_; }
  const Ring& ring() const { return alg_.ring(); }
  const Graph& graph() const { return graph_; }
  std::size_t size() const { return gens_.size(); }
  const std::vector<Generator>& generators() const { return gens_; }
  const Generator& generator(std::size_t i) const { return gens_[i]; }
  /// Global index of (s, tuple).
  std::size_t index_of(EdgeMask s, const std::vector<std::size_t>& tuple) const;
  /// First index of the block of subset s; the block has dim^l(s) entries.
  std::size_t offset(EdgeMask s) const;
  const ComponentLabeling& components(EdgeMask s) const;
  /// Subsets in generator order.
  const std::vector<EdgeMask>& subsets() const { return subsets_; }

  const SparseMatrix& delta() const { return delta_; }
  /// (-1)^p times the Koszul-extended differential of the algebra.
  const SparseMatrix& d() const { return d_; }
  Bicomplex bicomplex() const;
  std::string describe(std::size_t i) const;

 private:
  void enumerate();
  void build_delta();
  void build_d();

  DGAlgebra alg_;
  Graph graph_;
  std::vector<EdgeMask> subsets_;
  std::map<EdgeMask, std::size_t> offset_;
  std::map<EdgeMask, ComponentLabeling> comps_;
  std::vector<Generator> gens_;
  SparseMatrix delta_;
  SparseMatrix d_;
};

/// Ranks of H^{q,p} with respect to delta, keyed by (q, p).
struct BettiTable {
  CohomologyTable table;
  std::size_t rank(int q, int p) const { return table.at({q, p}); }
  Poly2 poincare() const;
};

namespace graphcohom {

/// Koszul sign (+1 / -1) of reordering items with the given degrees so that
/// item perm[k] lands at position k.
int koszul_sign(const std::vector<int>& degrees, const std::vector<std::size_t>& perm);
/// (-1)^{number of members of s before alpha}
int edge_sign(EdgeMask s, std::size_t alpha);

BettiTable cohomology(const GraphComplex& c);
/// Cohomology of D = d + delta by total degree q + p; fields only.
std::map<int, std::size_t> total_cohomology(const GraphComplex& c);

struct Poincare {
  Poly2 complex;     ///< sum over generators t^q u^p
  Poly2 cohomology;  ///< sum of rank H^{q,p} t^q u^p
};
Poincare poincare(const GraphComplex& c, const BettiTable& b);
/// sum_s (-1)^{|s|} P_A(t)^{l(s)}
Poly2 subset_expansion(const GradedAlgebra& a, const Graph& g);

/// Deletion-contraction: the sequence 0 -> C(G/alpha) -> C(G) -> C(G - alpha) -> 0.
CheckResult deletion_contraction(const DGAlgebra& a, const Graph& g, std::size_t alpha);

/// Identification of the e_s-multiples in C_A(G) with C_A(G/s).
struct ContractionIso {
  std::vector<std::size_t> source;  ///< generators of C_A(G) with s contained in their subset
  SparseMatrix map;                 ///< C_A(G/s).size x source.size, signed bijection
  GraphComplex target;
};
ContractionIso contraction_iso(const GraphComplex& c, EdgeMask s);
CheckResult verify_contraction_iso(const GraphComplex& c, EdgeMask s);

/// Compares C_A(G) with the quotient of Lambda (x) A^{(x)n} by the edge
/// relations: dimensions and delta-cohomology per bidegree. Fields only.
CheckResult quotient_cross_check(const GraphComplex& c);

std::string text_report(const GraphComplex& c, const BettiTable& b);
std::string json_report(const GraphComplex& c, const BettiTable& b);

}  // namespace graphcohom
}  // namespace gcohom
