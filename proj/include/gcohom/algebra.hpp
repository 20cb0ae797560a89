#pragma once

// Finite-dimensional graded-commutative algebras given by full
// multiplication tables, with an optional differential.

#include "gcohom/coeff.hpp"
#include "gcohom/polynomial.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gcohom {

struct BasisElement {
  std::string name;
  int degree = 0;
};

/// Basis b_0 = 1, b_1, ... sorted by degree, with b_i b_j = sum_k c^k_ij b_k.
class GradedAlgebra {
 public:
  GradedAlgebra() = default;
  /// `products[i][j]` is b_i * b_j in the basis. Does not validate.
  GradedAlgebra(Ring ring, std::vector<BasisElement> basis,
                std::vector<std::vector<SparseVec>> products);

  const Ring& ring() const { return ring_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<BasisElement>& basis() const { return basis_; }
  int degree(std::size_t i) const { return basis_[i].degree; }
  const std::string& name(std::size_t i) const { return basis_[i].name; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  int top_degree() const;

  const SparseVec& product(std::size_t i, std::size_t j) const { return products_[i][j]; }
  SparseVec multiply(const SparseVec& a, const SparseVec& b) const;
  /// Basis indices of degree `deg`.
  std::vector<std::size_t> indices_of_degree(int deg) const;

  /// sum_q dim(A^q) t^q
  Poly2 poincare() const;

  bool operator==(const GradedAlgebra& o) const;

 private:
  Ring ring_ = Ring::rationals();
  std::vector<BasisElement> basis_;
  std::vector<std::vector<SparseVec>> products_;
};

/// Graded algebra with a degree +1 differential; `diff[i]` is d(b_i).
class DGAlgebra {
 public:
  DGAlgebra() = default;
  explicit DGAlgebra(GradedAlgebra alg);  // zero differential
  DGAlgebra(GradedAlgebra alg, std::vector<SparseVec> diff);

  const GradedAlgebra& algebra() const { return alg_; }
  const Ring& ring() const { return alg_.ring(); }
  std::size_t dim() const { return alg_.dim(); }
  int degree(std::size_t i) const { return alg_.degree(i); }
  const SparseVec& diff(std::size_t i) const { return diff_[i]; }
  const std::vector<SparseVec>& diffs() const { return diff_; }
  bool has_zero_differential() const;
  /// dim x dim matrix of d (column j = d(b_j)).
  SparseMatrix differential_matrix() const;

 private:
  GradedAlgebra alg_;
  std::vector<SparseVec> diff_;
};

struct Violation {
  std::string identity;  ///< e.g. "degree additivity"
  std::string where;     ///< e.g. "(x,x)"
  std::string message() const { return identity + " at " + where; }
};

namespace algebra {

std::optional<Violation> validate(const GradedAlgebra& a);
std::optional<Violation> validate(const DGAlgebra& a);
/// Throws InputError carrying the violation message.
void require_valid(const GradedAlgebra& a);
void require_valid(const DGAlgebra& a);

/// Standard presentations: sphere(m), torus(n), truncated_poly(deg, power),
/// exterior(deg...), surface(genus).
GradedAlgebra builtin(std::string_view name, const std::vector<int>& params, Ring ring);
/// Parses "sphere:2", "exterior:1,1", "surface:2", ...
GradedAlgebra builtin_from_spec(std::string_view spec, Ring ring);

/// DG models with nonvanishing Massey products:
///  - "massey_example": Lambda(a,b,x), |a|=|b|=|x|=1, dx = ab
///  - "massey_even": k[a,b]/(a^2,b^2) (x) Lambda(x), |a| = |b| = 2, |x| = 3, dx = ab
///  - "filiform": Lambda(a,b,x,y), all of degree 1, dx = ab, dy = ax
DGAlgebra builtin_dga(std::string_view name, Ring ring);
std::vector<std::string> builtin_dga_names();

/// Exterior algebra on generators with the given names and degrees.
GradedAlgebra exterior(const std::vector<std::string>& names, const std::vector<int>& degrees, Ring ring);

/// Koszul-signed tensor product (a (x) b)(a' (x) b') = (-1)^{|b||a'|} aa' (x) bb'.
GradedAlgebra tensor(const GradedAlgebra& a, const GradedAlgebra& b);
/// Index of basis pair (i, j) in tensor(a, b).
std::size_t tensor_index(const GradedAlgebra& a, const GradedAlgebra& b, std::size_t i, std::size_t j);

/// Parses the JSON algebra file format. A missing "differential" yields the
/// zero differential.
DGAlgebra from_config(std::string_view text);
DGAlgebra load_file(const std::string& path);

/// Graded dimensions of H(A, d); requires a field.
std::vector<std::size_t> cohomology_dims(const DGAlgebra& a);

}  // namespace algebra
}  // namespace gcohom
