#pragma once

// Finite simplicial sets, their cartesian powers and diagonals, normalized
// cochains, relative cohomology, the bicomplex of diagonal covers and the
// cup product ring. This is the topological side of the comparison with the
// graph complex: for A = H^*(X) the E_1 page of the cover bicomplex of
// (X^n, Z_G) is C_A(G).

#include "gcohom/algebra.hpp"
#include "gcohom/complex.hpp"
#include "gcohom/graph.hpp"
#include "gcohom/polynomial.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace gcohom {

/// A possibly degenerate simplex s_J(y): the nondegenerate simplex `id` of
/// dimension sigma.back() pulled back along the monotone surjection
/// sigma : [m] -> [sigma.back()], m = sigma.size() - 1.
struct SimplexRef {
  std::size_t id = 0;
  std::vector<int> sigma{0};

  int dim() const { return static_cast<int>(sigma.size()) - 1; }
  int base_dim() const { return sigma.back(); }
  bool nondegenerate() const { return dim() == base_dim(); }
  bool operator==(const SimplexRef&) const = default;
  auto operator<=>(const SimplexRef&) const = default;
};

SimplexRef nondegenerate(std::size_t id, int dim);

class SimplicialSet {
 public:
  SimplicialSet() = default;
  /// counts[k] nondegenerate k-simplices; faces[k][x][i] = d_i of simplex x
  /// of dimension k (faces[0] is empty). Simplicial identities are checked.
  SimplicialSet(std::vector<std::size_t> counts, std::vector<std::vector<std::vector<SimplexRef>>> faces);

  int dimension() const { return static_cast<int>(counts_.size()) - 1; }
  std::size_t count(int k) const { return k < 0 || k > dimension() ? 0 : counts_[k]; }
  std::size_t size() const { return offsets_.empty() ? 0 : offsets_.back(); }
  std::size_t global(int k, std::size_t x) const { return offsets_[k] + x; }
  int dim_of(std::size_t global) const;

  const SimplexRef& face(int k, std::size_t x, int i) const { return faces_[k][x][i]; }
  /// d_i of an arbitrary (possibly degenerate) simplex.
  SimplexRef face(const SimplexRef& s, int i) const;

  /// Coordinates of a simplex of a cartesian power; empty for other sets.
  int factors() const { return factors_; }
  const std::vector<SimplexRef>& coordinates(int k, std::size_t x) const { return coords_[k][x]; }

  /// Records the coordinates of the simplices of a cartesian power.
  void set_coordinates(int factors, std::vector<std::vector<std::vector<SimplexRef>>> coords);

  /// Normalized coboundary on all nondegenerate simplices (global indices).
  SparseMatrix coboundary(Ring ring) const;

 private:
  void check_identities() const;

  std::vector<std::size_t> counts_;
  std::vector<std::size_t> offsets_;
  std::vector<std::vector<std::vector<SimplexRef>>> faces_;
  int factors_ = 0;
  std::vector<std::vector<std::vector<SimplexRef>>> coords_;
};

/// Membership flag per nondegenerate simplex (global index) of a parent set.
struct SimplicialSubset {
  std::vector<char> member;

  std::size_t size() const;
  bool contains(std::size_t global) const { return member[global] != 0; }
};

struct RelativeCohomology {
  CohomologyTable table;  ///< weight 0, keyed by degree
  CheckResult les;        ///< exactness of the long exact sequence of (X, Z)
};

/// Cover bicomplex of (X^n, Z_G): column p is the sum over |s| = p of the
/// cochains of Z_s, the intersection of the diagonals of the edges in s.
struct CoverBicomplex {
  SimplicialSet power;
  Bicomplex bicomplex;
  std::vector<EdgeMask> subset;      ///< per basis element
  std::vector<std::size_t> simplex;  ///< global simplex index per basis element
};

struct Theorem1Report {
  CheckResult e1;                  ///< E_1 dimensions and d_1 ranks against C_A(G)
  CheckResult total;               ///< bicomplex total cohomology against relative cohomology
  CheckResult les;                 ///< long exact sequence of (X^n, Z_G)
  std::map<int, std::size_t> relative;
  std::map<int, std::size_t> graph_total;  ///< delta-cohomology of C_A(G) by q + p
  bool poincare_equal = false;     ///< relative vs graph_total
  bool euler_equal = false;
  GradedAlgebra cup;

  bool ok() const { return e1.ok && total.ok && les.ok && euler_equal; }
};

namespace simplicial {

constexpr std::size_t kDefaultCap = 200'000;

/// Simplicial set of an ordered simplicial complex given by its facets.
SimplicialSet from_complex(const std::vector<std::vector<long>>& facets);
/// "circle", "sphere2", "interval", "point", "torus".
SimplicialSet builtin(std::string_view name);
std::vector<std::string> builtin_names();
/// Parses {"facets": [[v, ...], ...]}.
SimplicialSet from_json(std::string_view text);
/// "builtin:<name>", a bare builtin name, or a JSON file path.
SimplicialSet load(const std::string& spec);

/// Cartesian power X^n with coordinates; throws ResourceLimitError above cap.
SimplicialSet power(const SimplicialSet& x, int n, std::size_t cap = kDefaultCap);

/// Simplices of X^n whose i-th and j-th coordinates agree (0-based, i != j).
SimplicialSubset diagonal(const SimplicialSet& xn, int i, int j);
/// Z_s: intersection of the diagonals of the edges in s (Z_0 = X^n).
SimplicialSubset diagonal_intersection(const SimplicialSet& xn, const Graph& g, EdgeMask s);
/// Z_G: union of the diagonals of all edges.
SimplicialSubset diagonal_union(const SimplicialSet& xn, const Graph& g);
SimplicialSubset everything(const SimplicialSet& x);
SimplicialSubset nothing(const SimplicialSet& x);
bool closed_under_faces(const SimplicialSet& x, const SimplicialSubset& z);

/// Normalized cochains of the subset (or of X when z is omitted).
FiniteComplex cochains(const SimplicialSet& x, Ring ring);
FiniteComplex cochains(const SimplicialSet& x, const SimplicialSubset& z, Ring ring);
/// Cochains vanishing on z.
FiniteComplex relative_cochains(const SimplicialSet& x, const SimplicialSubset& z, Ring ring);

std::map<int, std::size_t> betti(const SimplicialSet& x, Ring ring);
RelativeCohomology relative_cohomology(const SimplicialSet& x, const SimplicialSubset& z, Ring ring);

/// Requires a loopless graph without multi-edges.
CoverBicomplex cover_bicomplex(const SimplicialSet& x, const Graph& g, Ring ring, std::size_t cap = kDefaultCap);

/// H^*(X) with the Alexander-Whitney cup product; field coefficients.
GradedAlgebra cup_ring(const SimplicialSet& x, Ring ring);

/// Ranks of H(X^n) against the n-fold convolution of the ranks of H(X).
CheckResult kunneth_check(const SimplicialSet& x, int n, Ring ring);

/// Full comparison of the cover bicomplex with C_{H(X)}(G).
Theorem1Report compare_with_graph_complex(const SimplicialSet& x, const Graph& g, Ring ring,
                                          std::size_t cap = kDefaultCap);

}  // namespace simplicial
}  // namespace gcohom
