#pragma once

// Finite cochain complexes on a single global basis, bicomplexes, and the
// rank bookkeeping shared by every cohomology computation.

#include "gcohom/coeff.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace gcohom {

/// Grading key: (weight, degree). The differential raises degree by one and
/// preserves weight; plain complexes use weight 0.
using GradeKey = std::pair<int, int>;

class FiniteComplex {
 public:
  FiniteComplex() = default;
  /// `d` is size x size with column j = d(e_j).
  FiniteComplex(Ring ring, std::vector<int> degree, SparseMatrix d, std::vector<int> weight = {});

  const Ring& ring() const { return ring_; }
  std::size_t size() const { return degree_.size(); }
  int degree(std::size_t i) const { return degree_[i]; }
  int weight(std::size_t i) const { return weight_[i]; }
  const std::vector<int>& degrees() const { return degree_; }
  const std::vector<int>& weights() const { return weight_; }
  const SparseMatrix& d() const { return d_; }

  /// Basis indices of the given grade, ascending.
  const std::vector<std::size_t>& indices(GradeKey k) const;
  std::vector<GradeKey> grades() const;
  /// d restricted to K^{w,n} -> K^{w,n+1}.
  SparseMatrix block(GradeKey k) const;
  bool square_zero() const { return (d_ * d_).is_zero(); }
  /// Homogeneity of d with respect to (weight, degree).
  bool is_graded() const;

 private:
  Ring ring_ = Ring::rationals();
  std::vector<int> degree_;
  std::vector<int> weight_;
  SparseMatrix d_;
  std::map<GradeKey, std::vector<std::size_t>> index_;
};

/// Cohomology ranks and (over Z) torsion, keyed by (weight, degree).
struct CohomologyTable {
  std::map<GradeKey, std::size_t> rank;
  std::map<GradeKey, std::vector<Integer>> torsion;

  std::size_t at(GradeKey k) const {
    auto it = rank.find(k);
    return it == rank.end() ? 0 : it->second;
  }
  /// Sum over weights.
  std::map<int, std::size_t> by_degree() const;
  std::size_t total() const;
};

struct CheckResult {
  bool ok = true;
  std::string detail;

  static CheckResult pass() { return {}; }
  static CheckResult fail(std::string why) { return {false, std::move(why)}; }
};

namespace complexes {

/// Ranks of d per grade; over Z these come from Smith normal form.
std::map<GradeKey, std::size_t> differential_ranks(const FiniteComplex& c);
CohomologyTable cohomology(const FiniteComplex& c);

/// Rank of the map induced on H^k by a chain map f (target.size x source.size)
/// that preserves (weight, degree) up to a fixed degree shift. Field only.
std::size_t induced_rank(const FiniteComplex& source, const FiniteComplex& target, const SparseMatrix& f,
                         GradeKey k, int shift = 0);
/// Same for a map from grade k of the source to grade `target_key` of the target.
std::size_t induced_rank(const FiniteComplex& source, const FiniteComplex& target, const SparseMatrix& f,
                         GradeKey k, GradeKey target_key);

/// Checks that f is a chain map: f d_src = sign * d_tgt f.
bool is_chain_map(const FiniteComplex& source, const FiniteComplex& target, const SparseMatrix& f, int sign = 1);

/// Verifies a short exact sequence 0 -> A -i-> B -p-> C -> 0 of complexes
/// (all maps preserve grades) at chain level, and exactness of the long
/// exact cohomology sequence by rank counting. `sigma` is a linear section
/// of p used to build the connecting map. Field only.
CheckResult verify_ses(const FiniteComplex& a, const FiniteComplex& b, const FiniteComplex& c, const SparseMatrix& i,
                       const SparseMatrix& p, const SparseMatrix& sigma);

/// Basis of the cocycles of grade k as columns in global coordinates.
std::vector<SparseVec> cocycles(const FiniteComplex& c, GradeKey k);
std::vector<SparseVec> coboundaries(const FiniteComplex& c, GradeKey k);

}  // namespace complexes

/// First-quadrant bicomplex on one basis: generator i sits at (p[i], q[i]);
/// the vertical differential raises q, the horizontal one raises p, and they
/// anticommute so that D = vertical + horizontal squares to zero.
struct Bicomplex {
  Ring ring = Ring::rationals();
  std::vector<int> p;
  std::vector<int> q;
  SparseMatrix vertical;
  SparseMatrix horizontal;

  std::size_t size() const { return p.size(); }
  int max_p() const;
  int max_q() const;
  /// Total complex, degree p + q, differential D.
  FiniteComplex total() const;
  /// (weight = q, degree = p) with the horizontal differential only.
  FiniteComplex horizontal_complex() const;
  /// (weight = p, degree = q) with the vertical differential only.
  FiniteComplex vertical_complex() const;
  CheckResult check_identities() const;
};

}  // namespace gcohom
