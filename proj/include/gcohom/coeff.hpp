#pragma once

// Exact scalars over Q, F_p and Z, sparse vectors and matrices, and the
// elimination routines everything else is built on.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace gcohom {

/// Malformed input: bad config, bad parameters, dimension mismatch.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation would exceed a configured size cap.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Scalar = mpq_class;
using Integer = mpz_class;

enum class RingKind { Rational, Prime, Integer };

/// Coefficient ring. Values of every ring are carried as `mpq_class`; the
/// ring is responsible for keeping them canonical (residues in [0, p),
/// integers with denominator 1).
class Ring {
 public:
  static Ring rationals() { return Ring(RingKind::Rational, 0); }
  static Ring integers() { return Ring(RingKind::Integer, 0); }
  static Ring prime(std::uint32_t p);

  /// Accepts "Q", "Z", "Fp:<p>" and the shorthand "F<p>".
  static Ring parse(std::string_view text);

  RingKind kind() const { return kind_; }
  std::uint32_t characteristic() const { return p_; }
  bool is_field() const { return kind_ != RingKind::Integer; }
  std::string name() const;

  Scalar zero() const { return Scalar(0); }
  Scalar one() const { return Scalar(1); }
  Scalar from_int(long v) const;
  /// Parses "3", "-1/2", ... and maps it into the ring.
  Scalar parse_scalar(std::string_view text) const;
  Scalar canonical(const Scalar& v) const;

  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  Scalar neg(const Scalar& a) const;
  Scalar inv(const Scalar& a) const;
  /// a += b * c
  void fma(Scalar& a, const Scalar& b, const Scalar& c) const;

  bool operator==(const Ring& o) const { return kind_ == o.kind_ && p_ == o.p_; }
  bool operator!=(const Ring& o) const { return !(*this == o); }

 private:
  Ring(RingKind k, std::uint32_t p) : kind_(k), p_(p) {}
  void reduce(Scalar& v) const;

  RingKind kind_;
  std::uint32_t p_;
};

/// Sorted (index, nonzero value) pairs.
using SparseVec = std::vector<std::pair<std::size_t, Scalar>>;
using DenseVec = std::vector<Scalar>;

SparseVec to_sparse(const DenseVec& v);
DenseVec to_dense(const SparseVec& v, std::size_t n);
/// Combines duplicate indices, drops zeros, sorts.
SparseVec normalize(const Ring& ring, std::vector<std::pair<std::size_t, Scalar>> terms);
/// a + c*b
SparseVec axpy(const Ring& ring, const SparseVec& a, const Scalar& c, const SparseVec& b);
SparseVec scale(const Ring& ring, const SparseVec& v, const Scalar& c);

class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(Ring ring, std::size_t rows, std::size_t cols);

  static SparseMatrix identity(Ring ring, std::size_t n);
  static SparseMatrix from_dense(Ring ring, const std::vector<std::vector<long>>& rows);
  static SparseMatrix from_dense(Ring ring, const std::vector<std::vector<Scalar>>& rows);
  /// Builds from (row, col, value) triplets; duplicates are summed.
  static SparseMatrix from_triplets(Ring ring, std::size_t rows, std::size_t cols,
                                    std::vector<std::tuple<std::size_t, std::size_t, Scalar>> t);
  /// Matrix whose j-th column is `columns[j]`.
  static SparseMatrix from_columns(Ring ring, std::size_t rows, const std::vector<SparseVec>& columns);

  const Ring& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nonzeros() const;
  bool is_zero() const { return nonzeros() == 0; }

  const SparseVec& row(std::size_t i) const { return data_[i]; }
  void set_row(std::size_t i, SparseVec v);
  Scalar at(std::size_t i, std::size_t j) const;
  /// Adds `v` to entry (i, j).
  void add_to(std::size_t i, std::size_t j, const Scalar& v);

  SparseMatrix transpose() const;
  std::vector<SparseVec> columns() const;
  SparseMatrix operator*(const SparseMatrix& rhs) const;
  SparseMatrix operator+(const SparseMatrix& rhs) const;
  SparseMatrix operator-(const SparseMatrix& rhs) const;
  SparseMatrix scaled(const Scalar& c) const;
  SparseVec apply(const SparseVec& v) const;
  DenseVec apply(const DenseVec& v) const;
  /// Rows `rs` and columns `cs` (in the given order).
  SparseMatrix submatrix(std::span<const std::size_t> rs, std::span<const std::size_t> cs) const;
  std::vector<std::vector<Scalar>> to_dense() const;

  bool operator==(const SparseMatrix& o) const;

 private:
  Ring ring_ = Ring::rationals();
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<SparseVec> data_;
};

/// Incrementally built row-echelon basis of a subspace of R^n over a field.
/// Rows are keyed by their leading (leftmost) column and scaled to lead 1.
class RowEchelon {
 public:
  RowEchelon(Ring ring, std::size_t dim);

  /// Returns true iff `v` was independent of the current rows.
  bool insert(SparseVec v);
  /// Fully reduces `v` against every stored pivot.
  SparseVec reduce(SparseVec v) const;
  bool contains(const SparseVec& v) const { return reduce(v).empty(); }
  std::size_t rank() const { return rows_.size(); }
  std::size_t dim() const { return dim_; }
  /// Back-substitutes so every pivot column is zero in all other rows.
  void make_reduced();
  const std::map<std::size_t, SparseVec>& rows() const { return rows_; }
  std::vector<SparseVec> basis() const;

 private:
  Ring ring_;
  std::size_t dim_;
  std::map<std::size_t, SparseVec> rows_;
};

/// Coordinates of vectors in the span of fixed generators v_0, v_1, ...
/// Dependent generators are skipped and always get coordinate zero.
class SpanCoordinates {
 public:
  SpanCoordinates(Ring ring, std::size_t dim, const std::vector<SparseVec>& generators);

  std::size_t rank() const { return rows_.size(); }
  /// c with sum_i c_i v_i = x, or nullopt when x is outside the span.
  std::optional<SparseVec> coordinates(SparseVec x) const;

 private:
  Ring ring_;
  std::size_t dim_;
  std::map<std::size_t, std::pair<SparseVec, SparseVec>> rows_;  ///< pivot -> (row, combination)
};

namespace coeff {

std::size_t rank(const SparseMatrix& m);
std::vector<SparseVec> kernel_basis(const SparseMatrix& m);
std::vector<DenseVec> kernel_basis_dense(const SparseMatrix& m);
/// Some x with m x = b (leftmost pivots, free variables zero), or nullopt.
std::optional<DenseVec> solve(const SparseMatrix& m, const DenseVec& b);
std::optional<SparseVec> solve(const SparseMatrix& m, const SparseVec& b);

struct SmithForm {
  std::vector<Integer> diagonal;  ///< nonzero invariant factors d_1 | d_2 | ...
  std::vector<std::vector<Integer>> left;
  std::vector<std::vector<Integer>> right;
};

/// left * m * right = diag(diagonal, 0, ...), left and right unimodular.
SmithForm smith_normal_form(const SparseMatrix& m);
/// Same diagonal as smith_normal_form without tracking the transforms.
std::vector<Integer> invariant_factors(const SparseMatrix& m);

/// Integer determinant of a square dense matrix (Bareiss).
Integer determinant(std::vector<std::vector<Integer>> m);

/// Same entries read in another ring (e.g. an integer matrix over Q).
SparseMatrix change_ring(const SparseMatrix& m, Ring ring);

/// Dimension of span(vs).
std::size_t span_dim(const Ring& ring, std::size_t n, const std::vector<SparseVec>& vs);

}  // namespace coeff
}  // namespace gcohom
