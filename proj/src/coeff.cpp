#include "gcohom/coeff.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace gcohom {

namespace {

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

Ring Ring::prime(std::uint32_t p) {
  if (!is_prime(p)) throw InputError("ring: " + std::to_string(p) + " is not prime");
  return Ring(RingKind::Prime, p);
}

Ring Ring::parse(std::string_view text) {
  if (text == "Q") return rationals();
  if (text == "Z") return integers();
  std::string_view digits;
  if (text.rfind("Fp:", 0) == 0)
    digits = text.substr(3);
  else if (text.size() > 1 && text[0] == 'F')
    digits = text.substr(1);
  else
    throw InputError("ring: cannot parse '" + std::string(text) + "' (expected Q, Z or Fp:<prime>)");
  std::uint32_t p = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
  if (ec != std::errc() || ptr != digits.data() + digits.size())
    throw InputError("ring: bad prime in '" + std::string(text) + "'");
  return prime(p);
}

std::string Ring::name() const {
  switch (kind_) {
    case RingKind::Rational: return "Q";
    case RingKind::Integer: return "Z";
    case RingKind::Prime: return "Fp:" + std::to_string(p_);
  }
  return "?";
}

void Ring::reduce(Scalar& v) const {
  if (kind_ != RingKind::Prime) return;
  mpz_class p(p_);
  if (v.get_den() == 1) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), v.get_num_mpz_t(), p.get_mpz_t());
    v = r;
    return;
  }
  mpz_class num, den;
  mpz_fdiv_r(num.get_mpz_t(), v.get_num_mpz_t(), p.get_mpz_t());
  mpz_fdiv_r(den.get_mpz_t(), v.get_den_mpz_t(), p.get_mpz_t());
  if (den == 0) throw InputError("ring: denominator divisible by " + std::to_string(p_));
  mpz_class dinv;
  mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
  mpz_class r = num * dinv;
  mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t());
  v = r;
}

Scalar Ring::canonical(const Scalar& v) const {
  Scalar r = v;
  if (kind_ == RingKind::Integer && r.get_den() != 1)
    throw InputError("ring Z: non-integral value " + r.get_str());
  reduce(r);
  return r;
}

Scalar Ring::from_int(long v) const {
  Scalar r(v);
  reduce(r);
  return r;
}

Scalar Ring::parse_scalar(std::string_view text) const {
  std::string s(text);
  Scalar r;
  if (r.set_str(s, 10) != 0) throw InputError("cannot parse coefficient '" + s + "'");
  r.canonicalize();
  return canonical(r);
}

Scalar Ring::add(const Scalar& a, const Scalar& b) const {
  Scalar r = a + b;
  if (kind_ == RingKind::Prime && r >= p_) r -= p_;
  return r;
}

Scalar Ring::sub(const Scalar& a, const Scalar& b) const {
  Scalar r = a - b;
  if (kind_ == RingKind::Prime && r < 0) r += p_;
  return r;
}

Scalar Ring::mul(const Scalar& a, const Scalar& b) const {
  Scalar r = a * b;
  reduce(r);
  return r;
}

Scalar Ring::neg(const Scalar& a) const {
  if (kind_ == RingKind::Prime) return sgn(a) == 0 ? Scalar(0) : Scalar(p_ - a);
  return -a;
}

Scalar Ring::inv(const Scalar& a) const {
  if (sgn(a) == 0) throw std::domain_error("division by zero");
  switch (kind_) {
    case RingKind::Rational: return 1 / a;
    case RingKind::Integer:
      if (a == 1 || a == -1) return a;
      throw std::domain_error("ring Z: " + a.get_str() + " is not a unit");
    case RingKind::Prime: {
      mpz_class p(p_), r;
      mpz_invert(r.get_mpz_t(), a.get_num_mpz_t(), p.get_mpz_t());
      return Scalar(r);
    }
  }
  return a;
}

void Ring::fma(Scalar& a, const Scalar& b, const Scalar& c) const {
  if (kind_ == RingKind::Prime) {
    a = add(a, mul(b, c));
  } else {
    a += b * c;
  }
}

SparseVec to_sparse(const DenseVec& v) {
  SparseVec out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0) out.emplace_back(i, v[i]);
  return out;
}

DenseVec to_dense(const SparseVec& v, std::size_t n) {
  DenseVec out(n, Scalar(0));
  for (const auto& [i, x] : v) out.at(i) = x;
  return out;
}

SparseVec normalize(const Ring& ring, std::vector<std::pair<std::size_t, Scalar>> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVec out;
  out.reserve(terms.size());
  for (auto& [i, x] : terms) {
    if (!out.empty() && out.back().first == i) {
      out.back().second = ring.add(out.back().second, x);
    } else {
      if (!out.empty() && sgn(out.back().second) == 0) out.pop_back();
      out.emplace_back(i, ring.canonical(x));
    }
  }
  if (!out.empty() && sgn(out.back().second) == 0) out.pop_back();
  return out;
}

SparseVec axpy(const Ring& ring, const SparseVec& a, const Scalar& c, const SparseVec& b) {
  SparseVec out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      Scalar v = ring.mul(c, b[j].second);
      if (sgn(v) != 0) out.emplace_back(b[j].first, std::move(v));
      ++j;
    } else {
      Scalar v = a[i].second;
      ring.fma(v, c, b[j].second);
      if (sgn(v) != 0) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

SparseVec scale(const Ring& ring, const SparseVec& v, const Scalar& c) {
  SparseVec out;
  if (sgn(c) == 0) return out;
  out.reserve(v.size());
  for (const auto& [i, x] : v) {
    Scalar y = ring.mul(x, c);
    if (sgn(y) != 0) out.emplace_back(i, std::move(y));
  }
  return out;
}

// ---------------------------------------------------------------------------
// SparseMatrix

SparseMatrix::SparseMatrix(Ring ring, std::size_t rows, std::size_t cols)
    : ring_(ring), rows_(rows), cols_(cols), data_(rows) {}

SparseMatrix SparseMatrix::identity(Ring ring, std::size_t n) {
  SparseMatrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i].emplace_back(i, Scalar(1));
  return m;
}

SparseMatrix SparseMatrix::from_dense(Ring ring, const std::vector<std::vector<long>>& rows) {
  std::vector<std::vector<Scalar>> s;
  for (const auto& r : rows) {
    std::vector<Scalar> row;
    for (long v : r) row.emplace_back(v);
    s.push_back(std::move(row));
  }
  return from_dense(ring, s);
}

SparseMatrix SparseMatrix::from_dense(Ring ring, const std::vector<std::vector<Scalar>>& rows) {
  std::size_t c = rows.empty() ? 0 : rows[0].size();
  SparseMatrix m(ring, rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw InputError("from_dense: ragged rows");
    for (std::size_t j = 0; j < c; ++j) {
      Scalar v = ring.canonical(rows[i][j]);
      if (sgn(v) != 0) m.data_[i].emplace_back(j, std::move(v));
    }
  }
  return m;
}

SparseMatrix SparseMatrix::from_triplets(
    Ring ring, std::size_t rows, std::size_t cols,
    std::vector<std::tuple<std::size_t, std::size_t, Scalar>> t) {
  SparseMatrix m(ring, rows, cols);
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> buckets(rows);
  for (auto& [i, j, v] : t) {
    if (i >= rows || j >= cols) throw InputError("from_triplets: index out of range");
    buckets[i].emplace_back(j, std::move(v));
  }
  for (std::size_t i = 0; i < rows; ++i) m.data_[i] = normalize(ring, std::move(buckets[i]));
  return m;
}

SparseMatrix SparseMatrix::from_columns(Ring ring, std::size_t rows,
                                        const std::vector<SparseVec>& columns) {
  SparseMatrix m(ring, rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (const auto& [i, v] : columns[j]) {
      if (i >= rows) throw InputError("from_columns: index out of range");
      m.data_[i].emplace_back(j, v);
    }
  return m;
}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : data_) n += r.size();
  return n;
}

void SparseMatrix::set_row(std::size_t i, SparseVec v) {
  if (!v.empty() && v.back().first >= cols_) throw InputError("set_row: column out of range");
  data_.at(i) = std::move(v);
}

Scalar SparseMatrix::at(std::size_t i, std::size_t j) const {
  const auto& r = data_.at(i);
  auto it = std::lower_bound(r.begin(), r.end(), j,
                             [](const auto& e, std::size_t k) { return e.first < k; });
  if (it != r.end() && it->first == j) return it->second;
  return Scalar(0);
}

void SparseMatrix::add_to(std::size_t i, std::size_t j, const Scalar& v) {
  if (i >= rows_ || j >= cols_) throw InputError("add_to: index out of range");
  data_[i] = axpy(ring_, data_[i], Scalar(1), SparseVec{{j, v}});
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (const auto& [j, v] : data_[i]) t.data_[j].emplace_back(i, v);
  return t;
}

std::vector<SparseVec> SparseMatrix::columns() const {
  std::vector<SparseVec> cs(cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (const auto& [j, v] : data_[i]) cs[j].emplace_back(i, v);
  return cs;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw InputError("matrix product: dimension mismatch");
  SparseMatrix out(ring_, rows_, rhs.cols_);
  std::vector<Scalar> acc(rhs.cols_);
  std::vector<char> used(rhs.cols_, 0);
  std::vector<std::size_t> touched;
  for (std::size_t i = 0; i < rows_; ++i) {
    touched.clear();
    for (const auto& [k, a] : data_[i]) {
      for (const auto& [j, b] : rhs.data_[k]) {
        if (!used[j]) {
          used[j] = 1;
          touched.push_back(j);
          acc[j] = 0;
        }
        ring_.fma(acc[j], a, b);
      }
    }
    std::sort(touched.begin(), touched.end());
    SparseVec row;
    for (std::size_t j : touched) {
      used[j] = 0;
      Scalar v = ring_.canonical(acc[j]);
      if (sgn(v) != 0) row.emplace_back(j, std::move(v));
    }
    out.data_[i] = std::move(row);
  }
  return out;
}

SparseMatrix SparseMatrix::operator+(const SparseMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw InputError("matrix sum: dimension mismatch");
  SparseMatrix out(ring_, rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i) out.data_[i] = axpy(ring_, data_[i], Scalar(1), rhs.data_[i]);
  return out;
}

SparseMatrix SparseMatrix::operator-(const SparseMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw InputError("matrix difference: dimension mismatch");
  SparseMatrix out(ring_, rows_, cols_);
  Scalar m1 = ring_.neg(Scalar(1));
  for (std::size_t i = 0; i < rows_; ++i) out.data_[i] = axpy(ring_, data_[i], m1, rhs.data_[i]);
  return out;
}

SparseMatrix SparseMatrix::scaled(const Scalar& c) const {
  SparseMatrix out(ring_, rows_, cols_);
  Scalar cc = ring_.canonical(c);
  for (std::size_t i = 0; i < rows_; ++i) out.data_[i] = scale(ring_, data_[i], cc);
  return out;
}

SparseVec SparseMatrix::apply(const SparseVec& v) const {
  if (!v.empty() && v.back().first >= cols_) throw InputError("apply: dimension mismatch");
  std::vector<std::pair<std::size_t, Scalar>> terms;
  // Row-wise dot products against the sorted vector.
  for (std::size_t i = 0; i < rows_; ++i) {
    const auto& r = data_[i];
    if (r.empty()) continue;
    Scalar acc(0);
    bool any = false;
    std::size_t a = 0, b = 0;
    while (a < r.size() && b < v.size()) {
      if (r[a].first < v[b].first) {
        ++a;
      } else if (v[b].first < r[a].first) {
        ++b;
      } else {
        ring_.fma(acc, r[a].second, v[b].second);
        any = true;
        ++a;
        ++b;
      }
    }
    if (any) {
      acc = ring_.canonical(acc);
      if (sgn(acc) != 0) terms.emplace_back(i, std::move(acc));
    }
  }
  return terms;
}

DenseVec SparseMatrix::apply(const DenseVec& v) const {
  if (v.size() != cols_) throw InputError("apply: dimension mismatch");
  DenseVec out(rows_, Scalar(0));
  for (std::size_t i = 0; i < rows_; ++i) {
    Scalar acc(0);
    for (const auto& [j, a] : data_[i]) ring_.fma(acc, a, v[j]);
    out[i] = ring_.canonical(acc);
  }
  return out;
}

SparseMatrix SparseMatrix::submatrix(std::span<const std::size_t> rs,
                                     std::span<const std::size_t> cs) const {
  std::vector<long> colmap(cols_, -1);
  for (std::size_t k = 0; k < cs.size(); ++k) colmap.at(cs[k]) = static_cast<long>(k);
  SparseMatrix out(ring_, rs.size(), cs.size());
  for (std::size_t k = 0; k < rs.size(); ++k) {
    std::vector<std::pair<std::size_t, Scalar>> row;
    for (const auto& [j, v] : data_.at(rs[k]))
      if (colmap[j] >= 0) row.emplace_back(static_cast<std::size_t>(colmap[j]), v);
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    out.data_[k] = std::move(row);
  }
  return out;
}

std::vector<std::vector<Scalar>> SparseMatrix::to_dense() const {
  std::vector<std::vector<Scalar>> out(rows_, std::vector<Scalar>(cols_, Scalar(0)));
  for (std::size_t i = 0; i < rows_; ++i)
    for (const auto& [j, v] : data_[i]) out[i][j] = v;
  return out;
}

bool SparseMatrix::operator==(const SparseMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

// ---------------------------------------------------------------------------
// RowEchelon

RowEchelon::RowEchelon(Ring ring, std::size_t dim) : ring_(ring), dim_(dim) {
  if (!ring.is_field()) throw std::domain_error("row echelon form needs a field (got Z)");
}

SparseVec RowEchelon::reduce(SparseVec v) const {
  if (rows_.empty() || v.empty()) return v;
  // Ascending sweep: every stored row has entries only right of its pivot,
  // so one pass clears all pivot columns.
  std::map<std::size_t, Scalar> work;
  for (auto& [i, x] : v) work.emplace(i, std::move(x));
  auto it = work.begin();
  while (it != work.end()) {
    auto piv = rows_.find(it->first);
    if (piv == rows_.end()) {
      ++it;
      continue;
    }
    Scalar c = ring_.neg(it->second);
    std::size_t key = it->first;
    for (const auto& [j, r] : piv->second) {
      auto [slot, fresh] = work.try_emplace(j, Scalar(0));
      ring_.fma(slot->second, c, r);
      slot->second = ring_.canonical(slot->second);
      if (sgn(slot->second) == 0) work.erase(slot);
    }
    it = work.upper_bound(key);
  }
  SparseVec out;
  out.reserve(work.size());
  for (auto& [i, x] : work) out.emplace_back(i, std::move(x));
  return out;
}

bool RowEchelon::insert(SparseVec v) {
  if (!v.empty() && v.back().first >= dim_) throw InputError("RowEchelon::insert: index out of range");
  // Reduce only until the leading column is free of pivots.
  while (!v.empty()) {
    auto piv = rows_.find(v.front().first);
    if (piv == rows_.end()) break;
    v = axpy(ring_, v, ring_.neg(v.front().second), piv->second);
  }
  if (v.empty()) return false;
  Scalar lead_inv = ring_.inv(v.front().second);
  v = scale(ring_, v, lead_inv);
  std::size_t key = v.front().first;
  rows_.emplace(key, std::move(v));
  return true;
}

void RowEchelon::make_reduced() {
  for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
    SparseVec& row = it->second;
    SparseVec tail(row.begin() + 1, row.end());
    SparseVec reduced = reduce(std::move(tail));
    SparseVec full;
    full.reserve(reduced.size() + 1);
    full.push_back(row.front());
    for (auto& e : reduced) full.push_back(std::move(e));
    row = std::move(full);
  }
}

SpanCoordinates::SpanCoordinates(Ring ring, std::size_t dim, const std::vector<SparseVec>& generators)
    : ring_(ring), dim_(dim) {
  for (std::size_t g = 0; g < generators.size(); ++g) {
    SparseVec v = generators[g];
    SparseVec combo{{g, ring_.one()}};
    while (!v.empty()) {
      auto piv = rows_.find(v.front().first);
      if (piv == rows_.end()) break;
      Scalar c = ring_.neg(v.front().second);
      v = axpy(ring_, v, c, piv->second.first);
      combo = axpy(ring_, combo, c, piv->second.second);
    }
    if (v.empty()) continue;
    Scalar inv = ring_.inv(v.front().second);
    std::size_t key = v.front().first;
    rows_.emplace(key, std::make_pair(scale(ring_, v, inv), scale(ring_, combo, inv)));
  }
}

std::optional<SparseVec> SpanCoordinates::coordinates(SparseVec x) const {
  SparseVec out;
  while (!x.empty()) {
    auto piv = rows_.find(x.front().first);
    if (piv == rows_.end()) return std::nullopt;
    Scalar c = x.front().second;
    x = axpy(ring_, x, ring_.neg(c), piv->second.first);
    out = axpy(ring_, out, c, piv->second.second);
  }
  return out;
}

std::vector<SparseVec> RowEchelon::basis() const {
  std::vector<SparseVec> out;
  out.reserve(rows_.size());
  for (const auto& [k, r] : rows_) out.push_back(r);
  return out;
}

// ---------------------------------------------------------------------------
// coeff operations

namespace coeff {

namespace {

void require_field(const SparseMatrix& m, const char* what) {
  if (!m.ring().is_field())
    throw std::domain_error(std::string(what) + ": integer matrices need smith_normal_form");
}

RowEchelon echelon_of_rows(const SparseMatrix& m) {
  RowEchelon e(m.ring(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (!m.row(i).empty()) e.insert(m.row(i));
  return e;
}

}  // namespace

std::size_t rank(const SparseMatrix& m) {
  require_field(m, "rank");
  // Eliminate along the shorter side.
  if (m.rows() > m.cols()) return echelon_of_rows(m.transpose()).rank();
  return echelon_of_rows(m).rank();
}

std::vector<SparseVec> kernel_basis(const SparseMatrix& m) {
  require_field(m, "kernel_basis");
  const Ring& ring = m.ring();
  RowEchelon e = echelon_of_rows(m);
  e.make_reduced();
  const auto& rows = e.rows();
  std::vector<char> is_pivot(m.cols(), 0);
  for (const auto& [k, r] : rows) is_pivot[k] = 1;
  // Column f of the reduced rows, for each free column f.
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> free_entries(m.cols());
  for (const auto& [k, r] : rows)
    for (std::size_t t = 1; t < r.size(); ++t) free_entries[r[t].first].emplace_back(k, r[t].second);
  std::vector<SparseVec> out;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<std::pair<std::size_t, Scalar>> v;
    v.emplace_back(f, Scalar(1));
    for (const auto& [k, x] : free_entries[f]) v.emplace_back(k, ring.neg(x));
    out.push_back(normalize(ring, std::move(v)));
  }
  return out;
}

std::vector<DenseVec> kernel_basis_dense(const SparseMatrix& m) {
  std::vector<DenseVec> out;
  for (const auto& v : kernel_basis(m)) out.push_back(to_dense(v, m.cols()));
  return out;
}

std::optional<SparseVec> solve(const SparseMatrix& m, const SparseVec& b) {
  require_field(m, "solve");
  if (!b.empty() && b.back().first >= m.rows()) throw InputError("solve: dimension mismatch");
  const Ring& ring = m.ring();
  const std::size_t n = m.cols();
  DenseVec bd = to_dense(b, m.rows());
  RowEchelon e(ring, n + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    SparseVec row = m.row(i);
    if (sgn(bd[i]) != 0) row.emplace_back(n, bd[i]);
    if (!row.empty()) e.insert(std::move(row));
  }
  if (e.rows().count(n)) return std::nullopt;
  e.make_reduced();
  std::vector<std::pair<std::size_t, Scalar>> x;
  for (const auto& [k, r] : e.rows())
    if (r.back().first == n) x.emplace_back(k, r.back().second);
  return normalize(ring, std::move(x));
}

std::optional<DenseVec> solve(const SparseMatrix& m, const DenseVec& b) {
  if (b.size() != m.rows()) throw InputError("solve: dimension mismatch");
  auto x = solve(m, to_sparse(b));
  if (!x) return std::nullopt;
  return to_dense(*x, m.cols());
}

SparseMatrix change_ring(const SparseMatrix& m, Ring ring) {
  std::vector<std::tuple<std::size_t, std::size_t, Scalar>> t;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (const auto& [j, v] : m.row(i)) t.emplace_back(i, j, v);
  return SparseMatrix::from_triplets(ring, m.rows(), m.cols(), std::move(t));
}

std::size_t span_dim(const Ring& ring, std::size_t n, const std::vector<SparseVec>& vs) {
  RowEchelon e(ring, n);
  for (const auto& v : vs) e.insert(v);
  return e.rank();
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

using IMat = std::vector<std::vector<Integer>>;

IMat integer_dense(const SparseMatrix& m) {
  IMat a(m.rows(), std::vector<Integer>(m.cols(), Integer(0)));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (const auto& [j, v] : m.row(i)) {
      if (v.get_den() != 1) throw InputError("smith_normal_form: non-integral entry " + v.get_str());
      a[i][j] = v.get_num();
    }
  return a;
}

IMat identity_int(std::size_t n) {
  IMat a(n, std::vector<Integer>(n, Integer(0)));
  for (std::size_t i = 0; i < n; ++i) a[i][i] = 1;
  return a;
}

struct SmithWork {
  IMat a;
  IMat left;   // accumulated row operations
  IMat right;  // accumulated column operations
  bool track;

  std::size_t rows() const { return a.size(); }
  std::size_t cols() const { return a.empty() ? 0 : a[0].size(); }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    std::swap(a[i], a[j]);
    if (track) std::swap(left[i], left[j]);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (auto& r : a) std::swap(r[i], r[j]);
    if (track)
      for (auto& r : right) std::swap(r[i], r[j]);
  }
  // row_i += q * row_j
  void add_row(std::size_t i, std::size_t j, const Integer& q) {
    for (std::size_t c = 0; c < cols(); ++c) a[i][c] += q * a[j][c];
    if (track)
      for (std::size_t c = 0; c < left[i].size(); ++c) left[i][c] += q * left[j][c];
  }
  // col_i += q * col_j
  void add_col(std::size_t i, std::size_t j, const Integer& q) {
    for (auto& r : a) r[i] += q * r[j];
    if (track)
      for (auto& r : right) r[i] += q * r[j];
  }
  void negate_row(std::size_t i) {
    for (auto& x : a[i]) x = -x;
    if (track)
      for (auto& x : left[i]) x = -x;
  }

  void run(std::vector<Integer>& diag) {
    const std::size_t m = rows(), n = cols();
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      auto place_min = [&]() -> bool {
        std::size_t bi = m, bj = n;
        for (std::size_t i = t; i < m; ++i)
          for (std::size_t j = t; j < n; ++j)
            if (sgn(a[i][j]) != 0 && (bi == m || mpz_cmpabs(a[i][j].get_mpz_t(), a[bi][bj].get_mpz_t()) < 0)) {
              bi = i;
              bj = j;
            }
        if (bi == m) return false;
        swap_rows(t, bi);
        swap_cols(t, bj);
        return true;
      };
      if (!place_min()) break;
      for (;;) {
        bool dirty = false;
        for (std::size_t i = t + 1; i < m; ++i) {
          if (sgn(a[i][t]) == 0) continue;
          Integer q;
          mpz_tdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
          add_row(i, t, -q);
          if (sgn(a[i][t]) != 0) dirty = true;
        }
        for (std::size_t j = t + 1; j < n; ++j) {
          if (sgn(a[t][j]) == 0) continue;
          Integer q;
          mpz_tdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
          add_col(j, t, -q);
          if (sgn(a[t][j]) != 0) dirty = true;
        }
        if (dirty) {
          place_min();
          continue;
        }
        // Enforce divisibility by the pivot on the trailing block.
        bool fixed = true;
        for (std::size_t i = t + 1; i < m && fixed; ++i)
          for (std::size_t j = t + 1; j < n; ++j)
            if (!mpz_divisible_p(a[i][j].get_mpz_t(), a[t][t].get_mpz_t())) {
              add_row(t, i, Integer(1));
              fixed = false;
              break;
            }
        if (fixed) break;
      }
      if (sgn(a[t][t]) < 0) negate_row(t);
      diag.push_back(a[t][t]);
    }
  }
};

}  // namespace

SmithForm smith_normal_form(const SparseMatrix& m) {
  SmithWork w{integer_dense(m), identity_int(m.rows()), identity_int(m.cols()), true};
  SmithForm out;
  w.run(out.diagonal);
  out.left = std::move(w.left);
  out.right = std::move(w.right);
  return out;
}

std::vector<Integer> invariant_factors(const SparseMatrix& m) {
  SmithWork w{integer_dense(m), {}, {}, false};
  std::vector<Integer> d;
  w.run(d);
  return d;
}

Integer determinant(IMat a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(a[k][k]) == 0) {
      std::size_t r = k + 1;
      while (r < n && sgn(a[r][k]) == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = v;
      }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

}  // namespace coeff
}  // namespace gcohom
