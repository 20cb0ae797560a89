#include "gcohom/perturb.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace gcohom {
namespace perturb {

namespace {

/// Spectral sequence of a complex filtered by `level` (F^p = span of the
/// basis elements of level >= p) with differential `D` of total degree +1.
/// Z_r^p = {x in F^p : Dx in F^{p+r}},
/// E_r^p = Z_r^p / (Z_{r-1}^{p+1} + D Z_{r-1}^{p-r+1}).
class FilteredComplex {
 public:
  FilteredComplex(Ring ring, std::vector<int> level, std::vector<int> degree, SparseMatrix d)
      : ring_(std::move(ring)), level_(std::move(level)), degree_(std::move(degree)), d_(std::move(d)) {
    if (!ring_.is_field()) throw InputError("spectral sequence: field coefficients required");
    if (!(d_ * d_).is_zero()) throw InputError("spectral sequence: D^2 != 0");
    const SparseMatrix dt = d_.transpose();
    for (std::size_t i = 0; i < level_.size(); ++i) {
      for (const auto& [row, v] : dt.row(i)) {
        if (degree_[row] != degree_[i] + 1) throw InputError("spectral sequence: D does not have degree 1");
        if (level_[row] < level_[i]) throw InputError("spectral sequence: D lowers the filtration");
      }
    }
    if (!level_.empty()) {
      lo_ = *std::min_element(level_.begin(), level_.end());
      hi_ = *std::max_element(level_.begin(), level_.end());
    }
  }

  SpectralSequence run() {
    SpectralSequence ss;
    std::set<int> degrees(degree_.begin(), degree_.end());
    const int last = hi_ - lo_ + 1;
    for (int r = 1; r <= std::max(last, 1); ++r) {
      SsPage page;
      page.r = r;
      for (int n : degrees)
        for (int p = lo_; p <= hi_; ++p) {
          const std::size_t z = span(z_(r, p, n));
          const std::size_t b = span(boundary(r, p, n));
          if (z > b) page.dim[{p, n - p}] = z - b;
          // rank of the differential E_r^{p} -> E_r^{p+r} in degree n
          std::vector<SparseVec> target = boundary(r, p + r, n + 1);
          const std::size_t t = span(target);
          for (const auto& x : z_(r, p, n)) target.push_back(d_.apply(x));
          const std::size_t rk = span(target) - t;
          if (rk) page.rank[{p, n - p}] = rk;
        }
      ss.pages.push_back(std::move(page));
    }
    return ss;
  }

 private:
  std::size_t span(const std::vector<SparseVec>& vs) const { return coeff::span_dim(ring_, level_.size(), vs); }

  /// Z_{r-1}^{p+1} + D Z_{r-1}^{p-r+1} in degree n.
  std::vector<SparseVec> boundary(int r, int p, int n) {
    std::vector<SparseVec> out = z_(r - 1, p + 1, n);
    for (const auto& y : z_(r - 1, p - r + 1, n - 1)) out.push_back(d_.apply(y));
    return out;
  }

  const std::vector<SparseVec>& z_(int r, int p, int n) {
    auto key = std::make_tuple(r, p, n);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<std::size_t> cols, rows;
    for (std::size_t i = 0; i < level_.size(); ++i) {
      if (degree_[i] == n && level_[i] >= p) cols.push_back(i);
      if (degree_[i] == n + 1 && level_[i] < p + r) rows.push_back(i);
    }
    std::vector<SparseVec> basis;
    if (!cols.empty()) {
      SparseMatrix block = d_.submatrix(rows, cols);
      if (rows.empty()) block = SparseMatrix(ring_, 0, cols.size());
      for (const auto& k : coeff::kernel_basis(block)) {
        SparseVec v;
        for (const auto& [j, c] : k) v.emplace_back(cols[j], c);
        basis.push_back(normalize(ring_, std::move(v)));
      }
    }
    return memo_.emplace(key, std::move(basis)).first->second;
  }

  Ring ring_;
  std::vector<int> level_, degree_;
  SparseMatrix d_;
  int lo_ = 0, hi_ = 0;
  std::map<std::tuple<int, int, int>, std::vector<SparseVec>> memo_;
};

}  // namespace

SpectralSequence spectral_sequence(const Bicomplex& b) {
  std::vector<int> n(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) n[i] = b.p[i] + b.q[i];
  return FilteredComplex(b.ring, b.p, n, b.vertical + b.horizontal).run();
}

namespace {

/// E_i from the operators d_i on L = E_1. Unknowns live in blocks L^{p,q};
/// the coefficient of an unknown at level a in an equation at level c > a is
/// d_{c-a}.
class SystemPages {
 public:
  SystemPages(Ring ring, std::vector<int> p, std::vector<int> q, const std::vector<SparseMatrix>& dops)
      : ring_(std::move(ring)), p_(std::move(p)), q_(std::move(q)), dops_(dops) {
    for (std::size_t i = 0; i < p_.size(); ++i) block_[{p_[i], q_[i]}].push_back(i);
    if (!p_.empty()) {
      lo_ = *std::min_element(p_.begin(), p_.end());
      hi_ = *std::max_element(p_.begin(), p_.end());
    }
  }

  SpectralSequence run() const {
    SpectralSequence ss;
    std::set<int> degrees;
    for (std::size_t i = 0; i < p_.size(); ++i) degrees.insert(p_[i] + q_[i]);
    for (int r = 1; r <= std::max(hi_ - lo_ + 1, 1); ++r) {
      SsPage page;
      page.r = r;
      for (int n : degrees)
        for (int p = lo_; p <= hi_; ++p) {
          const int q = n - p;
          const auto sol = cycles(r, p, q);
          std::vector<SparseVec> z;
          for (const auto& s : sol) z.push_back(restrict(s, {p, q}));
          const std::size_t zd = span(z), bd = span(boundaries(r, p, q));
          if (zd > bd) page.dim[{p, q}] = zd - bd;
          std::vector<SparseVec> target = boundaries(r, p + r, q - r + 1);
          const std::size_t t = span(target);
          for (const auto& s : sol) target.push_back(restrict(apply_all(s), {p + r, q - r + 1}));
          if (const std::size_t rk = span(target) - t) page.rank[{p, q}] = rk;
        }
      ss.pages.push_back(std::move(page));
    }
    return ss;
  }

 private:
  std::size_t span(const std::vector<SparseVec>& vs) const { return coeff::span_dim(ring_, p_.size(), vs); }

  const std::vector<std::size_t>& indices(GradeKey k) const {
    static const std::vector<std::size_t> none;
    auto it = block_.find(k);
    return it == block_.end() ? none : it->second;
  }

  SparseVec restrict(const SparseVec& v, GradeKey k) const {
    SparseVec out;
    for (const auto& [i, c] : v)
      if (p_[i] == k.first && q_[i] == k.second) out.emplace_back(i, c);
    return out;
  }

  /// sum_i d_i v
  SparseVec apply_all(const SparseVec& v) const {
    std::vector<std::pair<std::size_t, Scalar>> acc;
    for (const auto& d : dops_)
      for (auto& e : d.apply(v)) acc.push_back(std::move(e));
    return normalize(ring_, std::move(acc));
  }

  /// Solutions (y_1, ..., y_m) with y_j in `unknowns[j]` of the equations
  /// sum_{a < c} d_{c-a} y_a = 0 at every grade of `equations`.
  std::vector<SparseVec> solve(const std::vector<GradeKey>& unknowns, const std::vector<GradeKey>& equations) const {
    std::vector<std::size_t> cols, rows;
    for (GradeKey k : unknowns) cols.insert(cols.end(), indices(k).begin(), indices(k).end());
    for (GradeKey k : equations) rows.insert(rows.end(), indices(k).begin(), indices(k).end());
    if (cols.empty()) return {};
    std::map<std::size_t, std::size_t> row_pos;
    for (std::size_t i = 0; i < rows.size(); ++i) row_pos[rows[i]] = i;
    std::vector<std::tuple<std::size_t, std::size_t, Scalar>> t;
    for (std::size_t j = 0; j < cols.size(); ++j) {
      const SparseVec e{{cols[j], ring_.one()}};
      for (std::size_t k = 0; k < dops_.size(); ++k)
        for (const auto& [i, c] : dops_[k].apply(e))
          if (auto it = row_pos.find(i); it != row_pos.end() && p_[i] - p_[cols[j]] == static_cast<int>(k) + 1)
            t.emplace_back(it->second, j, c);
    }
    const SparseMatrix m = SparseMatrix::from_triplets(ring_, rows.size(), cols.size(), std::move(t));
    std::vector<SparseVec> out;
    for (const auto& k : coeff::kernel_basis(m)) {
      SparseVec v;
      for (const auto& [j, c] : k) v.emplace_back(cols[j], c);
      out.push_back(normalize(ring_, std::move(v)));
    }
    return out;
  }

  /// (x, x_2, ..., x_{r-1}) with d_1 x = 0, d_2 x + d_1 x_2 = 0, ...
  std::vector<SparseVec> cycles(int r, int p, int q) const {
    std::vector<GradeKey> unknowns, equations;
    for (int j = 1; j <= std::max(r - 1, 1); ++j) unknowns.push_back({p + j - 1, q - j + 1});
    for (int k = 1; k <= r - 1; ++k) equations.push_back({p + k, q - k + 1});
    return solve(unknowns, equations);
  }

  /// Leading terms sum_j d_{r-j+1} b_j at (p, q) of the chains
  /// (b_1, ..., b_{r-1}) starting at level p - r + 1 whose lower terms vanish.
  std::vector<SparseVec> boundaries(int r, int p, int q) const {
    std::vector<GradeKey> unknowns, equations;
    for (int j = 1; j <= r - 1; ++j) unknowns.push_back({p - r + j, q + r - j - 1});
    for (int k = 1; k <= r - 2; ++k) equations.push_back({p - r + 1 + k, q + r - k - 1});
    std::vector<SparseVec> out;
    for (const auto& s : solve(unknowns, equations)) out.push_back(restrict(apply_all(s), {p, q}));
    return out;
  }

  Ring ring_;
  std::vector<int> p_, q_;
  const std::vector<SparseMatrix>& dops_;
  std::map<GradeKey, std::vector<std::size_t>> block_;
  int lo_ = 0, hi_ = 0;
};

}  // namespace

SpectralSequence ss_via_perturbation(const Ring& ring, const std::vector<int>& p, const std::vector<int>& q,
                                     const std::vector<SparseMatrix>& dops) {
  if (!ring.is_field()) throw InputError("spectral sequence: field coefficients required");
  if (p.size() != q.size()) throw InputError("spectral sequence: bidegree lists differ in length");
  for (std::size_t i = 0; i < dops.size(); ++i) {
    const SparseMatrix& d = dops[i];
    if (d.rows() != p.size() || d.cols() != p.size()) throw InputError("spectral sequence: d_i has the wrong shape");
    for (std::size_t row = 0; row < d.rows(); ++row)
      for (const auto& [col, v] : d.row(row))
        if (p[row] != p[col] + static_cast<int>(i) + 1 || q[row] != q[col] - static_cast<int>(i))
          throw InputError("spectral sequence: d_" + std::to_string(i + 1) + " has the wrong bidegree");
  }
  return SystemPages(ring, p, q, dops).run();
}

CheckResult compare_spectral_sequences(const SpectralSequence& a, const SpectralSequence& b) {
  const std::size_t pages = std::max(a.pages.size(), b.pages.size());
  for (std::size_t r = 1; r <= pages; ++r) {
    const SsPage& x = a.page(static_cast<int>(r));
    const SsPage& y = b.page(static_cast<int>(r));
    if (x.dim != y.dim) return CheckResult::fail("E_" + std::to_string(r) + " dimensions differ");
    if (x.rank != y.rank) return CheckResult::fail("ranks of the E_" + std::to_string(r) + " differential differ");
  }
  return CheckResult::pass();
}

CheckResult infinity_check(const SpectralSequence& ss, const Bicomplex& b) {
  const auto total = complexes::cohomology(b.total()).by_degree();
  if (ss.infinity_by_degree() != total) return CheckResult::fail("E_infinity does not add up to the total cohomology");
  for (const auto& [k, rk] : ss.infinity().rank)
    if (rk) return CheckResult::fail("the last page has a nonzero differential");
  return CheckResult::pass();
}

}  // namespace perturb
}  // namespace gcohom
