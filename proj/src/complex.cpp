#include "gcohom/complex.hpp"

#include <algorithm>
#include <set>

namespace gcohom {

FiniteComplex::FiniteComplex(Ring ring, std::vector<int> degree, SparseMatrix d, std::vector<int> weight)
    : ring_(ring), degree_(std::move(degree)), weight_(std::move(weight)), d_(std::move(d)) {
  if (weight_.empty()) weight_.assign(degree_.size(), 0);
  if (weight_.size() != degree_.size() || d_.rows() != degree_.size() || d_.cols() != degree_.size())
    throw InputError("complex: differential does not match the basis");
  for (std::size_t i = 0; i < degree_.size(); ++i) index_[{weight_[i], degree_[i]}].push_back(i);
}

const std::vector<std::size_t>& FiniteComplex::indices(GradeKey k) const {
  static const std::vector<std::size_t> empty;
  auto it = index_.find(k);
  return it == index_.end() ? empty : it->second;
}

std::vector<GradeKey> FiniteComplex::grades() const {
  std::vector<GradeKey> out;
  for (const auto& [k, v] : index_) out.push_back(k);
  return out;
}

SparseMatrix FiniteComplex::block(GradeKey k) const {
  const auto& src = indices(k);
  const auto& dst = indices({k.first, k.second + 1});
  return d_.submatrix(dst, src);
}

bool FiniteComplex::is_graded() const {
  for (std::size_t i = 0; i < d_.rows(); ++i)
    for (const auto& [j, v] : d_.row(i))
      if (degree_[i] != degree_[j] + 1 || weight_[i] != weight_[j]) return false;
  return true;
}

std::map<int, std::size_t> CohomologyTable::by_degree() const {
  std::map<int, std::size_t> out;
  for (const auto& [k, r] : rank)
    if (r) out[k.second] += r;
  return out;
}

std::size_t CohomologyTable::total() const {
  std::size_t t = 0;
  for (const auto& [k, r] : rank) t += r;
  return t;
}

namespace complexes {

std::map<GradeKey, std::size_t> differential_ranks(const FiniteComplex& c) {
  std::map<GradeKey, std::size_t> out;
  for (GradeKey k : c.grades()) {
    SparseMatrix b = c.block(k);
    if (b.rows() == 0 || b.cols() == 0 || b.is_zero()) {
      out[k] = 0;
      continue;
    }
    out[k] = c.ring().is_field() ? coeff::rank(b) : coeff::invariant_factors(b).size();
  }
  return out;
}

CohomologyTable cohomology(const FiniteComplex& c) {
  CohomologyTable t;
  std::map<GradeKey, std::size_t> ranks;
  for (GradeKey k : c.grades()) {
    SparseMatrix b = c.block(k);
    if (b.rows() == 0 || b.cols() == 0 || b.is_zero()) {
      ranks[k] = 0;
      continue;
    }
    if (c.ring().is_field()) {
      ranks[k] = coeff::rank(b);
    } else {
      auto f = coeff::invariant_factors(b);
      ranks[k] = f.size();
      std::vector<Integer> tors;
      for (const auto& x : f)
        if (x > 1) tors.push_back(x);
      if (!tors.empty()) t.torsion[{k.first, k.second + 1}] = tors;
    }
  }
  for (GradeKey k : c.grades()) {
    std::size_t n = c.indices(k).size();
    std::size_t out = ranks[k];
    auto prev = ranks.find({k.first, k.second - 1});
    std::size_t in = prev == ranks.end() ? 0 : prev->second;
    if (std::size_t h = n - out - in) t.rank[k] = h;
  }
  return t;
}

std::vector<SparseVec> cocycles(const FiniteComplex& c, GradeKey k) {
  const auto& idx = c.indices(k);
  std::vector<SparseVec> out;
  if (idx.empty()) return out;
  for (const SparseVec& v : coeff::kernel_basis(c.block(k))) {
    SparseVec g;
    for (const auto& [j, x] : v) g.emplace_back(idx[j], x);
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<SparseVec> coboundaries(const FiniteComplex& c, GradeKey k) {
  std::vector<SparseVec> out;
  const SparseMatrix dt = c.d().transpose();
  for (std::size_t j : c.indices({k.first, k.second - 1})) {
    const SparseVec& col = dt.row(j);
    if (!col.empty()) out.push_back(col);
  }
  return out;
}

std::size_t induced_rank(const FiniteComplex& source, const FiniteComplex& target, const SparseMatrix& f, GradeKey k,
                         int shift) {
  return induced_rank(source, target, f, k, GradeKey{k.first, k.second + shift});
}

std::size_t induced_rank(const FiniteComplex& source, const FiniteComplex& target, const SparseMatrix& f, GradeKey k,
                         GradeKey tk) {
  std::vector<SparseVec> bound = coboundaries(target, tk);
  const std::size_t base = coeff::span_dim(target.ring(), target.size(), bound);
  std::vector<SparseVec> all = bound;
  for (const SparseVec& z : cocycles(source, k)) all.push_back(f.apply(z));
  return coeff::span_dim(target.ring(), target.size(), all) - base;
}

bool is_chain_map(const FiniteComplex& source, const FiniteComplex& target, const SparseMatrix& f, int sign) {
  SparseMatrix lhs = f * source.d();
  SparseMatrix rhs = target.d() * f;
  if (sign < 0) rhs = rhs.scaled(Scalar(-1));
  return lhs == rhs;
}

namespace {

std::string grade_name(GradeKey k) {
  return "(weight " + std::to_string(k.first) + ", degree " + std::to_string(k.second) + ")";
}

}  // namespace

CheckResult verify_ses(const FiniteComplex& a, const FiniteComplex& b, const FiniteComplex& c, const SparseMatrix& i,
                       const SparseMatrix& p, const SparseMatrix& sigma) {
  const Ring& R = b.ring();
  if (!is_chain_map(a, b, i)) return CheckResult::fail("injection is not a chain map");
  if (!is_chain_map(b, c, p)) return CheckResult::fail("projection is not a chain map");
  if (!(p * i).is_zero()) return CheckResult::fail("projection after injection is nonzero");
  if (!(p * sigma == SparseMatrix::identity(R, c.size()))) return CheckResult::fail("section is not a section");
  if (a.size() + c.size() != b.size()) return CheckResult::fail("dimensions do not add up");
  if (coeff::rank(i) != a.size()) return CheckResult::fail("injection is not injective");
  if (coeff::rank(p) != c.size()) return CheckResult::fail("projection is not surjective");
  for (GradeKey k : b.grades())
    if (a.indices(k).size() + c.indices(k).size() != b.indices(k).size())
      return CheckResult::fail("graded dimensions do not add up at " + grade_name(k));

  CohomologyTable ha = cohomology(a), hb = cohomology(b), hc = cohomology(c);
  std::set<int> weights;
  int lo = 0, hi = 0;
  bool first = true;
  for (const FiniteComplex* x : {&a, &b, &c})
    for (GradeKey k : x->grades()) {
      weights.insert(k.first);
      lo = first ? k.second : std::min(lo, k.second);
      hi = first ? k.second : std::max(hi, k.second);
      first = false;
    }
  for (int w : weights) {
    for (int n = lo - 1; n <= hi; ++n) {
      GradeKey k{w, n}, k1{w, n + 1};
      std::size_t ri = induced_rank(a, b, i, k);
      std::size_t rp = induced_rank(b, c, p, k);
      // connecting map H^n(C) -> H^{n+1}(A)
      std::vector<SparseVec> images = coboundaries(a, k1);
      const std::size_t base = coeff::span_dim(R, a.size(), images);
      for (const SparseVec& z : cocycles(c, k)) {
        SparseVec y = b.d().apply(sigma.apply(z));
        auto x = coeff::solve(i, y);
        if (!x) return CheckResult::fail("connecting map undefined at " + grade_name(k));
        images.push_back(*x);
      }
      std::size_t rd = coeff::span_dim(R, a.size(), images) - base;
      std::size_t ri1 = induced_rank(a, b, i, k1);
      if (rp + ri != hb.at(k)) return CheckResult::fail("long exact sequence not exact at H(B) " + grade_name(k));
      if (rd + rp != hc.at(k)) return CheckResult::fail("long exact sequence not exact at H(C) " + grade_name(k));
      if (ri1 + rd != ha.at(k1))
        return CheckResult::fail("long exact sequence not exact at H(A) " + grade_name(k1));
    }
  }
  return CheckResult::pass();
}

}  // namespace complexes

int Bicomplex::max_p() const { return p.empty() ? 0 : *std::max_element(p.begin(), p.end()); }
int Bicomplex::max_q() const { return q.empty() ? 0 : *std::max_element(q.begin(), q.end()); }

FiniteComplex Bicomplex::total() const {
  std::vector<int> deg(size());
  for (std::size_t i = 0; i < size(); ++i) deg[i] = p[i] + q[i];
  return FiniteComplex(ring, deg, vertical + horizontal);
}

FiniteComplex Bicomplex::horizontal_complex() const { return FiniteComplex(ring, p, horizontal, q); }

FiniteComplex Bicomplex::vertical_complex() const { return FiniteComplex(ring, q, vertical, p); }

CheckResult Bicomplex::check_identities() const {
  for (std::size_t i = 0; i < vertical.rows(); ++i)
    for (const auto& [j, v] : vertical.row(i))
      if (p[i] != p[j] || q[i] != q[j] + 1) return CheckResult::fail("vertical differential has wrong bidegree");
  for (std::size_t i = 0; i < horizontal.rows(); ++i)
    for (const auto& [j, v] : horizontal.row(i))
      if (p[i] != p[j] + 1 || q[i] != q[j]) return CheckResult::fail("horizontal differential has wrong bidegree");
  if (!(vertical * vertical).is_zero()) return CheckResult::fail("d^2 != 0");
  if (!(horizontal * horizontal).is_zero()) return CheckResult::fail("delta^2 != 0");
  if (!(vertical * horizontal + horizontal * vertical).is_zero()) return CheckResult::fail("d delta + delta d != 0");
  SparseMatrix D = vertical + horizontal;
  if (!(D * D).is_zero()) return CheckResult::fail("D^2 != 0");
  return CheckResult::pass();
}

}  // namespace gcohom
