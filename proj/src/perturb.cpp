#include "gcohom/perturb.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <set>
#include <stdexcept>

namespace gcohom {

namespace {

using Triplets = std::vector<std::tuple<std::size_t, std::size_t, Scalar>>;

Scalar sign_of(const Ring& r, long long e) { return e % 2 ? r.neg(r.one()) : r.one(); }

SparseMatrix zero(const Ring& r, std::size_t rows, std::size_t cols) { return SparseMatrix(r, rows, cols); }

/// Calls fn(tuple, coefficient) for every term of v_0 (x) v_1 (x) ...
void expand(const std::vector<const SparseVec*>& factors, const Ring& r,
            const std::function<void(const std::vector<std::size_t>&, const Scalar&)>& fn) {
  std::vector<std::size_t> tuple(factors.size());
  std::function<void(std::size_t, Scalar)> rec = [&](std::size_t k, Scalar c) {
    if (k == factors.size()) {
      fn(tuple, c);
      return;
    }
    for (const auto& [i, v] : *factors[k]) {
      tuple[k] = i;
      rec(k + 1, r.mul(c, v));
    }
  };
  rec(0, r.one());
}

}  // namespace

std::map<int, std::size_t> SpectralSequence::infinity_by_degree() const {
  std::map<int, std::size_t> out;
  for (const auto& [k, d] : infinity().dim) out[k.first + k.second] += d;
  return out;
}

const SparseVec& AInfinity::value(const std::vector<std::size_t>& tuple) const {
  static const SparseVec empty;
  const std::size_t n = tuple.size();
  if (n < 2 || n >= m.size()) return empty;
  auto it = m[n].find(tuple);
  return it == m[n].end() ? empty : it->second;
}

SparseVec AInfinity::apply(const std::vector<SparseVec>& args) const {
  const Ring& r = algebra.ring();
  std::vector<const SparseVec*> fs;
  for (const auto& a : args) fs.push_back(&a);
  std::vector<std::pair<std::size_t, Scalar>> acc;
  expand(fs, r, [&](const std::vector<std::size_t>& t, const Scalar& c) {
    for (const auto& [k, v] : value(t)) acc.emplace_back(k, r.mul(c, v));
  });
  return normalize(r, std::move(acc));
}

namespace perturb {

CheckResult check_reduction(const SparseMatrix& dk, const SparseMatrix& dl, const SparseMatrix& f,
                            const SparseMatrix& g, const SparseMatrix& h, bool side_conditions) {
  const Ring& r = dk.ring();
  const std::size_t nk = dk.rows(), nl = dl.rows();
  if (f.rows() != nl || f.cols() != nk || g.rows() != nk || g.cols() != nl || h.rows() != nk || h.cols() != nk)
    return CheckResult::fail("reduction maps have wrong shapes");
  if (!(dk * dk).is_zero()) return CheckResult::fail("d_K^2 != 0");
  if (!(dl * dl).is_zero()) return CheckResult::fail("d_L^2 != 0");
  if (!(f * dk == dl * f)) return CheckResult::fail("f is not a chain map");
  if (!(dk * g == g * dl)) return CheckResult::fail("g is not a chain map");
  if (!(f * g == SparseMatrix::identity(r, nl))) return CheckResult::fail("fg != 1");
  if (!(SparseMatrix::identity(r, nk) - g * f == dk * h + h * dk)) return CheckResult::fail("1 - gf != dh + hd");
  if (side_conditions) {
    if (!(h * g).is_zero()) return CheckResult::fail("hg != 0");
    if (!(f * h).is_zero()) return CheckResult::fail("fh != 0");
    if (!(h * h).is_zero()) return CheckResult::fail("hh != 0");
  }
  return CheckResult::pass();
}

CheckResult check_reduction(const Reduction& red, bool side_conditions) {
  return check_reduction(red.big.d(), red.small.d(), red.f, red.g, red.h, side_conditions);
}

Reduction reduce_to_cohomology(const FiniteComplex& k, bool reversed, const std::vector<SparseVec>& preferred) {
  const Ring& R = k.ring();
  if (!R.is_field()) throw InputError("reduction onto cohomology needs field coefficients");
  const std::size_t n = k.size();
  const SparseMatrix dt = k.d().transpose();
  std::map<GradeKey, std::vector<SparseVec>> complement;  // C^n as unit vectors
  std::vector<SparseVec> reps;
  std::vector<int> ldeg, lwt;
  Triplets tf, th;

  for (GradeKey key : k.grades()) {
    std::vector<std::size_t> idx = k.indices(key);
    std::vector<SparseVec> bound;
    if (auto it = complement.find({key.first, key.second - 1}); it != complement.end())
      for (const auto& c : it->second) bound.push_back(k.d().apply(c));

    std::vector<SparseVec> cyc = complexes::cocycles(k, key);
    if (reversed) std::reverse(cyc.begin(), cyc.end());
    RowEchelon eb(R, n);
    for (const auto& b : bound) eb.insert(b);
    std::vector<SparseVec> local_reps;
    std::vector<SparseVec> candidates;
    for (const auto& p : preferred) {
      bool here = !p.empty() && std::all_of(p.begin(), p.end(), [&](const auto& e) {
        return k.degree(e.first) == key.second && k.weight(e.first) == key.first;
      });
      if (here && k.d().apply(p).empty()) candidates.push_back(p);
    }
    candidates.insert(candidates.end(), cyc.begin(), cyc.end());
    for (const auto& z : candidates)
      if (eb.insert(z)) local_reps.push_back(z);

    RowEchelon ez(R, n);
    for (const auto& z : cyc) ez.insert(z);
    std::vector<SparseVec> comp;
    if (reversed) std::reverse(idx.begin(), idx.end());
    for (std::size_t j : idx) {
      SparseVec e{{j, R.one()}};
      if (ez.insert(e)) comp.push_back(std::move(e));
    }
    if (reversed) std::reverse(idx.begin(), idx.end());

    std::vector<SparseVec> dcomp;
    for (const auto& c : comp) dcomp.push_back(k.d().apply(c));
    SpanCoordinates on_comp(R, n, dcomp);
    std::vector<SparseVec> zb = bound;
    zb.insert(zb.end(), local_reps.begin(), local_reps.end());
    SpanCoordinates on_cyc(R, n, zb);
    const std::size_t first_rep = reps.size();
    const auto& prev = complement[{key.first, key.second - 1}];

    for (std::size_t j : idx) {
      SparseVec x{{j, R.one()}};
      auto c = on_comp.coordinates(dt.row(j));
      if (!c) throw std::logic_error("reduction: coboundary outside d(C)");
      for (const auto& [i, v] : *c) x = axpy(R, x, R.neg(v), comp[i]);
      auto zc = on_cyc.coordinates(x);
      if (!zc) throw std::logic_error("reduction: cocycle outside B + L");
      for (const auto& [i, v] : *zc) {
        if (i < bound.size()) {
          for (const auto& [row, w] : prev[i]) th.emplace_back(row, j, R.mul(v, w));
        } else {
          tf.emplace_back(first_rep + (i - bound.size()), j, v);
        }
      }
    }
    for (auto& z : local_reps) {
      reps.push_back(std::move(z));
      ldeg.push_back(key.second);
      lwt.push_back(key.first);
    }
    complement[key] = std::move(comp);
  }

  Reduction red;
  red.big = k;
  red.small = FiniteComplex(R, ldeg, zero(R, reps.size(), reps.size()), lwt);
  red.f = SparseMatrix::from_triplets(R, reps.size(), n, std::move(tf));
  red.g = SparseMatrix::from_columns(R, n, reps);
  red.h = SparseMatrix::from_triplets(R, n, n, std::move(th));
  CheckResult c = check_reduction(red);
  if (!c.ok) throw std::logic_error("reduction onto cohomology failed: " + c.detail);
  return red;
}

Reduction enforce_side_conditions(const Reduction& r) {
  const SparseMatrix& d = r.big.d();
  CheckResult base = check_reduction(r, false);
  if (!base.ok) throw InputError("not a homotopy equivalence: " + base.detail);
  SparseMatrix p = d * r.h + r.h * d;
  SparseMatrix h1 = p * r.h * p;
  Reduction out = r;
  out.h = h1 * d * h1;
  CheckResult c = check_reduction(out);
  if (!c.ok) throw std::logic_error("side conditions not achieved: " + c.detail);
  return out;
}

PerturbedReduction bpl(const Reduction& r, const SparseMatrix& delta, const std::vector<int>& filtration) {
  const Ring& R = r.big.ring();
  const SparseMatrix& dk = r.big.d();
  const std::size_t nk = dk.rows(), nl = r.small.size();
  if (filtration.size() != nk) throw InputError("perturbation: filtration does not match the complex");
  if (delta.rows() != nk || delta.cols() != nk) throw InputError("perturbation: wrong shape");
  SparseMatrix dhat = dk + delta;
  if (!(dhat * dhat).is_zero()) throw InputError("perturbation: (d + delta)^2 != 0");
  for (std::size_t i = 0; i < nk; ++i) {
    for (const auto& [j, v] : delta.row(i))
      if (filtration[i] <= filtration[j]) throw InputError("perturbation: nilpotence not certified (delta)");
    for (const auto& [j, v] : r.h.row(i))
      if (filtration[i] < filtration[j]) throw InputError("perturbation: nilpotence not certified (h)");
  }
  auto [lo, hi] = filtration.empty() ? std::pair{0, 0}
                                     : std::pair{*std::min_element(filtration.begin(), filtration.end()),
                                                 *std::max_element(filtration.begin(), filtration.end())};
  PerturbedReduction out;
  out.bound = static_cast<std::size_t>(hi - lo) + 1;

  // X = delta - delta h delta + (delta h)^2 delta - ...
  SparseMatrix x = zero(R, nk, nk), term = delta;
  const SparseMatrix dh = delta * r.h;
  for (std::size_t i = 0; !term.is_zero(); ++i) {
    if (i >= out.bound) throw std::logic_error("perturbation: X series exceeds the filtration length");
    x = i % 2 ? x - term : x + term;
    ++out.terms;
    term = dh * term;
  }
  out.delta_small = r.f * x * r.g;
  out.d_big = dhat;
  out.d_small = r.small.d() + out.delta_small;
  out.f = r.f - r.f * x * r.h;
  out.g = r.g - r.h * x * r.g;
  out.h = r.h - r.h * x * r.h;
  out.check = check_reduction(out.d_big, out.d_small, out.f, out.g, out.h);
  (void)nl;
  return out;
}

Reduction reduce_algebra(const DGAlgebra& a, bool reversed) {
  std::vector<int> deg;
  for (std::size_t i = 0; i < a.dim(); ++i) deg.push_back(a.degree(i));
  FiniteComplex k(a.ring(), deg, a.differential_matrix());
  return reduce_to_cohomology(k, reversed, {SparseVec{{0, a.ring().one()}}});
}

GradedAlgebra cohomology_algebra(const DGAlgebra& a, const Reduction& r) {
  const Ring& R = a.ring();
  const std::size_t n = r.small.size();
  const std::vector<SparseVec> gcols = r.g.columns();
  std::vector<BasisElement> basis;
  std::set<std::string> used;
  for (std::size_t i = 0; i < n; ++i) {
    std::string name = "[" + a.algebra().name(gcols[i].front().first) + "]";
    if (i == 0) name = "1";
    while (used.count(name)) name += "'";
    used.insert(name);
    basis.push_back({name, r.small.degree(i)});
  }
  std::vector<std::vector<SparseVec>> prod(n, std::vector<SparseVec>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) prod[i][j] = r.f.apply(a.algebra().multiply(gcols[i], gcols[j]));
  GradedAlgebra h(R, std::move(basis), std::move(prod));
  algebra::require_valid(h);
  return h;
}

ColumnReduction column_reduction(const DGAlgebra& a, const Graph& g, const Reduction& r) {
  const Ring& R = a.ring();
  GradedAlgebra h = cohomology_algebra(a, r);
  ColumnReduction out{GraphComplex(a, g), GraphComplex(DGAlgebra(h), g), {}};
  const GraphComplex& K = out.big;
  const GraphComplex& L = out.small;
  const std::vector<SparseVec> f0 = r.f.columns(), g0 = r.g.columns(), h0 = r.h.columns();
  const std::vector<SparseVec> gf0 = (r.g * r.f).columns();
  std::vector<SparseVec> unit(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) unit[i] = {{i, R.one()}};

  Triplets tf, tg, th;
  for (std::size_t col = 0; col < K.size(); ++col) {
    const Generator& gen = K.generator(col);
    std::vector<const SparseVec*> fs;
    for (std::size_t b : gen.tuple) fs.push_back(&f0[b]);
    expand(fs, R, [&](const std::vector<std::size_t>& t, const Scalar& c) {
      tf.emplace_back(L.index_of(gen.s, t), col, c);
    });
    long long passed = gen.p;
    for (std::size_t i = 0; i < gen.tuple.size(); ++i) {
      std::vector<const SparseVec*> hs;
      for (std::size_t k = 0; k < gen.tuple.size(); ++k)
        hs.push_back(k < i ? &gf0[gen.tuple[k]] : k == i ? &h0[gen.tuple[k]] : &unit[gen.tuple[k]]);
      const Scalar sign = sign_of(R, passed);
      expand(hs, R, [&](const std::vector<std::size_t>& t, const Scalar& c) {
        th.emplace_back(K.index_of(gen.s, t), col, R.mul(sign, c));
      });
      passed += a.degree(gen.tuple[i]);
    }
  }
  for (std::size_t col = 0; col < L.size(); ++col) {
    const Generator& gen = L.generator(col);
    std::vector<const SparseVec*> gs;
    for (std::size_t b : gen.tuple) gs.push_back(&g0[b]);
    expand(gs, R, [&](const std::vector<std::size_t>& t, const Scalar& c) {
      tg.emplace_back(K.index_of(gen.s, t), col, c);
    });
  }
  std::vector<int> kp, kq, lp, lq;
  for (const auto& gen : K.generators()) {
    kp.push_back(gen.p);
    kq.push_back(gen.q);
  }
  for (const auto& gen : L.generators()) {
    lp.push_back(gen.p);
    lq.push_back(gen.q);
  }
  Reduction& red = out.reduction;
  red.big = FiniteComplex(R, kq, K.d(), kp);
  red.small = FiniteComplex(R, lq, zero(R, L.size(), L.size()), lp);
  red.f = SparseMatrix::from_triplets(R, L.size(), K.size(), std::move(tf));
  red.g = SparseMatrix::from_triplets(R, K.size(), L.size(), std::move(tg));
  red.h = SparseMatrix::from_triplets(R, K.size(), K.size(), std::move(th));
  return out;
}

std::vector<SparseMatrix> d_operators(const ColumnReduction& cr) {
  const Reduction& r = cr.reduction;
  const SparseMatrix& delta = cr.big.delta();
  std::vector<SparseMatrix> out;
  SparseMatrix t = delta * r.g;
  const std::size_t cap = cr.big.graph().edge_count() + 2;
  for (std::size_t i = 1; !t.is_zero(); ++i) {
    if (i > cap) throw std::logic_error("d_i operators do not terminate");
    SparseMatrix di = r.f * t;
    out.push_back(i % 2 ? di : di.scaled(Scalar(-1)));
    t = delta * (r.h * t);
  }
  while (!out.empty() && out.back().is_zero()) out.pop_back();
  if (out.empty()) out.push_back(zero(cr.small.ring(), cr.small.size(), cr.small.size()));
  return out;
}

namespace {

/// Memoized h lambda_n (g a_1, ..., g a_n) on tuples of cohomology basis indices.
class Merkulov {
 public:
  Merkulov(const DGAlgebra& a, const Reduction& r) : a_(a), r_(r), g_(r.g.columns()) {}

  const SparseVec& h_lambda(const std::vector<std::size_t>& t) {
    auto it = hl_.find(t);
    if (it != hl_.end()) return it->second;
    SparseVec v = t.size() == 1 ? scale(a_.ring(), g_[t[0]], Scalar(-1)) : r_.h.apply(lambda(t));
    return hl_.emplace(t, std::move(v)).first->second;
  }

  SparseVec lambda(const std::vector<std::size_t>& t) {
    const Ring& R = a_.ring();
    const std::size_t n = t.size();
    std::vector<std::pair<std::size_t, Scalar>> acc;
    long long deg_front = 0;
    for (std::size_t p = 1; p < n; ++p) {
      deg_front += r_.small.degree(t[p - 1]);
      std::vector<std::size_t> front(t.begin(), t.begin() + static_cast<long>(p));
      std::vector<std::size_t> back(t.begin() + static_cast<long>(p), t.end());
      // (u (x) v)(x (x) y) = (-1)^{|v||x|} u(x) v(y), |h lambda_k| = 1 - k
      const long long e = static_cast<long long>(p + 1) + static_cast<long long>(n - p + 1) * deg_front;
      const SparseVec u = h_lambda(front);
      const SparseVec& w = h_lambda(back);
      for (auto& [k, v] : a_.algebra().multiply(u, w)) acc.emplace_back(k, R.mul(sign_of(R, e), v));
    }
    return normalize(R, std::move(acc));
  }

 private:
  const DGAlgebra& a_;
  const Reduction& r_;
  std::vector<SparseVec> g_;
  std::map<std::vector<std::size_t>, SparseVec> hl_;
};

void for_each_tuple(std::size_t dim, std::size_t n, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> t(n, 0);
  if (dim == 0) return;
  while (true) {
    fn(t);
    std::size_t k = n;
    while (k > 0 && ++t[k - 1] == dim) t[--k] = 0;
    if (k == 0) return;
  }
}

}  // namespace

SparseVec h_lambda(const DGAlgebra& a, const Reduction& r, const std::vector<std::size_t>& tuple) {
  Merkulov m(a, r);
  return m.h_lambda(tuple);
}

AInfinity merkulov(const DGAlgebra& a, const Reduction& r, int max_arity) {
  if (max_arity < 2) throw InputError("A-infinity structure: arity must be at least 2");
  if (!a.ring().is_field()) throw InputError("A-infinity structure: field coefficients required");
  AInfinity out;
  out.algebra = cohomology_algebra(a, r);
  out.max_arity = max_arity;
  out.m.resize(max_arity + 1);
  Merkulov mk(a, r);
  const std::size_t dim = r.small.size();
  for (int n = 2; n <= max_arity; ++n)
    for_each_tuple(dim, n, [&](const std::vector<std::size_t>& t) {
      SparseVec v = r.f.apply(mk.lambda(t));
      if (!v.empty()) out.m[n].emplace(t, std::move(v));
    });
  return out;
}

CheckResult m2_check(const AInfinity& m, const DGAlgebra& a, const Reduction& r) {
  const std::vector<SparseVec> g = r.g.columns();
  const std::size_t dim = m.algebra.dim();
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      SparseVec expect = r.f.apply(a.algebra().multiply(g[i], g[j]));
      if (m.value({i, j}) != expect)
        return CheckResult::fail("m_2(" + m.algebra.name(i) + "," + m.algebra.name(j) + ") != f(g(a)g(b))");
    }
  // m_1 is the differential induced on cohomology, which is f d g
  if (!(r.f * r.big.d() * r.g).is_zero()) return CheckResult::fail("m_1 != 0");
  return CheckResult::pass();
}

CheckResult stasheff_check(const AInfinity& m, int max_arity) {
  const GradedAlgebra& A = m.algebra;
  const Ring& R = A.ring();
  const std::size_t dim = A.dim();
  for (int n = 2; n <= m.max_arity; ++n)
    for (const auto& [t, v] : m.m[n]) {
      long long deg = 0;
      for (std::size_t b : t) deg += A.degree(b);
      for (const auto& [k, c] : v)
        if (A.degree(k) != deg + 2 - n)
          return CheckResult::fail("m_" + std::to_string(n) + " does not have degree 2 - n");
    }
  const int top = std::min(max_arity, m.max_arity + 1);
  for (int n = 3; n <= top; ++n) {
    std::optional<std::string> bad;
    for_each_tuple(dim, n, [&](const std::vector<std::size_t>& t) {
      if (bad) return;
      std::vector<std::pair<std::size_t, Scalar>> acc;
      for (int s = 2; s <= n - 1; ++s)
        for (int r = 0; r + s <= n; ++r) {
          const int u = n - s - r;
          long long before = 0;
          for (int k = 0; k < r; ++k) before += A.degree(t[k]);
          const long long e = r + static_cast<long long>(s) * u + static_cast<long long>(s) * before;
          std::vector<std::size_t> inner(t.begin() + r, t.begin() + r + s);
          const SparseVec& mid = m.value(inner);
          for (const auto& [b, c] : mid) {
            std::vector<std::size_t> outer(t.begin(), t.begin() + r);
            outer.push_back(b);
            outer.insert(outer.end(), t.begin() + r + s, t.end());
            for (const auto& [k, w] : m.value(outer)) acc.emplace_back(k, R.mul(sign_of(R, e), R.mul(c, w)));
          }
        }
      if (!normalize(R, std::move(acc)).empty()) {
        std::string w;
        for (std::size_t b : t) w += (w.empty() ? "" : ",") + A.name(b);
        bad = "Stasheff identity of arity " + std::to_string(n) + " fails on (" + w + ")";
      }
    });
    if (bad) return CheckResult::fail(*bad);
  }
  return CheckResult::pass();
}

CheckResult shuffle_check(const DGAlgebra& a, const Reduction& r, int max_length) {
  const Ring& R = a.ring();
  const std::size_t dim = r.small.size();
  Merkulov mk(a, r);
  for (int n = 2; n <= max_length; ++n)
    for (int p = 1; p < n; ++p) {
      std::optional<std::string> bad;
      for_each_tuple(dim, n, [&](const std::vector<std::size_t>& t) {
        if (bad) return;
        // shuffles of t[0..p) and t[p..n): choose the positions of the first block
        std::vector<std::pair<std::size_t, Scalar>> acc;
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
          if (std::popcount(mask) != p) continue;
          std::vector<std::size_t> out(n);
          std::size_t i = 0, j = static_cast<std::size_t>(p);
          // each inversion costs the sign of the transposition times the Koszul sign
          long long e = 0, passed_second = 0, passed_count = 0;
          for (int k = 0; k < n; ++k) {
            if (mask >> k & 1) {
              e += static_cast<long long>(r.small.degree(t[i])) * passed_second + passed_count;
              out[k] = t[i++];
            } else {
              passed_second += r.small.degree(t[j]);
              ++passed_count;
              out[k] = t[j++];
            }
          }
          for (const auto& [k, v] : mk.h_lambda(out)) acc.emplace_back(k, R.mul(sign_of(R, e), v));
        }
        if (!normalize(R, std::move(acc)).empty()) {
          std::string w;
          for (std::size_t b : t) w += (w.empty() ? "" : ",") + std::to_string(b);
          bad = "h lambda does not vanish on the shuffle of (" + w + ") at " + std::to_string(p);
        }
      });
      if (bad) return CheckResult::fail(*bad);
    }
  return CheckResult::pass();
}

bool higher_products_vanish(const AInfinity& m) {
  for (int n = 3; n <= m.max_arity; ++n)
    if (!m.m[n].empty()) return false;
  return true;
}

}  // namespace perturb
}  // namespace gcohom
