#include "gcohom/graph_complex.hpp"

#include "json.hpp"

#include <algorithm>
#include <iomanip>
#include <numeric>
#include <set>
#include <sstream>

namespace gcohom {

namespace {

constexpr std::size_t kMaxGenerators = 4'000'000;

using Triplets = std::vector<std::tuple<std::size_t, std::size_t, Scalar>>;

std::size_t ipow(std::size_t b, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

Scalar sign_scalar(const Ring& r, int s) { return s > 0 ? r.one() : r.neg(r.one()); }

/// Sign of the permutation that sorts `v` (distinct values).
int sort_sign(std::vector<std::size_t> v) {
  int sign = 1;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (v[i] > v[j]) sign = -sign;
  return sign;
}

}  // namespace

namespace graphcohom {

int koszul_sign(const std::vector<int>& degrees, const std::vector<std::size_t>& perm) {
  long long e = 0;
  for (std::size_t x = 0; x < perm.size(); ++x)
    for (std::size_t y = x + 1; y < perm.size(); ++y)
      if (perm[x] > perm[y]) e += static_cast<long long>(degrees[perm[x]]) * degrees[perm[y]];
  return e % 2 ? -1 : 1;
}

int edge_sign(EdgeMask s, std::size_t alpha) {
  EdgeMask before = alpha == 0 ? 0 : (s & ((EdgeMask(1) << alpha) - 1));
  return graph::popcount(before) % 2 ? -1 : 1;
}

}  // namespace graphcohom

GraphComplex::GraphComplex(DGAlgebra alg, Graph g) : alg_(std::move(alg)), graph_(std::move(g)) {
  if (graph_.edge_count() > 24) throw ResourceLimitError("graph complex: too many edges");
  enumerate();
  build_delta();
  build_d();
}

void GraphComplex::enumerate() {
  const EdgeMask all = graph_.all_edges();
  std::vector<std::pair<std::vector<std::size_t>, EdgeMask>> keyed;
  for (EdgeMask s = 0;; ++s) {
    keyed.push_back({graph::members(s), s});
    if (s == all) break;
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    return a.first < b.first;
  });
  const std::size_t dim = alg_.dim();
  std::size_t total = 0;
  for (const auto& [m, s] : keyed) {
    subsets_.push_back(s);
    auto c = graph::components(graph_, s);
    total += ipow(dim, c.count);
    if (total > kMaxGenerators) throw ResourceLimitError("graph complex: more than 4,000,000 generators");
    comps_.emplace(s, std::move(c));
  }
  gens_.reserve(total);
  for (EdgeMask s : subsets_) {
    offset_[s] = gens_.size();
    const int l = comps_.at(s).count;
    const std::size_t block = ipow(dim, l);
    for (std::size_t idx = 0; idx < block; ++idx) {
      Generator gen;
      gen.s = s;
      gen.p = graph::popcount(s);
      gen.tuple.assign(l, 0);
      std::size_t x = idx;
      for (int k = l - 1; k >= 0; --k) {
        gen.tuple[k] = x % dim;
        x /= dim;
      }
      for (std::size_t b : gen.tuple) gen.q += alg_.degree(b);
      gens_.push_back(std::move(gen));
    }
  }
}

std::size_t GraphComplex::offset(EdgeMask s) const { return offset_.at(s); }

const ComponentLabeling& GraphComplex::components(EdgeMask s) const { return comps_.at(s); }

std::size_t GraphComplex::index_of(EdgeMask s, const std::vector<std::size_t>& tuple) const {
  std::size_t idx = 0;
  for (std::size_t b : tuple) idx = idx * alg_.dim() + b;
  return offset_.at(s) + idx;
}

void GraphComplex::build_delta() {
  const Ring& R = ring();
  const GradedAlgebra& A = alg_.algebra();
  Triplets t;
  for (std::size_t col = 0; col < gens_.size(); ++col) {
    const Generator& g = gens_[col];
    const ComponentLabeling& cs = comps_.at(g.s);
    std::vector<int> degs;
    for (std::size_t b : g.tuple) degs.push_back(A.degree(b));
    for (std::size_t alpha = 0; alpha < graph_.edge_count(); ++alpha) {
      if (graph::contains(g.s, alpha)) continue;
      const EdgeMask s2 = g.s | (EdgeMask(1) << alpha);
      const int se = graphcohom::edge_sign(g.s, alpha);
      const int th = cs.label[graph_.edge(alpha).u], hh = cs.label[graph_.edge(alpha).v];
      if (th == hh) {
        t.emplace_back(index_of(s2, g.tuple), col, sign_scalar(R, se));
        continue;
      }
      // Target arrangement: components of [G:s+alpha] by smallest vertex, the
      // merged slot holding a_t followed by a_h.
      const ComponentLabeling& c2 = comps_.at(s2);
      std::vector<std::size_t> perm;
      std::size_t merged_slot = 0;
      for (int j = 0; j < c2.count; ++j) {
        if (c2.label[cs.smallest[th]] == j) {
          merged_slot = j;
          perm.push_back(th);
          perm.push_back(hh);
          continue;
        }
        for (int o = 0; o < cs.count; ++o)
          if (c2.label[cs.smallest[o]] == j) perm.push_back(o);
      }
      const int sk = graphcohom::koszul_sign(degs, perm);
      std::vector<std::size_t> nt;
      for (std::size_t k = 0, j = 0; k < perm.size(); ++k, ++j) {
        if (j == merged_slot) {
          nt.push_back(0);
          ++k;
          continue;
        }
        nt.push_back(g.tuple[perm[k]]);
      }
      for (const auto& [b, c] : A.product(g.tuple[th], g.tuple[hh])) {
        nt[merged_slot] = b;
        t.emplace_back(index_of(s2, nt), col, R.mul(sign_scalar(R, se * sk), c));
      }
    }
  }
  delta_ = SparseMatrix::from_triplets(R, gens_.size(), gens_.size(), std::move(t));
}

void GraphComplex::build_d() {
  const Ring& R = ring();
  Triplets t;
  if (!alg_.has_zero_differential()) {
    for (std::size_t col = 0; col < gens_.size(); ++col) {
      const Generator& g = gens_[col];
      int pre = g.p;
      std::vector<std::size_t> nt = g.tuple;
      for (std::size_t k = 0; k < g.tuple.size(); ++k) {
        for (const auto& [b, c] : alg_.diff(g.tuple[k])) {
          nt[k] = b;
          t.emplace_back(index_of(g.s, nt), col, R.mul(sign_scalar(R, pre % 2 ? -1 : 1), c));
        }
        nt[k] = g.tuple[k];
        pre += alg_.degree(g.tuple[k]);
      }
    }
  }
  d_ = SparseMatrix::from_triplets(R, gens_.size(), gens_.size(), std::move(t));
}

Bicomplex GraphComplex::bicomplex() const {
  Bicomplex b;
  b.ring = ring();
  for (const auto& g : gens_) {
    b.p.push_back(g.p);
    b.q.push_back(g.q);
  }
  b.vertical = d_;
  b.horizontal = delta_;
  return b;
}

std::string GraphComplex::describe(std::size_t i) const {
  const Generator& g = gens_[i];
  std::ostringstream os;
  os << "e{";
  bool first = true;
  for (std::size_t e : graph::members(g.s)) {
    os << (first ? "" : ",") << graph_.edge(e).u + 1 << graph_.edge(e).v + 1;
    first = false;
  }
  os << "}";
  for (std::size_t k = 0; k < g.tuple.size(); ++k) os << (k ? "⊗" : "·") << alg_.algebra().name(g.tuple[k]);
  return os.str();
}

Poly2 BettiTable::poincare() const {
  Poly2 p;
  for (const auto& [k, r] : table.rank) p.add_term(static_cast<long long>(r), k.first, k.second);
  return p;
}

namespace graphcohom {

BettiTable cohomology(const GraphComplex& c) {
  std::vector<int> p, q;
  for (const auto& g : c.generators()) {
    p.push_back(g.p);
    q.push_back(g.q);
  }
  FiniteComplex fc(c.ring(), p, c.delta(), q);
  return BettiTable{complexes::cohomology(fc)};
}

std::map<int, std::size_t> total_cohomology(const GraphComplex& c) {
  if (!c.ring().is_field()) throw InputError("total cohomology of DG inputs needs field coefficients");
  return complexes::cohomology(c.bicomplex().total()).by_degree();
}

Poincare poincare(const GraphComplex& c, const BettiTable& b) {
  Poincare out;
  for (const auto& g : c.generators()) out.complex.add_term(1, g.q, g.p);
  out.cohomology = b.poincare();
  return out;
}

Poly2 subset_expansion(const GradedAlgebra& a, const Graph& g) {
  Poly2 pa = a.poincare();
  Poly2 total;
  for (EdgeMask s = 0;; ++s) {
    int l = graph::components(g, s).count;
    Poly2 term = pa.pow(static_cast<unsigned>(l));
    total = graph::popcount(s) % 2 ? total - term : total + term;
    if (s == g.all_edges()) break;
  }
  return total;
}

namespace {

FiniteComplex delta_complex(const GraphComplex& c, int degree_shift = 0, int sign = 1) {
  std::vector<int> p, q;
  for (const auto& g : c.generators()) {
    p.push_back(g.p + degree_shift);
    q.push_back(g.q);
  }
  SparseMatrix d = sign > 0 ? c.delta() : c.delta().scaled(Scalar(-1));
  return FiniteComplex(c.ring(), p, d, q);
}

FiniteComplex over(const FiniteComplex& c, Ring r) {
  return FiniteComplex(r, c.degrees(), coeff::change_ring(c.d(), r), c.weights());
}

/// Every column has exactly one entry, +-1, in distinct rows.
bool signed_coordinate_map(const SparseMatrix& m) {
  std::vector<int> count(m.cols(), 0);
  std::set<std::size_t> rows;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (m.row(i).size() > 1) return false;
    for (const auto& [j, v] : m.row(i)) {
      if (v != 1 && v != -1 && !(m.ring().kind() == RingKind::Prime && v == m.ring().characteristic() - 1))
        return false;
      ++count[j];
    }
  }
  return std::all_of(count.begin(), count.end(), [](int x) { return x == 1; });
}

}  // namespace

CheckResult deletion_contraction(const DGAlgebra& a, const Graph& g, std::size_t alpha) {
  if (alpha >= g.edge_count()) return CheckResult::fail("edge index out of range");
  if (g.edge(alpha).is_loop()) return CheckResult::fail("cannot contract a loop");
  const Ring& R = a.ring();
  Contraction con = graph::contract_edge(g, alpha);
  Graph del = graph::delete_edge(g, alpha);
  GraphComplex cg(a, g), cc(a, con.graph), cd(a, del);
  const EdgeMask abit = EdgeMask(1) << alpha;

  Triplets ti, tp, ts;
  // injection C(G/alpha) -> C(G): e_s' . x -> e_alpha e_s'' . x
  for (std::size_t j = 0; j < cc.size(); ++j) {
    const Generator& gen = cc.generator(j);
    EdgeMask pre = 0;
    std::vector<std::size_t> images;
    for (std::size_t e = 0; e < g.edge_count(); ++e)
      if (con.edge_map[e] && graph::contains(gen.s, *con.edge_map[e])) {
        pre |= EdgeMask(1) << e;
        images.push_back(*con.edge_map[e]);
      }
    int sign = sort_sign(images) * edge_sign(pre, alpha);
    std::size_t row = cg.index_of(pre | abit, gen.tuple);
    ti.emplace_back(row, j, sign_scalar(R, sign));
  }
  // projection C(G) -> C(G - alpha) and its section
  auto squeeze = [&](EdgeMask s) {
    EdgeMask low = s & (abit - 1);
    return low | ((s >> (alpha + 1)) << alpha);
  };
  for (std::size_t j = 0; j < cg.size(); ++j) {
    const Generator& gen = cg.generator(j);
    if (graph::contains(gen.s, alpha)) continue;
    std::size_t row = cd.index_of(squeeze(gen.s), gen.tuple);
    tp.emplace_back(row, j, R.one());
    ts.emplace_back(j, row, R.one());
  }
  SparseMatrix i = SparseMatrix::from_triplets(R, cg.size(), cc.size(), ti);
  SparseMatrix p = SparseMatrix::from_triplets(R, cd.size(), cg.size(), tp);
  SparseMatrix sigma = SparseMatrix::from_triplets(R, cg.size(), cd.size(), ts);

  FiniteComplex A = delta_complex(cc, 1, -1), B = delta_complex(cg), C = delta_complex(cd);
  if (!R.is_field()) {
    // Both maps are signed coordinate maps, so exactness over Z follows from
    // exactness of the same sequence over Q.
    if (!signed_coordinate_map(i) || !signed_coordinate_map(p.transpose()))
      return CheckResult::fail("maps are not signed coordinate maps");
    Ring q = Ring::rationals();
    return complexes::verify_ses(over(A, q), over(B, q), over(C, q), coeff::change_ring(i, q),
                                 coeff::change_ring(p, q), coeff::change_ring(sigma, q));
  }
  return complexes::verify_ses(A, B, C, i, p, sigma);
}

ContractionIso contraction_iso(const GraphComplex& c, EdgeMask s) {
  const Graph& g = c.graph();
  Contraction con = graph::contract(g, s);
  ContractionIso out{{}, {}, GraphComplex(c.algebra(), con.graph)};
  const Ring& R = c.ring();
  Triplets t;
  for (std::size_t j = 0; j < c.size(); ++j) {
    const Generator& gen = c.generator(j);
    if ((gen.s & s) != s) continue;
    const EdgeMask r = gen.s & ~s;
    // e_t = eps e_r e_s
    long long swaps = 0;
    for (std::size_t x : graph::members(r))
      for (std::size_t y : graph::members(s))
        if (x > y) ++swaps;
    EdgeMask image = 0;
    std::vector<std::size_t> images;
    for (std::size_t e : graph::members(r)) {
      images.push_back(*con.edge_map[e]);
      image |= EdgeMask(1) << *con.edge_map[e];
    }
    int sign = (swaps % 2 ? -1 : 1) * sort_sign(images);
    t.emplace_back(out.target.index_of(image, gen.tuple), out.source.size(), sign_scalar(R, sign));
    out.source.push_back(j);
  }
  out.map = SparseMatrix::from_triplets(R, out.target.size(), out.source.size(), std::move(t));
  return out;
}

CheckResult verify_contraction_iso(const GraphComplex& c, EdgeMask s) {
  ContractionIso iso = contraction_iso(c, s);
  if (iso.source.size() != iso.target.size()) return CheckResult::fail("generator counts differ");
  if (!signed_coordinate_map(iso.map)) return CheckResult::fail("map is not a signed bijection of generators");
  std::vector<char> in_source(c.size(), 0);
  for (std::size_t j : iso.source) in_source[j] = 1;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!in_source[i])
      for (const auto& [j, v] : c.delta().row(i))
        if (in_source[j]) return CheckResult::fail("e_s-multiples are not a subcomplex");
  const SparseMatrix mt = iso.map.transpose();
  for (std::size_t k = 0; k < iso.source.size(); ++k) {
    const Generator& a = c.generator(iso.source[k]);
    for (const auto& [row, v] : mt.row(k)) {
      const Generator& b = iso.target.generator(row);
      if (a.q != b.q || a.p != b.p + graph::popcount(s)) return CheckResult::fail("bidegree not preserved");
    }
  }
  SparseMatrix dsub = c.delta().submatrix(iso.source, iso.source);
  if (!(iso.map * dsub == iso.target.delta() * iso.map)) return CheckResult::fail("map does not commute with delta");
  SparseMatrix vsub = c.d().submatrix(iso.source, iso.source);
  SparseMatrix rhs = iso.target.d() * iso.map;
  if (graph::popcount(s) % 2) rhs = rhs.scaled(Scalar(-1));
  if (!(iso.map * vsub == rhs)) return CheckResult::fail("map does not commute with d up to (-1)^|s|");
  return CheckResult::pass();
}

CheckResult quotient_cross_check(const GraphComplex& c) {
  const Ring& R = c.ring();
  if (!R.is_field()) return CheckResult::fail("quotient cross-check needs a field");
  const Graph& g = c.graph();
  const GradedAlgebra& A = c.algebra().algebra();
  const std::size_t dim = A.dim();
  const int n = g.vertex_count();
  const std::size_t block = ipow(dim, n);
  const std::size_t nsub = std::size_t(1) << g.edge_count();
  const std::size_t total = nsub * block;
  if (total > 20000) throw ResourceLimitError("quotient cross-check: ambient space too large");

  std::vector<std::vector<std::size_t>> tuples(block, std::vector<std::size_t>(n));
  std::vector<int> qdeg(block, 0);
  for (std::size_t x = 0; x < block; ++x) {
    std::size_t y = x;
    for (int k = n - 1; k >= 0; --k) {
      tuples[x][k] = y % dim;
      y /= dim;
    }
    for (std::size_t b : tuples[x]) qdeg[x] += A.degree(b);
  }
  auto tuple_index = [&](const std::vector<std::size_t>& t) {
    std::size_t idx = 0;
    for (std::size_t b : t) idx = idx * dim + b;
    return idx;
  };
  auto key = [&](std::size_t s, std::size_t x) { return GradeKey{qdeg[x], graph::popcount(s)}; };

  // a . b[i] in A^{(x)n}
  auto times_at = [&](std::size_t x, std::size_t b, int i) {
    std::vector<std::pair<std::size_t, Scalar>> out;
    const auto& t = tuples[x];
    long long later = 0;
    for (int k = i + 1; k < n; ++k) later += A.degree(t[k]);
    Scalar sign = (later * A.degree(b)) % 2 ? R.neg(R.one()) : R.one();
    std::vector<std::size_t> nt = t;
    for (const auto& [k, v] : A.product(t[i], b)) {
      nt[i] = k;
      out.emplace_back(tuple_index(nt), R.mul(sign, v));
    }
    return out;
  };

  std::map<GradeKey, RowEchelon> rel;
  auto rel_at = [&](GradeKey k) -> RowEchelon& {
    auto it = rel.find(k);
    if (it == rel.end()) it = rel.emplace(k, RowEchelon(R, total)).first;
    return it->second;
  };
  for (std::size_t s = 0; s < nsub; ++s)
    for (std::size_t alpha = 0; alpha < g.edge_count(); ++alpha) {
      if (graph::contains(s, alpha)) continue;
      const Edge& e = g.edge(alpha);
      if (e.is_loop()) continue;
      const std::size_t s2 = s | (std::size_t(1) << alpha);
      for (std::size_t x = 0; x < block; ++x)
        for (std::size_t b = 0; b < dim; ++b) {
          std::vector<std::pair<std::size_t, Scalar>> terms;
          for (auto& [idx, v] : times_at(x, b, e.u)) terms.emplace_back(s2 * block + idx, v);
          for (auto& [idx, v] : times_at(x, b, e.v)) terms.emplace_back(s2 * block + idx, R.neg(v));
          SparseVec r = normalize(R, std::move(terms));
          if (!r.empty()) rel_at({qdeg[x] + A.degree(b), graph::popcount(s2)}).insert(std::move(r));
        }
    }

  std::map<GradeKey, std::size_t> ambient;
  for (std::size_t s = 0; s < nsub; ++s)
    for (std::size_t x = 0; x < block; ++x) ++ambient[key(s, x)];
  std::map<GradeKey, std::size_t> sub_dims;
  for (const auto& gen : c.generators()) ++sub_dims[{gen.q, gen.p}];
  for (const auto& [k, a] : ambient) {
    std::size_t r = rel.count(k) ? rel.at(k).rank() : 0;
    std::size_t expect = sub_dims.count(k) ? sub_dims.at(k) : 0;
    if (a - r != expect)
      return CheckResult::fail("dimension mismatch at (q=" + std::to_string(k.first) + ", p=" +
                               std::to_string(k.second) + "): quotient " + std::to_string(a - r) + ", subsets " +
                               std::to_string(expect));
  }

  // delta on the quotient: left multiplication by the sum of the e_alpha
  std::map<GradeKey, std::size_t> qrank;
  for (const auto& [k, a] : ambient) {
    GradeKey k1{k.first, k.second + 1};
    if (!ambient.count(k1)) {
      qrank[k] = 0;
      continue;
    }
    RowEchelon e = rel.count(k1) ? rel.at(k1) : RowEchelon(R, total);
    const std::size_t base = e.rank();
    for (std::size_t s = 0; s < nsub; ++s) {
      if (graph::popcount(s) != k.second) continue;
      for (std::size_t x = 0; x < block; ++x) {
        if (qdeg[x] != k.first) continue;
        std::vector<std::pair<std::size_t, Scalar>> terms;
        for (std::size_t alpha = 0; alpha < g.edge_count(); ++alpha)
          if (!graph::contains(s, alpha))
            terms.emplace_back((s | (std::size_t(1) << alpha)) * block + x, sign_scalar(R, edge_sign(s, alpha)));
        e.insert(normalize(R, std::move(terms)));
      }
    }
    qrank[k] = e.rank() - base;
  }
  BettiTable betti = cohomology(c);
  for (const auto& [k, a] : ambient) {
    std::size_t r = rel.count(k) ? rel.at(k).rank() : 0;
    std::size_t prev = qrank.count({k.first, k.second - 1}) ? qrank.at({k.first, k.second - 1}) : 0;
    std::size_t h = a - r - qrank[k] - prev;
    if (h != betti.rank(k.first, k.second))
      return CheckResult::fail("cohomology mismatch at (q=" + std::to_string(k.first) + ", p=" +
                               std::to_string(k.second) + ")");
  }
  return CheckResult::pass();
}

std::string text_report(const GraphComplex& c, const BettiTable& b) {
  std::ostringstream os;
  int maxq = 0, maxp = static_cast<int>(c.graph().edge_count());
  for (const auto& gen : c.generators()) maxq = std::max(maxq, gen.q);
  os << "graph " << c.graph().to_string() << ", ring " << c.ring().name() << ", algebra dim " << c.algebra().dim()
     << "\n";
  os << "rank H^{q,p}\n";
  os << std::setw(6) << "q\\p";
  for (int p = 0; p <= maxp; ++p) os << std::setw(6) << p;
  os << "\n";
  for (int q = 0; q <= maxq; ++q) {
    os << std::setw(6) << q;
    for (int p = 0; p <= maxp; ++p) os << std::setw(6) << b.rank(q, p);
    os << "\n";
  }
  if (!c.ring().is_field()) {
    os << "torsion:";
    if (b.table.torsion.empty()) os << " none";
    for (const auto& [k, f] : b.table.torsion) {
      os << " (q=" << k.first << ",p=" << k.second << "):";
      for (const auto& x : f) os << " Z/" << x.get_str();
    }
    os << "\n";
  }
  Poincare pp = poincare(c, b);
  os << "P_cohomology(t,u) = " << pp.cohomology.to_string() << "\n";
  os << "P_complex(t,u) = " << pp.complex.to_string() << "\n";
  os << "P(t,-1) = " << pp.cohomology.at_u(-1).to_string() << "\n";
  return os.str();
}

std::string json_report(const GraphComplex& c, const BettiTable& b) {
  nlohmann::ordered_json j;
  j["graph"] = c.graph().to_string();
  j["ring"] = c.ring().name();
  j["ranks"] = nlohmann::ordered_json::array();
  for (const auto& [k, r] : b.table.rank) {
    nlohmann::ordered_json e;
    e["q"] = k.first;
    e["p"] = k.second;
    e["rank"] = r;
    e["torsion"] = nlohmann::ordered_json::array();
    if (auto it = b.table.torsion.find(k); it != b.table.torsion.end())
      for (const auto& x : it->second) e["torsion"].push_back(x.get_str());
    j["ranks"].push_back(e);
  }
  Poincare pp = poincare(c, b);
  j["poincare"] = pp.cohomology.to_string();
  j["poincare_complex"] = pp.complex.to_string();
  j["euler"] = pp.cohomology.at_u(-1).to_string();
  return j.dump(2);
}

}  // namespace graphcohom
}  // namespace gcohom
