#include "gcohom/simplicial.hpp"

#include "gcohom/graph_complex.hpp"
#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace gcohom {

namespace {

using Triplets = std::vector<std::tuple<std::size_t, std::size_t, Scalar>>;

std::vector<int> identity_surjection(int m) {
  std::vector<int> s(m + 1);
  for (int k = 0; k <= m; ++k) s[k] = k;
  return s;
}

bool valid_surjection(const std::vector<int>& s) {
  if (s.empty() || s[0] != 0) return false;
  for (std::size_t k = 1; k < s.size(); ++k)
    if (s[k] != s[k - 1] && s[k] != s[k - 1] + 1) return false;
  return true;
}

Scalar alternating(const Ring& r, int i) { return i % 2 ? r.neg(r.one()) : r.one(); }

}  // namespace

SimplexRef nondegenerate(std::size_t id, int dim) { return SimplexRef{id, identity_surjection(dim)}; }

SimplicialSet::SimplicialSet(std::vector<std::size_t> counts, std::vector<std::vector<std::vector<SimplexRef>>> faces)
    : counts_(std::move(counts)), faces_(std::move(faces)) {
  while (!counts_.empty() && counts_.back() == 0) counts_.pop_back();
  faces_.resize(counts_.size());
  offsets_.assign(1, 0);
  for (std::size_t c : counts_) offsets_.push_back(offsets_.back() + c);
  check_identities();
}

int SimplicialSet::dim_of(std::size_t g) const {
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), g);
  return static_cast<int>(it - offsets_.begin()) - 1;
}

SimplexRef SimplicialSet::face(const SimplexRef& s, int i) const {
  const int m = s.dim();
  if (m < 1 || i < 0 || i > m) throw InputError("simplicial set: face index out of range");
  std::vector<int> c;
  c.reserve(m);
  for (int k = 0; k <= m; ++k)
    if (k != i) c.push_back(s.sigma[k]);
  const int v = s.sigma[i];
  const bool hit = (i > 0 && s.sigma[i - 1] == v) || (i < m && s.sigma[i + 1] == v);
  if (hit) return SimplexRef{s.id, std::move(c)};
  // sigma d_i misses v, so it factors as d_v followed by a surjection onto [r-1]
  const SimplexRef& f = faces_[s.base_dim()][s.id][v];
  std::vector<int> out(m);
  for (int k = 0; k < m; ++k) out[k] = f.sigma[c[k] < v ? c[k] : c[k] - 1];
  return SimplexRef{f.id, std::move(out)};
}

void SimplicialSet::check_identities() const {
  for (int k = 1; k <= dimension(); ++k) {
    if (faces_[k].size() != counts_[k]) throw InputError("simplicial set: face table size mismatch");
    for (std::size_t x = 0; x < counts_[k]; ++x) {
      if (faces_[k][x].size() != static_cast<std::size_t>(k + 1))
        throw InputError("simplicial set: wrong number of faces");
      for (const SimplexRef& f : faces_[k][x])
        if (f.dim() != k - 1 || !valid_surjection(f.sigma) || f.id >= count(f.base_dim()))
          throw InputError("simplicial set: malformed face of simplex " + std::to_string(x) + " in dimension " +
                           std::to_string(k));
    }
  }
  for (int k = 2; k <= dimension(); ++k)
    for (std::size_t x = 0; x < counts_[k]; ++x) {
      const SimplexRef s = nondegenerate(x, k);
      for (int j = 1; j <= k; ++j)
        for (int i = 0; i < j; ++i)
          if (face(face(s, j), i) != face(face(s, i), j - 1))
            throw InputError("simplicial set: d_" + std::to_string(i) + " d_" + std::to_string(j) + " != d_" +
                             std::to_string(j - 1) + " d_" + std::to_string(i) + " on simplex " + std::to_string(x) +
                             " of dimension " + std::to_string(k));
    }
}

SparseMatrix SimplicialSet::coboundary(Ring ring) const {
  Triplets t;
  for (int k = 1; k <= dimension(); ++k)
    for (std::size_t x = 0; x < counts_[k]; ++x)
      for (int i = 0; i <= k; ++i) {
        const SimplexRef& f = faces_[k][x][i];
        if (f.nondegenerate()) t.emplace_back(global(k, x), global(k - 1, f.id), alternating(ring, i));
      }
  return SparseMatrix::from_triplets(ring, size(), size(), std::move(t));
}

void SimplicialSet::set_coordinates(int factors, std::vector<std::vector<std::vector<SimplexRef>>> coords) {
  if (coords.size() != counts_.size()) throw InputError("simplicial set: coordinate table size mismatch");
  for (std::size_t k = 0; k < coords.size(); ++k)
    if (coords[k].size() != counts_[k]) throw InputError("simplicial set: coordinate table size mismatch");
  factors_ = factors;
  coords_ = std::move(coords);
}

std::size_t SimplicialSubset::size() const { return static_cast<std::size_t>(std::count(member.begin(), member.end(), 1)); }

namespace simplicial {

SimplicialSet from_complex(const std::vector<std::vector<long>>& facets) {
  if (facets.empty()) throw InputError("complex: no facets");
  std::vector<std::set<std::vector<long>>> by_dim;
  for (std::size_t f = 0; f < facets.size(); ++f) {
    std::vector<long> v = facets[f];
    std::sort(v.begin(), v.end());
    if (v.empty()) throw InputError("facets[" + std::to_string(f) + "]: empty facet");
    if (std::adjacent_find(v.begin(), v.end()) != v.end())
      throw InputError("facets[" + std::to_string(f) + "]: repeated vertex");
    if (v.size() > 16) throw ResourceLimitError("facets[" + std::to_string(f) + "]: more than 16 vertices");
    const std::size_t k = v.size();
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
      std::vector<long> sub;
      for (std::size_t b = 0; b < k; ++b)
        if (mask >> b & 1) sub.push_back(v[b]);
      if (by_dim.size() < sub.size()) by_dim.resize(sub.size());
      by_dim[sub.size() - 1].insert(std::move(sub));
    }
  }
  std::vector<std::map<std::vector<long>, std::size_t>> index(by_dim.size());
  std::vector<std::size_t> counts;
  for (std::size_t d = 0; d < by_dim.size(); ++d) {
    std::size_t n = 0;
    for (const auto& s : by_dim[d]) index[d][s] = n++;
    counts.push_back(n);
  }
  std::vector<std::vector<std::vector<SimplexRef>>> faces(by_dim.size());
  for (std::size_t d = 1; d < by_dim.size(); ++d)
    for (const auto& s : by_dim[d]) {
      std::vector<SimplexRef> fs;
      for (std::size_t i = 0; i <= d; ++i) {
        std::vector<long> f = s;
        f.erase(f.begin() + static_cast<long>(i));
        fs.push_back(nondegenerate(index[d - 1].at(f), static_cast<int>(d) - 1));
      }
      faces[d].push_back(std::move(fs));
    }
  return SimplicialSet(std::move(counts), std::move(faces));
}

std::vector<std::string> builtin_names() { return {"circle", "sphere2", "interval", "point", "torus"}; }

SimplicialSet builtin(std::string_view name) {
  if (name == "point") return from_complex({{0}});
  if (name == "interval") return from_complex({{0, 1}});
  if (name == "circle") return from_complex({{0, 1}, {1, 2}, {0, 2}});
  if (name == "sphere2") return from_complex({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
  if (name == "torus") return power(builtin("circle"), 2);
  throw InputError("complex: unknown builtin '" + std::string(name) + "'");
}

SimplicialSet from_json(std::string_view text) {
  using json = nlohmann::json;
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError(std::string("complex config: syntax error: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("facets")) throw InputError("complex config: missing field 'facets'");
  const json& fs = doc["facets"];
  if (!fs.is_array()) throw InputError("complex config: 'facets' must be an array");
  std::vector<std::vector<long>> facets;
  for (std::size_t f = 0; f < fs.size(); ++f) {
    if (!fs[f].is_array()) throw InputError("facets[" + std::to_string(f) + "]: expected an array of vertices");
    std::vector<long> v;
    for (std::size_t k = 0; k < fs[f].size(); ++k) {
      if (!fs[f][k].is_number_integer())
        throw InputError("facets[" + std::to_string(f) + "][" + std::to_string(k) + "]: expected an integer");
      v.push_back(fs[f][k].get<long>());
    }
    facets.push_back(std::move(v));
  }
  return from_complex(facets);
}

SimplicialSet load(const std::string& spec) {
  if (spec.rfind("builtin:", 0) == 0) return builtin(spec.substr(8));
  std::ifstream in(spec);
  if (!in) return builtin(spec);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

namespace {

struct Option {
  std::size_t id;
  std::vector<int> sigma;
  std::uint64_t jumps;
};

std::vector<long> encode(const std::vector<SimplexRef>& comps) {
  std::vector<long> key;
  for (const auto& c : comps) {
    key.push_back(static_cast<long>(c.id));
    key.push_back(static_cast<long>(c.sigma.size()));
    key.insert(key.end(), c.sigma.begin(), c.sigma.end());
  }
  return key;
}

}  // namespace

SimplicialSet power(const SimplicialSet& x, int n, std::size_t cap) {
  if (n < 1) throw InputError("power: exponent must be at least 1");
  const int top = n * x.dimension();
  if (top > 62) throw ResourceLimitError("power: dimension too large");
  std::vector<std::vector<std::vector<SimplexRef>>> coords(top + 1);
  std::vector<std::map<std::vector<long>, std::size_t>> index(top + 1);
  std::size_t total = 0;

  for (int m = 0; m <= top; ++m) {
    // all degeneracies of nondegenerate simplices of X into dimension m
    std::vector<Option> opts;
    for (int r = 0; r <= std::min(m, x.dimension()); ++r)
      for (std::size_t id = 0; id < x.count(r); ++id)
        for (std::uint64_t j = 0; j < (std::uint64_t(1) << m); ++j) {
          if (std::popcount(j) != r) continue;
          std::vector<int> s(m + 1, 0);
          for (int k = 0; k < m; ++k) s[k + 1] = s[k] + static_cast<int>(j >> k & 1);
          opts.push_back({id, std::move(s), j});
        }
    const std::uint64_t full = (std::uint64_t(1) << m) - 1;
    std::vector<SimplexRef> cur(n);
    auto rec = [&](auto&& self, int c, std::uint64_t covered) -> void {
      if (c == n) {
        if (covered != full) return;
        if (++total > cap)
          throw ResourceLimitError("power: more than " + std::to_string(cap) + " nondegenerate simplices");
        index[m][encode(cur)] = coords[m].size();
        coords[m].push_back(cur);
        return;
      }
      for (const Option& o : opts) {
        cur[c] = SimplexRef{o.id, o.sigma};
        self(self, c + 1, covered | o.jumps);
      }
    };
    rec(rec, 0, 0);
  }

  std::vector<std::size_t> counts(top + 1);
  std::vector<std::vector<std::vector<SimplexRef>>> faces(top + 1);
  for (int m = 0; m <= top; ++m) counts[m] = coords[m].size();
  for (int m = 1; m <= top; ++m)
    for (const auto& comps : coords[m]) {
      std::vector<SimplexRef> fs;
      for (int i = 0; i <= m; ++i) {
        std::vector<SimplexRef> rho(n);
        for (int c = 0; c < n; ++c) rho[c] = x.face(comps[c], i);
        // common degeneracies of the face
        std::vector<char> common(m, 0);
        int ncommon = 0;
        for (int j = 0; j + 1 < m; ++j) {
          bool all = true;
          for (int c = 0; c < n && all; ++c) all = rho[c].sigma[j] == rho[c].sigma[j + 1];
          if (all) {
            common[j] = 1;
            ++ncommon;
          }
        }
        std::vector<int> tau(m, 0);
        for (int k = 1; k < m; ++k) tau[k] = tau[k - 1] + (common[k - 1] ? 0 : 1);
        for (auto& r : rho) {
          std::vector<int> s;
          for (int k = 0; k < m; ++k)
            if (k == 0 || !common[k - 1]) s.push_back(r.sigma[k]);
          r.sigma = std::move(s);
        }
        fs.push_back(SimplexRef{index[m - 1 - ncommon].at(encode(rho)), std::move(tau)});
      }
      faces[m].push_back(std::move(fs));
    }
  SimplicialSet out(std::move(counts), std::move(faces));
  coords.resize(out.dimension() + 1);
  out.set_coordinates(n, std::move(coords));
  return out;
}

SimplicialSubset everything(const SimplicialSet& x) { return SimplicialSubset{std::vector<char>(x.size(), 1)}; }
SimplicialSubset nothing(const SimplicialSet& x) { return SimplicialSubset{std::vector<char>(x.size(), 0)}; }

namespace {

/// Simplices whose coordinates are constant on every class of `label`.
SimplicialSubset coordinate_equalities(const SimplicialSet& xn, const std::vector<std::pair<int, int>>& pairs) {
  SimplicialSubset z{std::vector<char>(xn.size(), 0)};
  for (int k = 0; k <= xn.dimension(); ++k)
    for (std::size_t x = 0; x < xn.count(k); ++x) {
      const auto& c = xn.coordinates(k, x);
      bool in = true;
      for (auto [i, j] : pairs) in = in && c[i] == c[j];
      z.member[xn.global(k, x)] = in;
    }
  return z;
}

void require_power(const SimplicialSet& xn, int i, int j) {
  if (xn.factors() == 0) throw InputError("diagonal: not a cartesian power");
  if (i == j) throw InputError("diagonal: coordinates must differ");
  if (i < 0 || j < 0 || i >= xn.factors() || j >= xn.factors()) throw InputError("diagonal: coordinate out of range");
}

}  // namespace

SimplicialSubset diagonal(const SimplicialSet& xn, int i, int j) {
  require_power(xn, i, j);
  SimplicialSubset z = coordinate_equalities(xn, {{i, j}});
  if (!closed_under_faces(xn, z)) throw InputError("diagonal: not closed under faces");
  return z;
}

SimplicialSubset diagonal_intersection(const SimplicialSet& xn, const Graph& g, EdgeMask s) {
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t e : graph::members(s)) {
    const Edge& ed = g.edge(e);
    if (ed.u == ed.v) continue;
    require_power(xn, ed.u, ed.v);
    pairs.push_back({ed.u, ed.v});
  }
  if (xn.factors() != 0 && xn.factors() != g.vertex_count())
    throw InputError("diagonal: power and graph sizes differ");
  return coordinate_equalities(xn, pairs);
}

SimplicialSubset diagonal_union(const SimplicialSet& xn, const Graph& g) {
  SimplicialSubset z = nothing(xn);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    SimplicialSubset d = diagonal_intersection(xn, g, EdgeMask(1) << e);
    for (std::size_t k = 0; k < z.member.size(); ++k) z.member[k] |= d.member[k];
  }
  return z;
}

bool closed_under_faces(const SimplicialSet& x, const SimplicialSubset& z) {
  for (int k = 1; k <= x.dimension(); ++k)
    for (std::size_t s = 0; s < x.count(k); ++s) {
      if (!z.contains(x.global(k, s))) continue;
      for (int i = 0; i <= k; ++i) {
        const SimplexRef& f = x.face(k, s, i);
        if (!z.contains(x.global(f.base_dim(), f.id))) return false;
      }
    }
  return true;
}

namespace {

FiniteComplex restricted(const SimplicialSet& x, const std::vector<std::size_t>& keep, Ring ring) {
  SparseMatrix d = x.coboundary(ring).submatrix(keep, keep);
  std::vector<int> deg;
  for (std::size_t g : keep) deg.push_back(x.dim_of(g));
  return FiniteComplex(ring, deg, std::move(d));
}

std::vector<std::size_t> select(const SimplicialSubset& z, bool want) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < z.member.size(); ++k)
    if ((z.member[k] != 0) == want) out.push_back(k);
  return out;
}

}  // namespace

FiniteComplex cochains(const SimplicialSet& x, Ring ring) {
  std::vector<int> deg(x.size());
  for (std::size_t g = 0; g < x.size(); ++g) deg[g] = x.dim_of(g);
  return FiniteComplex(ring, deg, x.coboundary(ring));
}

FiniteComplex cochains(const SimplicialSet& x, const SimplicialSubset& z, Ring ring) {
  return restricted(x, select(z, true), ring);
}

FiniteComplex relative_cochains(const SimplicialSet& x, const SimplicialSubset& z, Ring ring) {
  return restricted(x, select(z, false), ring);
}

std::map<int, std::size_t> betti(const SimplicialSet& x, Ring ring) {
  return complexes::cohomology(cochains(x, ring)).by_degree();
}

RelativeCohomology relative_cohomology(const SimplicialSet& x, const SimplicialSubset& z, Ring ring) {
  if (z.member.size() != x.size()) throw InputError("relative cohomology: subset does not match the simplicial set");
  if (!closed_under_faces(x, z)) throw InputError("relative cohomology: subset is not closed under faces");
  RelativeCohomology out;
  const std::vector<std::size_t> outside = select(z, false), inside = select(z, true);
  FiniteComplex a = restricted(x, outside, ring);
  out.table = complexes::cohomology(a);

  // 0 -> C(X, Z) -> C(X) -> C(Z) -> 0, checked over a field; all three maps
  // are coordinate maps, so exactness over Z follows from exactness over Q.
  Ring f = ring.is_field() ? ring : Ring::rationals();
  FiniteComplex ra = ring.is_field() ? a : restricted(x, outside, f);
  FiniteComplex b = cochains(x, f), c = restricted(x, inside, f);
  Triplets ti, tp, ts;
  for (std::size_t k = 0; k < outside.size(); ++k) ti.emplace_back(outside[k], k, f.one());
  for (std::size_t k = 0; k < inside.size(); ++k) {
    tp.emplace_back(k, inside[k], f.one());
    ts.emplace_back(inside[k], k, f.one());
  }
  out.les = complexes::verify_ses(ra, b, c, SparseMatrix::from_triplets(f, x.size(), outside.size(), ti),
                                  SparseMatrix::from_triplets(f, inside.size(), x.size(), tp),
                                  SparseMatrix::from_triplets(f, x.size(), inside.size(), ts));
  return out;
}

CoverBicomplex cover_bicomplex(const SimplicialSet& x, const Graph& g, Ring ring, std::size_t cap) {
  if (g.has_loop() || g.has_multi_edge())
    throw InputError("cover bicomplex: graph must be loopless without multi-edges");
  if (g.vertex_count() < 1) throw InputError("cover bicomplex: graph has no vertices");
  if (g.edge_count() > 16) throw ResourceLimitError("cover bicomplex: too many edges");
  CoverBicomplex out{power(x, g.vertex_count(), cap), {}, {}, {}};
  const SimplicialSet& xn = out.power;

  std::vector<EdgeMask> subsets;
  for (EdgeMask s = 0; s <= g.all_edges(); ++s) subsets.push_back(s);
  std::stable_sort(subsets.begin(), subsets.end(), [](EdgeMask a, EdgeMask b) {
    if (graph::popcount(a) != graph::popcount(b)) return graph::popcount(a) < graph::popcount(b);
    return graph::members(a) < graph::members(b);
  });
  std::map<EdgeMask, std::vector<long>> where;
  std::map<EdgeMask, SimplicialSubset> zs;
  Bicomplex& b = out.bicomplex;
  b.ring = ring;
  for (EdgeMask s : subsets) {
    SimplicialSubset z = diagonal_intersection(xn, g, s);
    std::vector<long> w(xn.size(), -1);
    for (std::size_t k = 0; k < xn.size(); ++k)
      if (z.contains(k)) {
        w[k] = static_cast<long>(out.subset.size());
        out.subset.push_back(s);
        out.simplex.push_back(k);
        b.p.push_back(graph::popcount(s));
        b.q.push_back(xn.dim_of(k));
        if (out.subset.size() > 4 * cap) throw ResourceLimitError("cover bicomplex: too many basis elements");
      }
    where[s] = std::move(w);
    zs.emplace(s, std::move(z));
  }
  const std::size_t n = out.subset.size();
  const SparseMatrix cob = xn.coboundary(ring);
  Triplets tv, th;
  for (std::size_t row = 0; row < n; ++row) {
    const EdgeMask s = out.subset[row];
    const bool odd = graph::popcount(s) % 2;
    for (const auto& [y, v] : cob.row(out.simplex[row])) {
      long col = where[s][y];
      if (col >= 0) tv.emplace_back(row, static_cast<std::size_t>(col), odd ? ring.neg(v) : v);
    }
  }
  for (std::size_t col = 0; col < n; ++col) {
    const EdgeMask s = out.subset[col];
    for (std::size_t a = 0; a < g.edge_count(); ++a) {
      if (graph::contains(s, a)) continue;
      const EdgeMask t = s | (EdgeMask(1) << a);
      long row = where[t][out.simplex[col]];
      if (row >= 0)
        th.emplace_back(static_cast<std::size_t>(row), col, graphcohom::edge_sign(s, a) > 0 ? ring.one() : ring.neg(ring.one()));
    }
  }
  b.vertical = SparseMatrix::from_triplets(ring, n, n, std::move(tv));
  b.horizontal = SparseMatrix::from_triplets(ring, n, n, std::move(th));
  return out;
}

GradedAlgebra cup_ring(const SimplicialSet& x, Ring ring) {
  if (!ring.is_field()) throw InputError("cup ring: field coefficients required");
  FiniteComplex c = cochains(x, ring);
  struct Klass {
    int degree;
    SparseVec rep;
  };
  std::vector<Klass> classes;
  std::map<int, SparseMatrix> coord_system;  // [reps | coboundaries] per degree
  std::map<int, std::size_t> nreps;
  for (int n = 0; n <= x.dimension(); ++n) {
    std::vector<SparseVec> bound = complexes::coboundaries(c, {0, n});
    RowEchelon e(ring, x.size());
    for (const auto& v : bound) e.insert(v);
    std::vector<SparseVec> reps;
    if (n == 0) {
      SparseVec unit;
      for (std::size_t v = 0; v < x.count(0); ++v) unit.emplace_back(x.global(0, v), ring.one());
      if (!unit.empty() && e.insert(unit)) reps.push_back(unit);
    }
    for (SparseVec& z : complexes::cocycles(c, {0, n}))
      if (e.insert(z)) reps.push_back(std::move(z));
    nreps[n] = reps.size();
    for (const auto& r : reps) classes.push_back({n, r});
    std::vector<SparseVec> cols = reps;
    cols.insert(cols.end(), bound.begin(), bound.end());
    coord_system[n] = SparseMatrix::from_columns(ring, x.size(), cols);
  }
  if (classes.empty() || classes[0].degree != 0) throw InputError("cup ring: empty simplicial set");

  std::vector<BasisElement> basis;
  std::map<int, int> seen;
  std::vector<std::size_t> first_of(x.dimension() + 2, 0);
  for (std::size_t k = 0; k < classes.size(); ++k) {
    const int d = classes[k].degree;
    if (seen[d] == 0) first_of[d] = k;
    const int ordinal = ++seen[d];
    basis.push_back({k == 0 ? "1" : "h" + std::to_string(d) + "_" + std::to_string(ordinal), d});
  }

  auto value_at = [&](const SparseVec& v, std::size_t g) {
    auto it = std::lower_bound(v.begin(), v.end(), g, [](const auto& e, std::size_t k) { return e.first < k; });
    return it != v.end() && it->first == g ? it->second : Scalar(0);
  };

  const std::size_t dim = classes.size();
  std::vector<std::vector<SparseVec>> products(dim, std::vector<SparseVec>(dim));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      const int k = classes[i].degree, l = classes[j].degree, n = k + l;
      if (n > x.dimension()) continue;
      std::vector<std::pair<std::size_t, Scalar>> cup;
      for (std::size_t s = 0; s < x.count(n); ++s) {
        SimplexRef front = nondegenerate(s, n), back = nondegenerate(s, n);
        for (int t = n; t > k; --t) front = x.face(front, t);
        for (int t = 0; t < k; ++t) back = x.face(back, 0);
        if (!front.nondegenerate() || !back.nondegenerate()) continue;
        Scalar v = ring.mul(value_at(classes[i].rep, x.global(k, front.id)), value_at(classes[j].rep, x.global(l, back.id)));
        if (v != 0) cup.emplace_back(x.global(n, s), v);
      }
      SparseVec w = normalize(ring, std::move(cup));
      if (w.empty() || nreps[n] == 0) continue;
      auto sol = coeff::solve(coord_system[n], w);
      if (!sol) throw InputError("cup ring: cup product of cocycles is not a cocycle");
      SparseVec coords;
      for (const auto& [col, v] : *sol)
        if (col < nreps[n]) coords.emplace_back(first_of[n] + col, v);
      products[i][j] = std::move(coords);
    }
  GradedAlgebra a(ring, std::move(basis), std::move(products));
  algebra::require_valid(a);
  return a;
}

CheckResult kunneth_check(const SimplicialSet& x, int n, Ring ring) {
  std::map<int, std::size_t> one = betti(x, ring), acc{{0, 1}};
  for (int k = 0; k < n; ++k) {
    std::map<int, std::size_t> next;
    for (auto [a, ra] : acc)
      for (auto [b, rb] : one) next[a + b] += ra * rb;
    acc = std::move(next);
  }
  std::erase_if(acc, [](const auto& e) { return e.second == 0; });
  std::map<int, std::size_t> got = betti(power(x, n), ring);
  if (got != acc) return CheckResult::fail("Betti numbers of the power differ from the Kunneth prediction");
  return CheckResult::pass();
}

namespace {

std::string bidegree(int p, int q) { return "(p=" + std::to_string(p) + ", q=" + std::to_string(q) + ")"; }

}  // namespace

Theorem1Report compare_with_graph_complex(const SimplicialSet& x, const Graph& g, Ring ring, std::size_t cap) {
  Theorem1Report r;
  CoverBicomplex cb = cover_bicomplex(x, g, ring, cap);
  r.cup = cup_ring(x, ring);
  GraphComplex gc(DGAlgebra(r.cup), g);

  // E_1 = vertical cohomology, keyed (p, q); C_A(G) keyed (q, p)
  FiniteComplex vc = cb.bicomplex.vertical_complex();
  CohomologyTable e1 = complexes::cohomology(vc);
  std::vector<int> gp, gq;
  std::map<GradeKey, std::size_t> gens;
  for (const auto& gen : gc.generators()) {
    gp.push_back(gen.p);
    gq.push_back(gen.q);
    ++gens[{gen.p, gen.q}];
  }
  FiniteComplex gfc(ring, gp, gc.delta(), gq);
  std::map<GradeKey, std::size_t> delta_rank = complexes::differential_ranks(gfc);

  std::set<GradeKey> keys;
  for (const auto& [k, v] : e1.rank) keys.insert(k);
  for (const auto& [k, v] : gens) keys.insert(k);
  r.e1 = CheckResult::pass();
  for (auto [p, q] : keys) {
    const std::size_t de = e1.at({p, q}), dg = gens.count({p, q}) ? gens.at({p, q}) : 0;
    if (de != dg) {
      r.e1 = CheckResult::fail("E_1 dimension " + std::to_string(de) + " vs C_A(G) dimension " + std::to_string(dg) +
                               " at " + bidegree(p, q));
      break;
    }
    const std::size_t d1 = complexes::induced_rank(vc, vc, cb.bicomplex.horizontal, {p, q}, GradeKey{p + 1, q});
    const std::size_t dd = delta_rank.count({q, p}) ? delta_rank.at({q, p}) : 0;
    if (d1 != dd) {
      r.e1 = CheckResult::fail("d_1 rank " + std::to_string(d1) + " vs delta rank " + std::to_string(dd) + " at " +
                               bidegree(p, q));
      break;
    }
  }

  SimplicialSubset zg = diagonal_union(cb.power, g);
  RelativeCohomology rel = relative_cohomology(cb.power, zg, ring);
  r.les = rel.les;
  r.relative = rel.table.by_degree();
  std::map<int, std::size_t> tot = complexes::cohomology(cb.bicomplex.total()).by_degree();
  r.total = tot == r.relative ? CheckResult::pass()
                              : CheckResult::fail("total cohomology of the cover bicomplex differs from H(X^n, Z_G)");

  BettiTable bt = graphcohom::cohomology(gc);
  for (const auto& [k, v] : bt.table.rank)
    if (v) r.graph_total[k.first + k.second] += v;
  r.poincare_equal = r.graph_total == r.relative;
  long long chi_rel = 0, chi_graph = 0;
  for (auto [n, v] : r.relative) chi_rel += (n % 2 ? -1 : 1) * static_cast<long long>(v);
  for (auto [n, v] : r.graph_total) chi_graph += (n % 2 ? -1 : 1) * static_cast<long long>(v);
  r.euler_equal = chi_rel == chi_graph;
  return r;
}

}  // namespace simplicial
}  // namespace gcohom
