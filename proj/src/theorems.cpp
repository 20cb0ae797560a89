#include "gcohom/perturb.hpp"

#include "json.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace gcohom {

std::string CheckReport::json() const {
  nlohmann::ordered_json j;
  j["check"] = check;
  j["status"] = ok ? "pass" : "fail";
  if (!detail.empty()) j["detail"] = detail;
  j["witness"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : witness) j["witness"][k] = v;
  return j.dump();
}

namespace perturb {

namespace {

std::string vec_string(const GradedAlgebra& a, const SparseVec& v) {
  if (v.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " + " : "") << v[i].second.get_str() << "*" << a.name(v[i].first);
  return os.str();
}

std::string tuple_string(const GradedAlgebra& a, const std::vector<std::size_t>& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) out += (i ? "," : "") + a.name(t[i]);
  return out + ")";
}

CheckReport fail(CheckReport r, std::string detail, std::map<std::string, std::string> witness = {}) {
  r.ok = false;
  r.detail = std::move(detail);
  r.witness = std::move(witness);
  return r;
}

/// The sub-tensor of `tuple` on the vertices `u` (ascending), and its
/// complement, for a generator at e_0 (one factor per vertex).
std::vector<int> degrees_of(const GradedAlgebra& a, const std::vector<std::size_t>& t) {
  std::vector<int> d;
  for (std::size_t b : t) d.push_back(a.degree(b));
  return d;
}

/// The d_1 terms of delta that add an edge inside a component of [G:s].
bool cycle_closing(const GraphComplex& c, EdgeMask s, EdgeMask t) {
  return (t & s) == s && graph::popcount(t & ~s) == 1 && c.components(t).count == c.components(s).count;
}

/// Tree condition of d_i on the generator pair (s, t).
bool tree_shaped(const GraphComplex& c, EdgeMask s, EdgeMask t, std::size_t i) {
  if ((t & s) != s) return false;
  const EdgeMask extra = t & ~s;
  if (static_cast<std::size_t>(graph::popcount(extra)) != i) return false;
  const ComponentLabeling& cs = c.components(s);
  const ComponentLabeling& ct = c.components(t);
  if (ct.count != cs.count - static_cast<int>(i)) return false;
  std::set<int> touched;
  for (std::size_t e : graph::members(extra)) {
    touched.insert(cs.label[c.graph().edge(e).u]);
    touched.insert(cs.label[c.graph().edge(e).v]);
  }
  return touched.size() == i + 1;
}

/// Columns `cols` of (delta h)^{k-1} delta g, signed as d_k, for k = n.
SparseMatrix top_operator(const ColumnReduction& cr, const std::vector<std::size_t>& cols, int k) {
  const Reduction& r = cr.reduction;
  const std::vector<SparseVec> gcols = r.g.columns();
  std::vector<SparseVec> sel;
  for (std::size_t c : cols) sel.push_back(gcols[c]);
  SparseMatrix t = cr.big.delta() * SparseMatrix::from_columns(cr.big.ring(), cr.big.size(), sel);
  for (int i = 1; i < k; ++i) t = cr.big.delta() * (r.h * t);
  SparseMatrix d = r.f * t;
  return k % 2 ? d : d.scaled(Scalar(-1));
}

/// Checks the e_0 block of G against the d_i of the trees T in G: the value
/// on a_1 (x) ... (x) a_n is the Koszul-signed d_i^T on the factors of the
/// vertices of T, tensored with the remaining factors.
std::optional<std::string> factor_through_trees(const DGAlgebra& a, const Reduction& r, const ColumnReduction& cr,
                                                const std::vector<SparseMatrix>& dops) {
  const GraphComplex& L = cr.small;
  const GradedAlgebra& H = L.algebra().algebra();
  const Graph& g = L.graph();
  const int n = g.vertex_count();
  std::map<EdgeMask, std::pair<std::vector<int>, ColumnReduction>> trees;
  std::map<EdgeMask, std::vector<SparseMatrix>> tree_ops;  ///< transposed
  for (std::size_t i = 1; i <= dops.size(); ++i) {
    const SparseMatrix dt = dops[i - 1].transpose();
    for (std::size_t col = 0; col < L.size(); ++col) {
      const Generator& src = L.generator(col);
      if (src.s != 0) continue;
      // expected image, gathered over all trees with i edges
      std::map<std::size_t, Scalar> expected;
      if (i == 1)
        for (std::size_t e = 0; e < g.edge_count(); ++e)
          if (g.edge(e).is_loop()) expected[L.index_of(EdgeMask(1) << e, src.tuple)] = L.ring().one();
      for (EdgeMask t : L.subsets()) {
        if (!tree_shaped(L, 0, t, i)) continue;
        std::set<int> verts;
        for (std::size_t e : graph::members(t)) {
          verts.insert(g.edge(e).u);
          verts.insert(g.edge(e).v);
        }
        std::vector<int> u(verts.begin(), verts.end());
        auto it = trees.find(t);
        if (it == trees.end()) {
          std::vector<int> pos(n, -1);
          for (std::size_t k = 0; k < u.size(); ++k) pos[u[k]] = static_cast<int>(k);
          std::vector<Edge> edges;
          for (std::size_t e : graph::members(t)) edges.push_back({pos[g.edge(e).u], pos[g.edge(e).v]});
          Graph tg(static_cast<int>(u.size()), edges);
          it = trees.emplace(t, std::pair{u, column_reduction(a, tg, r)}).first;
          for (const auto& d : d_operators(it->second.second)) tree_ops[t].push_back(d.transpose());
        }
        const auto& ops = tree_ops[t];
        if (ops.size() < i) continue;
        const GraphComplex& Lt = it->second.second.small;
        std::vector<std::size_t> sub, perm;
        std::vector<char> in_u(n, 0);
        for (int v : u) {
          sub.push_back(src.tuple[v]);
          perm.push_back(v);
          in_u[v] = 1;
        }
        for (int v = 0; v < n; ++v)
          if (!in_u[v]) perm.push_back(v);
        const int s1 = graphcohom::koszul_sign(degrees_of(H, src.tuple), perm);
        long long before = 0;
        for (int v = 0; v < u.front(); ++v) before += H.degree(src.tuple[v]);
        const ComponentLabeling& ct = L.components(t);
        for (const auto& [row, val] : ops[i - 1].row(Lt.index_of(0, sub))) {
          const std::size_t c = Lt.generator(row).tuple.at(0);
          std::vector<std::size_t> tuple(ct.count);
          for (int v = 0; v < n; ++v) tuple[ct.label[v]] = in_u[v] ? c : src.tuple[v];
          const long long e = before * H.degree(c);
          Scalar coeff = val;
          if ((s1 < 0) != (e % 2 != 0)) coeff = L.ring().neg(coeff);
          Scalar& slot = expected[L.index_of(t, tuple)];
          slot = L.ring().add(slot, coeff);
        }
      }
      SparseVec want;
      for (auto& [k, v] : expected)
        if (v != 0) want.emplace_back(k, v);
      if (dt.row(col) != want)
        return "d_" + std::to_string(i) + " on " + L.describe(col) + " does not factor through the trees";
    }
  }
  return std::nullopt;
}

}  // namespace

CheckReport locality_check(const DGAlgebra& a, const Graph& g, const Reduction& r) {
  CheckReport rep{"locality", true, "", {}};
  const ColumnReduction cr = column_reduction(a, g, r);
  const std::vector<SparseMatrix> dops = d_operators(cr);
  const GraphComplex& L = cr.small;
  const int k = graph::max_subtree_edges(g);
  std::set<EdgeMask> sources;
  for (std::size_t i = 1; i <= dops.size(); ++i) {
    const SparseMatrix& d = dops[i - 1];
    if (d.is_zero()) continue;
    for (std::size_t row = 0; row < d.rows(); ++row)
      for (const auto& [col, v] : d.row(row)) {
        const EdgeMask s = L.generator(col).s, t = L.generator(row).s;
        if (i == 1 && cycle_closing(L, s, t)) continue;
        if (!tree_shaped(L, s, t, i))
          return fail(rep, "d_" + std::to_string(i) + " has an entry off the tree condition",
                      {{"i", std::to_string(i)}, {"source", L.describe(col)}, {"target", L.describe(row)}});
        if (static_cast<int>(i) > k)
          return fail(rep, "d_" + std::to_string(i) + " is nonzero beyond the largest subtree",
                      {{"i", std::to_string(i)}, {"max_subtree_edges", std::to_string(k)}});
        if (i >= 2) sources.insert(s);
      }
  }
  sources.insert(0);

  // on the e_s-multiples, d_i is the d_i of G/s
  for (EdgeMask s : sources) {
    bool loop = false;
    for (std::size_t e : graph::members(s)) loop = loop || g.edge(e).is_loop();
    if (loop) continue;  // e_s-multiples with a loop in s have no contraction
    const graphcohom::ContractionIso iso = graphcohom::contraction_iso(L, s);
    const Graph gs = iso.target.graph();
    const ColumnReduction cs = column_reduction(a, gs, r);
    const std::vector<SparseMatrix> ds = d_operators(cs);
    const long long ps = graph::popcount(s);
    for (std::size_t i = 1; i <= std::max(dops.size(), ds.size()); ++i) {
      const SparseMatrix lhs =
          i <= dops.size() ? iso.map * dops[i - 1].submatrix(iso.source, iso.source)
                           : SparseMatrix(L.ring(), iso.target.size(), iso.source.size());
      SparseMatrix rhs = i <= ds.size() ? ds[i - 1] * iso.map : SparseMatrix(L.ring(), iso.target.size(), iso.source.size());
      if (ps * static_cast<long long>(i - 1) % 2) rhs = rhs.scaled(Scalar(-1));
      if (!(lhs == rhs))
        return fail(rep, "d_" + std::to_string(i) + " on the e_s-multiples differs from d_" + std::to_string(i) + " of G/s",
                    {{"s", std::to_string(s)}, {"i", std::to_string(i)}});
    }
    if (auto bad = factor_through_trees(a, r, cs, ds))
      return fail(rep, *bad, {{"s", std::to_string(s)}});
  }
  rep.witness["operators"] = std::to_string(dops.size());
  return rep;
}

int tree_formula_sign(int n) { return ((n - 1) * (n - 2) / 2) % 2 ? -1 : 1; }

CheckReport tree_formula_check(const DGAlgebra& a, const Graph& tree, const Reduction& r) {
  CheckReport rep{"tree formula", true, "", {}};
  if (!graph::is_tree(tree)) throw InputError("tree formula: graph is not a tree");
  const int n = tree.vertex_count();
  rep.witness["n"] = std::to_string(n);
  if (n < 2) return rep;
  const ColumnReduction cr = column_reduction(a, tree, r);
  const GraphComplex& L = cr.small;
  const GradedAlgebra& H = L.algebra().algebra();
  const AInfinity m = merkulov(a, r, n);
  const Ring& R = H.ring();
  const auto sigmas = graph::linear_extensions(tree);
  std::vector<std::size_t> cols;
  for (std::size_t c = 0; c < L.size(); ++c)
    if (L.generator(c).s == 0) cols.push_back(c);
  const SparseMatrix lhs = top_operator(cr, cols, n - 1).transpose();
  const EdgeMask all = tree.all_edges();
  const int global = tree_formula_sign(n);

  for (std::size_t j = 0; j < cols.size(); ++j) {
    const std::vector<std::size_t>& t = L.generator(cols[j]).tuple;
    const std::vector<int> degs = degrees_of(H, t);
    std::vector<std::pair<std::size_t, Scalar>> acc;
    for (const auto& sigma : sigmas) {
      std::vector<std::size_t> perm(sigma.begin(), sigma.end()), permuted;
      for (std::size_t v : perm) permuted.push_back(t[v]);
      int sgn = global * graphcohom::koszul_sign(degs, perm);
      for (std::size_t x = 0; x < perm.size(); ++x)
        for (std::size_t y = x + 1; y < perm.size(); ++y)
          if (perm[x] > perm[y]) sgn = -sgn;
      for (const auto& [k, v] : m.value(permuted))
        acc.emplace_back(L.index_of(all, {k}), sgn > 0 ? v : R.neg(v));
    }
    const SparseVec rhs = normalize(R, std::move(acc));
    if (lhs.row(j) != rhs) {
      auto to_h = [&](const SparseVec& v) {
        SparseVec out;
        for (const auto& [k, c] : v) out.emplace_back(L.generator(k).tuple.at(0), c);
        return vec_string(H, out);
      };
      return fail(rep, "d_" + std::to_string(n - 1) + " differs from the signed sum of m_" + std::to_string(n),
                  {{"n", std::to_string(n)},
                   {"tensor", tuple_string(H, t)},
                   {"d", to_h(lhs.row(j))},
                   {"m", to_h(rhs)},
                   {"graph", tree.to_string()}});
    }
  }
  return rep;
}

CheckReport degeneration_check(const SpectralSequence& ss, const Graph& g, bool formal) {
  CheckReport rep{"degeneration", true, "", {}};
  const int k = graph::max_subtree_edges(g);
  // d_1 is never constrained: loop edges, which max_subtree_edges ignores, still feed it
  const int from = formal ? 2 : std::max(k, 1) + 1;
  rep.witness["from_page"] = std::to_string(from);
  for (const auto& page : ss.pages) {
    if (page.r < from) continue;
    for (const auto& [key, rk] : page.rank)
      if (rk)
        return fail(rep, "nonzero differential on page " + std::to_string(page.r),
                    {{"t", std::to_string(page.r)}, {"p", std::to_string(key.first)}, {"q", std::to_string(key.second)}});
  }
  return rep;
}

}  // namespace perturb
}  // namespace gcohom
