#include "gcohom/algebra.hpp"

#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace gcohom {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// GradedAlgebra / DGAlgebra

GradedAlgebra::GradedAlgebra(Ring ring, std::vector<BasisElement> basis,
                             std::vector<std::vector<SparseVec>> products)
    : ring_(ring), basis_(std::move(basis)), products_(std::move(products)) {
  if (products_.size() != basis_.size())
    throw InputError("algebra: multiplication table has wrong size");
  for (const auto& row : products_)
    if (row.size() != basis_.size()) throw InputError("algebra: multiplication table has wrong size");
}

std::optional<std::size_t> GradedAlgebra::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i].name == name) return i;
  return std::nullopt;
}

int GradedAlgebra::top_degree() const {
  int t = 0;
  for (const auto& b : basis_) t = std::max(t, b.degree);
  return t;
}

SparseVec GradedAlgebra::multiply(const SparseVec& a, const SparseVec& b) const {
  std::vector<std::pair<std::size_t, Scalar>> terms;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) {
      Scalar c = ring_.mul(x, y);
      for (const auto& [k, z] : products_[i][j]) terms.emplace_back(k, ring_.mul(c, z));
    }
  return normalize(ring_, std::move(terms));
}

std::vector<std::size_t> GradedAlgebra::indices_of_degree(int deg) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i].degree == deg) out.push_back(i);
  return out;
}

Poly2 GradedAlgebra::poincare() const {
  Poly2 p;
  for (const auto& b : basis_) p.add_term(1, b.degree);
  return p;
}

bool GradedAlgebra::operator==(const GradedAlgebra& o) const {
  if (ring_ != o.ring_ || basis_.size() != o.basis_.size()) return false;
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i].degree != o.basis_[i].degree) return false;
  return products_ == o.products_;
}

DGAlgebra::DGAlgebra(GradedAlgebra alg) : alg_(std::move(alg)), diff_(alg_.dim()) {}

DGAlgebra::DGAlgebra(GradedAlgebra alg, std::vector<SparseVec> diff)
    : alg_(std::move(alg)), diff_(std::move(diff)) {
  if (diff_.size() != alg_.dim()) throw InputError("DG algebra: differential has wrong size");
}

bool DGAlgebra::has_zero_differential() const {
  return std::all_of(diff_.begin(), diff_.end(), [](const SparseVec& v) { return v.empty(); });
}

SparseMatrix DGAlgebra::differential_matrix() const {
  return SparseMatrix::from_columns(ring(), dim(), diff_);
}

namespace algebra {

namespace {

std::string at2(const GradedAlgebra& a, std::size_t i, std::size_t j) {
  return "(" + a.name(i) + "," + a.name(j) + ")";
}

bool char_two(const Ring& r) { return r.kind() == RingKind::Prime && r.characteristic() == 2; }

Scalar koszul(const Ring& r, long long e) { return (e % 2 == 0) ? r.one() : r.neg(r.one()); }

}  // namespace

std::optional<Violation> validate(const GradedAlgebra& a) {
  const Ring& R = a.ring();
  const std::size_t n = a.dim();
  if (n == 0) return Violation{"unit required", "(empty basis)"};
  if (a.degree(0) != 0) return Violation{"unit required", "(" + a.name(0) + ")"};
  for (std::size_t i = 0; i < n; ++i) {
    if (a.degree(i) < 0) return Violation{"nonnegative degree", "(" + a.name(i) + ")"};
    if (i > 0 && a.degree(i) < a.degree(i - 1))
      return Violation{"basis sorted by degree", "(" + a.name(i) + ")"};
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [k, c] : a.product(i, j)) {
        if (k >= n) return Violation{"index range", at2(a, i, j)};
        if (a.degree(k) != a.degree(i) + a.degree(j)) return Violation{"degree additivity", at2(a, i, j)};
        if (R.canonical(c) != c) return Violation{"canonical coefficients", at2(a, i, j)};
      }
  for (std::size_t i = 0; i < n; ++i) {
    SparseVec e{{i, R.one()}};
    if (a.product(0, i) != e || a.product(i, 0) != e) return Violation{"unit law", "(" + a.name(i) + ")"};
  }
  if (!char_two(R)) {
    for (std::size_t i = 0; i < n; ++i)
      if (a.degree(i) % 2 != 0 && !a.product(i, i).empty())
        return Violation{"odd square", "(" + a.name(i) + ")"};
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Scalar s = koszul(R, static_cast<long long>(a.degree(i)) * a.degree(j));
      if (a.product(i, j) != scale(R, a.product(j, i), s))
        return Violation{"graded commutativity", at2(a, i, j)};
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        SparseVec left = a.multiply(a.product(i, j), SparseVec{{k, R.one()}});
        SparseVec right = a.multiply(SparseVec{{i, R.one()}}, a.product(j, k));
        if (left != right)
          return Violation{"associativity", "(" + a.name(i) + "," + a.name(j) + "," + a.name(k) + ")"};
      }
  return std::nullopt;
}

std::optional<Violation> validate(const DGAlgebra& d) {
  if (auto v = validate(d.algebra())) return v;
  const GradedAlgebra& a = d.algebra();
  const Ring& R = a.ring();
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [k, c] : d.diff(i)) {
      if (k >= n) return Violation{"index range", "d(" + a.name(i) + ")"};
      if (a.degree(k) != a.degree(i) + 1) return Violation{"differential degree", "(" + a.name(i) + ")"};
      if (R.canonical(c) != c) return Violation{"canonical coefficients", "d(" + a.name(i) + ")"};
    }
  SparseMatrix dm = d.differential_matrix();
  for (std::size_t i = 0; i < n; ++i)
    if (!dm.apply(d.diff(i)).empty()) return Violation{"d^2 = 0", "(" + a.name(i) + ")"};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      SparseVec lhs = dm.apply(a.product(i, j));
      SparseVec t1 = a.multiply(d.diff(i), SparseVec{{j, R.one()}});
      SparseVec t2 = a.multiply(SparseVec{{i, R.one()}}, d.diff(j));
      SparseVec rhs = axpy(R, t1, koszul(R, a.degree(i)), t2);
      if (lhs != rhs) return Violation{"Leibniz rule", at2(a, i, j)};
    }
  return std::nullopt;
}

void require_valid(const GradedAlgebra& a) {
  if (auto v = validate(a)) throw InputError("invalid algebra: " + v->message());
}

void require_valid(const DGAlgebra& a) {
  if (auto v = validate(a)) throw InputError("invalid DG algebra: " + v->message());
}

// ---------------------------------------------------------------------------
// constructors

GradedAlgebra exterior(const std::vector<std::string>& names, const std::vector<int>& degrees, Ring ring) {
  const std::size_t k = names.size();
  if (degrees.size() != k) throw InputError("exterior: names/degrees mismatch");
  if (k > 16) throw InputError("exterior: too many generators");
  for (int d : degrees)
    if (d < 1) throw InputError("exterior: generator degrees must be positive");
  struct Mono {
    unsigned mask;
    int degree;
    std::vector<std::size_t> gens;
  };
  std::vector<Mono> monos;
  for (unsigned m = 0; m < (1u << k); ++m) {
    Mono mono{m, 0, {}};
    for (std::size_t g = 0; g < k; ++g)
      if (m & (1u << g)) {
        mono.degree += degrees[g];
        mono.gens.push_back(g);
      }
    monos.push_back(std::move(mono));
  }
  std::stable_sort(monos.begin(), monos.end(), [](const Mono& a, const Mono& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    if (a.gens.size() != b.gens.size()) return a.gens.size() < b.gens.size();
    return a.gens < b.gens;
  });
  std::map<unsigned, std::size_t> index;
  std::vector<BasisElement> basis;
  for (std::size_t i = 0; i < monos.size(); ++i) {
    index[monos[i].mask] = i;
    std::string name;
    for (std::size_t g : monos[i].gens) name += names[g];
    basis.push_back({name.empty() ? "1" : name, monos[i].degree});
  }
  const std::size_t n = monos.size();
  std::vector<std::vector<SparseVec>> prod(n, std::vector<SparseVec>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (monos[i].mask & monos[j].mask) continue;
      long long e = 0;
      for (std::size_t gi : monos[i].gens)
        for (std::size_t gj : monos[j].gens)
          if (gi > gj) e += static_cast<long long>(degrees[gi]) * degrees[gj];
      Scalar c = e % 2 ? ring.neg(ring.one()) : ring.one();
      prod[i][j] = SparseVec{{index[monos[i].mask | monos[j].mask], c}};
    }
  return GradedAlgebra(ring, std::move(basis), std::move(prod));
}

namespace {

GradedAlgebra truncated_poly(int deg, int power, Ring ring) {
  if (deg < 1 || power < 1) throw InputError("truncated_poly: need deg >= 1 and power >= 1");
  if (deg % 2 != 0 && power > 2 && !char_two(ring))
    throw InputError("truncated_poly: odd generator needs power <= 2 outside characteristic 2");
  std::vector<BasisElement> basis;
  for (int i = 0; i < power; ++i)
    basis.push_back({i == 0 ? "1" : (i == 1 ? "x" : "x^" + std::to_string(i)), i * deg});
  std::vector<std::vector<SparseVec>> prod(power, std::vector<SparseVec>(power));
  for (int i = 0; i < power; ++i)
    for (int j = 0; j < power; ++j)
      if (i + j < power) prod[i][j] = SparseVec{{static_cast<std::size_t>(i + j), ring.one()}};
  return GradedAlgebra(ring, std::move(basis), std::move(prod));
}

GradedAlgebra surface(int genus, Ring ring) {
  if (genus < 0) throw InputError("surface: genus must be nonnegative");
  std::vector<BasisElement> basis{{"1", 0}};
  for (int i = 1; i <= genus; ++i) basis.push_back({"a" + std::to_string(i), 1});
  for (int i = 1; i <= genus; ++i) basis.push_back({"b" + std::to_string(i), 1});
  basis.push_back({"w", 2});
  const std::size_t n = basis.size(), w = n - 1;
  std::vector<std::vector<SparseVec>> prod(n, std::vector<SparseVec>(n));
  for (std::size_t i = 0; i < n; ++i) {
    prod[0][i] = SparseVec{{i, ring.one()}};
    prod[i][0] = SparseVec{{i, ring.one()}};
  }
  for (int i = 1; i <= genus; ++i) {
    std::size_t a = i, b = genus + i;
    prod[a][b] = SparseVec{{w, ring.one()}};
    prod[b][a] = SparseVec{{w, ring.neg(ring.one())}};
  }
  if (genus == 0) {
    // sphere: w is the top class with w * w = 0; nothing else to fill
  }
  return GradedAlgebra(ring, std::move(basis), std::move(prod));
}

/// Extends generator differentials to an exterior algebra by Leibniz.
std::vector<SparseVec> leibniz_extend(const GradedAlgebra& a, const std::map<std::string, SparseVec>& gens) {
  const Ring& R = a.ring();
  std::vector<SparseVec> diff(a.dim());
  std::vector<char> done(a.dim(), 0);
  done[0] = 1;
  // Basis names are concatenations of single-letter generator names.
  std::function<SparseVec(std::size_t)> d = [&](std::size_t i) -> SparseVec {
    if (done[i]) return diff[i];
    const std::string& nm = a.name(i);
    std::string head = nm.substr(0, 1), rest = nm.substr(1);
    SparseVec result;
    if (rest.empty()) {
      auto it = gens.find(head);
      if (it != gens.end()) result = it->second;
    } else {
      std::size_t h = *a.index_of(head), r = *a.index_of(rest);
      SparseVec t1 = a.multiply(d(h), SparseVec{{r, R.one()}});
      SparseVec t2 = a.multiply(SparseVec{{h, R.one()}}, d(r));
      Scalar s = a.degree(h) % 2 ? R.neg(R.one()) : R.one();
      result = axpy(R, t1, s, t2);
    }
    diff[i] = result;
    done[i] = 1;
    return result;
  };
  for (std::size_t i = 0; i < a.dim(); ++i) d(i);
  return diff;
}

SparseVec basis_vec(const GradedAlgebra& a, const std::string& name, long c = 1) {
  return SparseVec{{*a.index_of(name), a.ring().from_int(c)}};
}

}  // namespace

GradedAlgebra builtin(std::string_view name, const std::vector<int>& params, Ring ring) {
  auto need = [&](std::size_t k) {
    if (params.size() != k)
      throw InputError("builtin " + std::string(name) + ": expected " + std::to_string(k) + " parameter(s)");
  };
  if (name == "sphere") {
    need(1);
    if (params[0] < 1) throw InputError("sphere: dimension must be >= 1");
    std::vector<std::vector<SparseVec>> prod(2, std::vector<SparseVec>(2));
    prod[0][0] = {{0, ring.one()}};
    prod[0][1] = prod[1][0] = {{1, ring.one()}};
    return GradedAlgebra(ring, {{"1", 0}, {"x", params[0]}}, std::move(prod));
  }
  if (name == "torus") {
    need(1);
    if (params[0] < 0) throw InputError("torus: rank must be >= 0");
    std::vector<std::string> names;
    for (int i = 1; i <= params[0]; ++i) names.push_back("x" + std::to_string(i));
    return exterior(names, std::vector<int>(params[0], 1), ring);
  }
  if (name == "truncated_poly") {
    need(2);
    return truncated_poly(params[0], params[1], ring);
  }
  if (name == "exterior") {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= params.size(); ++i) names.push_back("e" + std::to_string(i));
    return exterior(names, params, ring);
  }
  if (name == "surface") {
    need(1);
    return surface(params[0], ring);
  }
  if (name == "point") {
    need(0);
    return GradedAlgebra(ring, {{"1", 0}}, {{SparseVec{{0, ring.one()}}}});
  }
  throw InputError("unknown builtin algebra '" + std::string(name) + "'");
}

GradedAlgebra builtin_from_spec(std::string_view spec, Ring ring) {
  std::string s(spec);
  auto colon = s.find(':');
  std::string name = s.substr(0, colon);
  std::vector<int> params;
  if (colon != std::string::npos) {
    std::stringstream ss(s.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        params.push_back(std::stoi(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw InputError("builtin " + name + ": bad parameter '" + item + "'");
      }
    }
  }
  return builtin(name, params, ring);
}

DGAlgebra builtin_dga(std::string_view name, Ring ring) {
  if (!ring.is_field()) throw InputError("DG algebras require field coefficients");
  if (name == "massey_example") {
    GradedAlgebra a = exterior({"a", "b", "x"}, {1, 1, 1}, ring);
    auto diff = leibniz_extend(a, {{"x", basis_vec(a, "ab")}});
    return DGAlgebra(a, diff);
  }
  if (name == "filiform") {
    GradedAlgebra a = exterior({"a", "b", "x", "y"}, {1, 1, 1, 1}, ring);
    auto diff = leibniz_extend(a, {{"x", basis_vec(a, "ab")}, {"y", basis_vec(a, "ax")}});
    return DGAlgebra(a, diff);
  }
  if (name == "massey_even") {
    // k[a,b]/(a^2,b^2) (x) Lambda(x), |a| = |b| = 2, |x| = 3, dx = ab.
    std::vector<BasisElement> basis{{"1", 0}, {"a", 2}, {"b", 2}, {"x", 3},
                                    {"ab", 4}, {"ax", 5}, {"bx", 5}, {"abx", 7}};
    // monomial masks: bit0 = a, bit1 = b, bit2 = x
    const unsigned masks[8] = {0, 1, 2, 4, 3, 5, 6, 7};
    std::map<unsigned, std::size_t> idx;
    for (std::size_t i = 0; i < 8; ++i) idx[masks[i]] = i;
    std::vector<std::vector<SparseVec>> prod(8, std::vector<SparseVec>(8));
    for (std::size_t i = 0; i < 8; ++i)
      for (std::size_t j = 0; j < 8; ++j)
        if (!(masks[i] & masks[j])) prod[i][j] = {{idx[masks[i] | masks[j]], ring.one()}};
    GradedAlgebra a(ring, basis, prod);
    auto diff = leibniz_extend(a, {{"x", basis_vec(a, "ab")}});
    return DGAlgebra(a, diff);
  }
  if (name == "formal_torus") return DGAlgebra(builtin("torus", {2}, ring));
  throw InputError("unknown builtin DG algebra '" + std::string(name) + "'");
}

std::vector<std::string> builtin_dga_names() { return {"massey_example", "massey_even", "filiform"}; }

std::size_t tensor_index(const GradedAlgebra& a, const GradedAlgebra& b, std::size_t i, std::size_t j) {
  // Same ordering as tensor(): stable by total degree over (i, j) lexicographic.
  std::size_t pos = 0;
  const int d = a.degree(i) + b.degree(j);
  for (std::size_t x = 0; x < a.dim(); ++x)
    for (std::size_t y = 0; y < b.dim(); ++y) {
      int e = a.degree(x) + b.degree(y);
      if (e < d || (e == d && std::make_pair(x, y) < std::make_pair(i, j))) ++pos;
    }
  return pos;
}

GradedAlgebra tensor(const GradedAlgebra& a, const GradedAlgebra& b) {
  if (a.ring() != b.ring()) throw InputError("tensor: coefficient rings differ");
  const Ring& R = a.ring();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) pairs.emplace_back(i, j);
  std::stable_sort(pairs.begin(), pairs.end(), [&](const auto& x, const auto& y) {
    return a.degree(x.first) + b.degree(x.second) < a.degree(y.first) + b.degree(y.second);
  });
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> idx;
  std::vector<BasisElement> basis;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    idx[pairs[k]] = k;
    auto [i, j] = pairs[k];
    std::string nm = (i == 0 && j == 0) ? "1" : a.name(i) + "⊗" + b.name(j);
    basis.push_back({nm, a.degree(i) + b.degree(j)});
  }
  const std::size_t n = pairs.size();
  std::vector<std::vector<SparseVec>> prod(n, std::vector<SparseVec>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      auto [i, j] = pairs[x];
      auto [k, l] = pairs[y];
      Scalar s = (b.degree(j) * a.degree(k)) % 2 ? R.neg(R.one()) : R.one();
      std::vector<std::pair<std::size_t, Scalar>> terms;
      for (const auto& [p, c] : a.product(i, k))
        for (const auto& [q, e] : b.product(j, l)) terms.emplace_back(idx[{p, q}], R.mul(s, R.mul(c, e)));
      prod[x][y] = normalize(R, std::move(terms));
    }
  return GradedAlgebra(R, std::move(basis), std::move(prod));
}

// ---------------------------------------------------------------------------
// config files

namespace {

std::string line_context(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

Scalar parse_coeff(const Ring& ring, const json& j, const std::string& where) {
  try {
    if (j.is_string()) return ring.parse_scalar(j.get<std::string>());
    if (j.is_number_integer()) return ring.from_int(j.get<long>());
  } catch (const InputError& e) {
    throw InputError(where + ": " + e.what());
  }
  throw InputError(where + ": coefficient must be a string rational or an integer");
}

SparseVec parse_result(const GradedAlgebra& shell, const json& arr, const std::string& where) {
  if (!arr.is_array()) throw InputError(where + ": expected an array");
  std::vector<std::pair<std::size_t, Scalar>> terms;
  for (std::size_t t = 0; t < arr.size(); ++t) {
    std::string w = where + "[" + std::to_string(t) + "]";
    const json& term = arr[t];
    if (!term.is_object() || !term.contains("basis")) throw InputError(w + ": expected {\"basis\", \"coeff\"}");
    std::string nm = term["basis"].get<std::string>();
    auto idx = shell.index_of(nm);
    if (!idx) throw InputError(w + ".basis: unknown basis element '" + nm + "'");
    Scalar c = term.contains("coeff") ? parse_coeff(shell.ring(), term["coeff"], w + ".coeff") : shell.ring().one();
    terms.emplace_back(*idx, c);
  }
  return normalize(shell.ring(), std::move(terms));
}

}  // namespace

DGAlgebra from_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError("algebra config: syntax error at " + line_context(text, e.byte) + ": " + e.what());
  }
  try {
    if (!doc.is_object()) throw InputError("algebra config: top level must be an object");
    if (!doc.contains("ring")) throw InputError("algebra config: missing field 'ring'");
    Ring ring = Ring::parse(doc["ring"].get<std::string>());
    if (!doc.contains("basis") || !doc["basis"].is_array()) throw InputError("algebra config: missing array 'basis'");
    std::vector<BasisElement> basis;
    for (std::size_t i = 0; i < doc["basis"].size(); ++i) {
      const json& b = doc["basis"][i];
      std::string w = "basis[" + std::to_string(i) + "]";
      if (!b.is_object() || !b.contains("name") || !b.contains("deg"))
        throw InputError(w + ": expected {\"name\", \"deg\"}");
      int deg = b["deg"].get<int>();
      if (deg < 0) throw InputError(w + ".deg: degree must be nonnegative");
      basis.push_back({b["name"].get<std::string>(), deg});
    }
    if (basis.empty()) throw InputError("algebra config: unit required (empty basis)");
    if (basis[0].name != "1" || basis[0].degree != 0)
      throw InputError("basis[0]: unit required (first element must be \"1\" of degree 0)");
    const std::size_t n = basis.size();
    GradedAlgebra shell(ring, basis, std::vector<std::vector<SparseVec>>(n, std::vector<SparseVec>(n)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (basis[i].name == basis[j].name) throw InputError("basis: duplicate name '" + basis[i].name + "'");

    std::vector<std::vector<std::optional<SparseVec>>> given(n, std::vector<std::optional<SparseVec>>(n));
    if (doc.contains("products")) {
      const json& ps = doc["products"];
      if (!ps.is_array()) throw InputError("products: expected an array");
      for (std::size_t t = 0; t < ps.size(); ++t) {
        std::string w = "products[" + std::to_string(t) + "]";
        const json& p = ps[t];
        if (!p.is_object() || !p.contains("left") || !p.contains("right") || !p.contains("result"))
          throw InputError(w + ": expected {\"left\", \"right\", \"result\"}");
        auto l = shell.index_of(p["left"].get<std::string>());
        auto r = shell.index_of(p["right"].get<std::string>());
        if (!l) throw InputError(w + ".left: unknown basis element");
        if (!r) throw InputError(w + ".right: unknown basis element");
        given[*l][*r] = parse_result(shell, p["result"], w + ".result");
      }
    }
    std::vector<std::vector<SparseVec>> prod(n, std::vector<SparseVec>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (given[i][j]) {
          prod[i][j] = *given[i][j];
        } else if (given[j][i]) {
          long long e = static_cast<long long>(basis[i].degree) * basis[j].degree;
          prod[i][j] = scale(ring, *given[j][i], e % 2 ? ring.neg(ring.one()) : ring.one());
        } else if (i == 0) {
          prod[i][j] = {{j, ring.one()}};
        } else if (j == 0) {
          prod[i][j] = {{i, ring.one()}};
        }
      }
    GradedAlgebra alg(ring, basis, prod);
    std::vector<SparseVec> diff(n);
    if (doc.contains("differential")) {
      if (!ring.is_field()) throw InputError("differential: DG algebras require field coefficients");
      const json& ds = doc["differential"];
      if (!ds.is_array()) throw InputError("differential: expected an array");
      for (std::size_t t = 0; t < ds.size(); ++t) {
        std::string w = "differential[" + std::to_string(t) + "]";
        const json& d = ds[t];
        if (!d.is_object() || !d.contains("of") || !d.contains("result"))
          throw InputError(w + ": expected {\"of\", \"result\"}");
        auto of = alg.index_of(d["of"].get<std::string>());
        if (!of) throw InputError(w + ".of: unknown basis element");
        diff[*of] = parse_result(alg, d["result"], w + ".result");
      }
    }
    DGAlgebra out(alg, diff);
    if (auto v = validate(out)) throw InputError("algebra config: validation failed: " + v->message());
    return out;
  } catch (const json::exception& e) {
    throw InputError(std::string("algebra config: ") + e.what());
  }
}

DGAlgebra load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open algebra file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return from_config(ss.str());
}

std::vector<std::size_t> cohomology_dims(const DGAlgebra& a) {
  if (!a.ring().is_field()) throw std::domain_error("cohomology of DG algebras needs a field");
  const int top = a.algebra().top_degree();
  SparseMatrix d = a.differential_matrix();
  std::vector<std::size_t> rank_out(top + 2, 0);
  for (int q = 0; q <= top; ++q) {
    auto src = a.algebra().indices_of_degree(q);
    auto dst = a.algebra().indices_of_degree(q + 1);
    if (src.empty() || dst.empty()) continue;
    rank_out[q] = coeff::rank(d.submatrix(dst, src));
  }
  std::vector<std::size_t> dims(top + 1, 0);
  for (int q = 0; q <= top; ++q) {
    std::size_t n = a.algebra().indices_of_degree(q).size();
    dims[q] = n - rank_out[q] - (q > 0 ? rank_out[q - 1] : 0);
  }
  return dims;
}

}  // namespace algebra
}  // namespace gcohom
