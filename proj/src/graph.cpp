#include "gcohom/graph.hpp"

#include "gcohom/coeff.hpp"
#include "json.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>

namespace gcohom {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n < 0) throw InputError("graph: negative vertex count");
  if (edges_.size() > kMaxEdges) throw InputError("graph: too many edges");
  for (auto& e : edges_) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) throw InputError("graph: edge endpoint out of range");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::stable_sort(edges_.begin(), edges_.end());
}

EdgeMask Graph::all_edges() const {
  return edges_.empty() ? 0 : (~EdgeMask(0) >> (64 - edges_.size()));
}

bool Graph::has_loop() const {
  return std::any_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.is_loop(); });
}

bool Graph::has_multi_edge() const {
  return std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end();
}

Graph Graph::collapse_multi_edges() const {
  std::vector<Edge> out = edges_;
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return Graph(n_, out);
}

Graph Graph::relabel(const std::vector<int>& perm) const {
  if (perm.size() != static_cast<std::size_t>(n_)) throw InputError("relabel: permutation has wrong size");
  std::vector<Edge> out;
  for (const auto& e : edges_) out.push_back({perm[e.u], perm[e.v]});
  return Graph(n_, out);
}

std::string Graph::to_string() const {
  std::ostringstream os;
  os << "n=" << n_ << " edges=[";
  for (std::size_t i = 0; i < edges_.size(); ++i)
    os << (i ? "," : "") << "(" << edges_[i].u + 1 << "," << edges_[i].v + 1 << ")";
  os << "]";
  return os.str();
}

namespace graph {

int popcount(EdgeMask m) { return std::popcount(m); }
bool contains(EdgeMask m, std::size_t e) { return (m >> e) & 1u; }

std::vector<std::size_t> members(EdgeMask m) {
  std::vector<std::size_t> out;
  for (std::size_t e = 0; m; ++e, m >>= 1)
    if (m & 1u) out.push_back(e);
  return out;
}

namespace {

int find(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace

ComponentLabeling components(const Graph& g, EdgeMask s) {
  const int n = g.vertex_count();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t e : members(s)) {
    int a = find(parent, g.edge(e).u), b = find(parent, g.edge(e).v);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  ComponentLabeling out;
  out.label.assign(n, -1);
  std::vector<int> root_label(n, -1);
  for (int v = 0; v < n; ++v) {
    int r = find(parent, v);
    if (root_label[r] < 0) {
      root_label[r] = out.count++;
      out.smallest.push_back(v);
    }
    out.label[v] = root_label[r];
  }
  return out;
}

Contraction contract(const Graph& g, EdgeMask s) {
  for (std::size_t e : members(s))
    if (g.edge(e).is_loop()) throw InputError("contract: cannot contract a loop");
  ComponentLabeling c = components(g, s);
  Contraction out;
  out.vertex_map = c.label;
  std::vector<std::pair<Edge, std::size_t>> kept;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (contains(s, e)) continue;
    Edge ne{c.label[g.edge(e).u], c.label[g.edge(e).v]};
    if (ne.u > ne.v) std::swap(ne.u, ne.v);
    kept.push_back({ne, e});
  }
  std::stable_sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  out.edge_map.assign(g.edge_count(), std::nullopt);
  std::vector<Edge> edges;
  for (std::size_t k = 0; k < kept.size(); ++k) {
    edges.push_back(kept[k].first);
    out.edge_map[kept[k].second] = k;
  }
  out.graph = Graph(c.count, edges);
  return out;
}

Contraction contract_edge(const Graph& g, std::size_t alpha) {
  if (alpha >= g.edge_count()) throw InputError("contract: edge index out of range");
  return contract(g, EdgeMask(1) << alpha);
}

Graph delete_edge(const Graph& g, std::size_t alpha) {
  if (alpha >= g.edge_count()) throw InputError("delete: edge index out of range");
  std::vector<Edge> edges = g.edges();
  edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(alpha));
  return Graph(g.vertex_count(), edges);
}

int max_subtree_edges(const Graph& g) {
  ComponentLabeling c = components(g, g.all_edges());
  std::vector<int> size(c.count, 0);
  for (int l : c.label) ++size[l];
  int best = 0;
  for (int s : size) best = std::max(best, s - 1);
  return best;
}

std::vector<std::vector<int>> linear_extensions(const Graph& g) {
  if (g.has_loop()) throw InputError("linear_extensions: graph has a loop");
  const int n = g.vertex_count();
  std::vector<int> indegree(n, 0);
  std::vector<std::vector<int>> out_edges(n);
  for (const auto& e : g.edges()) {
    ++indegree[e.v];
    out_edges[e.u].push_back(e.v);
  }
  std::vector<std::vector<int>> result;
  std::vector<int> current;
  std::vector<char> used(n, 0);
  std::function<void()> rec = [&]() {
    if (static_cast<int>(current.size()) == n) {
      result.push_back(current);
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (used[v] || indegree[v] != 0) continue;
      used[v] = 1;
      current.push_back(v);
      for (int w : out_edges[v]) --indegree[w];
      rec();
      for (int w : out_edges[v]) ++indegree[w];
      current.pop_back();
      used[v] = 0;
    }
  };
  rec();
  return result;
}

bool is_tree(const Graph& g) {
  return !g.has_loop() && g.vertex_count() >= 1 &&
         static_cast<int>(g.edge_count()) == g.vertex_count() - 1 &&
         components(g, g.all_edges()).count == 1;
}

long long count_colourings(const Graph& g, int k) {
  if (g.has_loop()) return 0;
  const int n = g.vertex_count();
  std::vector<int> colour(n, -1);
  std::vector<std::vector<int>> earlier(n);
  for (const auto& e : g.edges()) earlier[e.v].push_back(e.u);
  std::function<long long(int)> rec = [&](int v) -> long long {
    if (v == n) return 1;
    long long total = 0;
    for (int c = 0; c < k; ++c) {
      bool ok = true;
      for (int w : earlier[v])
        if (colour[w] == c) ok = false;
      if (!ok) continue;
      colour[v] = c;
      total += rec(v + 1);
    }
    colour[v] = -1;
    return total;
  };
  return rec(0);
}

Graph builtin(std::string_view spec) {
  std::string s(spec);
  auto colon = s.find(':');
  if (colon == std::string::npos) throw InputError("graph: expected <name>:<n>, got '" + s + "'");
  std::string name = s.substr(0, colon);
  int n = 0;
  try {
    std::size_t used = 0;
    n = std::stoi(s.substr(colon + 1), &used);
    if (used != s.size() - colon - 1) throw std::invalid_argument(s);
  } catch (const std::exception&) {
    throw InputError("graph: bad vertex count in '" + s + "'");
  }
  if (n < 1) throw InputError("graph: vertex count must be positive");
  std::vector<Edge> edges;
  if (name == "path") {
    for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  } else if (name == "cycle") {
    if (n == 1) {
      edges.push_back({0, 0});
    } else {
      for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
      edges.push_back({0, n - 1});
    }
  } else if (name == "complete") {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) edges.push_back({i, j});
  } else if (name == "star") {
    for (int j = 1; j < n; ++j) edges.push_back({0, j});
  } else if (name != "empty") {
    throw InputError("graph: unknown builtin '" + name + "'");
  }
  return Graph(n, edges);
}

Graph from_json(std::string_view text) {
  using json = nlohmann::json;
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError(std::string("graph config: syntax error: ") + e.what());
  }
  try {
    if (!doc.is_object() || !doc.contains("n")) throw InputError("graph config: missing field 'n'");
    int n = doc["n"].get<int>();
    std::vector<Edge> edges;
    if (doc.contains("edges")) {
      const json& es = doc["edges"];
      if (!es.is_array()) throw InputError("graph config: 'edges' must be an array");
      for (std::size_t k = 0; k < es.size(); ++k) {
        const json& e = es[k];
        if (!e.is_array() || e.size() != 2)
          throw InputError("edges[" + std::to_string(k) + "]: expected [i, j]");
        int i = e[0].get<int>(), j = e[1].get<int>();
        if (i < 1 || j < 1 || i > n || j > n)
          throw InputError("edges[" + std::to_string(k) + "]: vertex out of range 1.." + std::to_string(n));
        edges.push_back({i - 1, j - 1});
      }
    }
    return Graph(n, edges);
  } catch (const json::exception& e) {
    throw InputError(std::string("graph config: ") + e.what());
  }
}

Graph load(const std::string& spec_or_path) {
  std::ifstream in(spec_or_path);
  if (!in) return builtin(spec_or_path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

}  // namespace graph
}  // namespace gcohom
