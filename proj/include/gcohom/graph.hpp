#pragma once

// Finite graphs with a fixed vertex enumeration. Vertices are stored 0-based
// (vertex k here is vertex k+1 in files and reports); an edge {u, v} is kept
// as u <= v and the edge list is sorted, which fixes the edge order used for
// exterior-algebra signs.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gcohom {

struct Edge {
  int u = 0;  ///< tail, u <= v
  int v = 0;  ///< head
  bool is_loop() const { return u == v; }
  auto operator<=>(const Edge&) const = default;
};

/// Subset of edge indices as a bitmask.
using EdgeMask = std::uint64_t;

class Graph {
 public:
  static constexpr std::size_t kMaxEdges = 63;

  Graph() = default;
  /// Orients every edge as u <= v and sorts; vertices must lie in [0, n).
  Graph(int n, std::vector<Edge> edges);

  int vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::size_t i) const { return edges_[i]; }
  EdgeMask all_edges() const;

  bool has_loop() const;
  bool has_multi_edge() const;
  /// Collapses parallel edges, keeping loops.
  Graph collapse_multi_edges() const;
  /// Vertex k goes to perm[k].
  Graph relabel(const std::vector<int>& perm) const;

  std::string to_string() const;
  bool operator==(const Graph&) const = default;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
};

/// Components of [G:s], numbered 0.. by their smallest vertex.
struct ComponentLabeling {
  int count = 0;
  std::vector<int> label;  ///< vertex -> component
  /// Smallest vertex of each component.
  std::vector<int> smallest;
};

/// G/s with the bookkeeping needed to transport generators.
struct Contraction {
  Graph graph;
  std::vector<int> vertex_map;                   ///< old vertex -> new vertex
  std::vector<std::optional<std::size_t>> edge_map;  ///< old edge -> new edge (none for edges in s)
};

namespace graph {

int popcount(EdgeMask m);
bool contains(EdgeMask m, std::size_t e);
std::vector<std::size_t> members(EdgeMask m);

ComponentLabeling components(const Graph& g, EdgeMask s);
/// Contracts every edge of s; merged vertices take the position of their
/// smallest member. Throws InputError if s contains a loop.
Contraction contract(const Graph& g, EdgeMask s);
Contraction contract_edge(const Graph& g, std::size_t alpha);
Graph delete_edge(const Graph& g, std::size_t alpha);

/// Largest (vertex count - 1) over connected components, loops ignored.
int max_subtree_edges(const Graph& g);
/// Permutations (sigma(1), ..., sigma(n)) in lexicographic order whose order
/// refines u < v for each edge u -> v. Throws on loops.
std::vector<std::vector<int>> linear_extensions(const Graph& g);
/// True iff g is connected, loopless and has n - 1 edges.
bool is_tree(const Graph& g);
/// Number of proper colourings with k colours, by exhaustive search.
long long count_colourings(const Graph& g, int k);

/// "path:<n>", "cycle:<n>", "complete:<n>", "star:<n>", "empty:<n>".
Graph builtin(std::string_view spec);
/// {"n": int, "edges": [[i, j], ...]} with 1-based vertices.
Graph from_json(std::string_view text);
/// Builtin spec or a JSON file path.
Graph load(const std::string& spec_or_path);

}  // namespace graph
}  // namespace gcohom
