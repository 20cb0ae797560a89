#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gcohom/coeff.hpp"
#include "gcohom/graph.hpp"

#include <algorithm>
#include <numeric>
#include <random>

using namespace gcohom;

namespace {

EdgeMask bit(std::size_t e) { return EdgeMask(1) << e; }

long long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

}  // namespace

TEST_CASE("edges are sorted and oriented") {
  Graph g(3, {{2, 0}, {1, 0}, {1, 2}});
  CHECK(g.edge(0) == Edge{0, 1});
  CHECK(g.edge(1) == Edge{0, 2});
  CHECK(g.edge(2) == Edge{1, 2});
  CHECK_THROWS_AS(Graph(2, {{0, 2}}), InputError);
}

TEST_CASE("components follow the smallest-vertex order") {
  Graph p = graph::builtin("path:3");
  auto c = graph::components(p, bit(0));
  CHECK(c.count == 2);
  CHECK(c.label == std::vector<int>{0, 0, 1});
  auto e = graph::components(graph::builtin("empty:4"), 0);
  CHECK(e.count == 4);
  CHECK(e.label == std::vector<int>{0, 1, 2, 3});
  Graph k3 = graph::builtin("complete:3");
  CHECK(graph::components(k3, k3.all_edges()).count == 1);
  // edge (2,3) only: components {1}, {2,3}
  auto c2 = graph::components(Graph(4, {{1, 3}}), 1);
  CHECK(c2.label == std::vector<int>{0, 1, 2, 1});
}

TEST_CASE("contraction and deletion") {
  Graph k3 = graph::builtin("complete:3");
  for (std::size_t a = 0; a < 3; ++a) {
    Contraction c = graph::contract_edge(k3, a);
    CHECK(c.graph.vertex_count() == 2);
    CHECK(c.graph.edge_count() == 2);
    CHECK(c.graph.has_multi_edge());
  }
  Contraction p = graph::contract_edge(graph::builtin("path:3"), 0);
  CHECK(p.graph == graph::builtin("path:2"));
  Contraction single = graph::contract_edge(graph::builtin("path:2"), 0);
  CHECK(single.graph.vertex_count() == 1);
  CHECK(single.graph.edge_count() == 0);
  CHECK_THROWS_AS(graph::contract_edge(graph::builtin("cycle:1"), 0), InputError);

  CHECK(graph::delete_edge(k3, 1) == graph::builtin("path:3"));
  CHECK(graph::delete_edge(graph::builtin("path:2"), 0) == graph::builtin("empty:2"));
  CHECK_FALSE(graph::delete_edge(graph::builtin("cycle:1"), 0).has_loop());

  // merged vertex keeps the smaller label; remaining vertices keep their order
  Contraction c = graph::contract_edge(Graph(4, {{1, 3}, {0, 2}}), 1);
  CHECK(c.vertex_map == std::vector<int>{0, 1, 2, 1});
  CHECK(c.graph.edge(0) == Edge{0, 2});
}

TEST_CASE("max subtree edges") {
  for (int n = 1; n <= 6; ++n) CHECK(graph::max_subtree_edges(graph::builtin("complete:" + std::to_string(n))) == n - 1);
  CHECK(graph::max_subtree_edges(graph::builtin("empty:5")) == 0);
  CHECK(graph::max_subtree_edges(Graph(4, {{0, 1}, {2, 3}})) == 1);
}

TEST_CASE("linear extensions") {
  CHECK(graph::linear_extensions(graph::builtin("path:3")) == std::vector<std::vector<int>>{{0, 1, 2}});
  CHECK(graph::linear_extensions(graph::builtin("star:3")) == std::vector<std::vector<int>>{{0, 1, 2}, {0, 2, 1}});
  CHECK(graph::linear_extensions(graph::builtin("empty:3")).size() == 6);
  CHECK_THROWS_AS(graph::linear_extensions(graph::builtin("cycle:1")), InputError);
}

TEST_CASE("property: forests satisfy the hook-length formula") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 80; ++trial) {
    int n = 1 + static_cast<int>(rng() % 7);
    std::vector<Edge> edges;
    std::vector<int> parent(n, -1);
    for (int v = 1; v < n; ++v)
      if (rng() % 4 != 0) {
        parent[v] = static_cast<int>(rng() % v);
        edges.push_back({parent[v], v});
      }
    Graph g(n, edges);
    std::vector<int> subtree(n, 1);
    for (int v = n - 1; v > 0; --v)
      if (parent[v] >= 0) subtree[parent[v]] += subtree[v];
    long long denom = 1;
    for (int s : subtree) denom *= s;
    auto ext = graph::linear_extensions(g);
    CHECK(static_cast<long long>(ext.size()) == factorial(n) / denom);
    // brute force: filter all permutations
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> brute;
    do {
      std::vector<int> pos(n);
      for (int k = 0; k < n; ++k) pos[perm[k]] = k;
      bool ok = std::all_of(edges.begin(), edges.end(), [&](const Edge& e) { return pos[e.u] < pos[e.v]; });
      if (ok) brute.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(ext == brute);
  }
}

TEST_CASE("property: adding an edge changes the component count by at most one") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 2 + static_cast<int>(rng() % 5);
    std::vector<Edge> edges;
    for (int k = 0; k < 7; ++k) edges.push_back({static_cast<int>(rng() % n), static_cast<int>(rng() % n)});
    Graph g(n, edges);
    for (EdgeMask s = 0; s <= g.all_edges(); ++s)
      for (std::size_t a = 0; a < g.edge_count(); ++a) {
        if (graph::contains(s, a)) continue;
        int before = graph::components(g, s).count, after = graph::components(g, s | bit(a)).count;
        CHECK((after == before || after == before - 1));
      }
    for (std::size_t a = 0; a < g.edge_count(); ++a) {
      CHECK(graph::delete_edge(g, a).edge_count() == g.edge_count() - 1);
      if (!g.edge(a).is_loop()) CHECK(graph::contract_edge(g, a).graph.edge_count() == g.edge_count() - 1);
    }
  }
}

TEST_CASE("colourings and json loading") {
  CHECK(graph::count_colourings(graph::builtin("complete:3"), 3) == 6);
  CHECK(graph::count_colourings(graph::builtin("path:3"), 2) == 2);
  CHECK(graph::count_colourings(graph::builtin("cycle:1"), 5) == 0);
  Graph g = graph::from_json(R"({"n": 3, "edges": [[1, 2], [2, 3], [3, 1]]})");
  CHECK(g == graph::builtin("complete:3"));
  CHECK_THROWS_WITH_AS(graph::from_json(R"({"n": 2, "edges": [[1, 3]]})"), doctest::Contains("edges[0]"), InputError);
  CHECK_THROWS_AS(graph::builtin("wheel:4"), InputError);
  CHECK(graph::builtin("cycle:2").has_multi_edge());
  CHECK(graph::is_tree(graph::builtin("star:5")));
  CHECK_FALSE(graph::is_tree(graph::builtin("cycle:3")));
}
