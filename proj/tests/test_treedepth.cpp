#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ascentlab/generators.hpp"
#include "ascentlab/treedepth.hpp"

using namespace ascentlab;

namespace {

ConstraintGraph path_graph(int n) {
  ConstraintGraph g;
  for (int v = 1; v <= n; ++v) g.add_vertex(v);
  for (int v = 1; v < n; ++v) g.add_edge(v, v + 1);
  return g;
}

ConstraintGraph clique(int n) {
  ConstraintGraph g;
  for (int v = 1; v <= n; ++v) g.add_vertex(v);
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v) g.add_edge(u, v);
  return g;
}

ConstraintGraph star_graph(int leaves) {
  ConstraintGraph g;
  g.add_vertex(1);
  for (int v = 2; v <= leaves + 1; ++v) g.add_edge(1, v);
  return g;
}

ConstraintGraph random_graph(int n, double p, std::mt19937_64& rng) {
  ConstraintGraph g;
  for (int v = 1; v <= n; ++v) g.add_vertex(v);
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v)
      if (static_cast<double>(rng() >> 11) / 9007199254740992.0 < p)
        g.add_edge(u, v);
  return g;
}

// Independent oracle: minimum height over every rooted forest on the
// graph's vertices, trying all parent maps and keeping the valid ones.
int brute_force_treedepth(const ConstraintGraph& g) {
  std::vector<VarId> vs = g.vertices();
  int n = static_cast<int>(vs.size());
  if (n == 0) return 0;
  int best = INT32_MAX;
  std::vector<int> parent_choice(static_cast<std::size_t>(n), 0);
  while (true) {
    // interpret: parent_choice[i] == 0 means root, else vs[choice-1]
    bool self_parent = false;
    std::map<VarId, VarId> parent;
    for (int i = 0; i < n; ++i) {
      int c = parent_choice[static_cast<std::size_t>(i)];
      VarId child = vs[static_cast<std::size_t>(i)];
      VarId par = c == 0 ? 0 : vs[static_cast<std::size_t>(c - 1)];
      if (par == child) self_parent = true;
      parent[child] = par;
    }
    if (!self_parent) {
      // acyclic?
      bool acyclic = true;
      for (VarId v : vs) {
        int steps = 0;
        for (VarId p = parent[v]; p != 0 && acyclic; p = parent[p])
          if (++steps > n) acyclic = false;
      }
      if (acyclic) {
        TreedepthDecomposition t{parent};
        if (validate_decomposition(g, t).valid)
          best = std::min(best, t.height());
      }
    }
    int i = 0;
    for (; i < n; ++i) {
      auto& c = parent_choice[static_cast<std::size_t>(i)];
      if (c < n) {
        ++c;
        break;
      }
      c = 0;
    }
    if (i == n) break;
  }
  return best;
}

}  // namespace

TEST_CASE("constraint graphs from instances") {
  SUBCASE("star instance gives K_{1,2n} centered at n+1") {
    for (int n : {1, 2, 3}) {
      ConstraintGraph g = constraint_graph(gen_star(n));
      CHECK(g.num_vertices() == 2 * n + 1);
      CHECK(g.num_edges() == static_cast<std::size_t>(2 * n));
      CHECK(g.neighbors(n + 1).size() == static_cast<std::size_t>(2 * n));
    }
  }
  SUBCASE("unary-only instance is edgeless") {
    Instance inst;
    inst.add_variable(1, 2);
    inst.add_variable(2, 2);
    Constraint c = Constraint::zeros({1}, {2});
    c.table[1] = 5;
    inst.add_constraint(c);
    ConstraintGraph g = constraint_graph(inst);
    CHECK(g.num_vertices() == 2);
    CHECK(g.num_edges() == 0);
  }
  SUBCASE("snake blocks give disjoint cliques") {
    SnakePath snake = find_snake(4).path;
    ConstraintGraph g = constraint_graph(gen_snake_blocks(3, 3, snake));
    CHECK(g.num_vertices() == 12);
    CHECK(g.num_edges() == 3 * 6);  // three K_4s
    CHECK(g.has_edge(1, 4));
    CHECK(!g.has_edge(4, 5));
  }
}

TEST_CASE("validate_decomposition on small forests") {
  ConstraintGraph path = path_graph(3);

  SUBCASE("rooted at the middle") {
    TreedepthDecomposition t({{1, 2}, {2, 0}, {3, 2}});
    auto check = validate_decomposition(path, t);
    CHECK(check.valid);
    CHECK(t.height() == 1);
  }
  SUBCASE("chain decomposition") {
    TreedepthDecomposition t({{1, 0}, {2, 1}, {3, 2}});
    auto check = validate_decomposition(path, t);
    CHECK(check.valid);
    CHECK(t.height() == 2);
  }
  SUBCASE("triangle with siblings fails on the sibling edge") {
    ConstraintGraph tri = clique(3);
    TreedepthDecomposition t({{1, 0}, {2, 1}, {3, 1}});
    auto check = validate_decomposition(tri, t);
    CHECK(!check.valid);
    CHECK(check.violating_edge == std::make_pair(2, 3));
  }
  SUBCASE("vertex-set mismatch is an error") {
    TreedepthDecomposition t({{1, 0}, {2, 1}});
    CHECK_THROWS_AS(validate_decomposition(path, t), std::invalid_argument);
  }
}

TEST_CASE("dfs_decomposition") {
  SUBCASE("edgeless graph: isolated roots, height 0") {
    ConstraintGraph g;
    for (int v : {1, 5, 9}) g.add_vertex(v);
    TreedepthDecomposition t = dfs_decomposition(g);
    CHECK(t.height() == 0);
    CHECK(t.roots().size() == 3);
    CHECK(validate_decomposition(g, t).valid);
  }
  SUBCASE("star rooted at the center has height 1") {
    ConstraintGraph g = star_graph(5);
    TreedepthDecomposition t = dfs_decomposition(g, {1});
    CHECK(t.height() == 1);
    CHECK(validate_decomposition(g, t).valid);
  }
  SUBCASE("always valid on random graphs") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 120; ++trial) {
      ConstraintGraph g = random_graph(2 + static_cast<int>(rng() % 9),
                                       0.1 + 0.8 * (trial % 10) / 10.0, rng);
      TreedepthDecomposition t = dfs_decomposition(g);
      CHECK(validate_decomposition(g, t).valid);
    }
  }
  SUBCASE("deterministic given the same preferred roots") {
    std::mt19937_64 rng(7);
    ConstraintGraph g = random_graph(8, 0.4, rng);
    CHECK(dfs_decomposition(g, {3}) == dfs_decomposition(g, {3}));
  }
}

TEST_CASE("exact_treedepth paper anchors") {
  ConstraintGraph edgeless;
  for (int v = 1; v <= 4; ++v) edgeless.add_vertex(v);
  CHECK(exact_treedepth(edgeless).height == 0);

  CHECK(exact_treedepth(star_graph(4)).height == 1);
  CHECK(exact_treedepth(path_graph(7)).height == 2);
  CHECK(exact_treedepth(clique(4)).height == 3);

  auto [h, t] = exact_treedepth(star_graph(6));
  CHECK(validate_decomposition(star_graph(6), t).valid);
  CHECK(t.height() == h);
}

TEST_CASE("exact_treedepth agrees with the rooted-forest brute force") {
  // every graph on up to 4 vertices, exhaustively
  for (int n = 1; n <= 4; ++n) {
    int pairs = n * (n - 1) / 2;
    for (int mask = 0; mask < (1 << pairs); ++mask) {
      ConstraintGraph g;
      for (int v = 1; v <= n; ++v) g.add_vertex(v);
      int bit = 0;
      for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v, ++bit)
          if (mask & (1 << bit)) g.add_edge(u, v);
      auto [h, t] = exact_treedepth(g);
      CHECK(h == brute_force_treedepth(g));
      CHECK(validate_decomposition(g, t).valid);
      CHECK(t.height() == h);
    }
  }
  // sampled graphs on 5..6 vertices; the acceptance suite sweeps all of them
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    ConstraintGraph g = random_graph(5 + static_cast<int>(rng() % 2), 0.5, rng);
    auto [h, t] = exact_treedepth(g);
    CHECK(h == brute_force_treedepth(g));
    CHECK(validate_decomposition(g, t).valid);
  }
}

TEST_CASE("exact height never exceeds the dfs height") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 60; ++trial) {
    ConstraintGraph g = random_graph(3 + static_cast<int>(rng() % 8),
                                     0.1 + 0.08 * (trial % 10), rng);
    CHECK(exact_treedepth(g).height <= dfs_decomposition(g).height());
  }
}

TEST_CASE("deleting a vertex never increases exact treedepth") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 4 + static_cast<int>(rng() % 3);
    ConstraintGraph g = random_graph(n, 0.5, rng);
    int h = exact_treedepth(g).height;
    for (VarId drop : g.vertices()) {
      ConstraintGraph smaller;
      for (VarId v : g.vertices())
        if (v != drop) smaller.add_vertex(v);
      for (const auto& [u, v] : g.edges())
        if (u != drop && v != drop) smaller.add_edge(u, v);
      CHECK(exact_treedepth(smaller).height <= h);
    }
  }
}

TEST_CASE("exact_treedepth refuses oversized graphs") {
  CHECK_THROWS_AS(exact_treedepth(clique(6), 5), std::invalid_argument);
}

TEST_CASE("decomposition leaf operations") {
  TreedepthDecomposition t({{1, 0}, {2, 1}, {3, 1}, {4, 3}});
  CHECK(t.is_leaf(2));
  CHECK(t.is_leaf(4));
  CHECK(!t.is_leaf(1));
  CHECK(!t.is_leaf(3));
  CHECK(t.depth(4) == 2);
  CHECK(t.is_ancestor(1, 4));
  CHECK(!t.is_ancestor(4, 1));
  CHECK(t.ancestors(4) == std::vector<VarId>{3, 1});

  TreedepthDecomposition reduced = t.without_leaf(4);
  CHECK(reduced.num_vertices() == 3);
  CHECK(reduced.height() == 1);
  CHECK_THROWS_AS(t.without_leaf(3), std::invalid_argument);
}
