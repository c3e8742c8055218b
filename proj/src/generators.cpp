#include "ascentlab/generators.hpp"

#include <algorithm>
#include <random>

namespace ascentlab {

namespace {

Constraint binary_table(VarId a, VarId b, int dom_a, int dom_b,
                        std::vector<Fitness> row_major_by_a) {
  // callers hand a table indexed by (value of a, value of b); reorder when
  // the sorted scope puts b first
  Constraint c;
  if (a < b) {
    c = Constraint::zeros({a, b}, {dom_a, dom_b});
    c.table = std::move(row_major_by_a);
  } else {
    c = Constraint::zeros({b, a}, {dom_b, dom_a});
    for (int va = 0; va < dom_a; ++va)
      for (int vb = 0; vb < dom_b; ++vb)
        c.table[static_cast<std::size_t>(vb * dom_a + va)] =
            row_major_by_a[static_cast<std::size_t>(va * dom_b + vb)];
  }
  return c;
}

Constraint xor_edge(VarId a, VarId b, Fitness weight) {
  return binary_table(a, b, 2, 2, {0, weight, weight, 0});
}

Constraint unary(VarId v, Fitness value_at_one) {
  Constraint c = Constraint::zeros({v}, {2});
  c.table[1] = value_at_one;
  return c;
}

// left-block table: single entry at (x_u = 1, x_c = col)
Constraint left_edge(VarId u, VarId c, int col, Fitness entry) {
  std::vector<Fitness> by_u = {0, 0, 0, 0};
  by_u[static_cast<std::size_t>(2 + col)] = entry;
  return binary_table(u, c, 2, 2, std::move(by_u));
}

}  // namespace

Instance gen_star(int n) {
  if (n < 1) throw std::invalid_argument("gen_star requires n >= 1");
  Instance inst;
  int center = n + 1;
  for (VarId v = 1; v <= 2 * n + 1; ++v) inst.add_variable(v, 2);

  for (VarId w = n + 2; w <= 2 * n + 1; ++w)
    inst.add_constraint(xor_edge(center, w, 1));

  inst.add_constraint(unary(center, n + 1));

  for (VarId u = 1; u <= n; ++u) {
    int col = (n - u) % 2 == 0 ? 0 : 1;
    inst.add_constraint(left_edge(u, center, col, 2 * n + 2));
  }
  for (VarId u = 1; u <= n; ++u) inst.add_constraint(unary(u, 1));
  return inst;
}

RecursiveInstance gen_recursive(int n, int d) {
  if (n < 1 || d < 1)
    throw std::invalid_argument("gen_recursive requires n >= 1 and d >= 1");

  int m = (1 << d) - 1;  // number of centers
  RecursiveWeights weights;
  weights.w.push_back(1);
  for (int k = 1; k <= m; ++k)
    weights.w.push_back(
        checked_add(checked_mul(checked_mul(2, n), weights.w.back()), 3));

  RecursiveInstance out;
  out.weights = weights;
  Instance& inst = out.instance;
  int total = (1 << d) * (n + 1) - 1;
  for (VarId v = 1; v <= total; ++v) inst.add_variable(v, 2);

  // centers sit at ids j*(n+1) for j = 1..m, left to right; c_k counts from
  // the right, so c_k is the center at layout position m - k + 1
  auto center_id = [&](int k) { return (m - k + 1) * (n + 1); };
  for (int k = 1; k <= m; ++k) out.centers.push_back(center_id(k));

  for (int k = 1; k <= m; ++k) {
    VarId c = center_id(k);
    Fitness w = weights.w[static_cast<std::size_t>(k - 1)];
    Fitness left_entry = checked_add(checked_mul(checked_mul(2, n), w), 2);

    // left block, parity by position within the block
    for (int pos = 1; pos <= n; ++pos) {
      VarId u = c - (n + 1) + pos;
      int col = (n - pos) % 2 == 0 ? 0 : 1;
      inst.add_constraint(left_edge(u, c, col, left_entry));
    }
    inst.add_constraint(unary(c, checked_add(checked_mul(n, w), 1)));
    for (int pos = 1; pos <= n; ++pos)
      inst.add_constraint(xor_edge(c, c + pos, w));
  }
  for (VarId u = 1; u <= n; ++u) inst.add_constraint(unary(u, 1));
  return out;
}

bool is_valid_snake(const SnakePath& path) {
  if (path.dimension < 1 || path.vertices.empty()) return false;
  if (path.vertices.front() != 0) return false;
  std::uint32_t limit = path.dimension >= 32
                            ? 0xffffffffu
                            : (1u << path.dimension) - 1;
  for (std::size_t i = 0; i < path.vertices.size(); ++i) {
    if (path.vertices[i] > limit) return false;
    for (std::size_t j = 0; j < i; ++j)
      if (path.vertices[j] == path.vertices[i]) return false;
  }
  for (std::size_t i = 0; i + 1 < path.vertices.size(); ++i) {
    std::uint32_t diff = path.vertices[i] ^ path.vertices[i + 1];
    if (std::popcount(diff) != 1) return false;
  }
  // induced: non-consecutive vertices are never hypercube-adjacent
  for (std::size_t i = 0; i < path.vertices.size(); ++i)
    for (std::size_t j = i + 2; j < path.vertices.size(); ++j)
      if (std::popcount(path.vertices[i] ^ path.vertices[j]) == 1) return false;
  return true;
}

SnakeSearchResult find_snake(int dimension,
                             std::optional<std::uint64_t> node_budget) {
  if (dimension < 1)
    throw std::invalid_argument("snake dimension must be >= 1");
  if (!node_budget && dimension > 6)
    throw std::invalid_argument(
        "exact snake search is limited to dimension <= 6");

  std::size_t vertices = 1u << dimension;
  std::vector<int> path_neighbors(vertices, 0);  // path vertices adjacent to v
  std::vector<char> in_path(vertices, 0);
  std::vector<std::uint32_t> current;
  SnakeSearchResult result;
  result.path.dimension = dimension;
  bool budget_hit = false;

  auto record = [&]() {
    if (current.size() > result.path.vertices.size() ||
        result.path.vertices.empty())
      result.path.vertices = current;
  };

  auto push = [&](std::uint32_t v) {
    in_path[v] = 1;
    current.push_back(v);
    for (int b = 0; b < dimension; ++b) ++path_neighbors[v ^ (1u << b)];
  };
  auto pop = [&]() {
    std::uint32_t v = current.back();
    current.pop_back();
    in_path[v] = 0;
    for (int b = 0; b < dimension; ++b) --path_neighbors[v ^ (1u << b)];
  };

  auto dfs = [&](auto&& self, std::uint32_t tip) -> void {
    ++result.nodes_explored;
    if (node_budget && result.nodes_explored > *node_budget) {
      budget_hit = true;
      return;
    }
    record();
    for (int b = 0; b < dimension; ++b) {
      std::uint32_t next = tip ^ (1u << b);
      // extendable iff the candidate's only path neighbour is the tip
      if (in_path[next] || path_neighbors[next] != 1) continue;
      push(next);
      self(self, next);
      pop();
      if (budget_hit) return;
    }
  };

  push(0);
  if (dimension >= 1) {
    // symmetry breaking: the first step flips bit 0
    push(1);
    dfs(dfs, 1);
    pop();
  }
  pop();

  result.optimal = !budget_hit;
  return result;
}

Instance gen_snake_blocks(int num_blocks, int d, const SnakePath& snake) {
  if (num_blocks < 1 || d < 1)
    throw std::invalid_argument("gen_snake_blocks requires positive arguments");
  if (snake.dimension != d + 1)
    throw std::invalid_argument("snake dimension must equal d + 1");
  if (!is_valid_snake(snake))
    throw std::invalid_argument("snake path violates the snake invariants");

  int bits = d + 1;
  Instance inst;
  for (VarId v = 1; v <= num_blocks * bits; ++v) inst.add_variable(v, 2);

  for (int blk = 0; blk < num_blocks; ++blk) {
    std::vector<VarId> scope;
    for (int i = 0; i < bits; ++i) scope.push_back(blk * bits + i + 1);
    Constraint c = Constraint::zeros(scope, std::vector<int>(bits, 2));
    std::vector<int> tuple(static_cast<std::size_t>(bits));
    for (std::size_t pos = 0; pos < snake.vertices.size(); ++pos) {
      std::uint32_t word = snake.vertices[pos];
      // scope position i holds bit i of the codeword
      for (int i = 0; i < bits; ++i)
        tuple[static_cast<std::size_t>(i)] = (word >> i) & 1;
      c.value_at(tuple) = static_cast<Fitness>(pos);
    }
    inst.add_constraint(std::move(c));
  }
  return inst;
}

Instance gen_random(int n, int v, double edge_probability, int value_range,
                    std::uint64_t seed) {
  if (n < 0 || v < 1) throw std::invalid_argument("bad random-instance shape");
  if (edge_probability < 0.0 || edge_probability > 1.0)
    throw std::invalid_argument("edge probability must be in [0, 1]");
  if (value_range < 0) throw std::invalid_argument("value range must be >= 0");

  Instance inst;
  for (VarId id = 1; id <= n; ++id) inst.add_variable(id, v);

  std::mt19937_64 rng(seed);
  auto uniform_value = [&]() -> Fitness {
    std::uint64_t span = 2 * static_cast<std::uint64_t>(value_range) + 1;
    return static_cast<Fitness>(rng() % span) - value_range;
  };
  // probability via a fixed-point threshold so the draw count per edge is
  // stable across platforms
  auto bernoulli = [&]() {
    return (rng() >> 11) <
           static_cast<std::uint64_t>(edge_probability * 9007199254740992.0);
  };

  for (VarId i = 1; i <= n; ++i) {
    for (VarId j = i + 1; j <= n; ++j) {
      if (!bernoulli()) continue;
      Constraint c = Constraint::zeros({i, j}, {v, v});
      for (Fitness& entry : c.table) entry = uniform_value();
      inst.add_constraint(std::move(c));
    }
  }
  return inst;
}

}  // namespace ascentlab
