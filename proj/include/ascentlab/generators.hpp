#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ascentlab/vcsp.hpp"

namespace ascentlab {

/// The star landscape on 2n+1 Boolean variables: left set L = 1..n, center
/// c = n+1, right set R = n+2..2n+1. XOR edges of weight 1 on the right,
/// a unary n+1 on the center, single-entry tables 2n+2 on the left with
/// alternating parity, and a unary 1 on every left variable.
Instance gen_star(int n);

/// w_0 = 1 and w_{k+1} = 2n*w_k + 3; checked 64-bit.
struct RecursiveWeights {
  std::vector<Fitness> w;
};

struct RecursiveInstance {
  Instance instance;
  RecursiveWeights weights;
  std::vector<VarId> centers;  // c_1..c_m, named right to left
};

/// The chained-star landscape: 2^d blocks of n variables interleaved with
/// 2^d - 1 centers, ids ascending left to right. Center c_{k+1} carries
/// single-entry tables 2n*w_k + 2 to its left block (parity by position
/// within the block), a unary n*w_k + 1, and XOR tables of weight w_k to
/// its right block; the leftmost block adds the unary 1 bonuses. d = 1
/// reproduces gen_star(n) exactly.
RecursiveInstance gen_recursive(int n, int d);

/// Induced path in the d-dimensional hypercube with its head at the
/// all-zero vertex. Interior vertices have exactly two path neighbours
/// among their hypercube neighbours, head and tail exactly one.
struct SnakePath {
  int dimension = 0;
  std::vector<std::uint32_t> vertices;  // head first
  std::size_t length() const { return vertices.empty() ? 0 : vertices.size() - 1; }
};

/// Head at all-zeros, consecutive vertices differ in one bit, induced.
bool is_valid_snake(const SnakePath& path);

struct SnakeSearchResult {
  SnakePath path;
  bool optimal = false;
  std::uint64_t nodes_explored = 0;
};

/// DFS over induced paths from the all-zero head, first step fixed to bit 0
/// for symmetry breaking. Without a budget the search is exhaustive and the
/// result is a provably longest snake (dimension <= 6 only); with a budget
/// it returns the best path found within that many explored nodes.
SnakeSearchResult find_snake(int dimension,
                             std::optional<std::uint64_t> node_budget = std::nullopt);

/// num_blocks disjoint blocks of d+1 Boolean variables (ids 1..n contiguous
/// per block), one arity-(d+1) constraint per block valuing each snake
/// codeword at its path position and every other tuple at 0.
Instance gen_snake_blocks(int num_blocks, int d, const SnakePath& snake);

/// Random instance: every pair {i,j} gets a binary constraint with
/// probability edge_probability, each table entry uniform in
/// [-value_range, value_range]. All domains have size v. Deterministic
/// given the seed.
Instance gen_random(int n, int v, double edge_probability, int value_range,
                    std::uint64_t seed);

}  // namespace ascentlab
